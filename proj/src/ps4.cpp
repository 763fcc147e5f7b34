#include "hyperseq/ps4.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace hyperseq {

std::string to_string(TV v) {
    switch (v) {
        case TV::F: return "0";
        case TV::U: return "*";
        case TV::T: return "1";
    }
    return "?";
}

PS4Model::PS4Model(std::vector<std::string> names)
    : worlds(std::move(names)),
      relR(worlds.size(), std::vector<char>(worlds.size(), 0)),
      relS(worlds.size(), std::vector<char>(worlds.size(), 0)),
      val(worlds.size()) {}

int PS4Model::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < worlds.size(); ++i)
        if (worlds[i] == name) return static_cast<int>(i);
    return -1;
}

TV PS4Model::atom(std::size_t w, const std::string& a) const {
    auto it = val[w].find(a);
    return it == val[w].end() ? TV::U : it->second;
}

std::vector<std::string> PS4Model::atoms() const {
    std::vector<std::string> out;
    for (const auto& m : val)
        for (const auto& [a, v] : m)
            if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

using Memo3 = std::unordered_map<Formula, std::vector<TV>>;

TV neg3(TV v) { return v == TV::T ? TV::F : v == TV::F ? TV::T : TV::U; }
TV and3(TV a, TV b) {
    if (a == TV::F || b == TV::F) return TV::F;
    if (a == TV::T && b == TV::T) return TV::T;
    return TV::U;
}
TV or3(TV a, TV b) {
    if (a == TV::T || b == TV::T) return TV::T;
    if (a == TV::F && b == TV::F) return TV::F;
    return TV::U;
}

// Value of a box at w given the values of its body everywhere.
TV box3(const PS4Model& m, std::size_t w, const std::vector<TV>& body) {
    bool all_one = true, some_zero = false;
    for (std::size_t u = 0; u < m.size(); ++u) {
        if (!m.relR[w][u]) continue;
        if (body[u] == TV::F) some_zero = true;
        if (body[u] != TV::T) all_one = false;
    }
    if (all_one) return TV::T;
    if (some_zero) return TV::F;
    return TV::U;
}

const std::vector<TV>& eval3_memo(const PS4Model& m, Formula f, Memo3& memo) {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    std::size_t n = m.size();
    std::vector<TV> out(n, TV::U);
    switch (f.op()) {
        case Op::Atom:
            for (std::size_t w = 0; w < n; ++w) out[w] = m.atom(w, f.name());
            break;
        case Op::Neg: {
            const auto& s = eval3_memo(m, f.sub(), memo);
            for (std::size_t w = 0; w < n; ++w) out[w] = neg3(s[w]);
            break;
        }
        case Op::Box: {
            const auto& s = eval3_memo(m, f.sub(), memo);
            for (std::size_t w = 0; w < n; ++w) out[w] = box3(m, w, s);
            break;
        }
        case Op::And:
        case Op::Or: {
            std::vector<TV> a = eval3_memo(m, f.left(), memo);
            const auto& b = eval3_memo(m, f.right(), memo);
            for (std::size_t w = 0; w < n; ++w)
                out[w] = f.op() == Op::And ? and3(a[w], b[w]) : or3(a[w], b[w]);
            break;
        }
    }
    return memo.emplace(f, std::move(out)).first->second;
}

}  // namespace

TV eval3(const PS4Model& m, std::size_t w, Formula f) {
    if (w >= m.size()) throw EvalError("unknown world index " + std::to_string(w));
    Memo3 memo;
    return eval3_memo(m, f, memo)[w];
}

std::vector<TV> eval3_all(const PS4Model& m, Formula f) {
    Memo3 memo;
    return eval3_memo(m, f, memo);
}

FrameCheck check_ps4_frame(const PS4Model& m) {
    std::size_t n = m.size();
    const auto& R = m.relR;
    const auto& S = m.relS;
    FrameCheck r;
    auto fail = [&r](std::string cond, std::vector<std::size_t> w) {
        r.ok = false;
        r.condition = std::move(cond);
        r.witness = std::move(w);
        return r;
    };
    for (std::size_t x = 0; x < n; ++x)
        if (!S[x][x]) return fail("S reflexivity", {x});
    for (std::size_t x = 0; x < n; ++x)
        if (!R[x][x]) return fail("R reflexivity", {x});
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (!R[x][y]) continue;
            for (std::size_t z = 0; z < n; ++z) {
                if (!R[y][z]) continue;
                bool found = false;
                for (std::size_t w = 0; w < n && !found; ++w) found = R[x][w] && S[z][w];
                if (!found) return fail("pseudo-transitivity", {x, y, z});
            }
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (!R[x][y]) continue;
            for (std::size_t z = 0; z < n; ++z) {
                if (!S[x][z]) continue;
                bool found = false;
                for (std::size_t w = 0; w < n && !found; ++w) found = R[z][w] && S[y][w];
                if (!found) return fail("forth", {x, y, z});
            }
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
            if (!S[x][z]) continue;
            for (std::size_t w = 0; w < n; ++w) {
                if (!R[z][w]) continue;
                bool found = false;
                for (std::size_t y = 0; y < n && !found; ++y) found = R[x][y] && S[y][w];
                if (!found) return fail("back", {x, z, w});
            }
        }
    return r;
}

PreservationCheck check_s_preservation(const PS4Model& m, int depth) {
    if (depth < 0) throw std::invalid_argument("depth must be non-negative");
    std::size_t n = m.size();
    PreservationCheck res;
    // Value vectors, one char per world, with a representative formula each.
    std::vector<std::string> vecs;
    std::vector<Formula> reps;
    std::unordered_set<std::string> seen;
    auto add = [&](std::string v, Formula f) {
        if (seen.insert(v).second) {
            vecs.push_back(std::move(v));
            reps.push_back(f);
        }
    };
    auto vec_of = [&](const std::vector<TV>& vals) {
        std::string s(n, '\0');
        for (std::size_t w = 0; w < n; ++w) s[w] = static_cast<char>(vals[w]);
        return s;
    };
    for (const auto& a : m.atoms()) {
        Formula f = Formula::atom(a);
        add(vec_of(eval3_all(m, f)), f);
    }
    auto violated = [&](const std::string& v, std::size_t& x, std::size_t& y) {
        for (x = 0; x < n; ++x)
            for (y = 0; y < n; ++y)
                if (m.relS[x][y] && v[x] != static_cast<char>(TV::U) && v[y] != v[x]) return true;
        return false;
    };
    std::size_t checked = 0;
    auto check_new = [&]() {
        for (; checked < vecs.size(); ++checked) {
            std::size_t x, y;
            if (violated(vecs[checked], x, y)) {
                res.ok = false;
                res.x = x;
                res.y = y;
                res.witness = reps[checked];
                return false;
            }
        }
        return true;
    };
    if (!check_new()) return res;
    for (int d = 1; d <= depth; ++d) {
        std::size_t count = vecs.size();
        for (std::size_t i = 0; i < count; ++i) {
            std::vector<TV> a(n);
            for (std::size_t w = 0; w < n; ++w) a[w] = static_cast<TV>(vecs[i][w]);
            std::vector<TV> ng(n), bx(n);
            for (std::size_t w = 0; w < n; ++w) {
                ng[w] = neg3(a[w]);
                bx[w] = box3(m, w, a);
            }
            add(vec_of(ng), Formula::neg(reps[i]));
            add(vec_of(bx), Formula::box(reps[i]));
        }
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < count; ++j) {
                std::string c(n, '\0'), o(n, '\0');
                for (std::size_t w = 0; w < n; ++w) {
                    TV a = static_cast<TV>(vecs[i][w]), b = static_cast<TV>(vecs[j][w]);
                    c[w] = static_cast<char>(and3(a, b));
                    o[w] = static_cast<char>(or3(a, b));
                }
                add(std::move(c), Formula::conj(reps[i], reps[j]));
                add(std::move(o), Formula::disj(reps[i], reps[j]));
            }
        if (!check_new()) return res;
        if (vecs.size() == count) break;  // closed under the connectives
    }
    return res;
}

Branch copy_branch(const PS4Model& m, const Branch& b, std::size_t i) {
    std::size_t len = b.size();
    if (i < 2 || i >= len)
        throw std::invalid_argument("copy_branch needs 2 <= i < branch length");
    for (std::size_t j = 0; j + 1 < len; ++j)
        if (!m.relR[b[j]][b[j + 1]]) throw std::invalid_argument("branch is not R-connected");
    std::size_t n = m.size();
    // 0-based: drop b[i-1]; prefix is b[0..i-2].
    Branch out(b.begin(), b.begin() + static_cast<long>(i - 1));
    std::size_t prev = b[i - 2];
    std::size_t cur = n;
    for (std::size_t w = 0; w < n && cur == n; ++w)
        if (m.relR[prev][w] && m.relS[b[i]][w]) cur = w;
    if (cur == n)
        throw FrameViolation("pseudo-transitivity has no witness for " + m.worlds[prev] + ", " +
                             m.worlds[b[i - 1]] + ", " + m.worlds[b[i]]);
    out.push_back(cur);
    for (std::size_t j = i + 1; j < len; ++j) {
        // forth on b[j-1] R b[j] and b[j-1] S cur
        std::size_t next = n;
        for (std::size_t w = 0; w < n && next == n; ++w)
            if (m.relR[cur][w] && m.relS[b[j]][w]) next = w;
        if (next == n)
            throw FrameViolation("forth has no witness for " + m.worlds[b[j - 1]] + ", " +
                                 m.worlds[b[j]] + ", " + m.worlds[cur]);
        out.push_back(next);
        cur = next;
    }
    return out;
}

std::optional<Branch> ps4_countermodel(const PS4Model& m, const Hypersequent& h) {
    std::size_t n = m.size(), k = h.size();
    if (n == 0 || k == 0) return std::nullopt;
    Memo3 memo;
    std::vector<std::vector<char>> reach(k, std::vector<char>(n, 1));
    for (std::size_t i = 0; i < k; ++i) {
        for (Formula f : h[i].left) {
            const auto& t = eval3_memo(m, f, memo);
            for (std::size_t w = 0; w < n; ++w) reach[i][w] = reach[i][w] && t[w] == TV::T;
        }
        for (Formula f : h[i].right) {
            const auto& t = eval3_memo(m, f, memo);
            for (std::size_t w = 0; w < n; ++w) reach[i][w] = reach[i][w] && t[w] == TV::F;
        }
    }
    for (std::size_t i = k - 1; i-- > 0;)
        for (std::size_t w = 0; w < n; ++w) {
            if (!reach[i][w]) continue;
            bool any = false;
            for (std::size_t u = 0; u < n && !any; ++u) any = m.relR[w][u] && reach[i + 1][u];
            reach[i][w] = any;
        }
    Branch b;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t pick = n;
        for (std::size_t w = 0; w < n && pick == n; ++w)
            if (reach[i][w] && (i == 0 || m.relR[b.back()][w])) pick = w;
        if (pick == n) return std::nullopt;
        b.push_back(pick);
    }
    return b;
}

PS4Model builtin_fig5_model() {
    PS4Model m({"i", "j", "k", "m", "n", "l"});
    auto at = [&m](const char* w) { return static_cast<std::size_t>(m.index_of(w)); };
    for (std::size_t w = 0; w < m.size(); ++w) m.relR[w][w] = m.relS[w][w] = 1;
    for (auto [a, b] : {std::pair{"i", "j"}, {"j", "k"}, {"k", "m"}, {"i", "n"}, {"n", "l"}, {"i", "l"}})
        m.relR[at(a)][at(b)] = 1;
    for (auto [a, b] : {std::pair{"m", "k"}, {"m", "n"}, {"m", "l"}, {"k", "n"}})
        m.relS[at(a)][at(b)] = 1;
    auto set = [&](const char* w, const char* a, TV v) { m.val[at(w)][a] = v; };
    set("i", "p", TV::F);
    set("i", "q", TV::F);
    set("j", "q", TV::F);
    set("l", "p", TV::F);
    for (auto [w, a] : {std::pair{"j", "p"}, {"k", "p"}, {"k", "q"}, {"m", "q"}, {"n", "p"},
                        {"n", "q"}, {"l", "q"}})
        set(w, a, TV::T);
    set("m", "p", TV::U);
    return m;
}

PS4Model random_ps4_model(std::mt19937_64& rng, int max_points,
                          const std::vector<std::string>& atoms) {
    std::uniform_int_distribution<int> size_dist(1, std::max(1, max_points));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int n = size_dist(rng);
    std::vector<std::string> names;
    for (int w = 0; w < n; ++w) names.push_back("x" + std::to_string(w));
    PS4Model m(names);
    double pr = 0.1 + 0.4 * unit(rng), ps = 0.05 + 0.35 * unit(rng);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            m.relR[a][b] = a == b || unit(rng) < pr;
            m.relS[a][b] = a == b || unit(rng) < ps;
        }
    std::uniform_int_distribution<int> pick(0, n - 1);
    // Add witnesses until every condition holds. Pairs are only ever added,
    // so this terminates.
    while (true) {
        FrameCheck c = check_ps4_frame(m);
        if (c.ok) break;
        const auto& t = c.witness;
        bool fresh = unit(rng) < 0.3;
        std::size_t w = static_cast<std::size_t>(pick(rng));
        if (c.condition == "pseudo-transitivity") {
            if (fresh) {
                m.relR[t[0]][w] = 1;
                m.relS[t[2]][w] = 1;
            } else {
                m.relR[t[0]][t[2]] = 1;
            }
        } else if (c.condition == "forth") {
            if (fresh) {
                m.relR[t[2]][w] = 1;
                m.relS[t[1]][w] = 1;
            } else {
                m.relR[t[2]][t[1]] = 1;
            }
        } else if (c.condition == "back") {
            double r = unit(rng);
            if (fresh) {
                m.relR[t[0]][w] = 1;
                m.relS[w][t[2]] = 1;
            } else if (r < 0.5) {
                m.relR[t[0]][t[2]] = 1;
            } else {
                m.relS[t[0]][t[2]] = 1;
            }
        }
    }
    // S* reachability, then valuations consistent along it.
    std::vector<std::vector<char>> reach = m.relS;
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (reach[a][k] && reach[k][b]) reach[a][b] = 1;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::uniform_int_distribution<int> tv(0, 2);
    for (const auto& a : atoms) {
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<int> cur(n, -1);  // -1 free, else TV
        for (int x : order) {
            if (cur[x] != -1) continue;
            int v = tv(rng);
            if (v == static_cast<int>(TV::U)) continue;
            bool conflict = false;
            for (int y = 0; y < n; ++y)
                if (reach[x][y] && cur[y] != -1 && cur[y] != v) conflict = true;
            if (conflict) continue;
            for (int y = 0; y < n; ++y)
                if (reach[x][y]) cur[y] = v;
        }
        for (int x = 0; x < n; ++x)
            m.val[x][a] = cur[x] == -1 ? TV::U : static_cast<TV>(cur[x]);
    }
    return m;
}

PS4Model ps4_from_kripke(const KripkeModel& k) {
    PS4Model m(k.frame.worlds);
    for (std::size_t a = 0; a < k.size(); ++a) {
        m.relS[a][a] = 1;
        for (std::size_t b = 0; b < k.size(); ++b) m.relR[a][b] = k.frame.rel[a][b];
        for (const auto& [atom, v] : k.val[a]) m.val[a][atom] = v ? TV::T : TV::F;
    }
    return m;
}

}  // namespace hyperseq
