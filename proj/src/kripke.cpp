#include "hyperseq/kripke.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace hyperseq {

std::string to_string(FrameClass c) {
    switch (c) {
        case FrameClass::K: return "K";
        case FrameClass::D: return "D";
        case FrameClass::T: return "T";
        case FrameClass::KB: return "KB";
        case FrameClass::K4: return "K4";
        case FrameClass::B: return "B";
        case FrameClass::S4: return "S4";
        case FrameClass::S5: return "S5";
    }
    return "?";
}

FrameClass frame_class_from_string(const std::string& s) {
    std::string u;
    for (char ch : s) u += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    for (FrameClass c : {FrameClass::K, FrameClass::D, FrameClass::T, FrameClass::KB,
                         FrameClass::K4, FrameClass::B, FrameClass::S4, FrameClass::S5})
        if (to_string(c) == u) return c;
    throw std::invalid_argument("unknown frame class: " + s);
}

KripkeFrame::KripkeFrame(std::vector<std::string> names)
    : worlds(std::move(names)), rel(worlds.size(), std::vector<char>(worlds.size(), 0)) {}

int KripkeFrame::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < worlds.size(); ++i)
        if (worlds[i] == name) return static_cast<int>(i);
    return -1;
}

KripkeModel::KripkeModel(KripkeFrame f) : frame(std::move(f)), val(frame.size()) {}

namespace {

using Memo = std::unordered_map<Formula, std::vector<char>>;

const std::vector<char>& eval_memo(const KripkeModel& m, Formula f, Memo& memo) {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    std::size_t n = m.size();
    std::vector<char> out(n, 0);
    switch (f.op()) {
        case Op::Atom:
            for (std::size_t w = 0; w < n; ++w) {
                auto v = m.val[w].find(f.name());
                if (v == m.val[w].end())
                    throw EvalError("atom '" + f.name() + "' has no value at world '" +
                                    m.frame.worlds[w] + "'");
                out[w] = v->second;
            }
            break;
        case Op::Neg: {
            const auto& s = eval_memo(m, f.sub(), memo);
            for (std::size_t w = 0; w < n; ++w) out[w] = !s[w];
            break;
        }
        case Op::Box: {
            const auto& s = eval_memo(m, f.sub(), memo);
            for (std::size_t w = 0; w < n; ++w) {
                out[w] = 1;
                for (std::size_t u = 0; u < n; ++u)
                    if (m.frame.related(w, u) && !s[u]) {
                        out[w] = 0;
                        break;
                    }
            }
            break;
        }
        case Op::And:
        case Op::Or: {
            std::vector<char> a = eval_memo(m, f.left(), memo);
            const auto& b = eval_memo(m, f.right(), memo);
            for (std::size_t w = 0; w < n; ++w)
                out[w] = f.op() == Op::And ? (a[w] && b[w]) : (a[w] || b[w]);
            break;
        }
    }
    return memo.emplace(f, std::move(out)).first->second;
}

bool need_reflexive(FrameClass c) {
    return c == FrameClass::T || c == FrameClass::B || c == FrameClass::S4 || c == FrameClass::S5;
}
bool need_symmetric(FrameClass c) {
    return c == FrameClass::KB || c == FrameClass::B || c == FrameClass::S5;
}
bool need_transitive(FrameClass c) {
    return c == FrameClass::K4 || c == FrameClass::S4 || c == FrameClass::S5;
}

}  // namespace

bool eval(const KripkeModel& m, std::size_t w, Formula f) {
    if (w >= m.size()) throw EvalError("unknown world index " + std::to_string(w));
    Memo memo;
    return eval_memo(m, f, memo)[w] != 0;
}

std::vector<char> eval_all(const KripkeModel& m, Formula f) {
    Memo memo;
    return eval_memo(m, f, memo);
}

FrameCheck check_frame_class(const KripkeFrame& fr, FrameClass c) {
    std::size_t n = fr.size();
    FrameCheck r;
    auto fail = [&r](std::string cond, std::vector<std::size_t> w) {
        r.ok = false;
        r.condition = std::move(cond);
        r.witness = std::move(w);
        return r;
    };
    if (c == FrameClass::D)
        for (std::size_t a = 0; a < n; ++a) {
            bool any = false;
            for (std::size_t b = 0; b < n; ++b) any = any || fr.related(a, b);
            if (!any) return fail("seriality", {a});
        }
    if (need_reflexive(c))
        for (std::size_t a = 0; a < n; ++a)
            if (!fr.related(a, a)) return fail("reflexivity", {a});
    if (need_symmetric(c))
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (fr.related(a, b) && !fr.related(b, a)) return fail("symmetry", {a, b});
    if (need_transitive(c))
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (fr.related(a, b))
                    for (std::size_t d = 0; d < n; ++d)
                        if (fr.related(b, d) && !fr.related(a, d))
                            return fail("transitivity", {a, b, d});
    return r;
}

void for_each_branch(const KripkeFrame& fr, std::size_t n,
                     const std::function<bool(const Branch&)>& visit) {
    if (n == 0) throw std::invalid_argument("branch length must be at least 1");
    Branch b;
    std::function<bool()> rec = [&]() -> bool {
        if (b.size() == n) return visit(b);
        for (std::size_t w = 0; w < fr.size(); ++w) {
            if (!b.empty() && !fr.related(b.back(), w)) continue;
            b.push_back(w);
            bool go_on = rec();
            b.pop_back();
            if (!go_on) return false;
        }
        return true;
    };
    rec();
}

std::vector<Branch> branches(const KripkeFrame& fr, std::size_t n) {
    std::vector<Branch> out;
    for_each_branch(fr, n, [&out](const Branch& b) {
        out.push_back(b);
        return true;
    });
    return out;
}

std::optional<Branch> countermodels_hypersequent(const KripkeModel& m, const Hypersequent& h) {
    std::size_t n = m.size(), k = h.size();
    if (k == 0 || n == 0) return std::nullopt;
    Memo memo;
    // ok[i][w]: world w refutes component i.
    std::vector<std::vector<char>> ok(k, std::vector<char>(n, 1));
    for (std::size_t i = 0; i < k; ++i) {
        for (Formula f : h[i].left) {
            const auto& t = eval_memo(m, f, memo);
            for (std::size_t w = 0; w < n; ++w) ok[i][w] = ok[i][w] && t[w];
        }
        for (Formula f : h[i].right) {
            const auto& t = eval_memo(m, f, memo);
            for (std::size_t w = 0; w < n; ++w) ok[i][w] = ok[i][w] && !t[w];
        }
    }
    // reach[i][w]: a refuting branch for components i..k-1 starts at w.
    std::vector<std::vector<char>> reach = ok;
    for (std::size_t i = k - 1; i-- > 0;)
        for (std::size_t w = 0; w < n; ++w) {
            if (!reach[i][w]) continue;
            bool any = false;
            for (std::size_t u = 0; u < n && !any; ++u)
                any = m.frame.related(w, u) && reach[i + 1][u];
            reach[i][w] = any;
        }
    Branch b;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t pick = n;
        for (std::size_t w = 0; w < n && pick == n; ++w)
            if (reach[i][w] && (i == 0 || m.frame.related(b.back(), w))) pick = w;
        if (pick == n) return std::nullopt;
        b.push_back(pick);
    }
    return b;
}

int default_jobs() {
    if (const char* env = std::getenv("HYPERSEQ_JOBS")) {
        int j = std::atoi(env);
        if (j > 0) return j;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace {

std::uint64_t frame_code(const std::vector<std::uint32_t>& succ, const std::vector<int>& perm) {
    std::size_t n = succ.size();
    std::uint64_t code = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (succ[a] >> b & 1u) code |= std::uint64_t{1} << (perm[a] * n + perm[b]);
    return code;
}

bool is_canonical(const std::vector<std::uint32_t>& succ) {
    std::size_t n = succ.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t base = frame_code(succ, perm);
    while (std::next_permutation(perm.begin(), perm.end()))
        if (frame_code(succ, perm) < base) return false;
    return true;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> canonical_frames(FrameClass c, int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("frame size must be between 1 and 6");
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> succ(n, 0);
    const bool refl = need_reflexive(c), sym = need_symmetric(c), trans = need_transitive(c);
    auto bit = [&](int a, int b) { return (succ[a] >> b & 1u) != 0; };
    auto idx = [n](int a, int b) { return a * n + b; };

    // Transitivity conflicts among pairs with index <= t.
    auto trans_ok = [&](int a, int b, int t) {
        auto assigned = [&](int x, int y) { return idx(x, y) <= t; };
        if (bit(a, b)) {
            for (int d = 0; d < n; ++d) {
                if (assigned(b, d) && bit(b, d) && assigned(a, d) && !bit(a, d)) return false;
                if (assigned(d, a) && bit(d, a) && assigned(d, b) && !bit(d, b)) return false;
            }
        } else {
            for (int d = 0; d < n; ++d)
                if (assigned(a, d) && bit(a, d) && assigned(d, b) && bit(d, b)) return false;
        }
        return true;
    };

    std::function<void(int)> rec = [&](int t) {
        if (t == n * n) {
            if (c == FrameClass::D)
                for (int a = 0; a < n; ++a)
                    if (succ[a] == 0) return;
            if (trans)
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        if (bit(a, b) && (succ[b] & ~succ[a]) != 0) return;
            if (is_canonical(succ)) out.push_back(succ);
            return;
        }
        int a = t / n, b = t % n;
        std::vector<int> choices;
        if (refl && a == b)
            choices = {1};
        else if (sym && b < a)
            choices = {bit(b, a) ? 1 : 0};
        else
            choices = {0, 1};
        for (int v : choices) {
            if (v) succ[a] |= 1u << b;
            else succ[a] &= ~(1u << b);
            bool ok = true;
            if (trans) {
                ok = trans_ok(a, b, t);
                // A mirrored pair may close a triple whose other members are set.
                if (ok && sym && b < a) ok = trans_ok(b, a, t);
            }
            if (ok) rec(t + 1);
        }
        succ[a] &= ~(1u << b);
    };
    rec(0);
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    std::sort(out.begin(), out.end(), [&id](const auto& x, const auto& y) {
        return frame_code(x, id) < frame_code(y, id);
    });
    return out;
}

namespace {

struct FastChecker {
    const Hypersequent& h;
    std::vector<Formula> closure;
    std::unordered_map<Formula, int> index;
    std::vector<std::string> atoms;
    std::vector<int> atom_slot;  // closure index -> atom number, or -1

    explicit FastChecker(const Hypersequent& hs) : h(hs) {
        closure = subformula_closure(h).items();
        atoms = atoms_of(h);
        for (std::size_t i = 0; i < closure.size(); ++i) index[closure[i]] = static_cast<int>(i);
        atom_slot.assign(closure.size(), -1);
        for (std::size_t i = 0; i < closure.size(); ++i)
            if (closure[i].is_atom())
                atom_slot[i] = static_cast<int>(
                    std::find(atoms.begin(), atoms.end(), closure[i].name()) - atoms.begin());
    }

    // Returns the reach mask of the first component (0 when no countermodel).
    std::uint32_t check(const std::vector<std::uint32_t>& succ, std::uint64_t valuation,
                        std::vector<std::uint32_t>& masks, std::vector<std::uint32_t>& reach) const {
        int n = static_cast<int>(succ.size());
        std::uint32_t all = (n == 32) ? ~0u : ((1u << n) - 1);
        std::size_t k = atoms.size();
        masks.assign(closure.size(), 0);
        for (std::size_t i = 0; i < closure.size(); ++i) {
            Formula f = closure[i];
            std::uint32_t m = 0;
            switch (f.op()) {
                case Op::Atom:
                    for (int w = 0; w < n; ++w)
                        if (valuation >> (w * k + atom_slot[i]) & 1u) m |= 1u << w;
                    break;
                case Op::Neg:
                    m = ~masks[index.at(f.sub())] & all;
                    break;
                case Op::Box: {
                    std::uint32_t s = masks[index.at(f.sub())];
                    for (int w = 0; w < n; ++w)
                        if ((succ[w] & ~s) == 0) m |= 1u << w;
                    break;
                }
                case Op::And:
                    m = masks[index.at(f.left())] & masks[index.at(f.right())];
                    break;
                case Op::Or:
                    m = masks[index.at(f.left())] | masks[index.at(f.right())];
                    break;
            }
            masks[i] = m;
        }
        std::size_t c = h.size();
        reach.assign(c, 0);
        for (std::size_t i = c; i-- > 0;) {
            std::uint32_t ok = all;
            for (Formula f : h[i].left) ok &= masks[index.at(f)];
            for (Formula f : h[i].right) ok &= ~masks[index.at(f)];
            if (i + 1 < c) {
                std::uint32_t next = reach[i + 1], r = 0;
                for (int w = 0; w < n; ++w)
                    if ((ok >> w & 1u) && (succ[w] & next)) r |= 1u << w;
                ok = r;
            }
            reach[i] = ok;
            if (!ok) return 0;
        }
        return reach[0];
    }
};

int lowest_bit(std::uint32_t m) { return __builtin_ctz(m); }

}  // namespace

BoundedResult bounded_validity(const Hypersequent& h, FrameClass c, int max_worlds, int jobs) {
    if (max_worlds < 1) throw std::invalid_argument("max_worlds must be at least 1");
    if (h.size() == 0) throw std::invalid_argument("empty hypersequent");
    FastChecker chk(h);
    std::size_t k = chk.atoms.size();
    if (jobs <= 0) jobs = default_jobs();
    BoundedResult result;
    for (int n = 1; n <= max_worlds; ++n) {
        if (static_cast<std::size_t>(n) * k > 62) throw std::invalid_argument("too many atoms for bound");
        auto frames = canonical_frames(c, n);
        const std::uint64_t vals = std::uint64_t{1} << (n * k);
        constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
        std::atomic<std::size_t> best{none};
        std::vector<std::uint64_t> best_val(frames.size(), 0);
        std::atomic<std::uint64_t> models{0};
        const int stride = std::max(1, std::min<int>(jobs, static_cast<int>(frames.size())));
        auto worker = [&](int t) {
            std::vector<std::uint32_t> masks, reach;
            std::uint64_t local = 0;
            for (std::size_t fi = t; fi < frames.size(); fi += stride) {
                if (fi > best.load()) break;
                for (std::uint64_t v = 0; v < vals; ++v) {
                    ++local;
                    if (chk.check(frames[fi], v, masks, reach)) {
                        best_val[fi] = v;
                        std::size_t cur = best.load();
                        while (fi < cur && !best.compare_exchange_weak(cur, fi)) {}
                        break;
                    }
                }
            }
            models += local;
        };
        if (stride == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < stride; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }
        result.frames_checked += frames.size();
        result.models_checked += models.load();
        if (best.load() != none) {
            const auto& succ = frames[best.load()];
            std::uint64_t v = best_val[best.load()];
            std::vector<std::string> names;
            for (int w = 0; w < n; ++w) names.push_back("w" + std::to_string(w));
            KripkeModel m{KripkeFrame(names)};
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (succ[a] >> b & 1u) m.frame.relate(a, b);
            for (int w = 0; w < n; ++w)
                for (std::size_t i = 0; i < k; ++i) m.set(w, chk.atoms[i], (v >> (w * k + i)) & 1u);
            std::vector<std::uint32_t> masks, reach;
            chk.check(succ, v, masks, reach);
            Branch br;
            for (std::size_t i = 0; i < h.size(); ++i) {
                std::uint32_t cand = reach[i];
                if (i > 0) cand &= succ[br.back()];
                br.push_back(lowest_bit(cand));
            }
            result.countermodel_found = true;
            result.model = std::move(m);
            result.branch = std::move(br);
            return result;
        }
    }
    return result;
}

}  // namespace hyperseq
