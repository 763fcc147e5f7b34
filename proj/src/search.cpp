#include "hyperseq/search.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hyperseq/random.hpp"
#include "rules_internal.hpp"

namespace hyperseq {

SearchLimits default_limits(const Hypersequent& goal) {
    SearchLimits l;
    l.max_components = goal.size() + static_cast<std::size_t>(box_count(goal)) + 1;
    l.max_depth = 400;
    l.max_nodes = 3'000'000;
    return l;
}

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Proof: return "proof";
        case SearchStatus::Unprovable: return "unprovable-exhausted";
        case SearchStatus::Unknown: return "unknown-limit-hit";
    }
    return "?";
}

namespace detail {

RuleApp app_of(Rule r, std::size_t comp, std::optional<Formula> pr, std::optional<Side> side,
               std::optional<std::size_t> aux) {
    RuleApp a;
    a.rule = r;
    a.component = comp;
    a.principal = pr;
    a.side = side;
    a.aux = aux;
    return a;
}

DerivPtr step(Hypersequent c, RuleApp a, std::vector<DerivPtr> ps) {
    std::vector<Hypersequent> hs;
    for (const auto& p : ps) hs.push_back(p->conclusion);
    StepCheck r = check_schema(c, a, hs);
    if (!r.ok) throw std::logic_error("internal: built an invalid " + rule_name(a.rule) + " step: " + r.reason);
    return make_derivation(std::move(c), std::move(a), std::move(ps));
}

Hypersequent without_comp(const Hypersequent& h, std::size_t i) {
    Hypersequent r = h;
    r.comps.erase(r.comps.begin() + static_cast<long>(i));
    return r;
}

Hypersequent with_comp(const Hypersequent& h, std::size_t i, Sequent s) {
    Hypersequent r = h;
    r.comps.insert(r.comps.begin() + static_cast<long>(i), std::move(s));
    return r;
}

// Main side of the connective and modal rules.
std::optional<Side> main_side(Rule r) {
    switch (r) {
        case Rule::NegL: case Rule::AndL1: case Rule::AndL2: case Rule::OrL:
        case Rule::T: case Rule::BoxL: case Rule::TL:
            return Side::Left;
        case Rule::NegR: case Rule::OrR1: case Rule::OrR2: case Rule::AndR:
        case Rule::BoxR: case Rule::TR:
            return Side::Right;
        default:
            return std::nullopt;
    }
}

}  // namespace detail

using namespace detail;

std::vector<std::vector<std::size_t>> component_map(const RuleApp& a, std::size_t n, std::size_t) {
    std::vector<std::vector<std::size_t>> m(n);
    std::size_t s = a.component;
    for (std::size_t j = 0; j < n; ++j) {
        switch (a.rule) {
            case Rule::Id:
                break;
            case Rule::EWL:
                if (j > 0) m[j] = {j - 1};
                break;
            case Rule::EWR:
                if (j + 1 < n) m[j] = {j};
                break;
            case Rule::EW:
                if (j < s) m[j] = {j};
                else if (j > s) m[j] = {j - 1};
                break;
            case Rule::EC:
            case Rule::Merge:
                if (j < s) m[j] = {j};
                else if (j == s) m[j] = {s, s + 1};
                else m[j] = {j + 1};
                break;
            case Rule::Sym:
                m[j] = {n - 1 - j};
                break;
            case Rule::EE:
                m[j] = {j == s ? s + 1 : j == s + 1 ? s : j};
                break;
            default:
                m[j] = {j};
        }
    }
    return m;
}

DerivPtr weaken_to(DerivPtr d, const Hypersequent& target) {
    const Hypersequent& c = d->conclusion;
    if (c.size() != target.size()) throw std::invalid_argument("weaken_to: component counts differ");
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!c[i].left.subset_of(target[i].left) || !c[i].right.subset_of(target[i].right))
            throw std::invalid_argument("weaken_to: " + to_string(c) + " is not included in " +
                                        to_string(target));
    Hypersequent cur = c;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (Side s : {Side::Left, Side::Right}) {
            for (Formula f : target[i].side(s)) {
                if (cur[i].side(s).contains(f)) continue;
                cur[i].side(s).insert(f);
                d = step(cur, app_of(s == Side::Left ? Rule::TL : Rule::TR, i, f, s), {d});
            }
        }
    }
    return d;
}

DerivPtr identity_derivation(Formula f) {
    auto single = [](FSet l, FSet r) { return Hypersequent{{Sequent{std::move(l), std::move(r)}}}; };
    switch (f.op()) {
        case Op::Atom:
            return step(single({f}, {f}), app_of(Rule::Id, 0), {});
        case Op::Neg: {
            Formula a = f.sub();
            DerivPtr d = identity_derivation(a);
            d = step(single({a, f}, {}), app_of(Rule::NegL, 0, f, Side::Left), {d});
            return step(single({f}, {f}), app_of(Rule::NegR, 0, f, Side::Right), {d});
        }
        case Op::Box: {
            Formula a = f.sub();
            DerivPtr d = identity_derivation(a);
            Hypersequent two{{Sequent{}, Sequent{{a}, {a}}}};
            d = step(two, app_of(Rule::EWL, 0), {d});
            Hypersequent moved{{Sequent{{f}, {}}, Sequent{{}, {a}}}};
            d = step(moved, app_of(Rule::BoxL, 0, f, Side::Left, 1), {d});
            return step(single({f}, {f}), app_of(Rule::BoxR, 0, f, Side::Right), {d});
        }
        case Op::And: {
            DerivPtr l = step(single({f}, {f.left()}), app_of(Rule::AndL1, 0, f, Side::Left),
                              {identity_derivation(f.left())});
            DerivPtr r = step(single({f}, {f.right()}), app_of(Rule::AndL2, 0, f, Side::Left),
                              {identity_derivation(f.right())});
            return step(single({f}, {f}), app_of(Rule::AndR, 0, f, Side::Right), {l, r});
        }
        case Op::Or: {
            DerivPtr l = step(single({f.left()}, {f}), app_of(Rule::OrR1, 0, f, Side::Right),
                              {identity_derivation(f.left())});
            DerivPtr r = step(single({f.right()}, {f}), app_of(Rule::OrR2, 0, f, Side::Right),
                              {identity_derivation(f.right())});
            return step(single({f}, {f}), app_of(Rule::OrL, 0, f, Side::Left), {l, r});
        }
    }
    throw std::logic_error("unreachable");
}

DerivPtr strip_formula(const DerivPtr& d, std::size_t comp, Side side, Formula f) {
    const Hypersequent& c = d->conclusion;
    if (comp >= c.size() || !c[comp].side(side).contains(f)) return d;
    Hypersequent nc = c;
    nc[comp].side(side).erase(f);
    const RuleApp& a = d->app;
    bool is_main = a.principal && *a.principal == f && a.component == comp && main_side(a.rule) == side;
    if (is_main) {
        if (a.rule != Rule::TL && a.rule != Rule::TR) return nullptr;
        const DerivPtr& p = d->premises[0];
        if (p->conclusion[comp].side(side).contains(f)) return strip_formula(p, comp, side, f);
        return p;
    }
    std::vector<DerivPtr> ps;
    for (std::size_t i = 0; i < d->premises.size(); ++i) {
        DerivPtr p = d->premises[i];
        const auto map = component_map(a, c.size(), i);
        for (std::size_t m : map[comp]) {
            if (m < p->conclusion.size() && p->conclusion[m].side(side).contains(f)) {
                p = strip_formula(p, m, side, f);
                if (!p) return nullptr;
            }
        }
        ps.push_back(std::move(p));
    }
    std::vector<Hypersequent> hs;
    for (const auto& p : ps) hs.push_back(p->conclusion);
    if (!check_schema(nc, a, hs).ok) return nullptr;
    return make_derivation(std::move(nc), a, std::move(ps));
}

namespace {

DerivPtr tidy_rec(const DerivPtr& d, std::unordered_map<const Derivation*, DerivPtr>& memo) {
    auto it = memo.find(d.get());
    if (it != memo.end()) return it->second;
    std::vector<DerivPtr> ps;
    bool changed = false;
    for (const auto& p : d->premises) {
        ps.push_back(tidy_rec(p, memo));
        changed = changed || ps.back() != p;
    }
    const RuleApp& a = d->app;
    auto side = main_side(a.rule);
    if (side && a.principal && a.rule != Rule::TL && a.rule != Rule::TR) {
        std::vector<DerivPtr> trial = ps;
        bool stripped = false;
        for (auto& p : trial) {
            if (a.component < p->conclusion.size() &&
                p->conclusion[a.component].side(*side).contains(*a.principal)) {
                DerivPtr s = strip_formula(p, a.component, *side, *a.principal);
                if (!s) {
                    stripped = false;
                    break;
                }
                p = s;
                stripped = true;
            }
        }
        if (stripped) {
            std::vector<Hypersequent> hs;
            for (const auto& p : trial) hs.push_back(p->conclusion);
            if (check_schema(d->conclusion, a, hs).ok) {
                ps = std::move(trial);
                changed = true;
            }
        }
    }
    DerivPtr out = changed ? make_derivation(d->conclusion, a, std::move(ps)) : d;
    memo.emplace(d.get(), out);
    return out;
}

}  // namespace

DerivPtr tidy(const DerivPtr& d) {
    std::unordered_map<const Derivation*, DerivPtr> memo;
    return tidy_rec(d, memo);
}

// ---------------------------------------------------------------------------

namespace detail {

std::optional<Step> additive_step(const Hypersequent& g, const CalculusSpec& spec) {
    std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Sequent& s = g[i];
        for (Formula f : s.left) {
            Hypersequent p = g;
            switch (f.op()) {
                case Op::Neg:
                    if (!s.right.contains(f.sub())) {
                        p[i].right.insert(f.sub());
                        return Step{app_of(Rule::NegL, i, f, Side::Left), p};
                    }
                    break;
                case Op::And:
                    if (!s.left.contains(f.left())) {
                        p[i].left.insert(f.left());
                        return Step{app_of(Rule::AndL1, i, f, Side::Left), p};
                    }
                    if (!s.left.contains(f.right())) {
                        p[i].left.insert(f.right());
                        return Step{app_of(Rule::AndL2, i, f, Side::Left), p};
                    }
                    break;
                case Op::Box:
                    if (i + 1 < n && !g[i + 1].left.contains(f.sub())) {
                        p[i + 1].left.insert(f.sub());
                        return Step{app_of(Rule::BoxL, i, f, Side::Left, i + 1), p};
                    }
                    if (spec.allows(Rule::T) && !s.left.contains(f.sub())) {
                        p[i].left.insert(f.sub());
                        return Step{app_of(Rule::T, i, f, Side::Left), p};
                    }
                    break;
                default:
                    break;
            }
        }
        for (Formula f : s.right) {
            Hypersequent p = g;
            if (f.op() == Op::Neg && !s.left.contains(f.sub())) {
                p[i].left.insert(f.sub());
                return Step{app_of(Rule::NegR, i, f, Side::Right), p};
            }
            if (f.op() == Op::Or) {
                if (!s.right.contains(f.left())) {
                    p[i].right.insert(f.left());
                    return Step{app_of(Rule::OrR1, i, f, Side::Right), p};
                }
                if (!s.right.contains(f.right())) {
                    p[i].right.insert(f.right());
                    return Step{app_of(Rule::OrR2, i, f, Side::Right), p};
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<Branching> branching_step(const Hypersequent& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Sequent& s = g[i];
        for (Formula f : s.left) {
            if (f.op() == Op::Or && !s.left.contains(f.left()) && !s.left.contains(f.right())) {
                Hypersequent a = g, b = g;
                a[i].left.insert(f.left());
                b[i].left.insert(f.right());
                return Branching{app_of(Rule::OrL, i, f, Side::Left), a, b};
            }
        }
        for (Formula f : s.right) {
            if (f.op() == Op::And && !s.right.contains(f.left()) && !s.right.contains(f.right())) {
                Hypersequent a = g, b = g;
                a[i].right.insert(f.left());
                b[i].right.insert(f.right());
                return Branching{app_of(Rule::AndR, i, f, Side::Right), a, b};
            }
        }
    }
    return std::nullopt;
}

DerivPtr axiom_macro(const Hypersequent& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (Formula f : g[i].left) {
            if (!g[i].right.contains(f)) continue;
            DerivPtr d = identity_derivation(f);
            Hypersequent cur = d->conclusion;
            for (std::size_t k = 0; k < i; ++k) {
                cur = with_comp(cur, 0, Sequent{});
                d = step(cur, app_of(Rule::EWL, 0), {d});
            }
            while (cur.size() < g.size()) {
                cur.comps.push_back(Sequent{});
                d = step(cur, app_of(Rule::EWR, cur.size() - 1), {d});
            }
            return weaken_to(d, g);
        }
    }
    return nullptr;
}

}  // namespace detail

namespace {

using namespace detail;

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Searcher {
public:
    Searcher(const CalculusSpec& spec, SearchLimits lim) : spec_(spec), lim_(lim) {}

    struct Res {
        DerivPtr proof;
        std::size_t low = kNone;  // shallowest path index this failure depends on
        bool limit = false;
    };

    Res prove(const Hypersequent& g) {
        std::vector<std::pair<Hypersequent, RuleApp>> chain;
        Hypersequent cur = g;
        while (auto st = additive_step(cur, spec_)) {
            chain.emplace_back(cur, st->app);
            cur = std::move(st->premise);
        }
        Res r = prove_saturated(cur);
        if (r.proof) {
            DerivPtr d = r.proof;
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) d = step(it->first, it->second, {d});
            r.proof = d;
        }
        return r;
    }

    SearchStats stats;
    bool budget_out = false;

private:
    Res prove_saturated(const Hypersequent& s) {
        if (auto it = proofs_.find(s); it != proofs_.end()) {
            ++stats.proof_hits;
            return Res{it->second};
        }
        if (failed_.count(s)) {
            ++stats.memo_hits;
            return Res{};
        }
        if (auto it = on_path_.find(s); it != on_path_.end()) {
            ++stats.cycles;
            return Res{nullptr, it->second, false};
        }
        if (budget_out || stats.nodes >= lim_.max_nodes) {
            budget_out = true;
            return Res{nullptr, kNone, true};
        }
        if (on_path_.size() >= lim_.max_depth) {
            ++stats.depth_cuts;
            return Res{nullptr, kNone, true};
        }
        ++stats.nodes;
        if (DerivPtr ax = axiom_macro(s)) {
            proofs_.emplace(s, ax);
            return Res{ax};
        }

        std::size_t idx = on_path_.size();
        on_path_.emplace(s, idx);
        stats.max_path = std::max(stats.max_path, idx + 1);
        std::size_t marker = pending_.size();
        Res out;

        auto succeed = [&](DerivPtr p) {
            on_path_.erase(s);
            pending_.resize(marker);
            proofs_.emplace(s, p);
            return Res{p};
        };
        auto give_up = [&]() {
            on_path_.erase(s);
            if (out.limit) {
                pending_.resize(marker);
            } else if (out.low >= idx) {
                for (std::size_t k = marker; k < pending_.size(); ++k) failed_.insert(pending_[k]);
                pending_.resize(marker);
                failed_.insert(s);
                out.low = kNone;
            } else {
                pending_.push_back(s);
            }
            return out;
        };
        auto merge = [&](const Res& r) {
            out.low = std::min(out.low, r.low);
            out.limit = out.limit || r.limit;
        };
        // The child is provable iff s is; a definite failure settles s.
        auto settles = [&](const Res& r) { return !r.proof && !r.limit && r.low == kNone; };
        auto definite_failure = [&]() {
            on_path_.erase(s);
            pending_.resize(marker);
            failed_.insert(s);
            return Res{};
        };

        if (auto b = branching_step(s)) {
            Res r1 = prove(b->first);
            if (!r1.proof) {
                if (settles(r1)) return definite_failure();
                merge(r1);
                return give_up();
            }
            Res r2 = prove(b->second);
            if (!r2.proof) {
                if (settles(r2)) return definite_failure();
                merge(r2);
                return give_up();
            }
            return succeed(step(s, b->app, {r1.proof, r2.proof}));
        }

        std::size_t n = s.size();
        auto fits = [&](std::size_t comps) {
            if (comps <= lim_.max_components) return true;
            ++stats.component_cuts;
            out.limit = true;
            return false;
        };

        // BoxR with the main sentence kept.
        for (Formula f : s[n - 1].right) {
            if (f.op() != Op::Box) continue;
            Hypersequent p = s;
            p.comps.push_back(Sequent{{}, {f.sub()}});
            if (!fits(p.size())) continue;
            Res r = prove(p);
            if (r.proof) return succeed(step(s, app_of(Rule::BoxR, n - 1, f, Side::Right), {r.proof}));
            if (settles(r)) return definite_failure();
            merge(r);
        }

        // Dropping a component; the macro re-adds it with EWL/EWR/EW and
        // weakening.
        if (n >= 2) {
            for (std::size_t i = 0; i < n; ++i) {
                bool end = i == 0 || i + 1 == n;
                if (!end && !spec_.allows(Rule::EW)) continue;
                Hypersequent p = without_comp(s, i);
                Res r = prove(p);
                if (r.proof) {
                    Hypersequent mid = with_comp(p, i, Sequent{});
                    Rule rule = i == 0 ? Rule::EWL : i + 1 == n ? Rule::EWR : Rule::EW;
                    DerivPtr d = step(mid, app_of(rule, i), {r.proof});
                    return succeed(weaken_to(d, s));
                }
                merge(r);
            }
        }

        auto try_structural = [&](Hypersequent p, RuleApp a) -> std::optional<Res> {
            if (p == s || !fits(p.size())) return std::nullopt;
            Res r = prove(p);
            if (r.proof) return succeed(step(s, a, {r.proof}));
            merge(r);
            return std::nullopt;
        };

        if (spec_.allows(Rule::Sym)) {
            Hypersequent p = s;
            std::reverse(p.comps.begin(), p.comps.end());
            if (auto r = try_structural(p, app_of(Rule::Sym, 0))) return *r;
        }
        if (spec_.allows(Rule::EE)) {
            for (std::size_t i = 0; i + 1 < n; ++i) {
                Hypersequent p = s;
                std::swap(p[i], p[i + 1]);
                if (auto r = try_structural(p, app_of(Rule::EE, i, std::nullopt, std::nullopt, i + 1)))
                    return *r;
            }
        }
        for (Rule dup : {Rule::EC, Rule::Merge}) {
            if (!spec_.allows(dup)) continue;
            for (std::size_t i = 0; i < n; ++i) {
                if (auto r = try_structural(with_comp(s, i, s[i]),
                                            app_of(dup, i, std::nullopt, std::nullopt, i + 1)))
                    return *r;
            }
        }
        if (spec_.allows(Rule::Drop)) {
            Hypersequent p = s;
            p.comps.push_back(Sequent{});
            if (auto r = try_structural(p, app_of(Rule::Drop, n - 1))) return *r;
        }
        return give_up();
    }

    const CalculusSpec& spec_;
    SearchLimits lim_;
    std::unordered_map<Hypersequent, DerivPtr, HypersequentHash> proofs_;
    std::unordered_set<Hypersequent, HypersequentHash> failed_;
    std::unordered_map<Hypersequent, std::size_t, HypersequentHash> on_path_;
    std::vector<Hypersequent> pending_;
};

}  // namespace

SearchResult search(const Hypersequent& goal, const CalculusSpec& spec, SearchLimits limits) {
    if (goal.size() == 0) throw std::invalid_argument("empty goal");
    SearchLimits def = default_limits(goal);
    if (limits.max_components == 0) limits.max_components = def.max_components;
    if (limits.max_depth == 0) limits.max_depth = def.max_depth;
    if (limits.max_nodes == 0) limits.max_nodes = def.max_nodes;
    CalculusSpec cut_free = spec;
    cut_free.cut = false;
    Searcher s(cut_free, limits);
    Searcher::Res r = s.prove(goal);
    SearchResult out;
    out.limits = limits;
    out.stats = s.stats;
    if (r.proof) {
        out.status = SearchStatus::Proof;
        out.proof = tidy(r.proof);
    } else if (r.limit || s.budget_out) {
        out.status = SearchStatus::Unknown;
    } else {
        out.status = SearchStatus::Unprovable;
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

class Fuzzer {
public:
    Fuzzer(const CalculusSpec& spec, const FuzzOptions& o) : spec_(spec), opts_(o), rng_(o.seed) {
        for (Rule r : all_rules())
            if (r != Rule::Id && r != Rule::Cut && spec.allows(r)) rules_.push_back(r);
    }

    DerivPtr gen(std::size_t budget) {
        if (budget == 0 || chance(0.12)) return leaf();
        bool binary = (spec_.allows(Rule::AndR) || spec_.allows(Rule::OrL)) && chance(0.15);
        if (binary) {
            if (DerivPtr d = apply_binary(gen(budget - 1), gen(budget - 1))) return d;
        }
        DerivPtr d = gen(budget - 1);
        std::vector<std::pair<Rule, int>> options;
        for (Rule r : rules_)
            if (r != Rule::AndR && r != Rule::OrL && applicable(r, d->conclusion))
                options.emplace_back(r, weight(r));
        while (!options.empty()) {
            int total = 0;
            for (auto& [r, w] : options) total += w;
            int x = std::uniform_int_distribution<int>(0, total - 1)(rng_);
            std::size_t k = 0;
            while (x >= options[k].second) x -= options[k++].second;
            if (DerivPtr out = apply_unary(options[k].first, d)) return out;
            options.erase(options.begin() + static_cast<long>(k));
        }
        return d;
    }

private:
    bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    Formula random_small() { return random_formula(rng_, opts_.atoms, 2); }

    DerivPtr leaf() {
        Formula a = Formula::atom(opts_.atoms[below(opts_.atoms.size())]);
        return step(Hypersequent{{Sequent{{a}, {a}}}}, app_of(Rule::Id, 0), {});
    }

    static int weight(Rule r) {
        switch (r) {
            case Rule::BoxR: return 6;
            case Rule::BoxL: return 4;
            case Rule::EC: case Rule::T: case Rule::Merge: return 3;
            case Rule::EWL: case Rule::EWR: case Rule::EW: return 2;
            default: return 2;
        }
    }

    static bool applicable(Rule r, const Hypersequent& h) {
        std::size_t n = h.size();
        auto any_side = [&](Side s) {
            for (const auto& c : h.comps)
                if (!c.side(s).empty()) return true;
            return false;
        };
        switch (r) {
            case Rule::BoxR:
                return n >= 2 && h[n - 1].left.empty() && h[n - 1].right.size() == 1;
            case Rule::BoxL:
                for (std::size_t j = 1; j < n; ++j)
                    if (!h[j].left.empty()) return true;
                return false;
            case Rule::NegL: case Rule::OrR1: case Rule::OrR2:
                return any_side(Side::Right);
            case Rule::NegR: case Rule::AndL1: case Rule::AndL2: case Rule::T:
                return any_side(Side::Left);
            case Rule::Drop:
                return n >= 2 && h[n - 1].empty();
            case Rule::EE: case Rule::Merge: case Rule::EC:
                return n >= 2;
            case Rule::Sym:
                return n >= 2;
            default:
                return true;
        }
    }

    // Random formula occurrence on side s: (component, formula).
    std::optional<std::pair<std::size_t, Formula>> pick_occurrence(const Hypersequent& h, Side s,
                                                                   std::size_t from = 0) {
        std::vector<std::pair<std::size_t, Formula>> all;
        for (std::size_t i = from; i < h.size(); ++i)
            for (Formula f : h[i].side(s)) all.emplace_back(i, f);
        if (all.empty()) return std::nullopt;
        return all[below(all.size())];
    }

    DerivPtr apply_unary(Rule r, const DerivPtr& d) {
        const Hypersequent& p = d->conclusion;
        std::size_t n = p.size();
        Hypersequent c = p;
        switch (r) {
            case Rule::TL:
            case Rule::TR: {
                Side s = r == Rule::TL ? Side::Left : Side::Right;
                std::size_t i = below(n);
                Formula f = random_small();
                c[i].side(s).insert(f);
                return step(c, app_of(r, i, f, s), {d});
            }
            case Rule::NegL:
            case Rule::NegR: {
                Side from = r == Rule::NegL ? Side::Right : Side::Left;
                Side to = r == Rule::NegL ? Side::Left : Side::Right;
                auto occ = pick_occurrence(p, from);
                if (!occ) return nullptr;
                auto [i, f] = *occ;
                Formula g = Formula::neg(f);
                if (chance(0.8)) c[i].side(from).erase(f);
                c[i].side(to).insert(g);
                return checked(c, app_of(r, i, g, to), {d});
            }
            case Rule::AndL1:
            case Rule::AndL2:
            case Rule::OrR1:
            case Rule::OrR2: {
                Side s = (r == Rule::AndL1 || r == Rule::AndL2) ? Side::Left : Side::Right;
                auto occ = pick_occurrence(p, s);
                if (!occ) return nullptr;
                auto [i, f] = *occ;
                Formula other = random_small();
                bool first = r == Rule::AndL1 || r == Rule::OrR1;
                Formula g = s == Side::Left ? (first ? Formula::conj(f, other) : Formula::conj(other, f))
                                            : (first ? Formula::disj(f, other) : Formula::disj(other, f));
                if (chance(0.8)) c[i].side(s).erase(f);
                c[i].side(s).insert(g);
                return checked(c, app_of(r, i, g, s), {d});
            }
            case Rule::T: {
                auto occ = pick_occurrence(p, Side::Left);
                if (!occ) return nullptr;
                auto [i, f] = *occ;
                Formula g = Formula::box(f);
                if (chance(0.8)) c[i].left.erase(f);
                c[i].left.insert(g);
                return checked(c, app_of(r, i, g, Side::Left), {d});
            }
            case Rule::BoxL: {
                auto occ = pick_occurrence(p, Side::Left, 1);
                if (!occ) return nullptr;
                auto [j, f] = *occ;
                Formula g = Formula::box(f);
                if (chance(0.8)) c[j].left.erase(f);
                c[j - 1].left.insert(g);
                return checked(c, app_of(r, j - 1, g, Side::Left, j), {d});
            }
            case Rule::BoxR: {
                if (!applicable(r, p)) return nullptr;
                Formula g = Formula::box(p[n - 1].right.items()[0]);
                c.comps.pop_back();
                c[n - 2].right.insert(g);
                return checked(c, app_of(r, n - 2, g, Side::Right), {d});
            }
            case Rule::EWL:
                return step(with_comp(p, 0, Sequent{}), app_of(r, 0), {d});
            case Rule::EWR:
                return step(with_comp(p, n, Sequent{}), app_of(r, n), {d});
            case Rule::EW: {
                std::size_t i = below(n + 1);
                return step(with_comp(p, i, Sequent{}), app_of(r, i), {d});
            }
            case Rule::Drop: {
                if (!applicable(r, p)) return nullptr;
                c.comps.pop_back();
                return step(c, app_of(r, n - 2), {d});
            }
            case Rule::Sym:
                std::reverse(c.comps.begin(), c.comps.end());
                return step(c, app_of(r, 0), {d});
            case Rule::EE: {
                std::size_t i = below(n - 1);
                std::swap(c[i], c[i + 1]);
                return step(c, app_of(r, i, std::nullopt, std::nullopt, i + 1), {d});
            }
            case Rule::Merge: {
                std::size_t i = below(n - 1);
                c[i] = p[i].united(p[i + 1]);
                c.comps.erase(c.comps.begin() + static_cast<long>(i) + 1);
                return step(c, app_of(r, i, std::nullopt, std::nullopt, i + 1), {d});
            }
            case Rule::EC: {
                // Weaken an adjacent pair to a common sequent, then contract.
                std::size_t i = below(n - 1);
                Sequent u = p[i].united(p[i + 1]);
                Hypersequent w = p;
                w[i] = u;
                w[i + 1] = u;
                DerivPtr dw = weaken_to(d, w);
                c = without_comp(w, i + 1);
                return step(c, app_of(r, i, std::nullopt, std::nullopt, i + 1), {dw});
            }
            default:
                return nullptr;
        }
    }

    DerivPtr checked(Hypersequent c, RuleApp a, std::vector<DerivPtr> ps) {
        std::vector<Hypersequent> hs;
        for (const auto& p : ps) hs.push_back(p->conclusion);
        if (!check_schema(c, a, hs).ok) return nullptr;
        return make_derivation(std::move(c), std::move(a), std::move(ps));
    }

    DerivPtr pad(DerivPtr d, std::size_t m) {
        while (d->conclusion.size() < m) {
            std::size_t n = d->conclusion.size();
            d = step(with_comp(d->conclusion, n, Sequent{}), app_of(Rule::EWR, n), {d});
        }
        return d;
    }

    DerivPtr apply_binary(DerivPtr d1, DerivPtr d2) {
        bool and_r = spec_.allows(Rule::AndR) && (!spec_.allows(Rule::OrL) || chance(0.5));
        Rule r = and_r ? Rule::AndR : Rule::OrL;
        Side s = and_r ? Side::Right : Side::Left;
        std::size_t m = std::max(d1->conclusion.size(), d2->conclusion.size());
        d1 = pad(d1, m);
        d2 = pad(d2, m);
        std::size_t i = below(m);
        auto main_of = [&](DerivPtr& d) {
            const FSet& side = d->conclusion[i].side(s);
            if (!side.empty() && chance(0.8)) return side.items()[below(side.size())];
            Formula f = random_small();
            Hypersequent w = d->conclusion;
            w[i].side(s).insert(f);
            d = step(w, app_of(s == Side::Left ? Rule::TL : Rule::TR, i, f, s), {d});
            return f;
        };
        Formula phi = main_of(d1), psi = main_of(d2);
        const Hypersequent& p1 = d1->conclusion;
        const Hypersequent& p2 = d2->conclusion;
        Hypersequent ctx;
        for (std::size_t k = 0; k < m; ++k) ctx.comps.push_back(p1[k].united(p2[k]));
        if (!p2[i].side(s).contains(phi)) ctx[i].side(s).erase(phi);
        if (!p1[i].side(s).contains(psi)) ctx[i].side(s).erase(psi);
        Hypersequent t1 = ctx, t2 = ctx;
        t1[i].side(s).insert(phi);
        t2[i].side(s).insert(psi);
        Formula g = and_r ? Formula::conj(phi, psi) : Formula::disj(phi, psi);
        Hypersequent c = ctx;
        c[i].side(s).insert(g);
        return checked(c, app_of(r, i, g, s), {weaken_to(d1, t1), weaken_to(d2, t2)});
    }

    const CalculusSpec& spec_;
    FuzzOptions opts_;
    std::mt19937_64 rng_;
    std::vector<Rule> rules_;
};

}  // namespace

std::vector<DerivPtr> fuzz_derivations(const CalculusSpec& spec, const FuzzOptions& opts) {
    CalculusSpec cut_free = spec;
    cut_free.cut = false;
    Fuzzer f(cut_free, opts);
    std::vector<DerivPtr> out;
    out.reserve(opts.count);
    for (std::size_t k = 0; k < opts.count; ++k) out.push_back(f.gen(opts.max_depth));
    return out;
}

}  // namespace hyperseq
