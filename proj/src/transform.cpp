#include "hyperseq/transform.hpp"

#include <algorithm>
#include <optional>

#include "hyperseq/search.hpp"

namespace hyperseq {

namespace {

RuleApp app_of(Rule r, std::size_t comp, std::optional<Formula> pr = std::nullopt,
               std::optional<Side> side = std::nullopt, std::optional<std::size_t> aux = std::nullopt) {
    RuleApp a;
    a.rule = r;
    a.component = comp;
    a.principal = pr;
    a.side = side;
    a.aux = aux;
    return a;
}

std::vector<Hypersequent> conclusions(const std::vector<DerivPtr>& ps) {
    std::vector<Hypersequent> hs;
    for (const auto& p : ps) hs.push_back(p->conclusion);
    return hs;
}

DerivPtr step(Hypersequent c, RuleApp a, std::vector<DerivPtr> ps) {
    StepCheck r = check_schema(c, a, conclusions(ps));
    if (!r.ok) throw TransformError("internal: invalid " + rule_name(a.rule) + " step: " + r.reason);
    return make_derivation(std::move(c), std::move(a), std::move(ps));
}

DerivPtr try_step(const Hypersequent& c, const RuleApp& a, const std::vector<DerivPtr>& ps) {
    if (!check_schema(c, a, conclusions(ps)).ok) return nullptr;
    return make_derivation(c, a, ps);
}

// Right-nested fold in canonical order.
Formula fold(const FSet& s, Formula (*op)(Formula, Formula)) {
    const auto& v = s.items();
    Formula acc = v.back();
    for (std::size_t i = v.size() - 1; i-- > 0;) acc = op(v[i], acc);
    return acc;
}

Side other(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

}  // namespace

Formula component_formula(const Sequent& s) {
    if (s.empty()) throw TransformError("an empty component has no formula image");
    if (s.left.empty()) return fold(s.right, Formula::disj);
    Formula neg = Formula::neg(fold(s.left, Formula::conj));
    if (s.right.empty()) return neg;
    return Formula::disj(neg, fold(s.right, Formula::disj));
}

TranslationResult translate(const Hypersequent& h) {
    if (h.size() == 0) throw TransformError("empty hypersequent");
    if (h[h.size() - 1].empty()) throw TransformError("the final component is empty");
    TranslationResult r;
    Formula acc = component_formula(h[h.size() - 1]);
    std::vector<std::string> trace{"component " + std::to_string(h.size() - 1) + ": " + acc.str()};
    for (std::size_t i = h.size() - 1; i-- > 0;) {
        Formula boxed = Formula::box(acc);
        if (h[i].empty()) {
            acc = boxed;
            trace.push_back("component " + std::to_string(i) + ": empty, keeps " + boxed.str());
        } else {
            Formula c = component_formula(h[i]);
            acc = Formula::disj(c, boxed);
            trace.push_back("component " + std::to_string(i) + ": " + c.str() + " | " + boxed.str());
        }
    }
    std::reverse(trace.begin(), trace.end());
    r.formula = acc;
    r.trace = std::move(trace);
    return r;
}

// ---------------------------------------------------------------------------
// EC from Merge and Merge elimination

DerivPtr ec_from_merge(const DerivPtr& d) {
    const Hypersequent& c = d->conclusion;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        if (c[i] != c[i + 1]) continue;
        Hypersequent m = c;
        m.comps.erase(m.comps.begin() + static_cast<long>(i) + 1);
        return step(m, app_of(Rule::Merge, i, std::nullopt, std::nullopt, i + 1), {d});
    }
    throw TransformError("end hypersequent has no adjacent duplicate components");
}

namespace {

Hypersequent merged(const Hypersequent& h, std::size_t k) {
    Hypersequent r = h;
    r[k] = h[k].united(h[k + 1]);
    r.comps.erase(r.comps.begin() + static_cast<long>(k) + 1);
    return r;
}

std::size_t shift(std::size_t s, std::size_t k) { return s <= k ? s : s - 1; }

DerivPtr merge_rec(const DerivPtr& d, std::size_t k) {
    const Hypersequent& c = d->conclusion;
    const RuleApp& a = d->app;
    std::size_t n = c.size();
    Hypersequent target = merged(c, k);
    auto finish = [&](RuleApp na, std::vector<DerivPtr> ps) -> DerivPtr {
        if (ps.size() == 1 && ps[0]->conclusion == target) return ps[0];
        if (DerivPtr r = try_step(target, na, ps)) return r;
        throw TransformError("Merge elimination failed at " + rule_name(a.rule) + " on " + to_string(c));
    };
    switch (a.rule) {
        case Rule::Cut:
        case Rule::Merge:
        case Rule::EC:
        case Rule::EW:
        case Rule::EE:
        case Rule::Drop:
        case Rule::Id:
            throw TransformError("rule " + rule_name(a.rule) + " is outside cut-free RTB");
        case Rule::EWL: {
            if (k == 0) return d->premises[0];
            DerivPtr p = merge_rec(d->premises[0], k - 1);
            return finish(app_of(Rule::EWL, 0), {p});
        }
        case Rule::EWR: {
            if (k + 2 == n) return d->premises[0];
            DerivPtr p = merge_rec(d->premises[0], k);
            return finish(app_of(Rule::EWR, n - 2), {p});
        }
        case Rule::Sym: {
            DerivPtr p = merge_rec(d->premises[0], n - 2 - k);
            return finish(a, {p});
        }
        case Rule::BoxR: {
            DerivPtr p = merge_rec(d->premises[0], k);
            RuleApp na = a;
            na.component = n - 2;
            return finish(na, {p});
        }
        case Rule::BoxL: {
            DerivPtr p = merge_rec(d->premises[0], k);
            if (a.component == k) {
                // Both main sequents fall into the merged component: the
                // reflexivity rule takes over.
                return finish(app_of(Rule::T, k, a.principal, Side::Left), {p});
            }
            RuleApp na = a;
            na.component = shift(a.component, k);
            na.aux = na.component + 1;
            return finish(na, {p});
        }
        default: {
            std::vector<DerivPtr> ps;
            for (const auto& p : d->premises) ps.push_back(merge_rec(p, k));
            RuleApp na = a;
            na.component = shift(a.component, k);
            return finish(na, ps);
        }
    }
}

}  // namespace

DerivPtr eliminate_merge(const DerivPtr& d, std::size_t k) {
    if (k + 1 >= d->conclusion.size()) throw TransformError("no component pair at the given index");
    return merge_rec(d, k);
}

// ---------------------------------------------------------------------------
// Inversion

namespace {

struct Inversion {
    int item;
    Formula f;
    Side side;        // where f sits
    FSet same, opp;   // what replaces it on the same and on the opposite side
    Rule intro1, intro2;
};

Inversion inversion_for(int item, Formula f) {
    switch (item) {
        case 1:
            if (f.op() != Op::Or) break;
            return {1, f, Side::Right, FSet{f.left(), f.right()}, {}, Rule::OrR1, Rule::OrR2};
        case 2:
            if (f.op() != Op::And) break;
            return {2, f, Side::Left, FSet{f.left(), f.right()}, {}, Rule::AndL1, Rule::AndL2};
        case 3:
            if (f.op() != Op::Neg) break;
            return {3, f, Side::Right, {}, FSet{f.sub()}, Rule::NegR, Rule::NegR};
        default:
            throw TransformError("inversion items are 1 to 4");
    }
    throw TransformError("formula " + f.str() + " does not fit inversion item " + std::to_string(item));
}

Hypersequent inverted(const Hypersequent& h, std::size_t comp, const Inversion& inv) {
    Hypersequent t = h;
    t[comp].side(inv.side).erase(inv.f);
    t[comp].side(inv.side) = t[comp].side(inv.side).united(inv.same);
    t[comp].side(other(inv.side)) = t[comp].side(other(inv.side)).united(inv.opp);
    return t;
}

// Puts the inverted formula back from its parts, which stay as context.
DerivPtr rebuild(const DerivPtr& d, std::size_t comp, const Inversion& inv) {
    Hypersequent c = d->conclusion;
    if (c[comp].side(inv.side).contains(inv.f)) return d;
    c[comp].side(inv.side).insert(inv.f);
    return step(c, app_of(inv.intro1, comp, inv.f, inv.side), {d});
}

bool is_main_at(const RuleApp& a, std::size_t comp, Side side, Formula f) {
    if (!a.principal || *a.principal != f || a.component != comp) return false;
    switch (a.rule) {
        case Rule::TL: case Rule::NegL: case Rule::AndL1: case Rule::AndL2: case Rule::OrL:
        case Rule::T: case Rule::BoxL:
            return side == Side::Left;
        case Rule::TR: case Rule::NegR: case Rule::OrR1: case Rule::OrR2: case Rule::AndR:
        case Rule::BoxR:
            return side == Side::Right;
        default:
            return false;
    }
}

DerivPtr invert_rec(const DerivPtr& d, std::size_t comp, const Inversion& inv) {
    const Hypersequent& c = d->conclusion;
    Hypersequent target = inverted(c, comp, inv);
    if (!c[comp].side(inv.side).contains(inv.f)) return weaken_to(d, target);
    const RuleApp& a = d->app;
    if (a.rule == Rule::Cut) throw TransformError("inversion needs a cut-free derivation");
    if (is_main_at(a, comp, inv.side, inv.f)) {
        bool intro = a.rule == inv.intro1 || a.rule == inv.intro2 ||
                     a.rule == (inv.side == Side::Left ? Rule::TL : Rule::TR);
        if (!intro) throw TransformError("unexpected main rule " + rule_name(a.rule));
        DerivPtr p = d->premises[0];
        if (p->conclusion[comp].side(inv.side).contains(inv.f)) p = invert_rec(p, comp, inv);
        return weaken_to(p, target);
    }
    std::vector<DerivPtr> ps;
    for (std::size_t i = 0; i < d->premises.size(); ++i) {
        DerivPtr p = d->premises[i];
        const auto map = component_map(a, c.size(), i);
        for (std::size_t m : map[comp]) p = invert_rec(p, m, inv);
        ps.push_back(p);
    }
    if (DerivPtr r = try_step(target, a, ps)) return r;
    // The rule may need the formula back where it is active in one premise
    // but not in the other, so each subset of premises is tried.
    for (unsigned mask = 1; mask < (1u << ps.size()); ++mask) {
        std::vector<DerivPtr> qs = ps;
        for (std::size_t i = 0; i < qs.size(); ++i) {
            if (!(mask >> i & 1)) continue;
            const auto map = component_map(a, c.size(), i);
            for (std::size_t m : map[comp]) qs[i] = rebuild(qs[i], m, inv);
        }
        if (DerivPtr r = try_step(target, a, qs)) return r;
    }
    throw TransformError("inversion is stuck at " + rule_name(a.rule) + " on " + to_string(c));
}

DerivPtr invert_box(const DerivPtr& d, Formula f) {
    const Hypersequent& c = d->conclusion;
    std::size_t last = c.size() - 1;
    Hypersequent target = c;
    target[last].right.erase(f);
    target.comps.push_back(Sequent{{}, {f.sub()}});
    const RuleApp& a = d->app;
    auto stuck = [&](const std::string& why) {
        return TransformError("box inversion is stuck at " + rule_name(a.rule) + " on " + to_string(c) +
                              ": " + why);
    };
    if (a.rule == Rule::Cut) throw TransformError("inversion needs a cut-free derivation");
    auto weakened = [&](DerivPtr p) {
        Hypersequent wide = p->conclusion;
        wide.comps.push_back(Sequent{});
        DerivPtr e = step(wide, app_of(Rule::EWR, wide.size() - 1), {p});
        wide.comps.back().right.insert(f.sub());
        return weaken_to(e, wide);
    };
    if (is_main_at(a, last, Side::Right, f)) {
        DerivPtr p = d->premises[0];
        if (a.rule == Rule::TR) {
            if (p->conclusion[last].right.contains(f)) return invert_box(p, f);
            Hypersequent wide = p->conclusion;
            wide.comps.push_back(Sequent{});
            DerivPtr e = step(wide, app_of(Rule::EWR, last + 1), {p});
            return weaken_to(e, target);
        }
        if (p->conclusion[last].right.contains(f)) {
            p = strip_formula(p, last, Side::Right, f);
            if (!p) throw stuck("the kept main sentence is used again");
        }
        return p;
    }
    std::vector<DerivPtr> ps;
    for (std::size_t i = 0; i < d->premises.size(); ++i) {
        DerivPtr p = d->premises[i];
        const auto map = component_map(a, c.size(), i);
        std::size_t plast = p->conclusion.size() - 1;
        for (std::size_t m : map[last]) {
            // null marks a premise with no inverted form; only the
            // weakened original can stand in for it below
            if (!p) break;
            if (!p->conclusion[m].right.contains(f)) continue;
            p = m == plast ? invert_box(p, f) : strip_formula(p, m, Side::Right, f);
        }
        ps.push_back(p);
    }
    auto complete = [](const std::vector<DerivPtr>& qs) {
        return std::all_of(qs.begin(), qs.end(), [](const DerivPtr& q) { return q != nullptr; });
    };
    if (complete(ps))
        if (DerivPtr r = try_step(target, a, ps)) return r;
    // Where f is the formula the rule adds, the premise must keep it; the
    // original premise weakened by => phi serves there instead.
    for (unsigned mask = 1; mask < (1u << ps.size()); ++mask) {
        std::vector<DerivPtr> qs = ps;
        for (std::size_t i = 0; i < qs.size(); ++i)
            if (mask >> i & 1) qs[i] = weakened(d->premises[i]);
        if (!complete(qs)) continue;
        if (DerivPtr r = try_step(target, a, qs)) return r;
    }
    // BoxR on another box moves the final component away. When f is never
    // used, dropping it and weakening => phi in at the end still works.
    if (DerivPtr s = strip_formula(d, last, Side::Right, f)) return weakened(s);
    throw stuck("rule does not commute");
}

}  // namespace

DerivPtr invert(const DerivPtr& d, int item, std::size_t component, Formula f) {
    const Hypersequent& c = d->conclusion;
    if (component >= c.size()) throw TransformError("component out of range");
    if (item == 4) {
        if (f.op() != Op::Box) throw TransformError("item 4 needs a boxed formula");
        if (component + 1 != c.size()) throw TransformError("item 4 applies to the final component only");
        if (!c[component].right.contains(f)) throw TransformError(f.str() + " is not on the right there");
        return invert_box(d, f);
    }
    Inversion inv = inversion_for(item, f);
    if (!c[component].side(inv.side).contains(f))
        throw TransformError(f.str() + " does not occur on the expected side of component " +
                             std::to_string(component));
    return invert_rec(d, component, inv);
}

// ---------------------------------------------------------------------------
// Translation proofs

namespace {

// One assembly step on the final component.
struct Assemble {
    enum Kind { Conj, Disj, Negate } kind;
    Formula result;
};

std::vector<Assemble> plan_component(const Sequent& s, std::optional<Formula> boxed) {
    std::vector<Assemble> ops;
    std::optional<Formula> e;
    if (!s.left.empty()) {
        const auto& g = s.left.items();
        Formula acc = g.back();
        for (std::size_t i = g.size() - 1; i-- > 0;) {
            acc = Formula::conj(g[i], acc);
            ops.push_back({Assemble::Conj, acc});
        }
        e = Formula::neg(acc);
        ops.push_back({Assemble::Negate, *e});
    }
    if (!s.right.empty()) {
        const auto& v = s.right.items();
        Formula acc = v.back();
        for (std::size_t i = v.size() - 1; i-- > 0;) {
            acc = Formula::disj(v[i], acc);
            ops.push_back({Assemble::Disj, acc});
        }
        if (e) {
            e = Formula::disj(*e, acc);
            ops.push_back({Assemble::Disj, *e});
        } else {
            e = acc;
        }
    }
    if (boxed && e) ops.push_back({Assemble::Disj, Formula::disj(*e, *boxed)});
    return ops;
}

// Whether x is still needed as an operand on the given side.
bool used_later(const std::vector<Assemble>& ops, std::size_t from, Formula x, Side side) {
    for (std::size_t i = from; i < ops.size(); ++i) {
        Formula r = ops[i].result;
        Side operand_side = ops[i].kind == Assemble::Disj ? Side::Right : Side::Left;
        if (operand_side != side) continue;
        if (ops[i].kind == Assemble::Negate ? r.sub() == x : (r.left() == x || r.right() == x)) return true;
    }
    return false;
}

DerivPtr assemble(DerivPtr d, const std::vector<Assemble>& ops) {
    std::size_t last = d->conclusion.size() - 1;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Assemble& op = ops[i];
        Hypersequent c = d->conclusion;
        Sequent& s = c[last];
        Formula r = op.result;
        if (op.kind == Assemble::Negate) {
            if (!used_later(ops, i + 1, r.sub(), Side::Left)) s.left.erase(r.sub());
            s.right.insert(r);
            d = step(c, app_of(Rule::NegR, last, r, Side::Right), {d});
            continue;
        }
        Side side = op.kind == Assemble::Conj ? Side::Left : Side::Right;
        Rule first = op.kind == Assemble::Conj ? Rule::AndL1 : Rule::OrR1;
        Rule second = op.kind == Assemble::Conj ? Rule::AndL2 : Rule::OrR2;
        if (!used_later(ops, i + 1, r.left(), side)) s.side(side).erase(r.left());
        s.side(side).insert(r);
        d = step(c, app_of(first, last, r, side), {d});
        if (r.right() != r.left() && !used_later(ops, i + 1, r.right(), side)) {
            Hypersequent c2 = d->conclusion;
            c2[last].side(side).erase(r.right());
            d = step(c2, app_of(second, last, r, side), {d});
        }
    }
    return d;
}

}  // namespace

DerivPtr proof_of_translation(const DerivPtr& d) {
    const Hypersequent& h = d->conclusion;
    Formula image = translate(h).formula;  // validates the shape
    DerivPtr cur = d;
    std::optional<Formula> boxed;
    for (std::size_t i = h.size(); i-- > 0;) {
        std::size_t last = cur->conclusion.size() - 1;
        cur = assemble(cur, plan_component(h[i], boxed));
        const Sequent& s = cur->conclusion[last];
        if (!s.left.empty() || s.right.size() != 1) throw TransformError("internal: assembly left extra formulas");
        Formula done = s.right.items()[0];
        if (i == 0) break;
        Hypersequent c = cur->conclusion;
        c.comps.pop_back();
        boxed = Formula::box(done);
        c[last - 1].right.insert(*boxed);
        cur = step(c, app_of(Rule::BoxR, last - 1, *boxed, Side::Right), {cur});
    }
    if (cur->conclusion != Hypersequent{{Sequent{{}, {image}}}})
        throw TransformError("internal: assembled formula differs from the translation");
    return cur;
}

namespace {

DerivPtr decompose(DerivPtr d, std::size_t comp, const Sequent& s) {
    auto split_right = [&](const FSet& set) {
        const auto& v = set.items();
        Formula acc = v.back();
        std::vector<Formula> chain;
        for (std::size_t i = v.size() - 1; i-- > 0;) {
            acc = Formula::disj(v[i], acc);
            chain.push_back(acc);
        }
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) d = invert(d, 1, comp, *it);
    };
    bool left = !s.left.empty(), right = !s.right.empty();
    Formula e = component_formula(s);
    Formula neg;
    if (left && right) {
        d = invert(d, 1, comp, e);
        neg = e.left();
    } else if (left) {
        neg = e;
    }
    if (right) split_right(s.right);
    if (left) {
        d = invert(d, 3, comp, neg);
        const auto& g = s.left.items();
        Formula acc = g.back();
        std::vector<Formula> chain;
        for (std::size_t i = g.size() - 1; i-- > 0;) {
            acc = Formula::conj(g[i], acc);
            chain.push_back(acc);
        }
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) d = invert(d, 2, comp, *it);
    }
    return d;
}

}  // namespace

DerivPtr proof_from_translation(const DerivPtr& d, const Hypersequent& target, const CalculusSpec& spec) {
    if (spec.name != "RK4" && spec.name != "RS4")
        throw TransformError("proofs translate back only in RK4 and RS4, not " + spec.name);
    if (spec.cut || uses_rule(*d, Rule::Cut)) throw TransformError("a cut-free derivation is required");
    Formula image = translate(target).formula;
    if (d->conclusion != Hypersequent{{Sequent{{}, {image}}}})
        throw TransformError("derivation does not end in => I(H) for the given H");
    DerivPtr cur = d;
    std::size_t n = target.size();
    Formula f = image;
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 == n) {
            cur = decompose(cur, i, target[i]);
            break;
        }
        Formula boxed;
        if (target[i].empty()) {
            boxed = f;
        } else {
            cur = invert(cur, 1, i, f);
            boxed = f.right();
        }
        cur = invert(cur, 4, i, boxed);
        if (!target[i].empty()) cur = decompose(cur, i, target[i]);
        f = boxed.sub();
    }
    return weaken_to(cur, target);
}

}  // namespace hyperseq
