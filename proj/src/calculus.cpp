#include "hyperseq/calculus.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace hyperseq {

namespace {

const std::vector<std::pair<Rule, const char*>>& rule_table() {
    static const std::vector<std::pair<Rule, const char*>> t = {
        {Rule::Id, "Id"},     {Rule::Cut, "Cut"},   {Rule::EWL, "EWL"},     {Rule::EWR, "EWR"},
        {Rule::TL, "TL"},     {Rule::TR, "TR"},     {Rule::BoxR, "BoxR"},   {Rule::BoxL, "BoxL"},
        {Rule::NegL, "NegL"}, {Rule::NegR, "NegR"}, {Rule::AndL1, "AndL1"}, {Rule::AndL2, "AndL2"},
        {Rule::AndR, "AndR"}, {Rule::OrL, "OrL"},   {Rule::OrR1, "OrR1"},   {Rule::OrR2, "OrR2"},
        {Rule::EC, "EC"},     {Rule::Sym, "Sym"},   {Rule::EW, "EW"},       {Rule::EE, "EE"},
        {Rule::Drop, "Drop"}, {Rule::T, "T"},       {Rule::Merge, "Merge"},
    };
    return t;
}

std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

std::string rule_name(Rule r) {
    for (const auto& [rule, name] : rule_table())
        if (rule == r) return name;
    return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
    for (const auto& [rule, n] : rule_table())
        if (name == n) return rule;
    return std::nullopt;
}

const std::vector<Rule>& all_rules() {
    static const std::vector<Rule> rules = [] {
        std::vector<Rule> out;
        for (const auto& [r, n] : rule_table()) out.push_back(r);
        return out;
    }();
    return rules;
}

DerivPtr make_derivation(Hypersequent conclusion, RuleApp app, std::vector<DerivPtr> premises) {
    auto d = std::make_shared<Derivation>();
    d->conclusion = std::move(conclusion);
    d->app = std::move(app);
    d->premises = std::move(premises);
    return d;
}

std::size_t derivation_size(const Derivation& d) {
    std::size_t n = 1;
    for (const auto& p : d.premises) n += derivation_size(*p);
    return n;
}

std::size_t derivation_height(const Derivation& d) {
    std::size_t h = 0;
    for (const auto& p : d.premises) h = std::max(h, derivation_height(*p));
    return h + 1;
}

bool uses_rule(const Derivation& d, Rule r) {
    if (d.app.rule == r) return true;
    return std::any_of(d.premises.begin(), d.premises.end(),
                       [r](const DerivPtr& p) { return uses_rule(*p, r); });
}

FSet derivation_formulas(const Derivation& d) {
    FSet out(formulas_of(d.conclusion));
    for (const auto& p : d.premises) out = out.united(derivation_formulas(*p));
    return out;
}

std::vector<std::string> derivation_atoms(const Derivation& d) {
    std::vector<std::string> out;
    for (Formula f : derivation_formulas(d)) collect_atoms(f, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------

namespace {

const std::set<Rule>& base_rules() {
    static const std::set<Rule> base = {
        Rule::Id,   Rule::EWL,  Rule::EWR,   Rule::TL,    Rule::TR,   Rule::BoxR,
        Rule::BoxL, Rule::NegL, Rule::NegR,  Rule::AndL1, Rule::AndL2, Rule::AndR,
        Rule::OrL,  Rule::OrR1, Rule::OrR2,
    };
    return base;
}

const std::vector<std::pair<std::string, std::set<Rule>>>& named_systems() {
    static const std::vector<std::pair<std::string, std::set<Rule>>> t = {
        {"RK", {}},
        {"RD", {Rule::Drop}},
        {"RT", {Rule::EC}},
        {"RKB", {Rule::Sym}},
        {"RK4", {Rule::EW}},
        {"RB", {Rule::EC, Rule::Sym}},
        {"RS4", {Rule::EC, Rule::EW}},
        {"RS5", {Rule::EC, Rule::EW, Rule::EE}},
        {"RTB", {Rule::T, Rule::Sym}},
    };
    return t;
}

}  // namespace

bool CalculusSpec::allows(Rule r) const {
    if (r == Rule::Cut) return cut;
    return base_rules().count(r) > 0 || extra.count(r) > 0;
}

std::string CalculusSpec::display() const { return cut ? name + "+Cut" : name; }

CalculusSpec calculus(const std::string& name, bool cut) {
    std::string key = upper(name);
    for (const auto& [n, extra] : named_systems())
        if (upper(n) == key) return CalculusSpec{n, extra, cut};
    throw std::invalid_argument("unknown calculus: " + name);
}

CalculusSpec calculus(const std::string& name) {
    std::string key = upper(name);
    for (const std::string suffix : {"+CUT", "CUT"}) {
        if (key.size() > suffix.size() && key.ends_with(suffix))
            return calculus(key.substr(0, key.size() - suffix.size()), true);
    }
    return calculus(key, false);
}

const std::vector<std::string>& system_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [n, e] : named_systems()) out.push_back(n);
        return out;
    }();
    return names;
}

// ---------------------------------------------------------------------------

namespace {

StepCheck fail(std::string why) { return StepCheck{false, std::move(why)}; }

std::string show(const Hypersequent& h) { return "\"" + to_string(h) + "\""; }

StepCheck premise_count(const std::vector<Hypersequent>& ps, std::size_t n) {
    if (ps.size() != n)
        return fail("expected " + std::to_string(n) + " premise(s), got " + std::to_string(ps.size()));
    return {};
}

StepCheck expect_equal(const Hypersequent& want, const Hypersequent& got) {
    if (want == got) return {};
    return fail("premise should be " + show(want) + " but is " + show(got));
}

// Sides are sets, so the main sentence may survive into the premise: either
// it was contracted away or it is still present.
bool principal_side_ok(const FSet& concl, const FSet& prem, Formula pr, const FSet& adds) {
    if (!concl.contains(pr)) return false;
    return concl.without(pr).united(adds) == prem || concl.united(adds) == prem;
}

// Premise of a single-component rule: component sigma checked by the
// principal test on side s, the other side gains other_adds, everything else
// unchanged.
StepCheck component_rule(const Hypersequent& c, const Hypersequent& p, std::size_t sigma, Side s,
                         Formula pr, const FSet& same_adds, const FSet& other_adds) {
    if (p.size() != c.size()) return fail("premise must have the same number of components");
    for (std::size_t i = 0; i < c.size(); ++i)
        if (i != sigma && c[i] != p[i])
            return fail("component " + std::to_string(i) + " must be unchanged");
    Side o = s == Side::Left ? Side::Right : Side::Left;
    if (!principal_side_ok(c[sigma].side(s), p[sigma].side(s), pr, same_adds))
        return fail("premise " + show(p) + " does not match the schema at component " +
                    std::to_string(sigma));
    if (c[sigma].side(o).united(other_adds) != p[sigma].side(o))
        return fail("premise " + show(p) + " has the wrong opposite side at component " +
                    std::to_string(sigma));
    return {};
}

Hypersequent erase_comp(const Hypersequent& h, std::size_t i) {
    Hypersequent r = h;
    r.comps.erase(r.comps.begin() + static_cast<long>(i));
    return r;
}

}  // namespace

StepCheck check_schema(const Hypersequent& c, const RuleApp& a, const std::vector<Hypersequent>& ps) {
    std::size_t n = c.size();
    std::size_t s = a.component;
    if (n == 0) return fail("empty conclusion");
    if (s >= n) return fail("component index " + std::to_string(s) + " out of range");
    for (const auto& p : ps)
        if (p.size() == 0) return fail("empty premise");
    auto need_principal = [&](Op op) -> std::optional<StepCheck> {
        if (!a.principal || !a.principal->valid()) return fail("rule needs a principal formula");
        if (a.principal->op() != op) return fail("principal has the wrong main connective");
        return std::nullopt;
    };
    Formula pr = a.principal && a.principal->valid() ? *a.principal : Formula{};
    // The side is implied by the rule; a recorded side must agree with it.
    if (a.side) {
        std::optional<Side> implied;
        switch (a.rule) {
            case Rule::TL: case Rule::NegL: case Rule::AndL1: case Rule::AndL2:
            case Rule::OrL: case Rule::BoxL: case Rule::T:
                implied = Side::Left;
                break;
            case Rule::TR: case Rule::NegR: case Rule::AndR: case Rule::OrR1:
            case Rule::OrR2: case Rule::BoxR:
                implied = Side::Right;
                break;
            default: break;
        }
        if (implied && *implied != *a.side) return fail("recorded side contradicts the rule");
    }

    switch (a.rule) {
        case Rule::Id: {
            if (auto r = premise_count(ps, 0); !r.ok) return r;
            if (n != 1) return fail("Id has a single component");
            const Sequent& q = c[0];
            if (q.left.size() != 1 || q.left != q.right || !q.left.items()[0].is_atom())
                return fail("Id needs p => p for an atom p");
            return {};
        }
        case Rule::Cut: {
            if (auto r = premise_count(ps, 2); !r.ok) return r;
            if (!pr.valid()) return fail("Cut needs the cut formula");
            Hypersequent right = c, left = c;
            right[s].right.insert(pr);
            left[s].left.insert(pr);
            if ((ps[0] == right && ps[1] == left) || (ps[0] == left && ps[1] == right)) return {};
            return fail("Cut premises should be " + show(right) + " and " + show(left));
        }
        case Rule::EWL:
        case Rule::EWR: {
            if (auto r = premise_count(ps, 1); !r.ok) return r;
            std::size_t at = a.rule == Rule::EWL ? 0 : n - 1;
            if (n < 2) return fail("external weakening needs two components");
            if (s != at) return fail("component must be " + std::to_string(at));
            if (!c[at].empty()) return fail("weakened component must be empty");
            return expect_equal(erase_comp(c, at), ps[0]);
        }
        case Rule::EW: {
            if (auto r = premise_count(ps, 1); !r.ok) return r;
            if (n < 2) return fail("EW needs two components");
            if (!c[s].empty()) return fail("weakened component must be empty");
            return expect_equal(erase_comp(c, s), ps[0]);
        }
        case Rule::TL:
        case Rule::TR: {
            if (auto r = premise_count(ps, 1); !r.ok) return r;
            if (!pr.valid()) return fail("weakening needs a principal formula");
            Side side = a.rule == Rule::TL ? Side::Left : Side::Right;
            return component_rule(c, ps[0], s, side, pr, {}, {});
        }
        case Rule::NegL:
        case Rule::NegR: {
            if (auto r = premise_count(ps, 1); !r.ok) return r;
            if (auto r = need_principal(Op::Neg)) return *r;
            Side side = a.rule == Rule::NegL ? Side::Left : Side::Right;
            return component_rule(c, ps[0], s, side, pr, {}, {pr.sub()});
        }
        case Rule::AndL1:
        case Rule::AndL2: {
            if (auto r = premise_count(ps, 1); !r.ok) return r;
            if (auto r = need_principal(Op::And)) return *r;
            Formula part = a.rule == Rule::AndL1 ? pr.left() : pr.right();
            return component_rule(c, ps[0], s, Side::Left, pr, {part}, {});
        }
        case Rule::OrR1:
        case Rule::OrR2: {
            if (auto r = premise_count(ps, 1); !r.ok) return r;
            if (auto r = need_principal(Op::Or)) return *r;
            Formula part = a.rule == Rule::OrR1 ? pr.left() : pr.right();
            return component_rule(c, ps[0], s, Side::Right, pr, {part}, {});
        }
        case Rule::AndR:
        case Rule::OrL: {
            if (auto r = premise_count(ps, 2); !r.ok) return r;
            Side side = a.rule == Rule::AndR ? Side::Right : Side::Left;
            if (auto r = need_principal(a.rule == Rule::AndR ? Op::And : Op::Or)) return *r;
            if (auto r = component_rule(c, ps[0], s, side, pr, {pr.left()}, {}); !r.ok)
                return fail("first premise: " + r.reason);
            if (auto r = component_rule(c, ps[1], s, side, pr, {pr.right()}, {}); !r.ok)
                return fail("second premise: " + r.reason);
            return {};
        }
        case Rule::T: {
            if (auto r = premise_count(ps, 1); !r.ok) return r;
            if (auto r = need_principal(Op::Box)) return *r;
            return component_rule(c, ps[0], s, Side::Left, pr, {pr.sub()}, {});
        }
        case Rule::BoxL: {
            if (auto r = premise_count(ps, 1); !r.ok) return r;
            if (auto r = need_principal(Op::Box)) return *r;
            if (s + 1 >= n) return fail("BoxL needs a component after the left-main one");
            if (a.aux && *a.aux != s + 1) return fail("BoxL right-main must follow the left-main");
            const Hypersequent& p = ps[0];
            if (p.size() != n) return fail("premise must have the same number of components");
            Hypersequent mid = p;
            // Undo the addition at s+1 only if it is the expected shape.
            if (c[s + 1].left.with(pr.sub()) != p[s + 1].left || c[s + 1].right != p[s + 1].right)
                return fail("premise should add " + pr.sub().str() + " on the left of component " +
                            std::to_string(s + 1));
            mid[s + 1] = c[s + 1];
            return component_rule(c, mid, s, Side::Left, pr, {}, {});
        }
        case Rule::BoxR: {
            if (auto r = premise_count(ps, 1); !r.ok) return r;
            if (auto r = need_principal(Op::Box)) return *r;
            if (s != n - 1) return fail("BoxR acts on the last component");
            const Hypersequent& p = ps[0];
            if (p.size() != n + 1) return fail("BoxR premise has one more component");
            if (!(p[n].left.empty() && p[n].right == FSet{pr.sub()}))
                return fail("BoxR premise must end with => " + pr.sub().str());
            return component_rule(c, erase_comp(p, n), s, Side::Right, pr, {}, {});
        }
        case Rule::EC: {
            if (auto r = premise_count(ps, 1); !r.ok) return r;
            if (a.aux && *a.aux != s + 1) return fail("EC pair must be adjacent");
            Hypersequent want = c;
            want.comps.insert(want.comps.begin() + static_cast<long>(s), c[s]);
            return expect_equal(want, ps[0]);
        }
        case Rule::Sym: {
            if (auto r = premise_count(ps, 1); !r.ok) return r;
            Hypersequent want = c;
            std::reverse(want.comps.begin(), want.comps.end());
            return expect_equal(want, ps[0]);
        }
        case Rule::EE: {
            if (auto r = premise_count(ps, 1); !r.ok) return r;
            if (s + 1 >= n) return fail("EE needs a following component");
            if (a.aux && *a.aux != s + 1) return fail("EE pair must be adjacent");
            Hypersequent want = c;
            std::swap(want[s], want[s + 1]);
            return expect_equal(want, ps[0]);
        }
        case Rule::Drop: {
            if (auto r = premise_count(ps, 1); !r.ok) return r;
            Hypersequent want = c;
            want.comps.push_back(Sequent{});
            return expect_equal(want, ps[0]);
        }
        case Rule::Merge: {
            if (auto r = premise_count(ps, 1); !r.ok) return r;
            if (a.aux && *a.aux != s + 1) return fail("Merge pair must be adjacent");
            const Hypersequent& p = ps[0];
            if (p.size() != n + 1) return fail("Merge premise has one more component");
            for (std::size_t i = 0; i < n; ++i) {
                if (i == s) continue;
                if (c[i] != p[i < s ? i : i + 1])
                    return fail("component " + std::to_string(i) + " must be unchanged");
            }
            if (p[s].united(p[s + 1]) != c[s])
                return fail("merged components do not union to component " + std::to_string(s));
            return {};
        }
    }
    return fail("unknown rule");
}

StepCheck check_step(const CalculusSpec& spec, const Hypersequent& c, const RuleApp& a,
                     const std::vector<Hypersequent>& ps) {
    if (!spec.allows(a.rule))
        return fail("rule " + rule_name(a.rule) + " is not available in " + spec.display());
    return check_schema(c, a, ps);
}

namespace {

bool check_rec(const Derivation& d, const CalculusSpec& spec, DerivationCheck& out) {
    std::vector<Hypersequent> ps;
    for (const auto& p : d.premises) ps.push_back(p->conclusion);
    StepCheck r = check_step(spec, d.conclusion, d.app, ps);
    if (!r.ok) {
        out.ok = false;
        out.reason = rule_name(d.app.rule) + " at " + show(d.conclusion) + ": " + r.reason;
        return false;
    }
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
        out.path.push_back(i);
        if (!check_rec(*d.premises[i], spec, out)) return false;
        out.path.pop_back();
    }
    return true;
}

}  // namespace

DerivationCheck check_derivation(const Derivation& d, const CalculusSpec& spec) {
    DerivationCheck out;
    check_rec(d, spec, out);
    return out;
}

}  // namespace hyperseq
