#include <doctest.h>

#include <map>

#include "hyperseq/goals.hpp"
#include "hyperseq/json_io.hpp"
#include "hyperseq/kripke.hpp"
#include "hyperseq/search.hpp"

using namespace hyperseq;

namespace {

Hypersequent hs(const char* t) { return parse_hypersequent(t); }

RuleApp app(Rule r, std::size_t comp, const char* principal = nullptr, std::optional<Side> side = {},
            std::optional<std::size_t> aux = {}) {
    RuleApp a;
    a.rule = r;
    a.component = comp;
    a.side = side;
    a.aux = aux;
    if (principal) a.principal = parse_formula(principal);
    return a;
}

DerivPtr golden(const std::string& file) {
    return derivation_from_json(read_json_file(std::string(HYPERSEQ_TEST_DATA) + "/derivations/" + file));
}

// Every formula of a node must be a subformula of some goal formula.
bool subformula_property(const Derivation& d, const Hypersequent& goal) {
    return derivation_formulas(d).subset_of(subformula_closure(goal));
}

FrameClass class_of(const std::string& sys) {
    static const std::map<std::string, FrameClass> m{{"RK", FrameClass::K},   {"RD", FrameClass::D},
                                                     {"RT", FrameClass::T},   {"RKB", FrameClass::KB},
                                                     {"RK4", FrameClass::K4}, {"RB", FrameClass::B},
                                                     {"RS4", FrameClass::S4}, {"RS5", FrameClass::S5},
                                                     {"RTB", FrameClass::B}};
    return m.at(sys);
}

}  // namespace

TEST_CASE("rule sets of the systems") {
    using R = Rule;
    CHECK(calculus("RK").extra.empty());
    CHECK(calculus("RD").extra == std::set<R>{R::Drop});
    CHECK(calculus("RT").extra == std::set<R>{R::EC});
    CHECK(calculus("RKB").extra == std::set<R>{R::Sym});
    CHECK(calculus("RK4").extra == std::set<R>{R::EW});
    CHECK(calculus("RB").extra == std::set<R>{R::EC, R::Sym});
    CHECK(calculus("RS4").extra == std::set<R>{R::EC, R::EW});
    CHECK(calculus("RS5").extra == std::set<R>{R::EC, R::EW, R::EE});
    CHECK(calculus("RTB").extra == std::set<R>{R::T, R::Sym});

    CHECK_FALSE(calculus("RK4").cut);
    CHECK(calculus("rk4cut").cut);
    CHECK(calculus("RS4+Cut").allows(R::Cut));
    CHECK_FALSE(calculus("RS4").allows(R::Cut));
    CHECK_FALSE(calculus("RK").allows(R::Merge));
    CHECK(calculus("RK").allows(R::BoxL));
    CHECK(calculus("RS4", true).display() == "RS4+Cut");
    CHECK_THROWS(calculus("RX"));
    for (const auto& r : all_rules()) CHECK(rule_from_name(rule_name(r)) == r);
}

TEST_CASE("check_step examples") {
    CalculusSpec rk = calculus("RK");
    CHECK(check_step(rk, hs("p => p"), app(Rule::Id, 0), {}).ok);
    CHECK_FALSE(check_step(rk, hs("p => q"), app(Rule::Id, 0), {}).ok);
    CHECK(check_step(rk, hs("=> []p"), app(Rule::BoxR, 0, "[]p", Side::Right), {hs("=> // => p")}).ok);
    CHECK(check_step(rk, hs("[]p => // => q"), app(Rule::BoxL, 0, "[]p", Side::Left, 1),
                     {hs("[]p => // p => q")})
              .ok);
    CHECK(check_step(rk, hs("=> p | q"), app(Rule::OrR1, 0, "p | q", Side::Right), {hs("=> p, p | q")}).ok);
    CHECK(check_step(rk, hs("=> ~p"), app(Rule::NegR, 0, "~p", Side::Right), {hs("p =>")}).ok);
    CHECK(check_step(rk, hs("p & q => "), app(Rule::AndL2, 0, "p & q", Side::Left), {hs("q =>")}).ok);
    CHECK(check_step(rk, hs("=> p & q"), app(Rule::AndR, 0, "p & q", Side::Right), {hs("=> p"), hs("=> q")})
              .ok);
    CHECK(check_step(rk, hs("=> // p => p"), app(Rule::EWL, 0), {hs("p => p")}).ok);
    CHECK(check_step(rk, hs("q => p // =>"), app(Rule::TL, 0, "q", Side::Left), {hs("=> p // =>")}).ok);

    // wrong premise, wrong principal side, out-of-range component
    CHECK_FALSE(check_step(rk, hs("=> []p"), app(Rule::BoxR, 0, "[]p", Side::Right), {hs("=> // => q")}).ok);
    CHECK_FALSE(check_step(rk, hs("=> ~p"), app(Rule::NegR, 0, "~p", Side::Left), {hs("p =>")}).ok);
    CHECK_FALSE(check_step(rk, hs("=> ~p"), app(Rule::NegR, 3, "~p", Side::Right), {hs("p =>")}).ok);

    // structural rules are gated by the system
    Hypersequent sym_c = hs("=> p // q =>"), sym_p = hs("q => // => p");
    CHECK_FALSE(check_step(rk, sym_c, app(Rule::Sym, 0), {sym_p}).ok);
    CHECK(check_step(calculus("RKB"), sym_c, app(Rule::Sym, 0), {sym_p}).ok);
    CHECK(check_schema(sym_c, app(Rule::Sym, 0), {sym_p}).ok);
    CHECK(check_step(calculus("RT"), hs("p => q"), app(Rule::EC, 0, nullptr, {}, 1), {hs("p => q // p => q")})
              .ok);
    CHECK(check_step(calculus("RTB"), hs("[]p => p"), app(Rule::T, 0, "[]p", Side::Left), {hs("[]p, p => p")})
              .ok);
    CHECK_FALSE(check_step(rk, hs("=>"), app(Rule::Drop, 0), {hs("=> // =>")}).ok);
    CHECK(check_step(calculus("RD"), hs("=>"), app(Rule::Drop, 0), {hs("=> // =>")}).ok);
    // Cut is gated separately
    Hypersequent cut_c = hs("p => p");
    std::vector<Hypersequent> cut_ps{hs("p => p, p"), hs("p, p => p")};
    CHECK_FALSE(check_step(rk, cut_c, app(Rule::Cut, 0, "p"), cut_ps).ok);
    CHECK(check_step(calculus("RK", true), cut_c, app(Rule::Cut, 0, "p"), cut_ps).ok);
}

TEST_CASE("shipped derivations check") {
    DerivPtr ij = golden("ij_rkb.json");
    CHECK(ij->conclusion == hs("=> p | []([](~[][]p & ~[][]q) | []q)"));
    CHECK(check_derivation(*ij, calculus("RKB")).ok);
    DerivationCheck rk = check_derivation(*ij, calculus("RK"));
    CHECK_FALSE(rk.ok);
    CHECK(rk.reason.find("Sym") != std::string::npos);
    CHECK_FALSE(uses_rule(*ij, Rule::Cut));

    CHECK(check_derivation(*golden("boxl_prime_rk4cut.json"), calculus("RK4Cut")).ok);
    CHECK_FALSE(check_derivation(*golden("boxl_prime_rk4cut.json"), calculus("RK4")).ok);
    for (const char* f : {"box_distribution_rkb.json", "box_distribution_converse_rkb.json", "jprime_rkb.json"})
        CHECK(check_derivation(*golden(f), calculus("RKB")).ok);

    DerivPtr id = make_derivation(hs("p => p"), app(Rule::Id, 0));
    for (const auto& s : system_names()) CHECK(check_derivation(*id, calculus(s)).ok);
}

TEST_CASE("search examples") {
    SearchResult id = search(hs("p => p"), calculus("RK"));
    REQUIRE(id.status == SearchStatus::Proof);
    CHECK(derivation_size(*id.proof) == 1);

    SearchLimits lim;
    lim.max_components = 4;
    lim.max_depth = 40;
    CHECK(search(*named_goal("J"), calculus("RTB"), lim).status == SearchStatus::Unprovable);
    CHECK(search(*named_goal("J"), calculus("RKB"), lim).status == SearchStatus::Unprovable);

    for (auto [goal, sys] : {std::pair{"J'", "RKB"}, {"[]p & []q => [](p & q)", "RKB"}, {"[]p => [][]p", "RK4"},
                             {"[]p => p", "RT"}, {"=> p, ~p", "RK"}, {"p => // => ~[]~p", "RKB"}}) {
        CAPTURE(goal);
        Hypersequent g = goal_from_text(goal);
        SearchResult r = search(g, calculus(sys));
        REQUIRE(r.status == SearchStatus::Proof);
        CHECK(r.proof->conclusion == g);
        CHECK(check_derivation(*r.proof, calculus(sys)).ok);
        CHECK(subformula_property(*r.proof, g));
    }
    CHECK(search(hs("[]p => p"), calculus("RK")).status == SearchStatus::Unprovable);
    CHECK(search(hs("=> p"), calculus("RK")).status == SearchStatus::Unprovable);
}

TEST_CASE("search is deterministic") {
    Hypersequent g = *named_goal("J'");
    SearchResult a = search(g, calculus("RKB")), b = search(g, calculus("RKB"));
    REQUIRE(a.proof);
    REQUIRE(b.proof);
    CHECK(to_json(*a.proof) == to_json(*b.proof));
    CHECK(a.stats.nodes == b.stats.nodes);
}

TEST_CASE("fuzzing") {
    FuzzOptions flat;
    flat.count = 20;
    flat.max_depth = 0;
    for (const auto& d : fuzz_derivations(calculus("RK4"), flat)) CHECK(d->app.rule == Rule::Id);

    for (const auto& sys : system_names()) {
        CAPTURE(sys);
        FuzzOptions o;
        o.count = 60;
        o.seed = 9;
        auto ds = fuzz_derivations(calculus(sys), o);
        CHECK(ds.size() == o.count);
        for (const auto& d : ds) {
            CHECK(check_derivation(*d, calculus(sys)).ok);
            CHECK_FALSE(uses_rule(*d, Rule::Cut));
        }
    }
}

TEST_CASE("property: search proofs check, keep subformulas and survive tidy and JSON") {
    FuzzOptions o;
    o.count = 40;
    o.max_depth = 4;
    o.seed = 4;
    SearchLimits lim;
    lim.max_nodes = 20000;
    int proofs = 0;
    for (const char* sys : {"RK", "RKB", "RK4", "RT"}) {
        for (const auto& d : fuzz_derivations(calculus(sys), o)) {
            const Hypersequent& g = d->conclusion;
            CAPTURE(to_string(g));
            SearchResult r = search(g, calculus(sys), lim);
            // every fuzzed end hypersequent is provable, so search may not refute it
            CHECK(r.status != SearchStatus::Unprovable);
            if (!r.proof) continue;
            ++proofs;
            CHECK(r.proof->conclusion == g);
            CHECK(check_derivation(*r.proof, calculus(sys)).ok);
            CHECK(subformula_property(*r.proof, g));
            DerivPtr t = tidy(r.proof);
            CHECK(t->conclusion == g);
            CHECK(check_derivation(*t, calculus(sys)).ok);
            DerivPtr back = derivation_from_json(to_json(*r.proof));
            CHECK(to_json(*back) == to_json(*r.proof));
        }
    }
    CHECK(proofs >= 120);
}

TEST_CASE("property: fuzzed end hypersequents have no small countermodel in the system's class") {
    for (const char* sys : {"RK", "RD", "RT", "RKB", "RK4", "RB", "RS4", "RS5", "RTB"}) {
        CAPTURE(sys);
        FuzzOptions o;
        o.count = 25;
        o.seed = 77;
        for (const auto& d : fuzz_derivations(calculus(sys), o)) {
            CAPTURE(to_string(d->conclusion));
            CHECK_FALSE(bounded_validity(d->conclusion, class_of(sys), 3, 1).countermodel_found);
        }
    }
}
