#include <doctest.h>

#include "hyperseq/goals.hpp"
#include "hyperseq/kripke.hpp"
#include "hyperseq/random.hpp"
#include "hyperseq/search.hpp"
#include "hyperseq/transform.hpp"

using namespace hyperseq;

namespace {

Hypersequent hs(const char* t) { return parse_hypersequent(t); }
Formula fm(const char* t) { return parse_formula(t); }

DerivPtr step(const char* concl, Rule r, std::size_t comp, std::vector<DerivPtr> ps, const char* pr = nullptr,
              std::optional<Side> side = {}, std::optional<std::size_t> aux = {}) {
    RuleApp a;
    a.rule = r;
    a.component = comp;
    a.side = side;
    a.aux = aux;
    if (pr) a.principal = fm(pr);
    return make_derivation(hs(concl), a, std::move(ps));
}

DerivPtr id(const char* atom) {
    std::string t = std::string(atom) + " => " + atom;
    return step(t.c_str(), Rule::Id, 0, {});
}

const CalculusSpec kRtbMerge{"RTB+Merge", {Rule::T, Rule::Sym, Rule::Merge}, false};

// A connective occurrence (component, side, formula) with the given main op.
std::optional<std::pair<std::size_t, Formula>> find_main(const Hypersequent& h, Side side, Op op) {
    for (std::size_t i = 0; i < h.size(); ++i)
        for (Formula f : h[i].side(side))
            if (f.op() == op) return std::pair{i, f};
    return std::nullopt;
}

}  // namespace

TEST_CASE("translation examples") {
    CHECK(translate(hs("p => q")).formula == fm("~p | q"));
    CHECK(translate(*named_goal("J")).formula == fm("p | []([](~[][]p & ~[][]q) | []q)"));
    CHECK(translate(*named_goal("C3")).formula == fm("~[]~[](p & q) | [](~[]p | []~[]q)"));
    CHECK(translate(hs("=> p")).formula == fm("p"));
    CHECK(translate(hs("p, q =>")).formula == fm("~(p & q)"));
    CHECK(translate(hs("=> // p =>")).formula == fm("[]~p"));
    CHECK(translate(*named_goal("J")).trace.size() == 3);
    CHECK_THROWS_AS(translate(hs("p => // =>")), TransformError);
    CHECK_THROWS_AS(translate(hs("=>")), TransformError);
}

TEST_CASE("property: a branch refutes h iff its first point falsifies I(h)") {
    std::mt19937_64 rng(8);
    const std::vector<std::string> atoms{"p", "q"};
    int refuted = 0, checked = 0;
    for (int i = 0; i < 800; ++i) {
        Hypersequent h = random_hypersequent(rng, atoms, 3, 2, 3);
        if (h[h.size() - 1].empty()) continue;
        KripkeModel m = random_kripke_model(rng, atoms, 4);
        Formula t = translate(h).formula;
        // the branch search restricted to each start world
        for (std::size_t w = 0; w < m.size(); ++w) {
            KripkeModel rooted = m;
            bool starts = false;
            for_each_branch(m.frame, h.size(), [&](const Branch& b) {
                if (b[0] != w) return true;
                bool all = true;
                for (std::size_t k = 0; k < h.size() && all; ++k) {
                    for (Formula f : h[k].left) all = all && eval(m, b[k], f);
                    for (Formula f : h[k].right) all = all && !eval(m, b[k], f);
                }
                starts = starts || all;
                return !starts;
            });
            CHECK(starts == !eval(m, w, t));
            refuted += starts;
            ++checked;
        }
    }
    CHECK(refuted > 50);
    CHECK(checked > 1000);
}

TEST_CASE("EC from Merge") {
    SearchResult r = search(hs("p => p // p => p"), calculus("RK"));
    REQUIRE(r.proof);
    DerivPtr m = ec_from_merge(r.proof);
    CHECK(m->conclusion == hs("p => p"));
    CHECK(m->app.rule == Rule::Merge);
    CHECK(check_derivation(*m, kRtbMerge).ok);
    CHECK_THROWS_AS(ec_from_merge(id("p")), TransformError);
}

TEST_CASE("Merge elimination examples") {
    DerivPtr d = step("p => p // =>", Rule::EWR, 1, {id("p")});
    DerivPtr e = eliminate_merge(d, 0);
    CHECK(e->conclusion == hs("p => p"));
    CHECK(check_derivation(*e, calculus("RTB")).ok);

    // BoxL across the merged pair becomes T
    DerivPtr b = step("=> // p => p", Rule::EWL, 0, {id("p")});
    b = step("[]p => // => p", Rule::BoxL, 0, {b}, "[]p", Side::Left, 1);
    REQUIRE(check_derivation(*b, calculus("RTB")).ok);
    DerivPtr t = eliminate_merge(b, 0);
    CHECK(t->conclusion == hs("[]p => p"));
    CHECK(check_derivation(*t, calculus("RTB")).ok);
    CHECK(uses_rule(*t, Rule::T));
    CHECK_FALSE(uses_rule(*t, Rule::Merge));

    CHECK_THROWS_AS(eliminate_merge(id("p"), 0), TransformError);
}

TEST_CASE("property: Merge elimination over fuzzed RTB derivations") {
    FuzzOptions o;
    o.count = 150;
    o.seed = 12;
    int merged = 0;
    for (const auto& d : fuzz_derivations(calculus("RTB"), o)) {
        const Hypersequent& h = d->conclusion;
        for (std::size_t k = 0; k + 1 < h.size(); ++k) {
            Hypersequent want = h;
            want.comps[k] = h[k].united(h[k + 1]);
            want.comps.erase(want.comps.begin() + static_cast<long>(k) + 1);
            DerivPtr e = eliminate_merge(d, k);
            CAPTURE(to_string(h));
            CHECK(e->conclusion == want);
            CHECK(check_derivation(*e, calculus("RTB")).ok);
            CHECK_FALSE(uses_rule(*e, Rule::Merge));
            ++merged;
        }
    }
    CHECK(merged > 50);
}

TEST_CASE("inversion examples") {
    DerivPtr n = step("q => q, ~p", Rule::TR, 0, {id("q")}, "~p", Side::Right);
    DerivPtr i3 = invert(n, 3, 0, fm("~p"));
    CHECK(i3->conclusion == hs("p, q => q"));
    CHECK(check_derivation(*i3, calculus("RK")).ok);

    SearchResult r = search(hs("[]p => []p"), calculus("RK"));
    REQUIRE(r.proof);
    DerivPtr i4 = invert(r.proof, 4, 0, fm("[]p"));
    CHECK(i4->conclusion == hs("[]p => // => p"));
    CHECK(check_derivation(*i4, calculus("RK")).ok);

    SearchResult o = search(hs("=> p | ~p"), calculus("RK"));
    REQUIRE(o.proof);
    DerivPtr i1 = invert(o.proof, 1, 0, fm("p | ~p"));
    CHECK(i1->conclusion == hs("=> p, ~p"));
    CHECK(check_derivation(*i1, calculus("RK")).ok);

    SearchResult a = search(hs("p & ~p =>"), calculus("RK"));
    REQUIRE(a.proof);
    DerivPtr i2 = invert(a.proof, 2, 0, fm("p & ~p"));
    CHECK(i2->conclusion == hs("p, ~p =>"));
    CHECK(check_derivation(*i2, calculus("RK")).ok);

    CHECK_THROWS_AS(invert(n, 1, 0, fm("~p")), TransformError);
    CHECK_THROWS(invert(n, 7, 0, fm("~p")));
}

TEST_CASE("property: inversion of items 1 to 3 over fuzzed proofs") {
    FuzzOptions o;
    o.count = 300;
    o.seed = 21;
    int done[4] = {0, 0, 0, 0};
    for (const char* sys : {"RK", "RK4", "RS4"}) {
        CalculusSpec spec = calculus(sys);
        for (const auto& d : fuzz_derivations(spec, o)) {
            const Hypersequent& h = d->conclusion;
            struct Item {
                int item;
                Side side;
                Op op;
            };
            for (Item it : {Item{1, Side::Right, Op::Or}, Item{2, Side::Left, Op::And}, Item{3, Side::Right, Op::Neg}}) {
                auto occ = find_main(h, it.side, it.op);
                if (!occ) continue;
                auto [k, f] = *occ;
                Hypersequent want = h;
                want[k].side(it.side).erase(f);
                if (it.item == 1) {
                    want[k].right.insert(f.left());
                    want[k].right.insert(f.right());
                } else if (it.item == 2) {
                    want[k].left.insert(f.left());
                    want[k].left.insert(f.right());
                } else {
                    want[k].left.insert(f.sub());
                }
                CAPTURE(to_string(h));
                CAPTURE(it.item);
                DerivPtr inv = invert(d, it.item, k, f);
                CHECK(inv->conclusion == want);
                CHECK(check_derivation(*inv, spec).ok);
                ++done[it.item];
            }
        }
    }
    for (int i = 1; i <= 3; ++i) CHECK(done[i] > 20);
}

TEST_CASE("property: inversion of a box in the final component over fuzzed proofs") {
    FuzzOptions o;
    o.count = 300;
    o.seed = 5;
    int done = 0;
    for (const char* sys : {"RK", "RK4", "RS4"}) {
        CalculusSpec spec = calculus(sys);
        for (const auto& d : fuzz_derivations(spec, o)) {
            const Hypersequent& h = d->conclusion;
            std::size_t last = h.size() - 1;
            for (Formula f : h[last].right) {
                if (f.op() != Op::Box) continue;
                Hypersequent want = h;
                want[last].right.erase(f);
                want.comps.push_back(Sequent{{}, {f.sub()}});
                CAPTURE(to_string(h));
                DerivPtr inv = invert(d, 4, last, f);
                CHECK(inv->conclusion == want);
                CHECK(check_derivation(*inv, spec).ok);
                ++done;
            }
        }
    }
    CHECK(done > 30);
}

TEST_CASE("proofs of translations and back") {
    DerivPtr to = proof_of_translation(id("p"));
    CHECK(to->conclusion == hs("=> ~p | p"));
    CHECK(check_derivation(*to, calculus("RK")).ok);

    DerivPtr back = proof_from_translation(to, hs("p => p"), calculus("RK4"));
    CHECK(back->conclusion == hs("p => p"));
    CHECK(check_derivation(*back, calculus("RK4")).ok);

    CHECK_THROWS_AS(proof_from_translation(to, hs("p => p"), calculus("RKB")), TransformError);
    CHECK_THROWS_AS(proof_from_translation(to, hs("p => p"), calculus("RB")), TransformError);
}

TEST_CASE("property: translation roundtrip over search-found proofs") {
    std::mt19937_64 rng(31);
    const std::vector<std::string> atoms{"p", "q"};
    SearchLimits lim;
    lim.max_nodes = 2000;
    int trips = 0;
    for (const char* sys : {"RK4", "RS4"}) {
        CalculusSpec spec = calculus(sys);
        for (int i = 0; i < 300 && trips < 60; ++i) {
            Hypersequent h = random_hypersequent(rng, atoms, 3, 2, 2);
            if (h[h.size() - 1].empty()) continue;
            SearchResult r = search(h, spec, lim);
            if (!r.proof) continue;
            CAPTURE(to_string(h));
            DerivPtr to = proof_of_translation(r.proof);
            CHECK(to->conclusion == Hypersequent{{Sequent{{}, {translate(h).formula}}}});
            CHECK(check_derivation(*to, spec).ok);
            DerivPtr back = proof_from_translation(to, h, spec);
            CHECK(back->conclusion == h);
            CHECK(check_derivation(*back, spec).ok);
            CHECK_FALSE(uses_rule(*back, Rule::Cut));
            CHECK_FALSE(uses_rule(*back, Rule::Merge));
            ++trips;
        }
    }
    CHECK(trips >= 30);
}
