#include <doctest.h>

#include <random>

#include "hyperseq/goals.hpp"
#include "hyperseq/kripke.hpp"
#include "hyperseq/random.hpp"

using namespace hyperseq;

namespace {

KripkeModel chain(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
    KripkeModel m{KripkeFrame(names)};
    for (auto [a, b] : edges) m.frame.relate(a, b);
    return m;
}

// Evaluation oracle written against the clauses, without the library's
// memoised evaluator. Unvalued atoms read as false here; callers value all.
bool truth(const KripkeModel& m, std::size_t w, Formula f) {
    switch (f.op()) {
        case Op::Atom: {
            auto it = m.val[w].find(f.name());
            return it != m.val[w].end() && it->second;
        }
        case Op::Neg: return !truth(m, w, f.sub());
        case Op::And: return truth(m, w, f.left()) && truth(m, w, f.right());
        case Op::Or: return truth(m, w, f.left()) || truth(m, w, f.right());
        case Op::Box:
            for (std::size_t u = 0; u < m.size(); ++u)
                if (m.frame.related(w, u) && !truth(m, u, f.sub())) return false;
            return true;
    }
    return false;
}

bool refutes_at(const KripkeModel& m, std::size_t w, const Sequent& s) {
    for (Formula f : s.left)
        if (!truth(m, w, f)) return false;
    for (Formula f : s.right)
        if (truth(m, w, f)) return false;
    return true;
}

// Any refuting branch, by plain recursion over successors.
bool has_refuting_branch(const KripkeModel& m, const Hypersequent& h, std::size_t i, std::size_t w) {
    if (!refutes_at(m, w, h[i])) return false;
    if (i + 1 == h.size()) return true;
    for (std::size_t u = 0; u < m.size(); ++u)
        if (m.frame.related(w, u) && has_refuting_branch(m, h, i + 1, u)) return true;
    return false;
}

bool oracle_countermodel(const KripkeModel& m, const Hypersequent& h) {
    for (std::size_t w = 0; w < m.size(); ++w)
        if (has_refuting_branch(m, h, 0, w)) return true;
    return false;
}

}  // namespace

TEST_CASE("eval examples") {
    Formula bp = parse_formula("[]p");
    KripkeModel refl = chain(1, {{0, 0}});
    refl.set(0, "p", true);
    CHECK(eval(refl, 0, bp));

    KripkeModel dead = chain(1, {});
    dead.set(0, "p", false);
    CHECK(eval(dead, 0, bp));

    KripkeModel two = chain(2, {{0, 1}});
    two.set(0, "p", true);
    two.set(1, "p", false);
    CHECK_FALSE(eval(two, 0, bp));

    CHECK_THROWS_AS(eval(two, 5, bp), EvalError);
    CHECK_THROWS_AS(eval(two, 0, parse_formula("q")), EvalError);
}

TEST_CASE("frame class checks") {
    CHECK(check_frame_class(chain(2, {{0, 1}}).frame, FrameClass::K4).ok);

    FrameCheck c = check_frame_class(chain(3, {{0, 1}, {1, 2}}).frame, FrameClass::K4);
    CHECK_FALSE(c.ok);
    CHECK(c.witness == std::vector<std::size_t>{0, 1, 2});

    // i j k m with the edges drawn, plus i->m which transitivity forces
    KripkeModel fig = chain(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3}});
    CHECK_FALSE(check_frame_class(fig.frame, FrameClass::K4).ok);
    fig.frame.relate(0, 3);
    CHECK(check_frame_class(fig.frame, FrameClass::K4).ok);

    CHECK_FALSE(check_frame_class(chain(1, {}).frame, FrameClass::D).ok);
    CHECK(check_frame_class(chain(2, {{0, 1}, {1, 1}}).frame, FrameClass::D).ok);
    CHECK_FALSE(check_frame_class(chain(2, {{0, 1}}).frame, FrameClass::KB).ok);
    CHECK(check_frame_class(chain(2, {{0, 1}, {1, 0}, {0, 0}, {1, 1}}).frame, FrameClass::S5).ok);
}

TEST_CASE("branches") {
    CHECK(branches(chain(1, {}).frame, 2).empty());
    auto b = branches(chain(1, {{0, 0}}).frame, 3);
    REQUIRE(b.size() == 1);
    CHECK(b[0] == Branch{0, 0, 0});
    auto cyc = branches(chain(2, {{0, 1}, {1, 0}}).frame, 2);
    CHECK(cyc == std::vector<Branch>{{0, 1}, {1, 0}});
}

TEST_CASE("countermodels_hypersequent examples") {
    KripkeModel one = chain(1, {});
    one.set(0, "p", false);
    CHECK_FALSE(countermodels_hypersequent(one, parse_hypersequent("p => p")));
    auto b = countermodels_hypersequent(one, parse_hypersequent("=> p"));
    REQUIRE(b);
    CHECK(*b == Branch{0});
}

TEST_CASE("canonical frame counts per isomorphism class") {
    // Unlabelled digraphs with loops allowed: 2, 10, 104, 3044.
    CHECK(canonical_frames(FrameClass::K, 1).size() == 2);
    CHECK(canonical_frames(FrameClass::K, 2).size() == 10);
    CHECK(canonical_frames(FrameClass::K, 3).size() == 104);
    CHECK(canonical_frames(FrameClass::K, 4).size() == 3044);
    // Preorders up to isomorphism: 1, 3, 9, 33.
    CHECK(canonical_frames(FrameClass::S4, 1).size() == 1);
    CHECK(canonical_frames(FrameClass::S4, 2).size() == 3);
    CHECK(canonical_frames(FrameClass::S4, 3).size() == 9);
    CHECK(canonical_frames(FrameClass::S4, 4).size() == 33);
    // Equivalence relations: partitions of n.
    CHECK(canonical_frames(FrameClass::S5, 4).size() == 5);
}

TEST_CASE("bounded validity examples") {
    auto taut = bounded_validity(parse_hypersequent("=> p | ~p"), FrameClass::K, 3);
    CHECK_FALSE(taut.countermodel_found);

    auto bp = bounded_validity(parse_hypersequent("=> []p"), FrameClass::K, 1);
    REQUIRE(bp.countermodel_found);
    CHECK(bp.model.frame.related(0, 0));
    CHECK_FALSE(eval(bp.model, 0, parse_formula("p")));

    auto c = bounded_validity(*named_goal("C"), FrameClass::S4, 5);
    CHECK_FALSE(c.countermodel_found);
    CHECK(c.frames_checked > 0);

    auto t = bounded_validity(parse_hypersequent("[]p => p"), FrameClass::K4, 2);
    REQUIRE(t.countermodel_found);
    CHECK(check_frame_class(t.model.frame, FrameClass::K4).ok);
    CHECK(countermodels_hypersequent(t.model, parse_hypersequent("[]p => p")));

    // J has no reflexive-symmetric countermodel at small scale
    CHECK_FALSE(bounded_validity(*named_goal("J"), FrameClass::B, 4).countermodel_found);
    CHECK_FALSE(bounded_validity(*named_goal("J"), FrameClass::KB, 4).countermodel_found);
}

TEST_CASE("bounded validity is deterministic across worker counts") {
    Hypersequent h = parse_hypersequent("[]p => // => p");
    auto a = bounded_validity(h, FrameClass::K, 3, 1);
    auto b = bounded_validity(h, FrameClass::K, 3, 4);
    CHECK(a.countermodel_found == b.countermodel_found);
    CHECK(a.branch == b.branch);
    CHECK(a.model.frame.rel == b.model.frame.rel);
}

TEST_CASE("property: countermodel search agrees with the brute-force oracle") {
    std::mt19937_64 rng(17);
    const std::vector<std::string> atoms{"p", "q"};
    int found = 0;
    for (int i = 0; i < 1500; ++i) {
        KripkeModel m = random_kripke_model(rng, atoms, 4);
        Hypersequent h = random_hypersequent(rng, atoms, 3, 2, 3);
        CAPTURE(to_string(h));
        auto b = countermodels_hypersequent(m, h);
        CHECK(b.has_value() == oracle_countermodel(m, h));
        if (!b) continue;
        ++found;
        // the returned branch is an R-branch refuting each component
        REQUIRE(b->size() == h.size());
        for (std::size_t k = 0; k < h.size(); ++k) {
            CHECK(refutes_at(m, (*b)[k], h[k]));
            if (k + 1 < h.size()) CHECK(m.frame.related((*b)[k], (*b)[k + 1]));
        }
    }
    CHECK(found > 100);
}

TEST_CASE("property: Boolean laws and class monotonicity") {
    std::mt19937_64 rng(3);
    const std::vector<std::string> atoms{"p", "q"};
    for (int i = 0; i < 300; ++i) {
        KripkeModel m = random_kripke_model(rng, atoms, 4);
        Formula a = random_formula(rng, atoms, 3), b = random_formula(rng, atoms, 3);
        for (std::size_t w = 0; w < m.size(); ++w) {
            CHECK(eval(m, w, Formula::neg(Formula::neg(a))) == eval(m, w, a));
            CHECK(eval(m, w, Formula::neg(Formula::conj(a, b))) ==
                  eval(m, w, Formula::disj(Formula::neg(a), Formula::neg(b))));
            CHECK(eval(m, w, a) == truth(m, w, a));
        }
        if (check_frame_class(m.frame, FrameClass::S4).ok) {
            CHECK(check_frame_class(m.frame, FrameClass::K4).ok);
            CHECK(check_frame_class(m.frame, FrameClass::T).ok);
        }
        if (check_frame_class(m.frame, FrameClass::B).ok) {
            CHECK(check_frame_class(m.frame, FrameClass::KB).ok);
            CHECK(check_frame_class(m.frame, FrameClass::T).ok);
        }
    }
    for (int n = 1; n <= 3; ++n)
        for (const auto& succ : canonical_frames(FrameClass::S5, n)) {
            KripkeFrame fr(std::vector<std::string>(n, "w"));
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (succ[a] >> b & 1) fr.relate(a, b);
            for (FrameClass c : {FrameClass::S4, FrameClass::B, FrameClass::K4, FrameClass::T, FrameClass::KB,
                                 FrameClass::D})
                CHECK(check_frame_class(fr, c).ok);
        }
}
