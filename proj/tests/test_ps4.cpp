#include <doctest.h>

#include <random>

#include "hyperseq/goals.hpp"
#include "hyperseq/ps4.hpp"
#include "hyperseq/random.hpp"

using namespace hyperseq;

namespace {

std::size_t at(const PS4Model& m, const char* w) { return static_cast<std::size_t>(m.index_of(w)); }

Branch named(const PS4Model& m, std::initializer_list<const char*> ws) {
    Branch b;
    for (const char* w : ws) b.push_back(at(m, w));
    return b;
}

PS4Model single_point() {
    PS4Model m({"w"});
    m.relR[0][0] = m.relS[0][0] = 1;
    return m;
}

// Strong Kleene clauses written out directly; the box is 1 when every
// R-successor is 1, 0 when some is 0, * otherwise.
TV kleene(const PS4Model& m, std::size_t w, Formula f) {
    switch (f.op()) {
        case Op::Atom: return m.atom(w, f.name());
        case Op::Neg: {
            TV v = kleene(m, w, f.sub());
            return v == TV::T ? TV::F : v == TV::F ? TV::T : TV::U;
        }
        case Op::And: {
            TV a = kleene(m, w, f.left()), b = kleene(m, w, f.right());
            if (a == TV::F || b == TV::F) return TV::F;
            return a == TV::T && b == TV::T ? TV::T : TV::U;
        }
        case Op::Or: {
            TV a = kleene(m, w, f.left()), b = kleene(m, w, f.right());
            if (a == TV::T || b == TV::T) return TV::T;
            return a == TV::F && b == TV::F ? TV::F : TV::U;
        }
        case Op::Box: {
            bool all = true;
            for (std::size_t u = 0; u < m.size(); ++u) {
                if (!m.relR[w][u]) continue;
                TV v = kleene(m, u, f.sub());
                if (v == TV::F) return TV::F;
                all = all && v == TV::T;
            }
            return all ? TV::T : TV::U;
        }
    }
    return TV::U;
}

}  // namespace

TEST_CASE("eval3 examples") {
    PS4Model m = single_point();
    CHECK(eval3(m, 0, parse_formula("~p")) == TV::U);
    m.val[0]["p"] = TV::F;
    CHECK(eval3(m, 0, parse_formula("p & q")) == TV::F);
    CHECK(eval3(m, 0, parse_formula("q | ~p")) == TV::T);

    PS4Model fig = builtin_fig5_model();
    CHECK(eval3(fig, at(fig, "m"), parse_formula("p & q")) == TV::U);
    CHECK(to_string(TV::U) == "*");
}

TEST_CASE("frame conditions") {
    CHECK(check_ps4_frame(single_point()).ok);

    PS4Model m({"x", "y", "z"});
    for (std::size_t w = 0; w < 3; ++w) m.relR[w][w] = m.relS[w][w] = 1;
    m.relR[0][1] = m.relR[1][2] = 1;
    FrameCheck c = check_ps4_frame(m);
    CHECK_FALSE(c.ok);
    CHECK(c.witness == std::vector<std::size_t>{0, 1, 2});

    CHECK(check_ps4_frame(builtin_fig5_model()).ok);
}

TEST_CASE("S information preservation") {
    PS4Model m = builtin_fig5_model();
    CHECK(check_s_preservation(m, 0).ok);
    CHECK(check_s_preservation(m, 4).ok);

    PS4Model id = single_point();
    id.val[0]["p"] = TV::T;
    for (int d = 0; d <= 3; ++d) CHECK(check_s_preservation(id, d).ok);

    PS4Model bad({"x", "y"});
    for (std::size_t w = 0; w < 2; ++w) bad.relR[w][w] = bad.relS[w][w] = 1;
    bad.relS[0][1] = 1;
    bad.val[0]["p"] = TV::T;
    bad.val[1]["p"] = TV::F;
    PreservationCheck pc = check_s_preservation(bad, 0);
    CHECK_FALSE(pc.ok);
    CHECK(pc.x == 0);
    CHECK(pc.y == 1);
    REQUIRE(pc.witness);
    CHECK(*pc.witness == parse_formula("p"));
}

TEST_CASE("copy_branch") {
    PS4Model m = single_point();
    CHECK(copy_branch(m, {0, 0, 0}, 2) == Branch{0, 0});

    PS4Model fig = builtin_fig5_model();
    Branch b = copy_branch(fig, named(fig, {"i", "j", "k"}), 2);
    CHECK(b == named(fig, {"i", "n"}));
    CHECK(fig.relS[at(fig, "k")][at(fig, "n")]);

    CHECK_THROWS_AS(copy_branch(m, {0, 0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(copy_branch(m, {0, 0}, 2), std::invalid_argument);
}

TEST_CASE("PS4 countermodels") {
    PS4Model fig = builtin_fig5_model();
    CHECK_FALSE(ps4_countermodel(fig, parse_hypersequent("p => p")));
    CHECK_FALSE(ps4_countermodel(single_point(), parse_hypersequent("p => p")));

    auto c = ps4_countermodel(fig, *named_goal("C"));
    REQUIRE(c);
    CHECK(*c == named(fig, {"i"}));

    auto c3 = ps4_countermodel(fig, *named_goal("C3"));
    REQUIRE(c3);
    CHECK(*c3 == named(fig, {"i", "j", "k"}));

    // an undefined value refutes neither side
    CHECK_FALSE(ps4_countermodel(single_point(), parse_hypersequent("=> p")));
    CHECK_FALSE(ps4_countermodel(single_point(), parse_hypersequent("p =>")));
}

TEST_CASE("property: with every atom defined and S the identity, eval3 is Kripke evaluation") {
    std::mt19937_64 rng(41);
    const std::vector<std::string> atoms{"p", "q"};
    for (int i = 0; i < 300; ++i) {
        KripkeModel km = random_kripke_model(rng, atoms, 4);
        PS4Model pm = ps4_from_kripke(km);
        for (int k = 0; k < 10; ++k) {
            Formula f = random_formula(rng, atoms, 4);
            for (std::size_t w = 0; w < km.size(); ++w)
                CHECK(eval3(pm, w, f) == (eval(km, w, f) ? TV::T : TV::F));
        }
    }
}

TEST_CASE("property: generated models satisfy the conditions and S preserves defined values") {
    std::mt19937_64 rng(23);
    const std::vector<std::string> atoms{"p", "q"};
    int copies = 0;
    for (int i = 0; i < 300; ++i) {
        PS4Model m = random_ps4_model(rng, 5, atoms);
        REQUIRE(check_ps4_frame(m).ok);
        for (int k = 0; k < 10; ++k) {
            Formula f = random_formula(rng, atoms, 4);
            for (std::size_t x = 0; x < m.size(); ++x) {
                TV vx = kleene(m, x, f);
                CHECK(eval3(m, x, f) == vx);
                if (vx == TV::U) continue;
                for (std::size_t y = 0; y < m.size(); ++y)
                    if (m.relS[x][y]) CHECK(kleene(m, y, f) == vx);
            }
        }
        // every R-branch of length 3 can drop its middle point
        for (std::size_t a = 0; a < m.size(); ++a)
            for (std::size_t b = 0; b < m.size(); ++b)
                for (std::size_t c = 0; c < m.size(); ++c) {
                    if (!m.relR[a][b] || !m.relR[b][c]) continue;
                    Branch out = copy_branch(m, {a, b, c}, 2);
                    REQUIRE(out.size() == 2);
                    CHECK(out[0] == a);
                    CHECK(m.relR[a][out[1]]);
                    CHECK(m.relS[c][out[1]]);
                    ++copies;
                }
    }
    CHECK(copies > 300);
}
