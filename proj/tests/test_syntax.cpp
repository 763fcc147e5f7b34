#include <doctest.h>

#include <functional>
#include <random>
#include <set>
#include <string>

#include "hyperseq/json_io.hpp"
#include "hyperseq/random.hpp"
#include "hyperseq/sequent.hpp"

using namespace hyperseq;

namespace {

const char* kC = "~[]~[](p & q) | []( ~[]p | []~[]q )";

// Closure oracle over fully parenthesised strings, independent of hash-consing.
std::string paren(Formula f) {
    switch (f.op()) {
        case Op::Atom: return f.name();
        case Op::Neg: return "~" + paren(f.sub());
        case Op::Box: return "[]" + paren(f.sub());
        case Op::And: return "(" + paren(f.left()) + "&" + paren(f.right()) + ")";
        case Op::Or: return "(" + paren(f.left()) + "|" + paren(f.right()) + ")";
    }
    return {};
}

void closure_strings(Formula f, std::set<std::string>& out) {
    out.insert(paren(f));
    if (f.op() == Op::Neg || f.op() == Op::Box) closure_strings(f.sub(), out);
    if (f.op() == Op::And || f.op() == Op::Or) {
        closure_strings(f.left(), out);
        closure_strings(f.right(), out);
    }
}

int depth_oracle(Formula f) {
    switch (f.op()) {
        case Op::Atom: return 0;
        case Op::Neg: return depth_oracle(f.sub());
        case Op::Box: return 1 + depth_oracle(f.sub());
        default: return std::max(depth_oracle(f.left()), depth_oracle(f.right()));
    }
}

}  // namespace

TEST_CASE("atoms and the precedence of the grammar") {
    Formula p = parse_formula("p");
    CHECK(p.is_atom());
    CHECK(p.name() == "p");
    CHECK(parse_formula("p1").name() == "p1");

    Formula f = parse_formula("~p & q | r");
    REQUIRE(f.op() == Op::Or);
    CHECK(f.left().op() == Op::And);
    CHECK(f.left().left().op() == Op::Neg);

    // & and | associate to the left
    Formula a = parse_formula("p & q & r");
    CHECK(a.left() == parse_formula("p & q"));
    Formula o = parse_formula("p | q | r");
    CHECK(o.left() == parse_formula("p | q"));

    CHECK(parse_formula("[]p & q").left() == parse_formula("[]p"));
    CHECK(parse_formula("~[]~p") == Formula::neg(Formula::box(Formula::neg(p))));
}

TEST_CASE("named example formulas parse to the expected shape") {
    Formula c = parse_formula(kC);
    REQUIRE(c.op() == Op::Or);
    CHECK(c.left() == parse_formula("~[]~[](p&q)"));
    CHECK(c.right().op() == Op::Box);

    Formula body = parse_formula("[](~[][]p & ~[][]q)");
    REQUIRE(body.op() == Op::Box);
    CHECK(body.sub().op() == Op::And);
    CHECK(modal_depth(body) == 3);
}

TEST_CASE("hash-consing makes structural equality pointer equality") {
    CHECK(parse_formula("[](p & q)") == parse_formula("[]( p&q )"));
    CHECK(parse_formula("p & q") != parse_formula("q & p"));
    CHECK(Formula::conj(Formula::atom("p"), Formula::atom("q")) == parse_formula("(p)&(q)"));
}

TEST_CASE("parse errors carry a position") {
    for (const char* bad : {"", "p &", "(p", "p q", "[]", "& p", "p | | q", "p)"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_formula(bad), ParseError);
    }
    try {
        parse_formula("p & ");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() >= 3);
    }
}

TEST_CASE("hypersequent parsing") {
    Hypersequent j = parse_hypersequent("=> p // => [](~[][]p & ~[][]q) // => q");
    REQUIRE(j.size() == 3);
    CHECK(j[0].left.empty());
    CHECK(j[0].right == FSet{parse_formula("p")});
    CHECK(j[2].right == FSet{parse_formula("q")});

    Hypersequent id = parse_hypersequent("p => p");
    REQUIRE(id.size() == 1);
    CHECK(id[0].left == id[0].right);

    Hypersequent c3 = parse_hypersequent("[]~[](p&q) => // []p => // []q =>");
    CHECK(c3.size() == 3);
    for (const auto& s : c3.comps) CHECK(s.right.empty());

    CHECK(parse_hypersequent("=>").size() == 1);
    CHECK(parse_hypersequent("p, q => r // =>")[0].left.size() == 2);

    CHECK_THROWS(parse_hypersequent(""));
    CHECK_THROWS(parse_hypersequent("p"));
    CHECK_THROWS(parse_hypersequent("p => q //"));
}

TEST_CASE("sides are sets") {
    Formula p = parse_formula("p");
    FSet s;
    CHECK(s.insert(p));
    FSet once = s;
    CHECK_FALSE(s.insert(p));
    CHECK(s == once);
    CHECK(parse_sequent("p, p => q") == parse_sequent("p => q, q"));
    CHECK(FSet{p, p}.size() == 1);
}

TEST_CASE("subformula closure and modal depth") {
    Formula p = parse_formula("p");
    CHECK(subformula_closure(p).size() == 1);
    auto bp = subformula_closure(parse_formula("[]p"));
    CHECK(bp.size() == 2);
    CHECK(FSet(bp) == FSet{p, parse_formula("[]p")});

    Formula c = parse_formula(kC);
    std::set<std::string> oracle;
    closure_strings(c, oracle);
    CHECK(oracle.size() == 15);
    CHECK(subformula_closure(c).size() == oracle.size());

    CHECK(modal_depth(p) == 0);
    CHECK(modal_depth(parse_formula("[][]p")) == 2);
    CHECK(modal_depth(c) == 3);
    CHECK(depth_oracle(c) == 3);
}

TEST_CASE("property: printing then parsing is the identity") {
    std::mt19937_64 rng(5);
    const std::vector<std::string> atoms{"p", "q", "r1"};
    for (int i = 0; i < 2000; ++i) {
        Formula f = random_formula(rng, atoms, 6);
        CAPTURE(to_string(f));
        CHECK(parse_formula(to_string(f)) == f);
        CHECK(formula_from_json(to_json(f)) == f);

        // closure is bounded by tree size and agrees with the string oracle
        std::set<std::string> oracle;
        closure_strings(f, oracle);
        CHECK(subformula_closure(f).size() == oracle.size());
        CHECK(subformula_closure(f).size() <= f.size());
        CHECK(modal_depth(f) == depth_oracle(f));
    }
    for (int i = 0; i < 500; ++i) {
        Hypersequent h = random_hypersequent(rng, atoms, 4, 3, 4);
        CAPTURE(to_string(h));
        CHECK(parse_hypersequent(to_string(h)) == h);
        CHECK(hypersequent_from_json(to_json(h)) == h);
    }
}

TEST_CASE("canonical order inside a side: size, then text") {
    Sequent s = parse_sequent("[]p & q, r, p => ");
    REQUIRE(s.left.size() == 3);
    CHECK(s.left.items()[0] == parse_formula("p"));
    CHECK(s.left.items()[1] == parse_formula("r"));
    CHECK(to_string(s) == "p, r, []p & q =>");
}

TEST_CASE("canonical serialization") {
    json j = to_json(parse_formula("~[](p & q) | r"));
    CHECK(j.dump() == R"({"or":[{"neg":{"box":{"and":[{"atom":"p"},{"atom":"q"}]}}},{"atom":"r"}]})");
    json h = to_json(parse_hypersequent("p => // => q"));
    CHECK(h.dump() == R"({"components":[{"left":[{"atom":"p"}],"right":[]},{"left":[],"right":[{"atom":"q"}]}]})");
    CHECK_THROWS_AS(formula_from_json(json::parse(R"({"box":1})")), FormatError);
    CHECK_THROWS_AS(hypersequent_from_json(json::parse(R"({"components":[]})")), FormatError);
}
