#include <doctest.h>

#include <random>

#include "hyperseq/decide.hpp"
#include "hyperseq/goals.hpp"
#include "hyperseq/random.hpp"

using namespace hyperseq;

namespace {

Hypersequent hs(const char* t) { return parse_hypersequent(t); }

void check_valid(const DecideResult& r, const Hypersequent& g, DecideSystem sys) {
    REQUIRE(r.verdict == Verdict::Valid);
    REQUIRE(r.certificate);
    CHECK(r.certificate->conclusion == g);
    CHECK(check_derivation(*r.certificate, calculus_of(sys)).ok);
    CHECK(r.internal_error.empty());
}

void check_invalid(const DecideResult& r, const Hypersequent& g, DecideSystem sys) {
    REQUIRE(r.verdict == Verdict::Invalid);
    REQUIRE(r.model);
    CHECK(check_frame_class(r.model->model.frame, frame_class_of(sys)).ok);
    CHECK(branch_refutes(r.model->model, r.model->branch, g));
    CHECK(countermodels_hypersequent(r.model->model, g));
    CHECK(r.internal_error.empty());
}

}  // namespace

TEST_CASE("system names and relations") {
    CHECK(decide_system_from_string("rk4cut") == DecideSystem::RK4Cut);
    CHECK(decide_system_from_string("RS4+Cut") == DecideSystem::RS4Cut);
    CHECK(decide_system_from_string("rs4") == DecideSystem::RS4Cut);
    CHECK_THROWS(decide_system_from_string("rkb"));
    CHECK(calculus_of(DecideSystem::RK4Cut).cut);
    CHECK(frame_class_of(DecideSystem::RS4Cut) == FrameClass::S4);
    CHECK(extraction_relation_of(DecideSystem::RK4Cut) == ExtractionRelation::Rplus);
    CHECK(extraction_relation_of(DecideSystem::RS4Cut) == ExtractionRelation::Rstar);
}

TEST_CASE("saturation examples") {
    SaturationResult id = saturate(hs("p => p"), DecideSystem::RK4Cut);
    CHECK(id.status == SaturationStatus::Closed);
    REQUIRE(id.certificate);
    CHECK(derivation_size(*id.certificate) == 1);

    SaturationResult open = saturate(hs("=> p"), DecideSystem::RK4Cut);
    REQUIRE(open.status == SaturationStatus::Open);
    REQUIRE(open.open);
    LabelledHypersequent b = open.open->branch_hypersequent();
    CHECK(b.unlabelled() == hs("=> p"));
    CHECK(to_string(b) == "[1] => p");

    for (DecideSystem s : {DecideSystem::RS4Cut, DecideSystem::RK4Cut}) {
        SaturationResult c = saturate(*named_goal("C"), s);
        CHECK(c.status == SaturationStatus::Closed);
    }
}

TEST_CASE("extraction examples") {
    SaturationResult open = saturate(hs("=> p"), DecideSystem::RK4Cut);
    REQUIRE(open.open);
    ExtractedModel m = extract_model(*open.open, ExtractionRelation::R1);
    CHECK(m.model.size() == 1);
    CHECK(m.branch == Branch{0});
    CHECK_FALSE(eval(m.model, 0, parse_formula("p")));
    CHECK(branch_refutes(m.model, m.branch, hs("=> p")));

    ExtractedModel refl = extract_model(*open.open, ExtractionRelation::Rstar);
    CHECK(refl.model.frame.related(0, 0));
}

TEST_CASE("decide examples") {
    for (DecideSystem s : {DecideSystem::RS4Cut, DecideSystem::RK4Cut})
        check_valid(decide(*named_goal("C"), s), *named_goal("C"), s);
    check_valid(decide(hs("[]p => [][]p"), DecideSystem::RK4Cut), hs("[]p => [][]p"), DecideSystem::RK4Cut);
    check_valid(decide(hs("=> [](p | ~p)"), DecideSystem::RK4Cut), hs("=> [](p | ~p)"), DecideSystem::RK4Cut);
    check_valid(decide(hs("[]p => p"), DecideSystem::RS4Cut), hs("[]p => p"), DecideSystem::RS4Cut);
    check_invalid(decide(hs("[]p => p"), DecideSystem::RK4Cut), hs("[]p => p"), DecideSystem::RK4Cut);
    check_invalid(decide(hs("=> p"), DecideSystem::RS4Cut), hs("=> p"), DecideSystem::RS4Cut);
    check_invalid(decide(hs("p => []p"), DecideSystem::RS4Cut), hs("p => []p"), DecideSystem::RS4Cut);

    // the 4-axiom through a component boundary and T on a later component
    check_valid(decide(hs("[]p => // => // => p"), DecideSystem::RK4Cut), hs("[]p => // => // => p"),
                DecideSystem::RK4Cut);
    check_valid(decide(hs("=> // []p => p"), DecideSystem::RS4Cut), hs("=> // []p => p"), DecideSystem::RS4Cut);
    check_invalid(decide(hs("[]p => // => // => q"), DecideSystem::RK4Cut), hs("[]p => // => // => q"),
                  DecideSystem::RK4Cut);

    // the three-component counterexample hypersequent is S4-valid
    check_valid(decide(*named_goal("C3"), DecideSystem::RS4Cut), *named_goal("C3"), DecideSystem::RS4Cut);
}

TEST_CASE("property: decide agrees with bounded model search") {
    std::mt19937_64 rng(13);
    const std::vector<std::string> atoms{"p", "q"};
    int valid = 0, invalid = 0;
    for (int i = 0; i < 120; ++i) {
        Hypersequent g = random_hypersequent(rng, atoms, 2, 2, 3);
        for (DecideSystem s : {DecideSystem::RK4Cut, DecideSystem::RS4Cut}) {
            CAPTURE(to_string(g));
            CAPTURE(to_string(s));
            DecideResult r = decide(g, s);
            REQUIRE(r.verdict != Verdict::Unknown);
            BoundedResult b = bounded_validity(g, frame_class_of(s), 3, 1);
            if (r.verdict == Verdict::Valid) {
                ++valid;
                CHECK_FALSE(b.countermodel_found);
                CHECK(check_derivation(*r.certificate, calculus_of(s)).ok);
            } else {
                ++invalid;
                CHECK(branch_refutes(r.model->model, r.model->branch, g));
                CHECK(check_frame_class(r.model->model.frame, frame_class_of(s)).ok);
            }
        }
    }
    CHECK(valid > 20);
    CHECK(invalid > 20);
}
