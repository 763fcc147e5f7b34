#pragma once

// Helpers shared by the search and the decision procedure.

#include <optional>

#include "hyperseq/calculus.hpp"

namespace hyperseq::detail {

RuleApp app_of(Rule r, std::size_t comp, std::optional<Formula> pr = std::nullopt,
               std::optional<Side> side = std::nullopt, std::optional<std::size_t> aux = std::nullopt);

// Builds a node and insists that it is a correct instance of its schema.
DerivPtr step(Hypersequent c, RuleApp a, std::vector<DerivPtr> ps);

Hypersequent without_comp(const Hypersequent& h, std::size_t i);
Hypersequent with_comp(const Hypersequent& h, std::size_t i, Sequent s);
std::optional<Side> main_side(Rule r);

struct Step {
    RuleApp app;
    Hypersequent premise;
};

// Next connective or modal rule that only adds formulas, or nothing when the
// goal is saturated. Main sentences are kept.
std::optional<Step> additive_step(const Hypersequent& g, const CalculusSpec& spec);

struct Branching {
    RuleApp app;
    Hypersequent first, second;
};

// First OrL/AndR whose parts are both absent.
std::optional<Branching> branching_step(const Hypersequent& g);

// Closes a goal that has the same formula on both sides of one component.
DerivPtr axiom_macro(const Hypersequent& g);

}  // namespace hyperseq::detail
