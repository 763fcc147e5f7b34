#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hyperseq/calculus.hpp"

namespace hyperseq {

struct SearchLimits {
    std::size_t max_components = 0;  // 0: goal components + box count + 1
    std::size_t max_depth = 0;       // 0: 400
    std::uint64_t max_nodes = 0;     // 0: 3'000'000 expanded states
};

SearchLimits default_limits(const Hypersequent& goal);

enum class SearchStatus { Proof, Unprovable, Unknown };
std::string to_string(SearchStatus s);

struct SearchStats {
    std::uint64_t nodes = 0;         // saturated states expanded
    std::uint64_t memo_hits = 0;     // definite failures reused
    std::uint64_t proof_hits = 0;    // cached proofs reused
    std::uint64_t cycles = 0;        // goals cut because they were on the path
    std::uint64_t component_cuts = 0;
    std::uint64_t depth_cuts = 0;
    std::size_t max_path = 0;
};

struct SearchResult {
    SearchStatus status = SearchStatus::Unknown;
    DerivPtr proof;  // set iff status == Proof
    SearchLimits limits;  // the effective limits
    SearchStats stats;
};

// Cut-free backwards search. The search works on saturated goals: every
// connective rule is applied with its main sentence kept, which never changes
// provability because premises only grow. The remaining choices are BoxR and
// the structural rules.
SearchResult search(const Hypersequent& goal, const CalculusSpec& spec, SearchLimits limits = {});

// Which premise components carry conclusion component j, per premise.
std::vector<std::vector<std::size_t>> component_map(const RuleApp& app, std::size_t conclusion_size,
                                                    std::size_t premise_index);

// Appends TL/TR steps so that d ends in target. Requires the same component
// count and componentwise inclusion.
DerivPtr weaken_to(DerivPtr d, const Hypersequent& target);

// f => f, in RK.
DerivPtr identity_derivation(Formula f);

// Removes the occurrence of f at (component, side) throughout d. Fails with
// nullptr when that occurrence is actually used by some rule.
DerivPtr strip_formula(const DerivPtr& d, std::size_t component, Side side, Formula f);

// Drops main sentences that were kept but never used again.
DerivPtr tidy(const DerivPtr& d);

struct FuzzOptions {
    std::size_t count = 100;
    std::size_t max_depth = 6;  // generation rounds along any branch
    std::vector<std::string> atoms{"p", "q"};
    std::uint64_t seed = 1;
};

// Random valid derivations built forwards from Id leaves using the rules the
// calculus enables (never Cut). Every output passes check_derivation.
std::vector<DerivPtr> fuzz_derivations(const CalculusSpec& spec, const FuzzOptions& opts);

}  // namespace hyperseq
