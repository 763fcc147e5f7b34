#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hyperseq/calculus.hpp"

namespace hyperseq {

class TransformError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TranslationResult {
    Formula formula;
    std::vector<std::string> trace;  // one line per component, outermost first
};

// I(G => D) is ~/\G | \/D, with /\{} -> \/D written as \/D and G -> \/{} as
// ~/\G. A non-final empty component contributes only []I(rest). An empty
// final component has no image and is rejected.
TranslationResult translate(const Hypersequent& h);
// The image of one component, without the box of the rest.
Formula component_formula(const Sequent& s);

// d must end in a hypersequent with two equal adjacent components; the first
// such pair is contracted with one Merge step.
DerivPtr ec_from_merge(const DerivPtr& d);

// d is a cut-free, Merge-free RTB derivation. Returns an RTB derivation of its
// end hypersequent with components k and k+1 merged.
DerivPtr eliminate_merge(const DerivPtr& d, std::size_t k);

// Inversion of a main connective at a given occurrence:
//   1: phi|psi on the right      -> phi, psi on the right
//   2: phi&psi on the left       -> phi, psi on the left
//   3: ~phi on the right         -> phi on the left
//   4: []phi on the right of the final component -> new final component => phi
// Input must be a cut-free derivation; output uses only rules of the input
// plus TL/TR and EWR.
DerivPtr invert(const DerivPtr& d, int item, std::size_t component, Formula f);

// From a derivation of H to one of => I(H), extending d with connective rules
// and BoxR only.
DerivPtr proof_of_translation(const DerivPtr& d);

// From a derivation of => I(H) back to one of H. The target H is needed
// because I is not injective (=> p|q and => p, q have the same image).
// Only RK4 and RS4 are accepted.
DerivPtr proof_from_translation(const DerivPtr& d, const Hypersequent& target, const CalculusSpec& spec);

}  // namespace hyperseq
