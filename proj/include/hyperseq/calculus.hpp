#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hyperseq/sequent.hpp"

namespace hyperseq {

enum class Rule {
    Id, Cut, EWL, EWR, TL, TR, BoxR, BoxL,
    NegL, NegR, AndL1, AndL2, AndR, OrL, OrR1, OrR2,
    EC, Sym, EW, EE, Drop, T, Merge
};

std::string rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);
const std::vector<Rule>& all_rules();

// component is the (left-)main position. aux is the right-main position for
// BoxL and the second position of the pair for EC, EE and Merge. principal
// is the main sentence, or the cut formula for Cut.
struct RuleApp {
    Rule rule = Rule::Id;
    std::size_t component = 0;
    std::optional<std::size_t> aux;
    std::optional<Formula> principal;
    std::optional<Side> side;

    friend bool operator==(const RuleApp&, const RuleApp&) = default;
};

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
    Hypersequent conclusion;
    RuleApp app;
    std::vector<DerivPtr> premises;
};

DerivPtr make_derivation(Hypersequent conclusion, RuleApp app, std::vector<DerivPtr> premises = {});

std::size_t derivation_size(const Derivation& d);
std::size_t derivation_height(const Derivation& d);
bool uses_rule(const Derivation& d, Rule r);
// Every formula occurring in any node.
FSet derivation_formulas(const Derivation& d);
// Every atom occurring in any node, sorted.
std::vector<std::string> derivation_atoms(const Derivation& d);

struct CalculusSpec {
    std::string name;
    std::set<Rule> extra;  // rules beyond the RK base set
    bool cut = false;

    bool allows(Rule r) const;
    // "RK4", "RK4+Cut", or the custom name.
    std::string display() const;
};

// Accepts RK, RD, RT, RKB, RK4, RB, RS4, RS5, RTB in any letter case, with
// an optional "Cut" / "+Cut" suffix.
CalculusSpec calculus(const std::string& name);
CalculusSpec calculus(const std::string& name, bool cut);
const std::vector<std::string>& system_names();

struct StepCheck {
    bool ok = true;
    std::string reason;
};

StepCheck check_step(const CalculusSpec& spec, const Hypersequent& conclusion, const RuleApp& app,
                     const std::vector<Hypersequent>& premises);
// Schema only, ignoring which rules the calculus enables.
StepCheck check_schema(const Hypersequent& conclusion, const RuleApp& app,
                       const std::vector<Hypersequent>& premises);

struct DerivationCheck {
    bool ok = true;
    std::string reason;
    std::vector<std::size_t> path;  // premise indices from the root to the failing node
};

DerivationCheck check_derivation(const Derivation& d, const CalculusSpec& spec);

}  // namespace hyperseq
