#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hyperseq/calculus.hpp"
#include "hyperseq/kripke.hpp"

namespace hyperseq {

enum class DecideSystem { RK4Cut, RS4Cut };
std::string to_string(DecideSystem s);
// Accepts rk4cut, RK4Cut, rk4+cut and the rs4 spellings.
DecideSystem decide_system_from_string(const std::string& s);
CalculusSpec calculus_of(DecideSystem s);
FrameClass frame_class_of(DecideSystem s);

enum class ExtractionRelation { R1, Rplus, Rstar };
ExtractionRelation extraction_relation_of(DecideSystem s);

struct LabelledComponent {
    std::string label;
    Sequent seq;
};

// Labels are unique and their order is the component order.
struct LabelledHypersequent {
    std::vector<LabelledComponent> comps;
    Hypersequent unlabelled() const;
};

std::string to_string(const LabelledHypersequent& h);

struct DecideLimits {
    std::uint64_t max_nodes = 0;  // 0: 200'000 saturated paths
    std::size_t max_path = 0;     // 0: 64 components on one path
};

// The saturated open tableau. Nodes form a tree whose first goal_size nodes
// are the goal components in order; a blocked node reuses the successors of
// an ancestor with the same sequent.
struct OpenTree {
    struct Node {
        std::string label;
        Sequent seq;
        std::optional<std::size_t> parent;
        std::vector<std::size_t> children;
        std::optional<std::size_t> blocked_by;
    };
    std::vector<Node> nodes;
    std::vector<std::size_t> goal_branch;

    LabelledHypersequent branch_hypersequent() const;
};

struct DecideStats {
    std::uint64_t paths = 0;      // saturated path hypersequents
    std::uint64_t memo_hits = 0;
    std::uint64_t blocked = 0;
    std::uint64_t cuts = 0;        // propagation steps justified by Cut
};

enum class SaturationStatus { Closed, Open, Unknown };
std::string to_string(SaturationStatus s);

struct SaturationResult {
    SaturationStatus status = SaturationStatus::Unknown;
    DerivPtr certificate;           // Closed: a derivation in RK4+Cut or RS4+Cut
    std::shared_ptr<OpenTree> open;  // Open
    DecideStats stats;
};

SaturationResult saturate(const Hypersequent& goal, DecideSystem system, DecideLimits limits = {});

struct ExtractedModel {
    KripkeModel model;
    Branch branch;  // the goal components, in order
};

// Worlds are node labels, atoms are true exactly where they occur on the left.
ExtractedModel extract_model(const OpenTree& t, ExtractionRelation rel);

enum class Verdict { Valid, Invalid, Unknown };
std::string to_string(Verdict v);

struct DecideResult {
    Verdict verdict = Verdict::Unknown;
    DerivPtr certificate;                 // Valid
    std::optional<ExtractedModel> model;  // Invalid
    std::shared_ptr<OpenTree> open;       // Invalid
    DecideStats stats;
    std::string internal_error;  // set when a self-check fails; verdict is then Unknown
};

// Valid verdicts carry a checked derivation, invalid ones a countermodel that
// has been checked against the frame class and the goal.
DecideResult decide(const Hypersequent& goal, DecideSystem system, DecideLimits limits = {});

// True iff the given branch of m refutes every component of h in order and
// consecutive worlds are related.
bool branch_refutes(const KripkeModel& m, const Branch& b, const Hypersequent& h);

}  // namespace hyperseq
