#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hyperseq/kripke.hpp"

namespace hyperseq {

// Strong Kleene values. Ordering of the enumerators carries no meaning.
enum class TV : std::uint8_t { F = 0, U = 1, T = 2 };

std::string to_string(TV v);  // "0", "*", "1"

struct PS4Model {
    std::vector<std::string> worlds;
    std::vector<std::vector<char>> relR;
    std::vector<std::vector<char>> relS;
    std::vector<std::map<std::string, TV>> val;  // missing entries read as *

    explicit PS4Model(std::vector<std::string> names = {});
    std::size_t size() const { return worlds.size(); }
    int index_of(const std::string& name) const;
    TV atom(std::size_t w, const std::string& a) const;
    std::vector<std::string> atoms() const;
};

TV eval3(const PS4Model& m, std::size_t w, Formula f);
std::vector<TV> eval3_all(const PS4Model& m, Formula f);

// First violated frame condition, with its tuple, in the order
// S reflexivity, R reflexivity, pseudo-transitivity, forth, back.
FrameCheck check_ps4_frame(const PS4Model& m);

struct PreservationCheck {
    bool ok = true;
    std::size_t x = 0, y = 0;  // the S-pair that breaks preservation
    std::optional<Formula> witness;
};

// Checks every formula over the model's atoms with connective depth at most
// depth. Formulas are grouped by their value vector across worlds, so the
// check is exhaustive without enumerating syntax.
PreservationCheck check_s_preservation(const PS4Model& m, int depth);

class FrameViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// i is 1-based and must satisfy 2 <= i < branch.size(). Returns
// w_1..w_{i-1}, w'_{i+1}..w'_n with w_j S w'_j.
Branch copy_branch(const PS4Model& m, const Branch& branch, std::size_t i);

// Branch along R refuting every component with exact values 1 (left) and 0
// (right).
std::optional<Branch> ps4_countermodel(const PS4Model& m, const Hypersequent& h);

PS4Model builtin_fig5_model();

// Random model with 1..max_points worlds satisfying all frame conditions and
// S information preservation.
PS4Model random_ps4_model(std::mt19937_64& rng, int max_points,
                          const std::vector<std::string>& atoms);

// Same worlds and R, S the identity, every atom defined.
PS4Model ps4_from_kripke(const KripkeModel& m);

}  // namespace hyperseq
