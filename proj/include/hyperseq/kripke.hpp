#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperseq/sequent.hpp"

namespace hyperseq {

enum class FrameClass { K, D, T, KB, K4, B, S4, S5 };

std::string to_string(FrameClass c);
FrameClass frame_class_from_string(const std::string& s);

// Worlds are addressed by index; names are for I/O only.
struct KripkeFrame {
    std::vector<std::string> worlds;
    std::vector<std::vector<char>> rel;  // rel[a][b] iff a R b

    explicit KripkeFrame(std::vector<std::string> names = {});
    std::size_t size() const { return worlds.size(); }
    bool related(std::size_t a, std::size_t b) const { return rel[a][b] != 0; }
    void relate(std::size_t a, std::size_t b) { rel[a][b] = 1; }
    int index_of(const std::string& name) const;  // -1 when absent
};

struct KripkeModel {
    KripkeFrame frame;
    std::vector<std::map<std::string, bool>> val;  // per world

    explicit KripkeModel(KripkeFrame f = KripkeFrame{});
    std::size_t size() const { return frame.size(); }
    void set(std::size_t w, const std::string& atom, bool v) { val[w][atom] = v; }
};

using Branch = std::vector<std::size_t>;

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool eval(const KripkeModel& m, std::size_t w, Formula f);
// Truth value of f at every world.
std::vector<char> eval_all(const KripkeModel& m, Formula f);

struct FrameCheck {
    bool ok = true;
    std::string condition;            // violated condition when !ok
    std::vector<std::size_t> witness;  // violating tuple
};

FrameCheck check_frame_class(const KripkeFrame& fr, FrameClass c);

// Calls visit on each branch of length n in lexicographic order; stops early
// when visit returns false.
void for_each_branch(const KripkeFrame& fr, std::size_t n,
                     const std::function<bool(const Branch&)>& visit);
std::vector<Branch> branches(const KripkeFrame& fr, std::size_t n);

// First branch (lexicographic) along which every component is refuted.
std::optional<Branch> countermodels_hypersequent(const KripkeModel& m, const Hypersequent& h);

struct BoundedResult {
    bool countermodel_found = false;
    KripkeModel model;
    Branch branch;
    std::uint64_t frames_checked = 0;  // canonical frames examined
    std::uint64_t models_checked = 0;
};

// Exhaustive search over frames of class c with at most max_worlds worlds,
// one frame per isomorphism class, and all valuations of the atoms of h.
// Deterministic: the first countermodel in enumeration order is returned.
BoundedResult bounded_validity(const Hypersequent& h, FrameClass c, int max_worlds, int jobs = 0);

// Canonical frames of class c with exactly n worlds, in enumeration order.
// Each frame is given as successor bitmasks.
std::vector<std::vector<std::uint32_t>> canonical_frames(FrameClass c, int n);

// Worker count from HYPERSEQ_JOBS, defaulting to hardware concurrency.
int default_jobs();

}  // namespace hyperseq
