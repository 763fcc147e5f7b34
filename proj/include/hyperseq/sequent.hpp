#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "hyperseq/formula.hpp"

namespace hyperseq {

// Finite set of formulas kept sorted in canonical order.
class FSet {
public:
    FSet() = default;
    FSet(std::initializer_list<Formula> fs);
    explicit FSet(std::vector<Formula> fs);

    bool contains(Formula f) const;
    // Returns false if f was already present.
    bool insert(Formula f);
    bool erase(Formula f);
    FSet with(Formula f) const;
    FSet without(Formula f) const;
    FSet united(const FSet& o) const;
    bool subset_of(const FSet& o) const;

    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }
    const std::vector<Formula>& items() const { return items_; }

    friend bool operator==(const FSet& a, const FSet& b) { return a.items_ == b.items_; }
    friend bool operator!=(const FSet& a, const FSet& b) { return !(a == b); }
    friend bool operator<(const FSet& a, const FSet& b);

private:
    std::vector<Formula> items_;
};

enum class Side { Left, Right };

struct Sequent {
    FSet left;
    FSet right;

    const FSet& side(Side s) const { return s == Side::Left ? left : right; }
    FSet& side(Side s) { return s == Side::Left ? left : right; }
    bool empty() const { return left.empty() && right.empty(); }
    Sequent united(const Sequent& o) const { return {left.united(o.left), right.united(o.right)}; }

    friend bool operator==(const Sequent& a, const Sequent& b) {
        return a.left == b.left && a.right == b.right;
    }
    friend bool operator!=(const Sequent& a, const Sequent& b) { return !(a == b); }
    friend bool operator<(const Sequent& a, const Sequent& b) {
        if (a.left != b.left) return a.left < b.left;
        return a.right < b.right;
    }
};

// Non-empty ordered list of sequents. Emptiness is checked at the text and
// JSON boundaries; internal code may build intermediate values freely.
struct Hypersequent {
    std::vector<Sequent> comps;

    std::size_t size() const { return comps.size(); }
    Sequent& operator[](std::size_t i) { return comps[i]; }
    const Sequent& operator[](std::size_t i) const { return comps[i]; }

    friend bool operator==(const Hypersequent& a, const Hypersequent& b) {
        return a.comps == b.comps;
    }
    friend bool operator!=(const Hypersequent& a, const Hypersequent& b) { return !(a == b); }
    friend bool operator<(const Hypersequent& a, const Hypersequent& b) {
        return a.comps < b.comps;
    }
};

struct HypersequentHash {
    std::size_t operator()(const Hypersequent& h) const;
};

Sequent parse_sequent(std::string_view text);
Hypersequent parse_hypersequent(std::string_view text);
std::string to_string(const FSet& s);
std::string to_string(const Sequent& s);
std::string to_string(const Hypersequent& h);

// Every formula occurring anywhere in h.
std::vector<Formula> formulas_of(const Hypersequent& h);
std::vector<std::string> atoms_of(const Hypersequent& h);
int box_count(const Hypersequent& h);
// Union of the subformula closures of all formulas of h.
FSet subformula_closure(const Hypersequent& h);

}  // namespace hyperseq
