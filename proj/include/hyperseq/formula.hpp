#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyperseq {

enum class Op : std::uint8_t { Atom, Neg, Box, And, Or };

struct FormulaNode;

// Handle to a hash-consed formula node. Structurally equal formulas share a
// node, so equality is pointer comparison. Nodes live for the whole process.
class Formula {
public:
    Formula() = default;

    static Formula atom(std::string_view name);
    static Formula neg(Formula sub);
    static Formula box(Formula sub);
    static Formula conj(Formula left, Formula right);
    static Formula disj(Formula left, Formula right);

    bool valid() const { return node_ != nullptr; }
    Op op() const;
    bool is_atom() const { return op() == Op::Atom; }
    const std::string& name() const;  // atoms only
    Formula sub() const;              // Neg, Box
    Formula left() const;             // And, Or
    Formula right() const;            // And, Or

    // Number of tree nodes.
    std::size_t size() const;
    // Canonical fully-determined text, minimal parentheses.
    const std::string& str() const;
    std::uint32_t id() const;
    std::size_t hash() const;

    friend bool operator==(Formula a, Formula b) { return a.node_ == b.node_; }
    friend bool operator!=(Formula a, Formula b) { return a.node_ != b.node_; }

    const FormulaNode* node() const { return node_; }

private:
    explicit Formula(const FormulaNode* n) : node_(n) {}
    const FormulaNode* node_ = nullptr;
    friend class FormulaTable;
};

// Canonical order: by size, then by printed text.
struct FormulaLess {
    bool operator()(Formula a, Formula b) const;
};

struct FormulaHash {
    std::size_t operator()(Formula f) const { return f.hash(); }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos);
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

Formula parse_formula(std::string_view text);
std::string to_string(Formula f);

// Smallest set containing f and closed under immediate subformulas,
// in canonical order.
std::vector<Formula> subformula_closure(Formula f);
int modal_depth(Formula f);
// Connective depth: atoms have depth 0.
int formula_depth(Formula f);
int box_count(Formula f);
void collect_atoms(Formula f, std::vector<std::string>& out);

}  // namespace hyperseq

template <>
struct std::hash<hyperseq::Formula> {
    std::size_t operator()(hyperseq::Formula f) const noexcept { return f.hash(); }
};
