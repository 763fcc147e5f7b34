#include "hyperseq/formula.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <set>
#include <unordered_map>

namespace hyperseq {

struct FormulaNode {
    Op op;
    const FormulaNode* a;
    const FormulaNode* b;
    std::string name;
    std::size_t size;
    std::string text;
    std::uint32_t id;
    std::size_t hash;
    int prec;  // 1 for |, 2 for &, 3 for unary and atoms
};

namespace {

struct Key {
    Op op;
    const FormulaNode* a;
    const FormulaNode* b;
    std::string name;
    bool operator==(const Key& o) const {
        return op == o.op && a == o.a && b == o.b && name == o.name;
    }
};

struct KeyHash {
    std::size_t operator()(const Key& k) const {
        std::size_t h = std::hash<std::string>{}(k.name);
        h ^= static_cast<std::size_t>(k.op) * 0x9e3779b97f4a7c15ULL;
        h ^= std::hash<const void*>{}(k.a) + 0x9e3779b9 + (h << 6) + (h >> 2);
        h ^= std::hash<const void*>{}(k.b) + 0x9e3779b9 + (h << 6) + (h >> 2);
        return h;
    }
};

std::string wrap(const FormulaNode* n, bool parens) {
    return parens ? "(" + n->text + ")" : n->text;
}

}  // namespace

class FormulaTable {
public:
    static FormulaTable& instance() {
        static FormulaTable t;
        return t;
    }

    Formula make(Op op, const FormulaNode* a, const FormulaNode* b, std::string_view name) {
        Key key{op, a, b, std::string(name)};
        std::lock_guard<std::mutex> lock(mu_);
        auto it = index_.find(key);
        if (it != index_.end()) return Formula(it->second);
        FormulaNode& n = nodes_.emplace_back();
        n.op = op;
        n.a = a;
        n.b = b;
        n.name = key.name;
        n.id = static_cast<std::uint32_t>(nodes_.size() - 1);
        switch (op) {
            case Op::Atom:
                n.size = 1;
                n.text = n.name;
                n.prec = 3;
                break;
            case Op::Neg:
            case Op::Box:
                n.size = 1 + a->size;
                n.text = (op == Op::Neg ? "~" : "[]") + wrap(a, a->prec < 3);
                n.prec = 3;
                break;
            case Op::And:
            case Op::Or: {
                int p = op == Op::And ? 2 : 1;
                n.size = 1 + a->size + b->size;
                n.text = wrap(a, a->prec < p) + (op == Op::And ? " & " : " | ") +
                         wrap(b, b->prec <= p);
                n.prec = p;
                break;
            }
        }
        n.hash = std::hash<std::string>{}(n.text);
        index_.emplace(std::move(key), &n);
        return Formula(&n);
    }

private:
    std::mutex mu_;
    std::deque<FormulaNode> nodes_;
    std::unordered_map<Key, const FormulaNode*, KeyHash> index_;
};

Formula Formula::atom(std::string_view name) {
    if (name.empty()) throw std::invalid_argument("empty atom name");
    return FormulaTable::instance().make(Op::Atom, nullptr, nullptr, name);
}
Formula Formula::neg(Formula sub) {
    return FormulaTable::instance().make(Op::Neg, sub.node_, nullptr, {});
}
Formula Formula::box(Formula sub) {
    return FormulaTable::instance().make(Op::Box, sub.node_, nullptr, {});
}
Formula Formula::conj(Formula l, Formula r) {
    return FormulaTable::instance().make(Op::And, l.node_, r.node_, {});
}
Formula Formula::disj(Formula l, Formula r) {
    return FormulaTable::instance().make(Op::Or, l.node_, r.node_, {});
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
Formula Formula::sub() const { return Formula(node_->a); }
Formula Formula::left() const { return Formula(node_->a); }
Formula Formula::right() const { return Formula(node_->b); }
std::size_t Formula::size() const { return node_->size; }
const std::string& Formula::str() const { return node_->text; }
std::uint32_t Formula::id() const { return node_->id; }
std::size_t Formula::hash() const { return node_->hash; }

bool FormulaLess::operator()(Formula a, Formula b) const {
    if (a == b) return false;
    if (a.size() != b.size()) return a.size() < b.size();
    return a.str() < b.str();
}

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Formula parse_all() {
        Formula f = parse_or();
        skip();
        if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
        return f;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(std::string_view tok) {
        skip();
        if (s_.substr(i_, tok.size()) == tok) {
            i_ += tok.size();
            return true;
        }
        return false;
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (eat("|")) f = Formula::disj(f, parse_and());
        return f;
    }
    Formula parse_and() {
        Formula f = parse_unary();
        while (eat("&")) f = Formula::conj(f, parse_unary());
        return f;
    }
    Formula parse_unary() {
        skip();
        if (eat("~")) return Formula::neg(parse_unary());
        if (eat("[]")) return Formula::box(parse_unary());
        if (eat("(")) {
            Formula f = parse_or();
            if (!eat(")")) throw ParseError("expected ')'", i_);
            return f;
        }
        if (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) {
            std::size_t start = i_;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            return Formula::atom(s_.substr(start, i_ - start));
        }
        if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
        throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

void closure_rec(Formula f, std::set<Formula, FormulaLess>& out) {
    if (!out.insert(f).second) return;
    switch (f.op()) {
        case Op::Atom:
            break;
        case Op::Neg:
        case Op::Box:
            closure_rec(f.sub(), out);
            break;
        case Op::And:
        case Op::Or:
            closure_rec(f.left(), out);
            closure_rec(f.right(), out);
            break;
    }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(Formula f) { return f.str(); }

std::vector<Formula> subformula_closure(Formula f) {
    std::set<Formula, FormulaLess> out;
    closure_rec(f, out);
    return {out.begin(), out.end()};
}

int modal_depth(Formula f) {
    switch (f.op()) {
        case Op::Atom:
            return 0;
        case Op::Neg:
            return modal_depth(f.sub());
        case Op::Box:
            return 1 + modal_depth(f.sub());
        default:
            return std::max(modal_depth(f.left()), modal_depth(f.right()));
    }
}

int formula_depth(Formula f) {
    switch (f.op()) {
        case Op::Atom:
            return 0;
        case Op::Neg:
        case Op::Box:
            return 1 + formula_depth(f.sub());
        default:
            return 1 + std::max(formula_depth(f.left()), formula_depth(f.right()));
    }
}

int box_count(Formula f) {
    switch (f.op()) {
        case Op::Atom:
            return 0;
        case Op::Neg:
            return box_count(f.sub());
        case Op::Box:
            return 1 + box_count(f.sub());
        default:
            return box_count(f.left()) + box_count(f.right());
    }
}

void collect_atoms(Formula f, std::vector<std::string>& out) {
    switch (f.op()) {
        case Op::Atom:
            if (std::find(out.begin(), out.end(), f.name()) == out.end()) out.push_back(f.name());
            break;
        case Op::Neg:
        case Op::Box:
            collect_atoms(f.sub(), out);
            break;
        default:
            collect_atoms(f.left(), out);
            collect_atoms(f.right(), out);
    }
}

}  // namespace hyperseq
