#include "hyperseq/sequent.hpp"

#include <algorithm>
#include <cctype>

namespace hyperseq {

FSet::FSet(std::initializer_list<Formula> fs) : FSet(std::vector<Formula>(fs)) {}

FSet::FSet(std::vector<Formula> fs) : items_(std::move(fs)) {
    std::sort(items_.begin(), items_.end(), FormulaLess{});
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool FSet::contains(Formula f) const {
    return std::binary_search(items_.begin(), items_.end(), f, FormulaLess{});
}

bool FSet::insert(Formula f) {
    auto it = std::lower_bound(items_.begin(), items_.end(), f, FormulaLess{});
    if (it != items_.end() && *it == f) return false;
    items_.insert(it, f);
    return true;
}

bool FSet::erase(Formula f) {
    auto it = std::lower_bound(items_.begin(), items_.end(), f, FormulaLess{});
    if (it == items_.end() || *it != f) return false;
    items_.erase(it);
    return true;
}

FSet FSet::with(Formula f) const {
    FSet r = *this;
    r.insert(f);
    return r;
}

FSet FSet::without(Formula f) const {
    FSet r = *this;
    r.erase(f);
    return r;
}

FSet FSet::united(const FSet& o) const {
    FSet r;
    r.items_.reserve(items_.size() + o.items_.size());
    std::set_union(items_.begin(), items_.end(), o.items_.begin(), o.items_.end(),
                   std::back_inserter(r.items_), FormulaLess{});
    return r;
}

bool FSet::subset_of(const FSet& o) const {
    return std::includes(o.items_.begin(), o.items_.end(), items_.begin(), items_.end(),
                         FormulaLess{});
}

bool operator<(const FSet& a, const FSet& b) {
    return std::lexicographical_compare(a.items_.begin(), a.items_.end(), b.items_.begin(),
                                        b.items_.end(), FormulaLess{});
}

std::size_t HypersequentHash::operator()(const Hypersequent& h) const {
    std::size_t seed = h.comps.size();
    auto mix = [&seed](std::size_t v) { seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2); };
    for (const auto& c : h.comps) {
        for (Formula f : c.left) mix(f.id());
        mix(0xabcdefULL);
        for (Formula f : c.right) mix(f.id());
        mix(0x123457ULL);
    }
    return seed;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Splits on commas at parenthesis depth zero. Positions are offsets into the
// original text so parse errors point at the right column.
FSet parse_side(std::string_view text, std::size_t base) {
    FSet out;
    if (trim(text).empty()) return out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || (text[i] == ',' && depth == 0)) {
            std::string_view piece = text.substr(start, i - start);
            if (trim(piece).empty()) throw ParseError("empty formula in list", base + start);
            try {
                out.insert(parse_formula(piece));
            } catch (const ParseError& e) {
                throw ParseError("malformed formula", base + start + e.position());
            }
            start = i + 1;
        } else if (text[i] == '(') {
            ++depth;
        } else if (text[i] == ')') {
            --depth;
        }
    }
    return out;
}

Sequent parse_sequent_at(std::string_view text, std::size_t base) {
    std::size_t arrow = text.find("=>");
    if (arrow == std::string_view::npos) throw ParseError("expected '=>'", base + text.size());
    if (text.find("=>", arrow + 2) != std::string_view::npos)
        throw ParseError("more than one '=>' in a component", base + text.find("=>", arrow + 2));
    Sequent s;
    s.left = parse_side(text.substr(0, arrow), base);
    s.right = parse_side(text.substr(arrow + 2), base + arrow + 2);
    return s;
}

std::string join(const FSet& s) {
    std::string out;
    for (Formula f : s) {
        if (!out.empty()) out += ", ";
        out += f.str();
    }
    return out;
}

void closure_into(Formula f, FSet& out) {
    if (!out.insert(f)) return;
    switch (f.op()) {
        case Op::Atom:
            break;
        case Op::Neg:
        case Op::Box:
            closure_into(f.sub(), out);
            break;
        default:
            closure_into(f.left(), out);
            closure_into(f.right(), out);
    }
}

}  // namespace

Sequent parse_sequent(std::string_view text) { return parse_sequent_at(text, 0); }

Hypersequent parse_hypersequent(std::string_view text) {
    if (trim(text).empty()) throw ParseError("empty hypersequent", 0);
    Hypersequent h;
    std::size_t start = 0;
    while (true) {
        std::size_t sep = text.find("//", start);
        std::string_view piece =
            text.substr(start, sep == std::string_view::npos ? std::string_view::npos : sep - start);
        if (trim(piece).empty()) throw ParseError("empty component", start);
        h.comps.push_back(parse_sequent_at(piece, start));
        if (sep == std::string_view::npos) break;
        start = sep + 2;
    }
    return h;
}

std::string to_string(const FSet& s) { return join(s); }

std::string to_string(const Sequent& s) {
    std::string l = join(s.left), r = join(s.right);
    std::string out = l.empty() ? "=>" : l + " =>";
    if (!r.empty()) out += " " + r;
    return out;
}

std::string to_string(const Hypersequent& h) {
    std::string out;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (i) out += " // ";
        out += to_string(h[i]);
    }
    return out;
}

std::vector<Formula> formulas_of(const Hypersequent& h) {
    FSet all;
    for (const auto& c : h.comps) {
        for (Formula f : c.left) all.insert(f);
        for (Formula f : c.right) all.insert(f);
    }
    return all.items();
}

std::vector<std::string> atoms_of(const Hypersequent& h) {
    std::vector<std::string> out;
    for (Formula f : formulas_of(h)) collect_atoms(f, out);
    std::sort(out.begin(), out.end());
    return out;
}

int box_count(const Hypersequent& h) {
    int n = 0;
    for (const auto& c : h.comps) {
        for (Formula f : c.left) n += box_count(f);
        for (Formula f : c.right) n += box_count(f);
    }
    return n;
}

FSet subformula_closure(const Hypersequent& h) {
    FSet out;
    for (Formula f : formulas_of(h)) closure_into(f, out);
    return out;
}

}  // namespace hyperseq
