#include "hyperseq/goals.hpp"

namespace hyperseq {

namespace {

const std::vector<std::pair<std::string, std::string>>& table() {
    static const std::vector<std::pair<std::string, std::string>> t = {
        {"J", "=> p // => [](~[][]p & ~[][]q) // => q"},
        {"J'", "=> p // => []~[][]p & []~[][]q // => q"},
        {"C", "=> ~[]~[](p & q) | [](~[]p | []~[]q)"},
        {"C3", "[]~[](p & q) => // []p => // []q =>"},
    };
    return t;
}

}  // namespace

std::optional<Hypersequent> named_goal(const std::string& name) {
    std::string key = name == "Jprime" || name == "J′" ? "J'" : name;
    for (const auto& [n, text] : table())
        if (n == key) return parse_hypersequent(text);
    return std::nullopt;
}

std::vector<std::string> goal_names() {
    std::vector<std::string> out;
    for (const auto& [n, t] : table()) out.push_back(n);
    return out;
}

Hypersequent goal_from_text(const std::string& text) {
    if (auto g = named_goal(text)) return *g;
    return parse_hypersequent(text);
}

}  // namespace hyperseq
