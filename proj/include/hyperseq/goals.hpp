#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperseq/sequent.hpp"

namespace hyperseq {

// The fixed hypersequents the CLI and the acceptance run refer to by name:
//   J   => p // => [](~[][]p & ~[][]q) // => q
//   J'  => p // => []~[][]p & []~[][]q // => q
//   C   => ~[]~[](p & q) | [](~[]p | []~[]q)
//   C3  []~[](p & q) => // []p => // []q =>   (C is its translation)
std::optional<Hypersequent> named_goal(const std::string& name);
std::vector<std::string> goal_names();

// A goal name or hypersequent text.
Hypersequent goal_from_text(const std::string& text);

}  // namespace hyperseq
