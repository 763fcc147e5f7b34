#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hyperseq/calculus.hpp"
#include "hyperseq/kripke.hpp"
#include "hyperseq/ps4.hpp"

namespace hyperseq {

using json = nlohmann::json;

// Raised for structurally malformed documents.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json to_json(Formula f);
json to_json(const Sequent& s);
json to_json(const Hypersequent& h);
json to_json(const RuleApp& a);
json to_json(const Derivation& d);
json to_json(const KripkeModel& m);
json to_json(const PS4Model& m);

Formula formula_from_json(const json& j);
Sequent sequent_from_json(const json& j);
Hypersequent hypersequent_from_json(const json& j);
RuleApp rule_app_from_json(const json& j);
DerivPtr derivation_from_json(const json& j);
KripkeModel kripke_model_from_json(const json& j);
PS4Model ps4_model_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace hyperseq
