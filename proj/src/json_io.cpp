#include "hyperseq/json_io.hpp"

#include <fstream>

namespace hyperseq {

json to_json(Formula f) {
    switch (f.op()) {
        case Op::Atom: return json{{"atom", f.name()}};
        case Op::Neg: return json{{"neg", to_json(f.sub())}};
        case Op::Box: return json{{"box", to_json(f.sub())}};
        case Op::And: return json{{"and", json::array({to_json(f.left()), to_json(f.right())})}};
        case Op::Or: return json{{"or", json::array({to_json(f.left()), to_json(f.right())})}};
    }
    return nullptr;
}

json to_json(const Sequent& s) {
    json l = json::array(), r = json::array();
    for (Formula f : s.left) l.push_back(to_json(f));
    for (Formula f : s.right) r.push_back(to_json(f));
    return json{{"left", l}, {"right", r}};
}

json to_json(const Hypersequent& h) {
    json cs = json::array();
    for (const auto& c : h.comps) cs.push_back(to_json(c));
    return json{{"components", cs}};
}

json to_json(const RuleApp& a) {
    json j{{"id", rule_name(a.rule)}, {"component", a.component}};
    if (a.aux) j["aux"] = *a.aux;
    if (a.principal) j["principal"] = to_json(*a.principal);
    if (a.side) j["side"] = *a.side == Side::Left ? "L" : "R";
    return j;
}

json to_json(const Derivation& d) {
    json ps = json::array();
    for (const auto& p : d.premises) ps.push_back(to_json(*p));
    return json{{"conclusion", to_json(d.conclusion)}, {"rule", to_json(d.app)}, {"premises", ps}};
}

json to_json(const KripkeModel& m) {
    json rel = json::array(), val = json::object();
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < m.size(); ++b)
            if (m.frame.related(a, b)) rel.push_back({m.frame.worlds[a], m.frame.worlds[b]});
    for (std::size_t w = 0; w < m.size(); ++w) {
        json v = json::object();
        for (const auto& [atom, b] : m.val[w]) v[atom] = b ? 1 : 0;
        val[m.frame.worlds[w]] = v;
    }
    return json{{"worlds", m.frame.worlds}, {"rel", rel}, {"val", val}};
}

json to_json(const PS4Model& m) {
    json r = json::array(), s = json::array(), val = json::object();
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < m.size(); ++b) {
            if (m.relR[a][b]) r.push_back({m.worlds[a], m.worlds[b]});
            if (m.relS[a][b]) s.push_back({m.worlds[a], m.worlds[b]});
        }
    for (std::size_t w = 0; w < m.size(); ++w) {
        json v = json::object();
        for (const auto& [atom, t] : m.val[w]) {
            if (t == TV::U) v[atom] = "*";
            else v[atom] = t == TV::T ? 1 : 0;
        }
        val[m.worlds[w]] = v;
    }
    return json{{"worlds", m.worlds}, {"relR", r}, {"relS", s}, {"val", val}};
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::vector<std::string> world_list(const json& j) {
    const json& ws = field(j, "worlds");
    if (!ws.is_array()) bad("\"worlds\" must be an array");
    std::vector<std::string> out;
    for (const auto& w : ws) {
        if (!w.is_string()) bad("world names must be strings");
        if (std::find(out.begin(), out.end(), w.get<std::string>()) != out.end())
            bad("duplicate world " + w.get<std::string>());
        out.push_back(w.get<std::string>());
    }
    return out;
}

template <class Index>
std::pair<std::size_t, std::size_t> pair_of(const json& e, const Index& index_of) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        bad("relation entries must be [world, world]");
    int a = index_of(e[0].get<std::string>()), b = index_of(e[1].get<std::string>());
    if (a < 0 || b < 0) bad("relation mentions an unknown world");
    return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
}

}  // namespace

Formula formula_from_json(const json& j) {
    if (!j.is_object() || j.size() != 1) bad("a formula is an object with exactly one tag");
    auto it = j.begin();
    const std::string& tag = it.key();
    const json& v = it.value();
    if (tag == "atom") {
        if (!v.is_string()) bad("atom name must be a string");
        std::string name = v.get<std::string>();
        try {
            Formula f = parse_formula(name);
            if (!f.is_atom()) bad("invalid atom name " + name);
            return f;
        } catch (const ParseError&) {
            bad("invalid atom name " + name);
        }
    }
    if (tag == "neg") return Formula::neg(formula_from_json(v));
    if (tag == "box") return Formula::box(formula_from_json(v));
    if (tag == "and" || tag == "or") {
        if (!v.is_array() || v.size() != 2) bad("\"" + tag + "\" takes two operands");
        Formula a = formula_from_json(v[0]), b = formula_from_json(v[1]);
        return tag == "and" ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    bad("unknown formula tag \"" + tag + "\"");
}

Sequent sequent_from_json(const json& j) {
    Sequent s;
    for (const char* key : {"left", "right"}) {
        const json& side = field(j, key);
        if (!side.is_array()) bad(std::string("\"") + key + "\" must be an array");
        for (const auto& f : side) s.side(key[0] == 'l' ? Side::Left : Side::Right).insert(formula_from_json(f));
    }
    return s;
}

Hypersequent hypersequent_from_json(const json& j) {
    const json& cs = field(j, "components");
    if (!cs.is_array() || cs.empty()) bad("\"components\" must be a non-empty array");
    Hypersequent h;
    for (const auto& c : cs) h.comps.push_back(sequent_from_json(c));
    return h;
}

RuleApp rule_app_from_json(const json& j) {
    RuleApp a;
    const json& id = field(j, "id");
    if (!id.is_string()) bad("rule id must be a string");
    auto r = rule_from_name(id.get<std::string>());
    if (!r) bad("unknown rule " + id.get<std::string>());
    a.rule = *r;
    const json& c = field(j, "component");
    if (!c.is_number_unsigned()) bad("component must be a non-negative integer");
    a.component = c.get<std::size_t>();
    if (j.contains("aux") && !j["aux"].is_null()) {
        if (!j["aux"].is_number_unsigned()) bad("aux must be a non-negative integer");
        a.aux = j["aux"].get<std::size_t>();
    }
    if (j.contains("principal") && !j["principal"].is_null()) a.principal = formula_from_json(j["principal"]);
    if (j.contains("side") && !j["side"].is_null()) {
        std::string s = j["side"].is_string() ? j["side"].get<std::string>() : "";
        if (s != "L" && s != "R") bad("side must be \"L\" or \"R\"");
        a.side = s == "L" ? Side::Left : Side::Right;
    }
    return a;
}

DerivPtr derivation_from_json(const json& j) {
    Hypersequent c = hypersequent_from_json(field(j, "conclusion"));
    RuleApp a = rule_app_from_json(field(j, "rule"));
    std::vector<DerivPtr> ps;
    if (j.contains("premises")) {
        const json& p = j["premises"];
        if (!p.is_array()) bad("\"premises\" must be an array");
        for (const auto& e : p) ps.push_back(derivation_from_json(e));
    }
    return make_derivation(std::move(c), std::move(a), std::move(ps));
}

KripkeModel kripke_model_from_json(const json& j) {
    KripkeModel m{KripkeFrame(world_list(j))};
    auto idx = [&m](const std::string& w) { return m.frame.index_of(w); };
    const json& rel = field(j, "rel");
    if (!rel.is_array()) bad("\"rel\" must be an array");
    for (const auto& e : rel) {
        auto [a, b] = pair_of(e, idx);
        m.frame.relate(a, b);
    }
    if (j.contains("val")) {
        const json& val = j["val"];
        if (!val.is_object()) bad("\"val\" must be an object");
        for (auto it = val.begin(); it != val.end(); ++it) {
            int w = idx(it.key());
            if (w < 0) bad("valuation mentions unknown world " + it.key());
            for (auto a = it.value().begin(); a != it.value().end(); ++a) {
                const json& v = a.value();
                if (v == 1 || v == true) m.set(w, a.key(), true);
                else if (v == 0 || v == false) m.set(w, a.key(), false);
                else bad("Kripke values are 0 or 1");
            }
        }
    }
    return m;
}

PS4Model ps4_model_from_json(const json& j) {
    PS4Model m(world_list(j));
    auto idx = [&m](const std::string& w) { return m.index_of(w); };
    for (const char* key : {"relR", "relS"}) {
        const json& rel = field(j, key);
        if (!rel.is_array()) bad(std::string("\"") + key + "\" must be an array");
        for (const auto& e : rel) {
            auto [a, b] = pair_of(e, idx);
            (key[3] == 'R' ? m.relR : m.relS)[a][b] = 1;
        }
    }
    if (j.contains("val")) {
        const json& val = j["val"];
        if (!val.is_object()) bad("\"val\" must be an object");
        for (auto it = val.begin(); it != val.end(); ++it) {
            int w = idx(it.key());
            if (w < 0) bad("valuation mentions unknown world " + it.key());
            for (auto a = it.value().begin(); a != it.value().end(); ++a) {
                const json& v = a.value();
                if (v == 1) m.val[w][a.key()] = TV::T;
                else if (v == 0) m.val[w][a.key()] = TV::F;
                else if (v == "*") m.val[w][a.key()] = TV::U;
                else bad("PS4 values are 0, 1 or \"*\"");
            }
        }
    }
    return m;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << "\n";
}

}  // namespace hyperseq
