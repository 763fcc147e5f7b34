// Command-line front end. Exit codes:
//   0   success (proof found, check passed, valid, countermodel found, ...)
//   1   negative answer (unprovable, check failed, invalid, no countermodel)
//   2   unknown: a search limit was hit
//   64  usage or parse error
//   65  malformed input file
//   70  internal self-check failure

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hyperseq/decide.hpp"
#include "hyperseq/goals.hpp"
#include "hyperseq/json_io.hpp"
#include "hyperseq/ps4.hpp"
#include "hyperseq/replicate.hpp"
#include "hyperseq/search.hpp"
#include "hyperseq/transform.hpp"

using namespace hyperseq;

namespace {

constexpr int kUsage = 64;
constexpr int kFormat = 65;
constexpr int kInternal = 70;

struct Exit {
    int code;
};

Hypersequent goal_arg(const std::string& text) {
    try {
        return goal_from_text(text);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        throw Exit{kUsage};
    }
}

DerivPtr load_derivation(const std::string& path) {
    try {
        return derivation_from_json(read_json_file(path));
    } catch (const std::exception& e) {
        std::cerr << path << ": " << e.what() << "\n";
        throw Exit{kFormat};
    }
}

CalculusSpec spec_arg(const std::string& name) {
    try {
        return calculus(name);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        throw Exit{kUsage};
    }
}

void print_tree(const Derivation& d, std::ostream& os, int indent = 0) {
    os << std::string(static_cast<std::size_t>(indent) * 2, ' ') << rule_name(d.app.rule) << "@" << d.app.component;
    if (d.app.principal) os << " {" << d.app.principal->str() << "}";
    os << "  " << to_string(d.conclusion) << "\n";
    for (const auto& p : d.premises) print_tree(*p, os, indent + 1);
}

void emit(const DerivPtr& d, const std::string& out, bool tree) {
    if (!out.empty()) write_json_file(out, to_json(*d));
    if (tree) print_tree(*d, std::cout);
}

json model_json(const KripkeModel& m, const Branch& b) {
    json j = to_json(m);
    json br = json::array();
    for (std::size_t w : b) br.push_back(m.frame.worlds[w]);
    j["branch"] = br;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperseq: relational hypersequent calculi for modal logic"};
    app.require_subcommand(1);

    // parse
    auto* parse = app.add_subcommand("parse", "parse and print a hypersequent or formula");
    std::string parse_text;
    bool parse_formula_only = false, parse_as_json = false;
    parse->add_option("text", parse_text, "hypersequent text or goal name")->required();
    parse->add_flag("--formula", parse_formula_only, "parse a single formula");
    parse->add_flag("--json", parse_as_json, "print JSON");

    // prove
    auto* prove = app.add_subcommand("prove", "cut-free backwards proof search");
    std::string prove_goal, prove_system = "RK", prove_out;
    bool prove_cut = false, prove_tree = false;
    SearchLimits prove_limits;
    prove->add_option("goal", prove_goal, "hypersequent text or goal name (J, J', C, C3)")->required();
    prove->add_option("--system", prove_system, "RK, RD, RT, RKB, RK4, RB, RS4, RS5 or RTB");
    prove->add_flag("--cut", prove_cut, "decide provability with Cut (RK4 and RS4 only)");
    prove->add_option("--out", prove_out, "write the derivation as JSON");
    prove->add_flag("--tree", prove_tree, "print the derivation");
    prove->add_option("--max-components", prove_limits.max_components, "0: goal components + boxes + 1");
    prove->add_option("--max-depth", prove_limits.max_depth, "0: 400");
    prove->add_option("--max-nodes", prove_limits.max_nodes, "0: 3000000 expanded states");

    // check
    auto* check = app.add_subcommand("check", "check a derivation file");
    std::string check_file, check_system = "RK";
    check->add_option("file", check_file, "derivation JSON")->required();
    check->add_option("--system", check_system, "calculus name, with a Cut suffix to allow Cut");

    // countermodel
    auto* cm = app.add_subcommand("countermodel", "look for a countermodel");
    std::string cm_goal, cm_semantics = "kripke", cm_class = "K", cm_model, cm_out;
    int cm_bound = 4;
    cm->add_option("goal", cm_goal, "hypersequent text or goal name")->required();
    cm->add_option("--semantics", cm_semantics, "two-valued Kripke or three-valued PS4")->check(CLI::IsMember({"kripke", "ps4"}));
    cm->add_option("--class", cm_class, "frame class for the bounded search: K D T KB K4 B S4 S5");
    cm->add_option("--bound", cm_bound, "maximum number of worlds");
    cm->add_option("--model", cm_model, "check this model file instead of searching");
    cm->add_option("--out", cm_out, "write the countermodel as JSON");

    // decide
    auto* dec = app.add_subcommand("decide", "decide validity with Cut in RK4 or RS4");
    std::string dec_goal, dec_system = "rk4cut", dec_model, dec_cert;
    int dec_bound = 0;
    DecideLimits dec_limits;
    bool dec_tableau = false;
    dec->add_option("goal", dec_goal, "hypersequent text or goal name")->required();
    dec->add_option("--system", dec_system, "rk4cut or rs4cut");
    dec->add_option("--bound-check", dec_bound, "cross-check against bounded model search with this many worlds");
    dec->add_option("--emit-model", dec_model, "write the countermodel of an invalid goal");
    dec->add_option("--emit-certificate", dec_cert, "write the Cut derivation of a valid goal");
    dec->add_option("--max-nodes", dec_limits.max_nodes, "0: 200000 saturated paths");
    dec->add_option("--max-path", dec_limits.max_path, "0: 64 components on one path");
    dec->add_flag("--tableau", dec_tableau, "print the saturated branch of an invalid goal");

    // translate
    auto* tr = app.add_subcommand("translate", "formula translation I(H) and its proof transformations");
    std::string tr_goal, tr_derivation, tr_back, tr_out, tr_system = "RK4";
    bool tr_trace = false;
    tr->add_option("goal", tr_goal, "hypersequent to translate (the target H with --back)");
    tr->add_flag("--trace", tr_trace, "print the image of each component");
    tr->add_option("--derivation", tr_derivation, "extend a derivation of H to one of => I(H)");
    tr->add_option("--back", tr_back, "turn a derivation of => I(H) into one of H");
    tr->add_option("--system", tr_system, "RK4 or RS4");
    tr->add_option("--out", tr_out, "write the resulting derivation as JSON");

    // merge-eliminate
    auto* me = app.add_subcommand("merge-eliminate", "merge two adjacent end components of an RTB derivation");
    std::string me_file, me_out;
    std::size_t me_index = 0;
    bool me_ec = false;
    me->add_option("file", me_file, "RTB derivation JSON")->required();
    me->add_option("--index", me_index, "merge components index and index+1");
    me->add_flag("--ec", me_ec, "contract the first duplicated pair with one Merge step instead");
    me->add_option("--out", me_out, "write the resulting derivation as JSON");

    // invert
    auto* inv = app.add_subcommand("invert", "invert a main connective in the end hypersequent");
    std::string inv_file, inv_formula, inv_out, inv_system;
    int inv_item = 1;
    std::size_t inv_component = 0;
    inv->add_option("file", inv_file, "cut-free derivation JSON")->required();
    inv->add_option("--item", inv_item, "1: | right, 2: & left, 3: ~ right, 4: [] right of the last component")
        ->check(CLI::Range(1, 4));
    inv->add_option("--component", inv_component, "0-based component of the occurrence")->required();
    inv->add_option("--formula", inv_formula, "the occurrence to invert")->required();
    inv->add_option("--system", inv_system, "check the result in this calculus");
    inv->add_option("--out", inv_out, "write the resulting derivation as JSON");

    // replicate
    auto* rep = app.add_subcommand("replicate", "run every acceptance criterion and print a JSON report");
    ReplicateOptions rep_opts;
    std::string rep_out;
    rep->add_option("--data", rep_opts.data_dir, "directory holding derivations/");
    rep->add_option("--artifacts", rep_opts.artifact_dir, "write evidence files here");
    rep->add_option("--only", rep_opts.only, "criterion numbers");
    rep->add_option("--out", rep_out, "also write the report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*parse) {
            try {
                if (parse_formula_only) {
                    Formula f = parse_formula(parse_text);
                    std::cout << (parse_as_json ? to_json(f).dump() : f.str()) << "\n";
                } else {
                    Hypersequent h = goal_from_text(parse_text);
                    std::cout << (parse_as_json ? to_json(h).dump() : to_string(h)) << "\n";
                }
            } catch (const ParseError& e) {
                std::cerr << "parse error: " << e.what() << "\n";
                return kUsage;
            }
            return 0;
        }

        if (*prove) {
            Hypersequent g = goal_arg(prove_goal);
            CalculusSpec spec = spec_arg(prove_system);
            if (prove_cut || spec.cut) {
                DecideSystem sys;
                try {
                    sys = decide_system_from_string(spec.name);
                } catch (const std::invalid_argument& e) {
                    std::cerr << e.what() << "\n";
                    return kUsage;
                }
                DecideResult r = decide(g, sys);
                if (!r.internal_error.empty()) {
                    std::cerr << "internal: " << r.internal_error << "\n";
                    return kInternal;
                }
                std::cout << to_string(r.verdict) << "\n";
                if (r.certificate) emit(r.certificate, prove_out, prove_tree);
                return r.verdict == Verdict::Valid ? 0 : r.verdict == Verdict::Invalid ? 1 : 2;
            }
            SearchResult r = search(g, spec, prove_limits);
            std::cout << to_string(r.status) << "  nodes=" << r.stats.nodes << " max_components="
                      << r.limits.max_components << " max_depth=" << r.limits.max_depth
                      << " max_nodes=" << r.limits.max_nodes << "\n";
            if (r.proof) emit(r.proof, prove_out, prove_tree);
            return r.status == SearchStatus::Proof ? 0 : r.status == SearchStatus::Unprovable ? 1 : 2;
        }

        if (*check) {
            CalculusSpec spec = spec_arg(check_system);
            DerivPtr d = load_derivation(check_file);
            DerivationCheck c = check_derivation(*d, spec);
            if (c.ok) {
                std::cout << "ok  " << spec.display() << "  " << derivation_size(*d) << " nodes  "
                          << to_string(d->conclusion) << "\n";
                return 0;
            }
            std::cout << "invalid in " << spec.display() << ": " << c.reason << "\n  at premise path";
            for (std::size_t i : c.path) std::cout << " " << i;
            std::cout << "\n";
            return 1;
        }

        if (*cm) {
            Hypersequent g = goal_arg(cm_goal);
            if (cm_semantics == "ps4") {
                PS4Model m;
                try {
                    m = cm_model.empty() ? builtin_fig5_model() : ps4_model_from_json(read_json_file(cm_model));
                } catch (const std::exception& e) {
                    std::cerr << cm_model << ": " << e.what() << "\n";
                    return kFormat;
                }
                FrameCheck fc = check_ps4_frame(m);
                if (!fc.ok) std::cerr << "warning: not a PS4 frame (" << fc.condition << ")\n";
                auto b = ps4_countermodel(m, g);
                if (!b) {
                    std::cout << "no countermodel branch\n";
                    return 1;
                }
                std::cout << "countermodel branch (";
                for (std::size_t k = 0; k < b->size(); ++k) std::cout << (k ? "," : "") << m.worlds[(*b)[k]];
                std::cout << ")\n";
                return 0;
            }
            if (!cm_model.empty()) {
                KripkeModel m;
                try {
                    m = kripke_model_from_json(read_json_file(cm_model));
                } catch (const std::exception& e) {
                    std::cerr << cm_model << ": " << e.what() << "\n";
                    return kFormat;
                }
                auto b = countermodels_hypersequent(m, g);
                if (!b) {
                    std::cout << "no countermodel branch\n";
                    return 1;
                }
                std::cout << model_json(m, *b).dump() << "\n";
                return 0;
            }
            FrameClass fc;
            try {
                fc = frame_class_from_string(cm_class);
            } catch (const std::exception& e) {
                std::cerr << e.what() << "\n";
                return kUsage;
            }
            BoundedResult r = bounded_validity(g, fc, cm_bound);
            if (!r.countermodel_found) {
                std::cout << "no " << to_string(fc) << " countermodel with at most " << cm_bound << " worlds ("
                          << r.frames_checked << " frames)\n";
                return 1;
            }
            json j = model_json(r.model, r.branch);
            if (!cm_out.empty()) write_json_file(cm_out, j);
            std::cout << j.dump() << "\n";
            return 0;
        }

        if (*dec) {
            Hypersequent g = goal_arg(dec_goal);
            DecideSystem sys;
            try {
                sys = decide_system_from_string(dec_system);
            } catch (const std::invalid_argument& e) {
                std::cerr << e.what() << "\n";
                return kUsage;
            }
            DecideResult r = decide(g, sys, dec_limits);
            if (!r.internal_error.empty()) {
                std::cerr << "internal: " << r.internal_error << "\n";
                return kInternal;
            }
            std::cout << to_string(r.verdict) << "  " << to_string(sys) << "  paths=" << r.stats.paths
                      << " cuts=" << r.stats.cuts << " blocked=" << r.stats.blocked << "\n";
            if (r.certificate) {
                std::cout << "certificate: " << derivation_size(*r.certificate) << " nodes\n";
                if (!dec_cert.empty()) write_json_file(dec_cert, to_json(*r.certificate));
            }
            if (r.model) {
                std::cout << "countermodel: " << r.model->model.size() << (r.model->model.size() == 1 ? " world\n" : " worlds\n");
                if (dec_tableau) std::cout << to_string(r.open->branch_hypersequent()) << "\n";
                if (!dec_model.empty()) write_json_file(dec_model, model_json(r.model->model, r.model->branch));
            }
            if (dec_bound > 0) {
                BoundedResult b = bounded_validity(g, frame_class_of(sys), dec_bound);
                bool agree = r.verdict == Verdict::Unknown || (r.verdict == Verdict::Valid) == !b.countermodel_found;
                std::cout << "bound " << dec_bound << ": "
                          << (b.countermodel_found ? "countermodel found" : "no countermodel") << ", "
                          << (agree ? "agrees" : "DISAGREES") << "\n";
                if (!agree) return kInternal;
            }
            return r.verdict == Verdict::Valid ? 0 : r.verdict == Verdict::Invalid ? 1 : 2;
        }

        if (*tr) {
            if (!tr_derivation.empty() || !tr_back.empty()) {
                CalculusSpec spec = spec_arg(tr_system);
                DerivPtr out;
                try {
                    if (!tr_derivation.empty()) {
                        out = proof_of_translation(load_derivation(tr_derivation));
                    } else {
                        if (tr_goal.empty()) {
                            std::cerr << "--back needs the target hypersequent\n";
                            return kUsage;
                        }
                        out = proof_from_translation(load_derivation(tr_back), goal_arg(tr_goal), spec);
                    }
                } catch (const TransformError& e) {
                    std::cerr << e.what() << "\n";
                    return 1;
                }
                DerivationCheck c = check_derivation(*out, spec);
                std::cout << to_string(out->conclusion) << "  " << derivation_size(*out) << " nodes, "
                          << (c.ok ? "checks" : "does not check: " + c.reason) << " in " << spec.display() << "\n";
                if (!tr_out.empty()) write_json_file(tr_out, to_json(*out));
                return c.ok ? 0 : kInternal;
            }
            if (tr_goal.empty()) {
                std::cerr << "nothing to translate\n";
                return kUsage;
            }
            try {
                TranslationResult t = translate(goal_arg(tr_goal));
                std::cout << t.formula.str() << "\n";
                if (tr_trace)
                    for (const auto& line : t.trace) std::cout << "  " << line << "\n";
            } catch (const TransformError& e) {
                // a hypersequent without an image is bad input
                std::cerr << e.what() << "\n";
                return kUsage;
            }
            return 0;
        }

        if (*me) {
            DerivPtr d = load_derivation(me_file);
            DerivPtr out;
            try {
                out = me_ec ? ec_from_merge(d) : eliminate_merge(d, me_index);
            } catch (const TransformError& e) {
                std::cerr << e.what() << "\n";
                return 1;
            }
            CalculusSpec rtb = calculus("RTB");
            if (me_ec) rtb.extra.insert(Rule::Merge);
            DerivationCheck c = check_derivation(*out, rtb);
            std::cout << to_string(out->conclusion) << "  " << derivation_size(*out) << " nodes, "
                      << (c.ok ? "checks" : "does not check: " + c.reason) << "\n";
            if (!me_out.empty()) write_json_file(me_out, to_json(*out));
            return c.ok ? 0 : 1;
        }

        if (*inv) {
            DerivPtr d = load_derivation(inv_file);
            Formula f;
            try {
                f = parse_formula(inv_formula);
            } catch (const ParseError& e) {
                std::cerr << "parse error: " << e.what() << "\n";
                return kUsage;
            }
            DerivPtr out;
            try {
                out = invert(d, inv_item, inv_component, f);
            } catch (const TransformError& e) {
                std::cerr << e.what() << "\n";
                return 1;
            }
            std::cout << to_string(out->conclusion) << "  " << derivation_size(*out) << " nodes";
            if (!inv_system.empty()) {
                DerivationCheck c = check_derivation(*out, spec_arg(inv_system));
                std::cout << ", " << (c.ok ? "checks" : "does not check: " + c.reason);
                if (!c.ok) {
                    std::cout << "\n";
                    return 1;
                }
            }
            std::cout << "\n";
            if (!inv_out.empty()) write_json_file(inv_out, to_json(*out));
            return 0;
        }

        if (*rep) {
            ReplicationReport report = replicate(rep_opts);
            for (const auto& e : report.entries) std::cerr << summary_line(e) << "\n";
            json j = report.to_json();
            std::cout << j.dump(1) << "\n";
            if (!rep_out.empty()) write_json_file(rep_out, j);
            return report.all_pass() ? 0 : 1;
        }
    } catch (const Exit& e) {
        return e.code;
    }
    return kUsage;
}
