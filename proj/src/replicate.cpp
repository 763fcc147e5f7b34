#include "hyperseq/replicate.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <unordered_map>

#include "hyperseq/decide.hpp"
#include "hyperseq/goals.hpp"
#include "hyperseq/kripke.hpp"
#include "hyperseq/ps4.hpp"
#include "hyperseq/random.hpp"
#include "hyperseq/search.hpp"
#include "hyperseq/transform.hpp"

#ifndef HYPERSEQ_DATA_DIR
#define HYPERSEQ_DATA_DIR "data"
#endif

namespace hyperseq {

namespace {

// Thresholds. Budgets are wall-clock seconds on one core.
constexpr double kBudgetGolden = 1;
constexpr double kBudgetJSearch = 30;
constexpr std::size_t kMergeCorpus = 200;
constexpr std::size_t kFuzzDepth = 6;
constexpr int kPs4DepthHigh = 4;
constexpr double kBudgetFig5 = 5;
constexpr std::size_t kSoundnessDerivations = 500;  // per system
constexpr int kSoundnessModelsEach = 8;
constexpr int kSoundnessMaxPoints = 5;
constexpr double kBudgetIncompleteness = 180;
constexpr int kKripkeBound = 5;
constexpr std::size_t kPs4Models = 1000;
constexpr std::size_t kBranchLength = 4;
constexpr std::size_t kOracleCorpus = 200;
constexpr int kOracleBound = 4;
constexpr std::size_t kTranslationCorpus = 100;
constexpr int kTranslationWorlds = 4;
constexpr std::uint64_t kTranslationSearchNodes = 2'000;
constexpr std::size_t kTranslationMinProofs = 40;  // keeps the roundtrip part non-vacuous
constexpr double kBudgetCutFailure = 60;
constexpr double kBudgetTotal = 600;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Context {
    ReplicateOptions opts;
    std::string data_dir;
    std::vector<CriterionResult> done;

    const CriterionResult* find(int n) const {
        for (const auto& r : done)
            if (r.number == n) return &r;
        return nullptr;
    }

    std::string artifact(const std::string& name, const json& j) const {
        if (opts.artifact_dir.empty()) return "";
        std::filesystem::create_directories(opts.artifact_dir);
        std::string path = (std::filesystem::path(opts.artifact_dir) / name).string();
        write_json_file(path, j);
        return path;
    }
};

std::string names_of(const PS4Model& m, const Branch& b) {
    std::string out = "(";
    for (std::size_t k = 0; k < b.size(); ++k) out += (k ? "," : "") + m.worlds[b[k]];
    return out + ")";
}

// ---------------------------------------------------------------------------

void golden(Context& cx, CriterionResult& r) {
    std::string path = (std::filesystem::path(cx.data_dir) / "derivations" / "ij_rkb.json").string();
    r.evidence = path;
    DerivPtr d;
    try {
        d = derivation_from_json(read_json_file(path));
    } catch (const std::exception& e) {
        r.detail = std::string("cannot load: ") + e.what();
        return;
    }
    Hypersequent want{{Sequent{{}, {translate(*named_goal("J")).formula}}}};
    DerivationCheck rkb = check_derivation(*d, calculus("RKB"));
    DerivationCheck rk = check_derivation(*d, calculus("RK"));
    bool end_ok = d->conclusion == want;
    bool rk_at_sym = !rk.ok && rk.reason.rfind("Sym", 0) == 0;
    r.data = {{"nodes", derivation_size(*d)},    {"rkb_ok", rkb.ok},
              {"ends_in_I(J)", end_ok},          {"rk_rejects_at_sym", rk_at_sym},
              {"rk_reason", rk.reason},          {"uses_cut", uses_rule(*d, Rule::Cut)}};
    r.pass = rkb.ok && end_ok && rk_at_sym && !uses_rule(*d, Rule::Cut);
    r.detail = std::to_string(derivation_size(*d)) + "-node derivation of " + to_string(want) +
               (rkb.ok ? " checks in RKB" : " fails in RKB: " + rkb.reason) +
               (rk_at_sym ? "; RK rejects it at the first Sym" : "; RK did not reject it at Sym");
}

void j_unprovable(Context& cx, CriterionResult& r) {
    Hypersequent j = *named_goal("J");
    json runs = json::object();
    bool ok = true;
    std::string detail;
    for (const char* sys : {"RTB", "RKB"}) {
        SearchResult s = search(j, calculus(sys));
        ok = ok && s.status == SearchStatus::Unprovable;
        runs[sys] = {{"status", to_string(s.status)},
                     {"nodes", s.stats.nodes},
                     {"cycles", s.stats.cycles},
                     {"memo_hits", s.stats.memo_hits},
                     {"limits",
                      {{"max_components", s.limits.max_components},
                       {"max_depth", s.limits.max_depth},
                       {"max_nodes", s.limits.max_nodes}}}};
        detail += std::string(detail.empty() ? "" : ", ") + sys + ": " + to_string(s.status);
    }
    r.data = runs;
    r.pass = ok;
    r.detail = detail + "; RB follows since RB proofs become RTB proofs (criterion 3)";
    r.evidence = cx.artifact("j_search.json", runs);
    if (r.evidence.empty()) r.evidence = "search statistics in data";
}

void merge_corpus(Context&, CriterionResult& r) {
    CalculusSpec rtb = calculus("RTB");
    CalculusSpec with_merge{"RTB+Merge", {Rule::T, Rule::Sym, Rule::Merge}, false};
    std::vector<DerivPtr> corpus;
    for (std::uint64_t seed = 1; corpus.size() < kMergeCorpus && seed < 50; ++seed) {
        FuzzOptions o;
        o.count = 200;
        o.max_depth = kFuzzDepth;
        o.seed = seed;
        for (const auto& d : fuzz_derivations(rtb, o))
            if (d->conclusion.size() >= 2 && corpus.size() < kMergeCorpus) corpus.push_back(d);
    }
    std::size_t merges = 0, merge_ok = 0, ec_ok = 0, ec_cases = 0;
    std::string first_failure;
    auto note = [&](const std::string& s) {
        if (first_failure.empty()) first_failure = s;
    };
    for (const auto& d : corpus) {
        const Hypersequent& h = d->conclusion;
        for (std::size_t k = 0; k + 1 < h.size(); ++k) {
            ++merges;
            Hypersequent want = h;
            want[k] = h[k].united(h[k + 1]);
            want.comps.erase(want.comps.begin() + static_cast<long>(k) + 1);
            try {
                DerivPtr m = eliminate_merge(d, k);
                auto c = check_derivation(*m, rtb);
                if (c.ok && m->conclusion == want && !uses_rule(*m, Rule::Merge))
                    ++merge_ok;
                else
                    note(to_string(h) + " at " + std::to_string(k) + ": " + c.reason);
            } catch (const std::exception& e) {
                note(to_string(h) + " at " + std::to_string(k) + ": " + e.what());
            }
        }
        // Duplicated case: weaken components 0 and 1 to their union, then
        // contract with Merge and, independently, eliminate that Merge.
        ++ec_cases;
        Hypersequent dup = h;
        dup[0] = dup[1] = h[0].united(h[1]);
        DerivPtr wd = weaken_to(d, dup);
        try {
            DerivPtr ec = ec_from_merge(wd);
            DerivPtr el = eliminate_merge(wd, 0);
            Hypersequent contracted = dup;
            contracted.comps.erase(contracted.comps.begin() + 1);
            bool ok = check_derivation(*ec, with_merge).ok && ec->app.rule == Rule::Merge &&
                      ec->conclusion == contracted && check_derivation(*el, rtb).ok &&
                      el->conclusion == contracted;
            if (ok)
                ++ec_ok;
            else
                note("duplicate of " + to_string(h));
        } catch (const std::exception& e) {
            note("duplicate of " + to_string(h) + ": " + e.what());
        }
    }
    r.data = {{"derivations", corpus.size()}, {"merges", merges},     {"merges_ok", merge_ok},
              {"ec_cases", ec_cases},         {"ec_ok", ec_ok},       {"max_depth", kFuzzDepth}};
    r.pass = corpus.size() >= kMergeCorpus && merge_ok == merges && ec_ok == ec_cases;
    r.detail = std::to_string(corpus.size()) + " RTB derivations, " + std::to_string(merge_ok) + "/" +
               std::to_string(merges) + " merges valid, " + std::to_string(ec_ok) + "/" +
               std::to_string(ec_cases) + " Merge contractions valid" +
               (first_failure.empty() ? "" : "; first failure: " + first_failure);
    r.evidence = "fuzzed corpus, seeds 1.., regenerated on each run";
}

void fig5(Context& cx, CriterionResult& r) {
    PS4Model m = builtin_fig5_model();
    FrameCheck fc = check_ps4_frame(m);
    PreservationCheck p0 = check_s_preservation(m, 0);
    PreservationCheck p4 = check_s_preservation(m, kPs4DepthHigh);
    auto bc = ps4_countermodel(m, *named_goal("C"));
    auto b3 = ps4_countermodel(m, *named_goal("C3"));
    std::string sc = bc ? names_of(m, *bc) : "none";
    std::string s3 = b3 ? names_of(m, *b3) : "none";
    r.data = {{"frame_ok", fc.ok},          {"preservation_depth0", p0.ok}, {"preservation_depth4", p4.ok},
              {"branch_C", sc},             {"branch_C3", s3}};
    r.pass = fc.ok && p0.ok && p4.ok && sc == "(i)" && s3 == "(i,j,k)";
    r.detail = std::string("frame ") + (fc.ok ? "ok" : "violates " + fc.condition) + ", S-preservation depth 0 " +
               (p0.ok ? "ok" : "fails") + ", depth 4 " + (p4.ok ? "ok" : "fails") + ", countermodel branch for C " +
               sc + ", for C3 " + s3;
    r.evidence = cx.artifact("fig5_model.json", to_json(m));
    if (r.evidence.empty()) r.evidence = "builtin model";
}

void ps4_soundness(Context&, CriterionResult& r) {
    std::mt19937_64 rng(2024);
    std::size_t derivations = 0, checks = 0, counter = 0, invalid = 0;
    std::string first;
    for (const char* sys : {"RK4", "RS4"}) {
        CalculusSpec spec = calculus(sys);
        FuzzOptions o;
        o.count = kSoundnessDerivations;
        o.max_depth = kFuzzDepth;
        o.seed = 11;
        for (const auto& d : fuzz_derivations(spec, o)) {
            ++derivations;
            if (!check_derivation(*d, spec).ok) ++invalid;
            std::vector<std::string> atoms = derivation_atoms(*d);
            for (int k = 0; k < kSoundnessModelsEach; ++k) {
                PS4Model m = random_ps4_model(rng, kSoundnessMaxPoints, atoms);
                ++checks;
                if (ps4_countermodel(m, d->conclusion)) {
                    ++counter;
                    if (first.empty()) first = std::string(sys) + ": " + to_string(d->conclusion);
                }
            }
        }
    }
    // Control: the same generator must refute some random hypersequents, or
    // the zero above says nothing.
    std::size_t control = 0;
    for (int k = 0; k < 200; ++k) {
        Hypersequent h = random_hypersequent(rng, {"p", "q"}, 2, 2, 2);
        if (ps4_countermodel(random_ps4_model(rng, kSoundnessMaxPoints, {"p", "q"}), h)) ++control;
    }
    r.data = {{"derivations", derivations}, {"model_checks", checks}, {"countermodels", counter},
              {"invalid_derivations", invalid}, {"control_refuted_of_200", control}};
    r.pass = derivations == 2 * kSoundnessDerivations && counter == 0 && invalid == 0 && control > 0;
    r.detail = std::to_string(derivations) + " RK4/RS4 derivations x " + std::to_string(kSoundnessModelsEach) +
               " PS4 models: " + std::to_string(counter) + " countermodels" + (first.empty() ? "" : ", e.g. " + first);
    r.evidence = "fuzzed derivations (seed 11) and generated models (seed 2024)";
}

void incompleteness(Context& cx, CriterionResult& r) {
    Hypersequent c = *named_goal("C");
    json runs = json::object();
    bool ok = true;
    std::string detail;
    std::vector<std::string> files;
    for (DecideSystem sys : {DecideSystem::RS4Cut, DecideSystem::RK4Cut}) {
        DecideResult d = decide(c, sys);
        ok = ok && d.verdict == Verdict::Valid;
        runs[to_string(sys)] = {{"verdict", to_string(d.verdict)},
                                {"certificate_nodes", d.certificate ? derivation_size(*d.certificate) : 0},
                                {"cuts", d.stats.cuts},
                                {"internal_error", d.internal_error}};
        detail += std::string(detail.empty() ? "" : ", ") + "decide " + to_string(sys) + " " + to_string(d.verdict);
        if (d.certificate) {
            std::string f = cx.artifact("C_" + to_string(sys) + ".json", to_json(*d.certificate));
            if (!f.empty()) files.push_back(f);
        }
    }
    for (FrameClass fc : {FrameClass::S4, FrameClass::K4}) {
        BoundedResult b = bounded_validity(c, fc, kKripkeBound, cx.opts.jobs);
        ok = ok && !b.countermodel_found;
        runs["bounded_" + to_string(fc)] = {{"countermodel", b.countermodel_found}, {"frames", b.frames_checked},
                                            {"models", b.models_checked}};
        detail += ", " + to_string(fc) + " bound " + std::to_string(kKripkeBound) +
                  (b.countermodel_found ? ": countermodel" : ": none");
    }
    // The verdict leans on criteria 4 and 5; run them here when they were not
    // part of this run.
    auto prior_pass = [&](int n, void (*run)(Context&, CriterionResult&)) {
        if (const CriterionResult* p = cx.find(n)) return p->pass;
        CriterionResult tmp;
        run(cx, tmp);
        return tmp.pass;
    };
    bool prior = prior_pass(4, fig5) && prior_pass(5, ps4_soundness);
    runs["criteria_4_and_5"] = prior;
    r.data = runs;
    r.pass = ok && prior;
    r.detail = detail + (prior ? "; with the PS4 countermodel and PS4 soundness, C has no cut-free proof"
                               : "; criteria 4 and 5 did not both pass");
    std::string ev;
    for (const auto& f : files) ev += (ev.empty() ? "" : ", ") + f;
    r.evidence = ev.empty() ? "checked Cut certificates (not written)" : ev;
}

void j_bounded(Context& cx, CriterionResult& r) {
    Hypersequent j = *named_goal("J");
    json runs = json::object();
    bool ok = true;
    std::string detail;
    for (FrameClass fc : {FrameClass::KB, FrameClass::B}) {
        BoundedResult b = bounded_validity(j, fc, kKripkeBound, cx.opts.jobs);
        ok = ok && !b.countermodel_found;
        runs[to_string(fc)] = {{"countermodel", b.countermodel_found}, {"frames", b.frames_checked},
                               {"models", b.models_checked}};
        detail += std::string(detail.empty() ? "" : ", ") + to_string(fc) + ": " +
                  (b.countermodel_found ? "countermodel" : "none") + " in " + std::to_string(b.frames_checked) +
                  " frames";
    }
    r.data = runs;
    r.pass = ok;
    r.detail = detail + " (bound " + std::to_string(kKripkeBound) + "; bounded evidence, not full validity)";
    r.evidence = "exhaustive enumeration up to isomorphism";
}

// All R-sequences of the given length, by index.
void each_r_sequence(const PS4Model& m, std::size_t len, const std::function<void(const Branch&)>& f) {
    Branch b;
    std::function<void()> rec = [&] {
        if (b.size() == len) {
            f(b);
            return;
        }
        for (std::size_t w = 0; w < m.size(); ++w) {
            if (!b.empty() && !m.relR[b.back()][w]) continue;
            b.push_back(w);
            rec();
            b.pop_back();
        }
    };
    rec();
}

void preservation(Context&, CriterionResult& r) {
    std::mt19937_64 rng(7);
    std::size_t frame_bad = 0, info_bad = 0, copies = 0, copy_bad = 0;
    std::string first;
    for (std::size_t k = 0; k < kPs4Models; ++k) {
        PS4Model m = random_ps4_model(rng, kSoundnessMaxPoints, {"p", "q"});
        if (!check_ps4_frame(m).ok) ++frame_bad;
        PreservationCheck pc = check_s_preservation(m, kPs4DepthHigh);
        if (!pc.ok) {
            ++info_bad;
            if (first.empty()) first = "preservation fails on " + m.worlds[pc.x] + "S" + m.worlds[pc.y];
        }
        for (std::size_t len = 3; len <= kBranchLength; ++len) {
            each_r_sequence(m, len, [&](const Branch& b) {
                for (std::size_t i = 2; i < len; ++i) {
                    ++copies;
                    try {
                        Branch c = copy_branch(m, b, i);
                        bool ok = c.size() == len - 1;
                        for (std::size_t t = 0; ok && t + 1 < i; ++t) ok = c[t] == b[t];
                        for (std::size_t t = 1; ok && t < c.size(); ++t) ok = m.relR[c[t - 1]][c[t]];
                        for (std::size_t t = i; ok && t < len; ++t) ok = m.relS[b[t]][c[t - 1]];
                        if (!ok) ++copy_bad;
                    } catch (const std::exception&) {
                        ++copy_bad;
                    }
                }
            });
        }
    }
    r.data = {{"models", kPs4Models},  {"frame_violations", frame_bad}, {"preservation_violations", info_bad},
              {"copies", copies},      {"copy_failures", copy_bad},    {"formula_depth", kPs4DepthHigh},
              {"branch_length", kBranchLength}};
    r.pass = frame_bad == 0 && info_bad == 0 && copy_bad == 0;
    r.detail = std::to_string(kPs4Models) + " models: " + std::to_string(info_bad) +
               " preservation violations at depth 4, " + std::to_string(copy_bad) + "/" + std::to_string(copies) +
               " branch copies failed" + (first.empty() ? "" : "; " + first);
    r.evidence = "generated models (seed 7)";
}

void oracle(Context& cx, CriterionResult& r) {
    std::mt19937_64 rng(99);
    std::size_t agree = 0, disagree = 0, unknown = 0, internal = 0, valid = 0, invalid = 0;
    std::string first;
    for (std::size_t k = 0; k < kOracleCorpus; ++k) {
        Hypersequent h = random_hypersequent(rng, {"p", "q"}, 2, 2, 3);
        for (DecideSystem sys : {DecideSystem::RK4Cut, DecideSystem::RS4Cut}) {
            DecideResult d = decide(h, sys);
            BoundedResult b = bounded_validity(h, frame_class_of(sys), kOracleBound, cx.opts.jobs);
            if (!d.internal_error.empty()) ++internal;
            if (d.verdict == Verdict::Unknown) {
                ++unknown;
                continue;
            }
            bool dv = d.verdict == Verdict::Valid;
            (dv ? valid : invalid)++;
            // A valid verdict must survive the bounded search, and a bounded
            // countermodel must be matched by an invalid verdict.
            if (dv == !b.countermodel_found) {
                ++agree;
            } else {
                ++disagree;
                if (first.empty()) first = to_string(sys) + " " + to_string(h);
            }
        }
    }
    r.data = {{"items", kOracleCorpus}, {"agree", agree},   {"disagree", disagree}, {"unknown", unknown},
              {"self_check_failures", internal}, {"valid", valid}, {"invalid", invalid}, {"bound", kOracleBound}};
    r.pass = disagree == 0 && unknown == 0 && internal == 0;
    r.detail = std::to_string(agree) + "/" + std::to_string(2 * kOracleCorpus) + " verdicts agree with bound " +
               std::to_string(kOracleBound) + " (" + std::to_string(valid) + " valid, " + std::to_string(invalid) +
               " invalid with checked models), " + std::to_string(internal) + " self-check failures" +
               (first.empty() ? "" : "; first disagreement " + first);
    r.evidence = "corpus seed 99";
}

// Bit-parallel Kripke evaluator over at most 32 worlds, written independently
// of kripke.cpp so that the two can check each other.
class BitEval {
public:
    explicit BitEval(const std::vector<Formula>& roots) {
        for (Formula f : roots) add(f);
    }
    std::size_t index(Formula f) const { return pos_.at(f); }
    std::size_t size() const { return order_.size(); }

    void run(const std::vector<std::uint32_t>& succ, std::uint32_t full,
             const std::unordered_map<std::string, std::uint32_t>& atoms, std::vector<std::uint32_t>& v) const {
        v.assign(order_.size(), 0);
        for (std::size_t i = 0; i < order_.size(); ++i) {
            Formula f = order_[i];
            switch (f.op()) {
                case Op::Atom: v[i] = atoms.at(f.name()); break;
                case Op::Neg: v[i] = full & ~v[pos_.at(f.sub())]; break;
                case Op::And: v[i] = v[pos_.at(f.left())] & v[pos_.at(f.right())]; break;
                case Op::Or: v[i] = v[pos_.at(f.left())] | v[pos_.at(f.right())]; break;
                case Op::Box: {
                    std::uint32_t s = v[pos_.at(f.sub())], out = 0;
                    for (std::size_t w = 0; w < succ.size(); ++w)
                        if ((succ[w] & ~s) == 0) out |= 1u << w;
                    v[i] = out;
                    break;
                }
            }
        }
    }

private:
    void add(Formula f) {
        if (pos_.count(f)) return;
        if (f.op() == Op::Neg || f.op() == Op::Box) add(f.sub());
        if (f.op() == Op::And || f.op() == Op::Or) {
            add(f.left());
            add(f.right());
        }
        pos_[f] = order_.size();
        order_.push_back(f);
    }
    std::vector<Formula> order_;
    std::unordered_map<Formula, std::size_t, FormulaHash> pos_;
};

void translation(Context&, CriterionResult& r) {
    std::mt19937_64 rng(31);
    std::vector<Hypersequent> corpus;
    while (corpus.size() < kTranslationCorpus) {
        Hypersequent h = random_hypersequent(rng, {"p", "q"}, 3, 2, 3);
        if (!h[h.size() - 1].empty()) corpus.push_back(h);
    }
    // Part 1: both directions on every proof the search finds.
    std::size_t proofs = 0, roundtrips = 0;
    std::string first;
    for (const char* sys : {"RK4", "RS4"}) {
        CalculusSpec spec = calculus(sys);
        SearchLimits lim;
        lim.max_nodes = kTranslationSearchNodes;
        for (const auto& h : corpus) {
            SearchResult s = search(h, spec, lim);
            if (!s.proof) continue;
            ++proofs;
            try {
                DerivPtr t = proof_of_translation(s.proof);
                DerivPtr b = proof_from_translation(t, h, spec);
                if (check_derivation(*t, spec).ok && check_derivation(*b, spec).ok && b->conclusion == h &&
                    t->conclusion == Hypersequent{{Sequent{{}, {translate(h).formula}}}})
                    ++roundtrips;
                else if (first.empty())
                    first = std::string(sys) + " " + to_string(h);
            } catch (const std::exception& e) {
                if (first.empty()) first = std::string(sys) + " " + to_string(h) + ": " + e.what();
            }
        }
    }
    // Part 2: world-wise, I(h) is false at w iff a refuting branch starts at w.
    std::vector<Formula> roots;
    std::vector<Formula> images;
    for (const auto& h : corpus) {
        images.push_back(translate(h).formula);
        roots.push_back(images.back());
        for (Formula f : formulas_of(h)) roots.push_back(f);
    }
    BitEval ev(roots);
    std::uint64_t models = 0, mismatches = 0;
    std::vector<std::uint32_t> v;
    for (int n = 1; n <= kTranslationWorlds; ++n) {
        std::uint32_t full = (1u << n) - 1;
        for (const auto& succ : canonical_frames(FrameClass::K, n)) {
            for (std::uint32_t vp = 0; vp <= full; ++vp) {
                for (std::uint32_t vq = 0; vq <= full; ++vq) {
                    ++models;
                    ev.run(succ, full, {{"p", vp}, {"q", vq}}, v);
                    for (std::size_t k = 0; k < corpus.size(); ++k) {
                        const Hypersequent& h = corpus[k];
                        std::uint32_t reach = full;
                        for (std::size_t c = h.size(); c-- > 0;) {
                            std::uint32_t refute = full;
                            for (Formula f : h[c].left) refute &= v[ev.index(f)];
                            for (Formula f : h[c].right) refute &= ~v[ev.index(f)];
                            if (c + 1 < h.size()) {
                                std::uint32_t pre = 0;
                                for (int w = 0; w < n; ++w)
                                    if (succ[static_cast<std::size_t>(w)] & reach) pre |= 1u << w;
                                refute &= pre;
                            }
                            reach = refute;
                        }
                        if (reach != (full & ~v[ev.index(images[k])])) ++mismatches;
                    }
                }
            }
        }
    }
    r.data = {{"corpus", corpus.size()},   {"proofs", proofs},     {"roundtrips", roundtrips},
              {"models", models},          {"mismatches", mismatches}, {"max_worlds", kTranslationWorlds},
              {"search_max_nodes", kTranslationSearchNodes}};
    r.pass = proofs >= kTranslationMinProofs && roundtrips == proofs && mismatches == 0;
    r.detail = std::to_string(roundtrips) + "/" + std::to_string(proofs) + " RK4/RS4 proofs translate both ways; " +
               std::to_string(mismatches) + " semantic mismatches over " + std::to_string(models) +
               " models up to " + std::to_string(kTranslationWorlds) + " worlds" +
               (first.empty() ? "" : "; first failure " + first);
    r.evidence = "corpus seed 31";
}

void cut_failure(Context& cx, CriterionResult& r) {
    const std::string phi = "~[][]p", psi = "~[][]q";
    std::vector<std::pair<std::string, std::string>> goals = {
        {"J'", "J'"},
        {"distribution", "[]" + phi + " & []" + psi + " => [](" + phi + " & " + psi + ")"},
        {"converse", "[](" + phi + " & " + psi + ") => []" + phi + " & []" + psi},
    };
    CalculusSpec rkb = calculus("RKB");
    json runs = json::object();
    bool ok = true;
    std::string detail;
    for (const auto& [name, text] : goals) {
        Hypersequent g = goal_from_text(text);
        SearchResult s = search(g, rkb);
        bool good = s.proof && check_derivation(*s.proof, rkb).ok && !uses_rule(*s.proof, Rule::Cut);
        ok = ok && good;
        runs[name] = {{"goal", to_string(g)}, {"status", to_string(s.status)},
                      {"proof_nodes", s.proof ? derivation_size(*s.proof) : 0}};
        if (s.proof) cx.artifact("rkb_" + name + ".json", to_json(*s.proof));
        detail += std::string(detail.empty() ? "" : ", ") + name + " " + (good ? "proved" : to_string(s.status));
    }
    SearchResult j = search(*named_goal("J"), rkb);
    ok = ok && j.status == SearchStatus::Unprovable;
    runs["J"] = {{"status", to_string(j.status)}};
    r.data = runs;
    r.pass = ok;
    r.detail = detail + ", J " + to_string(j.status);
    r.evidence = cx.opts.artifact_dir.empty() ? "cut-free RKB proofs (not written)" : cx.opts.artifact_dir;
}

struct Entry {
    int number;
    const char* id;
    const char* claim;
    const char* locus;
    double budget;
    bool bounded;
    void (*run)(Context&, CriterionResult&);
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> t = {
        {1, "IJ-golden-derivation", "the shipped proof of => I(J) checks in cut-free RKB",
         "provability of I(J) in RKB", kBudgetGolden, false, golden},
        {2, "J-unprovable-RTB-RKB", "search exhausts J in RTB and RKB",
         "J is unprovable in RTB, RKB and hence RB", kBudgetJSearch, false, j_unprovable},
        {3, "RTB-merge-admissibility", "Merge elimination and EC from Merge on fuzzed RTB derivations",
         "Merge is admissible in RTB; EC is derivable from Merge", 120, false, merge_corpus},
        {4, "PS4-countermodel", "the six-point PS4 model refutes C and its hypersequent form",
         "C has a PS4 countermodel", kBudgetFig5, false, fig5},
        {5, "PS4-soundness", "no PS4 countermodel to any fuzzed cut-free RK4/RS4 end hypersequent",
         "cut-free RK4 and RS4 are sound for PS4 models", 120, false, ps4_soundness},
        {6, "RS4-cut-free-incompleteness", "C is valid in K4 and S4 yet has no cut-free proof",
         "RS4 and RK4 are cut-free incomplete", kBudgetIncompleteness, false, incompleteness},
        {7, "J-validity-KB-B", "no KB or B countermodel to J up to five worlds",
         "J is valid on symmetric frames", 120, true, j_bounded},
        {8, "PS4-preservation", "S preserves defined values and R-branches can be copied",
         "information preservation and branch copying in PS4 models", 120, false, preservation},
        {9, "decide-oracle-equivalence", "decide agrees with bounded model search",
         "RK4 and RS4 with Cut are complete", 120, false, oracle},
        {10, "translation-equivalence", "H and => I(H) are interderivable and equivalent",
         "H is provable iff => I(H) is, in RK4 and RS4", 180, false, translation},
        {11, "concrete-cut-failure", "J', the box distribution laws are cut-free provable in RKB while J is not",
         "Cut is not admissible in RKB", kBudgetCutFailure, false, cut_failure},
    };
    return t;
}

}  // namespace

std::string default_data_dir() { return HYPERSEQ_DATA_DIR; }

bool ReplicationReport::all_pass() const {
    return !entries.empty() && std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

json ReplicationReport::to_json() const {
    json out;
    out["all_pass"] = all_pass();
    out["total_seconds"] = seconds;
    out["total_budget_seconds"] = kBudgetTotal;
    out["search_limits"] = {
        {"systems", system_names()},
        {"max_components", "goal components + number of boxes in the goal + 1"},
        {"max_depth", default_limits(Hypersequent{{Sequent{}}}).max_depth},
        {"max_nodes", default_limits(Hypersequent{{Sequent{}}}).max_nodes},
    };
    out["decide_limits"] = {{"max_paths", 200000}, {"max_path_length", 64}};
    json arr = json::array();
    for (const auto& e : entries) {
        arr.push_back({{"criterion", e.number},
                       {"id", e.id},
                       {"claim", e.claim},
                       {"locus", e.locus},
                       {"verdict", e.pass ? "pass" : "fail"},
                       {"bounded", e.bounded},
                       {"detail", e.detail},
                       {"evidence", e.evidence},
                       {"wall_seconds", e.seconds},
                       {"budget_seconds", e.budget_seconds},
                       {"data", e.data}});
    }
    out["entries"] = arr;
    return out;
}

std::string summary_line(const CriterionResult& r) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << (r.pass ? "PASS" : "FAIL") << "  " << (r.number < 10 ? " " : "") << r.number << " " << r.id << "  ("
       << r.seconds << "s / " << r.budget_seconds << "s)  " << r.detail;
    return os.str();
}

ReplicationReport replicate(const ReplicateOptions& opts) {
    Context cx;
    cx.opts = opts;
    cx.data_dir = opts.data_dir.empty() ? default_data_dir() : opts.data_dir;
    auto t0 = Clock::now();
    for (const auto& e : entries()) {
        if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), e.number) == opts.only.end())
            continue;
        CriterionResult r;
        r.number = e.number;
        r.id = e.id;
        r.claim = e.claim;
        r.locus = e.locus;
        r.budget_seconds = e.budget;
        r.bounded = e.bounded;
        auto t = Clock::now();
        try {
            e.run(cx, r);
        } catch (const std::exception& ex) {
            r.pass = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        r.seconds = since(t);
        if (r.seconds > r.budget_seconds) {
            r.pass = false;
            r.detail += "; over the time budget";
        }
        cx.done.push_back(std::move(r));
    }
    ReplicationReport rep;
    rep.entries = std::move(cx.done);
    rep.seconds = since(t0);
    return rep;
}

}  // namespace hyperseq
