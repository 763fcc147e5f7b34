#include "hyperseq/decide.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

#include "hyperseq/search.hpp"
#include "rules_internal.hpp"

namespace hyperseq {

using namespace detail;

std::string to_string(DecideSystem s) { return s == DecideSystem::RK4Cut ? "RK4Cut" : "RS4Cut"; }

DecideSystem decide_system_from_string(const std::string& s) {
    std::string k;
    for (char c : s)
        if (c != '+' && c != '_' && c != '-') k += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (k == "rk4cut" || k == "rk4") return DecideSystem::RK4Cut;
    if (k == "rs4cut" || k == "rs4") return DecideSystem::RS4Cut;
    throw std::invalid_argument("decide supports rk4cut and rs4cut, not " + s);
}

CalculusSpec calculus_of(DecideSystem s) { return calculus(s == DecideSystem::RK4Cut ? "RK4" : "RS4", true); }

FrameClass frame_class_of(DecideSystem s) { return s == DecideSystem::RK4Cut ? FrameClass::K4 : FrameClass::S4; }

ExtractionRelation extraction_relation_of(DecideSystem s) {
    return s == DecideSystem::RK4Cut ? ExtractionRelation::Rplus : ExtractionRelation::Rstar;
}

Hypersequent LabelledHypersequent::unlabelled() const {
    Hypersequent h;
    for (const auto& c : comps) h.comps.push_back(c.seq);
    return h;
}

std::string to_string(const LabelledHypersequent& h) {
    std::string out;
    for (std::size_t i = 0; i < h.comps.size(); ++i) {
        if (i) out += " // ";
        out += "[" + h.comps[i].label + "] " + to_string(Hypersequent{{h.comps[i].seq}});
    }
    return out;
}

LabelledHypersequent OpenTree::branch_hypersequent() const {
    LabelledHypersequent h;
    for (std::size_t i : goal_branch) h.comps.push_back({nodes[i].label, nodes[i].seq});
    return h;
}

std::string to_string(SaturationStatus s) {
    switch (s) {
        case SaturationStatus::Closed: return "closed";
        case SaturationStatus::Open: return "open";
        case SaturationStatus::Unknown: return "unknown";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Valid: return "valid";
        case Verdict::Invalid: return "invalid";
        case Verdict::Unknown: return "unknown";
    }
    return "?";
}

namespace {

// []f => // => // ... // => f with span empty components in between plus the
// last; with boxed the last component holds []f instead.
DerivPtr box_chain(Formula boxed_f, std::size_t span, bool boxed) {
    Formula f = boxed_f.sub();
    std::size_t reach = boxed ? span + 1 : span;
    DerivPtr d = identity_derivation(f);
    Hypersequent cur{{Sequent{{}, {}}, Sequent{{f}, {f}}}};
    d = step(cur, app_of(Rule::EWL, 0), {d});
    cur = Hypersequent{{Sequent{{boxed_f}, {}}, Sequent{{}, {f}}}};
    d = step(cur, app_of(Rule::BoxL, 0, boxed_f, Side::Left, 1), {d});
    while (cur.size() < reach + 1) {
        cur = with_comp(cur, 1, Sequent{});
        d = step(cur, app_of(Rule::EW, 1), {d});
    }
    if (boxed) {
        cur.comps.pop_back();
        cur.comps.back().right.insert(boxed_f);
        d = step(cur, app_of(Rule::BoxR, cur.size() - 1, boxed_f, Side::Right), {d});
    }
    return d;
}

// []f => f, using EC.
DerivPtr t_derivation(Formula boxed_f) {
    Formula f = boxed_f.sub();
    DerivPtr d = box_chain(boxed_f, 1, false);
    Sequent both{{boxed_f}, {f}};
    d = weaken_to(d, Hypersequent{{both, both}});
    return step(Hypersequent{{both}}, app_of(Rule::EC, 0, std::nullopt, std::nullopt, 1), {d});
}

// Places d's components starting at offset in an n-component hypersequent,
// then weakens to target.
DerivPtr place(DerivPtr d, std::size_t offset, const Hypersequent& target) {
    Hypersequent cur = d->conclusion;
    for (std::size_t k = 0; k < offset; ++k) {
        cur = with_comp(cur, 0, Sequent{});
        d = step(cur, app_of(Rule::EWL, 0), {d});
    }
    while (cur.size() < target.size()) {
        cur.comps.push_back(Sequent{});
        d = step(cur, app_of(Rule::EWR, cur.size() - 1), {d});
    }
    return weaken_to(d, target);
}

// One link of a saturation chain: `before` is derived from the next link's
// hypersequent by a kept rule or by a Cut whose other premise is `side`.
struct Link {
    Hypersequent before;
    RuleApp app;
    DerivPtr side;
};

DerivPtr fold(const std::vector<Link>& chain, DerivPtr d) {
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        if (it->side)
            d = step(it->before, it->app, {it->side, d});
        else
            d = step(it->before, it->app, {d});
    }
    return d;
}

// Open piece of the tableau for one path. children[i] are the open pieces for
// the boxes on the right of component i that were expanded from this path.
struct Piece {
    Hypersequent sat;
    std::vector<std::vector<std::shared_ptr<const Piece>>> children;
    std::optional<std::size_t> blocked_by;
};
using PiecePtr = std::shared_ptr<const Piece>;

struct Outcome {
    SaturationStatus status = SaturationStatus::Unknown;
    DerivPtr proof;
    PiecePtr open;
};

struct MemoKey {
    Hypersequent h;
    bool fresh;
    bool operator==(const MemoKey&) const = default;
};

struct MemoHash {
    std::size_t operator()(const MemoKey& k) const { return HypersequentHash{}(k.h) * 2 + k.fresh; }
};

class Decider {
public:
    Decider(DecideSystem sys, DecideLimits lim)
        : reflexive_(sys == DecideSystem::RS4Cut), spec_(calculus_of(sys)), kernel_(calculus(spec_.name)),
          limits_(lim) {}

    Outcome run(const Hypersequent& goal) { return solve(goal, false); }
    DecideStats stats;

private:
    // Propagation of boxes that the kept rules do not cover: BoxL to any later
    // component, [] itself to every later component, and T for reflexive
    // frames. Each is a Cut against a small derivation.
    std::optional<Link> propagation(const Hypersequent& g) const {
        std::size_t n = g.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (Formula b : g[i].left) {
                if (b.op() != Op::Box) continue;
                Formula f = b.sub();
                if (reflexive_ && !g[i].left.contains(f)) return cut_link(g, i, f, t_derivation(b), i);
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (j > i + 1 && !g[j].left.contains(f))
                        return cut_link(g, j, f, box_chain(b, j - i, false), i);
                    if (!g[j].left.contains(b)) return cut_link(g, j, b, box_chain(b, j - i, true), i);
                }
            }
        }
        return std::nullopt;
    }

    static Link cut_link(const Hypersequent& g, std::size_t j, Formula f, DerivPtr small, std::size_t offset) {
        Hypersequent right = g;
        right[j].right.insert(f);
        Link l;
        l.before = g;
        l.app = app_of(Rule::Cut, j, f);
        l.side = place(small, offset, right);
        return l;
    }

    Outcome solve(const Hypersequent& start, bool fresh) {
        MemoKey key{start, fresh};
        if (auto it = memo_.find(key); it != memo_.end()) {
            ++stats.memo_hits;
            return it->second;
        }
        Outcome out = expand(start, fresh);
        if (out.status != SaturationStatus::Unknown) memo_.emplace(std::move(key), out);
        return out;
    }

    Outcome expand(const Hypersequent& start, bool fresh) {
        if (++stats.paths > max_nodes()) return {};
        std::vector<Link> chain;
        Hypersequent g = start;
        for (;;) {
            if (auto s = additive_step(g, kernel_)) {
                chain.push_back(Link{g, s->app, nullptr});
                g = s->premise;
            } else if (auto l = propagation(g)) {
                ++stats.cuts;
                Hypersequent next = g;
                next[l->app.component].left.insert(*l->app.principal);
                chain.push_back(std::move(*l));
                g = std::move(next);
            } else {
                break;
            }
        }
        if (DerivPtr ax = axiom_macro(g)) return closed(fold(chain, ax));

        if (auto b = branching_step(g)) {
            Outcome first = solve(b->first, fresh);
            if (first.status != SaturationStatus::Closed) return first;
            Outcome second = solve(b->second, fresh);
            if (second.status != SaturationStatus::Closed) return second;
            return closed(fold(chain, step(g, b->app, {first.proof, second.proof})));
        }

        std::size_t n = g.size();
        auto piece = std::make_shared<Piece>();
        piece->sat = g;
        piece->children.resize(n);
        if (fresh) {
            for (std::size_t j = 0; j + 1 < n; ++j) {
                if (g[j] == g[n - 1]) {
                    ++stats.blocked;
                    piece->blocked_by = j;
                    return Outcome{SaturationStatus::Open, nullptr, piece};
                }
            }
        }
        bool unknown = false;
        for (std::size_t i = fresh ? n - 1 : 0; i < n; ++i) {
            for (Formula b : g[i].right) {
                if (b.op() != Op::Box) continue;
                Hypersequent prefix(std::vector<Sequent>(g.comps.begin(), g.comps.begin() + static_cast<long>(i) + 1));
                Hypersequent child = prefix;
                child.comps.push_back(Sequent{{}, {b.sub()}});
                if (child.size() > max_path()) {
                    unknown = true;
                    continue;
                }
                Outcome r = solve(child, true);
                if (r.status == SaturationStatus::Unknown) {
                    unknown = true;
                    continue;
                }
                if (r.status == SaturationStatus::Closed) {
                    DerivPtr d = step(prefix, app_of(Rule::BoxR, i, b, Side::Right), {r.proof});
                    return closed(fold(chain, place(d, 0, g)));
                }
                piece->children[i].push_back(r.open);
            }
        }
        if (unknown) return {};
        return Outcome{SaturationStatus::Open, nullptr, piece};
    }

    static Outcome closed(DerivPtr d) { return Outcome{SaturationStatus::Closed, std::move(d), nullptr}; }

    std::uint64_t max_nodes() const { return limits_.max_nodes ? limits_.max_nodes : 200'000; }
    std::size_t max_path() const { return limits_.max_path ? limits_.max_path : 64; }

    bool reflexive_;
    CalculusSpec spec_;
    CalculusSpec kernel_;  // without Cut and without T: the kept rules used eagerly
    DecideLimits limits_;
    std::unordered_map<MemoKey, Outcome, MemoHash> memo_;
};

// Lays the pieces out as a tree. path holds the node ids of the current
// path's components.
void build_tree(const Piece& p, std::vector<std::size_t>& path, OpenTree& t,
                std::vector<std::pair<std::size_t, std::size_t>>& blocks) {
    std::size_t n = p.sat.size();
    // The path prefix is shared with the parent piece; only the last
    // component may be new.
    while (path.size() < n) {
        std::size_t parent = path.back();
        OpenTree::Node node;
        node.parent = parent;
        node.label = t.nodes[parent].label + "." + std::to_string(t.nodes[parent].children.size() + 1);
        node.seq = p.sat[path.size()];
        t.nodes[parent].children.push_back(t.nodes.size());
        path.push_back(t.nodes.size());
        t.nodes.push_back(std::move(node));
    }
    for (std::size_t i = 0; i < n; ++i) t.nodes[path[i]].seq = p.sat[i];
    if (p.blocked_by) {
        t.nodes[path.back()].blocked_by = path[*p.blocked_by];
        blocks.emplace_back(path.back(), path[*p.blocked_by]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& c : p.children[i]) {
            std::vector<std::size_t> sub(path.begin(), path.begin() + static_cast<long>(i) + 1);
            build_tree(*c, sub, t, blocks);
        }
    }
}

std::shared_ptr<OpenTree> make_tree(const Piece& top) {
    auto t = std::make_shared<OpenTree>();
    std::vector<std::size_t> path;
    for (std::size_t i = 0; i < top.sat.size(); ++i) {
        OpenTree::Node node;
        node.label = std::to_string(i + 1);
        node.seq = top.sat[i];
        if (i > 0) {
            node.parent = i - 1;
            t->nodes[i - 1].children.push_back(i);
        }
        t->nodes.push_back(std::move(node));
        path.push_back(i);
        t->goal_branch.push_back(i);
    }
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    build_tree(top, path, *t, blocks);
    return t;
}

}  // namespace

SaturationResult saturate(const Hypersequent& goal, DecideSystem system, DecideLimits limits) {
    if (goal.size() == 0) throw std::invalid_argument("empty hypersequent");
    Decider dec(system, limits);
    Outcome o = dec.run(goal);
    SaturationResult r;
    r.status = o.status;
    r.stats = dec.stats;
    if (o.status == SaturationStatus::Closed) r.certificate = o.proof;
    if (o.status == SaturationStatus::Open) r.open = make_tree(*o.open);
    return r;
}

ExtractedModel extract_model(const OpenTree& t, ExtractionRelation rel) {
    std::size_t n = t.nodes.size();
    std::vector<std::string> names;
    for (const auto& node : t.nodes) names.push_back(node.label);
    KripkeFrame fr(names);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t c : t.nodes[a].children) fr.relate(a, c);
        if (auto u = t.nodes[a].blocked_by)
            for (std::size_t c : t.nodes[*u].children) fr.relate(a, c);
    }
    if (rel != ExtractionRelation::R1) {
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t a = 0; a < n; ++a)
                if (fr.related(a, k))
                    for (std::size_t b = 0; b < n; ++b)
                        if (fr.related(k, b)) fr.relate(a, b);
    }
    if (rel == ExtractionRelation::Rstar)
        for (std::size_t a = 0; a < n; ++a) fr.relate(a, a);
    ExtractedModel out{KripkeModel(fr), t.goal_branch};
    std::vector<std::string> atoms;
    for (const auto& node : t.nodes)
        for (Formula f : node.seq.left.united(node.seq.right)) collect_atoms(f, atoms);
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    for (std::size_t w = 0; w < n; ++w)
        for (const auto& a : atoms) out.model.set(w, a, t.nodes[w].seq.left.contains(Formula::atom(a)));
    return out;
}

bool branch_refutes(const KripkeModel& m, const Branch& b, const Hypersequent& h) {
    if (b.size() != h.size()) return false;
    for (std::size_t k = 0; k < b.size(); ++k) {
        if (k > 0 && !m.frame.related(b[k - 1], b[k])) return false;
        for (Formula f : h[k].left)
            if (!eval(m, b[k], f)) return false;
        for (Formula f : h[k].right)
            if (eval(m, b[k], f)) return false;
    }
    return true;
}

DecideResult decide(const Hypersequent& goal, DecideSystem system, DecideLimits limits) {
    SaturationResult s = saturate(goal, system, limits);
    DecideResult r;
    r.stats = s.stats;
    if (s.status == SaturationStatus::Closed) {
        auto chk = check_derivation(*s.certificate, calculus_of(system));
        if (!chk.ok || s.certificate->conclusion != goal) {
            r.internal_error = "certificate does not check: " + chk.reason;
            return r;
        }
        r.verdict = Verdict::Valid;
        r.certificate = s.certificate;
    } else if (s.status == SaturationStatus::Open) {
        ExtractedModel em = extract_model(*s.open, extraction_relation_of(system));
        FrameCheck fc = check_frame_class(em.model.frame, frame_class_of(system));
        if (!fc.ok) {
            r.internal_error = "extracted frame violates " + fc.condition;
            return r;
        }
        if (!branch_refutes(em.model, em.branch, goal) || !countermodels_hypersequent(em.model, goal)) {
            r.internal_error = "extracted model does not refute the goal";
            return r;
        }
        r.verdict = Verdict::Invalid;
        r.model = std::move(em);
        r.open = s.open;
    }
    return r;
}

}  // namespace hyperseq
