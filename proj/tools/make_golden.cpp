// Writes the shipped derivation files. Every file is checked before it is
// written; the output is deterministic, so rerunning reproduces the repo copy.

#include <filesystem>
#include <iostream>

#include "hyperseq/json_io.hpp"
#include "hyperseq/search.hpp"

using namespace hyperseq;

namespace {

DerivPtr node(const std::string& concl, Rule r, std::size_t comp, std::vector<DerivPtr> ps,
              const std::string& principal = "", std::optional<Side> side = std::nullopt,
              std::optional<std::size_t> aux = std::nullopt) {
    RuleApp a;
    a.rule = r;
    a.component = comp;
    a.side = side;
    a.aux = aux;
    if (!principal.empty()) a.principal = parse_formula(principal);
    return make_derivation(parse_hypersequent(concl), a, std::move(ps));
}

// The proof of => I(J) in cut-free RKB, as displayed: 25 nodes, two Sym steps.
DerivPtr ij_derivation() {
    const std::string D = "[](~[][]p & ~[][]q) | []q";
    DerivPtr l = node("p => p", Rule::Id, 0, {});
    l = node("=> // p => p", Rule::EWL, 0, {l});
    l = node("=> // => // p => p", Rule::EWL, 0, {l});
    l = node("=> // []p => // => p", Rule::BoxL, 1, {l}, "[]p", Side::Left, 2);
    l = node("[][]p => // => // => p", Rule::BoxL, 0, {l}, "[][]p", Side::Left, 1);
    l = node("=> p // => // [][]p =>", Rule::Sym, 0, {l});
    l = node("=> p // => // => ~[][]p", Rule::NegR, 2, {l}, "~[][]p", Side::Right);
    l = node("=> p // => []q // => ~[][]p", Rule::TR, 1, {l}, "[]q", Side::Right);

    DerivPtr r = node("q => q", Rule::Id, 0, {});
    r = node("=> // q => q", Rule::EWL, 0, {r});
    r = node("[]q => // => q", Rule::BoxL, 0, {r}, "[]q", Side::Left, 1);
    r = node("[]q => []q", Rule::BoxR, 0, {r}, "[]q", Side::Right);
    r = node("=> // []q => []q", Rule::EWL, 0, {r});
    r = node("[][]q => // => []q", Rule::BoxL, 0, {r}, "[][]q", Side::Left, 1);
    r = node("=> []q // [][]q =>", Rule::Sym, 0, {r});
    r = node("=> []q // => ~[][]q", Rule::NegR, 1, {r}, "~[][]q", Side::Right);
    r = node("=> // => []q // => ~[][]q", Rule::EWL, 0, {r});
    r = node("=> p // => []q // => ~[][]q", Rule::TR, 0, {r}, "p", Side::Right);

    DerivPtr d = node("=> p // => []q // => ~[][]p & ~[][]q", Rule::AndR, 2, {l, r}, "~[][]p & ~[][]q",
                      Side::Right);
    d = node("=> p // => []q, [](~[][]p & ~[][]q)", Rule::BoxR, 1, {d}, "[](~[][]p & ~[][]q)", Side::Right);
    d = node("=> p // => []q, " + D, Rule::OrR1, 1, {d}, D, Side::Right);
    d = node("=> p // => " + D, Rule::OrR2, 1, {d}, D, Side::Right);
    d = node("=> p, [](" + D + ")", Rule::BoxR, 0, {d}, "[](" + D + ")", Side::Right);
    d = node("=> p, p | [](" + D + ")", Rule::OrR2, 0, {d}, "p | [](" + D + ")", Side::Right);
    d = node("=> p | [](" + D + ")", Rule::OrR1, 0, {d}, "p | [](" + D + ")", Side::Right);
    return d;
}

// The derivation that justifies BoxL' with Cut, instantiated with
// phi = p & q, one empty component between the two mains and r on the left of
// the first: []phi => // r => // => p.
DerivPtr boxl_prime_derivation() {
    const std::string phi = "p & q";
    // Left premise: the BoxL' reduct with []phi dropped by TL.
    DerivPtr l = node("p => p", Rule::Id, 0, {});
    l = node("=> // p => p", Rule::EWL, 0, {l});
    l = node("=> // => // p => p", Rule::EWL, 0, {l});
    l = node("=> // r => // p => p", Rule::TL, 1, {l}, "r", Side::Left);
    l = node("=> // r => // p & q => p", Rule::AndL1, 2, {l}, phi, Side::Left);
    l = node("[](p & q) => // r => // p & q => p", Rule::TL, 0, {l}, "[](p & q)", Side::Left);

    // Right premise: phi => phi, moved under the box and weakened into place.
    DerivPtr r = identity_derivation(parse_formula(phi));
    r = node("=> // p & q => p & q", Rule::EWL, 0, {r});
    r = node("[](p & q) => // => p & q", Rule::BoxL, 0, {r}, "[](p & q)", Side::Left, 1);
    r = node("[](p & q) => // => // => p & q", Rule::EW, 1, {r});
    r = node("[](p & q) => // => // => p & q, p", Rule::TR, 2, {r}, "p", Side::Right);
    r = node("[](p & q) => // r => // => p & q, p", Rule::TL, 1, {r}, "r", Side::Left);

    return node("[](p & q) => // r => // => p", Rule::Cut, 2, {r, l}, phi);
}

DerivPtr searched(const std::string& goal, const std::string& system) {
    SearchResult r = search(parse_hypersequent(goal), calculus(system));
    if (!r.proof) throw std::runtime_error("no proof found for " + goal + " in " + system);
    return r.proof;
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "data/derivations";
    std::filesystem::create_directories(dir);

    struct Item {
        std::string file, system;
        DerivPtr d;
    };
    const std::string phi = "~[][]p", psi = "~[][]q";
    std::vector<Item> items = {
        {"ij_rkb.json", "RKB", ij_derivation()},
        {"boxl_prime_rk4cut.json", "RK4Cut", boxl_prime_derivation()},
        {"box_distribution_rkb.json", "RKB",
         searched("[]" + phi + " & []" + psi + " => [](" + phi + " & " + psi + ")", "RKB")},
        {"box_distribution_converse_rkb.json", "RKB",
         searched("[](" + phi + " & " + psi + ") => []" + phi + " & []" + psi, "RKB")},
        {"jprime_rkb.json", "RKB", searched("=> p // => []" + phi + " & []" + psi + " // => q", "RKB")},
    };
    int bad = 0;
    for (const auto& it : items) {
        DerivationCheck c = check_derivation(*it.d, calculus(it.system));
        if (!c.ok) {
            std::cerr << it.file << ": " << c.reason << "\n";
            ++bad;
            continue;
        }
        write_json_file((dir / it.file).string(), to_json(*it.d));
        std::cout << it.file << "  " << it.system << "  nodes=" << derivation_size(*it.d) << "  "
                  << to_string(it.d->conclusion) << "\n";
    }
    return bad ? 1 : 0;
}
