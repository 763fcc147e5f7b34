#include "hyperseq/random.hpp"

namespace hyperseq {

Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms, int max_depth) {
    std::uniform_int_distribution<std::size_t> pick_atom(0, atoms.size() - 1);
    if (max_depth <= 0) return Formula::atom(atoms[pick_atom(rng)]);
    // Atoms are chosen a third of the time so trees stay varied in shape.
    std::uniform_int_distribution<int> pick(0, 5);
    switch (pick(rng)) {
        case 0:
        case 1: return Formula::atom(atoms[pick_atom(rng)]);
        case 2: return Formula::neg(random_formula(rng, atoms, max_depth - 1));
        case 3: return Formula::box(random_formula(rng, atoms, max_depth - 1));
        case 4:
            return Formula::conj(random_formula(rng, atoms, max_depth - 1),
                                 random_formula(rng, atoms, max_depth - 1));
        default:
            return Formula::disj(random_formula(rng, atoms, max_depth - 1),
                                 random_formula(rng, atoms, max_depth - 1));
    }
}

Hypersequent random_hypersequent(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                                 int max_components, int max_side, int max_depth) {
    std::uniform_int_distribution<int> comps(1, std::max(1, max_components));
    std::uniform_int_distribution<int> side(0, std::max(0, max_side));
    Hypersequent h;
    int n = comps(rng);
    for (int i = 0; i < n; ++i) {
        Sequent s;
        for (int k = side(rng); k > 0; --k) s.left.insert(random_formula(rng, atoms, max_depth));
        for (int k = side(rng); k > 0; --k) s.right.insert(random_formula(rng, atoms, max_depth));
        h.comps.push_back(std::move(s));
    }
    return h;
}

KripkeModel random_kripke_model(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                                int max_worlds, double density) {
    std::uniform_int_distribution<int> size(1, std::max(1, max_worlds));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);
    int n = size(rng);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
    KripkeModel m{KripkeFrame(names)};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (unit(rng) < density) m.frame.relate(a, b);
    for (int w = 0; w < n; ++w)
        for (const auto& a : atoms) m.set(w, a, coin(rng));
    return m;
}

}  // namespace hyperseq
