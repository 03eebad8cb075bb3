// Three relative entropies of a random density pair, and the chain between them.

#include <cstdio>

#include "qre/qre.hpp"

int main() {
    qre::RandomStream rng(7, 0, 0);
    const qre::DensityMatrix x = qre::random_density(rng, 3, 100.0);
    const qre::DensityMatrix y = qre::random_density(rng, 3, 100.0);

    const qre::EntropyChain c = qre::entropy_chain(x, y);
    std::printf("D_D  = %.12f\nD    = %.12f\nD_BS = %.12f\n", c.donald, c.umegaki, c.bs);
    std::printf("ordered: %s\n", c.ordered(1e-6) ? "yes" : "no");
    std::printf("Pinsker lower bound = %.12f\n", qre::pinsker_bound(x, y));
}
