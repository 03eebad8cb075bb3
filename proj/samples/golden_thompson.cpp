// log Tr e^{H+K} <= inf lambda_max <= log Tr[e^H e^K] with a certified saddle value.

#include <cstdio>

#include "qre/qre.hpp"

int main() {
    qre::RandomStream rng(11, 0, 0);
    const qre::HermitianMatrix h = qre::random_hermitian(rng, 4);
    const qre::HermitianMatrix k = qre::random_hermitian(rng, 4);

    const qre::GoldenThompson gt = qre::golden_thompson_chain(h, k);
    std::printf("lhs %.12f\nmid %.12f\nrhs %.12f\n", gt.lhs, gt.mid, gt.rhs);
    std::printf("saddle bounds [%.12f, %.12f], gap %.3g\n", gt.saddle.dualLower, gt.saddle.primalUpper,
                gt.saddle.gap);
}
