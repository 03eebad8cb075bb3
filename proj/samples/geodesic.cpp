// Points along the geodesic t -> X #_t Y and their distances to the endpoints.

#include <cstdio>

#include "qre/qre.hpp"

int main() {
    qre::RandomStream rng(3, 0, 0);
    const qre::PositiveMatrix x = qre::random_positive(rng, 3, 50.0);
    const qre::PositiveMatrix y = qre::random_positive(rng, 3, 50.0);
    const double d = qre::geodesic_distance(x, y);

    std::printf("%6s %14s %14s\n", "t", "d(X, G_t)", "t d(X, Y)");
    for (double t = 0.0; t <= 1.0001; t += 0.25) {
        const qre::PositiveMatrix g = qre::weighted_geometric_mean(x, y, t);
        std::printf("%6.2f %14.10f %14.10f\n", t, qre::geodesic_distance(x, g), t * d);
    }
}
