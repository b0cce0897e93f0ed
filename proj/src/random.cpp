#include "qlab/random.hpp"

namespace qlab {

PureState random_pure_state(Rng& rng, int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = rng.complex_normal();
    return PureState::from_unnormalized(std::move(v));
}

ConvexDecomposition random_decomposition(Rng& rng, int dim, int n_states) {
    std::vector<double> weights(n_states);
    double total = 0.0;
    for (double& w : weights) {
        w = 0.05 + rng.uniform();  // bounded away from zero: strictly convex
        total += w;
    }
    for (double& w : weights) w /= total;
    std::vector<PureState> states;
    states.reserve(n_states);
    for (int i = 0; i < n_states; ++i) states.push_back(random_pure_state(rng, dim));
    return ConvexDecomposition(std::move(weights), std::move(states));
}

DensityMatrix random_density_matrix(Rng& rng, int dim) {
    // Wishart construction: full rank almost surely
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint().eval());  // scrub roundoff asymmetry
    return DensityMatrix::from_matrix(std::move(rho));
}

}  // namespace qlab
