#pragma once

#include <cstdint>
#include <random>

#include "qlab/mixtures.hpp"

namespace qlab {

/// Deterministic random source. Draws go through fixed arithmetic on raw
/// engine output (not std distributions) so seeded runs reproduce bit-for-bit
/// across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal() {  // Box-Muller
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::complex<double> complex_normal() { return {normal(), normal()}; }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(uniform() * (hi - lo + 1));
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

PureState random_pure_state(Rng& rng, int dim);
ConvexDecomposition random_decomposition(Rng& rng, int dim, int n_states);
DensityMatrix random_density_matrix(Rng& rng, int dim);

}  // namespace qlab
