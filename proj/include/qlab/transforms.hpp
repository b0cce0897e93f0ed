#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qlab/grid.hpp"
#include "qlab/observables.hpp"

namespace qlab {

struct MonotonicityCertificate {
    enum class Kind { Monotone, NonMonotone, Unchecked };
    Kind kind = Kind::Unchecked;
    double witness = 0.0;  // NonMonotone: first sampled x with derivative <= threshold
};

const char* to_string(MonotonicityCertificate::Kind k);

/// Monotone real map with closed-form forward, inverse and Jacobian
/// evaluators, valid on [-working_half_range, working_half_range].
struct Diffeomorphism {
    std::function<double(double)> forward;
    std::function<double(double)> inverse;
    std::function<double(double)> jacobian;  // df/dx
    double working_half_range = 0.0;
    MonotonicityCertificate certificate;
    std::string name;
};

Diffeomorphism identity_map();
Diffeomorphism affine_map(double scale, double offset);  // scale > 0

/// y(x) = tan((pi/2) erf(x)): maps the squared Gaussian profile onto the
/// Cauchy density. Forward evaluation is guarded at |x| > 4.1 where the value
/// passes ~1e8.
Diffeomorphism gauss_to_cauchy_map();

Diffeomorphism compose(const Diffeomorphism& f, const Diffeomorphism& g);  // f after g
Diffeomorphism inverse_of(const Diffeomorphism& f);

/// Samples the derivative on a dense inclusive grid; Monotone iff every
/// sample exceeds 1e-12. Requires sample_count >= 1000.
MonotonicityCertificate check_monotonicity(const std::function<double(double)>& derivative_fn,
                                           double half_range, int sample_count);

/// psi(x) -> psi(f^{-1}(y)) |df/dx|^{-1/2} on the target grid; source samples
/// are read through local cubic interpolation. Refuses NonMonotone maps and
/// target grids that leave the image of the working range.
GridWavefunction induced_unitary_apply(const Diffeomorphism& map, const GridWavefunction& psi,
                                       const Grid& target_grid);

/// Exact-evaluator version for analytic sources (no interpolation).
std::function<complex_t(double)> induced_state(const Diffeomorphism& map,
                                               const AnalyticProfile& base);

struct PushforwardRow {
    double x = 0.0;
    double mapped = 0.0;    // f(x)
    double target_mass = 0.0;  // integral of |phi|^2 over [0, f(x)]
    double source_mass = 0.0;  // integral of |psi|^2 over [0, x]
    double gap = 0.0;
};

struct PushforwardReport {
    std::vector<PushforwardRow> rows;
    double max_gap = 0.0;
};

/// Cumulative-distribution match: mass transported by the map equals mass in
/// the preimage, checked at the supplied sample points.
PushforwardReport pushforward_density_check(const Diffeomorphism& map,
                                            const GridWavefunction& psi,
                                            const Grid& target_grid,
                                            const std::vector<double>& sample_points);

/// Oscillating coordinate family z(x, t) = cos(wt) x + sin(wt) tan((pi/2) erf x).
/// z(x, 0) = x; the quarter period wt in [0, pi/2] keeps both summands
/// nondecreasing.
struct EvolutionFamily {
    double omega = 1.0;

    double map_value(double x, double t) const;
    double map_derivative(double x, double t) const;
};

/// Builds z(., t) with a numerical (bisection) inverse and runs the
/// monotonicity check. Non-monotonicity comes back as a certificate, not an
/// error.
Diffeomorphism evolution_map(const EvolutionFamily& family, double t);

struct EvolutionPoint {
    double t = 0.0;
    MonotonicityCertificate certificate;
    std::vector<DivergenceVerdict> verdicts;  // aligned with the observable list
};

/// For each time: applies the induced unitary to the profile and classifies a
/// truncation sweep per observable. Every time in the grid must certify
/// Monotone; offenders are listed in the thrown error.
std::vector<EvolutionPoint> evolve_and_track(const EvolutionFamily& family,
                                             const AnalyticProfile& initial_state,
                                             const std::vector<double>& times,
                                             const std::vector<PolynomialObservable>& observables,
                                             const std::vector<double>& radii,
                                             double dx = kDefaultDx,
                                             const Grid& source_grid = Grid(8.0, 1024));

namespace detail {
double tan_erf(double x);             // tan((pi/2) erf(x)), evaluable for |x| <= 5.85
double tan_erf_derivative(double x);  // sqrt(pi) e^{-x^2} (1 + tan_erf(x)^2)
double erf_inv(double y);
}  // namespace detail

}  // namespace qlab
