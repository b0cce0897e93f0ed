#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qlab/grid.hpp"

namespace qlab {

/// Symmetrized polynomial observable (X^n P^m + P^m X^n)/2 with
/// P = -i*hbar*d/dx. Total degree is capped at 12 for numerical stability.
struct PolynomialObservable {
    int x_power = 0;
    int p_power = 0;

    PolynomialObservable(int n, int m);
    int total_degree() const { return x_power + p_power; }
};

/// Result of a bracket evaluation. The symmetrized bracket is real for exact
/// arithmetic; imag_residual records how far the quadrature strays. States
/// whose tails are unresolved at the grid edge get the truncation flag when a
/// derivative is involved.
struct Expectation {
    double value = 0.0;
    double imag_residual = 0.0;
    bool truncation_dominated = false;
    complex_t ordered_bracket{0.0, 0.0};  // unsymmetrized <X^n P^m>, for reference
    double abs_integral = 0.0;            // quadrature of |integrand|
};

Expectation expectation(const GridWavefunction& psi, const PolynomialObservable& obs);

constexpr double kDefaultDx = 1.0 / 64.0;

struct SweepPoint {
    double radius = 0.0;
    int point_count = 0;
    double estimate = 0.0;      // signed bracket
    double abs_estimate = 0.0;  // quadrature of |integrand|, detects conditional convergence
};

struct SweepData {
    PolynomialObservable observable{0, 0};
    double dx = kDefaultDx;
    std::vector<SweepPoint> points;
};

/// Expectation estimates across truncation radii; each radius gets a fresh
/// grid with the spacing held fixed (N grows with L). States are sampled from
/// the profile as-is, without renormalizing to the window.
SweepData truncation_sweep(const AnalyticProfile& profile, const PolynomialObservable& obs,
                           const std::vector<double>& radii, double dx = kDefaultDx);
SweepData truncation_sweep(const std::function<complex_t(double)>& state,
                           const PolynomialObservable& obs, const std::vector<double>& radii,
                           double dx = kDefaultDx);

struct DivergenceVerdict {
    enum class Kind { Convergent, Divergent, Undetermined };
    Kind kind = Kind::Undetermined;
    double limit = 0.0;            // Convergent only
    double growth_exponent = 0.0;  // Divergent only: log-log slope of the fit window
    bool conditionally_convergent = false;  // signed estimate settles, |integrand| grows
    SweepData sweep;
};

const char* to_string(DivergenceVerdict::Kind k);

/// Classification thresholds: convergence needs last-three relative spread
/// <= 1e-4; divergence needs monotone growth with fitted exponent > 0.1.
/// Anything else is Undetermined, never a silent guess.
DivergenceVerdict classify_divergence(const SweepData& sweep);

struct MomentTable {
    std::map<std::pair<int, int>, Expectation> entries;
    double grid_half_width = 0.0;
    int grid_point_count = 0;
};

/// All (n, m) entries with n + m <= max_total_degree.
MomentTable moment_fingerprint(const GridWavefunction& psi, int max_total_degree);

}  // namespace qlab
