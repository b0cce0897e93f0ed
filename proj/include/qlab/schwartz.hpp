#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qlab/grid.hpp"
#include "qlab/observables.hpp"

namespace qlab {

struct SeminormEstimate {
    int x_power = 0;
    int d_order = 0;
    double value = 0.0;
    double radius = 0.0;
};

/// sup over the grid of |x^a (d^b psi)(x)|, spectral derivatives. For b >= 1
/// the outermost 5% of points on each side are excluded (the periodic wrap of
/// a slowly decaying state leaks spurious derivative content there) and
/// samples below 1e-10 of the derivative's peak count as zero.
double seminorm(const GridWavefunction& psi, int x_power, int d_order);

/// ||x^a d^b psi||_2, the companion seminorm family built from expectations.
/// Same noise floor as seminorm().
double seminorm_l2(const GridWavefunction& psi, int x_power, int d_order);

enum class SchwartzVerdict { SchwartzLike, NotSchwartz, Undetermined };
const char* to_string(SchwartzVerdict v);

struct SchwartzReport {
    SchwartzVerdict verdict = SchwartzVerdict::Undetermined;
    std::pair<int, int> witness{-1, -1};  // NotSchwartz: first index pair growing > 10x
    std::vector<double> radii;
    std::map<std::pair<int, int>, std::vector<double>> sup_estimates;  // per radius
    std::map<std::pair<int, int>, std::vector<double>> l2_estimates;
    std::map<std::pair<int, int>, bool> stable;
    SchwartzVerdict l2_verdict = SchwartzVerdict::Undetermined;  // from the L2 family
};

/// Seminorm battery over a radius sweep (>= 3 radii, spacing held fixed).
/// SchwartzLike iff every estimate is stable across the last two radii
/// (relative change <= 1e-3); NotSchwartz on monotone >10x growth. This is a
/// finite-window heuristic, sharp only for the catalog profiles.
SchwartzReport classify_schwartz(const AnalyticProfile& profile, int max_index,
                                 const std::vector<double>& radii, double dx = kDefaultDx);

struct SeminormGap {
    int x_power = 0;
    int d_order = 0;
    double last_gap = 0.0;
    bool converged = false;  // last_gap <= 1e-4
};

struct MomentGap {
    int x_power = 0;
    int p_power = 0;
    double last_gap = 0.0;
    bool converged = false;
};

struct ConvergenceTable {
    std::vector<SeminormGap> seminorm_gaps;
    std::vector<MomentGap> moment_gaps;
    bool all_seminorms_converged = false;
    bool all_moments_converged = false;
};

/// Per-seminorm and per-moment convergence of a sequence on one shared grid
/// (consecutive differences; converged means the final gap is <= 1e-4).
ConvergenceTable frechet_converges(const std::vector<GridWavefunction>& sequence, int max_index,
                                   int max_moment_degree);

/// The completeness pathology made concrete: cauchy-sqrt smoothly cut off at
/// growing radii. Gaps shrink in L2 while <X^2> grows without bound.
struct TruncatedSequence {
    std::vector<double> cutoffs;
    double width = 0.0;
    Grid grid{8.0, 1024};
    std::vector<GridWavefunction> states;  // normalized, support |x| <= cutoff
    std::vector<double> l2_gaps;           // ||psi_{i+1} - psi_i||
    std::vector<double> predicted_gap_sq;  // (2/pi)(atan(1/n_i) - atan(1/n_{i+1}))
    std::vector<double> x2_values;         // <X^2> per element
    double x2_growth_exponent = 0.0;       // log-log fit over the last three
};

TruncatedSequence build_truncated_sequence(const std::vector<double>& cutoffs, double width,
                                           double dx = kDefaultDx);

struct FourierClosureReport {
    SchwartzReport transform_report;       // battery applied to the transform
    double hermite_eigen_residual = -1.0;  // ||F h_n - (-i)^n h_n||, Hermite inputs only
    double tail_max = 0.0;                 // max |F psi| over the outer momentum window
    double tail_window_start = 0.0;
    bool noncompact_tail = false;          // tail_max > 1e-12
};

/// Battery on the Fourier transform. The growing window lives on the momentum
/// axis: each sweep entry is a momentum half-width K, realized by refining the
/// position spacing (dx = pi/K) at fixed position half-width, so the momentum
/// sampling density stays constant across the sweep.
FourierClosureReport fourier_closure_check(const AnalyticProfile& profile, int max_index,
                                           const std::vector<double>& momentum_radii = {50.0,
                                                                                        200.0,
                                                                                        800.0},
                                           double position_half_width = 16.0);

struct MomentSeparation {
    bool separated = false;
    int x_power = -1;
    int p_power = -1;
    double gap = 0.0;      // at the separating index
    double max_gap = 0.0;  // largest gap seen during the scan
};

/// Scans fingerprint entries in degree order and returns the first index pair
/// whose values differ by more than 1e-4.
MomentSeparation moment_distinguish(const GridWavefunction& a, const GridWavefunction& b,
                                    int max_total_degree);

}  // namespace qlab
