#include "qlab/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qlab {

PolynomialObservable::PolynomialObservable(int n, int m) : x_power(n), p_power(m) {
    if (n < 0 || m < 0) {
        throw std::invalid_argument("PolynomialObservable: powers must be nonnegative");
    }
    if (n + m > 12) {
        throw std::invalid_argument("PolynomialObservable: total degree " +
                                    std::to_string(n + m) + " exceeds the stability bound 12");
    }
}

namespace {

// P^m psi = (-i*hbar)^m d^m psi/dx^m
GridWavefunction apply_momentum_power(const GridWavefunction& psi, int m) {
    if (m == 0) return psi;
    GridWavefunction d = derivative(psi, m);
    complex_t factor = std::pow(complex_t(0.0, -units::hbar), m);
    return factor * d;
}

}  // namespace

Expectation expectation(const GridWavefunction& psi, const PolynomialObservable& obs) {
    const GridWavefunction pm = apply_momentum_power(psi, obs.p_power);
    const GridWavefunction xn_pm = apply_position_power(pm, obs.x_power);
    const GridWavefunction pm_xn =
        apply_momentum_power(apply_position_power(psi, obs.x_power), obs.p_power);

    const auto w = detail::quadrature_weights(psi.grid);
    complex_t sym = 0.0;
    complex_t ord = 0.0;
    double abs_acc = 0.0;
    for (int k = 0; k < psi.grid.point_count; ++k) {
        complex_t applied = 0.5 * (xn_pm.samples[k] + pm_xn.samples[k]);
        complex_t integrand = std::conj(psi.samples[k]) * applied;
        sym += w[k] * integrand;
        ord += w[k] * std::conj(psi.samples[k]) * xn_pm.samples[k];
        abs_acc += w[k] * std::abs(integrand);
    }

    Expectation e;
    e.value = std::real(sym);
    e.imag_residual = std::abs(std::imag(sym));
    e.ordered_bracket = ord;
    e.abs_integral = abs_acc;
    e.truncation_dominated = obs.p_power > 0 && edge_magnitude(psi) > 1e-8;
    return e;
}

namespace {

Grid sweep_grid(double radius, double dx) {
    int n = static_cast<int>(std::lround(2.0 * radius / dx));
    if (n % 2 != 0) ++n;
    n = std::max(n, 16);
    return Grid(radius, n);
}

void validate_radii(const std::vector<double>& radii) {
    if (radii.size() < 4) {
        throw std::invalid_argument("truncation_sweep: need at least 4 radii");
    }
    for (size_t i = 1; i < radii.size(); ++i) {
        if (!(radii[i] > radii[i - 1])) {
            throw std::invalid_argument("truncation_sweep: radii must be strictly increasing");
        }
    }
}

SweepData sweep_impl(const std::function<GridWavefunction(const Grid&)>& sampler,
                     const PolynomialObservable& obs, const std::vector<double>& radii,
                     double dx) {
    validate_radii(radii);
    SweepData data;
    data.observable = obs;
    data.dx = dx;
    data.points.reserve(radii.size());
    for (double radius : radii) {
        Grid g = sweep_grid(radius, dx);
        Expectation e = expectation(sampler(g), obs);
        data.points.push_back({radius, g.point_count, e.value, e.abs_integral});
    }
    return data;
}

}  // namespace

SweepData truncation_sweep(const AnalyticProfile& profile, const PolynomialObservable& obs,
                           const std::vector<double>& radii, double dx) {
    return sweep_impl([&](const Grid& g) { return sample(profile, g); }, obs, radii, dx);
}

SweepData truncation_sweep(const std::function<complex_t(double)>& state,
                           const PolynomialObservable& obs, const std::vector<double>& radii,
                           double dx) {
    return sweep_impl([&](const Grid& g) { return sample(state, g); }, obs, radii, dx);
}

const char* to_string(DivergenceVerdict::Kind k) {
    switch (k) {
        case DivergenceVerdict::Kind::Convergent: return "Convergent";
        case DivergenceVerdict::Kind::Divergent: return "Divergent";
        case DivergenceVerdict::Kind::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

namespace {

// least-squares slope of log|e| against log L
double loglog_slope(const std::vector<double>& radii, const std::vector<double>& estimates) {
    const size_t n = radii.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        double x = std::log(radii[i]);
        double y = std::log(std::abs(estimates[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    return (n * sxy - sx * sy) / denom;
}

struct TailView {
    std::vector<double> radii;
    std::vector<double> estimates;
};

TailView last_three(const SweepData& sweep, bool absolute) {
    TailView v;
    size_t n = sweep.points.size();
    for (size_t i = n - 3; i < n; ++i) {
        v.radii.push_back(sweep.points[i].radius);
        v.estimates.push_back(absolute ? sweep.points[i].abs_estimate
                                       : sweep.points[i].estimate);
    }
    return v;
}

bool is_convergent(const TailView& v, double spread_tol, double zero_scale) {
    double lo = *std::min_element(v.estimates.begin(), v.estimates.end());
    double hi = *std::max_element(v.estimates.begin(), v.estimates.end());
    double mean = (v.estimates[0] + v.estimates[1] + v.estimates[2]) / 3.0;
    // the floor keeps estimates that cancel to quadrature roundoff readable
    // as convergent-to-zero; relative spread alone blows up at zero
    double scale = std::max({std::abs(mean), zero_scale, 1e-12});
    return (hi - lo) / scale <= spread_tol;
}

bool is_divergent(const TailView& v, double exponent_threshold, double* exponent_out) {
    bool growing = std::abs(v.estimates[1]) > std::abs(v.estimates[0]) &&
                   std::abs(v.estimates[2]) > std::abs(v.estimates[1]);
    bool same_sign = (v.estimates[0] > 0) == (v.estimates[1] > 0) &&
                     (v.estimates[1] > 0) == (v.estimates[2] > 0);
    if (!growing || !same_sign) return false;
    for (double e : v.estimates) {
        if (e == 0.0) return false;
    }
    double slope = loglog_slope(v.radii, v.estimates);
    if (exponent_out) *exponent_out = slope;
    return slope > exponent_threshold;
}

}  // namespace

DivergenceVerdict classify_divergence(const SweepData& sweep) {
    if (sweep.points.size() < 4) {
        throw std::invalid_argument("classify_divergence: need at least 4 sweep points");
    }
    constexpr double kSpreadTol = 1e-4;
    constexpr double kExponentThreshold = 0.1;

    DivergenceVerdict verdict;
    verdict.sweep = sweep;

    TailView signed_tail = last_three(sweep, false);
    TailView abs_tail = last_three(sweep, true);
    double zero_scale =
        1e-10 * (abs_tail.estimates[0] + abs_tail.estimates[1] + abs_tail.estimates[2]) / 3.0;
    if (is_convergent(signed_tail, kSpreadTol, zero_scale)) {
        verdict.kind = DivergenceVerdict::Kind::Convergent;
        verdict.limit = sweep.points.back().estimate;
        // A settled signed estimate can still mask an absolutely divergent
        // integrand (symmetric truncation of an odd moment).
        double abs_exp = 0.0;
        if (!is_convergent(abs_tail, kSpreadTol, 0.0) &&
            is_divergent(abs_tail, kExponentThreshold, &abs_exp)) {
            verdict.conditionally_convergent = true;
        }
        return verdict;
    }

    double exponent = 0.0;
    if (is_divergent(signed_tail, kExponentThreshold, &exponent)) {
        verdict.kind = DivergenceVerdict::Kind::Divergent;
        verdict.growth_exponent = exponent;
        return verdict;
    }

    verdict.kind = DivergenceVerdict::Kind::Undetermined;
    return verdict;
}

MomentTable moment_fingerprint(const GridWavefunction& psi, int max_total_degree) {
    if (max_total_degree < 0 || max_total_degree > 12) {
        throw std::invalid_argument("moment_fingerprint: max degree must be in [0, 12]");
    }
    MomentTable table;
    table.grid_half_width = psi.grid.half_width;
    table.grid_point_count = psi.grid.point_count;
    for (int n = 0; n <= max_total_degree; ++n) {
        for (int m = 0; n + m <= max_total_degree; ++m) {
            table.entries[{n, m}] = expectation(psi, PolynomialObservable(n, m));
        }
    }
    return table;
}

}  // namespace qlab
