#include "qlab/transforms.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qlab {

namespace detail {

constexpr double kTanErfLimit = 5.85;  // erfc underflows against 1 ulp just beyond

double tan_erf(double x) {
    if (std::abs(x) > kTanErfLimit) {
        throw std::range_error("tan_erf: |x| = " + std::to_string(std::abs(x)) +
                               " beyond the evaluable range " + std::to_string(kTanErfLimit));
    }
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (std::abs(x) <= 1.0) {
        return std::tan(half_pi * std::erf(x));
    }
    // cot of the complementary angle avoids the cancellation in 1 - erf(x)
    double delta = half_pi * std::erfc(std::abs(x));
    double value = std::cos(delta) / std::sin(delta);
    return x > 0 ? value : -value;
}

double tan_erf_derivative(double x) {
    double t = tan_erf(x);
    return std::sqrt(std::numbers::pi) * std::exp(-x * x) * (1.0 + t * t);
}

double erf_inv(double y) {
    return boost::math::erf_inv(y);
}

}  // namespace detail

const char* to_string(MonotonicityCertificate::Kind k) {
    switch (k) {
        case MonotonicityCertificate::Kind::Monotone: return "Monotone";
        case MonotonicityCertificate::Kind::NonMonotone: return "NonMonotone";
        case MonotonicityCertificate::Kind::Unchecked: return "Unchecked";
    }
    return "Unchecked";
}

MonotonicityCertificate check_monotonicity(const std::function<double(double)>& derivative_fn,
                                           double half_range, int sample_count) {
    if (sample_count < 1000) {
        throw std::invalid_argument("check_monotonicity: need at least 1000 samples");
    }
    const double step = 2.0 * half_range / (sample_count - 1);
    for (int i = 0; i < sample_count; ++i) {
        double x = -half_range + i * step;
        if (!(derivative_fn(x) > 1e-12)) {
            return {MonotonicityCertificate::Kind::NonMonotone, x};
        }
    }
    return {MonotonicityCertificate::Kind::Monotone, 0.0};
}

Diffeomorphism identity_map() {
    Diffeomorphism d;
    d.forward = [](double x) { return x; };
    d.inverse = [](double y) { return y; };
    d.jacobian = [](double) { return 1.0; };
    d.working_half_range = 1e15;
    d.certificate = {MonotonicityCertificate::Kind::Monotone, 0.0};
    d.name = "identity";
    return d;
}

Diffeomorphism affine_map(double scale, double offset) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("affine_map: scale must be positive for orientation");
    }
    Diffeomorphism d;
    d.forward = [=](double x) { return scale * x + offset; };
    d.inverse = [=](double y) { return (y - offset) / scale; };
    d.jacobian = [=](double) { return scale; };
    d.working_half_range = 1e15;
    d.certificate = {MonotonicityCertificate::Kind::Monotone, 0.0};
    std::ostringstream os;
    os << "affine(" << scale << "x + " << offset << ")";
    d.name = os.str();
    return d;
}

Diffeomorphism gauss_to_cauchy_map() {
    constexpr double kOverflowGuard = 4.1;  // forward passes ~1e8 here
    Diffeomorphism d;
    d.forward = [](double x) {
        if (std::abs(x) > kOverflowGuard) {
            throw std::range_error(
                "gauss_to_cauchy: |x| = " + std::to_string(std::abs(x)) +
                " is past the overflow guard 4.1 (forward value exceeds ~1e8)");
        }
        return detail::tan_erf(x);
    };
    d.inverse = [](double y) {
        return detail::erf_inv(2.0 / std::numbers::pi * std::atan(y));
    };
    d.jacobian = [](double x) { return detail::tan_erf_derivative(x); };
    d.working_half_range = 4.0;
    d.certificate = check_monotonicity(d.jacobian, d.working_half_range, 4096);
    d.name = "gauss-to-cauchy";
    return d;
}

Diffeomorphism compose(const Diffeomorphism& f, const Diffeomorphism& g) {
    Diffeomorphism d;
    auto f_fwd = f.forward, g_fwd = g.forward;
    auto f_inv = f.inverse, g_inv = g.inverse;
    auto f_jac = f.jacobian, g_jac = g.jacobian;
    d.forward = [=](double x) { return f_fwd(g_fwd(x)); };
    d.inverse = [=](double y) { return g_inv(f_inv(y)); };
    d.jacobian = [=](double x) { return f_jac(g_fwd(x)) * g_jac(x); };
    // stay inside both factors' ranges
    double wr = g.working_half_range;
    for (double sign : {-1.0, 1.0}) {
        double image = std::abs(g.forward(sign * wr));
        if (image > f.working_half_range) {
            wr = std::min(wr, std::abs(g.inverse(sign * f.working_half_range)));
        }
    }
    d.working_half_range = wr;
    d.certificate = check_monotonicity(d.jacobian, wr, 4096);
    d.name = f.name + " . " + g.name;
    return d;
}

Diffeomorphism inverse_of(const Diffeomorphism& f) {
    Diffeomorphism d;
    auto fwd = f.forward, inv = f.inverse, jac = f.jacobian;
    d.forward = inv;
    d.inverse = fwd;
    d.jacobian = [=](double y) { return 1.0 / jac(inv(y)); };
    double lo = f.forward(-f.working_half_range);
    double hi = f.forward(f.working_half_range);
    d.working_half_range = std::min(std::abs(lo), std::abs(hi));
    d.certificate = f.certificate;
    d.name = f.name + "^{-1}";
    return d;
}

namespace {

complex_t cubic_interpolate(const GridWavefunction& psi, double x) {
    const Grid& g = psi.grid;
    const int n = g.point_count;
    if (x < g.point(0) || x > g.point(n - 1)) return 0.0;  // outside the truncated window
    double s = (x - g.point(0)) / g.dx();
    int i0 = static_cast<int>(std::floor(s));
    if (i0 >= n - 1) i0 = n - 2;
    double u = s - i0;
    // Lagrange basis on the 4-point stencil {-1, 0, 1, 2}; exact at the nodes
    double w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
    double w1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    double w2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    double w3 = (u + 1.0) * u * (u - 1.0) / 6.0;
    auto at = [&](int i) -> complex_t {
        return (i < 0 || i >= n) ? complex_t(0.0) : psi.samples[i];
    };
    return w0 * at(i0 - 1) + w1 * at(i0) + w2 * at(i0 + 1) + w3 * at(i0 + 2);
}

void require_monotone(const Diffeomorphism& map) {
    if (map.certificate.kind != MonotonicityCertificate::Kind::Monotone) {
        std::ostringstream os;
        os << "induced unitary refused: map '" << map.name << "' certificate is "
           << to_string(map.certificate.kind);
        if (map.certificate.kind == MonotonicityCertificate::Kind::NonMonotone) {
            os << " (derivative fails at x = " << map.certificate.witness << ")";
        }
        throw std::invalid_argument(os.str());
    }
}

void require_target_in_image(const Diffeomorphism& map, const Grid& target_grid) {
    double lo = map.forward(-map.working_half_range);
    double hi = map.forward(map.working_half_range);
    double t_lo = target_grid.point(0);
    double t_hi = target_grid.point(target_grid.point_count - 1);
    if (t_lo < lo || t_hi > hi) {
        std::ostringstream os;
        os << "target grid [" << t_lo << ", " << t_hi << "] leaves the image [" << lo << ", "
           << hi << "] of the working range of '" << map.name << "'";
        throw std::range_error(os.str());
    }
}

}  // namespace

GridWavefunction induced_unitary_apply(const Diffeomorphism& map, const GridWavefunction& psi,
                                       const Grid& target_grid) {
    require_monotone(map);
    require_target_in_image(map, target_grid);
    std::vector<complex_t> out(target_grid.point_count);
    for (int k = 0; k < target_grid.point_count; ++k) {
        double y = target_grid.point(k);
        double x = map.inverse(y);
        double j = map.jacobian(x);
        out[k] = cubic_interpolate(psi, x) / std::sqrt(std::abs(j));
    }
    return GridWavefunction(target_grid, std::move(out));
}

std::function<complex_t(double)> induced_state(const Diffeomorphism& map,
                                               const AnalyticProfile& base) {
    require_monotone(map);
    auto inv = map.inverse;
    auto jac = map.jacobian;
    return [=](double y) -> complex_t {
        double x = inv(y);
        return base(x) / std::sqrt(std::abs(jac(x)));
    };
}

namespace {

// integral of |w|^2 from 0 to upper, trapezoid with a linear partial bin
double cumulative_mass(const GridWavefunction& w, double upper) {
    const Grid& g = w.grid;
    const int n = g.point_count;
    const int zero_index = n / 2;  // x_{N/2} = 0 on the endpoint-exclusive layout
    auto density = [&](int k) { return std::norm(w.samples[k]); };

    double sign = upper >= 0.0 ? 1.0 : -1.0;
    double target = std::abs(upper);
    double acc = 0.0;
    int k = zero_index;
    int step = upper >= 0.0 ? 1 : -1;
    while (true) {
        int next = k + step;
        if (next < 0 || next >= n) break;
        double span = std::abs(g.point(next)) - std::abs(g.point(k));
        if (std::abs(g.point(next)) >= target) {
            double frac = (target - std::abs(g.point(k))) / span;
            acc += frac * span * 0.5 * (density(k) + density(next));
            break;
        }
        acc += span * 0.5 * (density(k) + density(next));
        k = next;
    }
    return sign * acc;
}

}  // namespace

PushforwardReport pushforward_density_check(const Diffeomorphism& map,
                                            const GridWavefunction& psi,
                                            const Grid& target_grid,
                                            const std::vector<double>& sample_points) {
    GridWavefunction phi = induced_unitary_apply(map, psi, target_grid);
    PushforwardReport report;
    for (double x : sample_points) {
        PushforwardRow row;
        row.x = x;
        row.mapped = map.forward(x);
        row.target_mass = cumulative_mass(phi, row.mapped);
        row.source_mass = cumulative_mass(psi, x);
        row.gap = std::abs(row.target_mass - row.source_mass);
        report.max_gap = std::max(report.max_gap, row.gap);
        report.rows.push_back(row);
    }
    return report;
}

// ---- evolution family ----

double EvolutionFamily::map_value(double x, double t) const {
    double c = std::cos(omega * t);
    double s = std::sin(omega * t);
    if (std::abs(s) < 1e-12) return c * x;
    return c * x + s * detail::tan_erf(x);
}

double EvolutionFamily::map_derivative(double x, double t) const {
    double c = std::cos(omega * t);
    double s = std::sin(omega * t);
    if (std::abs(s) < 1e-12) return c;
    return c + s * detail::tan_erf_derivative(x);
}

Diffeomorphism evolution_map(const EvolutionFamily& family, double t) {
    const double c = std::cos(family.omega * t);
    const double s = std::sin(family.omega * t);
    Diffeomorphism d;
    std::ostringstream os;
    os << "evolution(wt=" << family.omega * t << ")";
    d.name = os.str();

    if (std::abs(s) < 1e-12) {
        // pure rescaling branch; orientation decides the certificate
        d.forward = [=](double x) { return c * x; };
        d.inverse = [=](double y) { return y / c; };
        d.jacobian = [=](double) { return c; };
        d.working_half_range = c > 0.0 ? 1e15 : 4.0;
        d.certificate = check_monotonicity(d.jacobian, 4.0, 4096);
        return d;
    }

    constexpr double kInverseBracket = 5.8;
    d.forward = [=](double x) { return c * x + s * detail::tan_erf(x); };
    d.jacobian = [=](double x) { return c + s * detail::tan_erf_derivative(x); };
    auto forward = d.forward;
    d.inverse = [=](double y) {
        double lo = -kInverseBracket, hi = kInverseBracket;
        // certified-monotone branch: plain bisection is unconditionally safe
        for (int iter = 0; iter < 200 && hi - lo > 1e-10; ++iter) {
            double mid = 0.5 * (lo + hi);
            if (forward(mid) < y) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    d.working_half_range = 4.0;
    d.certificate = check_monotonicity(d.jacobian, d.working_half_range, 4096);
    return d;
}

std::vector<EvolutionPoint> evolve_and_track(const EvolutionFamily& family,
                                             const AnalyticProfile& initial_state,
                                             const std::vector<double>& times,
                                             const std::vector<PolynomialObservable>& observables,
                                             const std::vector<double>& radii,
                                             double dx, const Grid& source_grid) {
    std::vector<Diffeomorphism> maps;
    maps.reserve(times.size());
    std::vector<double> offenders;
    for (double t : times) {
        maps.push_back(evolution_map(family, t));
        if (maps.back().certificate.kind != MonotonicityCertificate::Kind::Monotone) {
            offenders.push_back(t);
        }
    }
    if (!offenders.empty()) {
        std::ostringstream os;
        os << "evolve_and_track: non-monotone map at t =";
        for (double t : offenders) os << " " << t;
        throw std::invalid_argument(os.str());
    }

    GridWavefunction psi0 = sample(initial_state, source_grid);
    std::vector<EvolutionPoint> series;
    series.reserve(times.size());
    for (size_t i = 0; i < times.size(); ++i) {
        EvolutionPoint point;
        point.t = times[i];
        point.certificate = maps[i].certificate;
        for (const auto& obs : observables) {
            SweepData sweep;
            sweep.observable = obs;
            sweep.dx = dx;
            for (double radius : radii) {
                int n = static_cast<int>(std::lround(2.0 * radius / dx));
                if (n % 2 != 0) ++n;
                Grid g(radius, std::max(n, 16));
                GridWavefunction psi_t = induced_unitary_apply(maps[i], psi0, g);
                Expectation e = expectation(psi_t, obs);
                sweep.points.push_back({radius, g.point_count, e.value, e.abs_integral});
            }
            point.verdicts.push_back(classify_divergence(sweep));
        }
        series.push_back(std::move(point));
    }
    return series;
}

}  // namespace qlab
