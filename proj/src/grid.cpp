#include "qlab/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qlab {

namespace units {
double hbar = 1.0;
}

Grid::Grid(double half_width_, int point_count_)
    : half_width(half_width_), point_count(point_count_) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw std::invalid_argument("Grid: half_width must be positive and finite, got " +
                                    std::to_string(half_width));
    }
    if (point_count < 16 || point_count % 2 != 0) {
        throw std::invalid_argument("Grid: point_count must be even and >= 16, got " +
                                    std::to_string(point_count));
    }
}

std::vector<double> Grid::points() const {
    std::vector<double> xs(point_count);
    for (int k = 0; k < point_count; ++k) xs[k] = point(k);
    return xs;
}

Grid Grid::conjugate() const {
    return Grid(std::numbers::pi / dx(), point_count);
}

bool Grid::operator==(const Grid& other) const {
    return half_width == other.half_width && point_count == other.point_count;
}

std::string describe(const Grid& g) {
    std::ostringstream os;
    os << "Grid(L=" << g.half_width << ", N=" << g.point_count << ")";
    return os.str();
}

GridWavefunction::GridWavefunction(Grid g, std::vector<complex_t> s)
    : grid(g), samples(std::move(s)) {
    if (static_cast<int>(samples.size()) != grid.point_count) {
        throw std::invalid_argument("GridWavefunction: sample count " +
                                    std::to_string(samples.size()) + " does not match " +
                                    describe(grid));
    }
}

// ---- analytic profiles ----

AnalyticProfile::AnalyticProfile(Kind k, int order, double radius, std::string name)
    : kind_(k), order_(order), radius_(radius), name_(std::move(name)) {}

AnalyticProfile AnalyticProfile::gaussian() {
    return AnalyticProfile(Kind::Gaussian, 0, 0.0, "gaussian");
}

AnalyticProfile AnalyticProfile::cauchy_sqrt() {
    return AnalyticProfile(Kind::CauchySqrt, 0, 0.0, "cauchy-sqrt");
}

AnalyticProfile AnalyticProfile::hermite(int n) {
    if (n < 0) throw std::invalid_argument("hermite: order must be nonnegative");
    if (n > 60) {
        throw std::invalid_argument(
            "hermite: order " + std::to_string(n) +
            " exceeds the stable-evaluation bound of 60 for the normalized recurrence");
    }
    return AnalyticProfile(Kind::Hermite, n, 0.0, "hermite(" + std::to_string(n) + ")");
}

AnalyticProfile AnalyticProfile::bump(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("bump: radius must be positive");
    std::ostringstream os;
    os << "bump(" << radius << ")";
    return AnalyticProfile(Kind::Bump, 0, radius, os.str());
}

double AnalyticProfile::operator()(double x) const {
    constexpr double pi = std::numbers::pi;
    switch (kind_) {
        case Kind::Gaussian:
            return std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
        case Kind::CauchySqrt:
            return 1.0 / std::sqrt(pi * (x * x + 1.0));
        case Kind::Hermite: {
            // normalized recurrence: h_n = x*sqrt(2/n)*h_{n-1} - sqrt((n-1)/n)*h_{n-2}
            double h0 = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
            if (order_ == 0) return h0;
            double h1 = std::sqrt(2.0) * x * h0;
            for (int m = 2; m <= order_; ++m) {
                double h2 = x * std::sqrt(2.0 / m) * h1 - std::sqrt((m - 1.0) / m) * h0;
                h0 = h1;
                h1 = h2;
            }
            return h1;
        }
        case Kind::Bump: {
            double u = x / radius_;
            double t = 1.0 - u * u;
            if (t <= 0.0) return 0.0;
            return std::exp(1.0 - 1.0 / t);
        }
    }
    return 0.0;
}

GridWavefunction sample(const AnalyticProfile& profile, const Grid& grid) {
    std::vector<complex_t> s(grid.point_count);
    for (int k = 0; k < grid.point_count; ++k) s[k] = profile(grid.point(k));
    return GridWavefunction(grid, std::move(s));
}

GridWavefunction sample(const std::function<complex_t(double)>& f, const Grid& grid) {
    std::vector<complex_t> s(grid.point_count);
    for (int k = 0; k < grid.point_count; ++k) s[k] = f(grid.point(k));
    return GridWavefunction(grid, std::move(s));
}

// ---- quadrature ----

namespace detail {

std::vector<double> quadrature_weights(const Grid& g) {
    const int n = g.point_count;
    const double h = g.dx() / 3.0;
    std::vector<double> w(n, 0.0);
    // Simpson over x_1..x_{N-1}; x_0 = -L has no mirror point and is skipped.
    w[1] = h;
    w[n - 1] = h;
    for (int k = 2; k <= n - 2; ++k) w[k] = (k % 2 == 0) ? 4.0 * h : 2.0 * h;
    return w;
}

void fft(std::vector<complex_t>& v, bool inverse) {
    static std::mutex planner_mutex;
    const int n = static_cast<int>(v.size());
    fftw_complex* data = reinterpret_cast<fftw_complex*>(v.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_1d(n, data, data, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    if (inverse) {
        for (auto& c : v) c /= static_cast<double>(n);
    }
}

}  // namespace detail

complex_t inner_product(const GridWavefunction& a, const GridWavefunction& b) {
    if (!(a.grid == b.grid)) {
        throw std::invalid_argument("inner_product: grid mismatch between " + describe(a.grid) +
                                    " and " + describe(b.grid));
    }
    const auto w = detail::quadrature_weights(a.grid);
    complex_t acc = 0.0;
    for (int k = 0; k < a.grid.point_count; ++k) {
        acc += w[k] * std::conj(a.samples[k]) * b.samples[k];
    }
    return acc;
}

double norm(const GridWavefunction& a) {
    double n2 = std::real(inner_product(a, a));
    return std::sqrt(std::max(0.0, n2));
}

GridWavefunction normalize(const GridWavefunction& a) {
    double n = norm(a);
    if (n <= 1e-12) {
        throw std::runtime_error("normalize: degenerate state, norm " + std::to_string(n));
    }
    std::vector<complex_t> s(a.samples);
    for (auto& c : s) c /= n;
    return GridWavefunction(a.grid, std::move(s));
}

double edge_magnitude(const GridWavefunction& a) {
    const int n = a.grid.point_count;
    double m = 0.0;
    for (int k = 0; k < 4; ++k) {
        m = std::max(m, std::abs(a.samples[k]));
        m = std::max(m, std::abs(a.samples[n - 1 - k]));
    }
    return m;
}

GridWavefunction derivative(const GridWavefunction& a, int order) {
    if (order < 0 || order > 8) {
        throw std::invalid_argument("derivative: order must be in [0, 8], got " +
                                    std::to_string(order));
    }
    if (order == 0) return a;

    const int n = a.grid.point_count;
    std::vector<complex_t> c(a.samples);
    detail::fft(c, false);

    // Coefficients at or below the roundoff floor carry no signal; multiplying
    // them by k^order would amplify noise, so they are zeroed first.
    double cmax = 0.0;
    for (const auto& z : c) cmax = std::max(cmax, std::abs(z));
    const double floor = 1e-14 * cmax;
    for (auto& z : c) {
        if (std::abs(z) < floor) z = 0.0;
    }

    const double dk = 2.0 * std::numbers::pi / (n * a.grid.dx());
    for (int j = 0; j < n; ++j) {
        double k = dk * ((j < n / 2) ? j : j - n);
        if (j == n / 2 && order % 2 == 1) {
            c[j] = 0.0;  // unpaired Nyquist mode has no odd-derivative counterpart
            continue;
        }
        c[j] *= std::pow(complex_t(0.0, k), order);
    }
    detail::fft(c, true);
    return GridWavefunction(a.grid, std::move(c));
}

GridWavefunction fourier_transform(const GridWavefunction& a) {
    const int n = a.grid.point_count;
    const double dx = a.grid.dx();
    std::vector<complex_t> u(n);
    for (int m = 0; m < n; ++m) u[m] = (m % 2 == 0) ? a.samples[m] : -a.samples[m];
    detail::fft(u, false);

    // phase bookkeeping for x_m = -L + m dx against k_j = -K + j dk
    const double scale = dx / std::sqrt(2.0 * std::numbers::pi);
    const double sign = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j) {
        double s = (j % 2 == 0) ? sign : -sign;
        u[j] *= scale * s;
    }
    return GridWavefunction(a.grid.conjugate(), std::move(u));
}

GridWavefunction operator*(complex_t c, const GridWavefunction& a) {
    std::vector<complex_t> s(a.samples);
    for (auto& z : s) z *= c;
    return GridWavefunction(a.grid, std::move(s));
}

GridWavefunction operator+(const GridWavefunction& a, const GridWavefunction& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("operator+: grid mismatch");
    std::vector<complex_t> s(a.samples);
    for (int k = 0; k < a.grid.point_count; ++k) s[k] += b.samples[k];
    return GridWavefunction(a.grid, std::move(s));
}

GridWavefunction operator-(const GridWavefunction& a, const GridWavefunction& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("operator-: grid mismatch");
    std::vector<complex_t> s(a.samples);
    for (int k = 0; k < a.grid.point_count; ++k) s[k] -= b.samples[k];
    return GridWavefunction(a.grid, std::move(s));
}

GridWavefunction apply_position_power(const GridWavefunction& a, int n) {
    if (n < 0) throw std::invalid_argument("apply_position_power: negative power");
    std::vector<complex_t> s(a.samples);
    for (int k = 0; k < a.grid.point_count; ++k) {
        s[k] *= std::pow(a.grid.point(k), n);
    }
    return GridWavefunction(a.grid, std::move(s));
}

}  // namespace qlab
