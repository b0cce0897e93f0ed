#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace qlab {

using complex_t = std::complex<double>;

namespace units {
// Planck constant appearing in P = -i*hbar*d/dx. Dimensionless runs keep it at 1.
extern double hbar;
}  // namespace units

/// Uniform truncated grid on [-L, L), endpoint-exclusive so spectral
/// operations see a clean periodic layout: x_k = -L + k*dx, k = 0..N-1.
struct Grid {
    double half_width = 0.0;  // L
    int point_count = 0;      // N, even, >= 16

    Grid(double half_width_, int point_count_);

    double dx() const { return 2.0 * half_width / point_count; }
    double point(int k) const { return -half_width + k * dx(); }
    std::vector<double> points() const;

    /// Conjugate (momentum) grid: same point count, half-width K = pi/dx.
    Grid conjugate() const;

    bool operator==(const Grid& other) const;
};

std::string describe(const Grid& g);

/// Complex samples of a state on a grid. Values are immutable by convention;
/// every operation returns a fresh wavefunction.
struct GridWavefunction {
    Grid grid;
    std::vector<complex_t> samples;

    GridWavefunction(Grid g, std::vector<complex_t> s);
};

/// Catalog of closed-form states with exact pointwise evaluators.
class AnalyticProfile {
  public:
    enum class Kind { Gaussian, CauchySqrt, Hermite, Bump };

    static AnalyticProfile gaussian();     // sqrt(exp(-x^2)/sqrt(pi))
    static AnalyticProfile cauchy_sqrt();  // sqrt(1/(pi*(x^2+1)))
    static AnalyticProfile hermite(int n);  // n-th normalized Hermite function, n <= 60
    static AnalyticProfile bump(double radius);  // smooth, zero outside |x| <= radius

    double operator()(double x) const;
    Kind kind() const { return kind_; }
    int hermite_order() const { return order_; }
    double bump_radius() const { return radius_; }
    const std::string& name() const { return name_; }

  private:
    AnalyticProfile(Kind k, int order, double radius, std::string name);
    Kind kind_;
    int order_;
    double radius_;
    std::string name_;
};

GridWavefunction sample(const AnalyticProfile& profile, const Grid& grid);
GridWavefunction sample(const std::function<complex_t(double)>& f, const Grid& grid);

/// Quadrature approximation of the L2 pairing over [-L, L]; conjugate-linear
/// in the first argument. Throws std::invalid_argument on grid mismatch.
complex_t inner_product(const GridWavefunction& a, const GridWavefunction& b);

double norm(const GridWavefunction& a);
GridWavefunction normalize(const GridWavefunction& a);

/// Spectral derivative via the Fourier multiplier (ik)^order, order <= 8.
/// Edge decay of the input is the caller's lookout; see edge_magnitude().
GridWavefunction derivative(const GridWavefunction& a, int order);

/// Largest |sample| among the outermost points on each side; values above
/// ~1e-8 mean derivative/transform results are truncation-limited.
double edge_magnitude(const GridWavefunction& a);

/// Unitary-convention transform (1/sqrt(2pi)) * integral e^{-ikx} psi(x) dx,
/// returned on the conjugate grid.
GridWavefunction fourier_transform(const GridWavefunction& a);

// elementwise helpers
GridWavefunction operator*(complex_t c, const GridWavefunction& a);
GridWavefunction operator+(const GridWavefunction& a, const GridWavefunction& b);
GridWavefunction operator-(const GridWavefunction& a, const GridWavefunction& b);

/// Pointwise multiplication by x^n.
GridWavefunction apply_position_power(const GridWavefunction& a, int n);

namespace detail {
// In-place DFT, any length (Bluestein for non powers of two).
void fft(std::vector<complex_t>& v, bool inverse);
// Quadrature weights: composite Simpson over the symmetric interior nodes
// x_1..x_{N-1}; the unpaired node x_0 = -L carries zero weight so that odd
// integrands cancel exactly.
std::vector<double> quadrature_weights(const Grid& g);
}  // namespace detail

}  // namespace qlab
