#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

namespace qlab {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Unit vector in C^d, 2 <= d <= 64.
class PureState {
  public:
    explicit PureState(Vector amplitudes);
    static PureState from_unnormalized(Vector v);

    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const Vector& amplitudes() const { return amplitudes_; }
    Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

  private:
    Vector amplitudes_;
};

std::complex<double> overlap(const PureState& a, const PureState& b);

/// Hermitian, positive semidefinite, unit-trace operator. Construction
/// validates all three invariants.
class DensityMatrix {
  public:
    static DensityMatrix from_matrix(Matrix m);
    static DensityMatrix pure(const PureState& psi);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }

    /// ascending eigenvalues (clamped at -1e-10 tolerance) with eigenvectors
    Eigen::SelfAdjointEigenSolver<Matrix> eigensystem() const;

  private:
    explicit DensityMatrix(Matrix m) : matrix_(std::move(m)) {}
    Matrix matrix_;
};

/// Strictly convex mixture: positive weights summing to one over pure states
/// of a common dimension.
struct ConvexDecomposition {
    std::vector<double> weights;
    std::vector<PureState> states;

    ConvexDecomposition(std::vector<double> w, std::vector<PureState> s);
    int dim() const { return states.front().dim(); }
};

DensityMatrix density_from_mixture(const ConvexDecomposition& decomp);

/// -sum lambda log lambda over the spectrum, natural log, 0 log 0 := 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of (|psi><psi| + |phi><phi|)/2.
double equal_mixture_entropy(const PureState& psi, const PureState& phi);

/// f(p) = -(1+p)/2 log((1+p)/2) - (1-p)/2 log((1-p)/2) for p = |<psi|phi>|.
/// f(1) = 0, f(0) = log 2, strictly decreasing on [0, 1].
double entropy_from_overlap(double p);

/// Bisection inverse of entropy_from_overlap; |f(p) - I| <= 1e-12.
double overlap_from_entropy(double entropy);

/// Given psi = sum c_i phi_i, rebuild the decomposition with arbitrary nonzero
/// target coefficients: phi_hat_i = (c_i/c_hat_i) phi_i stays on the ray of
/// phi_i and sum c_hat_i phi_hat_i = psi. The outputs are generally not unit
/// vectors, which is the point.
std::vector<Vector> rescale_decomposition(
    const PureState& psi,
    const std::vector<std::pair<std::complex<double>, PureState>>& terms,
    const std::vector<std::complex<double>>& targets);

struct SpanComparison {
    bool mixtures_equal = false;
    bool spans_equal = false;
    double mixture_distance = 0.0;    // Frobenius
    double projector_distance = 0.0;  // Frobenius between column-space projectors
    int rank_a = 0;
    int rank_b = 0;
};

/// Compares the mixtures and the spans of two decompositions. Asserts the
/// implication mixtures_equal => spans_equal and throws std::logic_error on a
/// counterexample.
SpanComparison spans_equal_via_mixture(const ConvexDecomposition& a,
                                       const ConvexDecomposition& b);

/// Expresses rho as a strictly convex mixture whose first state is psi.
/// Walks the line from |psi><psi| through rho to the boundary of the
/// positive-semidefinite set (bisection on the smallest eigenvalue), then
/// eigendecomposes the remainder. Requires <psi|rho|psi> > 1e-8 and psi inside
/// the support of rho.
ConvexDecomposition decompose_including(const DensityMatrix& rho, const PureState& psi);

struct DualityWitness {
    Matrix rho;
    ConvexDecomposition phi_decomposition;  // mixture over the supplied states
    ConvexDecomposition psi_decomposition;  // second decomposition, contains psi first
    double reconstruction_residual = 0.0;   // Frobenius gap between the two mixtures
    double span_residual = 0.0;             // |psi - P_span psi|
};

/// Forward direction: psi in span{phis} yields one mixture over the phis and,
/// through decompose_including, a second decomposition of the same density
/// operator that contains psi.
DualityWitness superposition_duality(const PureState& psi, const std::vector<PureState>& phis);

struct DualityReverseCheck {
    bool mixtures_equal = false;
    double mixture_distance = 0.0;
    double span_residual = 0.0;
    bool psi_in_span = false;
};

/// Reverse direction: two decompositions of one density operator, the second
/// containing psi, certify that psi lies in the span of the first set.
DualityReverseCheck superposition_duality_reverse(const ConvexDecomposition& phi_decomposition,
                                                  const ConvexDecomposition& psi_decomposition,
                                                  const PureState& psi);

}  // namespace qlab
