#include "qlab/mixtures.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qlab {

namespace {
constexpr double kUnitNormTol = 1e-12;
constexpr double kWeightSumTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kHermitianTol = 1e-12;
}  // namespace

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    const int d = static_cast<int>(amplitudes_.size());
    if (d < 2 || d > 64) {
        throw std::invalid_argument("PureState: dimension must be in [2, 64], got " +
                                    std::to_string(d));
    }
    double n = amplitudes_.norm();
    if (std::abs(n - 1.0) > kUnitNormTol) {
        throw std::invalid_argument("PureState: vector is not normalized, |norm - 1| = " +
                                    std::to_string(std::abs(n - 1.0)));
    }
}

PureState PureState::from_unnormalized(Vector v) {
    double n = v.norm();
    if (n <= 1e-12) throw std::invalid_argument("PureState: cannot normalize a zero vector");
    return PureState(v / n);
}

std::complex<double> overlap(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("overlap: dimension mismatch");
    }
    return a.amplitudes().dot(b.amplitudes());  // Eigen dot conjugates the left argument
}

DensityMatrix DensityMatrix::from_matrix(Matrix m) {
    if (m.rows() != m.cols() || m.rows() < 2) {
        throw std::invalid_argument("DensityMatrix: matrix must be square with dim >= 2");
    }
    double herm_gap = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_gap > kHermitianTol) {
        throw std::invalid_argument("DensityMatrix: not Hermitian, max |rho - rho^+| = " +
                                    std::to_string(herm_gap));
    }
    double trace_gap = std::abs(m.trace() - std::complex<double>(1.0, 0.0));
    if (trace_gap > kWeightSumTol) {
        throw std::invalid_argument("DensityMatrix: trace differs from 1 by " +
                                    std::to_string(trace_gap));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -kPsdTol) {
        throw std::invalid_argument("DensityMatrix: not positive semidefinite, min eigenvalue " +
                                    std::to_string(min_eig));
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
    return DensityMatrix(psi.projector());
}

Eigen::SelfAdjointEigenSolver<Matrix> DensityMatrix::eigensystem() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("DensityMatrix: eigendecomposition failed");
    }
    if (es.eigenvalues().minCoeff() < -kPsdTol) {
        throw std::invalid_argument("DensityMatrix: eigenvalue below -1e-10, invalid density");
    }
    return es;
}

ConvexDecomposition::ConvexDecomposition(std::vector<double> w, std::vector<PureState> s)
    : weights(std::move(w)), states(std::move(s)) {
    if (weights.empty() || weights.size() != states.size()) {
        throw std::invalid_argument("ConvexDecomposition: weight/state counts differ");
    }
    double sum = 0.0;
    for (double x : weights) {
        if (!(x > 0.0)) {
            throw std::invalid_argument("ConvexDecomposition: weights must be strictly positive");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol) {
        throw std::invalid_argument("ConvexDecomposition: weights sum to " + std::to_string(sum));
    }
    int d = states.front().dim();
    for (const auto& st : states) {
        if (st.dim() != d) {
            throw std::invalid_argument("ConvexDecomposition: mixed state dimensions");
        }
    }
}

DensityMatrix density_from_mixture(const ConvexDecomposition& decomp) {
    const int d = decomp.dim();
    Matrix rho = Matrix::Zero(d, d);
    for (size_t i = 0; i < decomp.weights.size(); ++i) {
        rho += decomp.weights[i] * decomp.states[i].projector();
    }
    return DensityMatrix::from_matrix(std::move(rho));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    auto es = rho.eigensystem();
    double s = 0.0;
    for (int i = 0; i < rho.dim(); ++i) {
        double lambda = es.eigenvalues()[i];
        if (lambda > 0.0) s -= lambda * std::log(lambda);
    }
    return s;
}

double equal_mixture_entropy(const PureState& psi, const PureState& phi) {
    if (psi.dim() != phi.dim()) {
        throw std::invalid_argument("equal_mixture_entropy: dimension mismatch");
    }
    Matrix rho = 0.5 * psi.projector() + 0.5 * phi.projector();
    return von_neumann_entropy(DensityMatrix::from_matrix(std::move(rho)));
}

double entropy_from_overlap(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("entropy_from_overlap: p must lie in [0, 1], got " +
                                std::to_string(p));
    }
    double a = 0.5 * (1.0 + p);
    double b = 0.5 * (1.0 - p);
    double s = 0.0;
    if (a > 0.0) s -= a * std::log(a);
    if (b > 0.0) s -= b * std::log(b);
    return s;
}

double overlap_from_entropy(double entropy) {
    const double ln2 = std::log(2.0);
    if (!(entropy >= 0.0 && entropy <= ln2)) {
        throw std::domain_error("overlap_from_entropy: entropy must lie in [0, ln 2], got " +
                                std::to_string(entropy));
    }
    // f is strictly decreasing with f(0) = ln 2, f(1) = 0
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (entropy_from_overlap(mid) > entropy) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-16) break;
    }
    double p = 0.5 * (lo + hi);
    if (std::abs(entropy_from_overlap(p) - entropy) > 1e-12) {
        throw std::runtime_error("overlap_from_entropy: bisection failed to meet tolerance");
    }
    return p;
}

std::vector<Vector> rescale_decomposition(
    const PureState& psi,
    const std::vector<std::pair<std::complex<double>, PureState>>& terms,
    const std::vector<std::complex<double>>& targets) {
    if (terms.empty() || terms.size() != targets.size()) {
        throw std::invalid_argument("rescale_decomposition: term/target counts differ");
    }
    const int d = psi.dim();
    Vector reconstructed = Vector::Zero(d);
    for (const auto& [c, phi] : terms) {
        if (phi.dim() != d) {
            throw std::invalid_argument("rescale_decomposition: dimension mismatch");
        }
        if (std::abs(c) == 0.0) {
            throw std::invalid_argument("rescale_decomposition: original coefficient is zero");
        }
        reconstructed += c * phi.amplitudes();
    }
    double residual = (reconstructed - psi.amplitudes()).norm();
    if (residual > 1e-10) {
        throw std::invalid_argument(
            "rescale_decomposition: supplied terms do not reconstruct psi, residual " +
            std::to_string(residual));
    }
    for (const auto& t : targets) {
        if (std::abs(t) == 0.0) {
            throw std::invalid_argument("rescale_decomposition: target coefficient is zero");
        }
    }
    std::vector<Vector> out;
    out.reserve(terms.size());
    Vector check = Vector::Zero(d);
    for (size_t i = 0; i < terms.size(); ++i) {
        Vector hat = (terms[i].first / targets[i]) * terms[i].second.amplitudes();
        check += targets[i] * hat;
        out.push_back(std::move(hat));
    }
    double out_residual = (check - psi.amplitudes()).norm();
    if (out_residual > 1e-10) {
        throw std::runtime_error("rescale_decomposition: rebuilt sum misses psi by " +
                                 std::to_string(out_residual));
    }
    return out;
}

namespace {

// Projector onto the column space of the states, rank decided by singular
// values of the stacked list (threshold 1e-9).
struct SpanProjector {
    Matrix projector;
    int rank;
};

SpanProjector span_projector(const std::vector<PureState>& states) {
    const int d = states.front().dim();
    const int k = static_cast<int>(states.size());
    Matrix stacked(d, k);
    for (int i = 0; i < k; ++i) stacked.col(i) = states[i].amplitudes();
    Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinU);
    constexpr double kSingularTol = 1e-9;
    Matrix proj = Matrix::Zero(d, d);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()[i] > kSingularTol) {
            Vector u = svd.matrixU().col(i);
            proj += u * u.adjoint();
            ++rank;
        }
    }
    return {std::move(proj), rank};
}

}  // namespace

SpanComparison spans_equal_via_mixture(const ConvexDecomposition& a,
                                       const ConvexDecomposition& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("spans_equal_via_mixture: dimension mismatch");
    }
    SpanComparison cmp;
    Matrix rho_a = density_from_mixture(a).matrix();
    Matrix rho_b = density_from_mixture(b).matrix();
    cmp.mixture_distance = (rho_a - rho_b).norm();
    cmp.mixtures_equal = cmp.mixture_distance <= 1e-9;

    SpanProjector pa = span_projector(a.states);
    SpanProjector pb = span_projector(b.states);
    cmp.rank_a = pa.rank;
    cmp.rank_b = pb.rank;
    cmp.projector_distance = (pa.projector - pb.projector).norm();
    cmp.spans_equal = pa.rank == pb.rank && cmp.projector_distance <= 1e-8;

    if (cmp.mixtures_equal && !cmp.spans_equal) {
        std::ostringstream os;
        os << "spans_equal_via_mixture: equal mixtures with unequal spans (projector gap "
           << cmp.projector_distance << ")";
        throw std::logic_error(os.str());
    }
    return cmp;
}

ConvexDecomposition decompose_including(const DensityMatrix& rho, const PureState& psi) {
    if (psi.dim() != rho.dim()) {
        throw std::invalid_argument("decompose_including: dimension mismatch");
    }
    const Vector& v = psi.amplitudes();
    double bracket = std::real(v.dot(rho.matrix() * v));
    if (bracket <= 1e-8) {
        throw std::invalid_argument(
            "decompose_including: state orthogonal to mixture support, <psi|rho|psi> = " +
            std::to_string(bracket));
    }

    // Work inside the support of rho; the line construction only makes sense
    // there, and a psi component outside it admits no decomposition at all.
    auto es = rho.eigensystem();
    constexpr double kSupportTol = 1e-12;
    std::vector<int> kept;
    for (int i = 0; i < rho.dim(); ++i) {
        if (es.eigenvalues()[i] > kSupportTol) kept.push_back(i);
    }
    const int r = static_cast<int>(kept.size());
    Matrix basis(rho.dim(), r);  // columns span the support
    Eigen::VectorXd lambda(r);
    for (int i = 0; i < r; ++i) {
        basis.col(i) = es.eigenvectors().col(kept[i]);
        lambda[i] = es.eigenvalues()[kept[i]];
    }
    Vector psi_s = basis.adjoint() * v;
    double outside = std::sqrt(std::max(0.0, 1.0 - psi_s.squaredNorm()));
    if (outside > 1e-6) {
        throw std::invalid_argument(
            "decompose_including: psi leaves the support of rho, out-of-support component " +
            std::to_string(outside));
    }

    if (r == 1) {
        // rho is the projector on psi itself
        return ConvexDecomposition({1.0}, {psi});
    }

    // Largest a in (0,1) keeping rho - a |psi><psi| positive semidefinite.
    Matrix d_s = lambda.cast<std::complex<double>>().asDiagonal();
    Matrix proj_s = psi_s * psi_s.adjoint();
    auto min_eig = [&](double a) {
        Eigen::SelfAdjointEigenSolver<Matrix> s(d_s - a * proj_s, Eigen::EigenvaluesOnly);
        return s.eigenvalues().minCoeff();
    };
    constexpr double kBoundarySlack = 1e-13;
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (min_eig(mid) >= -kBoundarySlack) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double a = lo;
    if (!(a > 0.0)) {
        throw std::runtime_error("decompose_including: boundary search collapsed to a = 0");
    }

    Matrix remainder = (d_s - a * proj_s) / (1.0 - a);
    Eigen::SelfAdjointEigenSolver<Matrix> rs(remainder);
    // must sit above the boundary-search residue ~1e-12/(1-a) so the
    // eigenvalue pinned at zero is reliably discarded
    constexpr double kWeightCutoff = 1e-10;
    std::vector<double> weights{a};
    std::vector<PureState> states{psi};
    int remainder_rank = 0;
    for (int i = 0; i < r; ++i) {
        double w = rs.eigenvalues()[i];
        if (w > kWeightCutoff) {
            weights.push_back((1.0 - a) * w);
            states.push_back(PureState::from_unnormalized(basis * rs.eigenvectors().col(i)));
            ++remainder_rank;
        }
    }
    if (remainder_rank >= r) {
        throw std::runtime_error(
            "decompose_including: remainder rank did not decrease; boundary search degenerate");
    }

    double total = 0.0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;
    ConvexDecomposition decomp(std::move(weights), std::move(states));

    double residual = (density_from_mixture(decomp).matrix() - rho.matrix()).norm();
    if (residual > 1e-8) {
        throw std::runtime_error("decompose_including: reconstruction residual " +
                                 std::to_string(residual));
    }
    return decomp;
}

DualityWitness superposition_duality(const PureState& psi, const std::vector<PureState>& phis) {
    if (phis.empty()) {
        throw std::invalid_argument("superposition_duality: empty state list");
    }
    for (const auto& phi : phis) {
        if (phi.dim() != psi.dim()) {
            throw std::invalid_argument("superposition_duality: dimension mismatch");
        }
        if (std::abs(overlap(psi, phi)) >= 1.0 - 1e-10) {
            throw std::invalid_argument(
                "superposition_duality: psi coincides with one of the phis up to phase");
        }
    }
    SpanProjector sp = span_projector(phis);
    double span_residual = (psi.amplitudes() - sp.projector * psi.amplitudes()).norm();
    if (span_residual > 1e-10) {
        throw std::invalid_argument("superposition_duality: psi is not in span(phis), residual " +
                                    std::to_string(span_residual));
    }

    const size_t k = phis.size();
    std::vector<double> weights(k, 1.0 / static_cast<double>(k));
    ConvexDecomposition phi_decomp(weights, phis);
    DensityMatrix rho = density_from_mixture(phi_decomp);
    double bracket = std::real(psi.amplitudes().dot(rho.matrix() * psi.amplitudes()));
    if (bracket <= 1e-8) {
        // psi in span guarantees a positive bracket in exact arithmetic; tilt
        // the weights toward the overlapping states if the uniform mixture is
        // numerically too flat.
        double total = 0.0;
        for (size_t j = 0; j < k; ++j) {
            weights[j] = 1.0 + std::abs(overlap(phis[j], psi));
            total += weights[j];
        }
        for (double& w : weights) w /= total;
        phi_decomp = ConvexDecomposition(weights, phis);
        rho = density_from_mixture(phi_decomp);
        bracket = std::real(psi.amplitudes().dot(rho.matrix() * psi.amplitudes()));
        if (bracket <= 1e-8) {
            throw std::runtime_error("superposition_duality: <psi|rho|psi> vanished numerically");
        }
    }

    DualityWitness witness{rho.matrix(), std::move(phi_decomp),
                           decompose_including(rho, psi), 0.0, span_residual};
    witness.reconstruction_residual =
        (density_from_mixture(witness.psi_decomposition).matrix() - witness.rho).norm();
    return witness;
}

DualityReverseCheck superposition_duality_reverse(const ConvexDecomposition& phi_decomposition,
                                                  const ConvexDecomposition& psi_decomposition,
                                                  const PureState& psi) {
    DualityReverseCheck check;
    Matrix rho_a = density_from_mixture(phi_decomposition).matrix();
    Matrix rho_b = density_from_mixture(psi_decomposition).matrix();
    check.mixture_distance = (rho_a - rho_b).norm();
    check.mixtures_equal = check.mixture_distance <= 1e-9;
    SpanProjector sp = span_projector(phi_decomposition.states);
    check.span_residual = (psi.amplitudes() - sp.projector * psi.amplitudes()).norm();
    check.psi_in_span = check.span_residual <= 1e-9;
    return check;
}

}  // namespace qlab
