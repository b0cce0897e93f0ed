#include <doctest.h>

#include <cmath>
#include <complex>

#include "qlab/mixtures.hpp"
#include "qlab/random.hpp"

using namespace qlab;

namespace {

PureState basis(int dim, int index) {
    Vector v = Vector::Zero(dim);
    v[index] = 1.0;
    return PureState(std::move(v));
}

PureState plus_state() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return PureState(std::move(v));
}

PureState minus_state() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    return PureState(std::move(v));
}

}  // namespace

TEST_CASE("pure state and density validation") {
    Vector bad(2);
    bad << 1.0, 1.0;
    CHECK_THROWS_AS(PureState{bad}, std::invalid_argument);
    CHECK_NOTHROW(PureState::from_unnormalized(bad));
    CHECK_THROWS_AS(PureState{Vector::Ones(1)}, std::invalid_argument);

    Matrix not_hermitian(2, 2);
    not_hermitian << 0.5, 0.3, 0.0, 0.5;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(not_hermitian), std::invalid_argument);

    Matrix wrong_trace = 0.75 * Matrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix::from_matrix(wrong_trace), std::invalid_argument);

    Matrix indefinite(2, 2);
    indefinite << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(indefinite), std::invalid_argument);
}

TEST_CASE("convex decomposition validation") {
    CHECK_THROWS_AS(ConvexDecomposition({0.5, 0.6}, {basis(2, 0), basis(2, 1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ConvexDecomposition({1.0, 0.0}, {basis(2, 0), basis(2, 1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ConvexDecomposition({1.0}, {basis(2, 0), basis(2, 1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ConvexDecomposition({0.5, 0.5}, {basis(2, 0), basis(3, 1)}),
                    std::invalid_argument);
}

TEST_CASE("density from mixture") {
    Matrix half = 0.5 * Matrix::Identity(2, 2);

    DensityMatrix from_basis =
        density_from_mixture(ConvexDecomposition({0.5, 0.5}, {basis(2, 0), basis(2, 1)}));
    CHECK((from_basis.matrix() - half).norm() < 1e-15);

    // the non-unique decomposition: the rotated pair gives the same mixture
    DensityMatrix from_rotated =
        density_from_mixture(ConvexDecomposition({0.5, 0.5}, {plus_state(), minus_state()}));
    CHECK((from_rotated.matrix() - half).norm() < 1e-12);

    DensityMatrix projector = density_from_mixture(ConvexDecomposition({1.0}, {plus_state()}));
    CHECK((projector.matrix() * projector.matrix() - projector.matrix()).norm() < 1e-12);
}

TEST_CASE("von Neumann entropy") {
    CHECK(von_neumann_entropy(DensityMatrix::pure(plus_state())) < 1e-12);

    Matrix half = 0.5 * Matrix::Identity(2, 2);
    CHECK(von_neumann_entropy(DensityMatrix::from_matrix(half)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));

    Matrix skewed = Matrix::Zero(2, 2);
    skewed(0, 0) = 0.75;
    skewed(1, 1) = 0.25;
    CHECK(von_neumann_entropy(DensityMatrix::from_matrix(skewed)) ==
          doctest::Approx(0.5623351446188083).epsilon(1e-12));
}

TEST_CASE("equal-mixture entropy endpoints") {
    PureState e1 = basis(2, 0);
    PureState e2 = basis(2, 1);
    CHECK(equal_mixture_entropy(e1, e1) < 1e-12);
    CHECK(equal_mixture_entropy(e1, e2) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(equal_mixture_entropy(e1, basis(3, 0)), std::invalid_argument);
}

TEST_CASE("entropy-overlap correspondence over random pairs") {
    // two routes: d-dimensional eigensolve against the closed form with
    // eigenvalues (1 +- p)/2
    Rng rng(2024);
    for (int d : {2, 3, 8}) {
        double max_gap = 0.0;
        for (int i = 0; i < 1000; ++i) {
            PureState psi = random_pure_state(rng, d);
            PureState phi = random_pure_state(rng, d);
            double s = equal_mixture_entropy(psi, phi);
            double f = entropy_from_overlap(std::abs(overlap(psi, phi)));
            max_gap = std::max(max_gap, std::abs(s - f));
        }
        CAPTURE(d);
        CHECK(max_gap <= 1e-9);
    }
}

TEST_CASE("overlap-entropy formula and its inverse") {
    CHECK(entropy_from_overlap(1.0) == 0.0);
    CHECK(entropy_from_overlap(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(entropy_from_overlap(0.5) == doctest::Approx(0.5623351446188083).epsilon(1e-14));
    CHECK_THROWS_AS(entropy_from_overlap(-0.1), std::domain_error);
    CHECK_THROWS_AS(entropy_from_overlap(1.1), std::domain_error);

    for (double p = 0.0; p + 1e-3 <= 1.0; p += 1e-3) {
        CHECK(entropy_from_overlap(p + 1e-3) < entropy_from_overlap(p));
    }

    CHECK(overlap_from_entropy(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(overlap_from_entropy(std::log(2.0)) == doctest::Approx(0.0).epsilon(1e-10));
    for (int i = 1; i <= 9; ++i) {
        double p = 0.1 * i;
        CHECK(std::abs(overlap_from_entropy(entropy_from_overlap(p)) - p) <= 1e-10);
    }
    CHECK_THROWS_AS(overlap_from_entropy(-0.1), std::domain_error);
    CHECK_THROWS_AS(overlap_from_entropy(0.7), std::domain_error);
}

TEST_CASE("rescaling a decomposition to arbitrary coefficients") {
    const double s = 1.0 / std::sqrt(2.0);
    PureState psi = plus_state();
    std::vector<std::pair<std::complex<double>, PureState>> terms{{s, basis(2, 0)},
                                                                  {s, basis(2, 1)}};

    SUBCASE("unit targets produce e_i/sqrt(2)") {
        auto out = rescale_decomposition(psi, terms, {1.0, 1.0});
        CHECK((out[0] - s * basis(2, 0).amplitudes()).norm() < 1e-15);
        CHECK((out[1] - s * basis(2, 1).amplitudes()).norm() < 1e-15);
    }

    SUBCASE("original targets return the original states") {
        auto out = rescale_decomposition(psi, terms, {s, s});
        CHECK((out[0] - basis(2, 0).amplitudes()).norm() < 1e-15);
    }

    SUBCASE("doubled targets halve the states, losing normalization") {
        auto out = rescale_decomposition(psi, terms, {2.0 * s, 2.0 * s});
        CHECK(out[0].norm() == doctest::Approx(0.5).epsilon(1e-14));
    }

    SUBCASE("outputs stay on the original rays") {
        auto out = rescale_decomposition(psi, terms, {{0.3, 0.4}, {-2.0, 1.0}});
        for (size_t i = 0; i < out.size(); ++i) {
            double alignment =
                std::abs(overlap(PureState::from_unnormalized(out[i]), terms[i].second));
            CHECK(alignment == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    SUBCASE("zero targets and broken preconditions are rejected") {
        CHECK_THROWS_AS(rescale_decomposition(psi, terms, {0.0, 1.0}), std::invalid_argument);
        std::vector<std::pair<std::complex<double>, PureState>> wrong{{s, basis(2, 0)},
                                                                      {s, basis(2, 0)}};
        CHECK_THROWS_AS(rescale_decomposition(psi, wrong, {1.0, 1.0}), std::invalid_argument);
    }
}

TEST_CASE("span comparison through shared mixtures") {
    ConvexDecomposition basis_mix({0.5, 0.5}, {basis(2, 0), basis(2, 1)});
    ConvexDecomposition rotated_mix({0.5, 0.5}, {plus_state(), minus_state()});
    SpanComparison same = spans_equal_via_mixture(basis_mix, rotated_mix);
    CHECK(same.mixtures_equal);
    CHECK(same.spans_equal);
    CHECK(same.rank_a == 2);
    CHECK(same.rank_b == 2);

    SpanComparison different = spans_equal_via_mixture(
        ConvexDecomposition({1.0}, {basis(2, 0)}), ConvexDecomposition({1.0}, {basis(2, 1)}));
    CHECK_FALSE(different.mixtures_equal);
    CHECK_FALSE(different.spans_equal);

    CHECK_THROWS_AS(spans_equal_via_mixture(ConvexDecomposition({1.0}, {basis(2, 0)}),
                                            ConvexDecomposition({1.0}, {basis(3, 0)})),
                    std::invalid_argument);

    // randomized certified pairs: equal mixtures must imply equal spans
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        int d = std::vector<int>{2, 3, 8}[trial % 3];
        ConvexDecomposition a = random_decomposition(rng, d, rng.uniform_int(2, d + 1));
        auto es = density_from_mixture(a).eigensystem();
        std::vector<double> w;
        std::vector<PureState> states;
        for (int j = 0; j < d; ++j) {
            if (es.eigenvalues()[j] > 1e-12) {
                w.push_back(es.eigenvalues()[j]);
                states.push_back(PureState::from_unnormalized(es.eigenvectors().col(j)));
            }
        }
        double total = 0.0;
        for (double x : w) total += x;
        for (double& x : w) x /= total;
        SpanComparison cmp = spans_equal_via_mixture(a, ConvexDecomposition(w, states));
        CHECK(cmp.mixtures_equal);
        CHECK(cmp.spans_equal);
    }
}

TEST_CASE("decomposition through a chosen state") {
    SUBCASE("maximally mixed qubit through the plus state") {
        Matrix half = 0.5 * Matrix::Identity(2, 2);
        ConvexDecomposition d =
            decompose_including(DensityMatrix::from_matrix(half), plus_state());
        REQUIRE(d.weights.size() == 2);
        CHECK(d.weights[0] == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(d.weights[1] == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(std::abs(overlap(d.states[1], minus_state())) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("pure density collapses to one term") {
        ConvexDecomposition d =
            decompose_including(DensityMatrix::pure(plus_state()), plus_state());
        REQUIRE(d.weights.size() == 1);
        CHECK(d.weights[0] == doctest::Approx(1.0));
    }

    SUBCASE("diag(3/4, 1/4) through e1 puts 3/4 on e1") {
        Matrix rho = Matrix::Zero(2, 2);
        rho(0, 0) = 0.75;
        rho(1, 1) = 0.25;
        ConvexDecomposition d =
            decompose_including(DensityMatrix::from_matrix(rho), basis(2, 0));
        CHECK(d.weights[0] == doctest::Approx(0.75).epsilon(1e-9));
        double residual =
            (density_from_mixture(d).matrix() - rho).norm();
        CHECK(residual <= 1e-8);
    }

    SUBCASE("random instances reconstruct within 1e-8") {
        Rng rng(4242);
        for (int trial = 0; trial < 60; ++trial) {
            int d = std::vector<int>{2, 4, 8}[trial % 3];
            DensityMatrix rho = random_density_matrix(rng, d);
            PureState psi = random_pure_state(rng, d);
            ConvexDecomposition decomp = decompose_including(rho, psi);
            CHECK(std::abs(overlap(decomp.states[0], psi)) ==
                  doctest::Approx(1.0).epsilon(1e-12));
            CHECK(decomp.weights[0] > 0.0);
            CHECK((density_from_mixture(decomp).matrix() - rho.matrix()).norm() <= 1e-8);
        }
    }

    SUBCASE("orthogonal state rejected") {
        CHECK_THROWS_WITH_AS(
            decompose_including(DensityMatrix::pure(basis(2, 0)), basis(2, 1)),
            doctest::Contains("orthogonal"), std::invalid_argument);
    }

    SUBCASE("state outside a rank-deficient support rejected") {
        Matrix rho = Matrix::Zero(2, 2);
        rho(0, 0) = 1.0;
        CHECK_THROWS_WITH_AS(
            decompose_including(DensityMatrix::from_matrix(rho), plus_state()),
            doctest::Contains("support"), std::invalid_argument);
    }
}

TEST_CASE("superposition duality") {
    SUBCASE("explicit qubit witness") {
        DualityWitness w = superposition_duality(plus_state(), {basis(2, 0), basis(2, 1)});
        CHECK((w.rho - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-12);
        CHECK(w.reconstruction_residual <= 1e-8);
        CHECK(w.psi_decomposition.weights[0] == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(w.span_residual < 1e-12);

        DualityReverseCheck rev = superposition_duality_reverse(
            w.phi_decomposition, w.psi_decomposition, plus_state());
        CHECK(rev.mixtures_equal);
        CHECK(rev.psi_in_span);
    }

    SUBCASE("state outside the span is rejected with the residual quoted") {
        CHECK_THROWS_WITH_AS(superposition_duality(basis(3, 2), {basis(3, 0), basis(3, 1)}),
                             doctest::Contains("residual"), std::invalid_argument);
    }

    SUBCASE("psi coinciding with a phi is rejected") {
        CHECK_THROWS_AS(superposition_duality(plus_state(), {plus_state(), basis(2, 0)}),
                        std::invalid_argument);
    }

    SUBCASE("random four-dimensional instances") {
        Rng rng(99);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<PureState> phis;
            for (int j = 0; j < 4; ++j) phis.push_back(random_pure_state(rng, 4));
            Vector combo = Vector::Zero(4);
            for (const auto& phi : phis) combo += rng.complex_normal() * phi.amplitudes();
            PureState psi = PureState::from_unnormalized(std::move(combo));
            DualityWitness w = superposition_duality(psi, phis);
            CHECK(w.reconstruction_residual <= 1e-8);
            CHECK(w.psi_decomposition.weights[0] > 0.0);
            // both decompositions of the same rho, one containing psi, one not
            bool phi_side_has_psi = false;
            for (const auto& phi : w.phi_decomposition.states) {
                phi_side_has_psi =
                    phi_side_has_psi || std::abs(overlap(phi, psi)) > 1.0 - 1e-10;
            }
            CHECK_FALSE(phi_side_has_psi);
            // feeding the pair back certifies the span membership
            DualityReverseCheck rev =
                superposition_duality_reverse(w.phi_decomposition, w.psi_decomposition, psi);
            CHECK(rev.mixtures_equal);
            CHECK(rev.psi_in_span);
        }
    }
}
