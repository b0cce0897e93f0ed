// Acceptance suite: one line per criterion, nonzero exit iff any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qlab/demos.hpp"
#include "qlab/grid.hpp"
#include "qlab/mixtures.hpp"
#include "qlab/observables.hpp"
#include "qlab/random.hpp"
#include "qlab/schwartz.hpp"
#include "qlab/transforms.hpp"

using namespace qlab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

// 1. entropy of equal mixtures matches f(|<psi|phi>|) to 1e-9 over seeded pairs
Outcome criterion_entropy_overlap() {
    Outcome out;
    Rng rng(42);
    for (int d : {2, 3, 8}) {
        double max_gap = 0.0;
        for (int i = 0; i < 1000; ++i) {
            PureState psi = random_pure_state(rng, d);
            PureState phi = random_pure_state(rng, d);
            double gap = std::abs(equal_mixture_entropy(psi, phi) -
                                  entropy_from_overlap(std::abs(overlap(psi, phi))));
            max_gap = std::max(max_gap, gap);
        }
        std::ostringstream what;
        what << "dim " << d << " max gap " << max_gap;
        out.require(max_gap <= 1e-9, what.str());
    }
    return out;
}

// 2. induced unitary carries the gaussian onto the cauchy profile
Outcome criterion_gauss_to_cauchy() {
    Outcome out;
    Diffeomorphism map = gauss_to_cauchy_map();
    Grid source(8.0, 1024);
    Grid target(8000.0, 1 << 21);
    GridWavefunction psi = sample(AnalyticProfile::gaussian(), source);
    GridWavefunction phi = induced_unitary_apply(map, psi, target);

    double norm_gap = std::abs(norm(phi) - 1.0);
    out.require(norm_gap <= 1e-4, "norm gap " + std::to_string(norm_gap));

    AnalyticProfile cauchy = AnalyticProfile::cauchy_sqrt();
    double err2 = 0.0;
    for (int k = 0; k < target.point_count; ++k) {
        double y = target.point(k);
        if (std::abs(y) > 20.0) continue;
        err2 += target.dx() * std::norm(phi.samples[k] - complex_t(cauchy(y)));
    }
    double l2 = std::sqrt(err2);
    out.require(l2 <= 1e-4, "L2 error on |y|<=20 is " + std::to_string(l2));

    PushforwardReport push =
        pushforward_density_check(map, psi, target, {0.5, 1.0, 1.5, 2.0});
    for (const auto& row : push.rows) {
        double gap = std::abs(row.target_mass - 0.5 * std::erf(row.x));
        out.require(gap <= 1e-4, "cumulative mass at x=" + std::to_string(row.x));
    }
    return out;
}

// 3. truncation sweeps: cauchy <X^2> follows (2/pi)(L - atan L) and diverges,
//    the gaussian converges to 1/2
Outcome criterion_moment_divergence() {
    Outcome out;
    const std::vector<double> radii{8.0, 16.0, 32.0, 64.0};
    SweepData sweep =
        truncation_sweep(AnalyticProfile::cauchy_sqrt(), PolynomialObservable(2, 0), radii);
    for (const auto& p : sweep.points) {
        double expected = 2.0 / kPi * (p.radius - std::atan(p.radius));
        double rel = std::abs(p.estimate - expected) / expected;
        out.require(rel <= 0.02, "L=" + std::to_string(p.radius) + " off by " +
                                     std::to_string(100.0 * rel) + "%");
    }
    DivergenceVerdict v = classify_divergence(sweep);
    out.require(v.kind == DivergenceVerdict::Kind::Divergent, "cauchy verdict not Divergent");
    out.require(std::abs(v.growth_exponent - 1.0) <= 0.1,
                "exponent " + std::to_string(v.growth_exponent));

    DivergenceVerdict g = classify_divergence(
        truncation_sweep(AnalyticProfile::gaussian(), PolynomialObservable(2, 0), radii));
    out.require(g.kind == DivergenceVerdict::Kind::Convergent, "gaussian verdict");
    out.require(std::abs(g.limit - 0.5) <= 1e-4, "gaussian limit " + std::to_string(g.limit));
    return out;
}

// 4. oscillating family: convergent at t = 0, divergent at the quarter
//    period, certified monotone inside and non-monotone at wt = pi
Outcome criterion_evolution() {
    Outcome out;
    EvolutionFamily family{1.0};
    std::vector<double> times{0.0, kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0, kPi / 2.0};
    std::vector<EvolutionPoint> series =
        evolve_and_track(family, AnalyticProfile::gaussian(), times,
                         {PolynomialObservable(2, 0)}, {8.0, 16.0, 32.0, 64.0});
    for (const auto& point : series) {
        out.require(point.certificate.kind == MonotonicityCertificate::Kind::Monotone,
                    "certificate at t=" + std::to_string(point.t));
    }
    out.require(series.front().verdicts[0].kind == DivergenceVerdict::Kind::Convergent &&
                    std::abs(series.front().verdicts[0].limit - 0.5) <= 1e-4,
                "t=0 verdict");
    out.require(series.back().verdicts[0].kind == DivergenceVerdict::Kind::Divergent,
                "quarter-period verdict");

    Diffeomorphism at_pi = evolution_map(family, kPi);
    out.require(at_pi.certificate.kind == MonotonicityCertificate::Kind::NonMonotone &&
                    std::isfinite(at_pi.certificate.witness),
                "wt=pi certificate");
    return out;
}

// 5. decomposition through a chosen state reconstructs rho
Outcome criterion_decompose_including() {
    Outcome out;
    Rng rng(42);
    const std::vector<int> dims{2, 4, 8};
    double max_residual = 0.0;
    for (int i = 0; i < 200; ++i) {
        int d = dims[i % dims.size()];
        DensityMatrix rho = random_density_matrix(rng, d);
        PureState psi = random_pure_state(rng, d);
        while (std::real(psi.amplitudes().dot(rho.matrix() * psi.amplitudes())) <= 1e-3) {
            psi = random_pure_state(rng, d);
        }
        ConvexDecomposition decomp = decompose_including(rho, psi);
        bool contains = std::abs(overlap(decomp.states[0], psi)) > 1.0 - 1e-12 &&
                        decomp.weights[0] > 0.0;
        out.require(contains, "instance " + std::to_string(i) + " misses psi");
        max_residual = std::max(
            max_residual, (density_from_mixture(decomp).matrix() - rho.matrix()).norm());
        if (!out.pass) break;
    }
    out.require(max_residual <= 1e-8, "max residual " + std::to_string(max_residual));
    out.detail << (out.detail.str().empty() ? "" : "; ") << "max residual " << max_residual;
    return out;
}

// 6. equal mixtures imply equal spans, zero counterexamples
Outcome criterion_span_equality() {
    Outcome out;
    Rng rng(42);
    const std::vector<int> dims{2, 3, 8};
    int equal_count = 0;
    for (int i = 0; i < 500; ++i) {
        int d = dims[i % dims.size()];
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
        try {
            SpanComparison cmp = spans_equal_via_mixture(a, ConvexDecomposition(w, states));
            if (cmp.mixtures_equal && cmp.spans_equal) ++equal_count;
        } catch (const std::logic_error&) {
            out.require(false, "counterexample at trial " + std::to_string(i));
            break;
        }
    }
    out.require(equal_count == 500,
                "only " + std::to_string(equal_count) + "/500 certified pairs");
    return out;
}

// 7. superposition duality: two distinct strictly convex decompositions of one rho
Outcome criterion_duality() {
    Outcome out;
    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    Vector e1 = Vector::Zero(2), e2 = Vector::Zero(2);
    e1[0] = 1.0;
    e2[1] = 1.0;
    DualityWitness qubit =
        superposition_duality(PureState(plus), {PureState(e1), PureState(e2)});
    out.require(qubit.reconstruction_residual <= 1e-8, "qubit residual");
    out.require(qubit.psi_decomposition.weights[0] > 0.0, "qubit psi weight");

    Rng rng(42);
    double max_residual = qubit.reconstruction_residual;
    for (int i = 0; i < 200; ++i) {
        std::vector<PureState> phis;
        for (int j = 0; j < 4; ++j) phis.push_back(random_pure_state(rng, 4));
        Vector combo = Vector::Zero(4);
        for (const auto& phi : phis) combo += rng.complex_normal() * phi.amplitudes();
        PureState psi = PureState::from_unnormalized(std::move(combo));
        DualityWitness w = superposition_duality(psi, phis);
        max_residual = std::max(max_residual, w.reconstruction_residual);
        bool distinct = std::abs(overlap(w.psi_decomposition.states[0], psi)) > 1.0 - 1e-12;
        for (const auto& phi : w.phi_decomposition.states) {
            distinct = distinct && std::abs(overlap(phi, psi)) < 1.0 - 1e-10;
        }
        out.require(distinct, "instance " + std::to_string(i) + " decompositions not distinct");
        if (!out.pass) break;
    }
    out.require(max_residual <= 1e-8, "max residual " + std::to_string(max_residual));
    return out;
}

// 8. truncated cauchy sequence: gaps track 2/(pi n) while <X^2> runs away
Outcome criterion_cauchy_sequence() {
    Outcome out;
    TruncatedSequence seq = build_truncated_sequence({8.0, 16.0, 32.0, 64.0}, 1.0);
    for (size_t i = 1; i < seq.l2_gaps.size(); ++i) {
        out.require(seq.l2_gaps[i] < seq.l2_gaps[i - 1], "gaps not strictly decreasing");
    }
    for (size_t i = 0; i < seq.l2_gaps.size(); ++i) {
        double ratio = seq.l2_gaps[i] * seq.l2_gaps[i] / seq.predicted_gap_sq[i];
        out.require(ratio > 0.5 && ratio < 2.0,
                    "gap " + std::to_string(i) + " ratio " + std::to_string(ratio));
    }
    out.require(std::abs(seq.x2_growth_exponent - 1.0) <= 0.15,
                "growth exponent " + std::to_string(seq.x2_growth_exponent));
    return out;
}

// 9. schwartz battery: catalog verdicts, hermite transform residuals, bump tails
Outcome criterion_schwartz_battery() {
    Outcome out;
    const std::vector<double> radii{8.0, 32.0, 128.0};
    out.require(classify_schwartz(AnalyticProfile::gaussian(), 4, radii).verdict ==
                    SchwartzVerdict::SchwartzLike,
                "gaussian verdict");
    for (int n = 0; n <= 10; ++n) {
        out.require(classify_schwartz(AnalyticProfile::hermite(n), 4, radii).verdict ==
                        SchwartzVerdict::SchwartzLike,
                    "hermite(" + std::to_string(n) + ") verdict");
    }
    SchwartzReport cauchy = classify_schwartz(AnalyticProfile::cauchy_sqrt(), 4, radii);
    out.require(cauchy.verdict == SchwartzVerdict::NotSchwartz && cauchy.witness.first >= 0,
                "cauchy verdict/witness");

    double max_residual = 0.0;
    for (int n = 0; n <= 10; ++n) {
        max_residual = std::max(
            max_residual,
            fourier_closure_check(AnalyticProfile::hermite(n), 4).hermite_eigen_residual);
    }
    out.require(max_residual <= 1e-5, "hermite residual " + std::to_string(max_residual));

    FourierClosureReport bump = fourier_closure_check(AnalyticProfile::bump(1.0), 4);
    out.require(bump.tail_max > 1e-12, "bump tail " + std::to_string(bump.tail_max));
    return out;
}

// 10. rescaled decompositions reproduce psi for five target coefficient sets
Outcome criterion_vector_rescale() {
    Outcome out;
    const double s = 1.0 / std::sqrt(2.0);
    Vector plus(2), v1 = Vector::Zero(2), v2 = Vector::Zero(2);
    plus << s, s;
    v1[0] = 1.0;
    v2[1] = 1.0;
    PureState psi(plus);
    std::vector<std::pair<std::complex<double>, PureState>> terms{{s, PureState(v1)},
                                                                  {s, PureState(v2)}};
    const std::vector<std::vector<std::complex<double>>> target_sets{
        {1.0, 1.0},
        {2.0 * s, 2.0 * s},
        {s, s},
        {{0.0, 1.0}, {0.0, -1.0}},
        {{3.0, 0.0}, {1.0, -2.0}},
    };
    for (size_t t = 0; t < target_sets.size(); ++t) {
        std::vector<Vector> rescaled = rescale_decomposition(psi, terms, target_sets[t]);
        Vector rebuilt = Vector::Zero(2);
        for (size_t i = 0; i < rescaled.size(); ++i) {
            rebuilt += target_sets[t][i] * rescaled[i];
            double alignment =
                std::abs(overlap(PureState::from_unnormalized(rescaled[i]), terms[i].second));
            out.require(std::abs(alignment - 1.0) <= 1e-12,
                        "set " + std::to_string(t) + " leaves the ray");
        }
        out.require((rebuilt - psi.amplitudes()).norm() <= 1e-10,
                    "set " + std::to_string(t) + " reconstruction");
    }
    return out;
}

// 11. byte-identical JSON reports modulo the duration field
Outcome criterion_determinism() {
    Outcome out;
    DemoOptions opts;
    for (const auto& spec : demo_catalog()) {
        json a = run_demo(spec.name, opts).to_json();
        json b = run_demo(spec.name, opts).to_json();
        a["duration_ms"] = 0.0;
        b["duration_ms"] = 0.0;
        out.require(a.dump() == b.dump(), spec.name + " not deterministic");
    }
    return out;
}

struct Criterion {
    int number;
    std::string title;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "entropy-overlap correspondence (1e-9 over seeded pairs)", 5.0,
         criterion_entropy_overlap},
        {2, "gauss-to-cauchy unitary (L2 1e-4, norm 1e-4, cumulative 1e-4)", 10.0,
         criterion_gauss_to_cauchy},
        {3, "moment divergence sweeps (2% per point, exponent 1 +- 0.1)", 10.0,
         criterion_moment_divergence},
        {4, "evolution family verdicts and certificates", 30.0, criterion_evolution},
        {5, "decomposition through a chosen state (Frobenius 1e-8)", 10.0,
         criterion_decompose_including},
        {6, "span equality from shared mixtures (500 certified pairs)", 10.0,
         criterion_span_equality},
        {7, "superposition duality witnesses (residual 1e-8)", 10.0, criterion_duality},
        {8, "cauchy-but-divergent truncated sequence", 10.0, criterion_cauchy_sequence},
        {9, "schwartz battery, hermite residuals, bump tails", 30.0,
         criterion_schwartz_battery},
        {10, "vector-space insufficiency rescalings (1e-10)", 1.0, criterion_vector_rescale},
        {11, "deterministic reports modulo duration", 60.0, criterion_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail << "exception: " << e.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.budget_seconds) {
            outcome.pass = false;
            outcome.detail << (outcome.detail.str().empty() ? "" : "; ") << "over budget "
                           << c.budget_seconds << " s";
        }
        if (!outcome.pass) ++failures;
        std::printf("[%s] criterion %2d: %s (%.2f s%s%s)\n", outcome.pass ? "PASS" : "FAIL",
                    c.number, c.title.c_str(), seconds,
                    outcome.detail.str().empty() ? "" : "; ",
                    outcome.detail.str().c_str());
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
