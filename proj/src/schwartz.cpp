#include "qlab/schwartz.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace qlab {

namespace {

// Samples below this fraction of the derivative's peak are spectral-pipeline
// roundoff (order-8 derivatives carry inverse-transform junk up to ~2e-11 of
// the peak); x^a would amplify them into phantom seminorm mass at large |x|.
constexpr double kDerivativeFloor = 1e-10;

double windowed_sup(const GridWavefunction& d, int x_power, int d_order) {
    const Grid& g = d.grid;
    const double window = d_order >= 1 ? 0.95 * g.half_width : g.half_width;
    double peak = 0.0;
    for (const auto& c : d.samples) peak = std::max(peak, std::abs(c));
    const double floor = kDerivativeFloor * peak;
    double sup = 0.0;
    for (int k = 0; k < g.point_count; ++k) {
        double x = g.point(k);
        if (std::abs(x) > window) continue;
        double magnitude = std::abs(d.samples[k]);
        if (magnitude < floor) continue;
        sup = std::max(sup, std::pow(std::abs(x), x_power) * magnitude);
    }
    return sup;
}

double floored_l2(const GridWavefunction& d, int x_power) {
    double peak = 0.0;
    for (const auto& c : d.samples) peak = std::max(peak, std::abs(c));
    const double floor = kDerivativeFloor * peak;
    const auto w = detail::quadrature_weights(d.grid);
    double acc = 0.0;
    for (int k = 0; k < d.grid.point_count; ++k) {
        double magnitude = std::abs(d.samples[k]);
        if (magnitude < floor) continue;
        double weighted = std::pow(std::abs(d.grid.point(k)), x_power) * magnitude;
        acc += w[k] * weighted * weighted;
    }
    return std::sqrt(acc);
}

}  // namespace

double seminorm(const GridWavefunction& psi, int x_power, int d_order) {
    if (x_power < 0 || x_power > 8 || d_order < 0 || d_order > 8) {
        throw std::invalid_argument("seminorm: indices must be in [0, 8]");
    }
    return windowed_sup(derivative(psi, d_order), x_power, d_order);
}

double seminorm_l2(const GridWavefunction& psi, int x_power, int d_order) {
    if (x_power < 0 || x_power > 8 || d_order < 0 || d_order > 8) {
        throw std::invalid_argument("seminorm_l2: indices must be in [0, 8]");
    }
    return floored_l2(derivative(psi, d_order), x_power);
}

const char* to_string(SchwartzVerdict v) {
    switch (v) {
        case SchwartzVerdict::SchwartzLike: return "SchwartzLike";
        case SchwartzVerdict::NotSchwartz: return "NotSchwartz";
        case SchwartzVerdict::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

namespace {

constexpr double kStabilityTol = 1e-3;
constexpr double kGrowthFactor = 10.0;

bool estimate_stable(const std::vector<double>& v) {
    double last = v[v.size() - 1];
    double prev = v[v.size() - 2];
    if (std::abs(last) < 1e-12 && std::abs(prev) < 1e-12) return true;
    return std::abs(last - prev) <= kStabilityTol * std::max(std::abs(last), 1e-12);
}

bool estimate_grows(const std::vector<double>& v) {
    for (size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1])) return false;
    }
    return v.front() > 0.0 && v.back() > kGrowthFactor * v.front();
}

struct BatteryVerdict {
    SchwartzVerdict verdict;
    std::pair<int, int> witness;
    std::map<std::pair<int, int>, bool> stable;
};

BatteryVerdict judge(const std::map<std::pair<int, int>, std::vector<double>>& estimates) {
    BatteryVerdict out{SchwartzVerdict::SchwartzLike, {-1, -1}, {}};
    bool all_stable = true;
    for (const auto& [key, values] : estimates) {
        bool st = estimate_stable(values);
        out.stable[key] = st;
        all_stable = all_stable && st;
        if (out.witness.first < 0 && estimate_grows(values)) {
            out.witness = key;
        }
    }
    if (out.witness.first >= 0) {
        out.verdict = SchwartzVerdict::NotSchwartz;
    } else if (!all_stable) {
        out.verdict = SchwartzVerdict::Undetermined;
    }
    return out;
}

Grid battery_grid(double radius, double dx) {
    int n = static_cast<int>(std::lround(2.0 * radius / dx));
    if (n % 2 != 0) ++n;
    return Grid(radius, std::max(n, 16));
}

SchwartzReport run_battery(const std::function<GridWavefunction(double)>& make_state,
                           int max_index, const std::vector<double>& radii) {
    if (radii.size() < 3) {
        throw std::invalid_argument("classify_schwartz: need at least 3 radii");
    }
    for (size_t i = 1; i < radii.size(); ++i) {
        if (!(radii[i] > radii[i - 1])) {
            throw std::invalid_argument("classify_schwartz: radii must be strictly increasing");
        }
    }
    if (max_index < 0 || max_index > 8) {
        throw std::invalid_argument("classify_schwartz: max_index must be in [0, 8]");
    }
    SchwartzReport report;
    report.radii = radii;
    for (double radius : radii) {
        GridWavefunction psi = make_state(radius);
        // one derivative pass per order serves the whole (a, b) row
        for (int b = 0; b <= max_index; ++b) {
            GridWavefunction d = derivative(psi, b);
            for (int a = 0; a <= max_index; ++a) {
                report.sup_estimates[{a, b}].push_back(windowed_sup(d, a, b));
                report.l2_estimates[{a, b}].push_back(floored_l2(d, a));
            }
        }
    }
    BatteryVerdict sup_v = judge(report.sup_estimates);
    report.verdict = sup_v.verdict;
    report.witness = sup_v.witness;
    report.stable = std::move(sup_v.stable);
    report.l2_verdict = judge(report.l2_estimates).verdict;
    return report;
}

}  // namespace

SchwartzReport classify_schwartz(const AnalyticProfile& profile, int max_index,
                                 const std::vector<double>& radii, double dx) {
    return run_battery(
        [&](double radius) { return sample(profile, battery_grid(radius, dx)); }, max_index,
        radii);
}

ConvergenceTable frechet_converges(const std::vector<GridWavefunction>& sequence, int max_index,
                                   int max_moment_degree) {
    if (sequence.size() < 4) {
        throw std::invalid_argument("frechet_converges: need at least 4 elements");
    }
    for (const auto& psi : sequence) {
        if (!(psi.grid == sequence.front().grid)) {
            throw std::invalid_argument("frechet_converges: sequence elements on unequal grids");
        }
    }
    constexpr double kGapTol = 1e-4;
    ConvergenceTable table;
    table.all_seminorms_converged = true;
    table.all_moments_converged = true;

    std::vector<GridWavefunction> diffs;
    for (size_t i = 0; i + 1 < sequence.size(); ++i) {
        diffs.push_back(sequence[i + 1] - sequence[i]);
    }
    for (int a = 0; a <= max_index; ++a) {
        for (int b = 0; b <= max_index; ++b) {
            double last_gap = seminorm(diffs.back(), a, b);
            bool ok = last_gap <= kGapTol;
            table.seminorm_gaps.push_back({a, b, last_gap, ok});
            table.all_seminorms_converged = table.all_seminorms_converged && ok;
        }
    }
    std::vector<MomentTable> prints;
    prints.push_back(moment_fingerprint(sequence[sequence.size() - 2], max_moment_degree));
    prints.push_back(moment_fingerprint(sequence.back(), max_moment_degree));
    for (const auto& [key, last_entry] : prints[1].entries) {
        double gap = std::abs(last_entry.value - prints[0].entries.at(key).value);
        bool ok = gap <= kGapTol;
        table.moment_gaps.push_back({key.first, key.second, gap, ok});
        table.all_moments_converged = table.all_moments_converged && ok;
    }
    return table;
}

namespace {

// C-infinity step: 0 for t <= 0, 1 for t >= 1
double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double a = std::exp(-1.0 / t);
    double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double loglog_slope_tail(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const size_t n = xs.size();
    for (size_t i = n - 3; i < n; ++i) {
        double x = std::log(xs[i]);
        double y = std::log(ys[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
}

}  // namespace

TruncatedSequence build_truncated_sequence(const std::vector<double>& cutoffs, double width,
                                           double dx) {
    if (cutoffs.size() < 2) {
        throw std::invalid_argument("build_truncated_sequence: need at least 2 cutoffs");
    }
    for (size_t i = 1; i < cutoffs.size(); ++i) {
        if (!(cutoffs[i] > cutoffs[i - 1])) {
            throw std::invalid_argument("build_truncated_sequence: cutoffs must increase");
        }
    }
    if (!(width > 0.0)) {
        throw std::invalid_argument("build_truncated_sequence: width must be positive");
    }
    if (width < 4.0 * dx) {
        throw std::runtime_error("build_truncated_sequence: taper width " +
                                 std::to_string(width) + " unresolved at grid spacing " +
                                 std::to_string(dx));
    }
    if (!(cutoffs.front() > width)) {
        throw std::invalid_argument(
            "build_truncated_sequence: first cutoff must exceed the taper width");
    }

    TruncatedSequence seq;
    seq.cutoffs = cutoffs;
    seq.width = width;
    int n = static_cast<int>(std::lround(2.0 * cutoffs.back() / dx));
    if (n % 2 != 0) ++n;
    seq.grid = Grid(cutoffs.back(), std::max(n, 16));

    AnalyticProfile cauchy = AnalyticProfile::cauchy_sqrt();
    for (double cutoff : cutoffs) {
        auto tapered = [&](double x) -> complex_t {
            return cauchy(x) * smoothstep((cutoff - std::abs(x)) / width);
        };
        seq.states.push_back(normalize(sample(std::function<complex_t(double)>(tapered), seq.grid)));
    }

    PolynomialObservable x2(2, 0);
    for (const auto& psi : seq.states) {
        seq.x2_values.push_back(expectation(psi, x2).value);
    }
    for (size_t i = 0; i + 1 < seq.states.size(); ++i) {
        seq.l2_gaps.push_back(norm(seq.states[i + 1] - seq.states[i]));
        seq.predicted_gap_sq.push_back(
            2.0 / std::numbers::pi *
            (std::atan(1.0 / cutoffs[i]) - std::atan(1.0 / cutoffs[i + 1])));
    }
    if (cutoffs.size() >= 3) {
        seq.x2_growth_exponent = loglog_slope_tail(seq.cutoffs, seq.x2_values);
    }
    return seq;
}

FourierClosureReport fourier_closure_check(const AnalyticProfile& profile, int max_index,
                                           const std::vector<double>& momentum_radii,
                                           double position_half_width) {
    constexpr double pi = std::numbers::pi;
    auto grid_for_momentum_radius = [&](double momentum_half_width) {
        int n = static_cast<int>(
            std::lround(2.0 * position_half_width * momentum_half_width / pi));
        if (n % 2 != 0) ++n;
        return Grid(position_half_width, std::max(n, 16));
    };
    FourierClosureReport report;
    report.transform_report = run_battery(
        [&](double k_radius) {
            return fourier_transform(sample(profile, grid_for_momentum_radius(k_radius)));
        },
        max_index, momentum_radii);

    // residual and tail checks at a mid-sweep reference resolution
    Grid reference = grid_for_momentum_radius(200.0);
    GridWavefunction transformed = fourier_transform(sample(profile, reference));

    if (profile.kind() == AnalyticProfile::Kind::Hermite) {
        // F h_n = (-i)^n h_n
        GridWavefunction target = sample(profile, transformed.grid);
        complex_t phase = std::pow(complex_t(0.0, -1.0), profile.hermite_order());
        report.hermite_eigen_residual = norm(transformed - (phase * target));
    }

    const Grid& kgrid = transformed.grid;
    report.tail_window_start = kgrid.half_width / 4.0;
    for (int k = 0; k < kgrid.point_count; ++k) {
        if (std::abs(kgrid.point(k)) >= report.tail_window_start) {
            report.tail_max = std::max(report.tail_max, std::abs(transformed.samples[k]));
        }
    }
    report.noncompact_tail = report.tail_max > 1e-12;
    return report;
}

MomentSeparation moment_distinguish(const GridWavefunction& a, const GridWavefunction& b,
                                    int max_total_degree) {
    if (!(a.grid == b.grid)) {
        throw std::invalid_argument("moment_distinguish: states on unequal grids");
    }
    constexpr double kSeparationTol = 1e-4;
    MomentSeparation result;
    for (int degree = 0; degree <= max_total_degree; ++degree) {
        for (int n = degree; n >= 0; --n) {
            int m = degree - n;
            double ea = expectation(a, PolynomialObservable(n, m)).value;
            double eb = expectation(b, PolynomialObservable(n, m)).value;
            double gap = std::abs(ea - eb);
            result.max_gap = std::max(result.max_gap, gap);
            if (gap > kSeparationTol) {
                result.separated = true;
                result.x_power = n;
                result.p_power = m;
                result.gap = gap;
                return result;
            }
        }
    }
    return result;
}

}  // namespace qlab
