// Copyright 2026 The ndup Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ndup/saturation.h"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "ndup/models.h"

namespace ndup {

namespace {

constexpr int kStencilReach = 2;
constexpr int kNormalBand = 2 * kStencilReach;

// Banded discretization of a first-order operator on a line: row j holds the entries
// at columns j - 2 .. j + 2.
struct BandedOperator {
    std::vector<std::array<Complex, 2 * kStencilReach + 1>> rows;

    size_t size() const {
        return rows.size();
    }
    Complex at(size_t r, size_t c) const {
        auto off = static_cast<ptrdiff_t>(c) - static_cast<ptrdiff_t>(r);
        if (off < -kStencilReach || off > kStencilReach) {
            return 0;
        }
        return rows[r][off + kStencilReach];
    }
    ComplexVector apply(const ComplexVector &v, bool adjoint) const {
        size_t n = size();
        ComplexVector out(n);
        for (size_t r = 0; r < n; r++) {
            Complex sum = 0;
            size_t lo = r >= kStencilReach ? r - kStencilReach : 0;
            size_t hi = std::min(n - 1, r + kStencilReach);
            for (size_t c = lo; c <= hi; c++) {
                sum += adjoint ? std::conj(at(c, r)) * v[c] : at(r, c) * v[c];
            }
            out[r] = sum;
        }
        return out;
    }
};

struct Combined {
    Complex constant = 0;
    Complex linear = 0;
    Complex derivative = 0;

    bool is_zero() const {
        return constant == Complex(0) && linear == Complex(0) && derivative == Complex(0);
    }
};

Combined combine(const std::vector<GridOperator> &ops, const ComplexVector &lambda) {
    if (ops.size() != lambda.size()) {
        throw DimensionMismatch("need one lambda component per operator");
    }
    Combined c;
    for (size_t a = 0; a < ops.size(); a++) {
        const auto &op = ops[a];
        if (op.dims() != 1) {
            throw ConfigError("the saturation search works on a single coordinate");
        }
        if (max_abs(op.quadratic) != 0) {
            throw ConfigError("the saturation search needs operators at most linear in x");
        }
        c.constant += lambda[a] * op.constant;
        c.linear += lambda[a] * op.linear[0];
        c.derivative += lambda[a] * op.derivative[0];
    }
    return c;
}

BandedOperator discretize(const Combined &c, const Axis &axis) {
    BandedOperator op;
    op.rows.resize(axis.points);
    Complex s = c.derivative / (12 * axis.spacing());
    for (size_t j = 0; j < axis.points; j++) {
        auto &row = op.rows[j];
        row = {s, -8.0 * s, c.constant + c.linear * axis.coordinate(j), 8.0 * s, -s};
        // Amplitudes outside the grid are zero.
        if (j < 2) {
            row[0] = 0;
        }
        if (j < 1) {
            row[1] = 0;
        }
        if (j + 1 >= axis.points) {
            row[3] = 0;
        }
        if (j + 2 >= axis.points) {
            row[4] = 0;
        }
    }
    return op;
}

// Cholesky factor of the banded Hermitian matrix K^dagger K + shift; l[i][d] = L(i, i - d).
class BandedCholesky {
   public:
    BandedCholesky(const BandedOperator &k, double relative_shift) {
        size_t n = k.size();
        std::vector<std::array<Complex, kNormalBand + 1>> a(n);
        double max_diag = 0;
        for (size_t i = 0; i < n; i++) {
            for (size_t d = 0; d <= kNormalBand && d <= i; d++) {
                size_t j = i - d;
                Complex sum = 0;
                size_t lo = i >= kStencilReach ? i - kStencilReach : 0;
                size_t hi = std::min(n - 1, j + kStencilReach);
                for (size_t r = lo; r <= hi; r++) {
                    sum += std::conj(k.at(r, i)) * k.at(r, j);
                }
                a[i][d] = sum;
            }
            max_diag = std::max(max_diag, a[i][0].real());
        }
        double shift = relative_shift * max_diag;
        l_.resize(n);
        for (size_t i = 0; i < n; i++) {
            for (size_t d = std::min<size_t>(kNormalBand, i); d >= 1; d--) {
                size_t j = i - d;
                Complex sum = a[i][d];
                for (size_t m = (i >= kNormalBand ? i - kNormalBand : 0); m < j; m++) {
                    sum -= entry(i, m) * std::conj(entry(j, m));
                }
                l_[i][d] = sum / l_[j][0].real();
            }
            double diag = a[i][0].real() + shift;
            for (size_t d = 1; d <= kNormalBand && d <= i; d++) {
                diag -= std::norm(l_[i][d]);
            }
            if (!(diag > 0)) {
                throw GridTooCoarse("normal operator is numerically singular on this grid");
            }
            l_[i][0] = std::sqrt(diag);
        }
    }

    ComplexVector solve(ComplexVector b) const {
        size_t n = l_.size();
        for (size_t i = 0; i < n; i++) {
            for (size_t d = 1; d <= kNormalBand && d <= i; d++) {
                b[i] -= l_[i][d] * b[i - d];
            }
            b[i] /= l_[i][0].real();
        }
        for (size_t i = n; i-- > 0;) {
            for (size_t d = 1; d <= kNormalBand && i + d < n; d++) {
                b[i] -= std::conj(l_[i + d][d]) * b[i + d];
            }
            b[i] /= l_[i][0].real();
        }
        return b;
    }

   private:
    Complex entry(size_t i, size_t j) const {
        size_t d = i - j;
        return d <= kNormalBand ? l_[i][d] : Complex(0);
    }

    std::vector<std::array<Complex, kNormalBand + 1>> l_;
};

double squared_norm(const ComplexVector &v) {
    double s = 0;
    for (const auto &c : v) {
        s += std::norm(c);
    }
    return s;
}

void normalize(ComplexVector &v) {
    double n = std::sqrt(squared_norm(v));
    for (auto &c : v) {
        c /= n;
    }
}

double normalized_ratio(double forward, double backward) {
    double mean = (forward + backward) / 2;
    return mean > 0 ? std::sqrt(forward / mean) : 0.0;
}

ComplexVector start_vector(const Axis &axis) {
    double width = (axis.x_max - axis.x_min) / 6;
    double center = (axis.x_max + axis.x_min) / 2;
    ComplexVector v(axis.points);
    for (size_t j = 0; j < axis.points; j++) {
        double t = (axis.coordinate(j) - center) / width;
        v[j] = std::exp(Complex(-t * t, 0.3 * t));
    }
    normalize(v);
    return v;
}

// Minimal Nelder-Mead on R^n.
std::vector<double> nelder_mead(const std::function<double(const std::vector<double> &)> &f, std::vector<double> start,
                                double step, int max_evaluations, size_t &evaluations) {
    size_t n = start.size();
    std::vector<std::vector<double>> simplex{start};
    for (size_t k = 0; k < n; k++) {
        auto p = start;
        p[k] += step;
        simplex.push_back(p);
    }
    std::vector<double> values;
    for (const auto &p : simplex) {
        values.push_back(f(p));
        evaluations++;
    }
    int used = static_cast<int>(n + 1);
    while (used < max_evaluations) {
        std::vector<size_t> order(n + 1);
        for (size_t k = 0; k <= n; k++) {
            order[k] = k;
        }
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
        size_t best = order.front();
        size_t worst = order.back();
        size_t second = order[n - 1];
        double spread = 0;
        for (const auto &p : simplex) {
            for (size_t k = 0; k < n; k++) {
                spread = std::max(spread, std::abs(p[k] - simplex[best][k]));
            }
        }
        if (spread < 1e-10) {
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (size_t k = 0; k <= n; k++) {
            if (k == worst) {
                continue;
            }
            for (size_t d = 0; d < n; d++) {
                centroid[d] += simplex[k][d] / static_cast<double>(n);
            }
        }
        auto along = [&](double t) {
            std::vector<double> p(n);
            for (size_t d = 0; d < n; d++) {
                p[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
            }
            return p;
        };
        auto eval = [&](const std::vector<double> &p) {
            used++;
            evaluations++;
            return f(p);
        };
        auto reflected = along(-1);
        double fr = eval(reflected);
        if (fr < values[best]) {
            auto expanded = along(-2);
            double fe = eval(expanded);
            if (fe < fr) {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
        } else if (fr < values[second]) {
            simplex[worst] = reflected;
            values[worst] = fr;
        } else {
            auto contracted = along(fr < values[worst] ? -0.5 : 0.5);
            double fc = eval(contracted);
            if (fc < std::min(fr, values[worst])) {
                simplex[worst] = contracted;
                values[worst] = fc;
            } else {
                for (size_t k = 0; k <= n; k++) {
                    if (k == best) {
                        continue;
                    }
                    for (size_t d = 0; d < n; d++) {
                        simplex[k][d] = simplex[best][d] + 0.5 * (simplex[k][d] - simplex[best][d]);
                    }
                    values[k] = eval(simplex[k]);
                }
            }
        }
    }
    size_t best = static_cast<size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    return simplex[best];
}

// Maps search parameters to a unit lambda. Two operators use angles; other counts use
// a normalized vector of real (and, for complex lambda, imaginary) parts.
struct Parametrization {
    size_t operators = 0;
    bool real_only = false;

    LandscapePoint point(const std::vector<double> &p) const {
        LandscapePoint lp;
        if (operators == 2) {
            lp.theta = p[0];
            lp.phi = real_only ? 0.0 : p[1];
            lp.lambda = sphere_point(lp.theta, lp.phi);
            return lp;
        }
        ComplexVector lambda(operators);
        double norm = 0;
        for (size_t k = 0; k < operators; k++) {
            lambda[k] = Complex(p[k], real_only ? 0.0 : p[operators + k]);
            norm += std::norm(lambda[k]);
        }
        norm = std::sqrt(norm);
        for (auto &c : lambda) {
            c = norm > 0 ? c / norm : Complex(0);
        }
        lp.lambda = lambda;
        return lp;
    }
};

}  // namespace

ComplexVector sphere_point(double theta, double phi) {
    return {Complex(std::cos(theta), 0), std::sin(theta) * std::exp(Complex(0, phi))};
}

ResidualEvaluation annihilation_residual(const std::vector<GridOperator> &ops, const ComplexVector &lambda,
                                         const Grid &grid, int max_iterations) {
    if (grid.dims() != 1) {
        throw DimensionMismatch("the saturation search works on a line grid");
    }
    const Axis &axis = grid.axis(0);
    ResidualEvaluation out;
    out.lambda = lambda;
    Combined c = combine(ops, lambda);
    ComplexVector psi = start_vector(axis);
    if (c.is_zero()) {
        // K_lambda = 0 annihilates every state.
        out.zero_operator = true;
        out.state = std::move(psi);
        return out;
    }
    BandedOperator k = discretize(c, axis);
    BandedCholesky chol(k, 1e-13);
    double previous = -1;
    double rayleigh = 0;
    for (int it = 0; it < max_iterations; it++) {
        psi = chol.solve(std::move(psi));
        normalize(psi);
        rayleigh = squared_norm(k.apply(psi, false));
        out.iterations = it + 1;
        if (previous >= 0 && std::abs(rayleigh - previous) <= 1e-12 * previous) {
            break;
        }
        previous = rayleigh;
    }
    double forward = squared_norm(k.apply(psi, false));
    double backward = squared_norm(k.apply(psi, true));
    out.sigma_min = std::sqrt(forward);

    out.central_residual = normalized_ratio(forward, backward);

    // K psi = (c + a x) psi + b psi' and K^dagger psi = (c* + a* x) psi - b* psi'.
    ComplexVector dpsi = spectral_derivative(grid, 0, psi);
    double spectral_forward = 0;
    double spectral_backward = 0;
    for (size_t j = 0; j < psi.size(); j++) {
        Complex mult = c.constant + c.linear * axis.coordinate(j);
        spectral_forward += std::norm(mult * psi[j] + c.derivative * dpsi[j]);
        spectral_backward += std::norm(std::conj(mult) * psi[j] - std::conj(c.derivative) * dpsi[j]);
    }
    out.spectral_residual = normalized_ratio(spectral_forward, spectral_backward);
    out.residual = std::max(out.central_residual, out.spectral_residual);
    double h = axis.spacing();
    for (auto &a : psi) {
        a /= std::sqrt(h);
    }
    out.state = std::move(psi);
    return out;
}

AnnihilationSearch min_annihilation_residual(const std::vector<GridOperator> &ops, const Grid &grid,
                                             const SearchOptions &options) {
    if (ops.empty()) {
        throw ConfigError("saturation search needs at least one operator");
    }
    if (options.resolution < 2) {
        throw ConfigError("saturation scan resolution must be at least 2");
    }
    AnnihilationSearch search;
    Parametrization param{ops.size(), options.real_only};
    auto evaluate = [&](LandscapePoint lp) {
        auto r = annihilation_residual(ops, lp.lambda, grid, options.max_iterations);
        search.evaluations++;
        lp.residual = r.residual;
        lp.sigma_min = r.sigma_min;
        return lp;
    };

    std::vector<std::vector<double>> samples;
    double pi = std::numbers::pi;
    if (ops.size() == 2 && options.real_only) {
        // theta in [0, pi) covers every real direction up to sign.
        for (size_t i = 0; i < options.real_slice_points; i++) {
            samples.push_back({pi * static_cast<double>(i) / static_cast<double>(options.real_slice_points)});
        }
    } else if (ops.size() == 2) {
        for (size_t i = 0; i < options.resolution; i++) {
            double theta = (pi / 2) * static_cast<double>(i) / static_cast<double>(options.resolution - 1);
            for (size_t j = 0; j < options.resolution; j++) {
                samples.push_back({theta, 2 * pi * static_cast<double>(j) / static_cast<double>(options.resolution)});
            }
        }
    } else {
        std::mt19937_64 rng(options.seed);
        std::normal_distribution<double> normal;
        size_t count = options.real_only ? options.real_slice_points : options.resolution * options.resolution;
        size_t width = options.real_only ? ops.size() : 2 * ops.size();
        for (size_t i = 0; i < count; i++) {
            std::vector<double> p(width);
            for (auto &v : p) {
                v = normal(rng);
            }
            samples.push_back(std::move(p));
        }
    }

    std::vector<double> best_params;
    for (const auto &p : samples) {
        auto lp = evaluate(param.point(p));
        if (search.landscape.empty() || lp.residual < search.best.residual) {
            search.best = lp;
            best_params = p;
        }
        search.landscape.push_back(std::move(lp));
    }

    if (options.refine && search.best.residual > 0) {
        size_t nm_evaluations = 0;
        double step = ops.size() == 2 ? pi / static_cast<double>(4 * options.resolution) : 0.05;
        auto objective = [&](const std::vector<double> &p) {
            double r = annihilation_residual(ops, param.point(p).lambda, grid, options.max_iterations).residual;
            return r * r;
        };
        auto refined = nelder_mead(objective, best_params, step, 400, nm_evaluations);
        search.evaluations += nm_evaluations;
        auto lp = evaluate(param.point(refined));
        if (lp.residual < search.best.residual) {
            search.best = lp;
        }
    }

    auto at_best = annihilation_residual(ops, search.best.lambda, grid, options.max_iterations);
    search.argmin_state = at_best.state;
    search.central_residual = at_best.central_residual;
    search.spectral_residual = at_best.spectral_residual;
    search.refined_residual = annihilation_residual(ops, search.best.lambda, grid.staggered_refined(), options.max_iterations).residual;
    double r = search.best.residual;
    if (std::abs(r - search.refined_residual) > 0.1 * std::max(r, 1e-3)) {
        throw GridTooCoarse("saturation residual moves from " + std::to_string(r) + " to " +
                            std::to_string(search.refined_residual) + " when the spacing is halved");
    }
    return search;
}

std::vector<double> refinement_residuals(const std::vector<GridOperator> &ops, const ComplexVector &lambda,
                                         const Grid &grid, int levels) {
    std::vector<double> out;
    Grid g = grid;
    for (int level = 0; level < levels; level++) {
        out.push_back(annihilation_residual(ops, lambda, g).residual);
        if (level + 1 < levels) {
            g = g.staggered_refined();
        }
    }
    return out;
}

std::string landscape_csv(const std::vector<LandscapePoint> &points) {
    std::ostringstream out;
    out.precision(17);
    size_t width = points.empty() ? 0 : points.front().lambda.size();
    out << "theta,phi";
    for (size_t k = 0; k < width; k++) {
        out << ",lambda" << k + 1 << "_re,lambda" << k + 1 << "_im";
    }
    out << ",residual,sigma_min\n";
    for (const auto &p : points) {
        out << p.theta << ',' << p.phi;
        for (const auto &c : p.lambda) {
            out << ',' << c.real() << ',' << c.imag();
        }
        out << ',' << p.residual << ',' << p.sigma_min << '\n';
    }
    return out.str();
}

namespace {

std::vector<GridOperator> amplifier_operators(double gain) {
    std::vector<GridOperator> ops;
    for (const auto &k : noise_disturbance_vectors(bae_interaction(gain))) {
        if (std::abs(k.coeffs[0]) > 1e-12 || std::abs(k.coeffs[1]) > 1e-12) {
            throw ConfigError("amplifier noise and disturbance should act on the probe only");
        }
        ops.push_back(GridOperator::quadrature({k.coeffs[2]}, {k.coeffs[3]}, k.offset, kQuadratureGamma));
    }
    return ops;
}

// With u = (x_a + x_b) / sqrt 2 and v = (x_a - x_b) / sqrt 2, an operator whose object
// and probe coefficients agree acts on u alone.
std::vector<GridOperator> transducer_operators() {
    std::vector<GridOperator> ops;
    for (const auto &k : noise_disturbance_vectors(transducer_interaction())) {
        if (std::abs(k.coeffs[0] - k.coeffs[2]) > 1e-12 || std::abs(k.coeffs[1] - k.coeffs[3]) > 1e-12) {
            throw ConfigError("transducer vectors are expected to act on the symmetric coordinate");
        }
        double x = (k.coeffs[0] + k.coeffs[2]) / std::sqrt(2.0);
        double y = (k.coeffs[1] + k.coeffs[3]) / std::sqrt(2.0);
        ops.push_back(GridOperator::quadrature({x}, {y}, k.offset, kQuadratureGamma));
    }
    return ops;
}

}  // namespace

std::vector<GridOperator> saturation_operators(const std::string &scenario, double gain) {
    if (scenario == "bae") {
        if (gain == 0 || !std::isfinite(gain)) {
            throw ConfigError("gain must be finite and non-zero");
        }
        return amplifier_operators(gain);
    }
    if (scenario == "transducer") {
        return transducer_operators();
    }
    throw ConfigError("saturation search is defined for bae and transducer, not '" + scenario + "'");
}

namespace {

nlohmann::json complex_json(const ComplexVector &v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &c : v) {
        out.push_back({{"re", c.real()}, {"im", c.imag()}});
    }
    return out;
}

nlohmann::json point_json(const LandscapePoint &p) {
    return {{"theta", p.theta}, {"phi", p.phi}, {"lambda", complex_json(p.lambda)}, {"residual", p.residual},
            {"sigma_min", p.sigma_min}};
}

nlohmann::json search_json(const AnnihilationSearch &s, bool include_landscape) {
    nlohmann::json out{{"best", point_json(s.best)},
                       {"central_residual", s.central_residual},
                       {"spectral_residual", s.spectral_residual},
                       {"refined_residual", s.refined_residual},
                       {"evaluations", s.evaluations},
                       {"samples", s.landscape.size()}};
    if (include_landscape) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto &p : s.landscape) {
            pts.push_back(point_json(p));
        }
        out["landscape"] = std::move(pts);
    }
    return out;
}

}  // namespace

SaturationReport saturation_report(const std::string &scenario, double gain, const SearchOptions &options) {
    SaturationReport report;
    report.scenario = scenario;
    report.gain = gain;
    report.derivative = "central4 search, spectral cross-check";
    report.grid = default_line(0.25);
    ComplexVector distinguished;
    if (scenario == "bae") {
        if (gain == 0 || !std::isfinite(gain)) {
            throw ConfigError("gain must be finite and non-zero");
        }
        report.operators = saturation_operators("bae", gain);
        double norm = std::sqrt(gain * gain + 1 / (gain * gain));
        distinguished = {Complex(gain / norm, 0), Complex(0, -1 / (gain * norm))};
        report.expected_claim = "no square-integrable state saturates the matrix relation";
    } else if (scenario == "transducer") {
        report.operators = saturation_operators("transducer");
        distinguished = {Complex(1, 0), Complex(0, 0)};
        report.expected_claim = "saturated by any state when lambda_2 = 0";
    } else {
        throw ConfigError("saturation search is defined for bae and transducer, not '" + scenario + "'");
    }

    SearchOptions complex_options = options;
    complex_options.real_only = false;
    SearchOptions real_options = options;
    real_options.real_only = true;
    report.complex_scan = min_annihilation_residual(report.operators, report.grid, complex_options);
    report.real_slice = min_annihilation_residual(report.operators, report.grid, real_options);
    report.distinguished = annihilation_residual(report.operators, distinguished, report.grid, options.max_iterations);
    report.distinguished_refinement = refinement_residuals(report.operators, distinguished, report.grid);

    std::ostringstream finding;
    finding.precision(3);
    if (scenario == "bae") {
        double real_min = report.real_slice.best.residual;
        double complex_min = report.complex_scan.best.residual;
        const Axis &axis = report.grid.axis(0);
        GridState vacuum = gaussian_state(report.grid, 0.25, 0, kQuadratureGamma);
        report.distinguished_vacuum_overlap = std::abs(inner(report.grid, vacuum.amplitudes(), report.distinguished.state));
        double spread = 0;
        for (size_t j = 0; j < axis.points; j++) {
            double x = axis.coordinate(j);
            spread += std::norm(report.complex_scan.argmin_state[j]) * x * x * axis.spacing();
        }
        report.argmin_position_variance = spread;
        report.claim_confirmed = real_min > 0.1;
        report.is_finding = complex_min < 1e-3;
        finding << "real lambda: smallest residual " << real_min << ", no annihilated state; complex lambda: residual "
                << complex_min << " at theta = " << report.complex_scan.best.theta
                << ", phi = " << report.complex_scan.best.phi << " (a squeezed Gaussian with <x^2> = " << spread
                << "); at lambda proportional to (G, -i/G) the annihilated state is the vacuum (overlap "
                << report.distinguished_vacuum_overlap << ", residual " << report.distinguished.residual << ")";
    } else {
        report.claim_confirmed = report.distinguished.zero_operator && report.distinguished.residual == 0;
        report.is_finding = false;
        finding << "K_lambda vanishes identically at lambda = (1, 0); every state is annihilated (residual "
                << report.distinguished.residual << ")";
    }
    report.oracle_finding = finding.str();
    return report;
}

nlohmann::json to_json(const SaturationReport &report, bool include_landscape) {
    const Axis &axis = report.grid.axis(0);
    return {{"scenario", report.scenario},
            {"gain", report.gain},
            {"grid", {{"x_min", axis.x_min}, {"x_max", axis.x_max}, {"points", axis.points}}},
            {"derivative", report.derivative},
            {"expected_claim", report.expected_claim},
            {"oracle_finding", report.oracle_finding},
            {"claim_confirmed", report.claim_confirmed},
            {"is_finding", report.is_finding},
            {"complex_scan", search_json(report.complex_scan, include_landscape)},
            {"real_slice", search_json(report.real_slice, include_landscape)},
            {"argmin_position_variance", report.argmin_position_variance},
            {"distinguished",
             {{"lambda", complex_json(report.distinguished.lambda)},
              {"residual", report.distinguished.residual},
              {"sigma_min", report.distinguished.sigma_min},
              {"central_residual", report.distinguished.central_residual},
              {"spectral_residual", report.distinguished.spectral_residual},
              {"zero_operator", report.distinguished.zero_operator},
              {"vacuum_overlap", report.distinguished_vacuum_overlap},
              {"refinement_residuals", report.distinguished_refinement}}}};
}

}  // namespace ndup
