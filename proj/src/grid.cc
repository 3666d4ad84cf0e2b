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

#include "ndup/grid.h"

#include <cmath>
#include <numbers>

namespace ndup {

namespace {

void require_dims(const GridOperator &op, const Grid &grid) {
    if (op.dims() != grid.dims() || op.derivative.size() != grid.dims() || op.quadratic.rows() != grid.dims() ||
        op.quadratic.cols() != grid.dims()) {
        throw DimensionMismatch("operator acts on " + std::to_string(op.dims()) + " coordinates, grid has " +
                                std::to_string(grid.dims()));
    }
}

// Strides of the flat layout: the last axis varies fastest.
std::pair<size_t, size_t> stride_and_count(const Grid &grid, size_t axis) {
    size_t stride = 1;
    for (size_t d = axis + 1; d < grid.dims(); d++) {
        stride *= grid.axis(d).points;
    }
    return {stride, grid.axis(axis).points};
}

// Applies a 1-D linear map along one axis of every line of the grid.
template <typename LineOp>
ComplexVector along_axis(const Grid &grid, size_t axis, const ComplexVector &psi, LineOp line_op) {
    if (psi.size() != grid.size()) {
        throw DimensionMismatch("amplitude count does not match the grid");
    }
    auto [stride, n] = stride_and_count(grid, axis);
    size_t block = stride * n;
    ComplexVector out(psi.size());
    ComplexVector line(n);
    ComplexVector result(n);
    for (size_t base = 0; base < psi.size(); base += block) {
        for (size_t offset = 0; offset < stride; offset++) {
            for (size_t k = 0; k < n; k++) {
                line[k] = psi[base + offset + k * stride];
            }
            line_op(line, result);
            for (size_t k = 0; k < n; k++) {
                out[base + offset + k * stride] = result[k];
            }
        }
    }
    return out;
}

}  // namespace

std::string to_string(Derivative d) {
    return d == Derivative::spectral ? "spectral" : "central4";
}

Derivative derivative_from_string(const std::string &name) {
    if (name == "spectral") {
        return Derivative::spectral;
    }
    if (name == "central4") {
        return Derivative::central4;
    }
    throw ConfigError("unknown derivative '" + name + "' (expected spectral or central4)");
}

Axis Axis::centered(double half_width, size_t points) {
    return {-half_width, half_width, points};
}

Grid Grid::make(std::vector<Axis> axes) {
    if (axes.empty() || axes.size() > 2) {
        throw ConfigError("grids have one or two axes, got " + std::to_string(axes.size()));
    }
    for (const auto &a : axes) {
        if (a.points < kMinAxisPoints) {
            throw ConfigError("axis needs at least " + std::to_string(kMinAxisPoints) + " points, got " +
                              std::to_string(a.points));
        }
        if (!std::isfinite(a.x_min) || !std::isfinite(a.x_max) || !(a.x_max > a.x_min)) {
            throw ConfigError("axis interval must be finite and non-empty");
        }
        if (axes.size() == 2 && a.points > kMaxPlanarAxisPoints) {
            throw ConfigError("planar grids are capped at " + std::to_string(kMaxPlanarAxisPoints) +
                              " points per axis, got " + std::to_string(a.points));
        }
    }
    Grid g;
    g.axes_ = std::move(axes);
    return g;
}

Grid Grid::line(double half_width, size_t points) {
    return make({Axis::centered(half_width, points)});
}

size_t Grid::size() const {
    size_t n = 1;
    for (const auto &a : axes_) {
        n *= a.points;
    }
    return n;
}

double Grid::cell_volume() const {
    double v = 1;
    for (const auto &a : axes_) {
        v *= a.spacing();
    }
    return v;
}

double Grid::coordinate(size_t flat, size_t d) const {
    auto [stride, n] = stride_and_count(*this, d);
    return axes_.at(d).coordinate((flat / stride) % n);
}

Grid Grid::refined() const {
    std::vector<Axis> axes;
    for (const auto &a : axes_) {
        axes.push_back(a.refined());
    }
    return make(std::move(axes));
}

Grid Grid::staggered_refined() const {
    std::vector<Axis> axes;
    for (const auto &a : axes_) {
        axes.push_back(a.staggered_refined());
    }
    return make(std::move(axes));
}

GridState GridState::make(Grid grid, ComplexVector amplitudes, double gamma) {
    if (amplitudes.size() != grid.size()) {
        throw DimensionMismatch("state has " + std::to_string(amplitudes.size()) + " samples for a grid of " +
                                std::to_string(grid.size()));
    }
    for (const auto &a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw NonFinite("state has non-finite samples");
        }
    }
    if (!(gamma > 0) || !std::isfinite(gamma)) {
        throw ConfigError("commutation constant must be positive");
    }
    double norm = std::sqrt(inner(grid, amplitudes, amplitudes).real());
    if (!(norm > 0)) {
        throw UnrepresentableOnGrid("state vanishes on the grid");
    }
    for (auto &a : amplitudes) {
        a /= norm;
    }
    GridState s;
    s.grid_ = std::move(grid);
    s.amplitudes_ = std::move(amplitudes);
    s.gamma_ = gamma;
    return s;
}

double GridState::norm() const {
    return std::sqrt(inner(grid_, amplitudes_, amplitudes_).real());
}

Complex inner(const Grid &grid, const ComplexVector &u, const ComplexVector &v) {
    if (u.size() != grid.size() || v.size() != grid.size()) {
        throw DimensionMismatch("inner product of vectors that do not match the grid");
    }
    Complex sum = 0;
    for (size_t k = 0; k < u.size(); k++) {
        sum += std::conj(u[k]) * v[k];
    }
    return sum * grid.cell_volume();
}

GridOperator GridOperator::zero(size_t dims) {
    return {0, ComplexVector(dims), ComplexMatrix(dims, dims), ComplexVector(dims)};
}

GridOperator GridOperator::identity(size_t dims) {
    auto op = zero(dims);
    op.constant = 1;
    return op;
}

GridOperator GridOperator::position(size_t dims, size_t axis) {
    auto op = zero(dims);
    op.linear.at(axis) = 1;
    return op;
}

GridOperator GridOperator::conjugate(size_t dims, size_t axis, double gamma) {
    auto op = zero(dims);
    op.derivative.at(axis) = Complex(0, -gamma);
    return op;
}

GridOperator GridOperator::quadrature(const RealVector &x_coeffs, const RealVector &y_coeffs, double offset,
                                      double gamma) {
    if (x_coeffs.size() != y_coeffs.size()) {
        throw DimensionMismatch("quadrature operator needs matching X and Y coefficient counts");
    }
    auto op = zero(x_coeffs.size());
    op.constant = offset;
    for (size_t d = 0; d < x_coeffs.size(); d++) {
        op.linear[d] = x_coeffs[d];
        op.derivative[d] = Complex(0, -gamma * y_coeffs[d]);
    }
    return op;
}

bool GridOperator::is_zero() const {
    auto nil = [](Complex c) { return c == Complex(0); };
    return nil(constant) && std::all_of(linear.begin(), linear.end(), nil) &&
           std::all_of(derivative.begin(), derivative.end(), nil) && max_abs(quadratic) == 0;
}

GridOperator &GridOperator::operator*=(Complex s) {
    constant *= s;
    for (auto &c : linear) {
        c *= s;
    }
    for (auto &c : derivative) {
        c *= s;
    }
    quadratic *= s;
    return *this;
}

GridOperator operator+(GridOperator a, const GridOperator &b) {
    if (a.dims() != b.dims()) {
        throw DimensionMismatch("adding operators on different grids");
    }
    a.constant += b.constant;
    for (size_t d = 0; d < a.dims(); d++) {
        a.linear[d] += b.linear[d];
        a.derivative[d] += b.derivative[d];
    }
    a.quadratic += b.quadratic;
    return a;
}

ComplexVector spectral_derivative(const Grid &grid, size_t axis, const ComplexVector &psi) {
    const Axis &ax = grid.axis(axis);
    size_t n = ax.points;
    double period = static_cast<double>(n) * ax.spacing();
    double pi = std::numbers::pi;
    // The differentiation matrix is circulant: store its entries by offset j - k.
    std::vector<double> coeff(2 * n - 1, 0.0);
    for (size_t m = 1; m < n; m++) {
        double angle = pi * static_cast<double>(m) / static_cast<double>(n);
        double sign = (m % 2) ? -1.0 : 1.0;
        double c = (n % 2 == 0) ? 1.0 / std::tan(angle) : 1.0 / std::sin(angle);
        c *= sign * pi / period;
        coeff[n - 1 + m] = c;
        // cot and csc are odd in the offset; the parity factor is even.
        coeff[n - 1 - m] = -c;
    }
    return along_axis(grid, axis, psi, [&](const ComplexVector &line, ComplexVector &out) {
        for (size_t j = 0; j < n; j++) {
            Complex sum = 0;
            for (size_t k = 0; k < n; k++) {
                sum += coeff[n - 1 + j - k] * line[k];
            }
            out[j] = sum;
        }
    });
}

ComplexVector central4_derivative(const Grid &grid, size_t axis, const ComplexVector &psi) {
    double h = grid.axis(axis).spacing();
    return along_axis(grid, axis, psi, [&](const ComplexVector &line, ComplexVector &out) {
        size_t n = line.size();
        auto at = [&](ptrdiff_t k) { return (k < 0 || k >= static_cast<ptrdiff_t>(n)) ? Complex(0) : line[k]; };
        for (size_t j = 0; j < n; j++) {
            auto s = static_cast<ptrdiff_t>(j);
            out[j] = (at(s - 2) - 8.0 * at(s - 1) + 8.0 * at(s + 1) - at(s + 2)) / (12 * h);
        }
    });
}

ComplexVector apply(const GridOperator &op, const Grid &grid, const ComplexVector &psi, Derivative mode) {
    require_dims(op, grid);
    if (psi.size() != grid.size()) {
        throw DimensionMismatch("amplitude count does not match the grid");
    }
    size_t dims = grid.dims();
    ComplexVector out(psi.size());
    for (size_t k = 0; k < psi.size(); k++) {
        Complex factor = op.constant;
        for (size_t d = 0; d < dims; d++) {
            double xd = grid.coordinate(k, d);
            factor += op.linear[d] * xd;
            for (size_t e = 0; e < dims; e++) {
                factor += op.quadratic(d, e) * xd * grid.coordinate(k, e);
            }
        }
        out[k] = factor * psi[k];
    }
    for (size_t d = 0; d < dims; d++) {
        if (op.derivative[d] == Complex(0)) {
            continue;
        }
        ComplexVector dpsi =
            mode == Derivative::spectral ? spectral_derivative(grid, d, psi) : central4_derivative(grid, d, psi);
        for (size_t k = 0; k < psi.size(); k++) {
            out[k] += op.derivative[d] * dpsi[k];
        }
    }
    return out;
}

Grid default_line(double sigma_xx, double mean_x) {
    if (!(sigma_xx > 0)) {
        throw ConfigError("position variance must be positive");
    }
    double half = kDefaultHalfWidthSpreads * std::sqrt(sigma_xx);
    return Grid::make({{mean_x - half, mean_x + half, kDefaultAxisPoints}});
}

GridState gaussian_state(const Grid &grid, double sigma_xx, double sigma_xy, double gamma, double mean_x,
                         double mean_y) {
    if (grid.dims() != 1) {
        throw DimensionMismatch("single-mode Gaussians live on a line");
    }
    if (!(sigma_xx > 0) || !std::isfinite(sigma_xx) || !std::isfinite(sigma_xy)) {
        throw ConfigError("Gaussian state needs a positive, finite position variance");
    }
    if (!(gamma > 0)) {
        throw ConfigError("commutation constant must be positive");
    }
    // psi(x) = exp(-a (x - mean_x)^2 + i mean_y x / gamma).
    Complex a(1 / (4 * sigma_xx), -sigma_xy / (2 * gamma * sigma_xx));
    const Axis &ax = grid.axis(0);
    double log_floor = std::log(kBoundaryDecay);
    for (double edge : {ax.x_min, ax.x_max}) {
        double d = edge - mean_x;
        if (-a.real() * d * d > log_floor) {
            throw UnrepresentableOnGrid("Gaussian with variance " + std::to_string(sigma_xx) +
                                        " does not decay at the grid edge " + std::to_string(edge));
        }
    }
    // The transform is proportional to exp(-(k - k0)^2 / (4 a)), k0 = mean_y / gamma.
    double k_edge = std::numbers::pi / ax.spacing() - std::abs(mean_y / gamma);
    double decay_rate = (1.0 / (4.0 * a)).real();
    if (k_edge <= 0 || -decay_rate * k_edge * k_edge > log_floor) {
        throw UnrepresentableOnGrid("Gaussian is not resolved: wavenumber content reaches the grid cutoff");
    }
    ComplexVector amps(grid.size());
    for (size_t k = 0; k < amps.size(); k++) {
        double x = ax.coordinate(k);
        double d = x - mean_x;
        amps[k] = std::exp(-a * d * d + Complex(0, mean_y * x / gamma));
    }
    return GridState::make(grid, std::move(amps), gamma);
}

GridState gaussian_state_matching(const Grid &grid, const RealMatrix &sigma, double gamma, const RealVector &mean,
                                  double tol) {
    if (sigma.rows() != 2 || sigma.cols() != 2 || mean.size() != 2) {
        throw DimensionMismatch("single-mode covariance must be 2x2 with a length-2 mean");
    }
    double xx = sigma(0, 0);
    double xy = sigma(0, 1);
    double yy = sigma(1, 1);
    if (std::abs(sigma(1, 0) - xy) > tol) {
        throw NonHermitianInput("covariance is not symmetric");
    }
    if (!(xx > 0) || !(yy > 0)) {
        throw UnphysicalCovariance("Gaussian states have positive variances");
    }
    if (xy * xy > xx * yy) {
        throw UnphysicalCovariance("correlation " + std::to_string(xy) + " exceeds the Cauchy-Schwarz bound " +
                                   std::to_string(std::sqrt(xx * yy)));
    }
    double pure_yy = (gamma * gamma / 4 + xy * xy) / xx;
    if (std::abs(yy - pure_yy) > tol * std::max(1.0, pure_yy)) {
        throw UnphysicalCovariance("covariance is not that of a pure Gaussian: sigma_yy = " + std::to_string(yy) +
                                   ", purity requires " + std::to_string(pure_yy));
    }
    return gaussian_state(grid, xx, xy, gamma, mean[0], mean[1]);
}

GridState product_state(const GridState &first, const GridState &second) {
    if (first.grid().dims() != 1 || second.grid().dims() != 1) {
        throw DimensionMismatch("product states combine two single-axis states");
    }
    if (first.gamma() != second.gamma()) {
        throw ConfigError("factors use different commutation constants");
    }
    Grid grid = Grid::make({first.grid().axis(0), second.grid().axis(0)});
    const auto &a = first.amplitudes();
    const auto &b = second.amplitudes();
    ComplexVector amps(a.size() * b.size());
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < b.size(); j++) {
            amps[i * b.size() + j] = a[i] * b[j];
        }
    }
    return GridState::make(std::move(grid), std::move(amps), first.gamma());
}

Complex expectation(const GridState &state, const GridOperator &op, Derivative mode) {
    return inner(state.grid(), state.amplitudes(), apply(op, state.grid(), state.amplitudes(), mode));
}

double symmetrized_moment(const GridState &state, const GridOperator &a, const GridOperator &b, Derivative mode) {
    auto pa = apply(a, state.grid(), state.amplitudes(), mode);
    auto pb = apply(b, state.grid(), state.amplitudes(), mode);
    return inner(state.grid(), pa, pb).real();
}

RealMatrix moment_matrix(const GridState &state, const std::vector<GridOperator> &ops, Derivative mode) {
    std::vector<ComplexVector> images;
    images.reserve(ops.size());
    for (const auto &op : ops) {
        images.push_back(apply(op, state.grid(), state.amplitudes(), mode));
    }
    RealMatrix k(ops.size(), ops.size());
    for (size_t a = 0; a < ops.size(); a++) {
        for (size_t b = a; b < ops.size(); b++) {
            k(a, b) = k(b, a) = inner(state.grid(), images[a], images[b]).real();
        }
    }
    return k;
}

Complex commutator_expectation(const GridState &state, size_t axis, Derivative mode) {
    size_t dims = state.grid().dims();
    auto x = apply(GridOperator::position(dims, axis), state.grid(), state.amplitudes(), mode);
    auto y = apply(GridOperator::conjugate(dims, axis, state.gamma()), state.grid(), state.amplitudes(), mode);
    // <XY> - <YX> = <X psi, Y psi> - <Y psi, X psi> for Hermitian X and Y.
    return inner(state.grid(), x, y) - inner(state.grid(), y, x);
}

ConvergedMoments converged_moment_matrix(const std::function<GridState(const Grid &)> &prepare, const Grid &grid,
                                         const std::vector<GridOperator> &ops, double tol, Derivative mode) {
    ConvergedMoments out;
    Grid fine = grid.refined();
    out.moments = moment_matrix(prepare(grid), ops, mode);
    out.refined_moments = moment_matrix(prepare(fine), ops, mode);
    out.points = grid.size();
    out.refined_points = fine.size();
    double scale = std::max(max_abs(out.refined_moments), 1e-300);
    out.max_relative_change = max_abs_diff(out.moments, out.refined_moments) / scale;
    if (out.max_relative_change > tol) {
        throw GridTooCoarse("moments change by " + std::to_string(out.max_relative_change) +
                            " (relative) when the spacing is halved");
    }
    return out;
}

nlohmann::json to_json(const GridState &state) {
    nlohmann::json samples = nlohmann::json::array();
    const Grid &g = state.grid();
    for (size_t k = 0; k < g.size(); k++) {
        nlohmann::json row = nlohmann::json::array();
        for (size_t d = 0; d < g.dims(); d++) {
            row.push_back(g.coordinate(k, d));
        }
        row.push_back(state.amplitudes()[k].real());
        row.push_back(state.amplitudes()[k].imag());
        samples.push_back(std::move(row));
    }
    return {{"gamma", state.gamma()}, {"dims", g.dims()}, {"samples", std::move(samples)}};
}

}  // namespace ndup
