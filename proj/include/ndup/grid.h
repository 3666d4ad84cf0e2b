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

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ndup/matrix.h"

namespace ndup {

/// Smallest number of points allowed on any axis.
inline constexpr size_t kMinAxisPoints = 64;
/// Default points per axis for one-dimensional grids.
inline constexpr size_t kDefaultAxisPoints = 512;
/// Largest number of points per axis on a two-dimensional grid.
inline constexpr size_t kMaxPlanarAxisPoints = 256;
/// Default points per axis for two-dimensional grids; one refinement stays under the cap.
inline constexpr size_t kDefaultPlanarAxisPoints = 128;
/// Default half-width of an axis in units of the largest position spread.
inline constexpr double kDefaultHalfWidthSpreads = 12.0;
/// Edge amplitude, relative to the peak, above which a state is not representable.
inline constexpr double kBoundaryDecay = 1e-12;

enum class Derivative { spectral, central4 };

std::string to_string(Derivative d);
Derivative derivative_from_string(const std::string &name);

/// Uniform axis including both end points.
struct Axis {
    double x_min = 0;
    double x_max = 0;
    size_t points = 0;

    static Axis centered(double half_width, size_t points);

    double spacing() const {
        return (x_max - x_min) / static_cast<double>(points - 1);
    }
    double coordinate(size_t k) const {
        return x_min + spacing() * static_cast<double>(k);
    }
    /// Same interval with half the spacing.
    Axis refined() const {
        return {x_min, x_max, 2 * points - 1};
    }
    /// Half the spacing with nodes at the midpoints of the refined cells: 2 * points
    /// nodes, the interval widened by a quarter spacing on each side. Keeps the parity
    /// of the node pattern, so no node lands where the coarse grid had none (e.g. x = 0).
    Axis staggered_refined() const {
        double quarter = spacing() / 4;
        return {x_min - quarter, x_max + quarter, 2 * points};
    }
    bool operator==(const Axis &) const = default;
};

/// One- or two-dimensional tensor grid; the last axis varies fastest.
class Grid {
   public:
    /// Throws ConfigError for empty or non-uniform input, fewer than kMinAxisPoints
    /// points, or a planar grid above kMaxPlanarAxisPoints per axis.
    static Grid make(std::vector<Axis> axes);
    static Grid line(double half_width, size_t points = kDefaultAxisPoints);

    size_t dims() const {
        return axes_.size();
    }
    const Axis &axis(size_t d) const {
        return axes_.at(d);
    }
    size_t size() const;
    double cell_volume() const;
    /// Coordinate of flat index `flat` along axis d.
    double coordinate(size_t flat, size_t d) const;
    Grid refined() const;
    Grid staggered_refined() const;
    bool operator==(const Grid &) const = default;

   private:
    std::vector<Axis> axes_;
};

/// Sampled wavefunction. Position operators act by multiplication; the conjugate of
/// axis d is -(i gamma) d/dx_d.
class GridState {
   public:
    /// Throws DimensionMismatch on size mismatch and NonFinite for bad samples. The
    /// amplitudes are normalized with the grid quadrature.
    static GridState make(Grid grid, ComplexVector amplitudes, double gamma);

    const Grid &grid() const {
        return grid_;
    }
    const ComplexVector &amplitudes() const {
        return amplitudes_;
    }
    double gamma() const {
        return gamma_;
    }
    double norm() const;

   private:
    Grid grid_;
    ComplexVector amplitudes_;
    double gamma_ = 0;
};

/// Inner product <u, v> with the grid quadrature weights.
Complex inner(const Grid &grid, const ComplexVector &u, const ComplexVector &v);

/// Operator c + sum_d a_d x_d + sum_{d,e} q_de x_d x_e + sum_d b_d d/dx_d.
struct GridOperator {
    Complex constant = 0;
    ComplexVector linear;
    ComplexMatrix quadratic;
    ComplexVector derivative;

    static GridOperator zero(size_t dims);
    static GridOperator identity(size_t dims);
    static GridOperator position(size_t dims, size_t axis);
    static GridOperator conjugate(size_t dims, size_t axis, double gamma);
    /// offset + sum_d (x_coeffs[d] X_d + y_coeffs[d] Y_d).
    static GridOperator quadrature(const RealVector &x_coeffs, const RealVector &y_coeffs, double offset, double gamma);

    size_t dims() const {
        return linear.size();
    }
    bool is_zero() const;
    GridOperator &operator*=(Complex s);
    friend GridOperator operator+(GridOperator a, const GridOperator &b);
    friend GridOperator operator*(Complex s, GridOperator a) {
        return a *= s;
    }
};

/// Applies an operator to sampled amplitudes.
ComplexVector apply(const GridOperator &op, const Grid &grid, const ComplexVector &psi,
                    Derivative mode = Derivative::spectral);

/// Periodic Fourier differentiation along one axis.
ComplexVector spectral_derivative(const Grid &grid, size_t axis, const ComplexVector &psi);
/// Fourth-order central differences with zero amplitude outside the grid.
ComplexVector central4_derivative(const Grid &grid, size_t axis, const ComplexVector &psi);

/// Default line for a single-mode Gaussian: kDefaultAxisPoints points over
/// +-kDefaultHalfWidthSpreads * sqrt(sigma_xx) around the mean.
Grid default_line(double sigma_xx, double mean_x = 0);

/// Pure single-mode Gaussian with <X^2> - <X>^2 = sigma_xx and symmetrized covariance
/// sigma_xy; purity fixes sigma_yy = (gamma^2 / 4 + sigma_xy^2) / sigma_xx. Throws
/// ConfigError for sigma_xx <= 0 and UnrepresentableOnGrid when the state does not
/// decay to kBoundaryDecay of its peak at the edges in position or wavenumber.
GridState gaussian_state(const Grid &grid, double sigma_xx, double sigma_xy, double gamma, double mean_x = 0,
                         double mean_y = 0);

/// Like gaussian_state, but takes the full 2x2 covariance and rejects it with
/// UnphysicalCovariance unless it is the covariance of a pure Gaussian.
GridState gaussian_state_matching(const Grid &grid, const RealMatrix &sigma, double gamma, const RealVector &mean = {0, 0},
                                  double tol = 1e-9);

/// Product state on the planar grid spanned by the two factors' axes.
GridState product_state(const GridState &first, const GridState &second);

/// <psi| op |psi>.
Complex expectation(const GridState &state, const GridOperator &op, Derivative mode = Derivative::spectral);

/// Re <A psi, B psi>, the symmetrized product <{A, B}> / 2 for Hermitian A and B.
double symmetrized_moment(const GridState &state, const GridOperator &a, const GridOperator &b,
                          Derivative mode = Derivative::spectral);

/// Raw second moments Re <K_a psi, K_b psi>.
RealMatrix moment_matrix(const GridState &state, const std::vector<GridOperator> &ops,
                         Derivative mode = Derivative::spectral);

/// <[X_d, Y_d]> evaluated by applying both operators to the state.
Complex commutator_expectation(const GridState &state, size_t axis, Derivative mode = Derivative::spectral);

struct ConvergedMoments {
    RealMatrix moments;
    RealMatrix refined_moments;
    double max_relative_change = 0;
    size_t points = 0;
    size_t refined_points = 0;
};

/// Evaluates the moments on `grid` and on its refinement and throws GridTooCoarse
/// when any entry moves by more than `tol` relative to the largest entry.
ConvergedMoments converged_moment_matrix(const std::function<GridState(const Grid &)> &prepare, const Grid &grid,
                                         const std::vector<GridOperator> &ops, double tol = 1e-6,
                                         Derivative mode = Derivative::spectral);

/// Samples as [[x..., re, im], ...] for plotting.
nlohmann::json to_json(const GridState &state);

}  // namespace ndup
