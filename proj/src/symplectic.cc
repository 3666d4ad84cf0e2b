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

#include "ndup/symplectic.h"

#include <numbers>
#include <numeric>

namespace ndup {

RealMatrix standard_symplectic_unit(size_t modes) {
    RealMatrix j(2 * modes, 2 * modes);
    for (size_t k = 0; k < modes; k++) {
        j(k, modes + k) = 1;
        j(modes + k, k) = -1;
    }
    return j;
}

SymplecticForm::SymplecticForm(std::vector<size_t> block_modes, double gamma)
    : block_modes_(std::move(block_modes)), gamma_(gamma) {
    if (block_modes_.empty() || std::any_of(block_modes_.begin(), block_modes_.end(), [](size_t k) { return k == 0; })) {
        throw DimensionMismatch("symplectic form needs at least one non-empty block");
    }
    if (!std::isfinite(gamma) || gamma == 0) {
        throw NonFinite("commutation constant must be finite and nonzero");
    }
    RealMatrix m(0, 0);
    for (size_t k : block_modes_) {
        m = direct_sum(m, standard_symplectic_unit(k));
    }
    matrix_ = gamma_ * m;
}

SymplecticForm SymplecticForm::standard(size_t modes, double gamma) {
    return SymplecticForm({modes}, gamma);
}

SymplecticForm SymplecticForm::blocks(std::vector<size_t> block_modes, double gamma) {
    return SymplecticForm(std::move(block_modes), gamma);
}

size_t SymplecticForm::modes() const {
    return std::accumulate(block_modes_.begin(), block_modes_.end(), size_t{0});
}

RealMatrix SymplecticForm::unit() const {
    return (1 / gamma_) * matrix_;
}

RealMatrix SymplecticForm::permutation_to_standard() const {
    size_t n = modes();
    RealMatrix p(2 * n, 2 * n);
    size_t mode_offset = 0;
    for (size_t k : block_modes_) {
        size_t form_offset = 2 * mode_offset;
        for (size_t i = 0; i < k; i++) {
            p(mode_offset + i, form_offset + i) = 1;
            p(n + mode_offset + i, form_offset + k + i) = 1;
        }
        mode_offset += k;
    }
    return p;
}

std::vector<std::pair<size_t, size_t>> SymplecticForm::conjugate_pairs() const {
    std::vector<std::pair<size_t, size_t>> pairs;
    size_t offset = 0;
    for (size_t k : block_modes_) {
        for (size_t i = 0; i < k; i++) {
            pairs.emplace_back(offset + i, offset + k + i);
        }
        offset += 2 * k;
    }
    return pairs;
}

double symplectic_defect(const RealMatrix &s, const SymplecticForm &form) {
    if (s.rows() != form.dim() || s.cols() != form.dim()) {
        throw DimensionMismatch(
            "matrix " + s.shape_str() + " does not act on a " + std::to_string(form.dim()) + "-dimensional phase space");
    }
    RealMatrix j = form.unit();
    return max_abs_diff(s * j * s.transposed(), j);
}

bool is_symplectic(const RealMatrix &s, const SymplecticForm &form, double tol) {
    return symplectic_defect(s, form) <= tol;
}

RealMatrix phase_rotation(double angle) {
    double c = std::cos(angle);
    double s = std::sin(angle);
    return RealMatrix{{c, s}, {-s, c}};
}

RealMatrix random_symplectic(size_t modes, std::mt19937_64 &rng) {
    size_t n = modes;
    std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
    std::uniform_real_distribution<double> log_squeeze(-0.6, 0.6);
    std::uniform_real_distribution<double> shear(-0.5, 0.5);

    RealMatrix s = RealMatrix::identity(2 * n);
    size_t layers = 2 + n;
    for (size_t layer = 0; layer < layers; layer++) {
        for (size_t k = 0; k < n; k++) {
            RealMatrix e = RealMatrix::identity(2 * n);
            double th = angle(rng);
            double c = std::cos(th);
            double sn = std::sin(th);
            double r = std::exp(log_squeeze(rng));
            // squeeze(r) * rotation
            e(k, k) = r * c;
            e(k, n + k) = r * sn;
            e(n + k, k) = -sn / r;
            e(n + k, n + k) = c / r;
            s = e * s;
        }

        RealMatrix e = RealMatrix::identity(2 * n);
        for (size_t a = 0; a < n; a++) {
            for (size_t b = a; b < n; b++) {
                double v = shear(rng);
                e(n + a, b) = v;
                e(n + b, a) = v;
            }
        }
        s = e * s;

        for (size_t a = 0; a + 1 < n; a++) {
            for (size_t b = a + 1; b < n; b++) {
                double th = angle(rng);
                RealMatrix bs = RealMatrix::identity(2 * n);
                for (size_t off : {size_t{0}, n}) {
                    bs(off + a, off + a) = std::cos(th);
                    bs(off + a, off + b) = std::sin(th);
                    bs(off + b, off + a) = -std::sin(th);
                    bs(off + b, off + b) = std::cos(th);
                }
                s = bs * s;
            }
        }
    }
    return s;
}

RealMatrix random_symplectic(size_t modes, uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_symplectic(modes, rng);
}

RealMatrix random_symplectic(const SymplecticForm &form, std::mt19937_64 &rng) {
    RealMatrix p = form.permutation_to_standard();
    return p.transposed() * random_symplectic(form.modes(), rng) * p;
}

}  // namespace ndup
