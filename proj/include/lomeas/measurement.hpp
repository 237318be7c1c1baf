// Copyright 2026 The lomeas Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Two-photon orthonormal bases, subset assignments and the projector
 * families built from them.
 *
 * Two-photon vectors are always ordered (HH, HV, VH, VV).
 */
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <string>
#include <vector>

#include "errors.hpp"
#include "statevec.hpp"

namespace lomeas {

using Vec4 = std::array<Amplitude, 4>;
using Mat4 = std::array<std::array<Amplitude, 4>, 4>;

inline constexpr std::array<const char *, 4> kTwoPhotonLabels{"HH", "HV", "VH", "VV"};

inline Vec4 to_vec4(const Ket &k) {
    if (k.size() != 2) {
        throw ValidationError("expected a two-photon state, got register " + to_string(k.photons()));
    }
    Vec4 v{};
    for (std::size_t c = 0; c < 4; ++c) {
        v[c] = k.amplitude(kTwoPhotonLabels[c]);
    }
    return v;
}

inline Ket from_vec4(const Vec4 &v, PhotonId first, PhotonId second) {
    Ket::Components comps;
    for (std::size_t c = 0; c < 4; ++c) {
        comps.emplace(kTwoPhotonLabels[c], v[c]);
    }
    return Ket({first, second}, std::move(comps));
}

inline Amplitude dot(const Vec4 &a, const Vec4 &b) {
    Amplitude acc{};
    for (std::size_t c = 0; c < 4; ++c) {
        acc += std::conj(a[c]) * b[c];
    }
    return acc;
}

inline Vec4 multiply(const Mat4 &m, const Vec4 &v) {
    Vec4 out{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out[r] += m[r][c] * v[c];
        }
    }
    return out;
}

inline Mat4 multiply(const Mat4 &a, const Mat4 &b) {
    Mat4 out{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t k = 0; k < 4; ++k) {
            for (std::size_t c = 0; c < 4; ++c) {
                out[r][c] += a[r][k] * b[k][c];
            }
        }
    }
    return out;
}

inline Mat4 identity4() {
    Mat4 m{};
    for (std::size_t k = 0; k < 4; ++k) {
        m[k][k] = 1.0;
    }
    return m;
}

/// Entrywise max |a - b|.
inline double max_abs_diff(const Mat4 &a, const Mat4 &b) {
    double worst = 0.0;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            worst = std::max(worst, std::abs(a[r][c] - b[r][c]));
        }
    }
    return worst;
}

/// Four pairwise orthonormal two-photon states |alpha^i>, i = 0..3.
class TwoPhotonBasis {
  public:
    [[nodiscard]] const Vec4 &state(std::size_t i) const { return states_.at(i); }
    [[nodiscard]] const std::array<Vec4, 4> &states() const noexcept { return states_; }
    [[nodiscard]] Ket ket(std::size_t i, PhotonId first, PhotonId second) const {
        return from_vec4(state(i), first, second);
    }

    [[nodiscard]] Mat4 gram() const {
        Mat4 g{};
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t k = 0; k < 4; ++k) {
                g[i][k] = dot(states_[i], states_[k]);
            }
        }
        return g;
    }

  private:
    explicit TwoPhotonBasis(const std::array<Vec4, 4> &s) : states_(s) {}
    friend TwoPhotonBasis validate_basis(const std::array<Vec4, 4> &, double);

    std::array<Vec4, 4> states_;
};

/// Accept four vectors only if their Gram matrix is the identity within `tol`.
inline TwoPhotonBasis validate_basis(const std::array<Vec4, 4> &states, double tol = kDefaultTol) {
    TwoPhotonBasis candidate(states);
    const Mat4 g = candidate.gram();
    std::string bad;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
            const Amplitude expected = i == k ? 1.0 : 0.0;
            if (!std::isfinite(g[i][k].real()) || !std::isfinite(g[i][k].imag()) ||
                std::abs(g[i][k] - expected) > tol) {
                char buf[128];
                std::snprintf(buf, sizeof buf, " Gram(%zu,%zu)=%.17g%+.17gi", i, k, g[i][k].real(),
                              g[i][k].imag());
                bad += buf;
            }
        }
    }
    if (!bad.empty()) {
        throw ValidationError("basis is not orthonormal:" + bad);
    }
    return candidate;
}

inline TwoPhotonBasis computational_basis() {
    return validate_basis({Vec4{1, 0, 0, 0}, Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0}, Vec4{0, 0, 0, 1}});
}

/// Binary matrix pi[i][j] placing each basis state i in exactly one subset j.
class Assignment {
  public:
    using Table = std::array<std::vector<int>, 4>;

    /// Validate a 4 x J table of 0/1 entries.
    static Assignment from_table(const Table &pi) {
        const std::size_t cols = pi[0].size();
        if (cols < 1 || cols > 4) {
            throw ValidationError("assignment must have between 1 and 4 columns, got " + std::to_string(cols));
        }
        std::array<std::size_t, 4> subset{};
        for (std::size_t i = 0; i < 4; ++i) {
            if (pi[i].size() != cols) {
                throw ValidationError("assignment row " + std::to_string(i) + " has " +
                                      std::to_string(pi[i].size()) + " entries, expected " +
                                      std::to_string(cols));
            }
            int ones = 0;
            for (std::size_t j = 0; j < cols; ++j) {
                if (pi[i][j] != 0 && pi[i][j] != 1) {
                    throw ValidationError("assignment entry (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") is not 0 or 1");
                }
                if (pi[i][j] == 1) {
                    ++ones;
                    subset[i] = j;
                }
            }
            if (ones != 1) {
                throw ValidationError("assignment row " + std::to_string(i) + " has " + std::to_string(ones) +
                                      " ones; every basis state must belong to exactly one subset");
            }
        }
        return from_subsets(subset, cols);
    }

    /// subset[i] is the subset index of basis state i.
    static Assignment from_subsets(const std::array<std::size_t, 4> &subset, std::size_t count) {
        if (count < 1 || count > 4) {
            throw ValidationError("assignment must have between 1 and 4 subsets");
        }
        std::array<bool, 4> used{};
        for (std::size_t i = 0; i < 4; ++i) {
            if (subset[i] >= count) {
                throw ValidationError("basis state " + std::to_string(i) + " assigned to subset " +
                                      std::to_string(subset[i]) + " of " + std::to_string(count));
            }
            used[subset[i]] = true;
        }
        for (std::size_t j = 0; j < count; ++j) {
            if (!used[j]) {
                throw EmptySubsetError("assignment column " + std::to_string(j) +
                                       " is empty and would define a zero projector");
            }
        }
        return Assignment(subset, count);
    }

    [[nodiscard]] std::size_t subset_count() const noexcept { return count_; }
    [[nodiscard]] std::size_t subset_of(std::size_t i) const { return subset_.at(i); }
    [[nodiscard]] int pi(std::size_t i, std::size_t j) const { return subset_.at(i) == j ? 1 : 0; }

    [[nodiscard]] Table table() const {
        Table t;
        for (std::size_t i = 0; i < 4; ++i) {
            t[i].assign(count_, 0);
            t[i][subset_[i]] = 1;
        }
        return t;
    }

  private:
    Assignment(const std::array<std::size_t, 4> &subset, std::size_t count) : subset_(subset), count_(count) {}

    std::array<std::size_t, 4> subset_;
    std::size_t count_;
};

/// P_j = sum_i pi[i][j] |alpha^i><alpha^i|.
class ProjectorFamily {
  public:
    ProjectorFamily(TwoPhotonBasis basis, Assignment assignment)
        : basis_(std::move(basis)), assignment_(std::move(assignment)),
          projectors_(assignment_.subset_count(), Mat4{}) {
        for (std::size_t i = 0; i < 4; ++i) {
            const Vec4 &a = basis_.state(i);
            Mat4 &p = projectors_[assignment_.subset_of(i)];
            for (std::size_t r = 0; r < 4; ++r) {
                for (std::size_t c = 0; c < 4; ++c) {
                    p[r][c] += a[r] * std::conj(a[c]);
                }
            }
        }
    }

    [[nodiscard]] const TwoPhotonBasis &basis() const noexcept { return basis_; }
    [[nodiscard]] const Assignment &assignment() const noexcept { return assignment_; }
    [[nodiscard]] std::size_t subset_count() const noexcept { return projectors_.size(); }
    [[nodiscard]] const Mat4 &projector(std::size_t j) const {
        if (j >= projectors_.size()) {
            throw ValidationError("projector index " + std::to_string(j) + " out of range for " +
                                  std::to_string(projectors_.size()) + " subsets");
        }
        return projectors_[j];
    }
    [[nodiscard]] const std::vector<Mat4> &projectors() const noexcept { return projectors_; }

  private:
    TwoPhotonBasis basis_;
    Assignment assignment_;
    std::vector<Mat4> projectors_;
};

inline ProjectorFamily family_from_assignment(const TwoPhotonBasis &basis, const Assignment &a) {
    return ProjectorFamily(basis, a);
}

/// P_0 = |HH><HH| + |VV><VV|, P_1 = |HV><HV| + |VH><VH|, with
/// alpha^0 = HH, alpha^1 = VV, alpha^2 = HV, alpha^3 = VH.
inline ProjectorFamily parity_family() {
    const TwoPhotonBasis basis =
        validate_basis({Vec4{1, 0, 0, 0}, Vec4{0, 0, 0, 1}, Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0}});
    return ProjectorFamily(basis, Assignment::from_subsets({0, 0, 1, 1}, 2));
}

/// True when `f` realizes the same two projectors as parity_family().
inline bool is_parity_family(const ProjectorFamily &f, double tol = kDefaultTol) {
    if (f.subset_count() != 2) {
        return false;
    }
    const ProjectorFamily ref = parity_family();
    return max_abs_diff(f.projector(0), ref.projector(0)) <= tol &&
           max_abs_diff(f.projector(1), ref.projector(1)) <= tol;
}

/// Unnormalized P_j|beta>, summed from the rank-1 pieces of subset j.
inline Ket apply_projector(const ProjectorFamily &f, std::size_t j, const Ket &beta) {
    if (j >= f.subset_count()) {
        throw ValidationError("projector index " + std::to_string(j) + " out of range for " +
                              std::to_string(f.subset_count()) + " subsets");
    }
    const Vec4 b = to_vec4(beta);
    Vec4 out{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (f.assignment().subset_of(i) != j) {
            continue;
        }
        const Vec4 &a = f.basis().state(i);
        const Amplitude overlap = dot(a, b);
        for (std::size_t c = 0; c < 4; ++c) {
            out[c] += overlap * a[c];
        }
    }
    return from_vec4(out, beta.photons()[0], beta.photons()[1]);
}

/// <beta|P_j|beta> for a unit beta.
inline double expectation(const ProjectorFamily &f, std::size_t j, const Ket &beta, double tol = kDefaultTol) {
    if (std::abs(norm(beta) - 1.0) > tol) {
        throw ValidationError("expectation: input state is not normalized (norm " + std::to_string(norm(beta)) +
                              ")");
    }
    return norm_squared(apply_projector(f, j, beta));
}

} // namespace lomeas
