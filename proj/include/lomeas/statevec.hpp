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
 * Sparse pure states over small registers of labeled polarization qubits.
 *
 * A Ket stores only its non-zero amplitudes, keyed by a basis string with
 * one 'H'/'V' symbol per photon in register order. Since 'H' < 'V', the
 * ordered map iterates in the canonical basis order (HH, HV, VH, VV, ...).
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace lomeas {

using Amplitude = std::complex<double>;

/// Squared magnitudes below this are treated as exact zeros.
inline constexpr double kPruneThreshold = 1e-24;
/// Default comparison tolerance.
inline constexpr double kDefaultTol = 1e-10;
/// Norms below this cannot be normalized.
inline constexpr double kDegenerateNorm = 1e-12;

/// Identifier of one photon (the protocol uses labels 1..8).
struct PhotonId {
    int label = 0;

    constexpr PhotonId() = default;
    constexpr PhotonId(int l) : label(l) {} // NOLINT(google-explicit-constructor)

    friend constexpr auto operator<=>(const PhotonId &, const PhotonId &) = default;
};

using Register = std::vector<PhotonId>;

enum class Pol : char { H = 'H', V = 'V' };

inline std::string to_string(const Register &reg) {
    std::string out = "(";
    for (std::size_t k = 0; k < reg.size(); ++k) {
        if (k != 0) {
            out += ',';
        }
        out += std::to_string(reg[k].label);
    }
    return out + ")";
}

/// 2x2 operator on the (H, V) amplitudes of one photon, row-major.
using Matrix2 = std::array<std::array<Amplitude, 2>, 2>;

inline constexpr Matrix2 kIdentity2{{{1.0, 0.0}, {0.0, 1.0}}};
/// Z|H> = |H>, Z|V> = -|V>.
inline constexpr Matrix2 kPauliZ{{{1.0, 0.0}, {0.0, -1.0}}};

class Ket {
  public:
    using Components = std::map<std::string, Amplitude>;

    Ket() = default;

    Ket(Register reg, Components components) : register_(std::move(reg)) {
        for (std::size_t a = 0; a < register_.size(); ++a) {
            for (std::size_t b = a + 1; b < register_.size(); ++b) {
                if (register_[a] == register_[b]) {
                    throw ValidationError("duplicate photon " +
                                          std::to_string(register_[a].label) +
                                          " in register " + to_string(register_));
                }
            }
        }
        for (auto &[label, amp] : components) {
            if (label.size() != register_.size()) {
                throw ValidationError("basis string '" + label + "' does not match register " +
                                      to_string(register_));
            }
            if (label.find_first_not_of("HV") != std::string::npos) {
                throw ValidationError("basis string '" + label + "' contains a symbol other than H/V");
            }
            if (std::norm(amp) >= kPruneThreshold) {
                components_.emplace(label, amp);
            }
        }
    }

    [[nodiscard]] const Register &photons() const noexcept { return register_; }
    [[nodiscard]] const Components &components() const noexcept { return components_; }
    [[nodiscard]] std::size_t size() const noexcept { return register_.size(); }
    [[nodiscard]] bool is_zero() const noexcept { return components_.empty(); }

    [[nodiscard]] Amplitude amplitude(std::string_view label) const {
        auto it = components_.find(std::string(label));
        return it == components_.end() ? Amplitude{} : it->second;
    }

    [[nodiscard]] std::optional<std::size_t> position(PhotonId p) const {
        auto it = std::find(register_.begin(), register_.end(), p);
        if (it == register_.end()) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - register_.begin());
    }

  private:
    Register register_;
    Components components_;
};

namespace detail {

inline void require_same_register(const Ket &a, const Ket &b, const char *op) {
    if (a.photons() != b.photons()) {
        throw ValidationError(std::string(op) + ": register mismatch " + to_string(a.photons()) +
                              " vs " + to_string(b.photons()));
    }
}

} // namespace detail

inline Ket basis_ket(const Register &reg, std::span<const Pol> labels) {
    if (labels.size() != reg.size()) {
        throw ValidationError("basis_ket: " + std::to_string(labels.size()) + " labels for " +
                              std::to_string(reg.size()) + " photons");
    }
    std::string key;
    for (Pol p : labels) {
        key += static_cast<char>(p);
    }
    return Ket(reg, {{key, 1.0}});
}

inline Ket basis_ket(const Register &reg, std::initializer_list<Pol> labels) {
    return basis_ket(reg, std::span<const Pol>(labels.begin(), labels.size()));
}

/// Basis ket from a string such as "HV"; symbols other than H/V are rejected.
inline Ket basis_ket(const Register &reg, std::string_view labels) {
    if (labels.size() != reg.size()) {
        throw ValidationError("basis_ket: label '" + std::string(labels) + "' does not match register " +
                              to_string(reg));
    }
    return Ket(reg, {{std::string(labels), 1.0}});
}

inline Ket scale(Amplitude c, const Ket &k) {
    Ket::Components out;
    for (const auto &[label, amp] : k.components()) {
        out.emplace(label, c * amp);
    }
    return Ket(k.photons(), std::move(out));
}

/// Linear combination of kets that share one register.
inline Ket superpose(std::span<const std::pair<Amplitude, Ket>> terms) {
    if (terms.empty()) {
        throw ValidationError("superpose: no terms");
    }
    const Register &reg = terms.front().second.photons();
    Ket::Components out;
    for (const auto &[c, k] : terms) {
        detail::require_same_register(terms.front().second, k, "superpose");
        for (const auto &[label, amp] : k.components()) {
            out[label] += c * amp;
        }
    }
    return Ket(reg, std::move(out));
}

inline Ket superpose(std::initializer_list<std::pair<Amplitude, Ket>> terms) {
    return superpose(std::span<const std::pair<Amplitude, Ket>>(terms.begin(), terms.size()));
}

inline Ket operator+(const Ket &a, const Ket &b) { return superpose({{1.0, a}, {1.0, b}}); }
inline Ket operator-(const Ket &a, const Ket &b) { return superpose({{1.0, a}, {-1.0, b}}); }
inline Ket operator*(Amplitude c, const Ket &k) { return scale(c, k); }

/// Tensor product; the result register is a's photons followed by b's.
inline Ket tensor(const Ket &a, const Ket &b) {
    for (PhotonId p : b.photons()) {
        if (a.position(p)) {
            throw ValidationError("tensor: photon " + std::to_string(p.label) + " appears in both " +
                                  to_string(a.photons()) + " and " + to_string(b.photons()));
        }
    }
    Register reg = a.photons();
    reg.insert(reg.end(), b.photons().begin(), b.photons().end());
    Ket::Components out;
    for (const auto &[la, xa] : a.components()) {
        for (const auto &[lb, xb] : b.components()) {
            out.emplace(la + lb, xa * xb);
        }
    }
    return Ket(std::move(reg), std::move(out));
}

/// <a|b>, conjugate-linear in a.
inline Amplitude inner(const Ket &a, const Ket &b) {
    detail::require_same_register(a, b, "inner");
    Amplitude acc{};
    for (const auto &[label, xa] : a.components()) {
        acc += std::conj(xa) * b.amplitude(label);
    }
    return acc;
}

/**
 * Contract the conjugated `bra` against the photons it names.
 *
 * The residual lives on the photons of `state` that `bra` does not name,
 * in their original order. It is not normalized: its squared norm is the
 * probability of finding the (unit) bra on those photons.
 */
inline Ket partial_bra(const Ket &bra, const Ket &state) {
    std::vector<std::size_t> bra_pos;
    bra_pos.reserve(bra.size());
    for (PhotonId p : bra.photons()) {
        auto pos = state.position(p);
        if (!pos) {
            throw ValidationError("partial_bra: photon " + std::to_string(p.label) + " of " +
                                  to_string(bra.photons()) + " not in " + to_string(state.photons()));
        }
        bra_pos.push_back(*pos);
    }
    Register rest;
    std::vector<std::size_t> rest_pos;
    for (std::size_t k = 0; k < state.size(); ++k) {
        if (std::find(bra_pos.begin(), bra_pos.end(), k) == bra_pos.end()) {
            rest.push_back(state.photons()[k]);
            rest_pos.push_back(k);
        }
    }

    Ket::Components out;
    std::string sub(bra_pos.size(), 'H');
    std::string keep(rest_pos.size(), 'H');
    for (const auto &[label, amp] : state.components()) {
        for (std::size_t k = 0; k < bra_pos.size(); ++k) {
            sub[k] = label[bra_pos[k]];
        }
        Amplitude b = bra.amplitude(sub);
        if (b == Amplitude{}) {
            continue;
        }
        for (std::size_t k = 0; k < rest_pos.size(); ++k) {
            keep[k] = label[rest_pos[k]];
        }
        out[keep] += std::conj(b) * amp;
    }
    return Ket(std::move(rest), std::move(out));
}

inline Ket apply_one_photon(const Matrix2 &op, PhotonId photon, const Ket &state) {
    auto pos = state.position(photon);
    if (!pos) {
        throw ValidationError("apply_one_photon: photon " + std::to_string(photon.label) + " not in " +
                              to_string(state.photons()));
    }
    Ket::Components out;
    for (const auto &[label, amp] : state.components()) {
        const std::size_t col = label[*pos] == 'H' ? 0 : 1;
        std::string target = label;
        for (std::size_t row = 0; row < 2; ++row) {
            const Amplitude m = op[row][col];
            if (m == Amplitude{}) {
                continue;
            }
            target[*pos] = row == 0 ? 'H' : 'V';
            out[target] += m * amp;
        }
    }
    return Ket(state.photons(), std::move(out));
}

inline double norm(const Ket &k) {
    double acc = 0.0;
    for (const auto &[label, amp] : k.components()) {
        acc += std::norm(amp);
    }
    return std::sqrt(acc);
}

/// Squared norm without the square root round trip.
inline double norm_squared(const Ket &k) {
    double acc = 0.0;
    for (const auto &[label, amp] : k.components()) {
        acc += std::norm(amp);
    }
    return acc;
}

inline Ket normalize(const Ket &k) {
    const double n = norm(k);
    if (n <= kDegenerateNorm) {
        throw DegenerateStateError("cannot normalize a state of norm " + std::to_string(n) + " on " +
                                   to_string(k.photons()));
    }
    return scale(1.0 / n, k);
}

/// |overlap| of the normalized states; 1 iff equal up to a global phase.
inline double fidelity_overlap(const Ket &a, const Ket &b) {
    detail::require_same_register(a, b, "phase_equal");
    const double na = norm(a);
    const double nb = norm(b);
    if (na <= kDegenerateNorm || nb <= kDegenerateNorm) {
        throw DegenerateStateError("phase comparison of a zero state");
    }
    return std::abs(inner(a, b)) / (na * nb);
}

inline bool phase_equal(const Ket &a, const Ket &b, double tol = kDefaultTol) {
    return fidelity_overlap(a, b) >= 1.0 - tol;
}

/// Same amplitudes on a new register of equal size.
inline Ket relabel(const Ket &k, Register reg) {
    if (reg.size() != k.size()) {
        throw ValidationError("relabel: " + to_string(reg) + " does not match " + to_string(k.photons()));
    }
    return Ket(std::move(reg), k.components());
}

} // namespace lomeas
