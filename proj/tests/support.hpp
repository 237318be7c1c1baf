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
// Test-only helpers: seeded random instances and a dense state-vector
// oracle that shares no code with the sparse Ket implementation.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lomeas/measurement.hpp"
#include "lomeas/statevec.hpp"

namespace lomeas::testing {

using cplx = std::complex<double>;

inline cplx random_complex(std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

inline Vec4 random_vec4(std::mt19937_64 &rng) {
    Vec4 v{};
    for (auto &x : v) {
        x = random_complex(rng);
    }
    return v;
}

inline Vec4 random_unit_vec4(std::mt19937_64 &rng) {
    Vec4 v = random_vec4(rng);
    double n = 0.0;
    for (auto x : v) {
        n += std::norm(x);
    }
    n = std::sqrt(n);
    for (auto &x : v) {
        x /= n;
    }
    return v;
}

/// Gram-Schmidt on four Gaussian vectors (Haar-like).
inline std::array<Vec4, 4> random_orthonormal(std::mt19937_64 &rng) {
    std::array<Vec4, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        Vec4 v = random_vec4(rng);
        for (std::size_t k = 0; k < i; ++k) {
            cplx proj{};
            for (std::size_t c = 0; c < 4; ++c) {
                proj += std::conj(out[k][c]) * v[c];
            }
            for (std::size_t c = 0; c < 4; ++c) {
                v[c] -= proj * out[k][c];
            }
        }
        double n = 0.0;
        for (auto x : v) {
            n += std::norm(x);
        }
        n = std::sqrt(n);
        for (auto &x : v) {
            x /= n;
        }
        out[i] = v;
    }
    return out;
}

/// Random surjective assignment of the four basis states onto `subsets` columns.
inline Assignment random_assignment(std::mt19937_64 &rng, std::size_t subsets) {
    std::array<std::size_t, 4> rows{0, 1, 2, 3};
    std::shuffle(rows.begin(), rows.end(), rng);
    std::array<std::size_t, 4> subset{};
    std::uniform_int_distribution<std::size_t> pick(0, subsets - 1);
    for (std::size_t k = 0; k < 4; ++k) {
        subset[rows[k]] = k < subsets ? k : pick(rng);
    }
    return Assignment::from_subsets(subset, subsets);
}

inline ProjectorFamily random_family(std::mt19937_64 &rng, std::size_t subsets) {
    return family_from_assignment(validate_basis(random_orthonormal(rng)), random_assignment(rng, subsets));
}

inline ProjectorFamily random_family(std::mt19937_64 &rng) {
    std::uniform_int_distribution<std::size_t> j(2, 4);
    return random_family(rng, j(rng));
}

inline Ket random_beta(std::mt19937_64 &rng) { return from_vec4(random_unit_vec4(rng), 1, 2); }

/// Random unit state on an arbitrary register.
inline Ket random_ket(std::mt19937_64 &rng, const Register &reg) {
    Ket::Components comps;
    const std::size_t dim = std::size_t{1} << reg.size();
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::string label(reg.size(), 'H');
        for (std::size_t k = 0; k < reg.size(); ++k) {
            if ((idx >> (reg.size() - 1 - k)) & 1U) {
                label[k] = 'V';
            }
        }
        comps.emplace(label, random_complex(rng));
    }
    return normalize(Ket(reg, std::move(comps)));
}

/**
 * Dense state vector. Photon k of `photons` is bit (n-1-k) of the index;
 * H = 0, V = 1.
 */
struct Dense {
    std::vector<int> photons;
    std::vector<cplx> amps;

    [[nodiscard]] std::size_t bit_of(int photon) const {
        for (std::size_t k = 0; k < photons.size(); ++k) {
            if (photons[k] == photon) {
                return photons.size() - 1 - k;
            }
        }
        throw std::logic_error("photon not in dense register");
    }

    [[nodiscard]] double norm2() const {
        double acc = 0.0;
        for (auto a : amps) {
            acc += std::norm(a);
        }
        return acc;
    }
};

inline Dense dense_two(int p, int q, const Vec4 &v) { return Dense{{p, q}, {v.begin(), v.end()}}; }

inline Dense kron(const Dense &a, const Dense &b) {
    Dense out;
    out.photons = a.photons;
    out.photons.insert(out.photons.end(), b.photons.begin(), b.photons.end());
    out.amps.assign(a.amps.size() * b.amps.size(), 0.0);
    for (std::size_t i = 0; i < a.amps.size(); ++i) {
        for (std::size_t k = 0; k < b.amps.size(); ++k) {
            out.amps[i * b.amps.size() + k] = a.amps[i] * b.amps[k];
        }
    }
    return out;
}

/// Contract <bra| over the bra's photons; the residual keeps the remaining
/// photons in their original order.
inline Dense contract(const Dense &bra, const Dense &state) {
    std::vector<int> rest;
    for (int p : state.photons) {
        if (std::find(bra.photons.begin(), bra.photons.end(), p) == bra.photons.end()) {
            rest.push_back(p);
        }
    }
    Dense out{rest, std::vector<cplx>(std::size_t{1} << rest.size(), 0.0)};
    for (std::size_t s = 0; s < state.amps.size(); ++s) {
        std::size_t b = 0;
        for (std::size_t k = 0; k < bra.photons.size(); ++k) {
            const std::size_t bit = (s >> state.bit_of(bra.photons[k])) & 1U;
            b |= bit << (bra.photons.size() - 1 - k);
        }
        std::size_t r = 0;
        for (std::size_t k = 0; k < rest.size(); ++k) {
            const std::size_t bit = (s >> state.bit_of(rest[k])) & 1U;
            r |= bit << (rest.size() - 1 - k);
        }
        out.amps[r] += std::conj(bra.amps[b]) * state.amps[s];
    }
    return out;
}

inline Dense dense_basis(std::vector<int> photons, std::size_t index) {
    Dense d{std::move(photons), {}};
    d.amps.assign(std::size_t{1} << d.photons.size(), 0.0);
    d.amps[index] = 1.0;
    return d;
}

/// Bell vectors in (HH, HV, VH, VV) order: Psi+, Psi-, Phi+, Phi-.
inline Vec4 dense_bell(int which) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (which) {
    case 0:
        return {0, s, s, 0};
    case 1:
        return {0, s, -s, 0};
    case 2:
        return {s, 0, 0, s};
    default:
        return {s, 0, 0, -s};
    }
}

/// General auxiliary state written straight from its defining sum, with the
/// partner built per photon: partner(p5, p6) = conj(alpha(1 - p5, 1 - p6)).
inline Dense dense_general_aux(const ProjectorFamily &f) {
    Dense total{{3, 4, 5, 6, 7, 8}, std::vector<cplx>(64, 0.0)};
    for (std::size_t i = 0; i < 4; ++i) {
        const Vec4 &a = f.basis().state(i);
        const std::size_t j = f.assignment().subset_of(i);
        for (std::size_t p3 = 0; p3 < 2; ++p3)
            for (std::size_t p4 = 0; p4 < 2; ++p4)
                for (std::size_t p5 = 0; p5 < 2; ++p5)
                    for (std::size_t p6 = 0; p6 < 2; ++p6) {
                        const cplx kept = a[2 * p3 + p4];
                        const cplx partner = std::conj(a[2 * (1 - p5) + (1 - p6)]);
                        const std::size_t idx = (p3 << 5) | (p4 << 4) | (p5 << 3) | (p6 << 2) | j;
                        total.amps[idx] += 0.5 * kept * partner;
                    }
    }
    return total;
}

/// Parity filter auxiliary state on (3,4,5,6).
inline Dense dense_parity_aux4() {
    Dense d{{3, 4, 5, 6}, std::vector<cplx>(16, 0.0)};
    d.amps[0b0011] = 1.0 / std::sqrt(2.0); // HH VV
    d.amps[0b1100] = 1.0 / std::sqrt(2.0); // VV HH
    return d;
}

/// Parity auxiliary state on (3,4,5,6,7).
inline Dense dense_parity_aux5() {
    Dense d{{3, 4, 5, 6, 7}, std::vector<cplx>(32, 0.0)};
    d.amps[0b00110] = 0.5; // HH VV H
    d.amps[0b11000] = 0.5; // VV HH H
    d.amps[0b01101] = 0.5; // HV VH V
    d.amps[0b10011] = 0.5; // VH HV V
    return d;
}

/// Probability and (unnormalized) residual after measuring Bell outcomes
/// (which15, which26) on the dense total state.
inline Dense dense_bell_residual(const Dense &total, int which15, int which26) {
    const Dense bra = kron(dense_two(1, 5, dense_bell(which15)), dense_two(2, 6, dense_bell(which26)));
    return contract(bra, total);
}

/// Dense vector -> sparse Ket for comparisons.
inline Ket to_ket(const Dense &d) {
    Register reg(d.photons.begin(), d.photons.end());
    Ket::Components comps;
    for (std::size_t idx = 0; idx < d.amps.size(); ++idx) {
        std::string label(reg.size(), 'H');
        for (std::size_t k = 0; k < reg.size(); ++k) {
            if ((idx >> (reg.size() - 1 - k)) & 1U) {
                label[k] = 'V';
            }
        }
        comps.emplace(label, d.amps[idx]);
    }
    return Ket(std::move(reg), std::move(comps));
}

inline double max_abs_diff(const Ket &a, const Ket &b) {
    double worst = 0.0;
    for (const auto &[label, amp] : a.components()) {
        worst = std::max(worst, std::abs(amp - b.amplitude(label)));
    }
    for (const auto &[label, amp] : b.components()) {
        worst = std::max(worst, std::abs(amp - a.amplitude(label)));
    }
    return worst;
}

} // namespace lomeas::testing
