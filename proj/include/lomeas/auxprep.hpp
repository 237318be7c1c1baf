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
 * Auxiliary photon states consumed by the measurement protocol.
 *
 * Photon roles are fixed: 1,2 carry the input, 3,4 are the kept pair,
 * 5,6 are the teleportation partners of 1,2 and 7[,8] hold the subset
 * register.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "measurement.hpp"
#include "statevec.hpp"

namespace lomeas {

namespace photon {
inline constexpr PhotonId kIn1{1};
inline constexpr PhotonId kIn2{2};
inline constexpr PhotonId kOut1{3};
inline constexpr PhotonId kOut2{4};
inline constexpr PhotonId kPartner1{5};
inline constexpr PhotonId kPartner2{6};
inline constexpr PhotonId kReg1{7};
inline constexpr PhotonId kReg2{8};
} // namespace photon

/// How the partner state of |alpha^i> is formed. Only ConjugateFlip makes
/// teleportation through Psi+ the identity channel; the others exist so
/// tests can confirm that a wrong convention is detected.
enum class PartnerConvention { ConjugateFlip, ConjugateOnly, FlipOnly };

/// |alpha^{i*}>: components complex-conjugated and both photons flipped H<->V,
/// i.e. a00*|VV> + a01*|VH> + a10*|HV> + a11*|HH>.
inline Ket conjugate_partner(const TwoPhotonBasis &basis, std::size_t i, PhotonId first = photon::kPartner1,
                             PhotonId second = photon::kPartner2,
                             PartnerConvention convention = PartnerConvention::ConjugateFlip) {
    if (i >= 4) {
        throw ValidationError("basis index " + std::to_string(i) + " out of range");
    }
    const Vec4 &a = basis.state(i);
    const bool conjugate = convention != PartnerConvention::FlipOnly;
    const bool flip = convention != PartnerConvention::ConjugateOnly;
    Vec4 out{};
    for (std::size_t c = 0; c < 4; ++c) {
        // flipping both photons maps index c = 2*p1 + p2 to 3 - c
        out[flip ? 3 - c : c] = conjugate ? std::conj(a[c]) : a[c];
    }
    return from_vec4(out, first, second);
}

inline Ket encode_j_two_photon(std::size_t j, PhotonId first = photon::kReg1, PhotonId second = photon::kReg2) {
    if (j >= 4) {
        throw ValidationError("two-photon register holds j in 0..3, got " + std::to_string(j));
    }
    return basis_ket({first, second}, kTwoPhotonLabels[j]);
}

inline Ket encode_j_one_photon(std::size_t j, PhotonId reg = photon::kReg1) {
    if (j >= 2) {
        throw ValidationError("one-photon register holds j in 0..1, got " + std::to_string(j));
    }
    return basis_ket({reg}, j == 0 ? "H" : "V");
}

enum class AuxVariant { General, Parity5, Parity4 };

inline Register aux_register(AuxVariant v) {
    switch (v) {
    case AuxVariant::General:
        return {3, 4, 5, 6, 7, 8};
    case AuxVariant::Parity5:
        return {3, 4, 5, 6, 7};
    case AuxVariant::Parity4:
        return {3, 4, 5, 6};
    }
    return {};
}

class AuxState {
  public:
    AuxState(AuxVariant variant, Ket ket) : variant_(variant), ket_(std::move(ket)) {
        if (ket_.photons() != aux_register(variant_)) {
            throw ValidationError("auxiliary state register " + to_string(ket_.photons()) +
                                  " does not match variant register " + to_string(aux_register(variant_)));
        }
        if (std::abs(norm(ket_) - 1.0) > kDefaultTol) {
            throw ValidationError("auxiliary state is not normalized (norm " + std::to_string(norm(ket_)) + ")");
        }
    }

    [[nodiscard]] AuxVariant variant() const noexcept { return variant_; }
    [[nodiscard]] const Ket &ket() const noexcept { return ket_; }

  private:
    AuxVariant variant_;
    Ket ket_;
};

/// |X> = 1/2 sum_j sum_i pi_i^j |alpha^i>_34 |alpha^{i*}>_56 |j>_78.
inline AuxState build_general_aux(const ProjectorFamily &f,
                                  PartnerConvention convention = PartnerConvention::ConjugateFlip) {
    std::vector<std::pair<Amplitude, Ket>> terms;
    terms.reserve(4);
    for (std::size_t i = 0; i < 4; ++i) {
        const std::size_t j = f.assignment().subset_of(i);
        Ket term = tensor(tensor(f.basis().ket(i, photon::kOut1, photon::kOut2),
                                 conjugate_partner(f.basis(), i, photon::kPartner1, photon::kPartner2, convention)),
                          encode_j_two_photon(j));
        terms.emplace_back(0.5, std::move(term));
    }
    return AuxState(AuxVariant::General, superpose(terms));
}

/// 1/2 [(|HH>_34|VV>_56 + |VV>_34|HH>_56)|H>_7 + (|HV>_34|VH>_56 + |VH>_34|HV>_56)|V>_7].
inline AuxState build_parity_aux5() {
    const Register reg = aux_register(AuxVariant::Parity5);
    return AuxState(AuxVariant::Parity5, Ket(reg, {{"HHVVH", 0.5}, {"VVHHH", 0.5}, {"HVVHV", 0.5}, {"VHHVV", 0.5}}));
}

/// 1/sqrt2 (|HH>_34|VV>_56 + |VV>_34|HH>_56), the filter for P_0 alone.
inline AuxState build_parity_aux4() {
    const Register reg = aux_register(AuxVariant::Parity4);
    return AuxState(AuxVariant::Parity4, Ket(reg, {{"HHVV", M_SQRT1_2}, {"VVHH", M_SQRT1_2}}));
}

} // namespace lomeas
