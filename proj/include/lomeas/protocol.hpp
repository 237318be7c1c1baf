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
 * Exhaustive branch enumeration of the post-selected measurement protocol.
 *
 * The input pair (1,2) is Bell-measured against the partner photons (1,5)
 * and (2,6). Accepted Bell outcomes leave the kept pair (3,4) in a state
 * proportional to P_j|beta>, with j read from the register photon(s).
 */
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "auxprep.hpp"
#include "errors.hpp"
#include "measurement.hpp"
#include "statevec.hpp"

namespace lomeas {

enum class BellOutcome { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

/// Enumeration order used everywhere branches are listed.
inline constexpr std::array<BellOutcome, 4> kBellOutcomes{BellOutcome::PsiPlus, BellOutcome::PsiMinus,
                                                          BellOutcome::PhiPlus, BellOutcome::PhiMinus};

inline const char *to_string(BellOutcome b) {
    switch (b) {
    case BellOutcome::PsiPlus:
        return "PsiPlus";
    case BellOutcome::PsiMinus:
        return "PsiMinus";
    case BellOutcome::PhiPlus:
        return "PhiPlus";
    case BellOutcome::PhiMinus:
        return "PhiMinus";
    }
    return "?";
}

namespace detail {

/// Unnormalized Bell pattern: entries +-1 on two of HH, HV, VH, VV.
inline std::map<std::string, double> bell_pattern(BellOutcome kind) {
    switch (kind) {
    case BellOutcome::PsiPlus:
        return {{"HV", 1.0}, {"VH", 1.0}};
    case BellOutcome::PsiMinus:
        return {{"HV", 1.0}, {"VH", -1.0}};
    case BellOutcome::PhiPlus:
        return {{"HH", 1.0}, {"VV", 1.0}};
    case BellOutcome::PhiMinus:
        return {{"HH", 1.0}, {"VV", -1.0}};
    }
    return {};
}

} // namespace detail

/// Psi+- = (|HV> +- |VH>)/sqrt2 and Phi+- = (|HH> +- |VV>)/sqrt2 on (m, n).
inline Ket bell_ket(BellOutcome kind, PhotonId m, PhotonId n) {
    if (m == n) {
        throw ValidationError("bell_ket: photons must be distinct, got " + std::to_string(m.label) + " twice");
    }
    Ket::Components comps;
    for (const auto &[label, sign] : detail::bell_pattern(kind)) {
        comps.emplace(label, sign * M_SQRT1_2);
    }
    return Ket({m, n}, std::move(comps));
}

/**
 * Product Bell bra on (1,5) and (2,6), register order (1,5,2,6).
 *
 * Amplitudes are +-1/2 exactly rather than (1/sqrt2)^2, which keeps
 * dyadic branch probabilities exact.
 */
inline Ket bell_pair_ket(BellOutcome b15, BellOutcome b26) {
    Ket::Components comps;
    for (const auto &[la, sa] : detail::bell_pattern(b15)) {
        for (const auto &[lb, sb] : detail::bell_pattern(b26)) {
            comps.emplace(la + lb, 0.5 * sa * sb);
        }
    }
    return Ket({photon::kIn1, photon::kPartner1, photon::kIn2, photon::kPartner2}, std::move(comps));
}

/// Which Bell outcomes the analyzer can tell apart.
struct AnalyzerModel {
    std::array<bool, 4> distinguishable{true, true, false, false};

    static AnalyzerModel linear() { return {}; }
    static AnalyzerModel ideal() { return AnalyzerModel{{true, true, true, true}}; }

    [[nodiscard]] bool distinguishes(BellOutcome b) const { return distinguishable[static_cast<std::size_t>(b)]; }

    friend bool operator==(const AnalyzerModel &, const AnalyzerModel &) = default;
};

enum class Mode { General, Parity5, Parity4 };

inline const char *to_string(Mode m) {
    switch (m) {
    case Mode::General:
        return "general";
    case Mode::Parity5:
        return "parity5";
    case Mode::Parity4:
        return "parity4";
    }
    return "?";
}

using BellPair = std::pair<BellOutcome, BellOutcome>;

/// Photons that receive a Z for each accepted Bell pair.
using CorrectionTable = std::map<BellPair, std::vector<PhotonId>>;

/// Z_4 for (Psi+,Psi-), Z_3 for (Psi-,Psi+), Z_3 Z_4 for (Psi-,Psi-).
inline CorrectionTable default_corrections() {
    return {
        {{BellOutcome::PsiPlus, BellOutcome::PsiPlus}, {}},
        {{BellOutcome::PsiPlus, BellOutcome::PsiMinus}, {photon::kOut2}},
        {{BellOutcome::PsiMinus, BellOutcome::PsiPlus}, {photon::kOut1}},
        {{BellOutcome::PsiMinus, BellOutcome::PsiMinus}, {photon::kOut1, photon::kOut2}},
    };
}

/// Bell pairs a mode is willing to post-select on, before analyzer limits.
inline bool mode_accepts(Mode mode, BellOutcome b15, BellOutcome b26) {
    const auto psi = [](BellOutcome b) { return b == BellOutcome::PsiPlus || b == BellOutcome::PsiMinus; };
    if (mode == Mode::General) {
        return b15 == BellOutcome::PsiPlus && b26 == BellOutcome::PsiPlus;
    }
    return psi(b15) && psi(b26);
}

struct Correction {
    PhotonId photon;
    std::string op;

    friend bool operator==(const Correction &, const Correction &) = default;
};

/// Apply the table's Z corrections for (b15, b26); pairs missing from the
/// table are left untouched.
inline Ket apply_corrections(BellOutcome b15, BellOutcome b26, const Ket &residual,
                             const CorrectionTable &table = default_corrections()) {
    if (!residual.position(photon::kOut1) || !residual.position(photon::kOut2)) {
        throw ValidationError("apply_corrections: residual register " + to_string(residual.photons()) +
                              " lacks photons 3 and 4");
    }
    auto it = table.find({b15, b26});
    if (it == table.end()) {
        return residual;
    }
    Ket out = residual;
    for (PhotonId p : it->second) {
        out = apply_one_photon(kPauliZ, p, out);
    }
    return out;
}

enum class Classification { Success, Correctable, Inconclusive, Zero };

struct Branch {
    BellOutcome bell15 = BellOutcome::PsiPlus;
    BellOutcome bell26 = BellOutcome::PsiPlus;
    /// Basis label measured on the register photon(s), when measured.
    std::optional<std::string> register_result;
    double probability = 0.0;
    /// Normalized state of the unmeasured photons; absent for zero branches.
    std::optional<Ket> residual;
    std::vector<Correction> corrections;
    Classification classification = Classification::Zero;
    /// Realized subset for Success/Correctable branches.
    std::optional<std::size_t> j;

    [[nodiscard]] bool succeeded() const {
        return classification == Classification::Success || classification == Classification::Correctable;
    }
};

inline std::string classification_label(const Branch &b) {
    switch (b.classification) {
    case Classification::Success:
        return "success(" + std::to_string(b.j.value_or(0)) + ")";
    case Classification::Correctable:
        return "correctable(" + std::to_string(b.j.value_or(0)) + ")";
    case Classification::Inconclusive:
        return "inconclusive";
    case Classification::Zero:
        return "zero";
    }
    return "?";
}

struct Totals {
    double success_probability = 0.0;
    /// P(j | success); all zeros when nothing succeeds.
    std::vector<double> conditional_j;
    double inconclusive_probability = 0.0;
};

struct ProtocolReport {
    Mode mode;
    AnalyzerModel analyzer;
    Ket input;
    ProjectorFamily family;
    std::vector<Branch> branches;
    Totals totals;

    [[nodiscard]] double total_probability() const {
        double acc = 0.0;
        for (const Branch &b : branches) {
            acc += b.probability;
        }
        return acc;
    }
};

/// Knobs for fault injection; the defaults reproduce the protocol exactly.
struct ProtocolOptions {
    AnalyzerModel analyzer = AnalyzerModel::linear();
    PartnerConvention partner = PartnerConvention::ConjugateFlip;
    CorrectionTable corrections = default_corrections();
    double tol = kDefaultTol;
};

namespace detail {

inline void require_input(const Ket &beta, double tol) {
    if (beta.photons() != Register{photon::kIn1, photon::kIn2}) {
        throw ValidationError("input state must live on photons (1,2), got " + to_string(beta.photons()));
    }
    const double n = norm(beta);
    if (std::abs(n - 1.0) > tol) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "input state is not normalized (norm %.17g)", n);
        throw ValidationError(buf);
    }
}

inline Branch make_branch(BellOutcome b15, BellOutcome b26, std::optional<std::string> reg, const Ket &residual,
                          bool accepted, std::optional<std::size_t> j, std::vector<Correction> corrections) {
    Branch br;
    br.bell15 = b15;
    br.bell26 = b26;
    br.register_result = std::move(reg);
    br.probability = norm_squared(residual);
    if (br.probability <= kDegenerateNorm) {
        br.classification = Classification::Zero;
        return br;
    }
    br.residual = normalize(residual);
    if (accepted && j) {
        br.classification = corrections.empty() ? Classification::Success : Classification::Correctable;
        br.j = j;
        br.corrections = std::move(corrections);
    } else {
        br.classification = Classification::Inconclusive;
    }
    return br;
}

} // namespace detail

inline Ket build_total_state(const Ket &beta, const ProjectorFamily &f, Mode mode,
                             PartnerConvention partner = PartnerConvention::ConjugateFlip) {
    switch (mode) {
    case Mode::General:
        return tensor(beta, build_general_aux(f, partner).ket());
    case Mode::Parity5:
        return tensor(beta, build_parity_aux5().ket());
    case Mode::Parity4:
        return tensor(beta, build_parity_aux4().ket());
    }
    return {};
}

/**
 * Enumerate every outcome of the protocol for input `beta` on photons (1,2).
 *
 * Branch order: bell15 major, bell26 minor, register outcome innermost.
 * Accepted Bell pairs are split by the register measurement (photons 7,8
 * in general mode, photon 7 in parity5); parity4 has no register and
 * always realizes j = 0.
 */
inline ProtocolReport run_protocol(const Ket &beta, const ProjectorFamily &f, Mode mode,
                                   const ProtocolOptions &opts = {}) {
    detail::require_input(beta, opts.tol);
    if (mode != Mode::General && !is_parity_family(f, opts.tol)) {
        throw ValidationError(std::string("mode ") + to_string(mode) + " requires the parity family");
    }

    const Ket total = build_total_state(beta, f, mode, opts.partner);
    const std::size_t subsets = f.subset_count();

    std::vector<std::string> register_labels;
    Register register_photons;
    if (mode == Mode::General) {
        register_labels = {"HH", "HV", "VH", "VV"};
        register_photons = {photon::kReg1, photon::kReg2};
    } else if (mode == Mode::Parity5) {
        register_labels = {"H", "V"};
        register_photons = {photon::kReg1};
    }

    ProtocolReport report{mode, opts.analyzer, beta, f, {}, {}};
    for (BellOutcome b15 : kBellOutcomes) {
        for (BellOutcome b26 : kBellOutcomes) {
            const Ket residual = partial_bra(bell_pair_ket(b15, b26), total);
            const bool accepted =
                mode_accepts(mode, b15, b26) && opts.analyzer.distinguishes(b15) && opts.analyzer.distinguishes(b26);
            if (!accepted) {
                report.branches.push_back(detail::make_branch(b15, b26, std::nullopt, residual, false, std::nullopt, {}));
                continue;
            }

            std::vector<Correction> applied;
            Ket corrected = residual;
            if (mode != Mode::General) {
                corrected = apply_corrections(b15, b26, residual, opts.corrections);
                if (auto it = opts.corrections.find({b15, b26}); it != opts.corrections.end()) {
                    for (PhotonId p : it->second) {
                        applied.push_back({p, "Z"});
                    }
                }
            }

            if (register_labels.empty()) {
                report.branches.push_back(detail::make_branch(b15, b26, std::nullopt, corrected, true, 0, applied));
                continue;
            }
            for (std::size_t r = 0; r < register_labels.size(); ++r) {
                const Ket kept = partial_bra(basis_ket(register_photons, register_labels[r]), corrected);
                std::optional<std::size_t> j;
                if (r < subsets) {
                    j = r;
                }
                report.branches.push_back(detail::make_branch(b15, b26, register_labels[r], kept, true, j, applied));
            }
        }
    }

    Totals &t = report.totals;
    t.conditional_j.assign(subsets, 0.0);
    for (const Branch &b : report.branches) {
        if (b.succeeded()) {
            t.success_probability += b.probability;
            t.conditional_j[*b.j] += b.probability;
        } else if (b.classification == Classification::Inconclusive) {
            t.inconclusive_probability += b.probability;
        }
    }
    if (t.success_probability > 0.0) {
        for (double &p : t.conditional_j) {
            p /= t.success_probability;
        }
    }
    return report;
}

/// Reference statistics computed directly from the projector matrices.
struct OracleReport {
    std::vector<double> probabilities;
    /// normalize(P_j beta) on photons (1,2); absent when P_j beta = 0.
    std::vector<std::optional<Ket>> states;
};

inline OracleReport oracle_report(const Ket &beta, const ProjectorFamily &f, double tol = kDefaultTol) {
    detail::require_input(beta, tol);
    const Vec4 b = to_vec4(beta);
    OracleReport out;
    for (const Mat4 &p : f.projectors()) {
        const Vec4 pb = multiply(p, b);
        const double prob = dot(b, pb).real();
        out.probabilities.push_back(prob);
        const Ket k = from_vec4(pb, photon::kIn1, photon::kIn2);
        if (norm(k) > kDegenerateNorm) {
            out.states.emplace_back(normalize(k));
        } else {
            out.states.emplace_back(std::nullopt);
        }
    }
    return out;
}

struct Verdict {
    bool pass = true;
    std::vector<std::string> mismatches;

    void fail(std::string why) {
        pass = false;
        mismatches.push_back(std::move(why));
    }
};

inline std::string branch_name(const Branch &b) {
    std::string s = std::string("(") + to_string(b.bell15) + "," + to_string(b.bell26) + ")";
    if (b.register_result) {
        s += " register=" + *b.register_result;
    }
    return s;
}

/// Per-Bell-pair weight c in P(branch j) = c <beta|P_j|beta>.
inline double branch_weight(Mode mode) { return mode == Mode::Parity4 ? 0.125 : 0.0625; }

/**
 * Check a protocol report against directly computed projector statistics.
 *
 * Fails on: non-conserved probability, a success branch whose residual is
 * not P_j beta up to phase or whose probability is not c <P_j>, a total
 * success probability other than c * (accepted pairs) * sum <P_j>, or a
 * conditional j distribution that differs from the oracle.
 */
inline Verdict compare_reports(const ProtocolReport &report, const OracleReport &oracle, double tol = kDefaultTol) {
    Verdict v;
    char buf[256];
    const double total = report.total_probability();
    if (std::abs(total - 1.0) > tol) {
        std::snprintf(buf, sizeof buf, "branch probabilities sum to %.17g", total);
        v.fail(buf);
    }

    const std::size_t subsets = report.family.subset_count();
    if (oracle.probabilities.size() != subsets) {
        v.fail("oracle and report disagree on the number of subsets");
        return v;
    }

    // j realized in each mode; parity4 filters P_0 only
    std::vector<double> realized = oracle.probabilities;
    if (report.mode == Mode::Parity4) {
        for (std::size_t j = 1; j < realized.size(); ++j) {
            realized[j] = 0.0;
        }
    }

    const double c = branch_weight(report.mode);
    for (const Branch &b : report.branches) {
        if (!b.succeeded()) {
            continue;
        }
        const std::size_t j = *b.j;
        if (j >= subsets || realized[j] <= 0.0) {
            v.fail("branch " + branch_name(b) + " reports j=" + std::to_string(j) + " which cannot occur");
            continue;
        }
        if (std::abs(b.probability - c * realized[j]) > tol) {
            std::snprintf(buf, sizeof buf, "branch %s: probability %.17g, expected %.17g", branch_name(b).c_str(),
                          b.probability, c * realized[j]);
            v.fail(buf);
        }
        if (!oracle.states[j] || !b.residual) {
            v.fail("branch " + branch_name(b) + ": missing residual or oracle state");
            continue;
        }
        const Ket expected = relabel(*oracle.states[j], b.residual->photons());
        if (b.residual->photons() != Register{photon::kOut1, photon::kOut2}) {
            v.fail("branch " + branch_name(b) + ": residual register " + to_string(b.residual->photons()));
            continue;
        }
        const double overlap = fidelity_overlap(*b.residual, expected);
        if (overlap < 1.0 - tol) {
            std::snprintf(buf, sizeof buf, "branch %s: residual overlap with normalized P_%zu beta is %.17g",
                          branch_name(b).c_str(), j, overlap);
            v.fail(buf);
        }
    }

    std::size_t accepted_pairs = 0;
    for (BellOutcome b15 : kBellOutcomes) {
        for (BellOutcome b26 : kBellOutcomes) {
            if (mode_accepts(report.mode, b15, b26) && report.analyzer.distinguishes(b15) &&
                report.analyzer.distinguishes(b26)) {
                ++accepted_pairs;
            }
        }
    }
    double realized_sum = 0.0;
    for (double p : realized) {
        realized_sum += p;
    }
    const double expected_success = c * static_cast<double>(accepted_pairs) * realized_sum;
    if (std::abs(report.totals.success_probability - expected_success) > tol) {
        std::snprintf(buf, sizeof buf, "total success probability %.17g, expected %.17g",
                      report.totals.success_probability, expected_success);
        v.fail(buf);
    }

    if (realized_sum > tol) {
        for (std::size_t j = 0; j < subsets; ++j) {
            const double want = realized[j] / realized_sum;
            const double got = j < report.totals.conditional_j.size() ? report.totals.conditional_j[j] : 0.0;
            if (std::abs(got - want) > tol) {
                std::snprintf(buf, sizeof buf, "conditional P(j=%zu | success) = %.17g, oracle %.17g", j, got, want);
                v.fail(buf);
            }
        }
    }
    return v;
}

} // namespace lomeas
