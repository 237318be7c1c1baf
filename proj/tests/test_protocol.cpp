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
#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lomeas/protocol.hpp"
#include "support.hpp"

using namespace lomeas;
using Catch::Matchers::WithinAbs;

namespace {
const double s = 1.0 / std::sqrt(2.0);
constexpr BellOutcome kPP = BellOutcome::PsiPlus;
constexpr BellOutcome kPM = BellOutcome::PsiMinus;

const Branch &find_branch(const ProtocolReport &r, BellOutcome b15, BellOutcome b26,
                          std::optional<std::string> reg = std::nullopt) {
    for (const Branch &b : r.branches) {
        if (b.bell15 == b15 && b.bell26 == b26 && b.register_result == reg) {
            return b;
        }
    }
    FAIL("branch not found");
    return r.branches.front();
}

/// Unnormalized Bell-pair residual before any correction, for parity5.
Ket parity5_residual(const Ket &beta, BellOutcome b15, BellOutcome b26) {
    return partial_bra(bell_pair_ket(b15, b26), build_total_state(beta, parity_family(), Mode::Parity5));
}
} // namespace

TEST_CASE("bell_ket", "[protocol]") {
    const Ket pp = bell_ket(kPP, 1, 5);
    CHECK(pp.photons() == Register{1, 5});
    CHECK_THAT(pp.amplitude("HV").real(), WithinAbs(s, 1e-16));
    CHECK_THAT(pp.amplitude("VH").real(), WithinAbs(s, 1e-16));

    const Ket pm = bell_ket(kPM, 2, 6);
    CHECK_THAT(pm.amplitude("HV").real(), WithinAbs(s, 1e-16));
    CHECK_THAT(pm.amplitude("VH").real(), WithinAbs(-s, 1e-16));

    for (BellOutcome a : kBellOutcomes) {
        for (BellOutcome b : kBellOutcomes) {
            CHECK_THAT(std::abs(inner(bell_ket(a, 1, 5), bell_ket(b, 1, 5))), WithinAbs(a == b ? 1.0 : 0.0, 1e-15));
        }
    }
    CHECK_THROWS_AS(bell_ket(kPP, 3, 3), ValidationError);

    // the exact pair bra equals the product of the two normalized Bell kets
    for (BellOutcome a : kBellOutcomes) {
        for (BellOutcome b : kBellOutcomes) {
            CHECK(testing::max_abs_diff(bell_pair_ket(a, b), tensor(bell_ket(a, 1, 5), bell_ket(b, 2, 6))) < 1e-15);
        }
    }
}

TEST_CASE("apply_corrections", "[protocol]") {
    std::mt19937_64 rng(31);
    const Ket r = testing::random_ket(rng, {3, 4, 7});
    CHECK(testing::max_abs_diff(apply_corrections(kPP, kPM, r), apply_one_photon(kPauliZ, 4, r)) == 0.0);
    CHECK(testing::max_abs_diff(apply_corrections(kPM, kPP, r), apply_one_photon(kPauliZ, 3, r)) == 0.0);
    CHECK(testing::max_abs_diff(apply_corrections(kPM, kPM, r),
                                apply_one_photon(kPauliZ, 4, apply_one_photon(kPauliZ, 3, r))) == 0.0);
    CHECK(testing::max_abs_diff(apply_corrections(kPP, kPP, r), r) == 0.0);
    CHECK(testing::max_abs_diff(apply_corrections(BellOutcome::PhiPlus, kPP, r), r) == 0.0);
    CHECK_THROWS_AS(apply_corrections(kPP, kPM, testing::random_ket(rng, {3, 7})), ValidationError);
}

TEST_CASE("run_protocol general mode", "[protocol]") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const ProjectorFamily f = testing::random_family(rng);
        const Ket beta = testing::random_beta(rng);
        const ProtocolReport r = run_protocol(beta, f, Mode::General);
        CHECK(r.branches.size() == 19);
        CHECK_THAT(r.totals.success_probability, WithinAbs(1.0 / 16.0, 1e-10));
        CHECK_THAT(r.totals.inconclusive_probability, WithinAbs(15.0 / 16.0, 1e-10));
        CHECK_THAT(r.total_probability(), WithinAbs(1.0, 1e-10));
        CHECK(compare_reports(r, oracle_report(beta, f)).pass);
    }

    SECTION("conditional distribution for an even parity split") {
        const Ket beta = from_vec4({s, s, 0, 0}, 1, 2);
        const ProtocolReport r = run_protocol(beta, parity_family(), Mode::General);
        REQUIRE(r.totals.conditional_j.size() == 2);
        CHECK_THAT(r.totals.conditional_j[0], WithinAbs(0.5, 1e-12));
        CHECK_THAT(r.totals.conditional_j[1], WithinAbs(0.5, 1e-12));

        const Branch &j0 = find_branch(r, kPP, kPP, "HH");
        CHECK(j0.classification == Classification::Success);
        CHECK(j0.j == 0u);
        CHECK_THAT(j0.probability, WithinAbs(1.0 / 32.0, 1e-15));
        CHECK(phase_equal(*j0.residual, basis_ket({3, 4}, "HH")));

        const Branch &j1 = find_branch(r, kPP, kPP, "HV");
        CHECK(j1.j == 1u);
        CHECK(phase_equal(*j1.residual, basis_ket({3, 4}, "HV")));

        // register outcomes beyond J never occur
        CHECK(find_branch(r, kPP, kPP, "VH").classification == Classification::Zero);
        CHECK_FALSE(find_branch(r, kPP, kPP, "VV").residual.has_value());
    }

    SECTION("branch order: bell15 major, bell26 minor, register innermost") {
        const ProtocolReport r = run_protocol(basis_ket({1, 2}, "HH"), parity_family(), Mode::General);
        CHECK(r.branches[0].register_result == std::optional<std::string>("HH"));
        CHECK(r.branches[3].register_result == std::optional<std::string>("VV"));
        CHECK(r.branches[4].bell26 == kPM);
        CHECK(r.branches[4].bell15 == kPP);
        CHECK(r.branches[7].bell15 == kPM);
        CHECK(r.branches[18].bell15 == BellOutcome::PhiMinus);
        CHECK(r.branches[18].bell26 == BellOutcome::PhiMinus);
    }
}

TEST_CASE("run_protocol parity modes", "[protocol]") {
    SECTION("parity5 reaches one quarter") {
        std::mt19937_64 rng(41);
        for (int trial = 0; trial < 20; ++trial) {
            const Ket beta = testing::random_beta(rng);
            const ProtocolReport r = run_protocol(beta, parity_family(), Mode::Parity5);
            CHECK(r.branches.size() == 20);
            CHECK_THAT(r.totals.success_probability, WithinAbs(0.25, 1e-10));
            CHECK(compare_reports(r, oracle_report(beta, parity_family())).pass);
        }
        const ProtocolReport hh = run_protocol(basis_ket({1, 2}, "HH"), parity_family(), Mode::Parity5);
        CHECK(hh.totals.success_probability == 0.25);
        const Branch &b = find_branch(hh, kPM, kPM, "H");
        CHECK(b.classification == Classification::Correctable);
        CHECK(b.corrections == std::vector<Correction>{{3, "Z"}, {4, "Z"}});
        CHECK(b.probability == 0.0625);
    }

    SECTION("parity4 filter on |HH>") {
        const Ket beta = basis_ket({1, 2}, "HH");
        const ProtocolReport r = run_protocol(beta, parity_family(), Mode::Parity4);
        CHECK(r.branches.size() == 16);
        for (BellOutcome a : {kPP, kPM}) {
            for (BellOutcome b : {kPP, kPM}) {
                const Branch &br = find_branch(r, a, b);
                CHECK(br.succeeded());
                CHECK(br.j == 0u);
                CHECK_THAT(br.probability, WithinAbs(0.125, 1e-15));
                CHECK(phase_equal(*br.residual, basis_ket({3, 4}, "HH")));
            }
        }
        CHECK_THAT(r.totals.success_probability, WithinAbs(0.5, 1e-15));

        // same numbers from the dense contraction oracle
        const testing::Dense total = testing::kron(testing::dense_two(1, 2, {1, 0, 0, 0}), testing::dense_parity_aux4());
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                CHECK_THAT(testing::dense_bell_residual(total, a, b).norm2(), WithinAbs(0.125, 1e-15));
            }
        }
    }

    SECTION("parity4 input outside the even subspace never succeeds") {
        const ProtocolReport r = run_protocol(basis_ket({1, 2}, "HV"), parity_family(), Mode::Parity4);
        CHECK(r.totals.success_probability == 0.0);
        CHECK(r.totals.conditional_j == std::vector<double>{0.0, 0.0});
        CHECK(compare_reports(r, oracle_report(basis_ket({1, 2}, "HV"), parity_family())).pass);
    }

    SECTION("errors") {
        std::mt19937_64 rng(43);
        const ProjectorFamily other = testing::random_family(rng, 2);
        CHECK_THROWS_AS(run_protocol(basis_ket({1, 2}, "HH"), other, Mode::Parity5), ValidationError);
        CHECK_THROWS_AS(run_protocol(basis_ket({1, 2}, "HH"), other, Mode::Parity4), ValidationError);
        CHECK_THROWS_AS(run_protocol(from_vec4({1, 1, 0, 0}, 1, 2), parity_family(), Mode::Parity5), ValidationError);
        CHECK_THROWS_AS(run_protocol(basis_ket({3, 4}, "HH"), parity_family(), Mode::Parity5), ValidationError);
    }
}

TEST_CASE("branches agree with a dense brute-force contraction", "[protocol]") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        const ProjectorFamily f = testing::random_family(rng);
        const Vec4 b = testing::random_unit_vec4(rng);
        const Ket beta = from_vec4(b, 1, 2);
        const testing::Dense general = testing::kron(testing::dense_two(1, 2, b), testing::dense_general_aux(f));
        const testing::Dense parity = testing::kron(testing::dense_two(1, 2, b), testing::dense_parity_aux5());
        const ProtocolReport rg = run_protocol(beta, f, Mode::General);
        const ProtocolReport rp = run_protocol(beta, parity_family(), Mode::Parity5);
        for (int a = 0; a < 4; ++a) {
            for (int c = 0; c < 4; ++c) {
                const BellOutcome ba = kBellOutcomes[a];
                const BellOutcome bc = kBellOutcomes[c];
                const double dg = testing::dense_bell_residual(general, a, c).norm2();
                const double dp = testing::dense_bell_residual(parity, a, c).norm2();
                double sg = 0.0;
                double sp = 0.0;
                for (const Branch &br : rg.branches) {
                    if (br.bell15 == ba && br.bell26 == bc) {
                        sg += br.probability;
                    }
                }
                for (const Branch &br : rp.branches) {
                    if (br.bell15 == ba && br.bell26 == bc) {
                        sp += br.probability;
                    }
                }
                CHECK_THAT(sg, WithinAbs(dg, 1e-12));
                CHECK_THAT(sp, WithinAbs(dp, 1e-12));
            }
        }
    }
}

TEST_CASE("oracle_report", "[protocol]") {
    const OracleReport hh = oracle_report(basis_ket({1, 2}, "HH"), parity_family());
    CHECK(hh.probabilities == std::vector<double>{1.0, 0.0});
    CHECK(phase_equal(*hh.states[0], basis_ket({1, 2}, "HH")));
    CHECK_FALSE(hh.states[1].has_value());

    const OracleReport split = oracle_report(from_vec4({s, s, 0, 0}, 1, 2), parity_family());
    CHECK_THAT(split.probabilities[0], WithinAbs(0.5, 1e-15));
    CHECK_THAT(split.probabilities[1], WithinAbs(0.5, 1e-15));
    CHECK(phase_equal(*split.states[1], basis_ket({1, 2}, "HV")));

    std::mt19937_64 rng(53);
    const ProjectorFamily whole =
        family_from_assignment(validate_basis(testing::random_orthonormal(rng)), Assignment::from_subsets({0, 0, 0, 0}, 1));
    const Ket beta = testing::random_beta(rng);
    const OracleReport one = oracle_report(beta, whole);
    CHECK_THAT(one.probabilities[0], WithinAbs(1.0, 1e-12));
    CHECK(phase_equal(*one.states[0], beta));
}

TEST_CASE("compare_reports negative controls", "[protocol]") {
    std::mt19937_64 rng(59);
    const Ket beta = testing::random_beta(rng);

    SECTION("dropping a Z correction is caught and the branch named") {
        ProtocolOptions bad;
        bad.corrections[{kPP, kPM}] = {};
        const ProtocolReport r = run_protocol(beta, parity_family(), Mode::Parity5, bad);
        const Verdict v = compare_reports(r, oracle_report(beta, parity_family()));
        CHECK_FALSE(v.pass);
        REQUIRE_FALSE(v.mismatches.empty());
        CHECK(v.mismatches.front().find("(PsiPlus,PsiMinus)") != std::string::npos);
    }

    SECTION("unflipped partner basis is caught in general mode") {
        const ProjectorFamily f = testing::random_family(rng);
        ProtocolOptions bad;
        bad.partner = PartnerConvention::ConjugateOnly;
        CHECK_FALSE(compare_reports(run_protocol(beta, f, Mode::General, bad), oracle_report(beta, f)).pass);
        bad.partner = PartnerConvention::FlipOnly;
        CHECK_FALSE(compare_reports(run_protocol(beta, f, Mode::General, bad), oracle_report(beta, f)).pass);
    }
}

TEST_CASE("protocol invariants", "[protocol][property]") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        const ProjectorFamily f = testing::random_family(rng);
        const Ket beta = testing::random_beta(rng);

        // the (Psi+,Psi+) contraction is (1/4) sum_j P_j beta (x) |j>
        const Ket total = build_total_state(beta, f, Mode::General);
        const Ket accepted = partial_bra(bell_pair_ket(kPP, kPP), total);
        CHECK_THAT(norm(accepted), WithinAbs(0.25, 1e-10));
        std::vector<std::pair<Amplitude, Ket>> terms;
        for (std::size_t j = 0; j < f.subset_count(); ++j) {
            terms.emplace_back(1.0, tensor(relabel(apply_projector(f, j, beta), {3, 4}), encode_j_two_photon(j)));
        }
        CHECK(phase_equal(accepted, superpose(terms)));

        // parity decomposition and correction identities
        const Ket reference = parity5_residual(beta, kPP, kPP);
        for (BellOutcome a : {kPP, kPM}) {
            for (BellOutcome b : {kPP, kPM}) {
                const Ket raw = parity5_residual(beta, a, b);
                CHECK_THAT(norm_squared(raw), WithinAbs(1.0 / 16.0, 1e-10));
                CHECK(fidelity_overlap(apply_corrections(a, b, raw), reference) >= 1.0 - 1e-10);
            }
        }

        // analyzer restriction: Phi outcomes never succeed, even when ideal
        for (const AnalyzerModel &an : {AnalyzerModel::linear(), AnalyzerModel::ideal()}) {
            ProtocolOptions opts;
            opts.analyzer = an;
            for (Mode mode : {Mode::General, Mode::Parity5, Mode::Parity4}) {
                const ProjectorFamily &fam = mode == Mode::General ? f : parity_family();
                const ProtocolReport r = run_protocol(beta, fam, mode, opts);
                CHECK_THAT(r.total_probability(), WithinAbs(1.0, 1e-10));
                for (const Branch &br : r.branches) {
                    if (br.succeeded()) {
                        CHECK(br.bell15 != BellOutcome::PhiPlus);
                        CHECK(br.bell15 != BellOutcome::PhiMinus);
                        CHECK(br.bell26 != BellOutcome::PhiPlus);
                        CHECK(br.bell26 != BellOutcome::PhiMinus);
                    }
                }
            }
        }
    }
}

TEST_CASE("analyzer that only resolves Psi+", "[protocol]") {
    std::mt19937_64 rng(67);
    const Ket beta = testing::random_beta(rng);
    ProtocolOptions opts;
    opts.analyzer = AnalyzerModel{{true, false, false, false}};
    const ProtocolReport r = run_protocol(beta, parity_family(), Mode::Parity5, opts);
    CHECK_THAT(r.totals.success_probability, WithinAbs(1.0 / 16.0, 1e-10));
    CHECK(compare_reports(r, oracle_report(beta, parity_family())).pass);
}
