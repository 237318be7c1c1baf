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
 * Command implementations behind the `lomeas` executable. They write to the
 * given streams and return the process exit code, so tests can drive them
 * without spawning a process.
 */
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>

#include "config.hpp"
#include "protocol.hpp"
#include "report_io.hpp"

namespace lomeas::cli {

enum ExitCode : int { kPass = 0, kValidationFailure = 1, kParseFailure = 2, kOracleMismatch = 3 };

/// Deliberate protocol faults, used to exercise the mismatch exit path.
struct FaultInjection {
    std::optional<CorrectionTable> corrections;
    PartnerConvention partner = PartnerConvention::ConjugateFlip;
};

namespace detail {

/// `source` is a file path, or an inline JSON document if it starts with '{'.
inline RunConfig read_config(const std::string &source) {
    const auto first = source.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && source[first] == '{') {
        return parse_config(source);
    }
    return load_config(source);
}

struct Evaluation {
    ProtocolReport report;
    Verdict verdict;
};

/// Shared path of `run` and `verify`. Returns an exit code on failure.
inline std::variant<Evaluation, int> evaluate(const std::string &source, std::ostream &err,
                                              const FaultInjection &faults) {
    RunConfig cfg;
    try {
        cfg = read_config(source);
    } catch (const ConfigParseError &e) {
        err << "error: " << e.what() << "\n";
        return kParseFailure;
    }

    try {
        const ProjectorFamily family = resolve_family(cfg);
        Ket beta = from_vec4(cfg.input_state, photon::kIn1, photon::kIn2);
        const double n = norm(beta);
        if (n <= kDegenerateNorm) {
            err << "error: input state has zero norm\n";
            return kValidationFailure;
        }
        if (std::abs(n - 1.0) > cfg.tol) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "warning: input state norm is %.17g; normalizing\n", n);
            err << buf;
            beta = normalize(beta);
        }
        ProtocolOptions opts;
        opts.analyzer = cfg.analyzer;
        opts.tol = cfg.tol;
        opts.partner = faults.partner;
        if (faults.corrections) {
            opts.corrections = *faults.corrections;
        }
        ProtocolReport report = run_protocol(beta, family, cfg.mode, opts);
        Verdict verdict = compare_reports(report, oracle_report(beta, family, cfg.tol), cfg.tol);
        return Evaluation{std::move(report), std::move(verdict)};
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kValidationFailure;
    } catch (const DegenerateStateError &e) {
        err << "error: " << e.what() << "\n";
        return kValidationFailure;
    }
}

inline void print_mismatches(const Verdict &v, std::ostream &err) {
    for (const std::string &m : v.mismatches) {
        err << "mismatch: " << m << "\n";
    }
}

} // namespace detail

/// Execute the protocol for one config, write the report, check it against
/// the direct projector oracle.
inline int run_command(const std::string &config, ReportFormat format, const std::optional<std::string> &out_path,
                       std::ostream &out, std::ostream &err, const FaultInjection &faults = {}) {
    auto result = detail::evaluate(config, err, faults);
    if (const int *code = std::get_if<int>(&result)) {
        return *code;
    }
    const auto &[report, verdict] = std::get<detail::Evaluation>(result);

    if (out_path) {
        std::ofstream file(*out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << *out_path << "'\n";
            return kValidationFailure;
        }
        emit_report(file, report, format);
    } else {
        emit_report(out, report, format);
    }

    if (!verdict.pass) {
        detail::print_mismatches(verdict, err);
        return kOracleMismatch;
    }
    return kPass;
}

inline int verify_command(const std::string &config, std::ostream &out, std::ostream &err,
                          const FaultInjection &faults = {}) {
    auto result = detail::evaluate(config, err, faults);
    if (const int *code = std::get_if<int>(&result)) {
        return *code;
    }
    const auto &[report, verdict] = std::get<detail::Evaluation>(result);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: success_probability=%s branches=%zu\n", verdict.pass ? "PASS" : "FAIL",
                  lomeas::detail::num(report.totals.success_probability).c_str(), report.branches.size());
    out << buf;
    if (!verdict.pass) {
        detail::print_mismatches(verdict, err);
        return kOracleMismatch;
    }
    return kPass;
}

/// The parity preset spelled out as an explicit config skeleton.
inline int families_command(std::ostream &out) {
    const ProjectorFamily f = parity_family();
    out << "{\n"
        << "  \"input_state\": \"|HH>\",\n"
        << "  \"family\": " << lomeas::detail::family_json(f) << ",\n"
        << "  \"mode\": \"parity5\",\n"
        << "  \"analyzer\": \"linear\",\n"
        << "  \"tol\": 1e-10\n"
        << "}\n";
    return kPass;
}

} // namespace lomeas::cli
