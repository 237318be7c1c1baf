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
 * Run configuration documents.
 *
 *     {
 *       "input_state": "isqrt2*|HH> + isqrt2*|HV>",   // or [[re,im] x 4]
 *       "family": "parity",                           // or {basis, assignment}
 *       "mode": "general",                            // general | parity5 | parity4
 *       "analyzer": "linear",                         // linear | ideal
 *       "tol": 1e-10
 *     }
 *
 * An explicit family is {"basis": [state x 4], "assignment": [[0/1 x J] x 4]}
 * where each state is a ket expression or four [re, im] pairs (a bare
 * number is a real amplitude).
 */
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "ket_parser.hpp"
#include "measurement.hpp"
#include "protocol.hpp"

namespace lomeas {

/// Malformed configuration text or schema (exit code 2).
class ConfigParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ExplicitFamily {
    std::array<Vec4, 4> basis{};
    Assignment::Table assignment;
};

struct RunConfig {
    Vec4 input_state{};
    std::variant<std::string, ExplicitFamily> family = std::string("parity");
    Mode mode = Mode::General;
    AnalyzerModel analyzer = AnalyzerModel::linear();
    double tol = kDefaultTol;
};

namespace detail {

using nlohmann::json;

inline Amplitude parse_amplitude(const json &j, const std::string &where) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ConfigParseError(where + ": expected a number or [re, im]");
}

inline Vec4 parse_state(const json &j, const std::string &where) {
    if (j.is_string()) {
        try {
            return parse_ket(j.get<std::string>());
        } catch (const KetParseError &e) {
            throw ConfigParseError(where + ": " + e.what());
        }
    }
    if (!j.is_array() || j.size() != 4) {
        throw ConfigParseError(where + ": expected a ket expression or 4 components");
    }
    Vec4 v{};
    for (std::size_t c = 0; c < 4; ++c) {
        v[c] = parse_amplitude(j[c], where + "[" + std::to_string(c) + "]");
    }
    return v;
}

inline Mode parse_mode(const std::string &s) {
    if (s == "general") {
        return Mode::General;
    }
    if (s == "parity5") {
        return Mode::Parity5;
    }
    if (s == "parity4") {
        return Mode::Parity4;
    }
    throw ConfigParseError("mode: unknown value '" + s + "' (general|parity5|parity4)");
}

} // namespace detail

inline RunConfig parse_config(std::string_view text) {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigParseError("config must be a JSON object");
    }

    RunConfig cfg;
    if (!doc.contains("input_state")) {
        throw ConfigParseError("missing field 'input_state'");
    }
    cfg.input_state = detail::parse_state(doc["input_state"], "input_state");

    if (doc.contains("family")) {
        const json &fam = doc["family"];
        if (fam.is_string()) {
            if (fam.get<std::string>() != "parity") {
                throw ConfigParseError("family: unknown preset '" + fam.get<std::string>() + "'");
            }
            cfg.family = std::string("parity");
        } else if (fam.is_object() && fam.contains("basis") && fam.contains("assignment")) {
            ExplicitFamily ex;
            const json &basis = fam["basis"];
            if (!basis.is_array() || basis.size() != 4) {
                throw ConfigParseError("family.basis: expected 4 states");
            }
            for (std::size_t i = 0; i < 4; ++i) {
                ex.basis[i] = detail::parse_state(basis[i], "family.basis[" + std::to_string(i) + "]");
            }
            const json &pi = fam["assignment"];
            if (!pi.is_array() || pi.size() != 4) {
                throw ConfigParseError("family.assignment: expected 4 rows");
            }
            for (std::size_t i = 0; i < 4; ++i) {
                if (!pi[i].is_array()) {
                    throw ConfigParseError("family.assignment[" + std::to_string(i) + "]: expected an array");
                }
                for (const json &e : pi[i]) {
                    if (!e.is_number_integer()) {
                        throw ConfigParseError("family.assignment[" + std::to_string(i) + "]: expected integers");
                    }
                    ex.assignment[i].push_back(e.get<int>());
                }
            }
            cfg.family = std::move(ex);
        } else {
            throw ConfigParseError("family: expected \"parity\" or {basis, assignment}");
        }
    }

    if (doc.contains("mode")) {
        if (!doc["mode"].is_string()) {
            throw ConfigParseError("mode: expected a string");
        }
        cfg.mode = detail::parse_mode(doc["mode"].get<std::string>());
    }
    if (doc.contains("analyzer")) {
        const json &a = doc["analyzer"];
        if (a == "linear") {
            cfg.analyzer = AnalyzerModel::linear();
        } else if (a == "ideal") {
            cfg.analyzer = AnalyzerModel::ideal();
        } else {
            throw ConfigParseError("analyzer: expected \"linear\" or \"ideal\"");
        }
    }
    if (doc.contains("tol")) {
        if (!doc["tol"].is_number() || doc["tol"].get<double>() <= 0.0) {
            throw ConfigParseError("tol: expected a positive number");
        }
        cfg.tol = doc["tol"].get<double>();
    }
    return cfg;
}

inline RunConfig load_config(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigParseError("cannot read config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

/// Build the projector family named by the config; throws ValidationError
/// for a non-orthonormal basis or a bad assignment.
inline ProjectorFamily resolve_family(const RunConfig &cfg) {
    if (const auto *preset = std::get_if<std::string>(&cfg.family)) {
        (void)preset;
        return parity_family();
    }
    const auto &ex = std::get<ExplicitFamily>(cfg.family);
    return family_from_assignment(validate_basis(ex.basis, cfg.tol), Assignment::from_table(ex.assignment));
}

} // namespace lomeas
