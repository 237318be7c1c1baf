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
 * Deterministic JSON and CSV serialization of protocol reports.
 *
 * Numbers are printed with 17 significant digits and keys appear in a
 * fixed order, so identical inputs give byte-identical output.
 */
#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

#include "protocol.hpp"

namespace lomeas {

enum class ReportFormat { Json, Csv };

namespace detail {

inline std::string num(double x) {
    if (x == 0.0) {
        x = 0.0; // drop the sign of -0
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string complex_pair(Amplitude a) { return "[" + num(a.real()) + "," + num(a.imag()) + "]"; }

inline std::string quoted(const std::string &s) { return "\"" + s + "\""; }

inline std::string analyzer_name(const AnalyzerModel &a) {
    if (a == AnalyzerModel::linear()) {
        return quoted("linear");
    }
    if (a == AnalyzerModel::ideal()) {
        return quoted("ideal");
    }
    std::string out = "[";
    bool first = true;
    for (BellOutcome b : kBellOutcomes) {
        if (a.distinguishes(b)) {
            out += (first ? "" : ",") + quoted(to_string(b));
            first = false;
        }
    }
    return out + "]";
}

inline std::string components_json(const Ket &k) {
    std::string out = "{";
    bool first = true;
    for (const auto &[label, amp] : k.components()) {
        out += (first ? "" : ",") + quoted(label) + ":" + complex_pair(amp);
        first = false;
    }
    return out + "}";
}

inline std::string vec4_json(const Vec4 &v) {
    std::string out = "{";
    for (std::size_t c = 0; c < 4; ++c) {
        out += (c ? "," : "") + quoted(kTwoPhotonLabels[c]) + ":" + complex_pair(v[c]);
    }
    return out + "}";
}

inline std::string family_json(const ProjectorFamily &f) {
    std::string out = "{\"basis\":[";
    for (std::size_t i = 0; i < 4; ++i) {
        out += i ? "," : "";
        out += "[";
        for (std::size_t c = 0; c < 4; ++c) {
            out += (c ? "," : "") + complex_pair(f.basis().state(i)[c]);
        }
        out += "]";
    }
    out += "],\"assignment\":[";
    for (std::size_t i = 0; i < 4; ++i) {
        out += i ? "," : "";
        out += "[";
        for (std::size_t j = 0; j < f.subset_count(); ++j) {
            out += (j ? "," : "") + std::to_string(f.assignment().pi(i, j));
        }
        out += "]";
    }
    return out + "]}";
}

inline std::string corrections_json(const std::vector<Correction> &cs) {
    std::string out = "[";
    for (std::size_t k = 0; k < cs.size(); ++k) {
        out += (k ? "," : "") + std::string("{\"photon\":") + std::to_string(cs[k].photon.label) +
               ",\"op\":" + quoted(cs[k].op) + "}";
    }
    return out + "]";
}

inline void write_json(std::ostream &os, const ProtocolReport &r) {
    os << "{\n";
    os << "  \"mode\": " << quoted(to_string(r.mode)) << ",\n";
    os << "  \"analyzer\": " << analyzer_name(r.analyzer) << ",\n";
    os << "  \"input\": " << vec4_json(to_vec4(r.input)) << ",\n";
    os << "  \"family\": " << family_json(r.family) << ",\n";
    os << "  \"branches\": [\n";
    for (std::size_t k = 0; k < r.branches.size(); ++k) {
        const Branch &b = r.branches[k];
        os << "    {\"bell15\":" << quoted(to_string(b.bell15)) << ",\"bell26\":" << quoted(to_string(b.bell26))
           << ",\"register_result\":" << (b.register_result ? quoted(*b.register_result) : "null")
           << ",\"probability\":" << num(b.probability) << ",\"classification\":" << quoted(classification_label(b))
           << ",\"corrections\":" << corrections_json(b.corrections);
        if (b.residual) {
            os << ",\"residual\":" << components_json(*b.residual);
        }
        os << "}" << (k + 1 < r.branches.size() ? "," : "") << "\n";
    }
    os << "  ],\n";
    os << "  \"totals\": {\"success_probability\":" << num(r.totals.success_probability) << ",\"conditional_j\":[";
    for (std::size_t j = 0; j < r.totals.conditional_j.size(); ++j) {
        os << (j ? "," : "") << num(r.totals.conditional_j[j]);
    }
    os << "],\"inconclusive_probability\":" << num(r.totals.inconclusive_probability) << "}\n";
    os << "}\n";
}

inline void write_csv(std::ostream &os, const ProtocolReport &r) {
    os << "bell15,bell26,register_result,probability,classification,corrections,residual\n";
    for (const Branch &b : r.branches) {
        os << to_string(b.bell15) << ',' << to_string(b.bell26) << ',' << b.register_result.value_or("") << ','
           << num(b.probability) << ',' << classification_label(b) << ',';
        for (std::size_t k = 0; k < b.corrections.size(); ++k) {
            os << (k ? ";" : "") << b.corrections[k].photon.label << ':' << b.corrections[k].op;
        }
        os << ',';
        if (b.residual) {
            bool first = true;
            for (const auto &[label, amp] : b.residual->components()) {
                os << (first ? "" : ";") << label << ':' << num(amp.real()) << ':' << num(amp.imag());
                first = false;
            }
        }
        os << '\n';
    }
}

} // namespace detail

inline void emit_report(std::ostream &os, const ProtocolReport &r, ReportFormat format) {
    if (format == ReportFormat::Json) {
        detail::write_json(os, r);
    } else {
        detail::write_csv(os, r);
    }
}

inline std::string emit_report(const ProtocolReport &r, ReportFormat format) {
    std::ostringstream os;
    emit_report(os, r, format);
    return os.str();
}

} // namespace lomeas
