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
 * Parser for two-photon ket expressions such as
 *
 *     isqrt2*|HV> + isqrt2*|VH>
 *     (0.6,0.1)*|HH> - (0.2-0.3i)*|VV>
 *
 * Grammar (whitespace allowed between tokens):
 *
 *     expr  := term (('+'|'-') term)*
 *     term  := [coeff '*'] '|' pol pol '>'
 *     pol   := 'H' | 'V'
 *     coeff := decimal
 *            | '(' sdecimal (',' | '+' | '-') decimal ['i'] ')'
 *            | 'isqrt2'
 *
 * `sdecimal` may carry a leading sign, and decimals accept an exponent.
 */
#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

#include "measurement.hpp"

namespace lomeas {

class KetParseError : public std::runtime_error {
  public:
    enum class Kind { Syntax, UnknownPolarization, Empty };

    KetParseError(Kind kind, std::size_t offset, const std::string &what)
        : std::runtime_error(what + " at byte " + std::to_string(offset)), kind_(kind), offset_(offset) {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

  private:
    Kind kind_;
    std::size_t offset_;
};

namespace detail {

class KetParser {
  public:
    explicit KetParser(std::string_view text) : text_(text) {}

    Vec4 parse() {
        skip_ws();
        if (pos_ == text_.size()) {
            throw KetParseError(KetParseError::Kind::Empty, pos_, "empty ket expression");
        }
        Vec4 out{};
        double sign = 1.0;
        while (true) {
            auto [coeff, index] = term();
            out[index] += sign * coeff;
            skip_ws();
            if (pos_ == text_.size()) {
                return out;
            }
            const char op = text_[pos_];
            if (op != '+' && op != '-') {
                fail("expected '+' or '-' between terms");
            }
            sign = op == '+' ? 1.0 : -1.0;
            ++pos_;
            skip_ws();
        }
    }

  private:
    [[noreturn]] void fail(const std::string &what) const {
        throw KetParseError(KetParseError::Kind::Syntax, pos_, what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    std::pair<Amplitude, std::size_t> term() {
        Amplitude coeff = 1.0;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] != '|') {
            coeff = coefficient();
            expect('*');
        }
        expect('|');
        const std::size_t first = polarization();
        const std::size_t second = polarization();
        expect('>');
        return {coeff, 2 * first + second};
    }

    std::size_t polarization() {
        if (pos_ >= text_.size()) {
            fail("expected polarization H or V");
        }
        const char c = text_[pos_];
        if (c == 'H' || c == 'V') {
            ++pos_;
            return c == 'H' ? 0 : 1;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            throw KetParseError(KetParseError::Kind::UnknownPolarization, pos_,
                                std::string("unknown polarization '") + c + "'");
        }
        fail("expected polarization H or V");
    }

    Amplitude coefficient() {
        if (text_.substr(pos_, 6) == "isqrt2") {
            pos_ += 6;
            return M_SQRT1_2;
        }
        if (!accept('(')) {
            return decimal(false);
        }
        const double re = decimal(true);
        skip_ws();
        double im_sign = 1.0;
        if (accept(',')) {
        } else if (accept('+')) {
        } else if (accept('-')) {
            im_sign = -1.0;
        } else {
            fail("expected ',', '+' or '-' in complex coefficient");
        }
        const double im = decimal(true);
        accept('i');
        expect(')');
        return {re, im_sign * im};
    }

    double decimal(bool allow_sign) {
        skip_ws();
        const std::size_t start = pos_;
        std::size_t end = pos_;
        if (allow_sign && end < text_.size() && (text_[end] == '+' || text_[end] == '-')) {
            ++end;
        }
        const std::size_t digits_start = end;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) {
            ++end;
        }
        if (end < text_.size() && text_[end] == '.') {
            ++end;
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) {
                ++end;
            }
        }
        if (end == digits_start || (end == digits_start + 1 && text_[digits_start] == '.')) {
            fail("expected a decimal number");
        }
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t exp = end + 1;
            if (exp < text_.size() && (text_[exp] == '+' || text_[exp] == '-')) {
                ++exp;
            }
            const std::size_t exp_digits = exp;
            while (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp]))) {
                ++exp;
            }
            if (exp > exp_digits) {
                end = exp;
            }
        }
        // from_chars rejects a leading '+'
        const std::size_t parse_from = text_[start] == '+' ? start + 1 : start;
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + parse_from, text_.data() + end, value);
        if (ec != std::errc{} || ptr != text_.data() + end) {
            fail("malformed decimal number");
        }
        pos_ = end;
        return value;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Components in (HH, HV, VH, VV) order; repeated labels are summed and the
/// result is not normalized.
inline Vec4 parse_ket(std::string_view text) { return detail::KetParser(text).parse(); }

/// Prints every component as "(re,im)*|XY>" with 17 significant digits, so
/// parse_ket(print_ket(v)) == v.
inline std::string print_ket(const Vec4 &v) {
    std::string out;
    char buf[96];
    for (std::size_t c = 0; c < 4; ++c) {
        std::snprintf(buf, sizeof buf, "(%.17g,%.17g)*|%s>", v[c].real(), v[c].imag(), kTwoPhotonLabels[c]);
        if (c != 0) {
            out += " + ";
        }
        out += buf;
    }
    return out;
}

} // namespace lomeas
