#pragma once

// Text format for models:
//
//   format = rg-w/1
//   mode = restricted            # or general
//   a = "1/3"                    # restricted: coefficient entries
//   term x^5 y^1 = "2/9 sqrt3"   # general: one line per monomial
//
// '#' starts a comment.  Omitted coefficients are zero.

#include "rgfp/errors.hpp"
#include "rgfp/model.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>

namespace rgfp {

inline constexpr std::string_view kModelFormat = "rg-w/1";

class ModelFileError : public std::runtime_error {
public:
    ModelFileError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::string strip_comment(const std::string& line) {
    // '#' never appears inside a coefficient literal.
    return std::string(trim(std::string_view(line).substr(0, line.find('#'))));
}

inline std::string file_literal(const ExactScalar& v) {
    const mpq_class& r = v.rational_part();
    const mpq_class& q = v.sqrt3_part();
    if (sgn(q) == 0) return r.get_str();
    const std::string qs = mpq_class(abs(q)).get_str();
    if (sgn(r) == 0) return (sgn(q) < 0 ? "-" : "") + qs + " sqrt3";
    return r.get_str() + (sgn(q) < 0 ? " - " : " + ") + qs + " sqrt3";
}

}  // namespace detail

inline WModel parse_model(std::istream& in) {
    static const std::regex entry_re(R"re(^([A-Za-z][A-Za-z0-9]*)\s*=\s*(.*)$)re");
    static const std::regex term_re(R"re(^term\s+x\^(\d+)\s+y\^(\d+)\s*=\s*"([^"]*)"$)re");
    static const std::regex quoted_re(R"re(^"([^"]*)"$)re");

    std::optional<ModelMode> mode;
    bool have_format = false;
    std::map<Var, ExactScalar> coeffs;
    WModel::TermList terms;
    std::set<XYExponent> seen_terms;
    std::string raw;
    std::size_t lineno = 0, last = 0;

    auto scalar = [&](const std::string& text) {
        try {
            return ExactScalar::parse(text);
        } catch (const std::exception& e) {
            throw ModelFileError(lineno, std::string("bad coefficient: ") + e.what());
        }
    };

    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = detail::strip_comment(raw);
        if (line.empty()) continue;
        last = lineno;
        std::smatch m;
        if (!have_format) {
            if (!std::regex_match(line, m, entry_re) || m[1] != "format")
                throw ModelFileError(lineno, "expected 'format = rg-w/1' header");
            if (m[2].str() != kModelFormat) throw ModelFileError(lineno, "unsupported format '" + m[2].str() + "'");
            have_format = true;
            continue;
        }
        if (line.starts_with("term")) {
            if (!std::regex_match(line, m, term_re))
                throw ModelFileError(lineno, "malformed term line, expected: term x^i y^j = \"c\"");
            if (!mode) throw ModelFileError(lineno, "'mode' must precede entries");
            const XYExponent e{static_cast<unsigned>(std::stoul(m[1])), static_cast<unsigned>(std::stoul(m[2]))};
            if (!seen_terms.insert(e).second) throw ModelFileError(lineno, "duplicate term");
            const ExactScalar c = scalar(m[3]);
            if (*mode == ModelMode::general) {
                terms[e] = c;
                continue;
            }
            if (e == kDerivedMonomial)
                throw ModelFileError(lineno, "x^4 y is fixed to 9 a^2 in restricted mode");
            const auto it = std::find(kRestrictedMonomials.begin(), kRestrictedMonomials.end(), e);
            if (it == kRestrictedMonomials.end())
                throw ModelFileError(lineno, "monomial not in the restricted family");
            const Var p = kParamVars[static_cast<std::size_t>(it - kRestrictedMonomials.begin())];
            if (!coeffs.emplace(p, c).second) throw ModelFileError(lineno, "duplicate coefficient");
            continue;
        }
        if (!std::regex_match(line, m, entry_re)) throw ModelFileError(lineno, "expected 'key = value'");
        const std::string key = m[1], value = m[2];
        if (key == "format") throw ModelFileError(lineno, "duplicate format header");
        if (key == "mode") {
            if (mode) throw ModelFileError(lineno, "duplicate mode");
            if (value == "restricted") mode = ModelMode::restricted;
            else if (value == "general") mode = ModelMode::general;
            else throw ModelFileError(lineno, "mode must be 'restricted' or 'general'");
            continue;
        }
        const auto var = var_from_name(key);
        if (!var || !is_param(*var)) throw ModelFileError(lineno, "unknown key '" + key + "'");
        if (!mode) throw ModelFileError(lineno, "'mode' must precede entries");
        if (*mode == ModelMode::general)
            throw ModelFileError(lineno, "coefficient entries need restricted mode; use term lines");
        std::smatch q;
        if (!std::regex_match(value, q, quoted_re)) throw ModelFileError(lineno, "coefficient must be quoted");
        if (!coeffs.emplace(*var, scalar(q[1])).second) throw ModelFileError(lineno, "duplicate coefficient");
    }

    if (!have_format) throw ModelFileError(lineno + 1, "empty model file");
    if (!mode) throw ModelFileError(last + 1, "missing 'mode'");
    try {
        return *mode == ModelMode::restricted ? WModel::restricted(coeffs) : WModel::general(terms);
    } catch (const InvalidModel& e) {
        throw ModelFileError(last, e.what());
    }
}

inline WModel parse_model(const std::string& text) {
    std::istringstream in(text);
    return parse_model(in);
}

inline WModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
    return parse_model(in);
}

/// Canonical text; zero coefficients are left out.
inline std::string serialize_model(const WModel& m) {
    std::ostringstream out;
    out << "format = " << kModelFormat << "\nmode = " << to_string(m.mode()) << '\n';
    if (m.mode() == ModelMode::restricted) {
        const auto& c = m.coefficients();
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!c[i].is_zero()) out << name(kParamVars[i]) << " = \"" << detail::file_literal(c[i]) << "\"\n";
    } else {
        for (const auto& [e, c] : m.terms())
            out << "term x^" << e.x << " y^" << e.y << " = \"" << detail::file_literal(c) << "\"\n";
    }
    return out.str();
}

}  // namespace rgfp
