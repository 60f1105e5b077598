#pragma once

// Text formats: complex literals, JSON/CSV spectra, matrix and polynomial
// dumps, and JSON-lines verification reports. Numbers that may exceed double
// range or precision are always written as decimal strings.

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/exact.hpp"
#include "toeplitz_spectra/mplinalg.hpp"
#include "toeplitz_spectra/mpreal.hpp"
#include "toeplitz_spectra/params.hpp"
#include "toeplitz_spectra/verify.hpp"

namespace toeplitz_spectra {

using json = nlohmann::json;

/// Parses "1.5", "2i", "1+2i", "-0.5-1i", "i", "-i", "1e-3+4e2i".
inline MpComplex parse_complex(std::string_view text, Precision prec) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ValidationError("empty complex literal");
  const auto imag_part = [&](std::string t) {
    if (t.empty() || t == "+") return MpReal(1L, prec);
    if (t == "-") return MpReal(-1L, prec);
    return MpReal::parse(t, prec);
  };
  try {
    if (s.back() != 'i') return MpComplex(MpReal::parse(s, prec), MpReal(prec));
    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    if (split == std::string::npos) return MpComplex(MpReal(prec), imag_part(body));
    return MpComplex(MpReal::parse(body.substr(0, split), prec), imag_part(body.substr(split)));
  } catch (const ValidationError&) {
    throw ValidationError("malformed complex literal '" + std::string(text) + "'");
  }
}

inline json to_json(const ParamSet& p) {
  return json{{"n", p.n},
              {"r", p.r},
              {"s", p.s},
              {"gamma", p.gamma},
              {"sigma", p.sigma},
              {"omega", p.omega},
              {"beta_sigma", p.beta_sigma},
              {"n_sigma", p.n_sigma},
              {"beta_gamma", p.beta_gamma},
              {"n_gamma", p.n_gamma},
              {"r_gamma", p.r_gamma},
              {"s_gamma", p.s_gamma},
              {"sigma_gamma", p.sigma_gamma},
              {"beta_gamma_sigma", p.beta_gamma_sigma},
              {"n_gamma_sigma", p.n_gamma_sigma},
              {"n_zero", p.n_zero}};
}

inline json to_json(const IntMatrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(m(i, j).get_str());
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline IntMatrix int_matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto& entries = j.at("entries");
  if (entries.size() != rows * cols) throw ValidationError("matrix JSON: entry count does not match rows*cols");
  IntMatrix m(rows, cols);
  for (std::size_t k = 0; k < entries.size(); ++k) m(k / cols, k % cols) = mpz_class(entries[k].get<std::string>());
  return m;
}

/// Ascending coefficients as decimal strings, plus the printed form.
inline json to_json(const IntPolynomial& q) {
  json coeffs = json::array();
  for (const auto& c : q.coefficients()) coeffs.push_back(c.get_str());
  return json{{"degree", q.degree()}, {"coefficients", std::move(coeffs)}, {"text", q.to_string()}};
}

inline json to_json(const MpComplex& z, int digits) {
  return json{{"re", z.real().to_string(digits)}, {"im", z.imag().to_string(digits)}};
}

inline json to_json(const Spectrum& spec, const std::optional<ParamSet>& params) {
  const int digits = decimal_digits(spec.precision);
  json eig = json::array();
  for (const auto& z : spec.values) eig.push_back(to_json(z, digits));
  return json{{"params", params ? to_json(*params) : json(nullptr)},
              {"precision_bits", spec.precision},
              {"eigenvalues", std::move(eig)}};
}

/// Reads the "eigenvalues" and "precision_bits" of a spectrum document.
inline Spectrum spectrum_from_json(const json& j) {
  Spectrum out;
  out.precision = j.at("precision_bits").get<Precision>();
  for (const auto& e : j.at("eigenvalues")) {
    out.values.emplace_back(MpReal::parse(e.at("re").get<std::string>(), out.precision),
                            MpReal::parse(e.at("im").get<std::string>(), out.precision));
  }
  return out;
}

/// Header "re,im", one eigenvalue per line, same strings as the JSON form.
inline std::string to_csv(const Spectrum& spec) {
  const int digits = decimal_digits(spec.precision);
  std::ostringstream os;
  os << "re,im\n";
  for (const auto& z : spec.values) os << z.real().to_string(digits) << ',' << z.imag().to_string(digits) << '\n';
  return os.str();
}

inline json to_json(const VerificationReport& rep) {
  const int digits = 6;
  json cond = json::array();
  for (const auto& c : rep.condition_numbers) cond.push_back(c.to_string(digits));
  return json{{"params", to_json(rep.params)},
              {"exact_identity_holds", rep.exact_identity_holds ? json(*rep.exact_identity_holds) : json(nullptr)},
              {"numeric_error", rep.numeric_error ? json(rep.numeric_error->to_string(digits)) : json(nullptr)},
              {"precision", rep.precision},
              {"oracle_runtime", rep.oracle_runtime ? json(*rep.oracle_runtime) : json(nullptr)},
              {"algorithm_runtime", rep.algorithm_runtime ? json(*rep.algorithm_runtime) : json(nullptr)},
              {"condition_numbers", std::move(cond)},
              {"notes", rep.notes}};
}

/// One JSON-lines record: the report fields plus timestamp and build id.
inline std::string report_line(const VerificationReport& rep, const std::string& build_id) {
  json j = to_json(rep);
  j["timestamp"] = iso8601_now();
  j["build"] = build_id;
  return j.dump();
}

}  // namespace toeplitz_spectra
