#pragma once

// Generating-symbol description and the integer bookkeeping that drives the
// spectrum reduction: gcd reduction, block sizes, and the zero count.

#include <cstdint>
#include <numeric>
#include <string>

#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/mpreal.hpp"

namespace toeplitz_spectra {

/// f(theta) = f0 + fr e^{i r theta} + fms e^{-i s theta}; fr sits on the r-th
/// subdiagonal, fms on the s-th superdiagonal. Negative offsets place both
/// diagonals on the same side of the main diagonal.
struct SymbolSpec {
  long r = 1;
  long s = 1;
  MpComplex f0;
  MpComplex fr;
  MpComplex fms;

  /// Both off-diagonals on one side (exactly one negative offset) or one of
  /// them missing: T_n(f) is triangular with constant diagonal f0.
  bool is_degenerate() const { return (r < 0) != (s < 0) || fr.is_zero() || fms.is_zero(); }

  void validate() const {
    if (r == 0 || s == 0) throw ValidationError("offsets r and s must be nonzero");
    if (r < 0 && s < 0) throw ValidationError("both offsets negative; negate and swap them");
  }
};

struct ParamSet {
  long n = 0;
  long r = 0;
  long s = 0;
  long gamma = 0;
  long sigma = 0;
  long omega = 0;
  long beta_sigma = 0;
  long n_sigma = 0;
  long beta_gamma = 0;
  long n_gamma = 0;
  long r_gamma = 0;
  long s_gamma = 0;
  long sigma_gamma = 0;
  long beta_gamma_sigma = 0;
  long n_gamma_sigma = 0;
  long n_zero = 0;

  /// Number of positive real eigenvalues; omega of these per nonzero arm.
  long positive_count() const {
    return (gamma - beta_gamma) * n_gamma_sigma + beta_gamma * ((n_gamma + 1) / sigma_gamma);
  }

  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

/// Validates 1 <= r <= s and n >= 1, then derives every block parameter.
inline ParamSet compute_params(long n, long r, long s) {
  if (n < 1 || r < 1 || s < 1) {
    throw ValidationError("n, r and s must be positive (got n=" + std::to_string(n) +
                          ", r=" + std::to_string(r) + ", s=" + std::to_string(s) + ")");
  }
  if (r > s) {
    throw ValidationError("r=" + std::to_string(r) + " > s=" + std::to_string(s) +
                          "; transpose the matrix (swap r and s) first");
  }
  ParamSet p;
  p.n = n;
  p.r = r;
  p.s = s;
  p.gamma = std::gcd(r, s);
  p.sigma = r + s;
  p.omega = p.sigma / p.gamma;
  p.beta_sigma = n % p.sigma;
  p.n_sigma = (n - p.beta_sigma) / p.sigma;
  p.beta_gamma = n % p.gamma;
  p.n_gamma = (n - p.beta_gamma) / p.gamma;
  p.r_gamma = r / p.gamma;
  p.s_gamma = s / p.gamma;
  p.sigma_gamma = p.r_gamma + p.s_gamma;
  p.beta_gamma_sigma = p.n_gamma % p.sigma_gamma;
  p.n_gamma_sigma = (p.n_gamma - p.beta_gamma_sigma) / p.sigma_gamma;
  p.n_zero = (p.gamma - p.beta_gamma) * (p.n_gamma % p.omega) +
             p.beta_gamma * ((p.n_gamma + 1) % p.omega);
  return p;
}

/// Result of mapping T_n(f) onto T_n(g_{r,s}):
/// lambda_j(T_n(f)) = shift + scale * lambda_j(T_n(g_{r,s})).
struct ReducedSymbol {
  MpComplex shift;
  MpComplex scale;
  long r = 1;
  long s = 1;
  /// Human-readable record of the fractional-power branch used for `scale`.
  std::string branch;
};

/// Symmetrises the symbol. `scale` uses the principal branch of both
/// fractional powers. Any other branch multiplies scale by an omega-th root of
/// unity, under which the spectrum of T_n(g_{r,s}) is invariant, so the
/// eigenvalue multiset does not depend on this choice.
inline ReducedSymbol reduce_symbol(const SymbolSpec& spec, Precision prec) {
  spec.validate();
  if (spec.r < 1 || spec.s < 1) {
    throw ValidationError("offsets must be positive for the reduction path; "
                          "same-side symbols are degenerate (all eigenvalues equal f0)");
  }
  if (spec.fr.is_zero() || spec.fms.is_zero()) {
    throw ValidationError("zero off-diagonal coefficient; the matrix is triangular and "
                          "the degenerate path applies (all eigenvalues equal f0)");
  }
  const long sigma = spec.r + spec.s;
  const MpReal es = MpReal(spec.s, prec) / MpReal(sigma, prec);
  const MpReal er = MpReal(spec.r, prec) / MpReal(sigma, prec);
  MpComplex fr = spec.fr;
  MpComplex fms = spec.fms;
  fr.real().round_to(prec);
  fr.imag().round_to(prec);
  fms.real().round_to(prec);
  fms.imag().round_to(prec);
  ReducedSymbol out{MpComplex(prec), pow(fr, es) * pow(fms, er), spec.r, spec.s,
                    "principal: exp((s/sigma) Log fr + (r/sigma) Log fms)"};
  out.shift = spec.f0;
  out.shift.real().round_to(prec);
  out.shift.imag().round_to(prec);
  return out;
}

}  // namespace toeplitz_spectra
