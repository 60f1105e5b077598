#pragma once

// Full spectrum of T_n(g_{r,s}) and T_n(f) from one or two small B matrices:
// eigenvalues of B are omega-th powers of the positive real eigenvalues; the
// rest of the spectrum is omega rotations of those plus n_zero exact zeros.

#include <algorithm>
#include <cstddef>
#include <future>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/exact.hpp"
#include "toeplitz_spectra/mplinalg.hpp"
#include "toeplitz_spectra/mpreal.hpp"
#include "toeplitz_spectra/params.hpp"

namespace toeplitz_spectra {

/// One reduced problem T_order(g_{r_gamma, s_gamma}) whose positive real
/// eigenvalues appear `multiplicity` times in T_n(g_{r,s}).
struct ReducedBlock {
  long order = 0;
  long multiplicity = 0;
  long r = 1;
  long s = 1;

  long b_order() const { return order / (r + s); }
};

/// Blocks with a nonempty B. A block of order below r_gamma + s_gamma has no
/// positive real eigenvalues and is omitted.
inline std::vector<ReducedBlock> reduced_blocks(const ParamSet& p) {
  std::vector<ReducedBlock> out;
  const auto add = [&](long order, long mult) {
    if (mult > 0 && order / p.sigma_gamma >= 1) out.push_back({order, mult, p.r_gamma, p.s_gamma});
  };
  add(p.n_gamma, p.gamma - p.beta_gamma);
  add(p.n_gamma + 1, p.beta_gamma);
  return out;
}

/// Throws RestrictionError when any reduced block falls in the manual regime.
inline void check_restriction(const ParamSet& p) {
  for (const auto& b : reduced_blocks(p)) {
    if (in_manual_regime(b.order, b.r, b.s)) {
      throw RestrictionError("reduced problem (n=" + std::to_string(b.order) + ", r=" + std::to_string(b.r) +
                             ", s=" + std::to_string(b.s) + ") of (n=" + std::to_string(p.n) + ", r=" +
                             std::to_string(p.r) + ", s=" + std::to_string(p.s) +
                             ") lies in the manual-construction regime n <= (r-1)(r+s) with n mod (r+s) > s");
    }
  }
}

/// True when every reduced block can be built automatically.
inline bool is_constructible(long n, long r, long s) {
  const ParamSet p = compute_params(n, r, s);
  for (const auto& b : reduced_blocks(p))
    if (in_manual_regime(b.order, b.r, b.s)) return false;
  return true;
}

struct PositiveRealSpectrum {
  /// Ascending.
  std::vector<MpReal> values;
  Precision precision = kDefaultPrecision;
  /// B eigenvalues that were neither near-positive-real nor small enough to
  /// clamp to zero; a nonempty list is evidence against the real-spectrum
  /// property at this precision.
  std::vector<std::string> flags;
  /// Eigenvalues of each B (before the root), one entry per reduced block.
  std::vector<Spectrum> b_spectra;
};

namespace detail {

/// 2^16 * eps(p) * scale: the tolerance used for clamping and real-part checks.
inline MpReal loose_tolerance(const MpReal& scale, Precision p) { return pow2(16, p) * epsilon(p) * scale; }

inline std::vector<MpReal> omega_roots(const Spectrum& b_eigs, const MpReal& b_norm, long omega, Precision p,
                                       std::vector<std::string>& flags) {
  const MpReal tol = loose_tolerance(b_norm, p);
  const MpReal inv_omega = MpReal(1L, p) / MpReal(omega, p);
  std::vector<MpReal> out;
  out.reserve(b_eigs.values.size());
  for (const MpComplex& lam : b_eigs.values) {
    const MpReal mod = abs(lam);
    if (lam.real().sign() <= 0 && mod <= tol) {
      out.emplace_back(p);
      continue;
    }
    if (lam.real().sign() <= 0 || abs(lam.imag()) > tol) {
      flags.push_back("B eigenvalue off the positive real axis: (" + lam.real().to_string(20) + ", " +
                      lam.imag().to_string(20) + ")");
    }
    // Principal complex root, then the real part.
    out.push_back(pow(lam, inv_omega).real());
  }
  return out;
}

}  // namespace detail

/// Positive real eigenvalues of T_n(g_{r,s}), 1 <= r <= s, ascending.
inline PositiveRealSpectrum positive_real_spectrum(long n, long r, long s, Precision prec) {
  const ParamSet p = compute_params(n, r, s);
  check_restriction(p);
  PositiveRealSpectrum out;
  out.precision = prec;
  const auto blocks = reduced_blocks(p);
  const auto solve = [prec](const ReducedBlock& b) {
    const IntMatrix bm = construct_B(b.order, b.r, b.s);
    Spectrum eigs = eigvals(bm, prec);
    MpReal norm = MpReal(bm.norm_inf(), prec);
    return std::make_pair(std::move(eigs), std::move(norm));
  };
  std::vector<std::pair<Spectrum, MpReal>> solved;
  if (blocks.size() == 2) {
    auto second = std::async(std::launch::async, solve, blocks[1]);
    solved.push_back(solve(blocks[0]));
    solved.push_back(second.get());
  } else {
    for (const auto& b : blocks) solved.push_back(solve(b));
  }
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto roots = detail::omega_roots(solved[k].first, solved[k].second, p.sigma_gamma, prec, out.flags);
    for (long m = 0; m < blocks[k].multiplicity; ++m) out.values.insert(out.values.end(), roots.begin(), roots.end());
    out.b_spectra.push_back(std::move(solved[k].first));
  }
  std::sort(out.values.begin(), out.values.end(), [](const MpReal& a, const MpReal& b) { return a < b; });
  return out;
}

/// e^{2 pi i alpha / omega}, alpha = 0 .. omega-1, with alpha = 0 exactly 1.
inline std::vector<MpComplex> rotations(long omega, Precision prec) {
  std::vector<MpComplex> out;
  const MpReal two_pi = pi(prec) * 2L;
  for (long a = 0; a < omega; ++a) {
    if (a == 0) out.emplace_back(MpReal(1L, prec));
    else out.push_back(MpComplex::polar(MpReal(1L, prec), two_pi * a / omega));
  }
  return out;
}

/// All n eigenvalues of T_n(g_{r,s}), 1 <= r <= s.
inline Spectrum full_spectrum_g(long n, long r, long s, Precision prec) {
  const ParamSet p = compute_params(n, r, s);
  const PositiveRealSpectrum plus = positive_real_spectrum(n, r, s, prec);
  Spectrum out;
  out.precision = prec;
  out.values.reserve(static_cast<std::size_t>(n));
  for (long z = 0; z < p.n_zero; ++z) out.values.emplace_back(prec);
  for (const MpComplex& rot : rotations(p.omega, prec))
    for (const MpReal& lam : plus.values) out.values.push_back(rot * lam);
  if (static_cast<long>(out.values.size()) != n) {
    throw ComputationError("eigenvalue count " + std::to_string(out.values.size()) + " != n = " + std::to_string(n));
  }
  sort_spectrum(out.values);
  return out;
}

/// Swaps the two off-diagonals; T_n of the result is the transpose.
inline SymbolSpec transposed(const SymbolSpec& spec) {
  SymbolSpec t = spec;
  std::swap(t.r, t.s);
  std::swap(t.fr, t.fms);
  return t;
}

/// All n eigenvalues of T_n(f). Same-side and single-off-diagonal symbols
/// give n copies of f0; otherwise r <= s is required.
inline Spectrum full_spectrum_f(long n, const SymbolSpec& spec, Precision prec) {
  if (n < 1) throw ValidationError("n must be positive");
  spec.validate();
  Spectrum out;
  out.precision = prec;
  if (spec.is_degenerate()) {
    MpComplex f0 = spec.f0;
    f0.real().round_to(prec);
    f0.imag().round_to(prec);
    out.values.assign(static_cast<std::size_t>(n), f0);
    return out;
  }
  if (spec.r > spec.s) {
    throw ValidationError("r > s; pass the transposed symbol (swap r/s and fr/fms)");
  }
  const ReducedSymbol red = reduce_symbol(spec, prec);
  Spectrum g = full_spectrum_g(n, red.r, red.s, prec);
  for (MpComplex& z : g.values) z = red.shift + red.scale * z;
  sort_spectrum(g.values);
  return g;
}

/// sigma / (r^{r/sigma} s^{s/sigma}), the supremum of the positive real eigenvalues.
inline MpReal upper_bound_R(long r, long s, Precision prec) {
  if (r < 1 || s < 1) throw ValidationError("upper_bound_R needs r, s >= 1");
  const long sigma = r + s;
  const MpReal lr = log(MpReal(r, prec)) * r;
  const MpReal ls = log(MpReal(s, prec)) * s;
  const MpReal lsig = log(MpReal(sigma, prec)) * sigma;
  return exp((lsig - lr - ls) / sigma);
}

/// sin^sigma(theta) / (sin^r(r theta / sigma) sin^s(s theta / sigma)); the
/// removable singularity at theta = 0 evaluates to sigma^sigma / (r^r s^s).
inline MpReal eval_frak_b(long r, long s, const MpReal& theta, Precision prec) {
  if (r < 1 || s < 1) throw ValidationError("eval_frak_b needs r, s >= 1");
  if (std::gcd(r, s) != 1) throw ValidationError("eval_frak_b needs gcd(r, s) = 1");
  const long sigma = r + s;
  MpReal t = theta;
  t.round_to(prec);
  if (t.is_zero()) {
    return pow(MpReal(sigma, prec), sigma) / (pow(MpReal(r, prec), r) * pow(MpReal(s, prec), s));
  }
  const MpReal num = pow(sin(t), sigma);
  const MpReal den = pow(sin(t * r / sigma), r) * pow(sin(t * s / sigma), s);
  return num / den;
}

}  // namespace toeplitz_spectra
