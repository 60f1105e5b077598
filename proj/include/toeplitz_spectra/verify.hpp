#pragma once

// Checks of the reduction against independent routes: exact integer
// characteristic-polynomial identities, a dense multiprecision eigensolve of
// the full matrix, the spectral error metric, condition numbers, and timing.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <ctime>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/exact.hpp"
#include "toeplitz_spectra/mplinalg.hpp"
#include "toeplitz_spectra/mpreal.hpp"
#include "toeplitz_spectra/params.hpp"
#include "toeplitz_spectra/spectrum.hpp"

namespace toeplitz_spectra {

/// max_j | |a_(j)| - |b_(j)| | with both sides sorted ascending by modulus.
/// With `nonzero_only`, k = max(#exact zeros in a, #exact zeros in b) smallest
/// values are dropped from both sides first, so computed near-zeros of a
/// dense solver are matched against the exact zeros of the other route.
inline MpReal spectral_error(const Spectrum& a, const Spectrum& b, bool nonzero_only = false) {
  if (a.values.size() != b.values.size()) {
    throw ValidationError("spectral_error: sizes differ (" + std::to_string(a.values.size()) + " vs " +
                          std::to_string(b.values.size()) + ")");
  }
  const Precision p = std::max(a.precision, b.precision);
  const auto moduli = [p](const Spectrum& s) {
    std::vector<MpReal> m;
    m.reserve(s.values.size());
    for (const auto& z : s.values) {
      MpReal v = abs(z);
      v.round_to(std::max(v.precision(), p));
      m.push_back(std::move(v));
    }
    std::sort(m.begin(), m.end(), [](const MpReal& x, const MpReal& y) { return x < y; });
    return m;
  };
  std::vector<MpReal> ma = moduli(a);
  std::vector<MpReal> mb = moduli(b);
  std::size_t skip = 0;
  if (nonzero_only) {
    const auto zeros = [](const Spectrum& s) {
      return static_cast<std::size_t>(std::count_if(s.values.begin(), s.values.end(), [](const MpComplex& z) { return z.is_zero(); }));
    };
    skip = std::max(zeros(a), zeros(b));
  }
  MpReal worst(p);
  for (std::size_t j = skip; j < ma.size(); ++j) {
    MpReal d = abs(ma[j] - mb[j]);
    if (d > worst) worst = std::move(d);
  }
  return worst;
}

/// T_n(f) as a dense complex matrix; fr at i - j = r, fms at j - i = s.
inline MpMatrix build_Tnf(long n, const SymbolSpec& spec, Precision prec) {
  MpMatrix t(static_cast<std::size_t>(n), static_cast<std::size_t>(n), prec);
  const auto put = [&](long i, long j, const MpComplex& v) {
    if (i >= 0 && i < n && j >= 0 && j < n) {
      MpComplex z = v;
      z.real().round_to(prec);
      z.imag().round_to(prec);
      t(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) += z;
    }
  };
  for (long i = 0; i < n; ++i) {
    put(i, i, spec.f0);
    put(i, i - spec.r, spec.fr);
    put(i, i + spec.s, spec.fms);
  }
  return t;
}

/// Dense eigensolve of the full T_n(g_{r,s}).
inline Spectrum oracle_spectrum(long n, long r, long s, Precision prec) {
  if (n < 1 || r < 1 || s < 1) throw ValidationError("oracle_spectrum needs positive n, r, s");
  return eigvals(build_Tng(n, r, s), prec);
}

/// Dense eigensolve of the full T_n(f).
inline Spectrum oracle_spectrum_f(long n, const SymbolSpec& spec, Precision prec) {
  spec.validate();
  return eigvals(build_Tnf(n, spec, prec));
}

/// One factor of the conjectured factorisation of char_poly(T_n(g_{r,s})).
struct IdentityFactor {
  ReducedBlock block;
  IntMatrix b;
  /// char_poly(B), before substituting x -> x^omega.
  IntPolynomial q;
};

struct ExactIdentity {
  bool holds = false;
  ParamSet params;
  /// char_poly(T_n(g_{r,s})).
  IntPolynomial p;
  /// x^{n_zero} prod_k q_k(x^omega)^{multiplicity_k}.
  IntPolynomial product;
  std::vector<IdentityFactor> factors;
};

/// Floating-point-free check of the reduction for one (n, r, s).
inline ExactIdentity verify_exact_identity(long n, long r, long s) {
  ExactIdentity out;
  out.params = compute_params(n, r, s);
  check_restriction(out.params);
  out.p = char_poly(build_Tng(n, r, s));
  IntPolynomial prod = IntPolynomial::monomial(static_cast<std::size_t>(out.params.n_zero));
  for (const ReducedBlock& blk : reduced_blocks(out.params)) {
    IdentityFactor f{blk, construct_B(blk.order, blk.r, blk.s), {}};
    f.q = char_poly(f.b);
    prod = prod * pow(poly_compose_power(f.q, out.params.omega), blk.multiplicity);
    out.factors.push_back(std::move(f));
  }
  out.product = std::move(prod);
  out.holds = (out.p == out.product);
  return out;
}

/// sigma_max / sigma_min from the extreme eigenvalues of the exact Gram
/// matrix A^T A. Returns +inf when the smallest Gram eigenvalue is below
/// 2^16 eps(p) ||A||^2.
inline MpReal condition_number(const IntMatrix& a, Precision prec) {
  if (!a.is_square()) throw ValidationError("condition_number needs a square matrix");
  if (a.rows() == 0) return MpReal(1L, prec);
  const IntMatrix gram = a.transpose() * a;
  const Spectrum ev = eigvals(gram, prec);
  MpReal lo = abs(ev.values.front());
  MpReal hi = abs(ev.values.back());
  const MpReal norm = MpReal(a.norm_inf(), prec);
  if (lo <= pow2(16, prec) * epsilon(prec) * norm * norm) {
    MpReal inf(prec);
    mpfr_set_inf(inf.get(), 1);
    return inf;
  }
  return sqrt(hi / lo);
}

struct VerificationReport {
  ParamSet params;
  /// Absent when the exact check was not requested (bench) or not possible.
  std::optional<bool> exact_identity_holds;
  /// Nonzero-restricted spectral error between algorithm and oracle.
  std::optional<MpReal> numeric_error;
  Precision precision = kDefaultPrecision;
  std::optional<double> oracle_runtime;
  std::optional<double> algorithm_runtime;
  /// One per reduced B matrix.
  std::vector<MpReal> condition_numbers;
  /// Reasons for absent fields.
  std::vector<std::string> notes;
};

namespace detail {

template <class F>
double min_time(std::size_t repetitions, F&& f) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < std::max<std::size_t>(repetitions, 1); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

}  // namespace detail

struct VerifyOptions {
  bool exact = true;
  bool numeric = true;
  bool nonzero_only = true;
  std::size_t repetitions = 1;
};

/// Exact identity, numeric cross-check and condition numbers for one point.
inline VerificationReport verify_point(long n, long r, long s, Precision prec, const VerifyOptions& opts = {}) {
  VerificationReport rep;
  rep.params = compute_params(n, r, s);
  rep.precision = prec;
  check_restriction(rep.params);
  if (opts.exact) rep.exact_identity_holds = verify_exact_identity(n, r, s).holds;
  for (const ReducedBlock& blk : reduced_blocks(rep.params))
    rep.condition_numbers.push_back(condition_number(construct_B(blk.order, blk.r, blk.s), prec));
  if (opts.numeric) {
    std::optional<Spectrum> alg, orc;
    try {
      rep.algorithm_runtime = detail::min_time(opts.repetitions, [&] { alg = full_spectrum_g(n, r, s, prec); });
    } catch (const ComputationError& e) {
      rep.notes.push_back(std::string("algorithm: ") + e.what());
    }
    try {
      rep.oracle_runtime = detail::min_time(opts.repetitions, [&] { orc = oracle_spectrum(n, r, s, prec); });
    } catch (const ComputationError& e) {
      rep.notes.push_back(std::string("oracle: ") + e.what());
    }
    if (alg && orc) rep.numeric_error = spectral_error(*alg, *orc, opts.nonzero_only);
  }
  return rep;
}

/// Minimal wall-clock time over `repetitions` of the algorithm and the oracle
/// at each precision, plus the nonzero spectral error between the two.
inline std::vector<VerificationReport> bench(long n, long r, long s, const std::vector<Precision>& precisions,
                                             std::size_t repetitions) {
  std::vector<VerificationReport> out;
  for (Precision p : precisions) {
    VerifyOptions opts;
    opts.exact = false;
    opts.repetitions = repetitions;
    VerificationReport rep = verify_point(n, r, s, p, opts);
    rep.condition_numbers.clear();
    out.push_back(std::move(rep));
  }
  return out;
}

/// Error of the algorithm at `prec` bits against the same algorithm at
/// `reference_prec` bits, for n = sigma^2 + beta, beta = 0 .. sigma-1.
/// Element k of the result belongs to beta = k.
inline std::vector<MpReal> error_trend(long r, long s, Precision prec, Precision reference_prec) {
  const long sigma = r + s;
  std::vector<MpReal> errors;
  for (long beta = 0; beta < sigma; ++beta) {
    const long n = sigma * sigma + beta;
    const Spectrum lo = full_spectrum_g(n, r, s, prec);
    const Spectrum hi = full_spectrum_g(n, r, s, reference_prec);
    errors.push_back(spectral_error(lo, hi, true));
  }
  return errors;
}

/// Runs `task(i)` for i in [0, count) on `jobs` worker threads. Results are
/// written by index, so the merged output does not depend on scheduling.
/// The first exception thrown by any task is rethrown after all workers stop.
template <class Result>
std::vector<Result> run_sweep(std::size_t count, std::size_t jobs, const std::function<Result(std::size_t)>& task) {
  std::vector<std::optional<Result>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i] = task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, count));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// UTC timestamp, e.g. 2026-10-18T12:34:56Z.
inline std::string iso8601_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace toeplitz_spectra
