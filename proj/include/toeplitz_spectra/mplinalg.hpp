#pragma once

// Dense nonsymmetric eigenvalues at a caller-chosen MPFR precision:
// Householder reduction to upper Hessenberg form followed by single-shift
// complex QR iteration with Wilkinson shifts and deflation.

#include <mpfr.h>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/exact.hpp"
#include "toeplitz_spectra/mpreal.hpp"

namespace toeplitz_spectra {

/// Square or rectangular matrix of complex values sharing one precision.
class MpMatrix {
 public:
  MpMatrix(std::size_t rows, std::size_t cols, Precision prec)
      : rows_(rows), cols_(cols), prec_(prec), data_(rows * cols, MpComplex(prec)) {}

  /// Exact conversion; throws ComputationError if an entry needs more than
  /// `prec` mantissa bits.
  static MpMatrix from_int(const IntMatrix& a, Precision prec) {
    MpMatrix m(a.rows(), a.cols(), prec);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m(i, j).real() = MpReal::exact(a(i, j), prec);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Precision precision() const { return prec_; }
  bool is_square() const { return rows_ == cols_; }

  MpComplex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const MpComplex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_real() const {
    return std::all_of(data_.begin(), data_.end(), [](const MpComplex& z) { return z.imag().is_zero(); });
  }

  /// max_i sum_j |a_ij|
  MpReal norm_inf() const {
    MpReal best(prec_);
    for (std::size_t i = 0; i < rows_; ++i) {
      MpReal row(prec_);
      for (std::size_t j = 0; j < cols_; ++j) row += abs((*this)(i, j));
      if (row > best) best = row;
    }
    return best;
  }

  MpComplex trace() const {
    MpComplex t(prec_);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  Precision prec_;
  std::vector<MpComplex> data_;
};

/// Eigenvalue multiset at a declared precision, ordered by (modulus, phase in
/// [0, 2 pi)).
struct Spectrum {
  std::vector<MpComplex> values;
  Precision precision = kDefaultPrecision;

  std::size_t order() const { return values.size(); }
};

/// Sorts ascending by modulus, ties broken by phase in [0, 2 pi). Moduli that
/// agree to 2^16 eps(p) relative are ties, and a phase within that distance of
/// 2 pi counts as 0, so rounding noise does not reorder equal-modulus values.
inline void sort_spectrum(std::vector<MpComplex>& values) {
  struct Keyed {
    MpReal modulus;
    MpReal phase;
    std::size_t index;
  };
  if (values.empty()) return;
  Precision p = 0;
  for (const auto& z : values) p = std::max(p, z.precision());
  const MpReal tol = pow2(16, p) * epsilon(p);
  const MpReal two_pi = pi(p) * 2L;
  std::vector<Keyed> keys;
  keys.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    Keyed k{abs(values[i]), phase_0_2pi(values[i]), i};
    if (two_pi - k.phase <= tol * two_pi) k.phase = MpReal(p);
    keys.push_back(std::move(k));
  }
  std::stable_sort(keys.begin(), keys.end(), [](const Keyed& a, const Keyed& b) { return a.modulus < b.modulus; });
  // Runs of numerically equal moduli, each then ordered by phase.
  for (std::size_t lo = 0; lo < keys.size();) {
    std::size_t hi = lo + 1;
    while (hi < keys.size() && keys[hi].modulus - keys[hi - 1].modulus <= tol * max(keys[hi].modulus, MpReal(1L, p))) ++hi;
    std::stable_sort(keys.begin() + static_cast<std::ptrdiff_t>(lo), keys.begin() + static_cast<std::ptrdiff_t>(hi),
                     [](const Keyed& a, const Keyed& b) { return a.phase < b.phase; });
    lo = hi;
  }
  std::vector<MpComplex> sorted;
  sorted.reserve(values.size());
  for (const auto& k : keys) sorted.push_back(std::move(values[k.index]));
  values = std::move(sorted);
}

namespace detail {

/// Scratch registers for the rotation kernels, allocated once per solve.
struct Scratch {
  explicit Scratch(Precision p) : t0(p), t1(p), t2(p), t3(p), t4(p), t5(p) {}
  MpReal t0, t1, t2, t3, t4, t5;
};

/// (u, v) <- (c u + s v, -conj(s) u + c v), c real.
inline void rotate_rows(MpComplex& u, MpComplex& v, const MpReal& c, const MpComplex& s, Scratch& w) {
  mpfr_fmms(w.t0.get(), s.real().get(), v.real().get(), s.imag().get(), v.imag().get(), MPFR_RNDN);
  mpfr_fma(w.t0.get(), c.get(), u.real().get(), w.t0.get(), MPFR_RNDN);
  mpfr_fmma(w.t1.get(), s.real().get(), v.imag().get(), s.imag().get(), v.real().get(), MPFR_RNDN);
  mpfr_fma(w.t1.get(), c.get(), u.imag().get(), w.t1.get(), MPFR_RNDN);
  mpfr_fmma(w.t2.get(), s.real().get(), u.real().get(), s.imag().get(), u.imag().get(), MPFR_RNDN);
  mpfr_fms(w.t2.get(), c.get(), v.real().get(), w.t2.get(), MPFR_RNDN);
  mpfr_fmms(w.t3.get(), s.real().get(), u.imag().get(), s.imag().get(), u.real().get(), MPFR_RNDN);
  mpfr_fms(w.t3.get(), c.get(), v.imag().get(), w.t3.get(), MPFR_RNDN);
  mpfr_swap(u.real().get(), w.t0.get());
  mpfr_swap(u.imag().get(), w.t1.get());
  mpfr_swap(v.real().get(), w.t2.get());
  mpfr_swap(v.imag().get(), w.t3.get());
}

/// (u, v) <- (u c + v conj(s), -u s + v c): right multiplication by G^H.
inline void rotate_cols(MpComplex& u, MpComplex& v, const MpReal& c, const MpComplex& s, Scratch& w) {
  mpfr_fmma(w.t0.get(), v.real().get(), s.real().get(), v.imag().get(), s.imag().get(), MPFR_RNDN);
  mpfr_fma(w.t0.get(), c.get(), u.real().get(), w.t0.get(), MPFR_RNDN);
  mpfr_fmms(w.t1.get(), v.imag().get(), s.real().get(), v.real().get(), s.imag().get(), MPFR_RNDN);
  mpfr_fma(w.t1.get(), c.get(), u.imag().get(), w.t1.get(), MPFR_RNDN);
  mpfr_fmms(w.t2.get(), u.real().get(), s.real().get(), u.imag().get(), s.imag().get(), MPFR_RNDN);
  mpfr_fms(w.t2.get(), c.get(), v.real().get(), w.t2.get(), MPFR_RNDN);
  mpfr_fmma(w.t3.get(), u.real().get(), s.imag().get(), u.imag().get(), s.real().get(), MPFR_RNDN);
  mpfr_fms(w.t3.get(), c.get(), v.imag().get(), w.t3.get(), MPFR_RNDN);
  mpfr_swap(u.real().get(), w.t0.get());
  mpfr_swap(u.imag().get(), w.t1.get());
  mpfr_swap(v.real().get(), w.t2.get());
  mpfr_swap(v.imag().get(), w.t3.get());
}

/// Givens rotation G = [c s; -conj(s) c] with G [x; y] = [rho; 0].
inline void make_rotation(const MpComplex& x, const MpComplex& y, MpReal& c, MpComplex& s, MpComplex& rho) {
  const MpReal nx = abs(x);
  const MpReal ny = abs(y);
  if (ny.is_zero()) {
    mpfr_set_ui(c.get(), 1, MPFR_RNDN);
    mpfr_set_zero(s.real().get(), 1);
    mpfr_set_zero(s.imag().get(), 1);
    rho = x;
    return;
  }
  if (nx.is_zero()) {
    mpfr_set_zero(c.get(), 1);
    mpfr_set_ui(s.real().get(), 1, MPFR_RNDN);
    mpfr_set_zero(s.imag().get(), 1);
    rho = y;
    return;
  }
  MpReal norm(nx.precision());
  mpfr_hypot(norm.get(), nx.get(), ny.get(), MPFR_RNDN);
  c = nx / norm;
  MpComplex phase(x.real() / nx, x.imag() / nx);
  s = phase * y.conj();
  s.real() /= norm;
  s.imag() /= norm;
  rho = phase * norm;
}

inline void hessenberg_real(MpMatrix& h) {
  const std::size_t n = h.rows();
  const Precision p = h.precision();
  std::vector<MpReal> v;
  MpReal acc(p), tau(p), norm(p), alpha(p);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    mpfr_set_zero(acc.get(), 1);
    for (std::size_t i = 1; i < m; ++i) mpfr_fma(acc.get(), h(k + 1 + i, k).real().get(), h(k + 1 + i, k).real().get(), acc.get(), MPFR_RNDN);
    if (acc.is_zero()) continue;
    const MpReal& x0 = h(k + 1, k).real();
    mpfr_fma(norm.get(), x0.get(), x0.get(), acc.get(), MPFR_RNDN);
    mpfr_sqrt(norm.get(), norm.get(), MPFR_RNDN);
    alpha = x0.sign() < 0 ? norm : -norm;
    v.assign(m, MpReal(p));
    for (std::size_t i = 0; i < m; ++i) v[i] = h(k + 1 + i, k).real();
    v[0] -= alpha;
    // tau = 1 / (|x| (|x| + |x0|))
    tau = norm * (norm + abs(x0));
    mpfr_ui_div(tau.get(), 1, tau.get(), MPFR_RNDN);
    for (std::size_t j = k; j < n; ++j) {
      mpfr_set_zero(acc.get(), 1);
      for (std::size_t i = 0; i < m; ++i) mpfr_fma(acc.get(), v[i].get(), h(k + 1 + i, j).real().get(), acc.get(), MPFR_RNDN);
      mpfr_mul(acc.get(), acc.get(), tau.get(), MPFR_RNDN);
      for (std::size_t i = 0; i < m; ++i) {
        MpReal& e = h(k + 1 + i, j).real();
        mpfr_fms(e.get(), acc.get(), v[i].get(), e.get(), MPFR_RNDN);
        mpfr_neg(e.get(), e.get(), MPFR_RNDN);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      mpfr_set_zero(acc.get(), 1);
      for (std::size_t l = 0; l < m; ++l) mpfr_fma(acc.get(), h(i, k + 1 + l).real().get(), v[l].get(), acc.get(), MPFR_RNDN);
      mpfr_mul(acc.get(), acc.get(), tau.get(), MPFR_RNDN);
      for (std::size_t l = 0; l < m; ++l) {
        MpReal& e = h(i, k + 1 + l).real();
        mpfr_fms(e.get(), acc.get(), v[l].get(), e.get(), MPFR_RNDN);
        mpfr_neg(e.get(), e.get(), MPFR_RNDN);
      }
    }
    h(k + 1, k).real() = alpha;
    for (std::size_t i = k + 2; i < n; ++i) mpfr_set_zero(h(i, k).real().get(), 1);
  }
}

inline void hessenberg_complex(MpMatrix& h) {
  const std::size_t n = h.rows();
  const Precision p = h.precision();
  std::vector<MpComplex> v;
  MpReal tail(p), norm(p), tau(p);
  MpComplex acc(p), prod(p);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    mpfr_set_zero(tail.get(), 1);
    for (std::size_t i = 1; i < m; ++i) {
      const MpComplex& z = h(k + 1 + i, k);
      mpfr_fma(tail.get(), z.real().get(), z.real().get(), tail.get(), MPFR_RNDN);
      mpfr_fma(tail.get(), z.imag().get(), z.imag().get(), tail.get(), MPFR_RNDN);
    }
    if (tail.is_zero()) continue;
    const MpComplex x0 = h(k + 1, k);
    const MpReal ax0 = abs(x0);
    norm = sqrt(ax0 * ax0 + tail);
    // alpha = -(x0/|x0|) |x|
    MpComplex alpha = ax0.is_zero() ? MpComplex(-norm) : MpComplex(x0.real() / ax0, x0.imag() / ax0) * (-norm);
    v.assign(m, MpComplex(p));
    for (std::size_t i = 0; i < m; ++i) v[i] = h(k + 1 + i, k);
    v[0] -= alpha;
    tau = norm * (norm + ax0);
    mpfr_ui_div(tau.get(), 1, tau.get(), MPFR_RNDN);
    for (std::size_t j = k; j < n; ++j) {
      // acc = tau * sum conj(v_i) h_ij
      acc = MpComplex(p);
      for (std::size_t i = 0; i < m; ++i) acc += v[i].conj() * h(k + 1 + i, j);
      acc *= tau;
      for (std::size_t i = 0; i < m; ++i) h(k + 1 + i, j) -= acc * v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      acc = MpComplex(p);
      for (std::size_t l = 0; l < m; ++l) acc += h(i, k + 1 + l) * v[l];
      acc *= tau;
      for (std::size_t l = 0; l < m; ++l) h(i, k + 1 + l) -= acc * v[l].conj();
    }
    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = MpComplex(p);
  }
}

}  // namespace detail

/// Unitarily similar upper Hessenberg form; entries below the first
/// subdiagonal are exactly zero. Real input stays real.
inline MpMatrix to_hessenberg(MpMatrix a) {
  if (!a.is_square()) throw ValidationError("to_hessenberg needs a square matrix");
  if (a.is_real()) detail::hessenberg_real(a);
  else detail::hessenberg_complex(a);
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = j + 2; i < a.rows(); ++i) a(i, j) = MpComplex(a.precision());
  return a;
}

struct EigenOptions {
  /// QR sweeps allowed per eigenvalue of the matrix.
  std::size_t iterations_per_eigenvalue = 30;
  /// An ad hoc shift replaces the Wilkinson shift every this many stalled sweeps.
  std::size_t exceptional_shift_period = 10;
};

/// Eigenvalues of an upper Hessenberg matrix, in deflation order.
inline std::vector<MpComplex> hessenberg_eigvals(MpMatrix h, const EigenOptions& opts = {}) {
  const std::size_t n = h.rows();
  const Precision p = h.precision();
  std::vector<MpComplex> eig(n, MpComplex(p));
  if (n == 0) return eig;
  const MpReal eps = epsilon(p);
  const std::size_t budget = opts.iterations_per_eigenvalue * n;
  detail::Scratch w(p);
  std::vector<MpReal> cs(n, MpReal(p));
  std::vector<MpComplex> ss(n, MpComplex(p));
  MpComplex rho(p), mu(p);
  MpReal tst(p), sub(p);
  std::size_t total = 0;
  std::size_t its = 0;
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  while (hi >= 0) {
    // Deflation scan: |h_{k,k-1}| <= eps (|h_{k-1,k-1}| + |h_{k,k}|).
    std::ptrdiff_t l = 0;
    for (std::ptrdiff_t k = hi; k >= 1; --k) {
      sub = abs(h(k, k - 1));
      if (sub.is_zero()) {
        l = k;
        break;
      }
      tst = abs(h(k - 1, k - 1)) + abs(h(k, k));
      if (tst.is_zero()) {
        if (k >= 2) tst += abs(h(k - 1, k - 2));
        if (k + 1 <= hi) tst += abs(h(k + 1, k));
      }
      if (sub <= eps * tst) {
        h(k, k - 1) = MpComplex(p);
        l = k;
        break;
      }
    }
    if (l == hi) {
      eig[static_cast<std::size_t>(hi)] = h(hi, hi);
      --hi;
      its = 0;
      continue;
    }
    if (total >= budget) {
      throw ConvergenceError("QR iteration did not converge: subdiagonal entry (" + std::to_string(hi) + ", " +
                                 std::to_string(hi - 1) + ") failed to deflate after " + std::to_string(total) +
                                 " sweeps",
                             static_cast<std::size_t>(hi));
    }
    ++its;
    ++total;
    if (opts.exceptional_shift_period && its % opts.exceptional_shift_period == 0) {
      // Alternate between the top and bottom of the active window.
      const bool top = (its / opts.exceptional_shift_period) % 2 == 1;
      const std::ptrdiff_t at = top ? l : hi;
      const MpReal bump = abs(h(top ? l + 1 : hi, top ? l : hi - 1)) * MpReal::from_double(0.75, p);
      mu = h(at, at);
      mu.real() += bump;
    } else {
      // Wilkinson: eigenvalue of the trailing 2x2 closest to h(hi, hi).
      const MpComplex& a = h(hi - 1, hi - 1);
      const MpComplex& b = h(hi - 1, hi);
      const MpComplex& c = h(hi, hi - 1);
      const MpComplex& d = h(hi, hi);
      MpComplex half = (a - d);
      half.real() /= 2L;
      half.imag() /= 2L;
      const MpComplex bc = b * c;
      MpComplex root = sqrt(half * half + bc);
      // Pick the sign making |half + root| large to avoid cancellation.
      const MpReal align = half.real() * root.real() + half.imag() * root.imag();
      if (align.sign() < 0) root = -root;
      MpComplex den = half + root;
      mu = d;
      if (!den.is_zero()) mu -= bc / den;
    }
    for (std::ptrdiff_t i = l; i <= hi; ++i) h(i, i) -= mu;
    for (std::ptrdiff_t k = l; k < hi; ++k) {
      detail::make_rotation(h(k, k), h(k + 1, k), cs[k], ss[k], rho);
      h(k, k) = rho;
      h(k + 1, k) = MpComplex(p);
      for (std::ptrdiff_t j = k + 1; j <= hi; ++j) detail::rotate_rows(h(k, j), h(k + 1, j), cs[k], ss[k], w);
    }
    for (std::ptrdiff_t k = l; k < hi; ++k) {
      for (std::ptrdiff_t i = l; i <= k + 1; ++i) detail::rotate_cols(h(i, k), h(i, k + 1), cs[k], ss[k], w);
    }
    for (std::ptrdiff_t i = l; i <= hi; ++i) h(i, i) += mu;
  }
  return eig;
}

/// All n eigenvalues (with multiplicity), sorted by (modulus, phase).
inline Spectrum eigvals(const MpMatrix& a, const EigenOptions& opts = {}) {
  if (!a.is_square()) throw ValidationError("eigvals needs a square matrix");
  Spectrum out;
  out.precision = a.precision();
  out.values = hessenberg_eigvals(to_hessenberg(a), opts);
  sort_spectrum(out.values);
  return out;
}

/// Eigenvalues of an integer matrix at `prec` bits; the conversion is exact or
/// throws.
inline Spectrum eigvals(const IntMatrix& a, Precision prec, const EigenOptions& opts = {}) {
  return eigvals(MpMatrix::from_int(a, prec), opts);
}

}  // namespace toeplitz_spectra
