#pragma once

// Exact construction of T_n(g_{r,s}), the banded factors
// T_n(e^{-i theta} c(theta)^m), the exponent tables M and P, and the reduced
// matrices B whose eigenvalues are the omega-th powers of the positive real
// eigenvalues of T_n(g_{r,s}). Everything here is integer arithmetic on GMP
// integers; no rounding happens anywhere in this header.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/params.hpp"

namespace toeplitz_spectra {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds from nested initializer rows; used heavily by fixtures.
  static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw ValidationError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<mpz_class>& data() const { return data_; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Copy of the block [row0, row0+nr) x [col0, col0+nc).
  IntMatrix block(std::size_t row0, std::size_t col0, std::size_t nr, std::size_t nc) const {
    IntMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
    return b;
  }

  IntMatrix select_columns(const std::vector<std::size_t>& order) const {
    IntMatrix out(rows_, order.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < order.size(); ++j) out(i, j) = (*this)(i, order[j]);
    return out;
  }

  mpz_class trace() const {
    mpz_class t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  /// max_i sum_j |a_ij|
  mpz_class norm_inf() const {
    mpz_class best = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      mpz_class row = 0;
      for (std::size_t j = 0; j < cols_; ++j) row += abs((*this)(i, j));
      if (row > best) best = row;
    }
    return best;
  }

  mpz_class max_abs() const {
    mpz_class best = 0;
    for (const auto& v : data_)
      if (abs(v) > best) best = abs(v);
    return best;
  }

  IntMatrix& operator+=(const IntMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  IntMatrix& operator-=(const IntMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Product that skips structural zeros on both sides; cost is proportional
  /// to the number of nonzero pairs, so banded and triangular factors are cheap.
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw ValidationError("matrix product: inner dimensions differ");
    std::vector<std::vector<std::size_t>> b_nz(b.rows_);
    for (std::size_t l = 0; l < b.rows_; ++l)
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (sgn(b(l, j)) != 0) b_nz[l].push_back(j);
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const mpz_class& ail = a(i, l);
        if (sgn(ail) == 0) continue;
        for (std::size_t j : b_nz[l]) mpz_addmul(c(i, j).get_mpz_t(), ail.get_mpz_t(), b(l, j).get_mpz_t());
      }
    }
    return c;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i) {
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
      os << '\n';
    }
    return os;
  }

 private:
  void require_same_shape(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

inline IntMatrix matrix_power(const IntMatrix& a, long k) {
  if (!a.is_square()) throw ValidationError("matrix power of a non-square matrix");
  IntMatrix result = IntMatrix::identity(a.rows());
  for (long i = 0; i < k; ++i) result = result * a;
  return result;
}

/// Exact integer polynomial, coefficients in ascending degree. The zero
/// polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> ascending) : c_(std::move(ascending)) { trim(); }

  static IntPolynomial monomial(std::size_t degree, const mpz_class& coeff = 1) {
    std::vector<mpz_class> c(degree + 1);
    c[degree] = coeff;
    return IntPolynomial(std::move(c));
  }
  static IntPolynomial one() { return IntPolynomial({mpz_class(1)}); }

  const std::vector<mpz_class>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }

  mpz_class coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : mpz_class(0); }
  const mpz_class& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  mpz_class operator()(const mpz_class& x) const {
    mpz_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        mpz_addmul(c[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    return IntPolynomial(std::move(c));
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

  /// e.g. "x^5 - 13x^4 + 55x^3 - 84x^2 + 35x - 1"
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const mpz_class& a = c_[k];
      if (sgn(a) == 0) continue;
      const mpz_class mag = abs(a);
      if (first) {
        if (sgn(a) < 0) os << '-';
      } else {
        os << (sgn(a) < 0 ? " - " : " + ");
      }
      if (mag != 1 || k == 0) os << mag;
      if (k >= 1) os << 'x';
      if (k >= 2) os << '^' << k;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }

  std::vector<mpz_class> c_;
};

inline IntPolynomial pow(const IntPolynomial& p, long k) {
  IntPolynomial out = IntPolynomial::one();
  for (long i = 0; i < k; ++i) out = out * p;
  return out;
}

/// q(x^k).
inline IntPolynomial poly_compose_power(const IntPolynomial& q, long k) {
  if (k < 1) throw ValidationError("poly_compose_power needs k >= 1");
  if (q.is_zero()) return {};
  std::vector<mpz_class> c(static_cast<std::size_t>(q.degree() * k + 1));
  for (std::size_t i = 0; i < q.coefficients().size(); ++i) c[i * static_cast<std::size_t>(k)] = q.coefficients()[i];
  return IntPolynomial(std::move(c));
}

/// det(xI - A) by the Faddeev-LeVerrier recurrence. Every division by k is
/// exact for integer A; a nonzero remainder is reported as an error.
inline IntPolynomial char_poly(const IntMatrix& a) {
  if (!a.is_square()) throw ValidationError("char_poly needs a square matrix");
  const std::size_t n = a.rows();
  std::vector<mpz_class> c(n + 1);
  c[n] = 1;
  // M_1 = I, c_{n-k} = -tr(A M_k) / k, M_{k+1} = A M_k + c_{n-k} I.
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix am = a * m;
    mpz_class t = -am.trace();
    mpz_class q, rem;
    mpz_tdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(), k);
    if (sgn(rem) != 0) throw ComputationError("Faddeev-LeVerrier: inexact division by " + std::to_string(k));
    c[n - k] = q;
    if (k == n) break;
    for (std::size_t i = 0; i < n; ++i) am(i, i) += q;
    m = std::move(am);
  }
  return IntPolynomial(std::move(c));
}

/// T_n(g_{r,s}): ones where i - j = r or j - i = s.
inline IntMatrix build_Tng(long n, long r, long s) {
  if (n < 1) throw ValidationError("build_Tng needs n >= 1");
  IntMatrix t(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    if (i - r >= 0 && r >= 0) t(i, i - r) = 1;
    if (i + s < n && s >= 0) t(i, i + s) = 1;
  }
  return t;
}

inline mpz_class binomial(long m, long k) {
  if (k < 0 || k > m) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k));
  return b;
}

/// T_n(e^{-i theta} (1 + e^{i theta})^m): Fourier coefficient binomial(m, k+1)
/// at i - j = k for k = -1 .. m-1, i.e. a single 1 on the superdiagonal and
/// the binomial row from the diagonal downwards.
inline IntMatrix shifted_c_power(long n, long m) {
  if (n < 1 || m < 0) throw ValidationError("shifted_c_power needs n >= 1 and m >= 0");
  IntMatrix t(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i)
    for (long k = -1; k <= m - 1; ++k) {
      const long j = i - k;
      if (j >= 0 && j < n) t(i, j) = binomial(m, k + 1);
    }
  return t;
}

/// Exact inverse of shifted_c_power(n, 1) = I + N: entries (-1)^{j-i} on and
/// above the diagonal.
inline IntMatrix shifted_c_inverse(long n) {
  IntMatrix t(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i)
    for (long j = i; j < n; ++j) t(i, j) = ((j - i) % 2 == 0) ? 1 : -1;
  return t;
}

/// Exponent tables for the B product: row beta+1 holds (m_k) and (p_k).
struct ExponentTables {
  IntMatrix M;
  IntMatrix P;
};

/// Column order used for r > 1: ((k*tau) mod r) for k = 1..r with the final
/// zero replaced by r; 1-based like the tables it permutes.
inline std::vector<long> column_permutation(long r, long s) {
  const long tau = s % r;
  std::vector<long> perm(static_cast<std::size_t>(r));
  for (long k = 1; k <= r; ++k) perm[static_cast<std::size_t>(k - 1)] = (k * tau) % r;
  perm.back() = r;
  return perm;
}

namespace detail {
inline long mod(long a, long m) { return ((a % m) + m) % m; }
}  // namespace detail

inline ExponentTables construct_M_P(long r, long s) {
  if (r < 1 || s < 1) throw ValidationError("construct_M_P needs positive offsets");
  if (r > s) throw ValidationError("construct_M_P needs r <= s");
  if (std::gcd(r, s) != 1) throw ValidationError("construct_M_P needs gcd(r, s) = 1; reduce by gamma first");
  const long sigma = r + s;
  const long tau = s % r;
  std::vector<std::vector<long>> m(static_cast<std::size_t>(sigma), std::vector<long>(static_cast<std::size_t>(r)));
  auto p = m;
  for (long j = 1; j <= r; ++j) {
    m[0][static_cast<std::size_t>(j - 1)] = 1;
    p[0][static_cast<std::size_t>(j - 1)] = (s - tau) / r + (j > r - tau ? 1 : 0);
  }
  for (long i = 2; i <= sigma; ++i) {
    for (long j = 1; j <= r; ++j) {
      const auto row = static_cast<std::size_t>(i - 1);
      const auto col = static_cast<std::size_t>(j - 1);
      const long d = detail::mod(j - i, r);
      m[row][col] = m[row - 1][col] + (d == detail::mod(-1, r) ? 1 : 0);
      p[row][col] = p[row - 1][col] - (d == detail::mod(r - tau - 1, r) ? 1 : 0);
    }
  }
  ExponentTables t{IntMatrix(static_cast<std::size_t>(sigma), static_cast<std::size_t>(r)),
                   IntMatrix(static_cast<std::size_t>(sigma), static_cast<std::size_t>(r))};
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      t.M(i, j) = m[i][j];
      t.P(i, j) = p[i][j];
    }
  if (r > 1) {
    std::vector<std::size_t> order;
    for (long c : column_permutation(r, s)) order.push_back(static_cast<std::size_t>(c - 1));
    t.M = t.M.select_columns(order);
    t.P = t.P.select_columns(order);
  }
  return t;
}

/// The raw product prod_k T^T(m_k) (T(1))^{p_k} of order n_sigma, without any
/// corner correction. Negative p_k use the exact alternating-sign inverse.
inline IntMatrix construct_B_raw(long n, long r, long s) {
  const ExponentTables tables = construct_M_P(r, s);
  const long sigma = r + s;
  const long beta = n % sigma;
  const long order = n / sigma;
  if (order < 1) throw ValidationError("construct_B needs n >= r + s");
  const auto row = static_cast<std::size_t>(beta);
  const IntMatrix step = shifted_c_power(order, 1);
  std::optional<IntMatrix> step_inverse;
  IntMatrix b = IntMatrix::identity(static_cast<std::size_t>(order));
  for (std::size_t k = 0; k < static_cast<std::size_t>(r); ++k) {
    const long mk = tables.M(row, k).get_si();
    const long pk = tables.P(row, k).get_si();
    IntMatrix factor = shifted_c_power(order, mk).transpose();
    if (pk >= 0) {
      for (long e = 0; e < pk; ++e) factor = factor * step;
    } else {
      if (!step_inverse) step_inverse = shifted_c_inverse(order);
      for (long e = 0; e < -pk; ++e) factor = factor * *step_inverse;
    }
    b = b * factor;
  }
  return b;
}

/// Whether (n, r, s) with gcd(r, s) = 1 lies outside the automatic regime:
/// beta_sigma > s and n <= (r - 1) * sigma.
inline bool in_manual_regime(long n, long r, long s) {
  const long sigma = r + s;
  return n % sigma > s && n <= (r - 1) * sigma;
}

namespace detail {

/// Top-right (r-1)x(r-1) corner of the uncorrected reference product at order
/// sigma^3 + beta; depends only on (r, s, beta).
class CornerCache {
 public:
  IntMatrix get(long r, long s, long beta) {
    const auto key = std::make_tuple(r, s, beta);
    {
      std::shared_lock lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const long sigma = r + s;
    const IntMatrix big = construct_B_raw(sigma * sigma * sigma + beta, r, s);
    const std::size_t w = static_cast<std::size_t>(r - 1);
    IntMatrix corner = big.block(0, big.cols() - w, w, w);
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = 0; j < w; ++j) corner(i, j) = abs(corner(i, j));
    std::unique_lock lock(mutex_);
    cache_[key] = corner;
    return corner;
  }

  static CornerCache& instance() {
    static CornerCache cache;
    return cache;
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::tuple<long, long, long>, IntMatrix> cache_;
};

}  // namespace detail

/// The perturbation R that the inverse factors leave in the top-right corner
/// of the raw product (zero when beta_sigma <= s). The corrected B is
/// raw - R for odd n_sigma and raw + R for even n_sigma.
inline IntMatrix corner_perturbation(long n, long r, long s) {
  const long sigma = r + s;
  const long beta = n % sigma;
  const long order = n / sigma;
  IntMatrix out(static_cast<std::size_t>(order), static_cast<std::size_t>(order));
  if (beta <= s || r == 1) return out;
  const IntMatrix corner = detail::CornerCache::instance().get(r, s, beta);
  const std::size_t w = static_cast<std::size_t>(std::min(r - 1, order));
  const std::size_t off = static_cast<std::size_t>(r - 1) - w;
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j) out(i, static_cast<std::size_t>(order) - w + j) = corner(i, off + j);
  return out;
}

/// B_{n_sigma}^{n,r,s} for coprime r <= s. Throws RestrictionError when the
/// corner perturbation would reach the diagonal (n <= (r-1) sigma with
/// beta_sigma > s).
inline IntMatrix construct_B(long n, long r, long s, bool remove_corner = true) {
  if (r < 1 || s < r) throw ValidationError("construct_B needs 1 <= r <= s");
  if (std::gcd(r, s) != 1) throw ValidationError("construct_B needs gcd(r, s) = 1; reduce by gamma first");
  const long sigma = r + s;
  if (n / sigma < 1) throw ValidationError("construct_B needs n >= r + s (n_sigma >= 1)");
  if (remove_corner && in_manual_regime(n, r, s)) {
    throw RestrictionError("(n=" + std::to_string(n) + ", r=" + std::to_string(r) + ", s=" +
                           std::to_string(s) + ") needs n > (r-1)(r+s) = " +
                           std::to_string((r - 1) * sigma) +
                           " when n mod (r+s) > s; B must be constructed manually in this regime");
  }
  IntMatrix b = construct_B_raw(n, r, s);
  if (remove_corner && n % sigma > s) {
    const IntMatrix corner = corner_perturbation(n, r, s);
    if ((n / sigma) % 2 == 1) b -= corner;
    else b += corner;
  }
  return b;
}

}  // namespace toeplitz_spectra
