#pragma once

// Value-semantic wrappers around MPFR: a real with an explicit mantissa
// precision, and a complex built from two of them. Binary operations produce
// a result at the larger of the operand precisions; nothing reads a global
// default precision.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "toeplitz_spectra/error.hpp"

namespace toeplitz_spectra {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 256;
inline constexpr Precision kMinPrecision = 53;

/// Significant decimal digits needed to print a p-bit value losslessly,
/// ceil(p * log10(2)) + 2.
inline int decimal_digits(Precision bits) {
  return static_cast<int>(std::ceil(static_cast<double>(bits) * 0.30102999566398119521)) + 2;
}

class MpReal {
 public:
  explicit MpReal(Precision prec = kDefaultPrecision) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  MpReal(long value, Precision prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  MpReal(const mpz_class& value, Precision prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
  }

  static MpReal from_double(double value, Precision prec) {
    MpReal x(prec);
    mpfr_set_d(x.v_, value, MPFR_RNDN);
    return x;
  }

  /// Exact conversion; throws when the integer needs more than `prec` bits.
  static MpReal exact(const mpz_class& value, Precision prec) {
    MpReal x(prec);
    if (mpfr_set_z(x.v_, value.get_mpz_t(), MPFR_RNDN) != 0) {
      throw ComputationError("integer " + value.get_str() + " is not representable in " +
                             std::to_string(prec) + " bits");
    }
    return x;
  }

  /// Parses a decimal (or "inf"/"nan") literal. Throws ValidationError on junk.
  static MpReal parse(std::string_view text, Precision prec) {
    MpReal x(prec);
    std::string s(text);
    char* end = nullptr;
    if (!s.empty()) mpfr_strtofr(x.v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (s.empty() || end != s.c_str() + s.size()) {
      throw ValidationError("malformed number '" + s + "'");
    }
    return x;
  }

  MpReal(const MpReal& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  MpReal(MpReal&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  MpReal& operator=(const MpReal& other) {
    if (this != &other) {
      if (mpfr_get_prec(v_) != mpfr_get_prec(other.v_)) mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpReal& operator=(MpReal&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  Precision precision() const { return mpfr_get_prec(v_); }

  /// Rounds the current value to a new precision.
  void round_to(Precision prec) { mpfr_prec_round(v_, prec, MPFR_RNDN); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Scientific notation with `digits` significant digits; "0" for zero.
  std::string to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string out;
    std::size_t pos = 0;
    if (mant[0] == '-') {
      out += '-';
      pos = 1;
    }
    out += mant[pos];
    if (mant.size() > pos + 1) {
      out += '.';
      out.append(mant, pos + 1, std::string::npos);
    }
    const long e = static_cast<long>(exp10) - 1;
    out += (e < 0) ? "e-" : "e+";
    const std::string es = std::to_string(e < 0 ? -e : e);
    if (es.size() < 2) out += '0';
    out += es;
    return out;
  }
  std::string to_string() const { return to_string(decimal_digits(precision())); }

  MpReal operator-() const {
    MpReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  MpReal& operator+=(const MpReal& o) {
    widen(o);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator-=(const MpReal& o) {
    widen(o);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator*=(const MpReal& o) {
    widen(o);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator/=(const MpReal& o) {
    widen(o);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator*=(long k) {
    mpfr_mul_si(v_, v_, k, MPFR_RNDN);
    return *this;
  }
  MpReal& operator/=(long k) {
    mpfr_div_si(v_, v_, k, MPFR_RNDN);
    return *this;
  }

  friend MpReal operator+(MpReal a, const MpReal& b) { return a += b; }
  friend MpReal operator-(MpReal a, const MpReal& b) { return a -= b; }
  friend MpReal operator*(MpReal a, const MpReal& b) { return a *= b; }
  friend MpReal operator/(MpReal a, const MpReal& b) { return a /= b; }
  friend MpReal operator*(MpReal a, long k) { return a *= k; }
  friend MpReal operator/(MpReal a, long k) { return a /= k; }

  friend bool operator==(const MpReal& a, const MpReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const MpReal& a, const MpReal& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  friend std::ostream& operator<<(std::ostream& os, const MpReal& x) { return os << x.to_string(); }

 private:
  void widen(const MpReal& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  }

  mpfr_t v_;
};

/// Machine epsilon at p bits, 2^(1-p).
inline MpReal epsilon(Precision prec) {
  MpReal e(1L, prec);
  mpfr_mul_2si(e.get(), e.get(), 1 - static_cast<long>(prec), MPFR_RNDN);
  return e;
}

/// 2^k at the given precision.
inline MpReal pow2(long k, Precision prec) {
  MpReal e(1L, prec);
  mpfr_mul_2si(e.get(), e.get(), k, MPFR_RNDN);
  return e;
}

inline MpReal pi(Precision prec) {
  MpReal x(prec);
  mpfr_const_pi(x.get(), MPFR_RNDN);
  return x;
}

namespace detail {
template <int (*F)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)>
MpReal unary(const MpReal& x) {
  MpReal r(x.precision());
  F(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline MpReal abs(const MpReal& x) { return detail::unary<mpfr_abs>(x); }
inline MpReal sqrt(const MpReal& x) { return detail::unary<mpfr_sqrt>(x); }
inline MpReal exp(const MpReal& x) { return detail::unary<mpfr_exp>(x); }
inline MpReal log(const MpReal& x) { return detail::unary<mpfr_log>(x); }
inline MpReal sin(const MpReal& x) { return detail::unary<mpfr_sin>(x); }
inline MpReal cos(const MpReal& x) { return detail::unary<mpfr_cos>(x); }

inline MpReal atan2(const MpReal& y, const MpReal& x) {
  MpReal r(std::max(y.precision(), x.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

inline MpReal pow(const MpReal& x, const MpReal& y) {
  MpReal r(std::max(x.precision(), y.precision()));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

inline MpReal pow(const MpReal& x, long k) {
  MpReal r(x.precision());
  mpfr_pow_si(r.get(), x.get(), k, MPFR_RNDN);
  return r;
}

inline const MpReal& max(const MpReal& a, const MpReal& b) { return (a < b) ? b : a; }
inline const MpReal& min(const MpReal& a, const MpReal& b) { return (b < a) ? b : a; }

class MpComplex {
 public:
  explicit MpComplex(Precision prec = kDefaultPrecision) : re_(prec), im_(prec) {}
  MpComplex(MpReal re, MpReal im) : re_(std::move(re)), im_(std::move(im)) {
    if (re_.precision() < im_.precision()) re_.round_to(im_.precision());
    if (im_.precision() < re_.precision()) im_.round_to(re_.precision());
  }
  explicit MpComplex(MpReal re) : re_(std::move(re)), im_(re_.precision()) {}

  static MpComplex polar(const MpReal& rho, const MpReal& theta) {
    MpReal s(theta.precision()), c(theta.precision());
    mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
    return {rho * c, rho * s};
  }

  Precision precision() const { return re_.precision(); }
  const MpReal& real() const { return re_; }
  const MpReal& imag() const { return im_; }
  MpReal& real() { return re_; }
  MpReal& imag() { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  MpComplex conj() const { return {re_, -im_}; }

  MpComplex operator-() const { return {-re_, -im_}; }
  MpComplex& operator+=(const MpComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  MpComplex& operator-=(const MpComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  MpComplex& operator*=(const MpComplex& o) {
    const Precision p = std::max(precision(), o.precision());
    MpReal re(p), im(p);
    mpfr_fmms(re.get(), re_.get(), o.re_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_fmma(im.get(), re_.get(), o.im_.get(), im_.get(), o.re_.get(), MPFR_RNDN);
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  MpComplex& operator*=(const MpReal& k) {
    re_ *= k;
    im_ *= k;
    return *this;
  }
  MpComplex& operator/=(const MpComplex& o) {
    // Smith's algorithm.
    const Precision p = std::max(precision(), o.precision());
    MpReal re(p), im(p);
    if (abs(o.re_) >= abs(o.im_)) {
      const MpReal ratio = o.im_ / o.re_;
      const MpReal den = o.re_ + o.im_ * ratio;
      re = (re_ + im_ * ratio) / den;
      im = (im_ - re_ * ratio) / den;
    } else {
      const MpReal ratio = o.re_ / o.im_;
      const MpReal den = o.re_ * ratio + o.im_;
      re = (re_ * ratio + im_) / den;
      im = (im_ * ratio - re_) / den;
    }
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }

  friend MpComplex operator+(MpComplex a, const MpComplex& b) { return a += b; }
  friend MpComplex operator-(MpComplex a, const MpComplex& b) { return a -= b; }
  friend MpComplex operator*(MpComplex a, const MpComplex& b) { return a *= b; }
  friend MpComplex operator*(MpComplex a, const MpReal& k) { return a *= k; }
  friend MpComplex operator/(MpComplex a, const MpComplex& b) { return a /= b; }

  friend bool operator==(const MpComplex& a, const MpComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  friend std::ostream& operator<<(std::ostream& os, const MpComplex& z) {
    return os << '(' << z.re_ << ", " << z.im_ << ')';
  }

 private:
  MpReal re_;
  MpReal im_;
};

inline MpReal abs(const MpComplex& z) {
  MpReal r(z.precision());
  mpfr_hypot(r.get(), z.real().get(), z.imag().get(), MPFR_RNDN);
  return r;
}

/// Principal argument in (-pi, pi].
inline MpReal arg(const MpComplex& z) { return atan2(z.imag(), z.real()); }

/// Argument mapped into [0, 2*pi); zero for the origin.
inline MpReal phase_0_2pi(const MpComplex& z) {
  if (z.is_zero()) return MpReal(z.precision());
  MpReal a = arg(z);
  if (a.sign() < 0) a += pi(z.precision()) * 2L;
  return a;
}

inline MpComplex exp(const MpComplex& z) { return MpComplex::polar(exp(z.real()), z.imag()); }

/// Principal logarithm; log(0) is -inf.
inline MpComplex log(const MpComplex& z) { return {log(abs(z)), arg(z)}; }

/// Principal branch of z^w = exp(w Log z); 0^w = 0 for w > 0.
inline MpComplex pow(const MpComplex& z, const MpReal& w) {
  if (z.is_zero()) return MpComplex(z.precision());
  const MpComplex l = log(z);
  return exp(MpComplex(l.real() * w, l.imag() * w));
}

/// Principal square root.
inline MpComplex sqrt(const MpComplex& z) {
  const Precision p = z.precision();
  if (z.is_zero()) return MpComplex(p);
  // t = sqrt((|z| + |re|) / 2)
  MpReal t = sqrt((abs(z) + abs(z.real())) / 2L);
  if (z.real().sign() >= 0) return {t, z.imag() / (t * 2L)};
  MpReal im = z.imag().sign() < 0 ? -t : t;
  return {abs(z.imag()) / (t * 2L), std::move(im)};
}

}  // namespace toeplitz_spectra
