#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "toeplitz_spectra/exact.hpp"
#include "toeplitz_spectra/params.hpp"

using namespace toeplitz_spectra;
using fixtures::mat;
using fixtures::poly_desc;

namespace {

/// M and P built from shifted index arrays: rectangular Toeplitz tables whose
/// first columns are windows of repeat(1:sigma, inner=r) and
/// repeat(-1:s, inner=r), then the column permutation.
ExponentTables shift_array_M_P(long r, long s) {
  const long sigma = r + s;
  std::vector<long> m_array, p_array;
  for (long v = 1; v <= sigma; ++v)
    for (long k = 0; k < r; ++k) m_array.push_back(v);
  for (long v = -1; v <= s; ++v)
    for (long k = 0; k < r; ++k) p_array.push_back(v);
  // 1-based helpers.
  const auto m_at = [&](long i) { return m_array[static_cast<std::size_t>(i - 1)]; };
  const auto p_at = [&](long i) { return p_array[static_cast<std::size_t>(i - 1)]; };
  std::vector<long> mc, mr(static_cast<std::size_t>(r), 1), pc, pr;
  for (long i = r; i <= r + sigma - 1; ++i) mc.push_back(m_at(i));
  for (long i = sigma + 1; i >= 2; --i) pc.push_back(p_at(i));
  for (long i = sigma + 1; i <= sigma + r; ++i) pr.push_back(p_at(i));
  const auto toeplitz = [&](const std::vector<long>& col, const std::vector<long>& row) {
    IntMatrix t(static_cast<std::size_t>(sigma), static_cast<std::size_t>(r));
    for (long i = 0; i < sigma; ++i)
      for (long j = 0; j < r; ++j)
        t(i, j) = i >= j ? col[static_cast<std::size_t>(i - j)] : row[static_cast<std::size_t>(j - i)];
    return t;
  };
  IntMatrix M = toeplitz(mc, mr), P = toeplitz(pc, pr);
  if (r != 1) {
    const long tau = s % r;
    std::vector<std::size_t> perm;
    for (long k = 1; k <= r; ++k) perm.push_back(static_cast<std::size_t>((k * tau) % r));
    perm.back() = static_cast<std::size_t>(r);
    std::vector<std::size_t> zero_based;
    for (auto c : perm) zero_based.push_back(c - 1);
    M = M.select_columns(zero_based);
    P = P.select_columns(zero_based);
  }
  return {M, P};
}

/// Fraction-free Gaussian elimination.
mpz_class bareiss_det(IntMatrix a) {
  const std::size_t n = a.rows();
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return n == 0 ? mpz_class(1) : sign * a(n - 1, n - 1);
}

IntMatrix random_matrix(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<long> d(-9, 9);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST(BuildTng, PermutationMatrix) {
  EXPECT_EQ(build_Tng(3, 1, 2), mat({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));
}

TEST(BuildTng, Tridiagonal) {
  EXPECT_EQ(build_Tng(5, 1, 1),
            mat({{0, 1, 0, 0, 0}, {1, 0, 1, 0, 0}, {0, 1, 0, 1, 0}, {0, 0, 1, 0, 1}, {0, 0, 0, 1, 0}}));
}

TEST(BuildTng, SuperdiagonalOutsideMatrix) { EXPECT_EQ(build_Tng(2, 1, 2), mat({{0, 0}, {1, 0}})); }

TEST(ShiftedCPower, Examples) {
  EXPECT_EQ(shifted_c_power(5, 1),
            mat({{1, 1, 0, 0, 0}, {0, 1, 1, 0, 0}, {0, 0, 1, 1, 0}, {0, 0, 0, 1, 1}, {0, 0, 0, 0, 1}}));
  EXPECT_EQ(shifted_c_power(5, 2),
            mat({{2, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {0, 1, 2, 1, 0}, {0, 0, 1, 2, 1}, {0, 0, 0, 1, 2}}));
  EXPECT_EQ(shifted_c_power(5, 3),
            mat({{3, 1, 0, 0, 0}, {3, 3, 1, 0, 0}, {1, 3, 3, 1, 0}, {0, 1, 3, 3, 1}, {0, 0, 1, 3, 3}}));
}

TEST(ShiftedCPower, InverseIsExact) {
  for (long n = 1; n <= 12; ++n) EXPECT_EQ(shifted_c_power(n, 1) * shifted_c_inverse(n), IntMatrix::identity(static_cast<std::size_t>(n)));
}

TEST(ConstructMP, OneTwo) {
  const auto t = construct_M_P(1, 2);
  EXPECT_EQ(t.M, mat({{1}, {2}, {3}}));
  EXPECT_EQ(t.P, mat({{2}, {1}, {0}}));
}

TEST(ConstructMP, OneOne) {
  const auto t = construct_M_P(1, 1);
  EXPECT_EQ(t.M, mat({{1}, {2}}));
  EXPECT_EQ(t.P, mat({{1}, {0}}));
}

TEST(ConstructMP, ThreeFivePermuted) {
  EXPECT_EQ(column_permutation(3, 5), (std::vector<long>{2, 1, 3}));
  const auto t = construct_M_P(3, 5);
  EXPECT_EQ(t.M, mat({{1, 1, 1}, {1, 2, 1}, {2, 2, 1}, {2, 2, 2}, {2, 3, 2}, {3, 3, 2}, {3, 3, 3}, {3, 4, 3}}));
  EXPECT_EQ(t.P, mat({{2, 1, 2}, {1, 1, 2}, {1, 1, 1}, {1, 0, 1}, {0, 0, 1}, {0, 0, 0}, {0, -1, 0}, {-1, -1, 0}}));
}

TEST(ConstructMP, RejectsNonCoprime) { EXPECT_THROW(construct_M_P(2, 4), ValidationError); }

TEST(ConstructMP, RowSumLawAndShiftArrayEquivalence) {
  for (long r = 1; r <= 20; ++r) {
    for (long s = r; s <= 20; ++s) {
      if (std::gcd(r, s) != 1) continue;
      const auto t = construct_M_P(r, s);
      const auto o = shift_array_M_P(r, s);
      ASSERT_EQ(t.M, o.M) << r << ',' << s;
      ASSERT_EQ(t.P, o.P) << r << ',' << s;
      for (std::size_t i = 0; i < t.M.rows(); ++i) {
        mpz_class sum = 0;
        for (std::size_t j = 0; j < t.M.cols(); ++j) sum += t.M(i, j) + t.P(i, j);
        ASSERT_EQ(sum, r + s) << r << ',' << s << " row " << i;
      }
    }
  }
}

TEST(ConstructB, PublishedMatrices) {
  for (const auto& f : fixtures::b_matrices()) EXPECT_EQ(construct_B(f.n, f.r, f.s), f.b) << f.name;
}

TEST(ConstructB, RawProductAndCornerForThirtyEight) {
  EXPECT_EQ(construct_B_raw(38, 3, 5), fixtures::raw_B_38_3_5());
  // n_sigma = 4 is even: the correction adds |R|.
  IntMatrix fixed = construct_B_raw(38, 3, 5);
  fixed += fixtures::corner_R_38_3_5();
  EXPECT_EQ(fixed, construct_B(38, 3, 5));
}

TEST(ConstructB, MatchesExplicitProduct) {
  // B_10^{86,3,5} = T^T(c^3) T^T(c^3) T(c)^{-1} T^T(c^3), before the corner fix.
  const IntMatrix c3 = shifted_c_power(10, 3).transpose();
  const IntMatrix raw = c3 * c3 * shifted_c_inverse(10) * c3;
  EXPECT_EQ(construct_B_raw(86, 3, 5), raw);
  // Removing the corner entries of the raw product gives the corrected matrix.
  IntMatrix fixed = raw;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 8; j < 10; ++j) fixed(i, j) = 0;
  EXPECT_EQ(fixed, construct_B(86, 3, 5));
}

TEST(ConstructB, NoCorrectionWhenBetaAtMostS) {
  for (long n = 9; n <= 80; ++n) {
    if (n % 8 > 5) continue;
    EXPECT_EQ(construct_B(n, 3, 5), construct_B_raw(n, 3, 5)) << n;
  }
}

TEST(ConstructB, ManualRegimeIsAnError) {
  // (n=14, r=3, s=5): beta_sigma = 6 > s and n <= (r-1) sigma = 16.
  EXPECT_TRUE(in_manual_regime(14, 3, 5));
  EXPECT_THROW(construct_B(14, 3, 5), RestrictionError);
  EXPECT_FALSE(in_manual_regime(22, 3, 5));
}

TEST(ConstructB, LargeEntries) {
  const IntMatrix b = construct_B(231, 38, 39);
  EXPECT_EQ(b(0, 0), mpz_class("2937189730080557577"));
  EXPECT_GT(b.max_abs(), mpz_class("9223372036854775807"));  // beyond int64
}

TEST(ConstructB, EntriesNonnegativeOverSweep) {
  for (long r = 1; r <= 12; ++r) {
    for (long s = r; s <= 12; ++s) {
      if (std::gcd(r, s) != 1) continue;
      const long sigma = r + s;
      for (long n = sigma; n <= 40 * sigma; ++n) {
        if (in_manual_regime(n, r, s)) continue;
        const IntMatrix b = construct_B(n, r, s);
        for (const auto& e : b.data()) ASSERT_GE(e, 0) << "(n,r,s)=(" << n << ',' << r << ',' << s << ')';
      }
    }
  }
}

TEST(CharPoly, Examples) {
  EXPECT_EQ(char_poly(mat({{1, 2}, {1, 3}})), poly_desc({1, -4, 1}));
  EXPECT_EQ(char_poly(construct_B(15, 1, 2)), poly_desc({1, -13, 55, -84, 35, -1}));
  EXPECT_EQ(char_poly(IntMatrix::identity(3)), poly_desc({1, -3, 3, -1}));
  EXPECT_EQ(char_poly(construct_B(15, 1, 2)).to_string(), "x^5 - 13x^4 + 55x^3 - 84x^2 + 35x - 1");
  EXPECT_THROW(char_poly(IntMatrix(2, 3)), ValidationError);
}

TEST(CharPoly, PublishedPolynomials) {
  for (const auto& f : fixtures::polynomials()) {
    const IntMatrix m = f.is_b ? construct_B(f.n, f.r, f.s) : build_Tng(f.n, f.r, f.s);
    EXPECT_EQ(char_poly(m), f.p) << f.name;
  }
}

TEST(CharPoly, DeterminantAndTraceAgainstElimination) {
  std::mt19937 rng(12345);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const IntMatrix a = random_matrix(n, rng);
      const IntPolynomial q = char_poly(a);
      ASSERT_TRUE(q.is_monic());
      ASSERT_EQ(q.degree(), static_cast<long>(n));
      const mpz_class sign = (n % 2 == 0) ? 1 : -1;
      ASSERT_EQ(q.coefficient(0), sign * bareiss_det(a));
      ASSERT_EQ(q.coefficient(n - 1), -a.trace());
    }
  }
  for (const auto& f : fixtures::b_matrices()) {
    const IntPolynomial q = char_poly(f.b);
    const mpz_class sign = (f.b.rows() % 2 == 0) ? 1 : -1;
    EXPECT_EQ(q.coefficient(0), sign * bareiss_det(f.b)) << f.name;
  }
}

TEST(CharPoly, CayleyHamilton) {
  const IntMatrix b = construct_B(46, 3, 5);
  const IntPolynomial q = char_poly(b);
  IntMatrix acc(b.rows(), b.cols());
  IntMatrix power = IntMatrix::identity(b.rows());
  for (std::size_t k = 0; k <= static_cast<std::size_t>(q.degree()); ++k) {
    IntMatrix term = power;
    for (std::size_t i = 0; i < term.rows(); ++i)
      for (std::size_t j = 0; j < term.cols(); ++j) term(i, j) *= q.coefficient(k);
    acc += term;
    power = power * b;
  }
  EXPECT_EQ(acc, IntMatrix(b.rows(), b.cols()));
}

TEST(PolyComposePower, Examples) {
  EXPECT_EQ(poly_compose_power(poly_desc({1, -4, 1}), 3), poly_desc({1, 0, 0, -4, 0, 0, 1}));
  EXPECT_EQ(poly_compose_power(IntPolynomial::monomial(1), 5), IntPolynomial::monomial(5));
  EXPECT_EQ(poly_compose_power(poly_desc({1, -6, 6}), 3), poly_desc({1, 0, 0, -6, 0, 0, 6}));
}

TEST(IntPolynomial, EvaluateAndMultiply) {
  const IntPolynomial q = poly_desc({1, -4, 1});
  EXPECT_EQ(q(mpz_class(2)), -3);
  EXPECT_EQ(q * IntPolynomial::one(), q);
  EXPECT_EQ(pow(poly_desc({1, -1}), 3), poly_desc({1, -3, 3, -1}));
}
