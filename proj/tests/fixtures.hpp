#pragma once

// Published matrices and characteristic polynomials used as golden values.

#include <string>
#include <vector>

#include "toeplitz_spectra/exact.hpp"

namespace fixtures {

using toeplitz_spectra::IntMatrix;
using toeplitz_spectra::IntPolynomial;

inline IntMatrix mat(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<mpz_class>> big;
  for (const auto& r : rows) big.emplace_back(r.begin(), r.end());
  return IntMatrix::from_rows(big);
}

inline IntMatrix mat_str(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<mpz_class>> big;
  for (const auto& r : rows) {
    big.emplace_back();
    for (const auto& e : r) big.back().emplace_back(e);
  }
  return IntMatrix::from_rows(big);
}

/// Coefficients from the highest power down, as printed.
inline IntPolynomial poly_desc(std::vector<long> desc) {
  std::vector<mpz_class> asc(desc.rbegin(), desc.rend());
  return IntPolynomial(asc);
}

struct MatrixFixture {
  const char* name;
  long n, r, s;
  IntMatrix b;
};

/// Corrected B matrices as published, with n_sigma x n_sigma shape.
inline std::vector<MatrixFixture> b_matrices() {
  return {
      {"B_5^{15,1,2}", 15, 1, 2, mat({{1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {0, 1, 3, 3, 1}, {0, 0, 1, 3, 3}, {0, 0, 0, 1, 3}})},
      {"B_5^{16,1,2}", 16, 1, 2, mat({{2, 3, 1, 0, 0}, {1, 3, 3, 1, 0}, {0, 1, 3, 3, 1}, {0, 0, 1, 3, 3}, {0, 0, 0, 1, 3}})},
      {"B_5^{17,1,2}", 17, 1, 2, mat({{3, 3, 1, 0, 0}, {1, 3, 3, 1, 0}, {0, 1, 3, 3, 1}, {0, 0, 1, 3, 3}, {0, 0, 0, 1, 3}})},
      {"B_2^{6,1,2}", 6, 1, 2, mat({{1, 2}, {1, 3}})},
      {"B_2^{7,1,2}", 7, 1, 2, mat({{2, 3}, {1, 3}})},
      {"B_2^{8,1,2}", 8, 1, 2, mat({{3, 3}, {1, 3}})},
      {"B_3^{9,1,2}", 9, 1, 2, mat({{1, 2, 1}, {1, 3, 3}, {0, 1, 3}})},
      {"B_10^{86,3,5}", 86, 3, 5,
       mat({{43, 65, 55, 28, 8, 1, 0, 0, 0, 0},
            {27, 56, 70, 56, 28, 8, 1, 0, 0, 0},
            {8, 28, 56, 70, 56, 28, 8, 1, 0, 0},
            {1, 8, 28, 56, 70, 56, 28, 8, 1, 0},
            {0, 1, 8, 28, 56, 70, 56, 28, 8, 1},
            {0, 0, 1, 8, 28, 56, 70, 56, 28, 8},
            {0, 0, 0, 1, 8, 28, 56, 70, 56, 28},
            {0, 0, 0, 0, 1, 8, 28, 56, 70, 55},
            {0, 0, 0, 0, 0, 1, 8, 28, 55, 62},
            {0, 0, 0, 0, 0, 0, 1, 8, 25, 37}})},
      {"B_10^{87,3,5}", 87, 3, 5,
       mat({{43, 65, 55, 28, 8, 1, 0, 0, 0, 0},
            {27, 56, 70, 56, 28, 8, 1, 0, 0, 0},
            {8, 28, 56, 70, 56, 28, 8, 1, 0, 0},
            {1, 8, 28, 56, 70, 56, 28, 8, 1, 0},
            {0, 1, 8, 28, 56, 70, 56, 28, 8, 1},
            {0, 0, 1, 8, 28, 56, 70, 56, 28, 8},
            {0, 0, 0, 1, 8, 28, 56, 70, 56, 28},
            {0, 0, 0, 0, 1, 8, 28, 56, 70, 55},
            {0, 0, 0, 0, 0, 1, 8, 28, 56, 65},
            {0, 0, 0, 0, 0, 0, 1, 8, 27, 43}})},
      {"B_4^{38,3,5}", 38, 3, 5, mat({{43, 65, 55, 28}, {27, 56, 70, 55}, {8, 28, 55, 62}, {1, 8, 25, 37}})},
      {"B_4^{39,3,5}", 39, 3, 5, mat({{43, 65, 55, 28}, {27, 56, 70, 55}, {8, 28, 56, 65}, {1, 8, 27, 43}})},
      {"B_5^{46,3,5}", 46, 3, 5,
       mat({{43, 65, 55, 28, 8}, {27, 56, 70, 56, 28}, {8, 28, 56, 70, 55}, {1, 8, 28, 55, 62}, {0, 1, 8, 25, 37}})},
      {"B_5^{47,3,5}", 47, 3, 5,
       mat({{43, 65, 55, 28, 8}, {27, 56, 70, 56, 28}, {8, 28, 56, 70, 55}, {1, 8, 28, 56, 65}, {0, 1, 8, 27, 43}})},
      {"B_3^{231,38,39}", 231, 38, 39,
       mat_str({{"2937189730080557577", "9536995145808582886", "11892438427558067162"},
                {"6599805415728025309", "21429433573366650048", "26722066585196691901"},
                {"5292633011830041853", "17185071439388109015", "21429433573366650048"}})},
  };
}

/// Uncorrected products printed next to the corrections, before the corner
/// entries are removed.
inline IntMatrix raw_B_38_3_5() { return mat({{43, 65, 55, 25}, {27, 56, 70, 54}, {8, 28, 55, 62}, {1, 8, 25, 37}}); }
inline IntMatrix corner_R_38_3_5() { return mat({{0, 0, 0, 3}, {0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}}); }

struct PolyFixture {
  const char* name;
  /// Either T_n(g_{r,s}) (is_b = false) or the B matrix of (n, r, s).
  bool is_b;
  long n, r, s;
  IntPolynomial p;
};

inline IntPolynomial times_x(long k, const IntPolynomial& q) { return IntPolynomial::monomial(static_cast<std::size_t>(k)) * q; }

inline std::vector<PolyFixture> polynomials() {
  return {
      {"p_12^{2,4}", false, 12, 2, 4, poly_desc({1, 0, 0, -8, 0, 0, 18, 0, 0, -8, 0, 0, 1})},
      {"p_13^{2,4}", false, 13, 2, 4, times_x(1, poly_desc({1, 0, 0, -9, 0, 0, 24, 0, 0, -17, 0, 0, 3}))},
      {"p_14^{2,4}", false, 14, 2, 4, times_x(2, poly_desc({1, 0, 0, -10, 0, 0, 31, 0, 0, -30, 0, 0, 9}))},
      {"p_15^{2,4}", false, 15, 2, 4, times_x(3, poly_desc({1, 0, 0, -11, 0, 0, 39, 0, 0, -48, 0, 0, 18}))},
      {"p_16^{2,4}", false, 16, 2, 4, times_x(4, poly_desc({1, 0, 0, -12, 0, 0, 48, 0, 0, -72, 0, 0, 36}))},
      {"p_17^{2,4}", false, 17, 2, 4, times_x(2, poly_desc({1, 0, 0, -13, 0, 0, 58, 0, 0, -103, 0, 0, 66, 0, 0, -6}))},
      {"q_2^{6,1,2}", true, 6, 1, 2, poly_desc({1, -4, 1})},
      {"q_2^{7,1,2}", true, 7, 1, 2, poly_desc({1, -5, 3})},
      {"q_2^{8,1,2}", true, 8, 1, 2, poly_desc({1, -6, 6})},
      {"q_3^{9,1,2}", true, 9, 1, 2, poly_desc({1, -7, 10, -1})},
      {"q_5^{15,1,2}", true, 15, 1, 2, poly_desc({1, -13, 55, -84, 35, -1})},
      {"q_5^{16,1,2}", true, 16, 1, 2, poly_desc({1, -14, 66, -120, 70, -6})},
      {"q_5^{17,1,2}", true, 17, 1, 2, poly_desc({1, -15, 78, -165, 126, -21})},
  };
}

/// n_zero for (r, s) = (2, 4), n = 12..17.
inline const std::vector<long>& zero_counts_2_4() {
  static const std::vector<long> v{0, 1, 2, 3, 4, 2};
  return v;
}

}  // namespace fixtures
