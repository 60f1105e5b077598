// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "toeplitz_spectra.hpp"

using namespace toeplitz_spectra;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

MpReal ten_pow(long e, Precision p) { return pow(MpReal(10L, p), MpReal(e, p)); }

Outcome exact_identity_sweep() {
  const std::vector<std::pair<long, long>> pairs{{1, 1}, {1, 2}, {2, 4}, {3, 5}, {2, 2}, {1, 4}};
  long checked = 0, skipped = 0;
  std::ostringstream bad;
  for (auto [r, s] : pairs) {
    for (long n = s + 1; n <= 60; ++n) {
      if (!is_constructible(n, r, s)) {
        ++skipped;
        continue;
      }
      ++checked;
      if (!verify_exact_identity(n, r, s).holds) bad << " (" << n << "," << r << "," << s << ")";
    }
  }
  std::ostringstream d;
  d << checked << " points checked, " << skipped << " restricted points skipped";
  if (!bad.str().empty()) d << "; identity fails at" << bad.str();
  return {bad.str().empty(), d.str()};
}

Outcome polynomial_fixtures() {
  std::ostringstream bad;
  long count = 0;
  for (const auto& f : fixtures::polynomials()) {
    ++count;
    const IntMatrix m = f.is_b ? construct_B(f.n, f.r, f.s) : build_Tng(f.n, f.r, f.s);
    if (!(char_poly(m) == f.p)) bad << ' ' << f.name;
  }
  return {bad.str().empty(), std::to_string(count) + " polynomials" + (bad.str().empty() ? "" : "; mismatch:" + bad.str())};
}

Outcome matrix_fixtures() {
  std::ostringstream bad;
  long count = 0;
  for (const auto& f : fixtures::b_matrices()) {
    ++count;
    if (!(construct_B(f.n, f.r, f.s) == f.b)) bad << ' ' << f.name;
  }
  const IntMatrix big = construct_B(231, 38, 39);
  if (big(0, 0) != mpz_class("2937189730080557577")) bad << " B_3^{231,38,39}(1,1)";
  return {bad.str().empty(), std::to_string(count) + " matrices" + (bad.str().empty() ? "" : "; mismatch:" + bad.str())};
}

Outcome tridiagonal_closed_form() {
  const Precision p = 256;
  const long n = 100;
  Spectrum expected;
  expected.precision = p;
  const MpReal pi_p = pi(p);
  for (long j = 1; j <= n; ++j) expected.values.emplace_back(cos(pi_p * j / (n + 1)) * 2L);
  sort_spectrum(expected.values);
  const MpReal err = spectral_error(full_spectrum_g(n, 1, 1, p), expected);
  return {err <= ten_pow(-70, p), "error " + err.to_string(4) + " (limit 1e-70)"};
}

Outcome algorithm_vs_oracle() {
  const Precision p = 256;
  const std::vector<std::tuple<long, long, long>> pts{{63, 1, 2}, {64, 1, 2}, {65, 1, 2}, {121, 5, 6}, {49, 2, 5}};
  bool ok = true;
  std::ostringstream d;
  for (auto [n, r, s] : pts) {
    const MpReal err = spectral_error(full_spectrum_g(n, r, s, p), oracle_spectrum(n, r, s, p), true);
    const bool pass = err <= ten_pow(-40, p);
    ok = ok && pass;
    d << " (" << n << "," << r << "," << s << "):" << err.to_string(3) << (pass ? "" : "!");
  }
  return {ok, "nonzero errors" + d.str() + " (limit 1e-40)"};
}

Outcome zero_counts() {
  std::ostringstream d;
  bool ok = true;
  for (long n = 12; n <= 17; ++n) {
    const long z = compute_params(n, 2, 4).n_zero;
    ok = ok && z == fixtures::zero_counts_2_4()[static_cast<std::size_t>(n - 12)];
    d << z << (n < 17 ? "," : "");
  }
  return {ok, "n_zero for n=12..17: " + d.str()};
}

Outcome bound() {
  const Precision p = 256;
  const std::vector<std::pair<long, long>> pairs{{1, 1}, {1, 2}, {2, 4}, {3, 5}, {2, 2}, {1, 4}};
  const MpReal slack = pow2(16, p) * epsilon(p);
  std::ostringstream d;
  bool in_range = true;
  long values = 0;
  for (auto [r, s] : pairs) {
    const MpReal R = upper_bound_R(r, s, p);
    for (long n = s + 1; n <= 60; ++n) {
      if (!is_constructible(n, r, s)) continue;
      for (const MpReal& v : positive_real_spectrum(n, r, s, p).values) {
        ++values;
        if (!(v.sign() > 0 && v <= R + slack * R)) {
          in_range = false;
          d << " out of range at (" << n << "," << r << "," << s << "): " << v.to_string(8) << ';';
        }
      }
    }
  }
  const MpReal R12 = upper_bound_R(1, 2, p);
  const MpReal ratio = positive_real_spectrum(30, 1, 2, p).values.back() / R12;
  const MpReal floor = MpReal::parse("0.99", p);
  const bool near_sup = ratio > floor;
  d << ' ' << values << " values in (0, R]" << (in_range ? "" : " violated")
    << "; max/R at n=30, (1,2): " << ratio.to_string(8) << (near_sup ? " > 0.99" : " <= 0.99");
  return {in_range && near_sup, d.str()};
}

Outcome condition_fixture() {
  const Precision p = 512;
  const MpReal k = condition_number(construct_B(231, 38, 39), p);
  const bool ok = k >= MpReal::parse("4.0e46", p) && k <= MpReal::parse("5.6e46", p);
  return {ok, "kappa " + k.to_string(4) + " (range [4.0e46, 5.6e46])"};
}

Outcome speedup() {
  const Precision p = 256;
  const auto timed = [](const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  double alg = 1e300;
  for (int k = 0; k < 3; ++k) alg = std::min(alg, timed([&] { full_spectrum_g(256, 4, 12, p); }));
  const double orc = timed([&] { oracle_spectrum(256, 4, 12, p); });
  std::ostringstream d;
  d << "algorithm " << alg << " s, oracle " << orc << " s, speedup " << orc / alg << "x (floor 10x)";
  return {orc >= 10.0 * alg, d.str()};
}

Outcome error_trend_check() {
  const auto errs = error_trend(5, 7, 256, 2048);
  MpReal worst = errs.front();
  for (const auto& e : errs)
    if (e > worst) worst = e;
  std::ostringstream d;
  d << "error at beta=0: " << errs.front().to_string(3) << ", max over beta: " << worst.to_string(3);
  return {errs.front() * 10L >= worst, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact identity sweep", exact_identity_sweep},
      {"published characteristic polynomials", polynomial_fixtures},
      {"published B matrices", matrix_fixtures},
      {"tridiagonal closed form n=100", tridiagonal_closed_form},
      {"algorithm vs dense oracle", algorithm_vs_oracle},
      {"zero counts for (2,4)", zero_counts},
      {"positive real spectrum bound", bound},
      {"condition number of B_3^{231,38,39}", condition_fixture},
      {"speedup over dense oracle at (256,4,12)", speedup},
      {"error trend for (5,7)", error_trend_check},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << criteria[k].first << " -- " << o.detail
              << " [" << secs << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
