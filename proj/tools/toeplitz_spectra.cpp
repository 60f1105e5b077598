// Command-line front end: params, spectrum, bmatrix, charpoly, verify, bench.
// Exit status: 0 success, 1 invalid input (including restricted inputs),
// 2 computational failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "toeplitz_spectra.hpp"

#ifndef TOEPLITZ_SPECTRA_BUILD_ID
#define TOEPLITZ_SPECTRA_BUILD_ID "unknown"
#endif

namespace ts = toeplitz_spectra;

namespace {

struct Config {
  std::string n = "", r = "1", s = "1";
  long precision = ts::kDefaultPrecision;
  std::optional<std::string> f0, fr, fms;
  std::string format = "json";
  std::string out;
  std::size_t jobs = 1;
  bool nonzero_only = false;
  bool transpose_ok = false;
  bool bmatrix = false;
  bool raw = false;
  bool exact_only = false;
  std::vector<long> precisions{53, 256};
  std::size_t repetitions = 3;
};

/// "7" or "3:9" (inclusive).
std::vector<long> parse_range(const std::string& text, const char* name) {
  try {
    const auto colon = text.find(':');
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const long v = std::stol(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v};
    }
    const std::string lo_s = text.substr(0, colon), hi_s = text.substr(colon + 1);
    const long lo = std::stol(lo_s, &used);
    if (used != lo_s.size()) throw std::invalid_argument(text);
    const long hi = std::stol(hi_s, &used);
    if (used != hi_s.size() || hi < lo) throw std::invalid_argument(text);
    std::vector<long> out;
    for (long v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  } catch (const std::logic_error&) {
    throw ts::ValidationError(std::string("--") + name + ": expected an integer or a range a:b, got '" + text + "'");
  }
}

long parse_single(const std::string& text, const char* name) {
  const auto v = parse_range(text, name);
  if (v.size() != 1) throw ts::ValidationError(std::string("--") + name + " takes a single integer here");
  return v.front();
}

/// Applies --transpose-ok to an (r, s) pair, or rejects r > s.
bool orient(long& r, long& s, const Config& cfg) {
  if (r <= s) return false;
  if (!cfg.transpose_ok) {
    throw ts::ValidationError("r=" + std::to_string(r) + " > s=" + std::to_string(s) +
                              "; pass --transpose-ok to swap them (the transpose has the same spectrum)");
  }
  std::cerr << "notice: r > s, computing the transpose (r=" << s << ", s=" << r << ")\n";
  std::swap(r, s);
  return true;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ts::ValidationError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& operator*() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string csv_matrix(const ts::IntMatrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j).get_str();
    os << '\n';
  }
  return os.str();
}

int run_params(const Config& cfg) {
  long r = parse_single(cfg.r, "r"), s = parse_single(cfg.s, "s");
  orient(r, s, cfg);
  const ts::ParamSet p = ts::compute_params(parse_single(cfg.n, "n"), r, s);
  Output out(cfg.out);
  if (cfg.format == "csv") {
    *out << "field,value\n";
    for (const auto& [k, v] : ts::to_json(p).items()) *out << k << ',' << v.dump() << '\n';
    *out << "positive_count," << p.positive_count() << '\n';
    *out << "constructible," << ts::is_constructible(p.n, r, s) << '\n';
  } else {
    ts::json j = ts::to_json(p);
    j["positive_count"] = p.positive_count();
    j["constructible"] = ts::is_constructible(p.n, r, s);
    *out << j.dump(2) << '\n';
  }
  return 0;
}

int run_spectrum(const Config& cfg) {
  const long n = parse_single(cfg.n, "n");
  long r = parse_single(cfg.r, "r"), s = parse_single(cfg.s, "s");
  const auto prec = static_cast<ts::Precision>(cfg.precision);
  ts::Spectrum spec;
  std::optional<ts::ParamSet> params;
  if (cfg.f0 || cfg.fr || cfg.fms) {
    ts::SymbolSpec sym{r, s, ts::parse_complex(cfg.f0.value_or("0"), prec), ts::parse_complex(cfg.fr.value_or("1"), prec),
                       ts::parse_complex(cfg.fms.value_or("1"), prec)};
    sym.validate();
    if (!sym.is_degenerate()) {
      if (orient(sym.r, sym.s, cfg)) std::swap(sym.fr, sym.fms);
      params = ts::compute_params(n, sym.r, sym.s);
    }
    spec = ts::full_spectrum_f(n, sym, prec);
  } else {
    orient(r, s, cfg);
    params = ts::compute_params(n, r, s);
    spec = ts::full_spectrum_g(n, r, s, prec);
  }
  Output out(cfg.out);
  if (cfg.format == "csv") *out << ts::to_csv(spec);
  else *out << ts::to_json(spec, params).dump(2) << '\n';
  return 0;
}

int run_bmatrix(const Config& cfg) {
  long r = parse_single(cfg.r, "r"), s = parse_single(cfg.s, "s");
  orient(r, s, cfg);
  const long n = parse_single(cfg.n, "n");
  const ts::IntMatrix b = cfg.raw ? ts::construct_B_raw(n, r, s) : ts::construct_B(n, r, s);
  Output out(cfg.out);
  if (cfg.format == "csv") {
    *out << csv_matrix(b);
  } else {
    ts::json j = ts::to_json(b);
    j["params"] = ts::to_json(ts::compute_params(n, r, s));
    j["corner_removed"] = !cfg.raw;
    *out << j.dump(2) << '\n';
  }
  return 0;
}

int run_charpoly(const Config& cfg) {
  long r = parse_single(cfg.r, "r"), s = parse_single(cfg.s, "s");
  orient(r, s, cfg);
  const long n = parse_single(cfg.n, "n");
  const ts::ParamSet p = ts::compute_params(n, r, s);
  const ts::IntPolynomial q = ts::char_poly(cfg.bmatrix ? ts::construct_B(n, r, s) : ts::build_Tng(n, r, s));
  Output out(cfg.out);
  if (cfg.format == "csv") {
    *out << "power,coefficient\n";
    for (std::size_t k = 0; k < q.coefficients().size(); ++k) *out << k << ',' << q.coefficients()[k].get_str() << '\n';
  } else {
    ts::json j = ts::to_json(q);
    j["matrix"] = cfg.bmatrix ? "B" : "T";
    j["params"] = ts::to_json(p);
    *out << j.dump(2) << '\n';
  }
  return 0;
}

struct Point {
  long n, r, s;
};

/// Expands the --n/--r/--s ranges. A single point keeps strict validation;
/// in a sweep, r > s pairs (without --transpose-ok) and restricted points are
/// skipped with a notice.
std::vector<Point> sweep_points(const Config& cfg) {
  const auto ns = parse_range(cfg.n, "n"), rs = parse_range(cfg.r, "r"), ss = parse_range(cfg.s, "s");
  const bool single = ns.size() == 1 && rs.size() == 1 && ss.size() == 1;
  std::vector<Point> pts;
  std::size_t skipped = 0;
  for (long r0 : rs) {
    for (long s0 : ss) {
      for (long n : ns) {
        long r = r0, s = s0;
        if (single) {
          orient(r, s, cfg);
          ts::check_restriction(ts::compute_params(n, r, s));
        } else {
          if (r < 1 || s < 1 || n < 1) throw ts::ValidationError("sweep ranges must be positive");
          if (r > s && !cfg.transpose_ok) {
            ++skipped;
            continue;
          }
          if (r > s) std::swap(r, s);
          if (!ts::is_constructible(n, r, s)) {
            ++skipped;
            continue;
          }
        }
        pts.push_back({n, r, s});
      }
    }
  }
  if (skipped) std::cerr << "notice: skipped " << skipped << " point(s) with r > s or in the restricted regime\n";
  return pts;
}

void write_reports(const Config& cfg, const std::vector<ts::VerificationReport>& reps) {
  Output out(cfg.out);
  if (cfg.format == "csv") {
    *out << "n,r,s,precision,n_zero,exact_identity_holds,numeric_error,algorithm_runtime,oracle_runtime\n";
    for (const auto& rep : reps) {
      *out << rep.params.n << ',' << rep.params.r << ',' << rep.params.s << ',' << rep.precision << ','
           << rep.params.n_zero << ',' << (rep.exact_identity_holds ? (*rep.exact_identity_holds ? "true" : "false") : "")
           << ',' << (rep.numeric_error ? rep.numeric_error->to_string(6) : "") << ','
           << (rep.algorithm_runtime ? std::to_string(*rep.algorithm_runtime) : "") << ','
           << (rep.oracle_runtime ? std::to_string(*rep.oracle_runtime) : "") << '\n';
    }
  } else {
    for (const auto& rep : reps) *out << ts::report_line(rep, TOEPLITZ_SPECTRA_BUILD_ID) << '\n';
  }
}

int run_verify(const Config& cfg) {
  const auto pts = sweep_points(cfg);
  ts::VerifyOptions opts;
  opts.numeric = !cfg.exact_only;
  opts.nonzero_only = cfg.nonzero_only;
  const auto prec = static_cast<ts::Precision>(cfg.precision);
  const auto reps = ts::run_sweep<ts::VerificationReport>(pts.size(), cfg.jobs, [&](std::size_t i) {
    return ts::verify_point(pts[i].n, pts[i].r, pts[i].s, prec, opts);
  });
  write_reports(cfg, reps);
  return 0;
}

int run_bench(const Config& cfg) {
  const auto pts = sweep_points(cfg);
  std::vector<std::tuple<Point, ts::Precision>> work;
  for (const auto& p : pts)
    for (long prec : cfg.precisions) {
      if (prec < ts::kMinPrecision) throw ts::ValidationError("--precisions: every value must be >= 53");
      work.emplace_back(p, static_cast<ts::Precision>(prec));
    }
  const auto reps = ts::run_sweep<ts::VerificationReport>(work.size(), cfg.jobs, [&](std::size_t i) {
    const auto& [p, prec] = work[i];
    ts::VerifyOptions opts;
    opts.exact = false;
    opts.nonzero_only = true;
    opts.repetitions = cfg.repetitions;
    auto rep = ts::verify_point(p.n, p.r, p.s, prec, opts);
    rep.condition_numbers.clear();
    return rep;
  });
  write_reports(cfg, reps);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of Toeplitz matrices with two nonzero off-diagonals"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(TOEPLITZ_SPECTRA_BUILD_ID));
  Config cfg;

  const auto common = [&](CLI::App* sub, bool ranges) {
    sub->add_option("--n", cfg.n, ranges ? "matrix order, or range a:b" : "matrix order")->required();
    sub->add_option("--r", cfg.r, ranges ? "subdiagonal offset, or range a:b" : "subdiagonal offset")
        ->capture_default_str();
    sub->add_option("--s", cfg.s, ranges ? "superdiagonal offset, or range a:b" : "superdiagonal offset")
        ->capture_default_str();
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default: standard output)");
    sub->add_flag("--transpose-ok", cfg.transpose_ok, "swap r and s when r > s");
  };
  const auto precision = [&](CLI::App* sub) {
    sub->add_option("--precision", cfg.precision, "working precision in bits")
        ->envname("TOEPLITZ_SPECTRA_PRECISION")
        ->check(CLI::Range(static_cast<long>(ts::kMinPrecision), 1L << 24))
        ->capture_default_str();
  };

  auto* params = app.add_subcommand("params", "print the block parameters of (n, r, s)");
  common(params, false);

  auto* spectrum = app.add_subcommand("spectrum", "all eigenvalues of T_n(g_{r,s}) or of T_n(f)");
  common(spectrum, false);
  precision(spectrum);
  spectrum->add_option("--f0", cfg.f0, "diagonal coefficient, e.g. 1+2i");
  spectrum->add_option("--fr", cfg.fr, "coefficient on the r-th subdiagonal");
  spectrum->add_option("--fms", cfg.fms, "coefficient on the s-th superdiagonal");

  auto* bmatrix = app.add_subcommand("bmatrix", "dump the integer B matrix");
  common(bmatrix, false);
  bmatrix->add_flag("--raw", cfg.raw, "keep the corner perturbation");

  auto* charpoly = app.add_subcommand("charpoly", "exact characteristic polynomial of T_n(g_{r,s}) or B");
  common(charpoly, false);
  charpoly->add_flag("--bmatrix", cfg.bmatrix, "use the B matrix instead of T_n(g_{r,s})");

  auto* verify = app.add_subcommand("verify", "exact identity and numeric cross-check");
  common(verify, true);
  precision(verify);
  verify->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_flag("--nonzero-only", cfg.nonzero_only, "ignore exact zeros in the numeric error");
  verify->add_flag("--exact-only", cfg.exact_only, "skip the numeric cross-check");

  auto* bench = app.add_subcommand("bench", "time the algorithm against the dense oracle");
  common(bench, true);
  bench->add_option("--precisions", cfg.precisions, "precisions in bits")->delimiter(',')->capture_default_str();
  bench->add_option("--repetitions", cfg.repetitions, "repetitions per point (minimum is kept)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (params->parsed()) return run_params(cfg);
    if (spectrum->parsed()) return run_spectrum(cfg);
    if (bmatrix->parsed()) return run_bmatrix(cfg);
    if (charpoly->parsed()) return run_charpoly(cfg);
    if (verify->parsed()) return run_verify(cfg);
    if (bench->parsed()) return run_bench(cfg);
  } catch (const ts::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ts::ComputationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
