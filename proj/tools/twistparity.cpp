// twistparity: parity of ranks in quadratic twist families of elliptic curves.

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "twistparity/errors.hpp"
#include "twistparity/experiments.hpp"

using namespace twistparity;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;
constexpr int kUnsupported = 3;

struct CliConfig {
  std::string field = "Q";
  std::string curve;
  i64 x = 1000;
  std::string out;
  std::string format = "json";
  std::string parity;
  bool assume_principal_series = false;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  u64 seed = 1;
  int trials = 100;
  int mutate_row = 0;
};

std::optional<Parity> parity_flag(const CliConfig& c) {
  if (c.parity.empty()) return std::nullopt;
  return c.parity == "even" ? Parity::Even : Parity::Odd;
}

ParityOptions parity_options(const CliConfig& c) { return ParityOptions{c.mutate_row, c.assume_principal_series}; }

EllipticCurve load_curve(const CliConfig& c) {
  if (c.curve.empty()) throw Error(ErrorKind::Malformed, "--curve is required");
  return EllipticCurve::parse(Field::parse(c.field), c.curve);
}

std::string sign_str(int s) { return s > 0 ? "+1" : "-1"; }

int cmd_classify(const CliConfig& c) {
  const EllipticCurve e = load_curve(c);
  const ParityCalculus calc(e, parity_options(c));
  std::cout << "curve " << e.str() << " over " << e.field().str() << '\n';
  const auto places = bad_places(e);
  std::vector<std::pair<Place, Rational>> kappas;
  Rational kappa_total = 1;
  for (const auto& v : e.field().archimedean_places()) {
    const Rational k = calc.kappa_v_direct(v);
    kappa_total *= k;
    std::cout << std::left << std::setw(10) << v.label() << "  " << (v.kind == PlaceKind::Real ? "real" : "complex")
              << "  kappa_v = " << to_string(k) << "  w_v = -1\n";
  }
  if (places.empty()) std::cout << "no bad places\n";
  for (const auto& v : places) {
    const ReductionData rd = reduction_type(e, v);
    const LocalRepType rep = local_rep_type(e, v);
    const Rational k = calc.kappa_v_direct(v);
    kappa_total *= k;
    std::cout << std::left << std::setw(10) << v.label() << "  " << std::setw(16) << to_string(rd.type) << std::setw(34)
              << to_string(rep.variant);
    if (rd.is_multiplicative()) std::cout << "  mu(pi) = " << sign_str(rd.split_sign);
    std::cout << "  kappa_v = " << to_string(k);
    if (rep.variant == RepVariant::Unsupported) {
      std::cout << "  w_v = ? (assumed principal series)\n";
    } else {
      std::cout << "  w_v = " << sign_str(local_root_number(e, v)) << '\n';
    }
  }
  std::cout << "kappa = " << to_string(kappa_total) << '\n';
  return kPass;
}

int cmd_predict(const CliConfig& c) {
  const EllipticCurve e = load_curve(c);
  const KappaReport r = kappa(e, parity_flag(c), parity_options(c));
  for (const auto& [v, k] : r.local) std::cout << "kappa_" << v.label() << " = " << to_string(k) << '\n';
  std::cout << "kappa = " << to_string(r.kappa) << '\n';
  if (!r.parity) {
    throw Error(ErrorKind::ParityUnavailable, "rank parity is not certified for " + e.str() + "; pass --parity even|odd");
  }
  std::cout << "rank parity: " << to_string(*r.parity) << (c.parity.empty() ? "" : " (override)") << '\n';
  std::cout << "predicted even density: " << to_string(*r.predicted_even_density) << '\n';
  return kPass;
}

int cmd_scan(const CliConfig& c) {
  const EllipticCurve e = load_curve(c);
  ScanOptions opt;
  opt.workers = c.workers;
  opt.parity_override = parity_flag(c);
  opt.parity = parity_options(c);
  opt.oracle_height = std::min<i64>(c.x, 200);
  const ReportFormat format = parse_format(c.format);
  const DensityReport r = scan_density(e, c.x, opt);
  if (c.out.empty()) {
    write_report(std::cout, r, format);
  } else {
    emit_report(r, format, c.out);
  }
  std::cerr << "X = " << r.x << ": " << to_string(r.even) << " of " << to_string(r.total) << " twists even, fraction "
            << to_string(r.fraction) << " (approx. " << std::fixed << std::setprecision(4) << r.fraction.convert_to<double>()
            << "), predicted " << to_string(r.predicted) << ", oracle mismatches " << r.mismatches << " of "
            << r.oracle_checked << '\n';
  return r.mismatches == 0 ? kPass : kCheckFailed;
}

int report_oracle(const EllipticCurve& e, const OracleReport& rep) {
  std::cout << e.str() << " over " << e.field().str() << ": " << rep.checked << " twists checked, " << rep.unsupported
            << " uncertified, " << rep.mismatches.size() << " mismatches\n";
  for (size_t i = 0; i < rep.mismatches.size() && i < 5; ++i) {
    const auto& m = rep.mismatches[i];
    std::cout << "  delta = " << m.delta << ": predicted " << m.predicted << ", table " << m.table << ", twisted "
              << m.recomputed << "  [" << m.diagnostics << "]\n";
  }
  return rep.ok() ? kPass : kCheckFailed;
}

int cmd_verify(const CliConfig& c) {
  int status = kPass;
  if (!c.curve.empty()) {
    const EllipticCurve e = load_curve(c);
    status = report_oracle(e, oracle_crosscheck(e, c.x, parity_options(c), c.workers));
  } else {
    for (const auto& e : standard_corpus()) {
      status = std::max(status, report_oracle(e, oracle_crosscheck(e, c.x, parity_options(c), c.workers)));
    }
  }
  std::cout << (status == kPass ? "PASS" : "FAIL") << '\n';
  return status;
}

int cmd_lemmas(const CliConfig& c) {
  if (c.trials == 0) std::cerr << "warning: --trials 0, the counting identity is checked vacuously\n";
  const LemmaSummary s = run_lemmas(c.seed, c.trials, c.workers);
  std::cout << "counting identity: " << s.counting_trials - s.counting_failures << "/" << s.counting_trials << " configs\n";
  std::cout << "surjectivity over Q, Sigma = {inf,2,3,5}: " << s.surjectivity.hit << "/" << s.surjectivity.group_order
            << " classes hit\n";
  std::cout << "gauss sums: " << s.gauss_primes - s.gauss_failures << "/" << s.gauss_primes << " odd primes below 500\n";
  std::cout << (s.ok() ? "PASS" : "FAIL") << '\n';
  return s.ok() ? kPass : kCheckFailed;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedRepresentation:
    case ErrorKind::ParityUnavailable:
    case ErrorKind::UnsupportedPlace: return kUnsupported;
    case ErrorKind::Internal: return kCheckFailed;
    default: return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank parity in quadratic twist families: local sign tables, kappa and even-rank densities"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--field", cfg.field, "Base field: Q or Q(sqrt m)")->capture_default_str();
    sub->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto add_curve = [&](CLI::App* sub) {
    sub->add_option("--curve", cfg.curve, "Weierstrass coefficients [a1,a2,a3,a4,a6] or [a4,a6]");
    sub->add_flag("--assume-principal-series", cfg.assume_principal_series,
                  "Treat uncertified additive places as principal series");
    sub->add_option("--mutate-row", cfg.mutate_row, "Flip the sign of one table row (1-10) for mutation testing")
        ->check(CLI::Range(0, 10));
  };
  auto add_parity = [&](CLI::App* sub) {
    sub->add_option("--parity", cfg.parity, "Override the rank parity")->check(CLI::IsMember({"even", "odd"}));
  };

  auto* classify = app.add_subcommand("classify", "Reduction and representation type at every bad place");
  add_common(classify);
  add_curve(classify);
  auto* predict = app.add_subcommand("predict", "Global kappa and predicted even-rank density");
  add_common(predict);
  add_curve(predict);
  add_parity(predict);
  auto* scan = app.add_subcommand("scan", "Exact even-rank fraction over twists of norm at most X");
  add_common(scan);
  add_curve(scan);
  add_parity(scan);
  scan->add_option("--x", cfg.x, "Norm bound X")->check(CLI::Range(i64{1}, i64{1} << 40))->capture_default_str();
  scan->add_option("--out", cfg.out, "Output file (default: stdout)");
  scan->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  auto* verify = app.add_subcommand("verify", "Cross-check the sign table against twisted root numbers");
  add_common(verify);
  add_curve(verify);
  verify->add_option("--x", cfg.x, "Height bound for the twists")->check(CLI::Range(i64{1}, i64{1} << 40))->capture_default_str();
  auto* lemmas = app.add_subcommand("lemmas", "Counting identity, surjectivity and Gauss sums");
  add_common(lemmas);
  lemmas->add_option("--seed", cfg.seed, "Seed for randomized configurations")->capture_default_str();
  lemmas->add_option("--trials", cfg.trials, "Number of random configurations")->check(CLI::NonNegativeNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*classify) return cmd_classify(cfg);
    if (*predict) return cmd_predict(cfg);
    if (*scan) return cmd_scan(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*lemmas) return cmd_lemmas(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kInputError;
}
