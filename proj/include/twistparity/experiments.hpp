#pragma once

#include <iosfwd>
#include <random>
#include <optional>
#include <string>
#include <vector>

#include "twistparity/parity.hpp"

namespace twistparity {

struct BucketRow {
  i64 bound = 0;
  Integer total;
  Integer even;
  Rational fraction() const { return total == 0 ? Rational(0) : Rational(even, total); }
  friend bool operator==(const BucketRow&, const BucketRow&) = default;
};

struct DensityReport {
  std::string field;
  std::string curve;
  i64 x = 0;
  Parity parity = Parity::Even;
  Integer total;
  Integer even;
  Rational fraction;
  Rational predicted;
  std::vector<BucketRow> series;  ///< bounds X/10, 2X/10, …, X (bounds below 1 are dropped)
  u64 mismatches = 0;
  u64 oracle_checked = 0;

  friend bool operator==(const DensityReport&, const DensityReport&) = default;
};

struct ScanOptions {
  int workers = 1;
  int buckets = 10;
  std::optional<Parity> parity_override;
  ParityOptions parity;
  /// Characters of height ≤ oracle_height are cross-checked against the twisted curves (0 = skip).
  i64 oracle_height = 0;
};

/// Exact tally of rk(E^χ) even over C(K, X); counts come from count_local_images over
/// Σ = real places ∪ Σ₁ ∪ Σ₂, on which the parity change depends.
DensityReport scan_density(const EllipticCurve& e, i64 x, const ScanOptions& options = {});

struct Mismatch {
  std::string delta;
  int predicted = 0;   ///< parity_change·w(E)
  int table = 0;       ///< root_number_change·w(E)
  int recomputed = 0;  ///< w(E^δ) from the twisted model
  std::string diagnostics;
};

struct OracleReport {
  u64 checked = 0;
  u64 unsupported = 0;  ///< twists whose root number could not be certified
  std::vector<Mismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// w(E^δ) for each character, recomputed from the twisted model; 0 marks an uncertified twist.
std::vector<int> twisted_root_numbers(const EllipticCurve& e, const std::vector<QuadChar>& chars, int workers = 1);

/// Compares both table paths against precomputed twisted root numbers.
OracleReport compare_with_oracle(const ParityCalculus& calc, const std::vector<QuadChar>& chars,
                                 const std::vector<int>& twisted);

/// Every χ with product of ramified norms ≤ height (over ℚ: all squarefree |δ| ≤ height).
OracleReport oracle_crosscheck(const EllipticCurve& e, i64 height, ParityOptions options = {}, int workers = 1);

/// The standard corpus for cross-checks: one curve per reachable table row combination.
std::vector<EllipticCurve> standard_corpus();

enum class ReportFormat { Json, Csv };
ReportFormat parse_format(std::string_view s);

void write_report(std::ostream& out, const DensityReport& r, ReportFormat format);
/// Throws IoError.
void emit_report(const DensityReport& r, ReportFormat format, const std::string& path);
/// Inverse of the json serialization. Throws Malformed.
DensityReport parse_json_report(std::string_view text);

struct CurveSearch {
  int coefficient_bound = 1;
  i64 max_norm = 200;  ///< residue norm cap for the special place
  std::optional<Parity> parity;
  ScenarioKind kind = ScenarioKind::Split;
};

/// First integral model (lexicographic in a1..a6 over small coordinates) whose only special place
/// is a single odd place of the requested kind, with every other bad place principal unramified.
std::optional<EllipticCurve> search_curve(const Field& field, const CurveSearch& params);

/// Random local configurations mixing real, complex, split, nonsplit and both pot-mult kinds
/// with |c_v| ∈ {1, 2, 4, 8, 16}.
std::vector<GammaConfig> random_gamma_configs(u64 seed, int count, int max_places = 5);

struct LemmaSummary {
  int counting_trials = 0;
  int counting_failures = 0;
  SurjectivityReport surjectivity;  ///< over ℚ with Σ = {∞, 2, 3, 5}
  int gauss_primes = 0;
  int gauss_failures = 0;
  bool ok() const { return counting_failures == 0 && surjectivity.surjective() && gauss_failures == 0; }
};

/// Counting identity on `trials` random configurations, surjectivity at X = surjectivity_x,
/// and the Gauss-sum identity for odd p < 500.
LemmaSummary run_lemmas(u64 seed, int trials, int workers = 1, i64 surjectivity_x = 100);

}  // namespace twistparity
