#pragma once

#include <optional>
#include <vector>

#include "twistparity/curves.hpp"
#include "twistparity/heckechars.hpp"
#include "twistparity/localfields.hpp"

namespace twistparity {

/// ±1.
class SignValue {
 public:
  SignValue() = default;
  /// Throws Internal unless s = ±1.
  explicit SignValue(int s);
  int value() const { return value_; }
  bool is_plus() const { return value_ == 1; }
  SignValue operator-() const { return SignValue(-value_); }
  SignValue& operator*=(SignValue o) {
    value_ *= o.value_;
    return *this;
  }
  friend SignValue operator*(SignValue a, SignValue b) { return a *= b; }
  friend bool operator==(SignValue a, SignValue b) { return a.value_ == b.value_; }
  friend bool operator!=(SignValue a, SignValue b) { return a.value_ != b.value_; }

 private:
  int value_ = 1;
};

struct PlacePartition {
  std::vector<Place> real_places;
  std::vector<Place> sigma1;     ///< multiplicative reduction
  std::vector<Place> sigma2;     ///< additive, potentially multiplicative
  std::vector<Place> other_bad;  ///< bad places of the model with principal-series type
};

/// Row (1–10) of the root-number-change table for a local type and a local character class at v.
int table_row(const LocalRepType& rep, const LocalField& v, int chi_class);

/// Per-curve precomputation of the local sign tables at every bad place.
/// `mutate_row` ∈ {0, 1..10}: flips the sign produced by that table row (0 = faithful table).
/// With `assume_principal_series`, uncertified additive places are treated as principal series:
/// they land in other_bad (κ_v = 1) and n_v there throws UnsupportedRepresentation.
struct ParityOptions {
  int mutate_row = 0;
  bool assume_principal_series = false;
};

class ParityCalculus {
 public:
  explicit ParityCalculus(EllipticCurve curve, ParityOptions options = {});

  const EllipticCurve& curve() const { return curve_; }
  const PlacePartition& partition() const { return partition_; }
  const ParityOptions& options() const { return options_; }

  /// n_v(χ_v) from the table; works at any finite place (good places use rows 1–2).
  SignValue n_v(const Place& v, int chi_class) const;
  /// m_v(χ_v) = χ_v(−1)·n_v(χ_v) on Σ₁ ∪ Σ₂. Throws WrongRepClass elsewhere.
  SignValue m_v(const Place& v, int chi_class) const;
  int row(const Place& v, int chi_class) const;

  /// ∏_{real v} χ_v(−1) · ∏_{Σ₁∪Σ₂} m_v(χ): +1 iff the twist keeps the rank parity.
  SignValue parity_change(const QuadChar& chi) const;
  /// ∏ n_v(χ_v) over finite places where χ_v or π_v ramifies.
  SignValue root_number_change(const QuadChar& chi) const;

  /// (1/|c_v|)·Σ m_v over the local characters; real places give 0, complex places 1.
  Rational kappa_v_direct(const Place& v) const;

 private:
  struct PlaceTable {
    Place place;
    std::shared_ptr<const LocalField> completion;
    LocalRepType rep;
    std::vector<int> rows;
    std::vector<int> n;
  };
  const PlaceTable* find(const Place& v) const;
  PlaceTable build(const Place& v) const;
  PlaceTable build_rows(PlaceTable t) const;

  EllipticCurve curve_;
  ParityOptions options_;
  PlacePartition partition_;
  std::vector<PlaceTable> tables_;
};

/// Convenience wrapper over ParityCalculus.
SignValue parity_change(const EllipticCurve& e, const QuadChar& chi);

enum class ScenarioKind { Real, Complex, Split, Nonsplit, PotMultQuadratic, PotMultNonquadratic, Other };
const char* to_string(ScenarioKind k);

/// κ_v in closed form: 0, 1, 2/|c|−1, 1−2/|c|, 1−2/|c|, 1, 1.
Rational kappa_closed_form(ScenarioKind kind, int c_size);
ScenarioKind scenario_of(const ParityCalculus& calc, const Place& v);

struct KappaReport {
  std::vector<std::pair<Place, Rational>> local;  ///< real places and Σ₁ ∪ Σ₂
  Rational kappa;
  std::optional<Parity> parity;
  std::optional<Rational> predicted_even_density;
};

/// Closed-form κ_v at every contributing place, checked against direct averaging (Internal on mismatch).
KappaReport kappa(const EllipticCurve& e, std::optional<Parity> parity_override = std::nullopt,
                  ParityOptions options = {});

/// (1 + (−1)^rk κ)/2. Throws ParityUnavailable if the parity cannot be certified and no override is given.
Rational predicted_even_density(const EllipticCurve& e, std::optional<Parity> parity_override = std::nullopt,
                                ParityOptions options = {});
Rational predicted_even_density(const Rational& kappa, Parity parity);

/// One local factor of an abstract Γ.
struct Scenario {
  ScenarioKind kind = ScenarioKind::Other;
  int c_size = 4;      ///< |c_v|: 2 (real), 1 (complex), 4 (odd p), 8 or 16 (above 2)
  int q_mod4 = 1;      ///< residue field size mod 4 when c_size = 4
  int mu_sign = 1;     ///< μ(ϖ) for Σ₂ scenarios (the unramified part of μ at ϖ)
};
using GammaConfig = std::vector<Scenario>;

/// m_v over the local character group of a concrete local field realizing the scenario:
/// ℝ, ℂ, ℚ_5 (q ≡ 1), ℚ_3 (q ≡ 3), ℚ_2 (|c| = 8), ℚ(i) at 1+i (|c| = 16).
std::vector<int> scenario_signs(const Scenario& s);

struct CountingResult {
  Rational fraction;
  Rational predicted;
  bool equal = false;
  Integer group_order;
};

/// Exhaustive count over Γ of the +1 parity products against (1 + ∏κ_v)/2.
/// Throws ExplosionGuard above `guard` elements. Shards across `workers` threads.
CountingResult counting_check(const GammaConfig& config, int workers = 1, u64 guard = 100000000);

/// |τ² − p·(−1/p)| < 10⁻⁶ for the quadratic Gauss sum modulo an odd prime p.
bool gauss_sum_check(i64 p, double* error = nullptr);

}  // namespace twistparity
