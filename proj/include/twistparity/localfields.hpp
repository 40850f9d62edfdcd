#pragma once

#include <memory>
#include <vector>

#include "twistparity/numberfield.hpp"

namespace twistparity {

/// O_v / 𝔭^precision, realized either as ℤ/p^j (degree-one residue map through a root of the
/// minimal polynomial of ω) or as (ℤ/p^j)[ω].
class ResidueRing {
 public:
  struct Value {
    i64 c0 = 0;
    i64 c1 = 0;
    friend bool operator==(const Value& x, const Value& y) { return x.c0 == y.c0 && x.c1 == y.c1; }
    friend bool operator!=(const Value& x, const Value& y) { return !(x == y); }
  };

  /// ℤ/p^j through ω ↦ root. `ramification` is 1 unless this is the residue field of a ramified prime.
  static ResidueRing degree_one(i64 p, int j, i64 root, int ramification);
  /// (ℤ/p^j)[ω] with ω² = tω − n; `ramification` ∈ {1, 2}.
  static ResidueRing degree_two(i64 p, int j, i64 t, i64 n, int ramification);

  i64 p() const { return p_; }
  i64 modulus() const { return modulus_; }
  /// Exponent N with this ring equal to O_v / 𝔭^N.
  int precision() const { return precision_; }
  bool is_degree_two() const { return degree_two_; }
  /// Cardinality when this is a residue field (precision 1), else the number of representatives.
  i64 size() const { return degree_two_ ? modulus_ * modulus_ : modulus_; }

  Value reduce(const Field& field, const Element& integral) const;
  Value from_int(i64 c) const;
  Element lift(const Field& field, const Value& v) const;

  Value add(const Value& x, const Value& y) const;
  Value sub(const Value& x, const Value& y) const;
  Value neg(const Value& x) const;
  Value mul(const Value& x, const Value& y) const;
  Value pow(Value x, u64 e) const;
  Value inv(const Value& x) const;
  bool is_zero(const Value& x) const { return x.c0 == 0 && x.c1 == 0; }
  /// 𝔭-adic valuation, capped at precision().
  int valuation(const Value& x) const;

  std::vector<Value> elements() const;
  size_t index_of(const Value& x) const { return static_cast<size_t>(x.c0 + (degree_two_ ? x.c1 * modulus_ : 0)); }

 private:
  i64 p_ = 0;
  int j_ = 1;
  i64 modulus_ = 1;
  int precision_ = 1;
  bool degree_two_ = false;
  int ramification_ = 1;
  i64 root_ = 0;
  i64 t_ = 0;
  i64 n_ = 0;
};

struct TwoAdicTables;

/// A completion K_v: ℝ, ℂ, or a finite extension of ℚ_p of degree ≤ 2. Local elements are global
/// field elements read v-adically.
class LocalField {
 public:
  /// Prefer Field::completion, which memoizes.
  LocalField(Field field, Place place);

  const Field& field() const { return field_; }
  const Place& place() const { return place_; }
  PlaceKind kind() const { return place_.kind; }
  bool is_finite() const { return place_.is_finite(); }
  i64 residue_char() const { return place_.p; }
  int ramification_index() const { return e_; }
  int inertia_degree() const { return f_; }
  i64 residue_size() const { return q_; }
  const Element& uniformizer() const { return uniformizer_; }
  /// Recorded 𝔭-adic precision 2·e·v(2)+5 (0 at archimedean places). The p = 2 searches themselves
  /// run at 𝔭^(2e+3), already past the Hensel threshold.
  int working_precision() const { return working_precision_; }

  /// Throws ZeroElement; Internal at archimedean places.
  int valuation(const Element& x) const;

  struct Normalized {
    int valuation;
    ResidueRing::Value unit;  ///< residue of x / ϖ^valuation
  };
  Normalized normalize(const Element& x, const ResidueRing& ring) const;

  const ResidueRing& residue_field() const { return residue_field_; }
  /// Residue of a v-integral element.
  ResidueRing::Value reduce(const Element& x) const;
  Element lift(const ResidueRing::Value& r) const { return residue_field_.lift(field_, r); }

  bool is_square(const Element& x) const;
  /// (x, y)_v.
  int hilbert_symbol(const Element& x, const Element& y) const;

  /// Square classes of K_v^×: index 0 is the trivial class.
  int num_classes() const;
  int class_of(const Element& x) const;
  const Element& class_representative(int index) const { return class_reps_.at(static_cast<size_t>(index)); }
  int class_product(int i, int j) const;
  /// (x, y)_v on class indices.
  int class_symbol(int i, int j) const;
  /// K_v(√δ)/K_v unramified or trivial.
  bool class_is_unramified(int index) const;
  /// The nontrivial unramified class (absent at archimedean places).
  int unramified_class() const;

 private:
  int tame_symbol(const Element& x, const Element& y) const;

  struct Decomposition {
    int valuation;
    Element unit_numerator;
    int denominator_p_power;
    Integer denominator_rest;
  };
  Decomposition decompose(const Element& x) const;
  ResidueRing::Value residue_of(const Decomposition& d, const ResidueRing& ring) const;
  ResidueRing make_ring(int j) const;

  Field field_;
  Place place_;
  int e_ = 1;
  int f_ = 1;
  i64 q_ = 0;
  int working_precision_ = 0;
  Element uniformizer_;
  Element tau_;  // p / ϖ^e, an integral v-unit
  i64 split_root_ = 0;
  ResidueRing residue_field_;
  std::vector<Element> class_reps_;
  std::shared_ptr<const TwoAdicTables> two_adic_;
};

/// A quadratic character x ↦ (x, δ)_v named by the square class of δ.
class LocalCharacter {
 public:
  LocalCharacter(std::shared_ptr<const LocalField> field, int class_index)
      : field_(std::move(field)), class_(class_index) {}

  const LocalField& field() const { return *field_; }
  std::shared_ptr<const LocalField> field_ptr() const { return field_; }
  int class_index() const { return class_; }
  const Element& delta() const { return field_->class_representative(class_); }

  bool is_trivial() const { return class_ == 0; }
  bool is_ramified() const { return !field_->class_is_unramified(class_); }
  int operator()(const Element& x) const;

  LocalCharacter operator*(const LocalCharacter& o) const {
    return LocalCharacter(field_, field_->class_product(class_, o.class_));
  }
  friend bool operator==(const LocalCharacter& x, const LocalCharacter& y) { return x.class_ == y.class_; }

 private:
  std::shared_ptr<const LocalField> field_;
  int class_;
};

std::shared_ptr<const LocalField> completion(const Field& field, const Place& place);
int valuation(const Element& x, const LocalField& v);
bool is_square_local(const Element& x, const LocalField& v);
int hilbert_symbol(const Element& x, const Element& y, const LocalField& v);
/// Trivial character first.
std::vector<LocalCharacter> local_quadratic_characters(const std::shared_ptr<const LocalField>& v);
int eval_local_char(const LocalCharacter& chi, const Element& x);

/// 2 (real), 1 (complex), 4 (odd p), 2^(e·f+2) (p = 2).
int expected_class_count(const LocalField& v);

}  // namespace twistparity
