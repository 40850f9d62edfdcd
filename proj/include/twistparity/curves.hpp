#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "twistparity/localfields.hpp"
#include "twistparity/numberfield.hpp"

namespace twistparity {

/// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6 over K.
class EllipticCurve {
 public:
  /// Throws SingularCurve.
  EllipticCurve(Field field, std::array<Element, 5> a);
  /// `[a1,a2,a3,a4,a6]` or `[a4,a6]`, entries in the element syntax of Field::parse_element.
  static EllipticCurve parse(const Field& field, std::string_view text);

  const Field& field() const { return field_; }
  const std::array<Element, 5>& coefficients() const { return a_; }
  const Element& a1() const { return a_[0]; }
  const Element& a2() const { return a_[1]; }
  const Element& a3() const { return a_[2]; }
  const Element& a4() const { return a_[3]; }
  const Element& a6() const { return a_[4]; }

  const Element& b2() const { return b2_; }
  const Element& b4() const { return b4_; }
  const Element& b6() const { return b6_; }
  const Element& b8() const { return b8_; }
  const Element& c4() const { return c4_; }
  const Element& c6() const { return c6_; }
  const Element& discriminant() const { return disc_; }
  Element j_invariant() const { return c4_ * c4_ * c4_ / disc_; }

  /// Model obtained from x = u²x' + r, y = u³y' + su²x' + t.
  EllipticCurve change_coordinates(const Element& u, const Element& r, const Element& s, const Element& t) const;

  std::string str() const;
  friend bool operator==(const EllipticCurve& x, const EllipticCurve& y) { return x.a_ == y.a_; }

 private:
  Field field_;
  std::array<Element, 5> a_;
  Element b2_, b4_, b6_, b8_, c4_, c6_, disc_;
};

struct Invariants {
  Element c4, c6, discriminant, j;
};
Invariants invariants(const EllipticCurve& e);

enum class ReductionType { Good, SplitMult, NonsplitMult, AdditivePotMult, AdditivePotGood };
const char* to_string(ReductionType t);

struct ReductionData {
  Place place;
  EllipticCurve minimal_model;
  ReductionType type;
  int split_sign = 0;  ///< μ(ϖ): +1 split, −1 nonsplit, 0 unless multiplicative
  int disc_valuation = 0;
  int c4_valuation = 0;
  int j_valuation = 0;

  bool is_multiplicative() const { return type == ReductionType::SplitMult || type == ReductionType::NonsplitMult; }
  bool is_additive() const { return type == ReductionType::AdditivePotMult || type == ReductionType::AdditivePotGood; }
};

/// Minimal model at a finite place by Tate's minimization loop.
EllipticCurve minimal_model_at(const EllipticCurve& e, const Place& v);
/// Memoized per (curve, place).
ReductionData reduction_type(const EllipticCurve& e, const Place& v);

/// y² = x³ − 27c4δ²x − 54c6δ³. Throws ZeroTwistParameter.
EllipticCurve quadratic_twist(const EllipticCurve& e, const Element& delta);

enum class RepVariant {
  PrincipalUnramified,
  PrincipalRamifiedQuadTwistOfGood,
  SpecialUnramified,
  SpecialRamifiedQuadratic,
  Unsupported,
};
const char* to_string(RepVariant r);

struct LocalRepType {
  RepVariant variant = RepVariant::Unsupported;
  int split_sign = 0;   ///< SpecialUnramified only
  int eta_class = -1;   ///< ramified class η of the completion with E^η good or multiplicative
};

LocalRepType local_rep_type(const EllipticCurve& e, const Place& v);

/// Archimedean places give −1. Throws UnsupportedRepresentation.
int local_root_number(const EllipticCurve& e, const Place& v);

/// Every finite place dividing the discriminant or a coefficient denominator; includes places
/// where the given model is merely non-minimal or non-integral.
std::vector<Place> bad_places(const EllipticCurve& e);

/// Global root number: product of local root numbers over archimedean and bad places.
int root_number(const EllipticCurve& e);

enum class Parity { Even, Odd };
const char* to_string(Parity p);
/// Parity of the analytic rank, read off the root number.
Parity rank_parity(const EllipticCurve& e);

}  // namespace twistparity
