#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twistparity/arith.hpp"

namespace twistparity {

/// a + b·√m. Rational elements carry m = 0 and b = 0.
class Element {
 public:
  Element() = default;
  Element(long n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  Element(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  Element(Rational a, Rational b, i64 m);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  i64 m() const { return m_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  Element conj() const;
  Rational norm() const;
  Rational trace() const { return 2 * a_; }
  Element inverse() const;
  Element pow(int k) const;

  Element operator-() const;
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Element& o);
  Element& operator/=(const Element& o);
  friend Element operator+(Element x, const Element& y) { return x += y; }
  friend Element operator-(Element x, const Element& y) { return x -= y; }
  friend Element operator*(Element x, const Element& y) { return x *= y; }
  friend Element operator/(Element x, const Element& y) { return x /= y; }
  friend bool operator==(const Element& x, const Element& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }

  /// Total order used only for deterministic sorting.
  friend bool operator<(const Element& x, const Element& y) {
    return x.a_ != y.a_ ? x.a_ < y.a_ : x.b_ < y.b_;
  }

  /// `a`, `b*w`, or `a+b*w`.
  std::string str() const;

 private:
  void adopt(const Element& o);

  Rational a_;
  Rational b_;
  i64 m_ = 0;
};

enum class PlaceKind { Real, Complex, Finite };
enum class Splitting { Rational, Split, Inert, Ramified };

const char* to_string(Splitting s);

struct Place {
  PlaceKind kind = PlaceKind::Finite;
  i64 p = 0;  ///< rational prime below (finite places only)
  Splitting splitting = Splitting::Rational;
  /// Real embedding index (0: √m > 0, 1: √m < 0), or conjugate index 1/2 at split primes.
  int index = 0;
  Element generator;  ///< prime element generating the ideal
  i64 residue_norm = 0;
  int ramification = 1;
  int inertia = 1;

  bool is_finite() const { return kind == PlaceKind::Finite; }
  std::string label() const;

  friend bool operator==(const Place& x, const Place& y) {
    return x.kind == y.kind && x.p == y.p && x.index == y.index;
  }
  friend bool operator<(const Place& x, const Place& y) {
    if (x.kind != y.kind) return x.kind < y.kind;
    if (x.residue_norm != y.residue_norm) return x.residue_norm < y.residue_norm;
    if (x.p != y.p) return x.p < y.p;
    return x.index < y.index;
  }
};

class LocalField;

enum class FieldKind { Rational, Quadratic };

/// ℚ or a class-number-one quadratic field ℚ(√m). Cheap to copy; places and completions are memoized
/// in shared state guarded by a mutex (writes are idempotent).
class Field {
 public:
  static Field rational();
  /// Throws NotSquarefree / ClassNumberNotOne / Malformed.
  static Field quadratic(i64 m);
  /// `Q` or `Q(sqrt m)`.
  static Field parse(std::string_view text);

  FieldKind kind() const;
  bool is_rational() const { return kind() == FieldKind::Rational; }
  i64 m() const;
  i64 disc() const;
  int degree() const { return is_rational() ? 1 : 2; }
  int class_number() const;
  std::string str() const;

  /// Integral basis {1, ω}: ω = √m, or (1+√m)/2 when m ≡ 1 mod 4. ω² = tω − n.
  Element omega() const;
  i64 omega_trace() const;
  i64 omega_norm() const;
  Element sqrt_m() const;

  /// Coordinates in the basis {1, ω}.
  std::pair<Rational, Rational> omega_coords(const Element& x) const;
  Element from_omega(const Integer& c0, const Integer& c1) const;
  bool is_integral(const Element& x) const;
  /// Smallest positive integer d with d·x integral.
  Integer denominator_of(const Element& x) const;

  Element make(const Rational& a, const Rational& b = 0) const;
  Element parse_element(std::string_view text) const;
  bool is_square(const Element& x) const;

  /// {1} followed by a transversal of O_K^× / (O_K^×)²; its nontrivial generators are unit_generators().
  const std::vector<Element>& unit_square_classes() const;
  const std::vector<Element>& unit_generators() const;
  /// Fundamental unit of a real quadratic field.
  std::optional<Element> fundamental_unit() const;

  std::vector<Place> archimedean_places() const;
  int real_place_count() const;
  /// Throws GeneratorSearchExhausted.
  const std::vector<Place>& places_above(i64 p) const;
  /// Sign of x under the real embedding of `place`.
  int real_sign(const Element& x, const Place& place) const;

  /// Memoized completion at a finite place (see localfields).
  std::shared_ptr<const LocalField> completion(const Place& place) const;

  friend bool operator==(const Field& x, const Field& y) { return x.m() == y.m(); }

 private:
  struct Impl;
  explicit Field(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

/// Class number of the quadratic field with fundamental discriminant `disc`
/// (reduced-form count for disc < 0; cycles of reduced indefinite forms for disc > 0).
int quadratic_class_number(i64 disc);

/// Squarefree kernel test helper exposed for parsing.
bool squarefree_m(i64 m);

}  // namespace twistparity
