#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "twistparity/localfields.hpp"
#include "twistparity/numberfield.hpp"

namespace twistparity {

/// A quadratic Hecke character of K, named by its square class δ.
class QuadChar {
 public:
  const Field& field() const { return field_; }
  /// Canonical representative: an element of the unit transversal times distinct prime generators.
  const Element& delta() const { return delta_; }
  size_t unit_index() const { return unit_index_; }
  /// Places dividing δ exactly once, sorted.
  const std::vector<Place>& support() const { return support_; }
  /// Finite places where K_v(√δ)/K_v ramifies, sorted.
  const std::vector<Place>& ramified_places() const { return ramified_; }
  /// Real places where δ is negative.
  const std::vector<Place>& negative_real_places() const { return negative_real_; }
  /// Largest residue norm among finite ramified places; 1 if there are none.
  i64 norm() const { return norm_; }
  bool is_trivial() const { return unit_index_ == 0 && support_.empty(); }

  friend bool operator==(const QuadChar& x, const QuadChar& y) { return x.delta_ == y.delta_; }

 private:
  friend struct CharBuilder;
  explicit QuadChar(Field field) : field_(std::move(field)) {}

  Field field_;
  Element delta_;
  size_t unit_index_ = 0;
  std::vector<Place> support_;
  std::vector<Place> ramified_;
  std::vector<Place> negative_real_;
  i64 norm_ = 1;
};

/// Throws ZeroElement.
QuadChar make_char(const Field& field, const Element& delta);
LocalCharacter localize(const QuadChar& chi, const Place& v);

/// Prime elements generating every prime ideal of norm ≤ bound, ordered by (norm, p, conjugate index).
std::vector<Place> primes_up_to_norm(const Field& field, i64 bound);

/// C(K, X) by literal enumeration of unit classes × subsets of primes of norm ≤ X.
/// Order: unit index, then subsets in binary order over primes_up_to_norm.
/// Throws ExplosionGuard when more than `guard` candidates would be visited.
std::vector<QuadChar> enumerate_characters(const Field& field, i64 x, size_t guard = size_t{1} << 20);

/// Unit classes × products of distinct prime generators with product of norms ≤ height.
std::vector<QuadChar> characters_by_height(const Field& field, i64 height);

/// Γ = ∏_{v∈Σ} c_v encoded in mixed radix over the listed places.
class LocalImageSpace {
 public:
  explicit LocalImageSpace(const Field& field, std::vector<Place> places);

  const std::vector<Place>& places() const { return places_; }
  const std::shared_ptr<const LocalField>& completion(size_t i) const { return completions_[i]; }
  size_t size() const { return size_; }
  size_t image(const Element& delta) const;
  size_t product(size_t a, size_t b) const;
  /// Class index at place i of the encoded element.
  int component(size_t element, size_t i) const;

 private:
  std::vector<Place> places_;
  std::vector<std::shared_ptr<const LocalField>> completions_;
  std::vector<size_t> radix_;
  size_t size_ = 1;
};

/// Exact counts of characters in C(K, X) by their image in Γ_Σ, for several bounds X.
struct FiberCounts {
  i64 bound = 0;
  Integer total;
  std::vector<Integer> counts;  ///< indexed by LocalImageSpace encoding over Σ
};

/// Counts every χ ∈ C(K, X) without listing them: the images of the F_2-basis (unit generators and
/// prime generators) are folded into a distribution over Γ with count'[γ] = count[γ] + count[γ·b].
/// The 2-adic places outside Σ are tracked so that characters ramified at a place of norm > X are
/// excluded. `workers` threads compute local images; results do not depend on it.
std::vector<FiberCounts> count_local_images(const Field& field, const std::vector<Place>& sigma, std::vector<i64> bounds,
                                            int workers = 1);

struct SurjectivityReport {
  size_t group_order = 0;
  size_t hit = 0;
  Integer min_fiber;
  Integer max_fiber;
  Integer characters;
  bool surjective() const { return hit == group_order; }
  double coverage() const { return group_order ? static_cast<double>(hit) / static_cast<double>(group_order) : 1.0; }
};

SurjectivityReport surjectivity_check(const Field& field, const std::vector<Place>& sigma, i64 x);
/// The same tally obtained by localizing the literal enumeration.
SurjectivityReport surjectivity_check_enumerated(const Field& field, const std::vector<Place>& sigma, i64 x,
                                                 size_t guard = size_t{1} << 20);

}  // namespace twistparity
