#include "twistparity/heckechars.hpp"

#include <algorithm>
#include <thread>

#include "twistparity/errors.hpp"

namespace twistparity {

struct CharBuilder {
  // δ = unit_square_classes[unit_index] · ∏ generators of `support`.
  static QuadChar build(const Field& field, size_t unit_index, std::vector<Place> support) {
    std::sort(support.begin(), support.end());
    QuadChar chi(field);
    chi.unit_index_ = unit_index;
    chi.delta_ = field.unit_square_classes().at(unit_index);
    for (const auto& v : support) chi.delta_ *= v.generator;
    chi.support_ = std::move(support);
    chi.ramified_ = chi.support_;
    for (const auto& v : field.places_above(2)) {
      if (std::find(chi.support_.begin(), chi.support_.end(), v) != chi.support_.end()) continue;
      auto lf = field.completion(v);
      if (!lf->class_is_unramified(lf->class_of(chi.delta_))) chi.ramified_.push_back(v);
    }
    std::sort(chi.ramified_.begin(), chi.ramified_.end());
    for (const auto& v : field.archimedean_places()) {
      if (v.kind == PlaceKind::Real && field.real_sign(chi.delta_, v) < 0) chi.negative_real_.push_back(v);
    }
    for (const auto& v : chi.ramified_) chi.norm_ = std::max(chi.norm_, v.residue_norm);
    return chi;
  }
};

QuadChar make_char(const Field& field, const Element& delta) {
  if (delta.is_zero()) throw Error(ErrorKind::ZeroElement, "character of 0");
  const Integer d = field.denominator_of(delta);
  const Element y = delta * field.make(Rational(d));
  std::vector<i64> primes;
  for (i64 p : prime_factors(numerator(y.norm()))) primes.push_back(p);
  if (d != 1) {
    for (i64 p : prime_factors(d)) primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  Element rest = delta;
  std::vector<Place> support;
  for (i64 p : primes) {
    for (const auto& v : field.places_above(p)) {
      const int k = field.completion(v)->valuation(rest);
      if (k == 0) continue;
      rest = rest / v.generator.pow(k);
      if (k % 2 != 0) support.push_back(v);
    }
  }
  if (!field.is_integral(rest) || !field.is_integral(rest.inverse())) {
    throw Error(ErrorKind::Internal, "square-free part left a non-unit " + rest.str());
  }
  const auto& units = field.unit_square_classes();
  for (size_t i = 0; i < units.size(); ++i) {
    if (field.is_square(rest / units[i])) return CharBuilder::build(field, i, std::move(support));
  }
  throw Error(ErrorKind::Internal, "unit " + rest.str() + " matches no unit square class");
}

LocalCharacter localize(const QuadChar& chi, const Place& v) {
  auto lf = chi.field().completion(v);
  return LocalCharacter(lf, lf->class_of(chi.delta()));
}

std::vector<Place> primes_up_to_norm(const Field& field, i64 bound) {
  std::vector<Place> out;
  if (bound < 2) return out;
  for (i64 p : primes_up_to(bound)) {
    for (const auto& v : field.places_above(p)) {
      if (v.residue_norm <= bound) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QuadChar> enumerate_characters(const Field& field, i64 x, size_t guard) {
  const auto primes = primes_up_to_norm(field, x);
  const size_t units = field.unit_square_classes().size();
  if (primes.size() >= 63 || units * (size_t{1} << primes.size()) > guard) {
    throw Error(ErrorKind::ExplosionGuard, "C(K, " + std::to_string(x) + ") has " + std::to_string(units) + "·2^" +
                                               std::to_string(primes.size()) + " candidates, above the guard " +
                                               std::to_string(guard));
  }
  std::vector<QuadChar> out;
  for (size_t u = 0; u < units; ++u) {
    for (u64 mask = 0; mask < (u64{1} << primes.size()); ++mask) {
      std::vector<Place> support;
      for (size_t i = 0; i < primes.size(); ++i) {
        if ((mask >> i) & 1) support.push_back(primes[i]);
      }
      QuadChar chi = CharBuilder::build(field, u, std::move(support));
      if (chi.norm() <= x) out.push_back(std::move(chi));
    }
  }
  return out;
}

std::vector<QuadChar> characters_by_height(const Field& field, i64 height) {
  const auto primes = primes_up_to_norm(field, height);
  std::vector<std::vector<Place>> supports{{}};
  std::vector<Place> current;
  // Depth-first over increasing prime index with the running product of norms bounded.
  auto dfs = [&](auto&& self, size_t start, i64 product) -> void {
    for (size_t i = start; i < primes.size(); ++i) {
      if (product > height / primes[i].residue_norm) break;
      current.push_back(primes[i]);
      supports.push_back(current);
      self(self, i + 1, product * primes[i].residue_norm);
      current.pop_back();
    }
  };
  dfs(dfs, 0, 1);
  std::vector<QuadChar> out;
  for (size_t u = 0; u < field.unit_square_classes().size(); ++u) {
    for (const auto& s : supports) out.push_back(CharBuilder::build(field, u, s));
  }
  return out;
}

// ---------------------------------------------------------------------------------------------

LocalImageSpace::LocalImageSpace(const Field& field, std::vector<Place> places) : places_(std::move(places)) {
  for (const auto& v : places_) {
    completions_.push_back(field.completion(v));
    radix_.push_back(static_cast<size_t>(completions_.back()->num_classes()));
    size_ *= radix_.back();
  }
}

size_t LocalImageSpace::image(const Element& delta) const {
  size_t code = 0, stride = 1;
  for (size_t i = 0; i < places_.size(); ++i) {
    code += stride * static_cast<size_t>(completions_[i]->class_of(delta));
    stride *= radix_[i];
  }
  return code;
}

int LocalImageSpace::component(size_t element, size_t i) const {
  for (size_t j = 0; j < i; ++j) element /= radix_[j];
  return static_cast<int>(element % radix_[i]);
}

size_t LocalImageSpace::product(size_t a, size_t b) const {
  size_t code = 0, stride = 1;
  for (size_t i = 0; i < places_.size(); ++i) {
    const int ca = static_cast<int>(a % radix_[i]), cb = static_cast<int>(b % radix_[i]);
    code += stride * static_cast<size_t>(completions_[i]->class_product(ca, cb));
    a /= radix_[i];
    b /= radix_[i];
    stride *= radix_[i];
  }
  return code;
}

std::vector<FiberCounts> count_local_images(const Field& field, const std::vector<Place>& sigma, std::vector<i64> bounds,
                                            int workers) {
  if (bounds.empty()) return {};
  std::sort(bounds.begin(), bounds.end());
  std::vector<Place> tracked = sigma;
  for (const auto& v : field.places_above(2)) {
    if (std::find(tracked.begin(), tracked.end(), v) == tracked.end()) tracked.push_back(v);
  }
  const LocalImageSpace space(field, tracked);
  const LocalImageSpace sigma_space(field, sigma);

  std::vector<Element> basis = field.unit_generators();
  const size_t unit_count = basis.size();
  const auto primes = primes_up_to_norm(field, bounds.back());
  for (const auto& v : primes) basis.push_back(v.generator);

  std::vector<size_t> images(basis.size());
  const size_t nthreads = static_cast<size_t>(std::max(1, workers));
  {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nthreads);
    for (size_t w = 0; w < nthreads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (size_t i = w; i < basis.size(); i += nthreads) images[i] = space.image(basis[i]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const size_t n = space.size();
  std::vector<std::vector<size_t>> table;
  if (n <= 4096) {
    table.assign(n, std::vector<size_t>(n));
    for (size_t a = 0; a < n; ++a) {
      for (size_t b = 0; b < n; ++b) table[a][b] = space.product(a, b);
    }
  }
  auto product = [&](size_t a, size_t b) { return table.empty() ? space.product(a, b) : table[a][b]; };

  std::vector<Integer> dist(n, Integer(0)), next(n);
  dist[0] = 1;
  auto fold = [&](size_t img) {
    for (size_t g = 0; g < n; ++g) next[g] = dist[g] + dist[product(g, img)];
    dist.swap(next);
  };
  for (size_t i = 0; i < unit_count; ++i) fold(images[i]);

  std::vector<FiberCounts> out;
  size_t next_prime = 0;
  for (i64 bound : bounds) {
    while (next_prime < primes.size() && primes[next_prime].residue_norm <= bound) fold(images[unit_count + next_prime++]);
    FiberCounts fc;
    fc.bound = bound;
    fc.total = 0;
    fc.counts.assign(sigma_space.size(), Integer(0));
    for (size_t g = 0; g < n; ++g) {
      if (dist[g] == 0) continue;
      bool admissible = true;
      for (size_t i = 0; i < tracked.size() && admissible; ++i) {
        if (!tracked[i].is_finite() || tracked[i].residue_norm <= bound) continue;
        admissible = space.completion(i)->class_is_unramified(space.component(g, i));
      }
      if (!admissible) continue;
      // Σ occupies the low mixed-radix digits of the tracked encoding.
      fc.counts[g % sigma_space.size()] += dist[g];
      fc.total += dist[g];
    }
    out.push_back(std::move(fc));
  }
  return out;
}

namespace {

SurjectivityReport summarize(const std::vector<Integer>& counts) {
  SurjectivityReport r;
  r.group_order = counts.size();
  r.characters = 0;
  bool first = true;
  for (const auto& c : counts) {
    if (c > 0) ++r.hit;
    r.characters += c;
    if (first || c < r.min_fiber) r.min_fiber = c;
    if (first || c > r.max_fiber) r.max_fiber = c;
    first = false;
  }
  return r;
}

}  // namespace

SurjectivityReport surjectivity_check(const Field& field, const std::vector<Place>& sigma, i64 x) {
  return summarize(count_local_images(field, sigma, {x}).at(0).counts);
}

SurjectivityReport surjectivity_check_enumerated(const Field& field, const std::vector<Place>& sigma, i64 x, size_t guard) {
  const LocalImageSpace space(field, sigma);
  std::vector<Integer> counts(space.size(), Integer(0));
  for (const auto& chi : enumerate_characters(field, x, guard)) counts[space.image(chi.delta())] += 1;
  return summarize(counts);
}

}  // namespace twistparity
