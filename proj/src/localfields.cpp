#include "twistparity/localfields.hpp"

#include <algorithm>

#include "field_impl.hpp"
#include "twistparity/errors.hpp"

namespace twistparity {

// ---------------------------------------------------------------------------------------------
// ResidueRing

namespace {

i64 ipow(i64 p, int j) {
  i64 r = 1;
  for (int i = 0; i < j; ++i) r *= p;
  return r;
}

int vp_capped(i64 c, i64 p, int cap) {
  if (c == 0) return cap;
  int v = 0;
  while (c % p == 0 && v < cap) {
    c /= p;
    ++v;
  }
  return v;
}

}  // namespace

ResidueRing ResidueRing::degree_one(i64 p, int j, i64 root, int ramification) {
  if (ramification == 2 && j != 1) throw Error(ErrorKind::Internal, "degree-one ramified ring must be a residue field");
  ResidueRing r;
  r.p_ = p;
  r.j_ = j;
  r.modulus_ = ipow(p, j);
  r.precision_ = ramification == 2 ? 1 : j;
  r.degree_two_ = false;
  r.ramification_ = ramification;
  r.root_ = ((root % r.modulus_) + r.modulus_) % r.modulus_;
  return r;
}

ResidueRing ResidueRing::degree_two(i64 p, int j, i64 t, i64 n, int ramification) {
  ResidueRing r;
  r.p_ = p;
  r.j_ = j;
  r.modulus_ = ipow(p, j);
  r.precision_ = ramification * j;
  r.degree_two_ = true;
  r.ramification_ = ramification;
  r.t_ = ((t % r.modulus_) + r.modulus_) % r.modulus_;
  r.n_ = ((n % r.modulus_) + r.modulus_) % r.modulus_;
  return r;
}

ResidueRing::Value ResidueRing::reduce(const Field& field, const Element& integral) const {
  auto [c0, c1] = field.omega_coords(integral);
  if (denominator(c0) != 1 || denominator(c1) != 1) throw Error(ErrorKind::Internal, "reducing a non-integral element");
  i64 r0 = mod(numerator(c0), modulus_), r1 = mod(numerator(c1), modulus_);
  if (degree_two_) return Value{r0, r1};
  return Value{(r0 + mulmod(r1, root_, modulus_)) % modulus_, 0};
}

ResidueRing::Value ResidueRing::from_int(i64 c) const { return Value{((c % modulus_) + modulus_) % modulus_, 0}; }

Element ResidueRing::lift(const Field& field, const Value& v) const {
  if (degree_two_) return field.from_omega(Integer(v.c0), Integer(v.c1));
  return field.make(Rational(v.c0));
}

ResidueRing::Value ResidueRing::add(const Value& x, const Value& y) const {
  return Value{(x.c0 + y.c0) % modulus_, (x.c1 + y.c1) % modulus_};
}

ResidueRing::Value ResidueRing::sub(const Value& x, const Value& y) const {
  return Value{(x.c0 - y.c0 + modulus_) % modulus_, (x.c1 - y.c1 + modulus_) % modulus_};
}

ResidueRing::Value ResidueRing::neg(const Value& x) const { return Value{(modulus_ - x.c0) % modulus_, (modulus_ - x.c1) % modulus_}; }

ResidueRing::Value ResidueRing::mul(const Value& x, const Value& y) const {
  if (!degree_two_) return Value{mulmod(x.c0, y.c0, modulus_), 0};
  // (a0 + a1ω)(b0 + b1ω) with ω² = tω − n
  i64 a1b1 = mulmod(x.c1, y.c1, modulus_);
  i64 c0 = (mulmod(x.c0, y.c0, modulus_) - mulmod(a1b1, n_, modulus_) + modulus_) % modulus_;
  i64 c1 = (mulmod(x.c0, y.c1, modulus_) + mulmod(x.c1, y.c0, modulus_) + mulmod(a1b1, t_, modulus_)) % modulus_;
  return Value{c0, c1};
}

ResidueRing::Value ResidueRing::pow(Value x, u64 e) const {
  Value r = from_int(1);
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

ResidueRing::Value ResidueRing::inv(const Value& x) const {
  if (!degree_two_) return Value{invmod(x.c0, modulus_), 0};
  // conj(a0 + a1ω) = (a0 + t a1) − a1ω
  Value conj{(x.c0 + mulmod(t_, x.c1, modulus_)) % modulus_, (modulus_ - x.c1) % modulus_};
  Value nrm = mul(x, conj);
  if (nrm.c1 != 0) throw Error(ErrorKind::Internal, "norm not in base ring");
  i64 ninv = invmod(nrm.c0, modulus_);
  return Value{mulmod(conj.c0, ninv, modulus_), mulmod(conj.c1, ninv, modulus_)};
}

int ResidueRing::valuation(const Value& x) const {
  if (is_zero(x)) return precision_;
  if (!degree_two_) return ramification_ == 2 ? 0 : vp_capped(x.c0, p_, j_);
  if (ramification_ == 1) return std::min(vp_capped(x.c0, p_, j_), vp_capped(x.c1, p_, j_));
  Integer nrm = Integer(x.c0) * x.c0 + Integer(t_) * x.c0 * x.c1 + Integer(n_) * x.c1 * x.c1;
  if (nrm == 0) return precision_;
  return std::min(precision_, twistparity::valuation(nrm, p_));
}

std::vector<ResidueRing::Value> ResidueRing::elements() const {
  std::vector<Value> out;
  if (!degree_two_) {
    for (i64 c = 0; c < modulus_; ++c) out.push_back(Value{c, 0});
  } else {
    for (i64 c1 = 0; c1 < modulus_; ++c1) {
      for (i64 c0 = 0; c0 < modulus_; ++c0) out.push_back(Value{c0, c1});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// 2-adic square-class tables

struct TwoAdicTables {
  ResidueRing class_ring;
  int unit_class_count = 0;
  std::vector<int> unit_class_of_residue;
  int unramified_unit_class = -1;
  std::vector<std::vector<int>> product;
  std::vector<std::vector<int>> symbol;
};

namespace {

// Decides (x, y)_v for x, y of valuation 0 or 1 by searching for a primitive zero of
// z² − x u² − y w² in the ring O/𝔭^N, N ≥ 2e+3. With one coordinate normalized to 1 a partial
// derivative has valuation ≤ e+1, so any such zero lifts by Hensel's lemma.
int hilbert_by_search(const ResidueRing& ring, int e, const ResidueRing::Value& x, const ResidueRing::Value& y) {
  if (ring.precision() < 2 * e + 3) throw Error(ErrorKind::Internal, "Hilbert search ring too coarse");
  const auto elems = ring.elements();
  const size_t n = elems.size();
  std::vector<ResidueRing::Value> sq(n);
  std::vector<char> in_x(n, 0), in_y(n, 0);
  for (size_t i = 0; i < n; ++i) {
    sq[i] = ring.mul(elems[i], elems[i]);
    in_x[ring.index_of(ring.mul(x, sq[i]))] = 1;
    in_y[ring.index_of(ring.mul(y, sq[i]))] = 1;
  }
  const ResidueRing::Value one = ring.from_int(1);
  for (size_t a = 0; a < n; ++a) {
    if (in_y[ring.index_of(ring.sub(one, ring.mul(x, sq[a])))]) return 1;  // z = 1
    if (in_y[ring.index_of(ring.sub(sq[a], x))]) return 1;                 // u = 1
    if (in_x[ring.index_of(ring.sub(sq[a], y))]) return 1;                 // w = 1
  }
  return -1;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// LocalField

ResidueRing LocalField::make_ring(int j) const {
  const i64 p = place_.p;
  switch (place_.splitting) {
    case Splitting::Rational: return ResidueRing::degree_one(p, j, 0, 1);
    case Splitting::Inert: return ResidueRing::degree_two(p, j, field_.omega_trace(), field_.omega_norm(), 1);
    case Splitting::Ramified: return ResidueRing::degree_two(p, j, field_.omega_trace(), field_.omega_norm(), 2);
    case Splitting::Split: {
      const i64 modulus = ipow(p, j);
      const i64 t = field_.omega_trace(), n = field_.omega_norm();
      i64 r = split_root_;
      for (int it = 0; it < j + 1; ++it) {
        i64 f = (mulmod(r, r, modulus) - mulmod(t, r, modulus) + ((n % modulus) + modulus)) % modulus;
        i64 df = ((2 * r - t) % modulus + modulus) % modulus;
        r = (r - mulmod(f, invmod(df, modulus), modulus) + modulus) % modulus;
      }
      return ResidueRing::degree_one(p, j, r, 1);
    }
  }
  throw Error(ErrorKind::Internal, "unknown splitting");
}

LocalField::LocalField(Field field, Place place) : field_(std::move(field)), place_(std::move(place)) {
  if (place_.kind == PlaceKind::Real) {
    class_reps_ = {field_.make(1), field_.make(-1)};
    return;
  }
  if (place_.kind == PlaceKind::Complex) {
    class_reps_ = {field_.make(1)};
    return;
  }
  const i64 p = place_.p;
  e_ = place_.ramification;
  f_ = place_.inertia;
  q_ = place_.residue_norm;
  uniformizer_ = (place_.splitting == Splitting::Inert || place_.splitting == Splitting::Rational) ? field_.make(p)
                                                                                                  : place_.generator;
  working_precision_ = 2 * e_ * (p == 2 ? e_ : 0) + 5;
  tau_ = field_.make(p) / uniformizer_.pow(e_);
  if (!field_.is_integral(tau_)) throw Error(ErrorKind::Internal, "p / uniformizer^e is not integral");

  const i64 t = field_.omega_trace(), n = field_.omega_norm();
  auto root_mod_p = [&](bool want_double) -> i64 {
    for (i64 r = 0; r < p && r < 4; ++r) {
      if ((((r * r - t * r + n) % p) + p) % p == 0) return r;
    }
    if (want_double) return mulmod(((t % p) + p) % p, invmod(2, p), p);
    throw Error(ErrorKind::Internal, "no root");
  };
  switch (place_.splitting) {
    case Splitting::Rational: residue_field_ = ResidueRing::degree_one(p, 1, 0, 1); break;
    case Splitting::Inert: residue_field_ = ResidueRing::degree_two(p, 1, t, n, 1); break;
    case Splitting::Ramified: residue_field_ = ResidueRing::degree_one(p, 1, root_mod_p(true), 2); break;
    case Splitting::Split: {
      auto [c0, c1] = field_.omega_coords(place_.generator);
      // generator ≡ 0 under ω ↦ root: root = −c0 / c1 mod p
      i64 a = mod(numerator(c0), p), b = mod(numerator(c1), p);
      if (b == 0) throw Error(ErrorKind::Internal, "split generator has no ω part mod p");
      split_root_ = mulmod(p - a, invmod(b, p), p);
      residue_field_ = ResidueRing::degree_one(p, 1, split_root_, 1);
      break;
    }
  }

  if (p != 2) {
    // Nonsquare unit: first small element whose residue is a nonsquare in the residue field.
    const u64 half = static_cast<u64>((q_ - 1) / 2);
    std::optional<Element> nonsquare;
    for (i64 h = 1; !nonsquare && h < 100000; ++h) {
      for (i64 c1 = 0; c1 <= (f_ == 2 ? h : 0) && !nonsquare; ++c1) {
        for (i64 c0 : {h, -h, i64{0}}) {
          if (f_ == 2 && c1 == 0 && c0 == 0) continue;
          if (f_ == 1 && c0 == 0) continue;
          Element cand = field_.from_omega(Integer(c0), Integer(c1));
          auto r = residue_field_.reduce(field_, cand);
          if (residue_field_.is_zero(r)) continue;
          if (residue_field_.pow(r, half) != residue_field_.from_int(1)) {
            nonsquare = cand;
            break;
          }
        }
      }
    }
    if (!nonsquare) throw Error(ErrorKind::Internal, "no nonsquare unit found");
    class_reps_ = {field_.make(1), *nonsquare, uniformizer_, uniformizer_ * *nonsquare};
    return;
  }

  // p = 2
  auto tables = std::make_shared<TwoAdicTables>();
  const int square_prec = 2 * e_ + 1;
  tables->class_ring = make_ring(3);
  const ResidueRing& cr = tables->class_ring;
  const auto elems = cr.elements();
  std::vector<ResidueRing::Value> unit_squares;
  for (const auto& y : elems) {
    if (cr.valuation(y) == 0) unit_squares.push_back(cr.mul(y, y));
  }
  auto same_class = [&](const ResidueRing::Value& r1, const ResidueRing::Value& r2) {
    for (const auto& s : unit_squares) {
      if (cr.valuation(cr.sub(r1, cr.mul(r2, s))) >= square_prec) return true;
    }
    return false;
  };
  const int unit_classes = 1 << (e_ * f_ + 1);
  std::vector<Element> unit_reps;
  std::vector<ResidueRing::Value> unit_rep_res;
  for (i64 h = 0; static_cast<int>(unit_reps.size()) < unit_classes; ++h) {
    if (h > 64) throw Error(ErrorKind::Internal, "2-adic unit class search exhausted");
    std::vector<std::pair<i64, i64>> cands;
    if (field_.is_rational() || place_.splitting == Splitting::Split) {
      cands = {{h, 0}, {-h, 0}};
    } else {
      for (i64 c1 = -h; c1 <= h; ++c1) {
        for (i64 c0 = -h; c0 <= h; ++c0) {
          if (std::max(std::abs(c0), std::abs(c1)) == h) cands.emplace_back(c0, c1);
        }
      }
      std::stable_sort(cands.begin(), cands.end(), [](auto& x, auto& y) {
        return std::make_tuple(std::abs(x.second), std::abs(x.first), -x.first, -x.second) <
               std::make_tuple(std::abs(y.second), std::abs(y.first), -y.first, -y.second);
      });
    }
    for (auto [c0, c1] : cands) {
      if (static_cast<int>(unit_reps.size()) == unit_classes) break;
      Element cand = field_.from_omega(Integer(c0), Integer(c1));
      if (cand.is_zero()) continue;
      auto r = cr.reduce(field_, cand);
      if (cr.valuation(r) != 0) continue;
      bool fresh = std::none_of(unit_rep_res.begin(), unit_rep_res.end(), [&](auto& u) { return same_class(r, u); });
      if (fresh) {
        unit_reps.push_back(cand);
        unit_rep_res.push_back(r);
      }
    }
  }
  tables->unit_class_count = unit_classes;
  tables->unit_class_of_residue.assign(elems.size(), -1);
  for (const auto& r : elems) {
    if (cr.valuation(r) != 0) continue;
    for (int c = 0; c < unit_classes; ++c) {
      if (same_class(r, unit_rep_res[static_cast<size_t>(c)])) {
        tables->unit_class_of_residue[cr.index_of(r)] = c;
        break;
      }
    }
    if (tables->unit_class_of_residue[cr.index_of(r)] < 0) throw Error(ErrorKind::Internal, "unit residue without class");
  }
  for (int c = 1; c < unit_classes; ++c) {
    bool unramified = std::any_of(elems.begin(), elems.end(), [&](auto& y) {
      return cr.valuation(cr.sub(cr.mul(y, y), unit_rep_res[static_cast<size_t>(c)])) >= 2 * e_;
    });
    if (unramified) {
      if (tables->unramified_unit_class >= 0) throw Error(ErrorKind::Internal, "two unramified unit classes");
      tables->unramified_unit_class = c;
    }
  }
  if (tables->unramified_unit_class < 0) throw Error(ErrorKind::Internal, "no unramified unit class");

  const int total = 2 * unit_classes;
  class_reps_.clear();
  for (int parity = 0; parity < 2; ++parity) {
    for (int c = 0; c < unit_classes; ++c) {
      class_reps_.push_back(parity ? uniformizer_ * unit_reps[static_cast<size_t>(c)] : unit_reps[static_cast<size_t>(c)]);
    }
  }
  tables->product.assign(static_cast<size_t>(total), std::vector<int>(static_cast<size_t>(total), 0));
  for (int i = 0; i < total; ++i) {
    for (int j = 0; j < total; ++j) {
      auto r = cr.mul(unit_rep_res[static_cast<size_t>(i % unit_classes)], unit_rep_res[static_cast<size_t>(j % unit_classes)]);
      int uc = tables->unit_class_of_residue[cr.index_of(r)];
      tables->product[static_cast<size_t>(i)][static_cast<size_t>(j)] = ((i / unit_classes) ^ (j / unit_classes)) * unit_classes + uc;
    }
  }
  // F_2 basis of the class group and the symbol on basis pairs.
  std::vector<int> basis;
  std::vector<int> coords(static_cast<size_t>(total), -1);
  coords[0] = 0;
  for (int c = 1; c < total; ++c) {
    if (coords[static_cast<size_t>(c)] >= 0) continue;
    const int bit = 1 << basis.size();
    basis.push_back(c);
    for (int s = 0; s < total; ++s) {
      if (coords[static_cast<size_t>(s)] >= 0 && !(coords[static_cast<size_t>(s)] & bit)) {
        int prod = tables->product[static_cast<size_t>(s)][static_cast<size_t>(c)];
        if (coords[static_cast<size_t>(prod)] < 0) coords[static_cast<size_t>(prod)] = coords[static_cast<size_t>(s)] | bit;
      }
    }
  }
  if ((1 << basis.size()) != total) throw Error(ErrorKind::Internal, "square classes are not elementary abelian");
  const ResidueRing hr = make_ring(e_ == 1 ? 5 : 4);
  const size_t k = basis.size();
  std::vector<std::vector<int>> h(k, std::vector<int>(k, 1));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i; j < k; ++j) {
      auto x = hr.reduce(field_, class_reps_[static_cast<size_t>(basis[i])]);
      auto y = hr.reduce(field_, class_reps_[static_cast<size_t>(basis[j])]);
      h[i][j] = h[j][i] = hilbert_by_search(hr, e_, x, y);
    }
  }
  tables->symbol.assign(static_cast<size_t>(total), std::vector<int>(static_cast<size_t>(total), 1));
  for (int a = 0; a < total; ++a) {
    for (int b = 0; b < total; ++b) {
      int s = 1;
      for (size_t i = 0; i < k; ++i) {
        if (!((coords[static_cast<size_t>(a)] >> i) & 1)) continue;
        for (size_t j = 0; j < k; ++j) {
          if ((coords[static_cast<size_t>(b)] >> j) & 1) s *= h[i][j];
        }
      }
      tables->symbol[static_cast<size_t>(a)][static_cast<size_t>(b)] = s;
    }
  }
  two_adic_ = std::move(tables);
}

LocalField::Decomposition LocalField::decompose(const Element& x) const {
  if (!is_finite()) throw Error(ErrorKind::Internal, "valuation at an archimedean place");
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "valuation of 0 at " + place_.label());
  const i64 p = place_.p;
  Integer d = field_.denominator_of(x);
  Element y = x * field_.make(Rational(d));
  int s = 0;
  const Integer pp = p;
  while (d % pp == 0) {
    d /= pp;
    ++s;
  }
  int c = 0;
  const bool by_coords = place_.splitting == Splitting::Rational || place_.splitting == Splitting::Inert;
  const Element gen_conj = uniformizer_.conj();
  const Rational gen_norm = uniformizer_.norm();
  for (;;) {
    auto [c0, c1] = field_.omega_coords(by_coords ? y : y * gen_conj);
    if (numerator(c0) % pp != 0 || numerator(c1) % pp != 0) break;
    y = by_coords ? y / field_.make(Rational(p)) : (y * gen_conj) / field_.make(gen_norm);
    ++c;
  }
  return Decomposition{c - e_ * s, y, s, d};
}

ResidueRing::Value LocalField::residue_of(const Decomposition& dec, const ResidueRing& ring) const {
  auto r = ring.reduce(field_, dec.unit_numerator);
  if (dec.denominator_p_power > 0) {
    auto tau_inv = ring.inv(ring.reduce(field_, tau_));
    r = ring.mul(r, ring.pow(tau_inv, static_cast<u64>(dec.denominator_p_power)));
  }
  if (dec.denominator_rest != 1) r = ring.mul(r, ring.inv(ring.from_int(mod(dec.denominator_rest, ring.modulus()))));
  return r;
}

int LocalField::valuation(const Element& x) const { return decompose(x).valuation; }

LocalField::Normalized LocalField::normalize(const Element& x, const ResidueRing& ring) const {
  auto dec = decompose(x);
  return Normalized{dec.valuation, residue_of(dec, ring)};
}

ResidueRing::Value LocalField::reduce(const Element& x) const {
  if (x.is_zero()) return ResidueRing::Value{};
  auto dec = decompose(x);
  if (dec.valuation < 0) throw Error(ErrorKind::Internal, "reducing a non-integral element at " + place_.label());
  if (dec.valuation > 0) return ResidueRing::Value{};
  return residue_of(dec, residue_field_);
}

bool LocalField::is_square(const Element& x) const {
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "is_square of 0");
  if (kind() == PlaceKind::Complex) return true;
  return class_of(x) == 0;
}

int LocalField::num_classes() const { return static_cast<int>(class_reps_.size()); }

int LocalField::class_of(const Element& x) const {
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "square class of 0");
  if (kind() == PlaceKind::Complex) return 0;
  if (kind() == PlaceKind::Real) return field_.real_sign(x, place_) < 0 ? 1 : 0;
  auto dec = decompose(x);
  const int parity = ((dec.valuation % 2) + 2) % 2;
  if (!two_adic_) {
    auto u = residue_of(dec, residue_field_);
    bool square = residue_field_.pow(u, static_cast<u64>((q_ - 1) / 2)) == residue_field_.from_int(1);
    return 2 * parity + (square ? 0 : 1);
  }
  auto u = residue_of(dec, two_adic_->class_ring);
  int uc = two_adic_->unit_class_of_residue[two_adic_->class_ring.index_of(u)];
  if (uc < 0) throw Error(ErrorKind::Internal, "unit residue without class");
  return parity * two_adic_->unit_class_count + uc;
}

int LocalField::class_product(int i, int j) const {
  if (two_adic_) return two_adic_->product[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return i ^ j;
}

int LocalField::tame_symbol(const Element& x, const Element& y) const {
  auto nx = normalize(x, residue_field_);
  auto ny = normalize(y, residue_field_);
  const int a = ((nx.valuation % 2) + 2) % 2, b = ((ny.valuation % 2) + 2) % 2;
  const auto& rf = residue_field_;
  auto t = rf.from_int((a & b) ? -1 : 1);
  if (b) t = rf.mul(t, nx.unit);
  if (a) t = rf.mul(t, rf.inv(ny.unit));
  return rf.pow(t, static_cast<u64>((q_ - 1) / 2)) == rf.from_int(1) ? 1 : -1;
}

int LocalField::class_symbol(int i, int j) const {
  switch (kind()) {
    case PlaceKind::Complex: return 1;
    case PlaceKind::Real: return (i == 1 && j == 1) ? -1 : 1;
    case PlaceKind::Finite: break;
  }
  if (two_adic_) return two_adic_->symbol[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return tame_symbol(class_reps_[static_cast<size_t>(i)], class_reps_[static_cast<size_t>(j)]);
}

int LocalField::hilbert_symbol(const Element& x, const Element& y) const {
  if (x.is_zero() || y.is_zero()) throw Error(ErrorKind::ZeroElement, "Hilbert symbol with 0");
  switch (kind()) {
    case PlaceKind::Complex: return 1;
    case PlaceKind::Real: return (field_.real_sign(x, place_) < 0 && field_.real_sign(y, place_) < 0) ? -1 : 1;
    case PlaceKind::Finite: break;
  }
  if (two_adic_) return class_symbol(class_of(x), class_of(y));
  return tame_symbol(x, y);
}

bool LocalField::class_is_unramified(int index) const {
  switch (kind()) {
    case PlaceKind::Complex: return true;
    case PlaceKind::Real: return index == 0;
    case PlaceKind::Finite: break;
  }
  if (two_adic_) return index == 0 || index == two_adic_->unramified_unit_class;
  return index < 2;
}

int LocalField::unramified_class() const {
  if (!is_finite()) return -1;
  return two_adic_ ? two_adic_->unramified_unit_class : 1;
}

// ---------------------------------------------------------------------------------------------

int LocalCharacter::operator()(const Element& x) const { return field_->hilbert_symbol(x, delta()); }

std::shared_ptr<const LocalField> Field::completion(const Place& place) const {
  std::pair<i64, int> key = place.kind == PlaceKind::Finite ? std::make_pair(place.p, place.index)
                                                            : std::make_pair(place.kind == PlaceKind::Real ? i64{-1} : i64{-2}, place.index);
  {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    auto it = impl_->completions.find(key);
    if (it != impl_->completions.end()) return it->second;
  }
  auto built = std::make_shared<const LocalField>(*this, place);
  std::lock_guard<std::mutex> lock(impl_->mutex);
  auto [it, inserted] = impl_->completions.emplace(key, std::move(built));
  return it->second;
}

std::shared_ptr<const LocalField> completion(const Field& field, const Place& place) { return field.completion(place); }

int valuation(const Element& x, const LocalField& v) { return v.valuation(x); }
bool is_square_local(const Element& x, const LocalField& v) { return v.is_square(x); }
int hilbert_symbol(const Element& x, const Element& y, const LocalField& v) { return v.hilbert_symbol(x, y); }

std::vector<LocalCharacter> local_quadratic_characters(const std::shared_ptr<const LocalField>& v) {
  std::vector<LocalCharacter> out;
  for (int i = 0; i < v->num_classes(); ++i) out.emplace_back(v, i);
  return out;
}

int eval_local_char(const LocalCharacter& chi, const Element& x) { return chi(x); }

int expected_class_count(const LocalField& v) {
  switch (v.kind()) {
    case PlaceKind::Real: return 2;
    case PlaceKind::Complex: return 1;
    case PlaceKind::Finite: break;
  }
  if (v.residue_char() != 2) return 4;
  return 1 << (v.ramification_index() * v.inertia_degree() + 2);
}

}  // namespace twistparity
