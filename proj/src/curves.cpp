#include "twistparity/curves.hpp"

#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "twistparity/errors.hpp"

namespace twistparity {

EllipticCurve::EllipticCurve(Field field, std::array<Element, 5> a) : field_(std::move(field)), a_(std::move(a)) {
  const auto& [a1, a2, a3, a4, a6] = a_;
  b2_ = a1 * a1 + Element(4) * a2;
  b4_ = Element(2) * a4 + a1 * a3;
  b6_ = a3 * a3 + Element(4) * a6;
  b8_ = a1 * a1 * a6 + Element(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  c4_ = b2_ * b2_ - Element(24) * b4_;
  c6_ = -(b2_ * b2_ * b2_) + Element(36) * b2_ * b4_ - Element(216) * b6_;
  disc_ = -(b2_ * b2_ * b8_) - Element(8) * b4_ * b4_ * b4_ - Element(27) * b6_ * b6_ + Element(9) * b2_ * b4_ * b6_;
  if (disc_.is_zero()) throw Error(ErrorKind::SingularCurve, "discriminant vanishes for " + str());
}

EllipticCurve EllipticCurve::parse(const Field& field, std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw Error(ErrorKind::Malformed, "curve must be written [a1,a2,a3,a4,a6] or [a4,a6], got `" + std::string(text) + "`");
  }
  std::vector<Element> parts;
  std::string body = s.substr(1, s.size() - 2);
  size_t start = 0;
  for (;;) {
    size_t comma = body.find(',', start);
    std::string item = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty()) throw Error(ErrorKind::Malformed, "empty coefficient in `" + std::string(text) + "`");
    parts.push_back(field.parse_element(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() == 2) return EllipticCurve(field, {Element(0), Element(0), Element(0), parts[0], parts[1]});
  if (parts.size() == 5) return EllipticCurve(field, {parts[0], parts[1], parts[2], parts[3], parts[4]});
  throw Error(ErrorKind::Malformed, "expected 2 or 5 coefficients, got " + std::to_string(parts.size()));
}

EllipticCurve EllipticCurve::change_coordinates(const Element& u, const Element& r, const Element& s, const Element& t) const {
  const auto& [a1, a2, a3, a4, a6] = a_;
  const Element ui = u.inverse();
  const Element ui2 = ui * ui, ui3 = ui2 * ui, ui4 = ui2 * ui2, ui6 = ui3 * ui3;
  Element n1 = (a1 + Element(2) * s) * ui;
  Element n2 = (a2 - s * a1 + Element(3) * r - s * s) * ui2;
  Element n3 = (a3 + r * a1 + Element(2) * t) * ui3;
  Element n4 = (a4 - s * a3 + Element(2) * r * a2 - (t + r * s) * a1 + Element(3) * r * r - Element(2) * s * t) * ui4;
  Element n6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) * ui6;
  return EllipticCurve(field_, {n1, n2, n3, n4, n6});
}

std::string EllipticCurve::str() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < 5; ++i) os << (i ? "," : "") << a_[i].str();
  os << ']';
  return os.str();
}

Invariants invariants(const EllipticCurve& e) { return Invariants{e.c4(), e.c6(), e.discriminant(), e.j_invariant()}; }

const char* to_string(ReductionType t) {
  switch (t) {
    case ReductionType::Good: return "Good";
    case ReductionType::SplitMult: return "SplitMult";
    case ReductionType::NonsplitMult: return "NonsplitMult";
    case ReductionType::AdditivePotMult: return "AdditivePotMult";
    case ReductionType::AdditivePotGood: return "AdditivePotGood";
  }
  return "?";
}

const char* to_string(RepVariant r) {
  switch (r) {
    case RepVariant::PrincipalUnramified: return "PrincipalUnramified";
    case RepVariant::PrincipalRamifiedQuadTwistOfGood: return "PrincipalRamifiedQuadTwistOfGood";
    case RepVariant::SpecialUnramified: return "SpecialUnramified";
    case RepVariant::SpecialRamifiedQuadratic: return "SpecialRamifiedQuadratic";
    case RepVariant::Unsupported: return "Unsupported";
  }
  return "?";
}

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

// ---------------------------------------------------------------------------------------------
// Tate's algorithm

namespace {

constexpr int kInfinite = 1 << 20;

struct Tate {
  std::shared_ptr<const LocalField> lf;
  const ResidueRing& k;
  Element pi;
  i64 p;
  u64 q;

  explicit Tate(std::shared_ptr<const LocalField> completion)
      : lf(std::move(completion)),
        k(lf->residue_field()),
        pi(lf->uniformizer()),
        p(lf->residue_char()),
        q(static_cast<u64>(lf->residue_size())) {}

  int v(const Element& x) const { return x.is_zero() ? kInfinite : lf->valuation(x); }
  ResidueRing::Value red(const Element& x) const { return lf->reduce(x); }
  Element lift(const ResidueRing::Value& x) const { return lf->lift(x); }
  // x^(1/p), the inverse of Frobenius on the residue field
  ResidueRing::Value proot(const ResidueRing::Value& x) const { return k.pow(x, q / static_cast<u64>(p)); }
  ResidueRing::Value div(const ResidueRing::Value& x, const ResidueRing::Value& y) const { return k.mul(x, k.inv(y)); }
  ResidueRing::Value c(i64 n) const { return k.from_int(n); }
  bool is_square(const ResidueRing::Value& x) const {
    if (k.is_zero(x) || p == 2) return true;
    return k.pow(x, (q - 1) / 2) == c(1);
  }
  ResidueRing::Value red_shift(const Element& x, int n) const { return red(x / pi.pow(n)); }

  void require(bool ok, const char* what) const {
    if (!ok) throw Error(ErrorKind::Internal, std::string("Tate's algorithm: ") + what + " at " + lf->place().label());
  }
};

struct TateResult {
  EllipticCurve model;
  ReductionType type;
  int split_sign;
};

EllipticCurve integral_model(const EllipticCurve& e, const Tate& T) {
  static constexpr int kWeights[5] = {1, 2, 3, 4, 6};
  int k = 0;
  for (size_t i = 0; i < 5; ++i) {
    const int vi = T.v(e.coefficients()[i]);
    if (vi < 0) k = std::max(k, (-vi + kWeights[i] - 1) / kWeights[i]);
  }
  if (k == 0) return e;
  return e.change_coordinates(T.pi.pow(-k), 0, 0, 0);
}

TateResult run_tate(const EllipticCurve& input, const Tate& T) {
  EllipticCurve e = integral_model(input, T);
  const auto& k = T.k;
  auto additive = [&](const EllipticCurve& model) {
    const int vj = 3 * T.v(model.c4()) - T.v(model.discriminant());
    return TateResult{model, vj < 0 ? ReductionType::AdditivePotMult : ReductionType::AdditivePotGood, 0};
  };
  for (;;) {
    if (T.v(e.discriminant()) == 0) return TateResult{e, ReductionType::Good, 0};

    // Move the singular point of the reduction to (0, 0).
    ResidueRing::Value x0, y0;
    if (T.p == 2) {
      if (T.v(e.a1()) == 0) {
        x0 = T.div(T.red(e.a3()), T.red(e.a1()));
        y0 = T.div(k.add(k.mul(x0, x0), T.red(e.a4())), T.red(e.a1()));
      } else {
        x0 = T.proot(T.red(e.a4()));
        auto rhs = k.add(k.add(k.mul(k.mul(x0, x0), x0), k.mul(T.red(e.a2()), k.mul(x0, x0))),
                         k.add(k.mul(T.red(e.a4()), x0), T.red(e.a6())));
        y0 = T.proot(rhs);
      }
    } else {
      if (T.p == 3) {
        x0 = T.v(e.b2()) == 0 ? k.neg(T.div(T.red(e.b4()), T.red(e.b2()))) : T.proot(k.neg(T.red(e.b6())));
      } else if (T.v(e.c4()) > 0) {
        x0 = k.neg(T.div(T.red(e.b2()), T.c(12)));
      } else {
        x0 = k.neg(T.div(k.add(T.red(e.c6()), k.mul(T.red(e.b2()), T.red(e.c4()))), k.mul(T.c(12), T.red(e.c4()))));
      }
      y0 = k.neg(T.div(k.add(k.mul(T.red(e.a1()), x0), T.red(e.a3())), T.c(2)));
    }
    e = e.change_coordinates(1, T.lift(x0), 0, T.lift(y0));
    T.require(T.v(e.a3()) >= 1 && T.v(e.a4()) >= 1 && T.v(e.a6()) >= 1, "singular point not at the origin");

    if (T.v(e.b2()) == 0) {
      // Node: tangent slopes are the roots of T² + a1·T − a2.
      bool split = false;
      if (T.p == 2) {
        for (const auto& z : k.elements()) {
          if (k.is_zero(k.sub(k.add(k.mul(z, z), k.mul(T.red(e.a1()), z)), T.red(e.a2())))) split = true;
        }
      } else {
        split = T.is_square(T.red(e.b2()));
      }
      return TateResult{e, split ? ReductionType::SplitMult : ReductionType::NonsplitMult, split ? 1 : -1};
    }
    if (T.v(e.a6()) < 2 || T.v(e.b8()) < 3 || T.v(e.b6()) < 3) return additive(e);

    Element s, t;
    if (T.p == 2) {
      s = T.lift(T.proot(T.red(e.a2())));
      t = T.pi * T.lift(T.proot(T.red_shift(e.a6(), 2)));
    } else {
      s = -e.a1() / Element(2);
      t = -e.a3() / Element(2);
    }
    e = e.change_coordinates(1, 0, s, t);
    T.require(T.v(e.a1()) >= 1 && T.v(e.a2()) >= 1 && T.v(e.a3()) >= 2 && T.v(e.a4()) >= 2 && T.v(e.a6()) >= 3,
              "step 6 normalization failed");

    // P(T) = T³ + b·T² + c·T + d; anything but a triple root means the model is minimal.
    const auto b = T.red_shift(e.a2(), 1), c = T.red_shift(e.a4(), 2), d = T.red_shift(e.a6(), 3);
    ResidueRing::Value alpha;
    bool triple = false;
    if (T.p == 2) {
      alpha = b;
      triple = c == k.mul(b, b) && d == k.mul(k.mul(b, b), b);
    } else if (T.p == 3) {
      alpha = T.proot(k.neg(d));
      triple = k.is_zero(b) && k.is_zero(c);
    } else {
      alpha = k.neg(T.div(b, T.c(3)));
      triple = c == k.mul(T.c(3), k.mul(alpha, alpha)) && d == k.neg(k.mul(k.mul(alpha, alpha), alpha));
    }
    if (!triple) return additive(e);
    e = e.change_coordinates(1, T.pi * T.lift(alpha), 0, 0);
    T.require(T.v(e.a2()) >= 2 && T.v(e.a4()) >= 3 && T.v(e.a6()) >= 4, "triple root shift failed");

    const auto a32 = T.red_shift(e.a3(), 2), a64 = T.red_shift(e.a6(), 4);
    const bool distinct = T.p == 2 ? !k.is_zero(a32) : !k.is_zero(k.add(k.mul(a32, a32), k.mul(T.c(4), a64)));
    if (distinct) return additive(e);
    const auto beta = T.p == 2 ? T.proot(a64) : k.neg(T.div(a32, T.c(2)));
    e = e.change_coordinates(1, 0, 0, T.pi * T.pi * T.lift(beta));
    T.require(T.v(e.a3()) >= 3 && T.v(e.a6()) >= 5, "double root shift failed");
    if (T.v(e.a4()) < 4 || T.v(e.a6()) < 6) return additive(e);

    e = e.change_coordinates(T.pi, 0, 0, 0);
  }
}

struct ReductionCache {
  std::mutex mutex;
  std::map<std::string, ReductionData> entries;
};

ReductionCache& reduction_cache() {
  static ReductionCache cache;
  return cache;
}

std::string cache_key(const EllipticCurve& e, const Place& v) {
  return e.field().str() + "|" + e.str() + "|" + std::to_string(v.p) + ":" + std::to_string(v.index);
}

}  // namespace

EllipticCurve minimal_model_at(const EllipticCurve& e, const Place& v) { return reduction_type(e, v).minimal_model; }

ReductionData reduction_type(const EllipticCurve& e, const Place& v) {
  if (!v.is_finite()) throw Error(ErrorKind::UnsupportedPlace, "reduction type at an archimedean place");
  const std::string key = cache_key(e, v);
  auto& cache = reduction_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.entries.find(key);
    if (it != cache.entries.end()) return it->second;
  }
  Tate T(e.field().completion(v));
  TateResult res = run_tate(e, T);
  ReductionData data{v, res.model, res.type, res.split_sign, T.v(res.model.discriminant()), T.v(res.model.c4()), 0};
  data.j_valuation = res.model.c4().is_zero() ? kInfinite : 3 * data.c4_valuation - data.disc_valuation;
  std::lock_guard<std::mutex> lock(cache.mutex);
  cache.entries.emplace(key, data);
  return data;
}

EllipticCurve quadratic_twist(const EllipticCurve& e, const Element& delta) {
  if (delta.is_zero()) throw Error(ErrorKind::ZeroTwistParameter, "twist by 0");
  const Element d2 = delta * delta;
  return EllipticCurve(e.field(), {Element(0), Element(0), Element(0), Element(-27) * e.c4() * d2, Element(-54) * e.c6() * d2 * delta});
}

LocalRepType local_rep_type(const EllipticCurve& e, const Place& v) {
  const ReductionData r = reduction_type(e, v);
  switch (r.type) {
    case ReductionType::Good: return LocalRepType{RepVariant::PrincipalUnramified, 0, -1};
    case ReductionType::SplitMult:
    case ReductionType::NonsplitMult: return LocalRepType{RepVariant::SpecialUnramified, r.split_sign, -1};
    case ReductionType::AdditivePotMult:
    case ReductionType::AdditivePotGood: break;
  }
  auto lf = e.field().completion(v);
  const bool pot_mult = r.type == ReductionType::AdditivePotMult;
  for (int eta = 1; eta < lf->num_classes(); ++eta) {
    if (lf->class_is_unramified(eta)) continue;
    const ReductionData tw = reduction_type(quadratic_twist(r.minimal_model, lf->class_representative(eta)), v);
    if (pot_mult && tw.is_multiplicative()) return LocalRepType{RepVariant::SpecialRamifiedQuadratic, 0, eta};
    if (!pot_mult && tw.type == ReductionType::Good) return LocalRepType{RepVariant::PrincipalRamifiedQuadTwistOfGood, 0, eta};
  }
  if (pot_mult) throw Error(ErrorKind::Internal, "potentially multiplicative place without a multiplicative quadratic twist");
  return LocalRepType{RepVariant::Unsupported, 0, -1};
}

int local_root_number(const EllipticCurve& e, const Place& v) {
  if (!v.is_finite()) return -1;
  const LocalRepType rep = local_rep_type(e, v);
  switch (rep.variant) {
    case RepVariant::PrincipalUnramified: return 1;
    case RepVariant::SpecialUnramified: return -rep.split_sign;
    case RepVariant::SpecialRamifiedQuadratic:
    case RepVariant::PrincipalRamifiedQuadTwistOfGood: {
      auto lf = e.field().completion(v);
      return lf->class_symbol(lf->class_of(Element(-1)), rep.eta_class);
    }
    case RepVariant::Unsupported: break;
  }
  throw Error(ErrorKind::UnsupportedRepresentation,
              "additive potentially good reduction at " + v.label() + " is not a ramified quadratic twist of good reduction");
}

std::vector<Place> bad_places(const EllipticCurve& e) {
  std::set<i64> primes;
  const Rational nd = e.discriminant().norm();
  for (i64 p : prime_factors(numerator(nd))) primes.insert(p);
  if (denominator(nd) != 1) {
    for (i64 p : prime_factors(denominator(nd))) primes.insert(p);
  }
  for (const auto& a : e.coefficients()) {
    Integer d = e.field().denominator_of(a);
    if (d != 1) {
      for (i64 p : prime_factors(d)) primes.insert(p);
    }
  }
  std::vector<Place> out;
  for (i64 p : primes) {
    for (const auto& v : e.field().places_above(p)) out.push_back(v);
  }
  return out;
}

int root_number(const EllipticCurve& e) {
  int w = 1;
  for (const auto& v : e.field().archimedean_places()) w *= local_root_number(e, v);
  for (const auto& v : bad_places(e)) w *= local_root_number(e, v);
  return w;
}

Parity rank_parity(const EllipticCurve& e) { return root_number(e) == 1 ? Parity::Even : Parity::Odd; }

}  // namespace twistparity
