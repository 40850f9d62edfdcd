#include "twistparity/numberfield.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "field_impl.hpp"
#include "twistparity/errors.hpp"

namespace twistparity {

// ---------------------------------------------------------------------------------------------
// Element

Element::Element(Rational a, Rational b, i64 m) : a_(std::move(a)), b_(std::move(b)), m_(m) {
  if (m_ == 0 && b_ != 0) throw Error(ErrorKind::Malformed, "irrational part in a rational element");
}

void Element::adopt(const Element& o) {
  if (m_ == o.m_ || o.m_ == 0) return;
  if (m_ == 0) {
    m_ = o.m_;
    return;
  }
  throw Error(ErrorKind::Internal, "mixing elements of different fields");
}

Element Element::conj() const { return Element(a_, -b_, m_); }

Rational Element::norm() const { return a_ * a_ - Rational(m_) * b_ * b_; }

Element Element::inverse() const {
  if (is_zero()) throw Error(ErrorKind::ZeroElement, "inverse of 0");
  Rational n = norm();
  return Element(a_ / n, -b_ / n, m_);
}

Element Element::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  Element result(Rational(1), Rational(0), m_), base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

Element Element::operator-() const { return Element(-a_, -b_, m_); }

Element& Element::operator+=(const Element& o) {
  adopt(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

Element& Element::operator-=(const Element& o) {
  adopt(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

Element& Element::operator*=(const Element& o) {
  adopt(o);
  if (b_ == 0 && o.b_ == 0) {
    a_ *= o.a_;
    return *this;
  }
  Rational a = a_ * o.a_ + Rational(m_) * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

Element& Element::operator/=(const Element& o) {
  if (o.b_ == 0) {
    if (o.a_ == 0) throw Error(ErrorKind::ZeroElement, "division by 0");
    adopt(o);
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string Element::str() const {
  if (b_ == 0) return to_string(a_);
  std::string bw;
  if (b_ == 1) {
    bw = "w";
  } else if (b_ == -1) {
    bw = "-w";
  } else {
    bw = to_string(b_) + "*w";
  }
  if (a_ == 0) return bw;
  return to_string(a_) + (b_ > 0 ? "+" : "") + bw;
}

// ---------------------------------------------------------------------------------------------
// Places

const char* to_string(Splitting s) {
  switch (s) {
    case Splitting::Rational: return "rational";
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
  }
  return "?";
}

std::string Place::label() const {
  switch (kind) {
    case PlaceKind::Real: return index == 0 ? "inf" : "inf" + std::to_string(index);
    case PlaceKind::Complex: return "C";
    case PlaceKind::Finite: break;
  }
  if (splitting == Splitting::Rational) return std::to_string(p);
  return "(" + generator.str() + ")";
}

// ---------------------------------------------------------------------------------------------
// Class numbers

bool squarefree_m(i64 m) { return m != 0 && m != 1 && is_squarefree(m); }

namespace {

struct Form {
  i64 a, b, c;
  friend bool operator<(const Form& x, const Form& y) {
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
  }
};

i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c)); }

int imaginary_class_number(i64 disc) {
  const i64 d = -disc;
  int h = 0;
  for (i64 a = 1; 3 * a * a <= d; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      if (((b * b + d) % (4 * a)) != 0) continue;
      i64 c = (b * b + d) / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (gcd3(a, b, c) != 1) continue;
      ++h;
    }
  }
  return h;
}

// Orbits of Gauss' reduction operator on reduced indefinite forms give the narrow class group;
// the principal cycle contains a form with leading coefficient −1 iff the fundamental unit has norm −1.
int real_class_number(i64 disc) {
  const i64 s = isqrt(Integer(disc)).convert_to<i64>();
  auto reduced = [&](i64 a, i64 b) {
    i64 aa = std::abs(a);
    return b > 0 && b <= s && 2 * aa - b <= s && 2 * aa + b >= s + 1;
  };
  std::set<Form> forms;
  for (i64 b = 1; b <= s; ++b) {
    if (((b * b - disc) % 4) != 0) continue;
    i64 ac = (b * b - disc) / 4;  // negative
    i64 absac = -ac;
    for (i64 a = 1; a <= absac; ++a) {
      if (absac % a != 0) continue;
      for (i64 sa : {a, -a}) {
        i64 c = ac / sa;
        if (reduced(sa, b) && gcd3(sa, b, c) == 1) forms.insert(Form{sa, b, c});
      }
    }
  }
  auto rho = [&](const Form& f) {
    i64 ac = std::abs(f.c);
    i64 mod2c = 2 * ac;
    // r ≡ −b (mod 2|c|), s + 1 − 2|c| ≤ r ≤ s
    i64 r = s - (((s + f.b) % mod2c) + mod2c) % mod2c;
    i64 cnew = (r * r - disc) / (4 * f.c);
    return Form{f.c, r, cnew};
  };
  std::set<Form> seen;
  int cycles = 0;
  bool principal_has_minus_one = false;
  for (const Form& start : forms) {
    if (seen.count(start)) continue;
    ++cycles;
    bool principal = false, minus_one = false;
    Form f = start;
    do {
      seen.insert(f);
      if (f.a == 1) principal = true;
      if (f.a == -1) minus_one = true;
      f = rho(f);
      if (!forms.count(f)) throw Error(ErrorKind::Internal, "reduction cycle left the reduced set");
    } while (!(f.a == start.a && f.b == start.b && f.c == start.c));
    if (principal && minus_one) principal_has_minus_one = true;
  }
  return principal_has_minus_one ? cycles : cycles / 2;
}

}  // namespace

int quadratic_class_number(i64 disc) {
  return disc < 0 ? imaginary_class_number(disc) : real_class_number(disc);
}

// ---------------------------------------------------------------------------------------------
// Field

namespace {

std::optional<Element> search_fundamental_unit(i64 m) {
  constexpr i64 kBound = 20000000;
  const bool one_mod_four = ((m % 4) + 4) % 4 == 1;
  for (i64 y = 1; y <= kBound; ++y) {
    Integer my2 = Integer(m) * y * y;
    for (int sign : {-1, 1}) {
      Integer x2 = my2 + sign * (one_mod_four ? 4 : 1);
      if (x2 <= 0 || !is_perfect_square(x2)) continue;
      Integer x = isqrt(x2);
      if (one_mod_four) return Element(Rational(x, 2), Rational(y, 2), m);
      return Element(Rational(x), Rational(y), m);
    }
  }
  throw Error(ErrorKind::UnitSearchExhausted,
              "no fundamental unit with coefficient below " + std::to_string(kBound) + " for m=" + std::to_string(m));
}

}  // namespace

Field Field::rational() {
  auto impl = std::make_shared<Impl>();
  impl->kind = FieldKind::Rational;
  impl->unit_classes = {Element(1), Element(-1)};
  impl->unit_generators = {Element(-1)};
  return Field(impl);
}

Field Field::quadratic(i64 m) {
  if (m == 0 || m == 1) throw Error(ErrorKind::Malformed, "m must differ from 0 and 1");
  if (!is_squarefree(m)) {
    throw Error(ErrorKind::NotSquarefree, "m=" + std::to_string(m) + " is not squarefree");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = FieldKind::Quadratic;
  impl->m = m;
  const bool one_mod_four = ((m % 4) + 4) % 4 == 1;
  impl->disc = one_mod_four ? m : 4 * m;
  impl->t = one_mod_four ? 1 : 0;
  impl->n = one_mod_four ? (1 - m) / 4 : -m;
  impl->class_number = quadratic_class_number(impl->disc);
  if (impl->class_number != 1) {
    throw Error(ErrorKind::ClassNumberNotOne,
                "Q(sqrt " + std::to_string(m) + ") has class number " + std::to_string(impl->class_number));
  }
  const Element one(Rational(1), Rational(0), m), minus_one(Rational(-1), Rational(0), m);
  if (m == -1) {
    const Element i(Rational(0), Rational(1), m);
    impl->unit_classes = {one, i};
    impl->unit_generators = {i};
  } else if (m < 0) {
    impl->unit_classes = {one, minus_one};
    impl->unit_generators = {minus_one};
  } else {
    Element eps = *search_fundamental_unit(m);
    impl->fundamental_unit = eps;
    impl->unit_classes = {one, minus_one, eps, -eps};
    impl->unit_generators = {minus_one, eps};
  }
  return Field(impl);
}

Field Field::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s == "Q") return rational();
  const std::string prefix = "Q(sqrt";
  if (s.rfind(prefix, 0) != 0 || s.back() != ')') {
    throw Error(ErrorKind::Malformed, "field must be written `Q` or `Q(sqrt <integer>)`, got `" + std::string(text) + "`");
  }
  std::string body = s.substr(prefix.size(), s.size() - prefix.size() - 1);
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  if (body.empty()) throw Error(ErrorKind::Malformed, "missing m in field");
  size_t pos = 0;
  i64 m = 0;
  try {
    m = std::stoll(body, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Malformed, "bad integer `" + body + "` in field");
  }
  if (pos != body.size()) throw Error(ErrorKind::Malformed, "bad integer `" + body + "` in field");
  return quadratic(m);
}

FieldKind Field::kind() const { return impl_->kind; }
i64 Field::m() const { return impl_->m; }
i64 Field::disc() const { return impl_->disc; }
int Field::class_number() const { return impl_->class_number; }
std::string Field::str() const { return is_rational() ? "Q" : "Q(sqrt " + std::to_string(m()) + ")"; }

Element Field::omega() const {
  if (is_rational()) return Element(0);
  if (impl_->t == 1) return Element(Rational(1, 2), Rational(1, 2), m());
  return Element(Rational(0), Rational(1), m());
}
i64 Field::omega_trace() const { return impl_->t; }
i64 Field::omega_norm() const { return impl_->n; }
Element Field::sqrt_m() const { return make(0, 1); }

std::pair<Rational, Rational> Field::omega_coords(const Element& x) const {
  if (is_rational()) return {x.a(), Rational(0)};
  if (impl_->t == 1) return {x.a() - x.b(), 2 * x.b()};
  return {x.a(), x.b()};
}

Element Field::from_omega(const Integer& c0, const Integer& c1) const {
  if (is_rational()) {
    if (c1 != 0) throw Error(ErrorKind::Internal, "omega coordinate in Q");
    return Element(Rational(c0));
  }
  if (impl_->t == 1) return Element(Rational(c0) + Rational(c1, 2), Rational(c1, 2), m());
  return Element(Rational(c0), Rational(c1), m());
}

Integer Field::denominator_of(const Element& x) const {
  auto [c0, c1] = omega_coords(x);
  return boost::multiprecision::lcm(denominator(c0), denominator(c1));
}

bool Field::is_integral(const Element& x) const { return denominator_of(x) == 1; }

Element Field::make(const Rational& a, const Rational& b) const {
  if (is_rational()) {
    if (b != 0) throw Error(ErrorKind::Malformed, "w is not available over Q");
    return Element(a);
  }
  return Element(a, b, m());
}

namespace {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw Error(ErrorKind::Malformed, "empty rational");
  auto slash = s.find('/');
  auto parse_int = [](const std::string& t) {
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw Error(ErrorKind::Malformed, "bad integer `" + t + "`");
    }
    return Integer(t);
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  Integer den = parse_int(s.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::Malformed, "zero denominator in `" + s + "`");
  return Rational(parse_int(s.substr(0, slash)), den);
}

}  // namespace

Element Field::parse_element(std::string_view text) const {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw Error(ErrorKind::Malformed, "empty field element");
  Rational a = 0, b = 0;
  size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    } else if (any) {
      throw Error(ErrorKind::Malformed, "expected + or - in `" + s + "`");
    }
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw Error(ErrorKind::Malformed, "dangling sign in `" + s + "`");
    if (term == "w") {
      b += sign;
    } else if (term.size() > 2 && term.compare(term.size() - 2, 2, "*w") == 0) {
      b += sign * parse_rational(term.substr(0, term.size() - 2));
    } else {
      a += sign * parse_rational(term);
    }
    any = true;
    i = j;
  }
  if (is_rational() && b != 0) throw Error(ErrorKind::Malformed, "`w` used over Q in `" + s + "`");
  return make(a, b);
}

bool Field::is_square(const Element& x) const {
  if (x.is_zero()) return true;
  auto rational_square = [](const Rational& q) {
    return q >= 0 && is_perfect_square(numerator(q)) && is_perfect_square(denominator(q));
  };
  auto rational_sqrt = [](const Rational& q) { return Rational(isqrt(numerator(q)), isqrt(denominator(q))); };
  if (is_rational()) return rational_square(x.a());
  if (x.b() == 0) {
    if (rational_square(x.a())) return true;
    return rational_square(x.a() / Rational(m()));
  }
  Rational nrm = x.norm();
  if (!rational_square(nrm)) return false;
  Rational n = rational_sqrt(nrm);
  for (const Rational& cand : {(x.a() + n) / 2, (x.a() - n) / 2}) {
    if (cand == 0 || !rational_square(cand)) continue;
    Rational c = rational_sqrt(cand);
    Rational d = x.b() / (2 * c);
    Element y(c, d, m());
    if (y * y == x) return true;
  }
  return false;
}

const std::vector<Element>& Field::unit_square_classes() const { return impl_->unit_classes; }
const std::vector<Element>& Field::unit_generators() const { return impl_->unit_generators; }
std::optional<Element> Field::fundamental_unit() const { return impl_->fundamental_unit; }

std::vector<Place> Field::archimedean_places() const {
  std::vector<Place> out;
  if (is_rational() || m() > 0) {
    int count = is_rational() ? 1 : 2;
    for (int i = 0; i < count; ++i) {
      Place pl;
      pl.kind = PlaceKind::Real;
      pl.index = i;
      out.push_back(pl);
    }
  } else {
    Place pl;
    pl.kind = PlaceKind::Complex;
    out.push_back(pl);
  }
  return out;
}

int Field::real_place_count() const { return is_rational() ? 1 : (m() > 0 ? 2 : 0); }

int Field::real_sign(const Element& x, const Place& place) const {
  if (place.kind != PlaceKind::Real) throw Error(ErrorKind::Internal, "real_sign at a non-real place");
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "sign of 0");
  const Rational& a = x.a();
  Rational c = place.index == 0 ? x.b() : -x.b();
  auto sgn = [](const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); };
  if (c == 0) return sgn(a);
  if (a == 0) return sgn(c);
  if (sgn(a) == sgn(c)) return sgn(a);
  return a * a > c * c * Rational(m()) ? sgn(a) : sgn(c);
}

namespace {

// Smallest-coefficient element x0 + x1·ω with norm ±p.
std::optional<std::pair<Integer, Integer>> find_norm_element(i64 p, i64 t, i64 n, bool imaginary, i64 disc) {
  i64 bound = imaginary ? 2 + 2 * isqrt(Integer(4 * p / std::max<i64>(1, -disc) + 1)).convert_to<i64>() : 10000000;
  for (i64 x1 = 0; x1 <= bound; ++x1) {
    std::optional<std::pair<Integer, Integer>> best;
    for (int s : {1, -1}) {
      Integer disc_q = Integer(t) * t * x1 * x1 - 4 * (Integer(n) * x1 * x1 - Integer(s) * p);
      if (disc_q < 0 || !is_perfect_square(disc_q)) continue;
      Integer r = isqrt(disc_q);
      for (const Integer& num : {Integer(-t * x1) + r, Integer(-t * x1) - r}) {
        if (num % 2 != 0) continue;
        Integer x0 = num / 2;
        if (!best || abs(x0) < abs(best->first) || (abs(x0) == abs(best->first) && x0 > best->first)) {
          best = std::make_pair(x0, Integer(x1));
        }
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace

const std::vector<Place>& Field::places_above(i64 p) const {
  if (!is_prime(p)) throw Error(ErrorKind::Malformed, std::to_string(p) + " is not prime");
  {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    auto it = impl_->places.find(p);
    if (it != impl_->places.end()) return it->second;
  }
  std::vector<Place> out;
  Place base;
  base.kind = PlaceKind::Finite;
  base.p = p;
  if (is_rational()) {
    base.splitting = Splitting::Rational;
    base.index = 1;
    base.generator = Element(p);
    base.residue_norm = p;
    out.push_back(base);
  } else {
    int kr = kronecker(Integer(disc()), p);
    if (kr == -1) {
      base.splitting = Splitting::Inert;
      base.index = 1;
      base.generator = make(p);
      base.residue_norm = p * p;
      base.inertia = 2;
      out.push_back(base);
    } else {
      auto found = find_norm_element(p, impl_->t, impl_->n, m() < 0, disc());
      if (!found) {
        throw Error(ErrorKind::GeneratorSearchExhausted,
                    "no element of norm ±" + std::to_string(p) + " found in " + str());
      }
      Element pi = from_omega(found->first, found->second);
      if (kr == 0) {
        base.splitting = Splitting::Ramified;
        base.index = 1;
        base.generator = pi;
        base.residue_norm = p;
        base.ramification = 2;
        out.push_back(base);
      } else {
        // Roots of x² − t x + n mod p, smaller residue first.
        std::vector<i64> roots;
        for (i64 r : {i64{0}, i64{1}}) {
          if (p == 2 && (r * r - impl_->t * r + impl_->n) % 2 == 0) roots.push_back(r);
        }
        if (p != 2) {
          i64 sq = sqrt_mod_prime(mod(Integer(disc()), p), p);
          i64 inv2 = invmod(2, p);
          for (i64 s : {sq, p - sq}) roots.push_back(mulmod((impl_->t + s) % p, inv2, p));
          std::sort(roots.begin(), roots.end());
        }
        Element conj = pi.conj();
        for (int idx = 0; idx < 2; ++idx) {
          Place pl = base;
          pl.splitting = Splitting::Split;
          pl.index = idx + 1;
          pl.residue_norm = p;
          auto vanishes = [&](const Element& g) {
            auto [c0, c1] = omega_coords(g);
            return mod(numerator(c0) + numerator(c1) * roots[static_cast<size_t>(idx)], p) == 0;
          };
          pl.generator = vanishes(pi) ? pi : conj;
          if (!vanishes(pl.generator)) throw Error(ErrorKind::Internal, "split generator does not vanish at its root");
          out.push_back(pl);
        }
      }
    }
  }
  std::lock_guard<std::mutex> lock(impl_->mutex);
  auto [it, inserted] = impl_->places.emplace(p, std::move(out));
  return it->second;
}

}  // namespace twistparity
