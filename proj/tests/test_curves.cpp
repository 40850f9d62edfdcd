#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "twistparity/curves.hpp"
#include "twistparity/errors.hpp"

using namespace twistparity;

namespace {

EllipticCurve curve(const Field& k, const char* text) { return EllipticCurve::parse(k, text); }
const Place& place(const Field& k, i64 p, size_t i = 0) { return k.places_above(p).at(i); }
int vq(const Element& x, i64 p) { return valuation(x.a(), p); }

}  // namespace

TEST_CASE("invariants examples") {
  Field q = Field::rational();
  auto e1 = invariants(curve(q, "[1,0]"));
  CHECK(e1.discriminant == Element(-64));
  CHECK(e1.j == Element(1728));
  auto e2 = invariants(curve(q, "[0,1]"));
  CHECK(e2.discriminant == Element(-432));
  CHECK(e2.j == Element(0));
  auto e3 = curve(q, "[0,-1,1,-10,-20]");
  CHECK(e3.discriminant() == Element(-161051));
  CHECK(vq(e3.discriminant(), 11) == 5);
  bool threw = false;
  try {
    curve(q, "[0,0]");
  } catch (const Error& e) {
    threw = e.kind() == ErrorKind::SingularCurve;
  }
  CHECK(threw);
}

TEST_CASE("c4^3 - c6^2 = 1728 disc across constructions") {
  std::mt19937_64 rng(3);
  for (i64 m : {0, -1, -3, 2, 5}) {
    Field k = m == 0 ? Field::rational() : Field::quadratic(m);
    std::uniform_int_distribution<i64> d(-9, 9);
    for (int i = 0; i < 30; ++i) {
      std::array<Element, 5> a;
      for (auto& x : a) x = k.make(Rational(d(rng)), m == 0 ? Rational(0) : Rational(d(rng)));
      try {
        EllipticCurve e(k, a);
        auto check = [](const EllipticCurve& c) {
          CHECK(c.c4() * c.c4() * c.c4() - c.c6() * c.c6() == Element(1728) * c.discriminant());
        };
        check(e);
        EllipticCurve t = quadratic_twist(e, k.make(Rational(d(rng) * 2 + 1)));
        check(t);
        CHECK(t.j_invariant() == e.j_invariant());
        check(e.change_coordinates(k.make(2), k.make(d(rng)), k.make(d(rng)), k.make(d(rng))));
      } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::SingularCurve);
      }
    }
  }
}

TEST_CASE("minimal models") {
  Field q = Field::rational();
  auto m2 = minimal_model_at(curve(q, "[64,0]"), place(q, 2));
  CHECK(vq(m2.discriminant(), 2) == vq(curve(q, "[4,0]").discriminant(), 2));
  CHECK(vq(curve(q, "[64,0]").discriminant(), 2) - vq(m2.discriminant(), 2) == 12);
  auto m5 = minimal_model_at(curve(q, "[0,15625]"), place(q, 5));
  CHECK(vq(m5.discriminant(), 5) == 0);
  auto e = curve(q, "[0,-1,1,-10,-20]");
  CHECK(minimal_model_at(e, place(q, 11)).discriminant() == e.discriminant());
  CHECK(reduction_type(e, place(q, 11)).disc_valuation == 5);
}

TEST_CASE("minimal discriminant valuation matches the p >= 5 criterion") {
  // For p ≥ 5 and an integral model: v(Δ_min) = v(Δ) − 12·min(⌊v(c4)/4⌋, ⌊v(c6)/6⌋, ⌊v(Δ)/12⌋).
  Field q = Field::rational();
  std::mt19937_64 rng(5);
  for (i64 p : {5, 7, 11}) {
    for (int i = 0; i < 40; ++i) {
      std::uniform_int_distribution<i64> d(-30, 30);
      std::uniform_int_distribution<int> sc(0, 2);
      i64 a4 = d(rng), a6 = d(rng);
      int k4 = sc(rng);
      Integer s = 1;
      for (int j = 0; j < k4; ++j) s *= p;
      try {
        EllipticCurve e(q, {Element(0), Element(0), Element(0), Element(Rational(Integer(a4) * s * s * s * s)),
                            Element(Rational(Integer(a6) * s * s * s * s * s * s))});
        int vc4 = e.c4().is_zero() ? 1000 : vq(e.c4(), p), vc6 = e.c6().is_zero() ? 1000 : vq(e.c6(), p);
        int vd = vq(e.discriminant(), p);
        int drop = std::min({vc4 / 4, vc6 / 6, vd / 12});
        CHECK(reduction_type(e, place(q, p)).disc_valuation == vd - 12 * drop);
      } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::SingularCurve);
      }
    }
  }
}

TEST_CASE("reduction_type examples") {
  Field q = Field::rational();
  CHECK(reduction_type(curve(q, "[0,1]"), place(q, 5)).type == ReductionType::Good);
  auto e = curve(q, "[0,-1,1,-10,-20]");
  auto r = reduction_type(e, place(q, 11));
  CHECK(r.type == ReductionType::SplitMult);
  CHECK(r.split_sign == 1);
  auto t = reduction_type(quadratic_twist(e, Element(11)), place(q, 11));
  CHECK(t.type == ReductionType::AdditivePotMult);
  CHECK(t.j_valuation < 0);
}

TEST_CASE("split signs of known curves over Q") {
  // Multiplicative a_p from standard tables: +1 split, −1 nonsplit.
  Field q = Field::rational();
  struct Row {
    const char* a;
    i64 p;
    int sign;
  };
  for (const Row& row : {Row{"[0,-1,1,-10,-20]", 11, 1}, Row{"[0,-1,1,0,0]", 11, 1}, Row{"[1,0,1,4,-6]", 2, -1},
                         Row{"[1,0,1,4,-6]", 7, 1}, Row{"[0,0,1,-1,0]", 37, -1}, Row{"[0,1,1,-2,0]", 389, 1},
                         Row{"[1,1,1,-10,-10]", 3, -1}, Row{"[1,1,1,-10,-10]", 5, 1}, Row{"[0,1,1,0,0]", 43, -1},
                         Row{"[1,-1,1,-1,-14]", 17, 1}}) {
    auto r = reduction_type(curve(q, row.a), place(q, row.p));
    CHECK_MESSAGE(r.split_sign == row.sign, std::string(row.a) << " at " << row.p);
  }
}

TEST_CASE("split test agrees with the -c6 criterion for p >= 5") {
  Field q = Field::rational();
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<i64> d(-40, 40);
  int seen = 0;
  for (int i = 0; i < 400; ++i) {
    try {
      EllipticCurve e(q, {Element(d(rng) % 2), Element(d(rng) % 3), Element(d(rng) % 2), Element(d(rng)), Element(d(rng))});
      for (i64 p : prime_factors(numerator(e.discriminant().a()))) {
        if (p < 5) continue;
        auto r = reduction_type(e, place(q, p));
        if (!r.is_multiplicative()) continue;
        ++seen;
        i64 c6 = mod(numerator(r.minimal_model.c6().a()), p);
        CHECK(r.split_sign == oracle::legendre_brute(-c6, p));
      }
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::SingularCurve);
    }
  }
  CHECK(seen > 50);
}

TEST_CASE("reduction data is invariant under admissible coordinate changes") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<i64> d(-6, 6);
  for (i64 m : {0, -1, -3, 2}) {
    Field k = m == 0 ? Field::rational() : Field::quadratic(m);
    for (const char* a : {"[0,-1,1,-10,-20]", "[1,0,1,4,-6]", "[1,1,1,-10,-10]", "[0,0,1,-1,0]", "[0,0,0,-1,0]"}) {
      EllipticCurve e = curve(k, a);
      for (int i = 0; i < 4; ++i) {
        Element u = k.make(Rational(std::vector<i64>{1, 2, 3, 6}[static_cast<size_t>(i)]));
        auto rand_el = [&] { return k.make(Rational(d(rng)), m == 0 ? Rational(0) : Rational(d(rng))); };
        EllipticCurve f = e.change_coordinates(u.inverse(), rand_el(), rand_el(), rand_el());
        for (const auto& v : bad_places(e)) {
          auto r1 = reduction_type(e, v), r2 = reduction_type(f, v);
          CHECK(r1.type == r2.type);
          CHECK(r1.disc_valuation == r2.disc_valuation);
          CHECK(r1.split_sign == r2.split_sign);
        }
        for (i64 p : {2, 3}) {
          for (const auto& v : k.places_above(p)) CHECK(reduction_type(e, v).disc_valuation == reduction_type(f, v).disc_valuation);
        }
      }
    }
  }
}

TEST_CASE("twisting") {
  Field q = Field::rational();
  auto e = curve(q, "[0,1]");
  auto t = quadratic_twist(e, Element(2));
  CHECK(t.c6() == Element(46656 * 8) * e.c6());
  CHECK(quadratic_twist(e, Element(1)).j_invariant() == e.j_invariant());
  bool threw = false;
  try {
    quadratic_twist(e, Element(0));
  } catch (const Error& err) {
    threw = err.kind() == ErrorKind::ZeroTwistParameter;
  }
  CHECK(threw);

  // Involution on reduction data.
  std::mt19937_64 rng(4);
  for (const char* a : {"[0,-1,1,-10,-20]", "[1,0,1,4,-6]", "[1,1,1,-10,-10]"}) {
    auto base = curve(q, a);
    for (i64 delta : {-1, 2, -3, 5, -11, 14, 21}) {
      auto twice = quadratic_twist(quadratic_twist(base, Element(delta)), Element(delta));
      for (i64 p : {2, 3, 5, 7, 11}) {
        auto r1 = reduction_type(base, place(q, p)), r2 = reduction_type(twice, place(q, p));
        CHECK(r1.type == r2.type);
        CHECK(r1.disc_valuation == r2.disc_valuation);
      }
    }
  }
}

TEST_CASE("unramified twists flip split and nonsplit exactly when (pi, delta) = -1") {
  for (i64 m : {0, -1, 2}) {
    Field k = m == 0 ? Field::rational() : Field::quadratic(m);
    auto e = curve(k, "[0,-1,1,-10,-20]");
    for (const auto& v : k.places_above(11)) {
      auto lf = k.completion(v);
      auto base = reduction_type(e, v);
      REQUIRE(base.is_multiplicative());
      for (int c = 0; c < lf->num_classes(); ++c) {
        auto tw = reduction_type(quadratic_twist(e, lf->class_representative(c)), v);
        if (lf->class_is_unramified(c)) {
          REQUIRE(tw.is_multiplicative());
          CHECK(tw.split_sign == base.split_sign * lf->hilbert_symbol(lf->uniformizer(), lf->class_representative(c)));
        } else {
          CHECK(tw.type == ReductionType::AdditivePotMult);
        }
      }
    }
  }
}

TEST_CASE("potentially multiplicative places have one split and one nonsplit ramified twist") {
  for (i64 m : {0, -1, -2, 3}) {
    Field k = m == 0 ? Field::rational() : Field::quadratic(m);
    for (const char* a : {"[0,-1,1,-10,-20]", "[1,0,1,4,-6]", "[1,1,1,-10,-10]"}) {
      auto e = curve(k, a);
      for (const auto& v : bad_places(e)) {
        auto lf = k.completion(v);
        for (int c = 0; c < lf->num_classes(); ++c) {
          auto tw = quadratic_twist(e, lf->class_representative(c));
          if (reduction_type(tw, v).type != ReductionType::AdditivePotMult) continue;
          int split = 0, nonsplit = 0;
          for (int eta = 0; eta < lf->num_classes(); ++eta) {
            if (lf->class_is_unramified(eta)) continue;
            auto r = reduction_type(quadratic_twist(tw, lf->class_representative(eta)), v);
            if (r.type == ReductionType::SplitMult) ++split;
            if (r.type == ReductionType::NonsplitMult) ++nonsplit;
          }
          CHECK(split == 1);
          CHECK(nonsplit == 1);
        }
      }
    }
  }
}

TEST_CASE("local representation types") {
  Field q = Field::rational();
  auto e = curve(q, "[0,-1,1,-10,-20]");
  CHECK(local_rep_type(e, place(q, 5)).variant == RepVariant::PrincipalUnramified);
  auto split = local_rep_type(e, place(q, 11));
  CHECK(split.variant == RepVariant::SpecialUnramified);
  CHECK(split.split_sign == 1);
  CHECK(local_rep_type(quadratic_twist(e, Element(-11)), place(q, 11)).variant == RepVariant::SpecialRamifiedQuadratic);
  auto tw2 = local_rep_type(quadratic_twist(e, Element(-1)), place(q, 2));
  CHECK(tw2.variant == RepVariant::PrincipalRamifiedQuadTwistOfGood);
  // 27a1 has additive reduction at 3 with odd conductor exponent, so no quadratic twist is good there.
  CHECK(local_rep_type(curve(q, "[0,0,1,0,-7]"), place(q, 3)).variant == RepVariant::Unsupported);
  bool threw = false;
  try {
    root_number(curve(q, "[0,0,1,0,-7]"));
  } catch (const Error& err) {
    threw = err.kind() == ErrorKind::UnsupportedRepresentation;
  }
  CHECK(threw);
}

TEST_CASE("local root numbers") {
  Field q = Field::rational();
  auto e = curve(q, "[0,-1,1,-10,-20]");
  CHECK(local_root_number(e, q.archimedean_places()[0]) == -1);
  CHECK(local_root_number(e, place(q, 3)) == 1);
  CHECK(local_root_number(e, place(q, 11)) == -1);
  CHECK(local_root_number(quadratic_twist(e, Element(-11)), place(q, 11)) == -1);
  CHECK(local_root_number(quadratic_twist(e, Element(-3)), place(q, 3)) == -1);
  CHECK(local_root_number(quadratic_twist(e, Element(5)), place(q, 5)) == 1);
}

TEST_CASE("global root numbers of known curves over Q") {
  // Ranks from standard tables: w = (−1)^rank.
  Field q = Field::rational();
  struct Row {
    const char* a;
    int w;
  };
  for (const Row& row : {Row{"[0,-1,1,-10,-20]", 1}, Row{"[0,-1,1,0,0]", 1}, Row{"[1,0,1,4,-6]", 1}, Row{"[0,0,1,-1,0]", -1},
                         Row{"[0,1,1,-2,0]", 1}, Row{"[0,0,1,-7,6]", -1}, Row{"[1,1,1,-10,-10]", 1}, Row{"[0,1,1,0,0]", -1},
                         Row{"[1,-1,1,-1,-14]", 1}}) {
    CHECK_MESSAGE(root_number(curve(q, row.a)) == row.w, std::string(row.a));
  }
  CHECK(rank_parity(curve(q, "[0,0,1,-1,0]")) == Parity::Odd);
  CHECK(rank_parity(curve(q, "[0,-1,1,-10,-20]")) == Parity::Even);
}

TEST_CASE("twist root numbers follow w(E) chi(-N) for conductors coprime to N") {
  // For E/Q of conductor N and a fundamental discriminant D coprime to N: w(E^D) = w(E)·(D/−N).
  Field q = Field::rational();
  struct Row {
    const char* a;
    i64 n;
  };
  for (const Row& row : {Row{"[0,-1,1,-10,-20]", 11}, Row{"[0,0,1,-1,0]", 37}, Row{"[1,0,1,4,-6]", 14}}) {
    auto e = curve(q, row.a);
    int w = root_number(e);
    for (i64 d = -200; d <= 200; ++d) {
      if (d == 0 || d == 1 || !is_squarefree(d)) continue;
      i64 disc = (d % 4 + 4) % 4 == 1 ? d : 4 * d;
      if (std::gcd(disc, row.n) != 1) continue;
      int expect = w * kronecker(Integer(disc), row.n) * (disc < 0 ? -1 : 1);
      CHECK_MESSAGE(root_number(quadratic_twist(e, Element(d))) == expect, row.a << " d=" << d);
    }
  }
}

TEST_CASE("base change: w(E/K) = w(E) w(E^d) for K = Q(sqrt d)") {
  Field q = Field::rational();
  for (i64 m : {-1, -2, -3, -7, 2, 3, 5}) {
    Field k = Field::quadratic(m);
    for (const char* a : {"[0,-1,1,-10,-20]", "[0,0,1,-1,0]", "[1,1,1,-10,-10]", "[0,1,1,-2,0]"}) {
      auto e = curve(q, a);
      int expect = root_number(e) * root_number(quadratic_twist(e, Element(m)));
      CHECK_MESSAGE(root_number(curve(k, a)) == expect, a << " over " << k.str());
    }
  }
}
