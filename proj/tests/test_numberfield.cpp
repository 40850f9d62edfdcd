#include "doctest.h"
#include "twistparity/errors.hpp"
#include "twistparity/localfields.hpp"
#include "twistparity/numberfield.hpp"

using namespace twistparity;

namespace {
ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}
}  // namespace

TEST_CASE("parse_field") {
  Field q = Field::parse("Q");
  CHECK(q.is_rational());
  CHECK(q.real_place_count() == 1);

  Field gi = Field::parse("Q(sqrt -1)");
  CHECK(gi.m() == -1);
  CHECK(gi.disc() == -4);
  auto arch = gi.archimedean_places();
  REQUIRE(arch.size() == 1);
  CHECK(arch[0].kind == PlaceKind::Complex);
  CHECK(gi.unit_square_classes().size() == 2);

  CHECK(kind_of([] { Field::parse("Q(sqrt 10)"); }) == ErrorKind::ClassNumberNotOne);
  CHECK(kind_of([] { Field::parse("Q(sqrt 12)"); }) == ErrorKind::NotSquarefree);
  CHECK(kind_of([] { Field::parse("Q(sqrt 1)"); }) == ErrorKind::Malformed);
  CHECK(kind_of([] { Field::parse("Q(sqr 2)"); }) == ErrorKind::Malformed);
  CHECK(kind_of([] { Field::parse("Q(sqrt -5)"); }) == ErrorKind::ClassNumberNotOne);
}

TEST_CASE("class numbers of small quadratic fields") {
  // Imaginary class-number-one list (Heegner–Stark).
  for (i64 m : {-1, -2, -3, -7, -11, -19, -43, -67, -163}) CHECK(Field::quadratic(m).class_number() == 1);
  CHECK(quadratic_class_number(-20) == 2);
  CHECK(quadratic_class_number(-23) == 3);
  CHECK(quadratic_class_number(-56) == 4);
  CHECK(quadratic_class_number(40) == 2);
  CHECK(quadratic_class_number(5) == 1);
  CHECK(quadratic_class_number(8) == 1);
  CHECK(quadratic_class_number(12) == 1);
  CHECK(quadratic_class_number(60) == 2);
  CHECK(quadratic_class_number(229) == 3);
}

TEST_CASE("unit square classes") {
  CHECK(Field::rational().unit_square_classes().size() == 2);
  CHECK(Field::quadratic(-3).unit_square_classes().size() == 2);
  CHECK(Field::quadratic(-7).unit_square_classes().size() == 2);
  for (i64 m : {2, 3, 5, 6, 7, 13, 14}) {
    Field k = Field::quadratic(m);
    CHECK(k.unit_square_classes().size() == 4);
    auto eps = k.fundamental_unit();
    REQUIRE(eps.has_value());
    CHECK(abs(eps->norm()) == 1);
    CHECK(k.is_integral(*eps));
  }
  CHECK(Field::quadratic(2).fundamental_unit() == Field::quadratic(2).parse_element("1+1*w"));
}

TEST_CASE("archimedean places") {
  CHECK(Field::rational().archimedean_places().size() == 1);
  CHECK(Field::quadratic(2).archimedean_places().size() == 2);
  auto c = Field::quadratic(-7).archimedean_places();
  REQUIRE(c.size() == 1);
  CHECK(c[0].kind == PlaceKind::Complex);
  Field k = Field::quadratic(2);
  auto real = k.archimedean_places();
  Element x = k.parse_element("1-1*w");
  CHECK(k.real_sign(x, real[0]) == -1);
  CHECK(k.real_sign(x, real[1]) == 1);
}

TEST_CASE("places_above examples") {
  auto q11 = Field::rational().places_above(11);
  REQUIRE(q11.size() == 1);
  CHECK(q11[0].residue_norm == 11);

  Field gi = Field::quadratic(-1);
  auto p5 = gi.places_above(5);
  REQUIRE(p5.size() == 2);
  for (const auto& v : p5) {
    CHECK(v.splitting == Splitting::Split);
    CHECK(v.residue_norm == 5);
    CHECK(abs(v.generator.norm()) == 5);
  }
  CHECK(p5[0].index != p5[1].index);
  // The two generators are conjugate up to units: their product has norm 25 and equals ±5 or ±5i.
  Element prod = p5[0].generator * p5[1].generator;
  CHECK(prod.norm() == 25);

  auto p3 = gi.places_above(3);
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].splitting == Splitting::Inert);
  CHECK(p3[0].residue_norm == 9);
}

TEST_CASE("splitting invariants over many fields and primes") {
  for (i64 m : {-1, -2, -3, -7, -11, -19, -43, 2, 3, 5, 6, 7, 13, 17, 21}) {
    Field k = Field::quadratic(m);
    for (i64 p : primes_up_to(60)) {
      const auto& vs = k.places_above(p);
      int sum = 0;
      for (const auto& v : vs) {
        sum += v.ramification * v.inertia;
        CHECK(abs(v.generator.norm()) == (v.splitting == Splitting::Inert ? p * p : p));
        CHECK(k.is_integral(v.generator));
        i64 nq = 1;
        for (int i = 0; i < v.inertia; ++i) nq *= p;
        CHECK(v.residue_norm == nq);
      }
      CHECK(sum == 2);
      int kr = kronecker(Integer(k.disc()), p);
      Splitting expect = kr == 1 ? Splitting::Split : kr == -1 ? Splitting::Inert : Splitting::Ramified;
      CHECK(vs[0].splitting == expect);
      if (vs.size() == 2) CHECK(vs[0].generator != vs[1].generator);
    }
  }
}

TEST_CASE("completion examples") {
  auto q7 = Field::rational().completion(Field::rational().places_above(7)[0]);
  CHECK(q7->ramification_index() == 1);
  CHECK(q7->inertia_degree() == 1);
  CHECK(q7->uniformizer() == Element(7));
  CHECK(q7->residue_size() == 7);

  Field gi = Field::quadratic(-1);
  auto i3 = gi.completion(gi.places_above(3)[0]);
  CHECK(i3->ramification_index() == 1);
  CHECK(i3->inertia_degree() == 2);
  CHECK(i3->uniformizer() == Element(3));
  CHECK(i3->residue_size() == 9);

  auto i2 = gi.completion(gi.places_above(2)[0]);
  CHECK(i2->ramification_index() == 2);
  CHECK(i2->inertia_degree() == 1);
  CHECK(i2->residue_size() == 2);
  CHECK(i2->valuation(gi.parse_element("1+1*w")) == 1);
  CHECK(i2->working_precision() >= 2 * 2 * 2 + 5);
}

TEST_CASE("element arithmetic and parsing") {
  Field k = Field::quadratic(5);
  Element x = k.parse_element("1/2+1/2*w");
  CHECK(x == k.omega());
  CHECK(k.is_integral(x));
  CHECK(x * x == x + Element(1));
  CHECK(k.parse_element(x.str()) == x);
  CHECK(k.parse_element("-3/4") == Element(Rational(Integer(-3), Integer(4))));
  CHECK(k.denominator_of(k.parse_element("1/3+1/6*w")) == 6);
  CHECK((x * x.inverse()) == Element(1));
  CHECK(k.is_square(x * x * Element(9)));
  CHECK_FALSE(k.is_square(x));
  CHECK_FALSE(Field::rational().is_square(Element(2)));
  CHECK(Field::rational().is_square(Element(Rational(Integer(9), Integer(4)))));
}
