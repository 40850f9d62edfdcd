#include "twistparity/parity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <thread>

#include "twistparity/errors.hpp"

namespace twistparity {

SignValue::SignValue(int s) : value_(s) {
  if (s != 1 && s != -1) throw Error(ErrorKind::Internal, "sign value " + std::to_string(s));
}

int table_row(const LocalRepType& rep, const LocalField& v, int chi_class) {
  const bool unram = v.class_is_unramified(chi_class);
  switch (rep.variant) {
    case RepVariant::PrincipalUnramified: return unram ? 1 : 2;
    case RepVariant::PrincipalRamifiedQuadTwistOfGood:
      if (unram) return 3;
      return v.class_is_unramified(v.class_product(chi_class, rep.eta_class)) ? 4 : 5;
    case RepVariant::SpecialUnramified: return unram ? 6 : 7;
    case RepVariant::SpecialRamifiedQuadratic:
      if (unram) return 10;
      return v.class_is_unramified(v.class_product(chi_class, rep.eta_class)) ? 9 : 8;
    case RepVariant::Unsupported: break;
  }
  throw Error(ErrorKind::UnsupportedRepresentation, "no table row at " + v.place().label());
}

ParityCalculus::ParityCalculus(EllipticCurve curve, ParityOptions options)
    : curve_(std::move(curve)), options_(options) {
  if (options_.mutate_row < 0 || options_.mutate_row > 10) {
    throw Error(ErrorKind::Malformed, "mutate row " + std::to_string(options_.mutate_row) + " outside 0..10");
  }
  for (const auto& v : curve_.field().archimedean_places()) {
    if (v.kind == PlaceKind::Real) partition_.real_places.push_back(v);
  }
  for (const auto& v : bad_places(curve_)) {
    PlaceTable t;
    t.place = v;
    t.completion = curve_.field().completion(v);
    t.rep = local_rep_type(curve_, v);
    switch (t.rep.variant) {
      case RepVariant::SpecialUnramified: partition_.sigma1.push_back(v); break;
      case RepVariant::SpecialRamifiedQuadratic: partition_.sigma2.push_back(v); break;
      case RepVariant::Unsupported:
        if (!options_.assume_principal_series) {
          throw Error(ErrorKind::UnsupportedRepresentation,
                      "additive potentially good reduction at " + v.label() + " is not certified principal series");
        }
        partition_.other_bad.push_back(v);
        tables_.push_back(std::move(t));
        continue;
      default: partition_.other_bad.push_back(v); break;
    }
    tables_.push_back(build_rows(std::move(t)));
  }
}

ParityCalculus::PlaceTable ParityCalculus::build_rows(PlaceTable t) const {
  const LocalField& lf = *t.completion;
  const int minus_one = lf.class_of(Element(-1));
  const int pi = lf.class_of(lf.uniformizer());
  for (int c = 0; c < lf.num_classes(); ++c) {
    const int row = table_row(t.rep, lf, c);
    const int chi_m1 = lf.class_symbol(minus_one, c);
    int n = 1;
    switch (row) {
      case 1:
      case 3:
      case 10: n = 1; break;
      case 2:
      case 4:
      case 5:
      case 8: n = chi_m1; break;
      case 6: n = lf.class_symbol(pi, c); break;
      case 7: n = -chi_m1 * t.rep.split_sign; break;
      case 9: {
        // χ_v(−ϖ)·μ_v(ϖ) = (χμ)(ϖ)·χ_v(−1), read off the multiplicative twist E^χ.
        const ReductionData tw = reduction_type(quadratic_twist(curve_, lf.class_representative(c)), t.place);
        if (!tw.is_multiplicative()) {
          throw Error(ErrorKind::Internal, "row 9 twist is not multiplicative at " + t.place.label());
        }
        n = -chi_m1 * tw.split_sign;
        break;
      }
      default: throw Error(ErrorKind::Internal, "row " + std::to_string(row));
    }
    if (row == options_.mutate_row) n = -n;
    t.rows.push_back(row);
    t.n.push_back(n);
  }
  return t;
}

const ParityCalculus::PlaceTable* ParityCalculus::find(const Place& v) const {
  for (const auto& t : tables_) {
    if (t.place == v) return &t;
  }
  return nullptr;
}

ParityCalculus::PlaceTable ParityCalculus::build(const Place& v) const {
  PlaceTable t;
  t.place = v;
  t.completion = curve_.field().completion(v);
  t.rep = LocalRepType{RepVariant::PrincipalUnramified, 0, -1};
  return build_rows(std::move(t));
}

int ParityCalculus::row(const Place& v, int chi_class) const {
  if (!v.is_finite()) throw Error(ErrorKind::UnsupportedPlace, "no table row at " + v.label());
  if (const PlaceTable* t = find(v)) {
    if (t->rows.empty()) throw Error(ErrorKind::UnsupportedRepresentation, "no certified type at " + v.label());
    return t->rows.at(static_cast<size_t>(chi_class));
  }
  return table_row(LocalRepType{RepVariant::PrincipalUnramified, 0, -1}, *curve_.field().completion(v), chi_class);
}

SignValue ParityCalculus::n_v(const Place& v, int chi_class) const {
  if (!v.is_finite()) throw Error(ErrorKind::UnsupportedPlace, "n_v at " + v.label());
  if (const PlaceTable* t = find(v)) {
    if (t->n.empty()) throw Error(ErrorKind::UnsupportedRepresentation, "no certified type at " + v.label());
    return SignValue(t->n.at(static_cast<size_t>(chi_class)));
  }
  return SignValue(build(v).n.at(static_cast<size_t>(chi_class)));
}

SignValue ParityCalculus::m_v(const Place& v, int chi_class) const {
  const PlaceTable* t = find(v);
  if (!t || (t->rep.variant != RepVariant::SpecialUnramified && t->rep.variant != RepVariant::SpecialRamifiedQuadratic)) {
    throw Error(ErrorKind::WrongRepClass, "m_v is defined on special places only, not at " + v.label());
  }
  const LocalField& lf = *t->completion;
  return SignValue(lf.class_symbol(lf.class_of(Element(-1)), chi_class)) * SignValue(t->n.at(static_cast<size_t>(chi_class)));
}

SignValue ParityCalculus::parity_change(const QuadChar& chi) const {
  SignValue s;
  for (size_t i = 0; i < chi.negative_real_places().size(); ++i) s = -s;
  for (const auto* part : {&partition_.sigma1, &partition_.sigma2}) {
    for (const auto& v : *part) s *= m_v(v, find(v)->completion->class_of(chi.delta()));
  }
  return s;
}

SignValue ParityCalculus::root_number_change(const QuadChar& chi) const {
  std::vector<Place> places = chi.ramified_places();
  for (const auto& t : tables_) {
    if (t.rep.variant != RepVariant::PrincipalUnramified) places.push_back(t.place);
  }
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());
  SignValue s;
  for (const auto& v : places) s *= n_v(v, curve_.field().completion(v)->class_of(chi.delta()));
  return s;
}

Rational ParityCalculus::kappa_v_direct(const Place& v) const {
  if (v.kind == PlaceKind::Complex) return Rational(1);
  auto lf = curve_.field().completion(v);
  if (v.kind == PlaceKind::Real) {
    const int minus_one = lf->class_of(Element(-1));
    int sum = 0;
    for (int c = 0; c < lf->num_classes(); ++c) sum += lf->class_symbol(minus_one, c);
    return Rational(sum, lf->num_classes());
  }
  const PlaceTable* t = find(v);
  if (!t || (t->rep.variant != RepVariant::SpecialUnramified && t->rep.variant != RepVariant::SpecialRamifiedQuadratic)) {
    return Rational(1);
  }
  int sum = 0;
  for (int c = 0; c < lf->num_classes(); ++c) sum += m_v(v, c).value();
  return Rational(sum, lf->num_classes());
}

SignValue parity_change(const EllipticCurve& e, const QuadChar& chi) { return ParityCalculus(e).parity_change(chi); }

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Real: return "real";
    case ScenarioKind::Complex: return "complex";
    case ScenarioKind::Split: return "split";
    case ScenarioKind::Nonsplit: return "nonsplit";
    case ScenarioKind::PotMultQuadratic: return "pot-mult-quadratic";
    case ScenarioKind::PotMultNonquadratic: return "pot-mult-nonquadratic";
    case ScenarioKind::Other: return "other";
  }
  return "?";
}

Rational kappa_closed_form(ScenarioKind kind, int c_size) {
  const Rational two_over_c(2, c_size);
  switch (kind) {
    case ScenarioKind::Real: return Rational(0);
    case ScenarioKind::Complex: return Rational(1);
    case ScenarioKind::Split: return two_over_c - 1;
    case ScenarioKind::Nonsplit:
    case ScenarioKind::PotMultQuadratic: return 1 - two_over_c;
    case ScenarioKind::PotMultNonquadratic:
    case ScenarioKind::Other: return Rational(1);
  }
  return Rational(1);
}

ScenarioKind scenario_of(const ParityCalculus& calc, const Place& v) {
  if (v.kind == PlaceKind::Real) return ScenarioKind::Real;
  if (v.kind == PlaceKind::Complex) return ScenarioKind::Complex;
  const auto& part = calc.partition();
  if (std::find(part.sigma1.begin(), part.sigma1.end(), v) != part.sigma1.end()) {
    return reduction_type(calc.curve(), v).split_sign > 0 ? ScenarioKind::Split : ScenarioKind::Nonsplit;
  }
  if (std::find(part.sigma2.begin(), part.sigma2.end(), v) != part.sigma2.end()) return ScenarioKind::PotMultQuadratic;
  return ScenarioKind::Other;
}

KappaReport kappa(const EllipticCurve& e, std::optional<Parity> parity_override, ParityOptions options) {
  const ParityCalculus calc(e, options);
  KappaReport r;
  r.kappa = 1;
  std::vector<Place> places = calc.partition().real_places;
  for (const auto* part : {&calc.partition().sigma1, &calc.partition().sigma2}) places.insert(places.end(), part->begin(), part->end());
  for (const auto& v : places) {
    const int c_size = e.field().completion(v)->num_classes();
    const Rational closed = kappa_closed_form(scenario_of(calc, v), c_size);
    const Rational direct = calc.kappa_v_direct(v);
    if (closed != direct) {
      throw Error(ErrorKind::Internal, "κ at " + v.label() + ": closed form " + to_string(closed) + " vs average " + to_string(direct));
    }
    r.local.emplace_back(v, closed);
    r.kappa *= closed;
  }
  if (parity_override) {
    r.parity = parity_override;
  } else {
    try {
      r.parity = rank_parity(e);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::UnsupportedRepresentation) throw;
    }
  }
  if (r.parity) r.predicted_even_density = predicted_even_density(r.kappa, *r.parity);
  return r;
}

Rational predicted_even_density(const Rational& kappa, Parity parity) {
  return (1 + (parity == Parity::Even ? kappa : -kappa)) / 2;
}

Rational predicted_even_density(const EllipticCurve& e, std::optional<Parity> parity_override, ParityOptions options) {
  const KappaReport r = kappa(e, parity_override, options);
  if (!r.predicted_even_density) {
    throw Error(ErrorKind::ParityUnavailable, "rank parity of " + e.str() + " is not certified; pass a parity override");
  }
  return *r.predicted_even_density;
}

// ---------------------------------------------------------------------------------------------

namespace {

struct Realization {
  Field field;
  i64 p = 0;
  PlaceKind kind = PlaceKind::Finite;
};

Realization realize(const Scenario& s) {
  switch (s.c_size) {
    case 1: return {Field::quadratic(-1), 0, PlaceKind::Complex};
    case 2: return {Field::rational(), 0, PlaceKind::Real};
    case 4: return {Field::rational(), s.q_mod4 % 4 == 3 ? 3 : 5, PlaceKind::Finite};
    case 8: return {Field::rational(), 2, PlaceKind::Finite};
    case 16: return {Field::quadratic(-1), 2, PlaceKind::Finite};
    default: break;
  }
  throw Error(ErrorKind::Malformed, "no local field with " + std::to_string(s.c_size) + " quadratic characters");
}

}  // namespace

std::vector<int> scenario_signs(const Scenario& s) {
  const bool archimedean = s.kind == ScenarioKind::Real || s.kind == ScenarioKind::Complex;
  if (archimedean != (s.c_size <= 2)) {
    throw Error(ErrorKind::Malformed, std::string(to_string(s.kind)) + " scenario with |c_v| = " + std::to_string(s.c_size));
  }
  if (s.kind == ScenarioKind::Real && s.c_size != 2) throw Error(ErrorKind::Malformed, "real scenario needs |c_v| = 2");
  if (s.kind == ScenarioKind::Complex && s.c_size != 1) throw Error(ErrorKind::Malformed, "complex scenario needs |c_v| = 1");
  if (s.mu_sign != 1 && s.mu_sign != -1) throw Error(ErrorKind::Malformed, "μ(ϖ) must be ±1");

  const Realization r = realize(s);
  Place place;
  if (r.kind == PlaceKind::Finite) {
    place = r.field.places_above(r.p).at(0);
  } else {
    for (const auto& v : r.field.archimedean_places()) {
      if (v.kind == r.kind) place = v;
    }
  }
  auto lf = r.field.completion(place);
  const int n = lf->num_classes();
  const int minus_one = lf->class_of(Element(-1));
  std::vector<int> out(static_cast<size_t>(n), 1);
  if (s.kind == ScenarioKind::Real) {
    for (int c = 0; c < n; ++c) out[static_cast<size_t>(c)] = lf->class_symbol(minus_one, c);
    return out;
  }
  if (archimedean) return out;

  const int pi = lf->class_of(lf->uniformizer());
  int eta = -1;
  for (int c = 1; c < n && eta < 0; ++c) {
    if (!lf->class_is_unramified(c)) eta = c;
  }
  for (int c = 0; c < n; ++c) {
    const bool unram = lf->class_is_unramified(c);
    int& m = out[static_cast<size_t>(c)];
    switch (s.kind) {
      case ScenarioKind::Split: m = unram ? lf->class_symbol(pi, c) : -1; break;
      case ScenarioKind::Nonsplit: m = unram ? lf->class_symbol(pi, c) : 1; break;
      case ScenarioKind::PotMultQuadratic: {
        // μ = η·λ with λ unramified, λ(ϖ) = mu_sign.
        const int chi_eta = lf->class_product(c, eta);
        if (!unram && lf->class_is_unramified(chi_eta)) m = -lf->class_symbol(pi, chi_eta) * s.mu_sign;
        break;
      }
      default: break;
    }
  }
  return out;
}

CountingResult counting_check(const GammaConfig& config, int workers, u64 guard) {
  std::vector<std::vector<int>> signs;
  CountingResult r;
  r.group_order = 1;
  Rational kappa_product = 1;
  for (const auto& s : config) {
    signs.push_back(scenario_signs(s));
    r.group_order *= static_cast<u64>(signs.back().size());
    kappa_product *= kappa_closed_form(s.kind, s.c_size);
    if (r.group_order > guard) {
      throw Error(ErrorKind::ExplosionGuard, "|Γ| exceeds " + std::to_string(guard));
    }
  }
  const u64 order = static_cast<u64>(r.group_order);
  const u64 nthreads = std::max<u64>(1, std::min<u64>(static_cast<u64>(std::max(1, workers)), order));
  std::vector<u64> plus(nthreads, 0);
  auto run = [&](u64 w) {
    const u64 lo = order * w / nthreads, hi = order * (w + 1) / nthreads;
    for (u64 idx = lo; idx < hi; ++idx) {
      u64 rest = idx;
      int prod = 1;
      for (const auto& sv : signs) {
        prod *= sv[rest % sv.size()];
        rest /= sv.size();
      }
      if (prod == 1) ++plus[w];
    }
  };
  if (nthreads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (u64 w = 0; w < nthreads; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  u64 total_plus = 0;
  for (u64 c : plus) total_plus += c;
  r.fraction = Rational(Integer(total_plus), r.group_order);
  r.predicted = (1 + kappa_product) / 2;
  r.equal = r.fraction == r.predicted;
  return r;
}

bool gauss_sum_check(i64 p, double* error) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) throw Error(ErrorKind::Malformed, "gauss sum needs an odd prime");
  std::complex<double> tau = 0;
  for (i64 a = 1; a < p; ++a) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(p);
    tau += static_cast<double>(legendre(a, p)) * std::polar(1.0, angle);
  }
  const double expected = static_cast<double>(p) * static_cast<double>(legendre(p - 1, p));
  const double err = std::abs(tau * tau - expected);
  if (error) *error = err;
  return err < 1e-6;
}

}  // namespace twistparity
