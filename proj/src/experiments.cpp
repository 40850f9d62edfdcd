#include "twistparity/experiments.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "twistparity/errors.hpp"

namespace twistparity {

namespace {

int sign_of(Parity p) { return p == Parity::Even ? 1 : -1; }

std::vector<Place> special_places(const ParityCalculus& calc) {
  std::vector<Place> out = calc.partition().real_places;
  for (const auto* part : {&calc.partition().sigma1, &calc.partition().sigma2}) out.insert(out.end(), part->begin(), part->end());
  return out;
}

}  // namespace

DensityReport scan_density(const EllipticCurve& e, i64 x, const ScanOptions& options) {
  if (options.buckets < 1) throw Error(ErrorKind::Malformed, "bucket count must be positive");
  const ParityCalculus calc(e, options.parity);
  const KappaReport kr = kappa(e, options.parity_override, options.parity);
  if (!kr.parity) throw Error(ErrorKind::ParityUnavailable, "rank parity of " + e.str() + " is not certified");

  DensityReport r;
  r.field = e.field().str();
  r.curve = e.str();
  r.x = x;
  r.parity = *kr.parity;
  r.predicted = *kr.predicted_even_density;
  r.total = 0;
  r.even = 0;
  r.fraction = 0;

  std::vector<i64> bounds;
  for (int k = 1; k <= options.buckets; ++k) {
    const i64 b = x * k / options.buckets;
    if (b >= 1) bounds.push_back(b);
  }
  if (!bounds.empty()) {
    const std::vector<Place> sigma = special_places(calc);
    const LocalImageSpace space(e.field(), sigma);
    // Parity-preserving sign of each element of Γ_Σ.
    std::vector<int> keeps(space.size());
    for (size_t g = 0; g < space.size(); ++g) {
      int s = 1;
      for (size_t i = 0; i < sigma.size(); ++i) {
        const int c = space.component(g, i);
        const LocalField& lf = *space.completion(i);
        s *= sigma[i].is_finite() ? calc.m_v(sigma[i], c).value() : lf.class_symbol(lf.class_of(Element(-1)), c);
      }
      keeps[g] = s * sign_of(r.parity);
    }
    for (const auto& fc : count_local_images(e.field(), sigma, bounds, options.workers)) {
      BucketRow row;
      row.bound = fc.bound;
      row.total = fc.total;
      row.even = 0;
      for (size_t g = 0; g < fc.counts.size(); ++g) {
        if (keeps[g] == 1) row.even += fc.counts[g];
      }
      r.series.push_back(row);
    }
    r.total = r.series.back().total;
    r.even = r.series.back().even;
    r.fraction = r.series.back().fraction();
  }

  if (options.oracle_height > 0) {
    const auto chars = characters_by_height(e.field(), options.oracle_height);
    const OracleReport o = compare_with_oracle(calc, chars, twisted_root_numbers(e, chars, options.workers));
    r.oracle_checked = o.checked;
    r.mismatches = o.mismatches.size();
  }
  return r;
}

std::vector<int> twisted_root_numbers(const EllipticCurve& e, const std::vector<QuadChar>& chars, int workers) {
  std::vector<int> out(chars.size(), 0);
  const size_t n = static_cast<size_t>(std::max(1, workers));
  auto run = [&](size_t w) {
    for (size_t i = w; i < chars.size(); i += n) {
      try {
        out[i] = root_number(quadratic_twist(e, chars[i].delta()));
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::UnsupportedRepresentation) throw;
        out[i] = 0;
      }
    }
  };
  if (n == 1) {
    run(0);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(n);
  for (size_t w = 0; w < n; ++w) {
    pool.emplace_back([&, w] {
      try {
        run(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return out;
}

OracleReport compare_with_oracle(const ParityCalculus& calc, const std::vector<QuadChar>& chars,
                                 const std::vector<int>& twisted) {
  if (chars.size() != twisted.size()) throw Error(ErrorKind::Internal, "oracle input sizes differ");
  OracleReport rep;
  const int w = root_number(calc.curve());
  for (size_t i = 0; i < chars.size(); ++i) {
    if (twisted[i] == 0) {
      ++rep.unsupported;
      continue;
    }
    ++rep.checked;
    const int a = calc.parity_change(chars[i]).value() * w;
    const int t = calc.root_number_change(chars[i]).value() * w;
    if (a == twisted[i] && t == twisted[i]) continue;
    Mismatch m{chars[i].delta().str(), a, t, twisted[i], {}};
    std::ostringstream diag;
    std::vector<Place> places = chars[i].ramified_places();
    for (const auto* part : {&calc.partition().sigma1, &calc.partition().sigma2, &calc.partition().other_bad}) {
      places.insert(places.end(), part->begin(), part->end());
    }
    std::sort(places.begin(), places.end());
    places.erase(std::unique(places.begin(), places.end()), places.end());
    for (const auto& v : places) {
      const int c = calc.curve().field().completion(v)->class_of(chars[i].delta());
      diag << v.label() << ": row " << calc.row(v, c) << " n=" << calc.n_v(v, c).value() << "; ";
    }
    m.diagnostics = diag.str();
    rep.mismatches.push_back(std::move(m));
  }
  return rep;
}

OracleReport oracle_crosscheck(const EllipticCurve& e, i64 height, ParityOptions options, int workers) {
  const ParityCalculus calc(e, options);
  const auto chars = characters_by_height(e.field(), height);
  return compare_with_oracle(calc, chars, twisted_root_numbers(e, chars, workers));
}

std::vector<EllipticCurve> standard_corpus() {
  const Field q = Field::rational();
  const EllipticCurve e11 = EllipticCurve::parse(q, "[0,-1,1,-10,-20]");
  const EllipticCurve e14 = EllipticCurve::parse(q, "[1,0,1,4,-6]");
  return {e11,
          quadratic_twist(e11, Element(-11)),
          quadratic_twist(e11, Element(-1)),
          quadratic_twist(e11, Element(-3)),
          quadratic_twist(e14, Element(-1)),
          EllipticCurve::parse(q, "[0,0,1,-1,0]")};
}

// ---------------------------------------------------------------------------------------------

ReportFormat parse_format(std::string_view s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  throw Error(ErrorKind::Malformed, "format must be json or csv, got `" + std::string(s) + "`");
}

namespace {

using nlohmann::ordered_json;

ordered_json rational_json(const Rational& q) { return {{"num", to_string(numerator(q))}, {"den", to_string(denominator(q))}}; }

Rational rational_from(const ordered_json& j) {
  return Rational(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
}

ordered_json to_json(const DensityReport& r) {
  ordered_json series = ordered_json::array();
  for (const auto& b : r.series) {
    series.push_back({{"bound", b.bound},
                      {"total", to_string(b.total)},
                      {"even", to_string(b.even)},
                      {"fraction", rational_json(b.fraction())}});
  }
  return {{"field", r.field},
          {"curve", r.curve},
          {"x", r.x},
          {"parity", to_string(r.parity)},
          {"total", to_string(r.total)},
          {"even", to_string(r.even)},
          {"fraction", rational_json(r.fraction)},
          {"predicted", rational_json(r.predicted)},
          {"series", series},
          {"oracle_checked", r.oracle_checked},
          {"mismatches", r.mismatches}};
}

}  // namespace

void write_report(std::ostream& out, const DensityReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) {
    out << to_json(r).dump(2) << '\n';
    return;
  }
  out << "X_bucket,total,even,fraction_num,fraction_den,predicted_num,predicted_den\n";
  for (const auto& b : r.series) {
    const Rational f = b.fraction();
    out << b.bound << ',' << to_string(b.total) << ',' << to_string(b.even) << ',' << to_string(numerator(f)) << ','
        << to_string(denominator(f)) << ',' << to_string(numerator(r.predicted)) << ','
        << to_string(denominator(r.predicted)) << '\n';
  }
}

void emit_report(const DensityReport& r, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
  write_report(out, r, format);
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write to " + path + " failed");
}

DensityReport parse_json_report(std::string_view text) {
  try {
    const auto j = ordered_json::parse(text);
    DensityReport r;
    r.field = j.at("field").get<std::string>();
    r.curve = j.at("curve").get<std::string>();
    r.x = j.at("x").get<i64>();
    const auto parity = j.at("parity").get<std::string>();
    if (parity != "even" && parity != "odd") throw Error(ErrorKind::Malformed, "parity `" + parity + "`");
    r.parity = parity == "even" ? Parity::Even : Parity::Odd;
    r.total = Integer(j.at("total").get<std::string>());
    r.even = Integer(j.at("even").get<std::string>());
    r.fraction = rational_from(j.at("fraction"));
    r.predicted = rational_from(j.at("predicted"));
    for (const auto& b : j.at("series")) {
      BucketRow row;
      row.bound = b.at("bound").get<i64>();
      row.total = Integer(b.at("total").get<std::string>());
      row.even = Integer(b.at("even").get<std::string>());
      r.series.push_back(row);
    }
    r.oracle_checked = j.at("oracle_checked").get<u64>();
    r.mismatches = j.at("mismatches").get<u64>();
    return r;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Malformed, std::string("report json: ") + ex.what());
  } catch (const std::runtime_error& ex) {
    if (dynamic_cast<const Error*>(&ex)) throw;
    throw Error(ErrorKind::Malformed, std::string("report json: ") + ex.what());
  }
}

// ---------------------------------------------------------------------------------------------

namespace {

bool matches_profile(const EllipticCurve& e, const CurveSearch& params) {
  int special = 0;
  for (const auto& v : bad_places(e)) {
    const ReductionData rd = reduction_type(e, v);
    if (rd.type == ReductionType::Good) continue;
    if (!rd.is_multiplicative() || v.p == 2 || v.residue_norm > params.max_norm || ++special > 1) return false;
    const ScenarioKind kind = rd.split_sign > 0 ? ScenarioKind::Split : ScenarioKind::Nonsplit;
    if (kind != params.kind) return false;
  }
  if (special != 1) return false;
  return !params.parity || rank_parity(e) == *params.parity;
}

}  // namespace

std::optional<EllipticCurve> search_curve(const Field& field, const CurveSearch& params) {
  if (params.kind != ScenarioKind::Split && params.kind != ScenarioKind::Nonsplit) {
    throw Error(ErrorKind::Malformed, "curve search supports split or nonsplit profiles");
  }
  const int b = params.coefficient_bound;
  std::vector<Element> small;  // integral elements with ω-coordinates in [−b, b], rational ones first
  for (int c1 = 0; c1 <= (field.is_rational() ? 0 : b); ++c1) {
    for (int sgn1 : {1, -1}) {
      if (c1 == 0 && sgn1 < 0) continue;
      for (int c0 = 0; c0 <= b; ++c0) {
        for (int sgn0 : {1, -1}) {
          if (c0 == 0 && sgn0 < 0) continue;
          small.push_back(field.from_omega(Integer(sgn0 * c0), Integer(sgn1 * c1)));
        }
      }
    }
  }
  const std::vector<Element> bits{Element(0), Element(1)};
  for (const auto& a1 : bits) {
    for (const auto& a3 : bits) {
      for (const auto& a2 : {Element(0), Element(-1), Element(1)}) {
        for (const auto& a4 : small) {
          for (const auto& a6 : small) {
            try {
              const EllipticCurve e(field, {a1, a2, a3, a4, a6});
              if (matches_profile(e, params)) return e;
            } catch (const Error& err) {
              if (err.kind() != ErrorKind::SingularCurve && err.kind() != ErrorKind::UnsupportedRepresentation) throw;
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------------------------

std::vector<GammaConfig> random_gamma_configs(u64 seed, int count, int max_places) {
  std::mt19937_64 rng(seed);
  const std::vector<ScenarioKind> kinds{ScenarioKind::Real,  ScenarioKind::Split,
                                        ScenarioKind::Nonsplit, ScenarioKind::PotMultQuadratic,
                                        ScenarioKind::PotMultNonquadratic, ScenarioKind::Complex};
  const std::vector<int> finite_sizes{4, 4, 8, 8, 16};
  std::vector<GammaConfig> out;
  for (int i = 0; i < count; ++i) {
    GammaConfig config;
    const int places = 1 + static_cast<int>(rng() % static_cast<u64>(std::max(1, max_places)));
    for (int j = 0; j < places; ++j) {
      Scenario s;
      s.kind = kinds[rng() % kinds.size()];
      if (s.kind == ScenarioKind::Real) {
        s.c_size = 2;
      } else if (s.kind == ScenarioKind::Complex) {
        s.c_size = 1;
      } else {
        s.c_size = finite_sizes[rng() % finite_sizes.size()];
      }
      s.q_mod4 = rng() % 2 ? 1 : 3;
      s.mu_sign = rng() % 2 ? 1 : -1;
      config.push_back(s);
    }
    out.push_back(std::move(config));
  }
  return out;
}

LemmaSummary run_lemmas(u64 seed, int trials, int workers, i64 surjectivity_x) {
  LemmaSummary s;
  for (const auto& config : random_gamma_configs(seed, trials)) {
    ++s.counting_trials;
    if (!counting_check(config, workers).equal) ++s.counting_failures;
  }
  const Field q = Field::rational();
  std::vector<Place> sigma = q.archimedean_places();
  for (i64 p : {2, 3, 5}) sigma.push_back(q.places_above(p).at(0));
  s.surjectivity = surjectivity_check(q, sigma, surjectivity_x);
  for (i64 p : primes_up_to(499)) {
    if (p == 2) continue;
    ++s.gauss_primes;
    if (!gauss_sum_check(p)) ++s.gauss_failures;
  }
  return s;
}

}  // namespace twistparity
