#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mtype/experiments.hpp"
#include "mtype/generators.hpp"
#include "mtype/lifting.hpp"
#include "mtype/markov.hpp"
#include "mtype/metric_graph.hpp"
#include "mtype/metric_space.hpp"
#include "mtype/optimizer.hpp"
#include "mtype/rng.hpp"
#include "mtype/scalar.hpp"
#include "mtype/wasserstein.hpp"

namespace mtype {

using json = nlohmann::json;

// Exact values serialize as "num/den" strings ("num" when integral); real
// values as doubles.  On read, strings parse exactly (including decimal
// literals); JSON numbers are taken at their exact binary double value.

inline json scalar_to_json(const Scalar& s) {
  if (s.is_rational()) return to_string(s.rational());
  return s.to_double();
}

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return Rational(j.get<double>());
  throw Error("expected a rational value (string or number)");
}

inline Scalar scalar_from_json(const json& j, bool real_mode = false) {
  const Rational q = rational_from_json(j);
  if (real_mode) return Scalar(Real(q));
  return Scalar(q);
}

inline json space_to_json(const FiniteMetricSpace& x) {
  json dist = json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < x.size(); ++j)
      row.push_back(scalar_to_json(x.dist(i, j)));
    dist.push_back(std::move(row));
  }
  return json{{"labels", x.labels()},
              {"dist", std::move(dist)},
              {"mode", x.exact() ? "exact" : "real"}};
}

inline FiniteMetricSpace space_from_json(const json& j, double tol = kRealTol) {
  if (!j.contains("labels") || !j.contains("dist"))
    throw Error("space JSON needs \"labels\" and \"dist\"");
  const auto labels = j.at("labels").get<std::vector<std::string>>();
  const bool real_mode = j.value("mode", "exact") == std::string("real");
  const auto& rows = j.at("dist");
  if (!rows.is_array() || rows.size() != labels.size())
    throw LengthMismatch("distance matrix shape mismatch");
  SquareMatrix<Scalar> d(labels.size(), Scalar(0));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != labels.size())
      throw LengthMismatch("distance matrix shape mismatch");
    for (std::size_t k = 0; k < labels.size(); ++k)
      d(i, k) = scalar_from_json(rows[i][k], real_mode);
  }
  return FiniteMetricSpace::from_matrix(labels, std::move(d), tol);
}

inline json graph_to_json(const MetricGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges())
    edges.push_back(json::array({e.u, e.v, to_string(e.len)}));
  return json{{"labels", g.labels()}, {"edges", std::move(edges)}};
}

inline MetricGraph graph_from_json(const json& j) {
  if (!j.contains("labels") || !j.contains("edges"))
    throw Error("graph JSON needs \"labels\" and \"edges\"");
  auto labels = j.at("labels").get<std::vector<std::string>>();
  std::vector<MetricGraph::Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw Error("graph edge must be [u, v, length]");
    edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                     rational_from_json(e[2])});
  }
  return MetricGraph::create(std::move(labels), std::move(edges));
}

inline json chain_to_json(const ReversibleChain& z) {
  json pi = json::array();
  for (std::size_t i = 0; i < z.size(); ++i) pi.push_back(to_string(z.pi(i)));
  json a = json::array();
  for (std::size_t i = 0; i < z.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < z.size(); ++k) row.push_back(to_string(z.a(i, k)));
    a.push_back(std::move(row));
  }
  return json{{"pi", std::move(pi)}, {"a", std::move(a)}};
}

inline ReversibleChain chain_from_json(const json& j) {
  if (!j.contains("pi") || !j.contains("a"))
    throw Error("chain JSON needs \"pi\" and \"a\"");
  std::vector<Rational> pi;
  for (const auto& v : j.at("pi")) pi.push_back(rational_from_json(v));
  const auto& rows = j.at("a");
  if (!rows.is_array() || rows.size() != pi.size())
    throw LengthMismatch("transition matrix shape mismatch");
  SquareMatrix<Rational> a(pi.size(), Rational(0));
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != pi.size())
      throw LengthMismatch("transition matrix shape mismatch");
    for (std::size_t k = 0; k < pi.size(); ++k)
      a(i, k) = rational_from_json(rows[i][k]);
  }
  return ReversibleChain::create(std::move(pi), std::move(a));
}

// A walk file is a chain plus an optional state-to-point map "f"
// (identity when omitted).
inline MarkovWalk walk_from_json(const json& j, FiniteMetricSpace space) {
  ReversibleChain z = chain_from_json(j);
  if (j.contains("f"))
    return MarkovWalk::create(std::move(z), std::move(space),
                              j.at("f").get<std::vector<std::size_t>>());
  return MarkovWalk::identity_walk(std::move(z), std::move(space));
}

inline json walk_to_json(const MarkovWalk& w) {
  json out = chain_to_json(w.chain);
  out["f"] = w.f;
  return out;
}

// The "space" field is an opaque reference for the reader's benefit; the
// actual space always arrives separately (CLI --space).
inline json measure_to_json(const EmpiricalMeasure& mu,
                            const json& space_ref = nullptr) {
  json atoms = json::array();
  for (std::size_t k = 0; k < mu.support.size(); ++k)
    atoms.push_back(json{{"point", mu.support[k]}, {"w", to_string(mu.weights[k])}});
  return json{{"space", space_ref}, {"atoms", std::move(atoms)}};
}

inline EmpiricalMeasure measure_from_json(
    const json& j, std::shared_ptr<const FiniteMetricSpace> space) {
  if (!j.contains("atoms")) throw Error("measure JSON needs \"atoms\"");
  std::vector<std::size_t> support;
  std::vector<Rational> weights;
  for (const auto& atom : j.at("atoms")) {
    support.push_back(atom.at("point").get<std::size_t>());
    weights.push_back(rational_from_json(atom.at("w")));
  }
  return EmpiricalMeasure::create(std::move(space), std::move(support),
                                  std::move(weights));
}

inline json liftspec_to_json(const LiftSpec& s) {
  json pairs = json::array();
  for (const auto& [u, v] : s.e().pairs) pairs.push_back(json::array({u, v}));
  return json{{"sigma", s.sigma()}, {"E", std::move(pairs)}};
}

// Base size defaults to 1 + max(sigma); surjectivity is re-validated.
inline LiftSpec liftspec_from_json(const json& j) {
  if (!j.contains("sigma") || !j.contains("E"))
    throw Error("lift spec JSON needs \"sigma\" and \"E\"");
  const auto sigma = j.at("sigma").get<std::vector<std::size_t>>();
  std::size_t base = 0;
  for (std::size_t v : sigma) base = std::max(base, v + 1);
  base = j.value("base_size", base);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& e : j.at("E")) {
    if (!e.is_array() || e.size() != 2) throw Error("pair must be [x, y]");
    pairs.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
  }
  return LiftSpec::create(base, sigma, std::move(pairs));
}

inline OptimizerConfig optimizer_config_from_json(const json& j) {
  OptimizerConfig cfg;
  cfg.restarts = j.value("restarts", cfg.restarts);
  cfg.copies = j.value("copies", cfg.copies);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.max_t = j.value("maxT", cfg.max_t);
  return cfg;
}

inline json optimizer_config_to_json(const OptimizerConfig& cfg) {
  return json{{"restarts", cfg.restarts},
              {"copies", cfg.copies},
              {"seed", cfg.seed},
              {"maxT", cfg.max_t}};
}

inline json optimizer_report_to_json(const OptimizerReport& r) {
  json out{{"found", r.found}, {"p", r.p}, {"T", r.t}};
  if (r.found) {
    out["ratio"] = to_string(r.ratio);
    out["bound"] = r.bound;
    out["f"] = r.f;
    json w = json::array();
    for (std::size_t i = 0; i < r.best.w.size(); ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < r.best.w.size(); ++k)
        row.push_back(to_string(r.best.w(i, k)));
      w.push_back(std::move(row));
    }
    out["weights"] = std::move(w);
  }
  json restarts = json::array();
  for (const auto& rec : r.restarts)
    restarts.push_back(json{{"index", rec.index},
                            {"seed_kind", rec.seed_kind},
                            {"iters", rec.iters},
                            {"search_value", rec.search_value},
                            {"skipped", rec.skipped},
                            {"exact_ratio", to_string(rec.exact_ratio)}});
  out["restarts"] = std::move(restarts);
  return out;
}

// Generator specs: {"gen": "cycle", "n": 8}, {"gen": "hamming", "d": 4},
// {"gen": "torus", "k": 4, "d": 2}, {"gen": "random", "n": 6, "seed": 7},
// or {"gen": "graph", ...graph JSON...} for the metric of a graph.
inline FiniteMetricSpace space_from_generator(const json& j) {
  const std::string gen = j.value("gen", "");
  if (gen == "cycle") return cycle(j.at("n").get<int>());
  if (gen == "hamming") return hamming_cube(j.at("d").get<int>());
  if (gen == "torus")
    return discrete_torus(j.at("k").get<int>(), j.at("d").get<int>());
  if (gen == "random") {
    Rng rng(j.value("seed", 1ull));
    return random_metric_space(j.at("n").get<std::size_t>(), rng);
  }
  if (gen == "graph") return graph_metric(graph_from_json(j));
  throw Error("unknown generator \"" + gen + "\"");
}

// Accepts either an explicit space ("labels"/"dist") or a generator spec.
inline FiniteMetricSpace space_from_any_json(const json& j,
                                             double tol = kRealTol) {
  if (j.contains("gen")) return space_from_generator(j);
  return space_from_json(j, tol);
}

inline json torus_report_to_json(const TorusReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json item{{"n", row.n},           {"k", row.k},
              {"T", row.t},           {"walk", row.walk},
              {"skipped", row.skipped}};
    if (row.skipped) {
      item["note"] = row.note;
    } else {
      item["base_ratio"] = to_string(row.base_ratio);
      item["lifted_ratio"] = to_string(row.lifted_ratio);
      item["scaled_ratio"] = to_string(row.scaled_ratio);
      item["lift_ge_base"] = row.lift_ge_base;
      item["scale_invariant"] = row.scale_invariant;
    }
    rows.push_back(std::move(item));
  }
  return json{{"T", r.t},
              {"tol", r.tol},
              {"rows", std::move(rows)},
              {"max_ratio", r.max_ratio},
              {"all_hold", r.all_hold}};
}

inline json hamming_report_to_json(const HammingReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json item{{"d", row.d},
              {"T", row.t},
              {"simple_ratio", to_string(row.simple_ratio)},
              {"simple_ratio_value",
               Rational(row.simple_ratio).convert_to<double>()},
              {"increased_from_prev", row.increased_from_prev},
              {"exceeds_one", row.exceeds_one}};
    if (row.has_optimized) item["optimized_ratio"] = to_string(row.optimized_ratio);
    rows.push_back(std::move(item));
  }
  return json{{"rows", std::move(rows)},
              {"simple_strictly_increasing", r.simple_strictly_increasing},
              {"exceeds_one_from_4", r.exceeds_one_from_4}};
}

inline json cantlift_report_to_json(const CantliftReport& r) {
  return json{{"submetry_ok", r.submetry_ok},
              {"infeasible", r.infeasible},
              {"witness_verified", r.witness_verified},
              {"feasible_variant_ok", r.feasible_variant_ok},
              {"no_junction_ok", r.no_junction_ok},
              {"summary", r.summary}};
}

inline json wasserstein_report_to_json(const WassersteinReport& r) {
  return json{{"trials", r.trials},
              {"seed", r.seed},
              {"max_isometry_dev", r.max_isometry_dev},
              {"max_oracle_dev", r.max_oracle_dev},
              {"failures", r.failures},
              {"ok", r.ok}};
}

}  // namespace mtype
