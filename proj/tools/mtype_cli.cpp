// mtype: exact Markov type computations on finite metric spaces.
//
// Subcommand tree: space gen|check, walk ratio|stepdist,
// lift quotient|cover|verify, wp dist|isometry, opt maximize|grid,
// exp torus|hamming|cantlift|wasserstein, bound wp|w2|distortion.
// Human-readable tables go to stdout; --json/--csv write files.  Exit code 0
// only when every inequality the command asserts actually holds.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mtype/bounds.hpp"
#include "mtype/certificate.hpp"
#include "mtype/experiments.hpp"
#include "mtype/json_io.hpp"

using namespace mtype;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << std::setw(2) << j << "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << text;
}

std::vector<std::size_t> parse_indices(const std::string& s) {
  std::vector<std::size_t> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    if (tok.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(static_cast<std::size_t>(std::stoull(tok)));
  }
  if (out.empty()) throw Error("empty index list \"" + s + "\"");
  return out;
}

std::string dbl(double v) {
  std::ostringstream out;
  out << std::setprecision(15) << v;
  return out.str();
}

std::string scalar_str(const Scalar& s) {
  if (s.is_rational())
    return to_string(s.rational()) + " = " + dbl(s.to_double());
  return dbl(s.to_double());
}

FiniteMetricSpace load_space(const std::string& path, double tol) {
  return space_from_any_json(read_json_file(path), tol);
}

MarkovWalk load_walk(const std::string& chain_path, FiniteMetricSpace space) {
  return walk_from_json(read_json_file(chain_path), std::move(space));
}

IsometryGroup load_group(const std::string& path) {
  json j = read_json_file(path);
  if (j.is_object() && j.contains("elements")) j = j.at("elements");
  return IsometryGroup::create(
      j.get<std::vector<std::vector<std::size_t>>>());
}

OptimizerConfig optimizer_config(const std::string& config_path, int restarts,
                                 int copies, std::uint64_t seed, int max_t) {
  OptimizerConfig cfg;
  if (!config_path.empty())
    cfg = optimizer_config_from_json(read_json_file(config_path));
  if (restarts > 0) cfg.restarts = restarts;
  if (copies > 0) cfg.copies = copies;
  if (seed != 0) cfg.seed = seed;
  if (max_t > 0) cfg.max_t = max_t;
  return cfg;
}

// ---------------------------------------------------------------- space ---

int cmd_space_gen(const std::string& spec_path, const std::string& gen,
                  int n, int d, int k, std::uint64_t seed,
                  const std::string& graph_path, const std::string& json_out) {
  json spec;
  if (!spec_path.empty()) {
    spec = read_json_file(spec_path);
  } else if (gen == "graph") {
    spec = read_json_file(graph_path);
    spec["gen"] = "graph";
  } else {
    spec = json{{"gen", gen}};
    if (gen == "cycle") spec["n"] = n;
    if (gen == "hamming") spec["d"] = d;
    if (gen == "torus") {
      spec["k"] = k;
      spec["d"] = d;
    }
    if (gen == "random") {
      spec["n"] = n;
      spec["seed"] = seed;
    }
  }
  const FiniteMetricSpace x = space_from_generator(spec);
  std::cout << x.size() << " points, " << (x.exact() ? "exact" : "real")
            << " mode\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::cout << std::setw(10) << x.label(i) << " |";
    for (std::size_t j = 0; j < x.size(); ++j)
      std::cout << " " << std::setw(6)
                << (x.dist(i, j).is_rational()
                        ? to_string(x.dist(i, j).rational())
                        : dbl(x.dist(i, j).to_double()));
    std::cout << "\n";
  }
  if (!json_out.empty()) write_json_file(json_out, space_to_json(x));
  return 0;
}

int cmd_space_check(const std::string& space_path, double tol) {
  const FiniteMetricSpace x = load_space(space_path, tol);
  std::cout << "valid metric space: " << x.size() << " points, "
            << (x.exact() ? "exact" : "real") << " mode\n";
  return 0;
}

// ----------------------------------------------------------------- walk ---

int cmd_walk_ratio(const std::string& space_path, const std::string& chain_path,
                   int p, int t, int max_t, double tol,
                   const std::string& json_out) {
  const MarkovWalk w = load_walk(chain_path, load_space(space_path, tol));
  const int cap = std::max(max_t, t);
  const Scalar e1 = energy(w, p, 1, cap);
  const Scalar et = energy(w, p, t, cap);
  const Scalar r = ratio(w, p, t, cap);
  std::cout << "E_" << p << "(W,1) = " << scalar_str(e1) << "\n";
  std::cout << "E_" << p << "(W," << t << ") = " << scalar_str(et) << "\n";
  std::cout << "ratio = " << scalar_str(r) << "\n";
  if (!json_out.empty())
    write_json_file(json_out, json{{"p", p},
                                   {"T", t},
                                   {"e1", scalar_to_json(e1)},
                                   {"eT", scalar_to_json(et)},
                                   {"ratio", scalar_to_json(r)}});
  return 0;
}

int cmd_walk_stepdist(const std::string& space_path,
                      const std::string& chain_path, double tol,
                      const std::string& json_out) {
  const MarkovWalk w = load_walk(chain_path, load_space(space_path, tol));
  const auto dist = step_distance_distribution(w);
  std::cout << std::setw(14) << "distance" << std::setw(14) << "mass" << "\n";
  json atoms = json::array();
  for (const auto& [v, m] : dist.atoms()) {
    std::cout << std::setw(14)
              << (v.is_rational() ? to_string(v.rational()) : dbl(v.to_double()))
              << std::setw(14) << to_string(m) << "\n";
    atoms.push_back(json{{"distance", scalar_to_json(v)}, {"mass", to_string(m)}});
  }
  if (!json_out.empty()) write_json_file(json_out, json{{"atoms", atoms}});
  return 0;
}

// ----------------------------------------------------------------- lift ---

int cmd_lift_quotient(const std::string& space_path,
                      const std::string& group_path,
                      const std::string& chain_path, int p, int t, int max_t,
                      double tol, const std::string& json_out) {
  const FiniteMetricSpace x = load_space(space_path, tol);
  const IsometryGroup g = load_group(group_path);
  g.validate_on(x);
  const auto [q, chi] = quotient_by_group(x, g);
  const MarkovWalk w = load_walk(chain_path, q);
  const LiftedWalk lifted = quotient_lift_walk(w, x, g, chi);
  const bool verified =
      verify_metric_lift(lifted.walk, w, chi, lifted.sigma, tol);
  std::cout << "quotient: " << q.size() << " points over " << x.size()
            << "; lifted chain has " << lifted.walk.chain.size()
            << " states\n";
  const int cap = std::max(max_t, t);
  bool dominated = true;
  try {
    const Scalar rb = ratio(w, p, t, cap);
    const Scalar rl = ratio(lifted.walk, p, t, cap);
    dominated = rl >= rb;
    std::cout << "base ratio   = " << scalar_str(rb) << "\n";
    std::cout << "lifted ratio = " << scalar_str(rl) << "\n";
  } catch (const DegenerateWalk&) {
    std::cout << "ratio skipped: walk never moves\n";
  }
  std::cout << "metric lift verified: " << (verified ? "yes" : "NO") << "\n";
  if (!json_out.empty()) {
    json out = walk_to_json(lifted.walk);
    out["sigma"] = lifted.sigma;
    out["spec"] = liftspec_to_json(lifted.spec);
    out["verified"] = verified;
    write_json_file(json_out, out);
  }
  return verified && dominated ? 0 : 1;
}

int cmd_lift_cover(const std::string& base_graph_path,
                   const std::string& cover_graph_path,
                   const std::string& chain_path, const std::string& map_str,
                   int p, int t, int max_t, const std::string& json_out) {
  const MetricGraph base = graph_from_json(read_json_file(base_graph_path));
  const MetricGraph cover = graph_from_json(read_json_file(cover_graph_path));
  std::vector<std::size_t> vmap;
  if (!map_str.empty()) {
    vmap = parse_indices(map_str);
  } else {
    vmap.resize(cover.size());
    for (std::size_t v = 0; v < cover.size(); ++v) vmap[v] = v % base.size();
  }
  const MarkovWalk w = load_walk(chain_path, graph_metric(base));
  const LiftedWalk lifted = covering_lift_walk(w, cover, base, vmap);
  const bool verified =
      verify_metric_lift(lifted.walk, w, vmap, lifted.sigma, kRealTol);
  const int cap = std::max(max_t, t);
  bool dominated = true;
  try {
    const Scalar rb = ratio(w, p, t, cap);
    const Scalar rl = ratio(lifted.walk, p, t, cap);
    dominated = rl >= rb;
    std::cout << "base ratio   = " << scalar_str(rb) << "\n";
    std::cout << "lifted ratio = " << scalar_str(rl) << "\n";
    std::cout << "lift >= base: " << (dominated ? "yes" : "NO") << "\n";
  } catch (const DegenerateWalk&) {
    std::cout << "ratio skipped: walk never moves\n";
  }
  std::cout << "metric lift verified: " << (verified ? "yes" : "NO") << "\n";
  if (!json_out.empty()) {
    json out = walk_to_json(lifted.walk);
    out["sigma"] = lifted.sigma;
    out["verified"] = verified;
    write_json_file(json_out, out);
  }
  return verified && dominated ? 0 : 1;
}

int cmd_lift_verify(const std::string& chain_path,
                    const std::string& lifted_path,
                    const std::string& spec_path) {
  const ReversibleChain base = chain_from_json(read_json_file(chain_path));
  const ReversibleChain lifted = chain_from_json(read_json_file(lifted_path));
  const LiftSpec spec = liftspec_from_json(read_json_file(spec_path));
  const bool regular = is_regular(spec);
  const bool lift_ok = verify_lift(lifted, base, spec.sigma());
  const bool one_step = simplechain_condition(lifted, base, spec.sigma());
  const bool restricted = is_restricted_by(lifted, spec.e());
  std::cout << "spec regular:          " << (regular ? "yes" : "no") << "\n";
  std::cout << "lift conditions:       " << (lift_ok ? "yes" : "NO") << "\n";
  std::cout << "one-step condition:    " << (one_step ? "yes" : "NO") << "\n";
  std::cout << "restricted to E:       " << (restricted ? "yes" : "NO") << "\n";
  return lift_ok && one_step && restricted ? 0 : 1;
}

// ------------------------------------------------------------------- wp ---

int cmd_wp_dist(const std::string& space_path, const std::string& mu_path,
                const std::string& nu_path, int p, double tol,
                const std::string& json_out) {
  const auto space =
      std::make_shared<const FiniteMetricSpace>(load_space(space_path, tol));
  const EmpiricalMeasure mu = measure_from_json(read_json_file(mu_path), space);
  const EmpiricalMeasure nu = measure_from_json(read_json_file(nu_path), space);
  const Scalar d = wp_rational(mu, nu, p);
  std::cout << "W_" << p << " = " << scalar_str(d) << "\n";
  if (!json_out.empty())
    write_json_file(json_out, json{{"p", p}, {"wp", scalar_to_json(d)}});
  return 0;
}

int cmd_wp_isometry(const std::string& space_path, const std::string& xs,
                    const std::string& ys, int p, double tol,
                    const std::string& json_out) {
  const auto space =
      std::make_shared<const FiniteMetricSpace>(load_space(space_path, kRealTol));
  const auto w = parse_indices(xs);
  const auto q = parse_indices(ys);
  const Scalar spd = symmetrized_power_distance(*space, w, q, p);
  const Scalar via = wp_rational(phi_n(space, w), phi_n(space, q), p);
  const double dev = std::fabs((spd - via).to_double());
  std::cout << "symmetrized power distance = " << scalar_str(spd) << "\n";
  std::cout << "W_p of merged measures     = " << scalar_str(via) << "\n";
  std::cout << "deviation = " << dev << "\n";
  double oracle_dev = 0.0;
  if (w.size() <= 8) {
    oracle_dev =
        std::fabs((wp_uniform(*space, w, q, p) - wp_bruteforce(*space, w, q, p))
                      .to_double());
    std::cout << "assignment vs brute force deviation = " << oracle_dev << "\n";
  }
  if (!json_out.empty())
    write_json_file(json_out, json{{"spd", scalar_to_json(spd)},
                                   {"via_measures", scalar_to_json(via)},
                                   {"deviation", dev},
                                   {"oracle_deviation", oracle_dev}});
  return dev <= tol && oracle_dev <= tol ? 0 : 1;
}

// ------------------------------------------------------------------ opt ---

int cmd_opt_maximize(const std::string& space_path, int p, int t,
                     const std::string& config_path, int restarts, int copies,
                     std::uint64_t seed, int max_t, double tol,
                     const std::string& json_out, const std::string& csv_out) {
  const FiniteMetricSpace x = load_space(space_path, tol);
  const OptimizerConfig cfg =
      optimizer_config(config_path, restarts, copies, seed, max_t);
  const OptimizerReport report = maximize(x, p, t, cfg);
  if (!report.found) {
    std::cout << "no non-degenerate candidate found\n";
    return 1;
  }
  std::cout << "exact ratio = " << to_string(report.ratio) << " = "
            << dbl(Rational(report.ratio).convert_to<double>()) << "\n";
  std::cout << "certified bound: M_" << p << " >= ratio^(1/" << p
            << ") = " << dbl(report.bound) << "\n";
  std::cout << "restarts: " << report.restarts.size() << "\n";

  // The certificate must re-verify exactly on the rationalized candidate.
  const Scalar re = objective(report.best, report.f, x, p, t,
                              std::max(cfg.max_t, t));
  const bool sound = !x.exact() || (re.is_rational() &&
                                    re.rational() == Rational(report.ratio));
  if (!sound) std::cout << "re-verification FAILED\n";

  if (!json_out.empty()) write_json_file(json_out, optimizer_report_to_json(report));
  if (!csv_out.empty()) {
    std::ostringstream csv;
    csv << "index,seed_kind,iters,search_value,skipped,exact_ratio\n";
    for (const auto& rec : report.restarts)
      csv << rec.index << "," << rec.seed_kind << "," << rec.iters << ","
          << dbl(rec.search_value) << "," << (rec.skipped ? 1 : 0) << ","
          << to_string(rec.exact_ratio) << "\n";
    write_text_file(csv_out, csv.str());
  }
  return sound ? 0 : 1;
}

int cmd_opt_grid(const std::string& space_path, int p, int t,
                 long long resolution, double tol,
                 const std::string& json_out) {
  const FiniteMetricSpace x = load_space(space_path, tol);
  std::vector<std::size_t> f(x.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = i;
  const Scalar v = exhaustive_small(x, f, p, t, resolution);
  std::cout << "grid maximum (resolution " << resolution
            << ") = " << scalar_str(v) << "\n";
  if (!json_out.empty())
    write_json_file(json_out, json{{"p", p},
                                   {"T", t},
                                   {"resolution", resolution},
                                   {"value", scalar_to_json(v)}});
  return 0;
}

// ------------------------------------------------------------------ exp ---

int cmd_exp_torus(std::size_t nmax, std::size_t kmax, int t, double tol,
                  int restarts, std::uint64_t seed,
                  const std::string& json_out, const std::string& csv_out) {
  OptimizerConfig cfg;
  if (restarts > 0) cfg.restarts = restarts;
  if (seed != 0) cfg.seed = seed;
  const TorusReport report = experiment_torus(nmax, kmax, t, tol, cfg);
  std::cout << std::setw(4) << "n" << std::setw(4) << "k" << std::setw(4) << "T"
            << std::setw(12) << "walk" << " " << std::setw(16) << "base" << " "
            << std::setw(16) << "lifted" << " " << std::setw(7) << "lift>="
            << "\n";
  std::ostringstream csv;
  csv << "n,k,T,walk,skipped,base_ratio,lifted_ratio,scaled_ratio,"
         "lift_ge_base,scale_invariant,note\n";
  for (const auto& row : report.rows) {
    if (row.skipped) {
      std::cout << std::setw(4) << row.n << std::setw(4) << row.k
                << std::setw(4) << row.t << std::setw(12) << row.walk
                << "  skipped (" << row.note << ")\n";
      csv << row.n << "," << row.k << "," << row.t << "," << row.walk
          << ",1,,,,,,\"" << row.note << "\"\n";
      continue;
    }
    std::cout << std::setw(4) << row.n << std::setw(4) << row.k << std::setw(4)
              << row.t << std::setw(12) << row.walk << " " << std::setw(16)
              << to_string(row.base_ratio) << " " << std::setw(16)
              << to_string(row.lifted_ratio) << " " << std::setw(7)
              << (row.lift_ge_base ? "yes" : "NO") << "\n";
    csv << row.n << "," << row.k << "," << row.t << "," << row.walk << ",0,"
        << to_string(row.base_ratio) << "," << to_string(row.lifted_ratio)
        << "," << to_string(row.scaled_ratio) << ","
        << (row.lift_ge_base ? 1 : 0) << "," << (row.scale_invariant ? 1 : 0)
        << ",\n";
  }
  std::cout << "max lifted ratio = " << dbl(report.max_ratio)
            << "; all inequalities hold: " << (report.all_hold ? "yes" : "NO")
            << "\n";
  if (!json_out.empty()) write_json_file(json_out, torus_report_to_json(report));
  if (!csv_out.empty()) write_text_file(csv_out, csv.str());
  return report.all_hold ? 0 : 1;
}

int cmd_exp_hamming(int dmax, int optimize_dmax, int restarts,
                    std::uint64_t seed, const std::string& json_out,
                    const std::string& csv_out) {
  OptimizerConfig cfg;
  if (restarts > 0) cfg.restarts = restarts;
  if (seed != 0) cfg.seed = seed;
  const HammingReport report = experiment_hamming(dmax, optimize_dmax, cfg);
  std::cout << std::setw(4) << "d" << std::setw(4) << "T" << " " << std::setw(18)
            << "simple" << " " << std::setw(14) << "value" << " "
            << std::setw(18) << "optimized" << "\n";
  std::ostringstream csv;
  csv << "d,T,simple_ratio,simple_value,optimized_ratio,increased,exceeds_one\n";
  for (const auto& row : report.rows) {
    const double val = Rational(row.simple_ratio).convert_to<double>();
    std::cout << std::setw(4) << row.d << std::setw(4) << row.t << " "
              << std::setw(18) << to_string(row.simple_ratio) << " "
              << std::setw(14) << dbl(val) << " " << std::setw(18)
              << (row.has_optimized ? to_string(row.optimized_ratio) : "-")
              << "\n";
    csv << row.d << "," << row.t << "," << to_string(row.simple_ratio) << ","
        << dbl(val) << ","
        << (row.has_optimized ? to_string(row.optimized_ratio) : "") << ","
        << (row.increased_from_prev ? 1 : 0) << ","
        << (row.exceeds_one ? 1 : 0) << "\n";
  }
  std::cout << "strictly increasing: "
            << (report.simple_strictly_increasing ? "yes" : "NO")
            << "; exceeds 1 from d = 4: "
            << (report.exceeds_one_from_4 ? "yes" : "NO") << "\n";
  if (!json_out.empty())
    write_json_file(json_out, hamming_report_to_json(report));
  if (!csv_out.empty()) write_text_file(csv_out, csv.str());
  return report.simple_strictly_increasing && report.exceeds_one_from_4 ? 0 : 1;
}

int cmd_exp_cantlift(const std::string& json_out) {
  const CantliftReport report = experiment_cantlift();
  std::cout << "projection is a submetry:      "
            << (report.submetry_ok ? "yes" : "NO") << "\n";
  std::cout << "fiber-mass system infeasible:  "
            << (report.infeasible ? "yes" : "NO") << "\n";
  std::cout << "Farkas witness verified:       "
            << (report.witness_verified ? "yes" : "NO") << "\n";
  std::cout << "perturbed variant feasible:    "
            << (report.feasible_variant_ok ? "yes" : "NO") << "\n";
  std::cout << "junction-free system feasible: "
            << (report.no_junction_ok ? "yes" : "NO") << "\n";
  std::cout << report.summary << "\n";
  if (!json_out.empty())
    write_json_file(json_out, cantlift_report_to_json(report));
  const bool ok = report.submetry_ok && report.infeasible &&
                  report.witness_verified && report.feasible_variant_ok &&
                  report.no_junction_ok;
  return ok ? 0 : 1;
}

int cmd_exp_wasserstein(int trials, std::uint64_t seed,
                        const std::string& json_out) {
  const WassersteinReport report = experiment_wasserstein(trials, seed);
  std::cout << "trials = " << report.trials << ", seed = " << report.seed
            << "\n";
  std::cout << "max isometry deviation = " << report.max_isometry_dev << "\n";
  std::cout << "max oracle deviation   = " << report.max_oracle_dev << "\n";
  std::cout << "failures = " << report.failures << " ("
            << (report.ok ? "ok" : "NOT ok") << ")\n";
  if (!json_out.empty())
    write_json_file(json_out, wasserstein_report_to_json(report));
  return report.ok ? 0 : 1;
}

// ---------------------------------------------------------------- bound ---

int cmd_bound_wp(double p, long long d, long long t) {
  std::cout << "M_p bound = " << dbl(bound_wp(p, d, t).convert_to<double>())
            << "\n";
  return 0;
}

int cmd_bound_w2(double p, long long d) {
  std::cout << "M_2 bound = " << dbl(bound_w2(p, d).convert_to<double>())
            << "\n";
  return 0;
}

int cmd_bound_distortion(double n, double alpha, double p, long long d,
                         double c) {
  std::cout << "distortion lower bound = "
            << dbl(bound_distortion(n, alpha, p, d, c).convert_to<double>())
            << " (zeta = " << dbl(bound_zeta(p).convert_to<double>())
            << ", C supplied by caller; the formula's absolute constant is "
               "not pinned down)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Markov type computations on finite metric spaces"};
  app.require_subcommand(1);
  int rc = 0;

  // Shared option storage; each subcommand binds the pieces it uses.
  std::string space_path, chain_path, group_path, spec_path, lifted_path;
  std::string base_graph_path, cover_graph_path, graph_path, map_str;
  std::string mu_path, nu_path, xs, ys, gen = "cycle";
  std::string json_out, csv_out, config_path;
  int p = 2, t = 2, max_t = kDefaultMaxT;
  int n = 4, d = 1, k = 4, dmax = 6, optimize_dmax = 2, trials = 100;
  std::size_t nmax = 6, kmax = 3;
  int restarts = 0, copies = 0;
  long long dim = 1, time_steps = 1, resolution = 10;
  double pd = 4.0, alpha = 1.0, cconst = 1.0, npts = 16.0;
  double tol = kRealTol, dev_tol = 1e-9, exp_tol = 1e-6;
  std::uint64_t seed = 0;

  // space
  auto* space = app.add_subcommand("space", "generate or validate spaces");
  space->require_subcommand(1);
  auto* space_gen = space->add_subcommand("gen", "emit a generated space");
  space_gen->add_option("--gen", gen, "cycle|hamming|torus|random|graph");
  space_gen->add_option("--spec", spec_path, "generator spec JSON file");
  space_gen->add_option("--n", n, "points (cycle, random)");
  space_gen->add_option("--d", d, "dimension (hamming, torus)");
  space_gen->add_option("--k", k, "side length (torus)");
  space_gen->add_option("--seed", seed, "seed (random)");
  space_gen->add_option("--graph", graph_path, "graph JSON (gen graph)");
  space_gen->add_option("--json", json_out, "write the space as JSON");
  space_gen->callback([&] {
    rc = cmd_space_gen(spec_path, gen, n, d, k, seed, graph_path, json_out);
  });
  auto* space_check = space->add_subcommand("check", "validate a space file");
  space_check->add_option("--space", space_path, "space JSON")->required();
  space_check->add_option("--tol", tol, "metric tolerance for real mode");
  space_check->callback([&] { rc = cmd_space_check(space_path, tol); });

  // walk
  auto* walk = app.add_subcommand("walk", "evaluate Markov walks");
  walk->require_subcommand(1);
  auto* walk_ratio = walk->add_subcommand("ratio", "energy ratio at time T");
  walk_ratio->add_option("--space", space_path, "space JSON")->required();
  walk_ratio->add_option("--chain", chain_path, "chain/walk JSON")->required();
  walk_ratio->add_option("--p", p, "moment exponent");
  walk_ratio->add_option("--T", t, "time");
  walk_ratio->add_option("--maxT", max_t, "matrix power cap");
  walk_ratio->add_option("--tol", tol, "metric tolerance");
  walk_ratio->add_option("--json", json_out, "write results as JSON");
  walk_ratio->callback([&] {
    rc = cmd_walk_ratio(space_path, chain_path, p, t, max_t, tol, json_out);
  });
  auto* walk_stepdist =
      walk->add_subcommand("stepdist", "law of the one-step distance");
  walk_stepdist->add_option("--space", space_path, "space JSON")->required();
  walk_stepdist->add_option("--chain", chain_path, "chain/walk JSON")->required();
  walk_stepdist->add_option("--tol", tol, "metric tolerance");
  walk_stepdist->add_option("--json", json_out, "write atoms as JSON");
  walk_stepdist->callback(
      [&] { rc = cmd_walk_stepdist(space_path, chain_path, tol, json_out); });

  // lift
  auto* lift = app.add_subcommand("lift", "construct and verify lifts");
  lift->require_subcommand(1);
  auto* lift_quot =
      lift->add_subcommand("quotient", "lift a walk on X/G back to X");
  lift_quot->add_option("--space", space_path, "space JSON (X)")->required();
  lift_quot->add_option("--group", group_path, "isometry group JSON")->required();
  lift_quot->add_option("--chain", chain_path, "walk JSON on the quotient")
      ->required();
  lift_quot->add_option("--p", p, "moment exponent");
  lift_quot->add_option("--T", t, "time");
  lift_quot->add_option("--maxT", max_t, "matrix power cap");
  lift_quot->add_option("--tol", tol, "metric tolerance");
  lift_quot->add_option("--json", json_out, "write the lifted walk as JSON");
  lift_quot->callback([&] {
    rc = cmd_lift_quotient(space_path, group_path, chain_path, p, t, max_t,
                           tol, json_out);
  });
  auto* lift_cover =
      lift->add_subcommand("cover", "lift a walk along a graph covering");
  lift_cover->add_option("--base-graph", base_graph_path, "base graph JSON")
      ->required();
  lift_cover->add_option("--cover-graph", cover_graph_path, "cover graph JSON")
      ->required();
  lift_cover->add_option("--chain", chain_path, "walk JSON on the base metric")
      ->required();
  lift_cover->add_option("--map", map_str,
                         "vertex map as indices (default v mod base size)");
  lift_cover->add_option("--p", p, "moment exponent");
  lift_cover->add_option("--T", t, "time");
  lift_cover->add_option("--maxT", max_t, "matrix power cap");
  lift_cover->add_option("--json", json_out, "write the lifted walk as JSON");
  lift_cover->callback([&] {
    rc = cmd_lift_cover(base_graph_path, cover_graph_path, chain_path, map_str,
                        p, t, max_t, json_out);
  });
  auto* lift_verify = lift->add_subcommand("verify", "check lift conditions");
  lift_verify->add_option("--chain", chain_path, "base chain JSON")->required();
  lift_verify->add_option("--lifted", lifted_path, "lifted chain JSON")
      ->required();
  lift_verify->add_option("--spec", spec_path, "lift spec JSON (sigma, E)")
      ->required();
  lift_verify->callback(
      [&] { rc = cmd_lift_verify(chain_path, lifted_path, spec_path); });

  // wp
  auto* wp = app.add_subcommand("wp", "transport distances");
  wp->require_subcommand(1);
  auto* wp_dist = wp->add_subcommand("dist", "W_p of two measures");
  wp_dist->add_option("--space", space_path, "space JSON")->required();
  wp_dist->add_option("--mu", mu_path, "measure JSON")->required();
  wp_dist->add_option("--nu", nu_path, "measure JSON")->required();
  wp_dist->add_option("--p", p, "transport exponent");
  wp_dist->add_option("--tol", tol, "metric tolerance");
  wp_dist->add_option("--json", json_out, "write the distance as JSON");
  wp_dist->callback(
      [&] { rc = cmd_wp_dist(space_path, mu_path, nu_path, p, tol, json_out); });
  auto* wp_iso =
      wp->add_subcommand("isometry", "tuple distance vs merged measures");
  wp_iso->add_option("--space", space_path, "space JSON")->required();
  wp_iso->add_option("--x", xs, "first tuple, comma-separated indices")
      ->required();
  wp_iso->add_option("--y", ys, "second tuple, comma-separated indices")
      ->required();
  wp_iso->add_option("--p", p, "transport exponent");
  wp_iso->add_option("--tol", dev_tol, "accepted deviation");
  wp_iso->add_option("--json", json_out, "write the comparison as JSON");
  wp_iso->callback(
      [&] { rc = cmd_wp_isometry(space_path, xs, ys, p, dev_tol, json_out); });

  // opt
  auto* opt = app.add_subcommand("opt", "ratio maximization");
  opt->require_subcommand(1);
  auto* opt_max = opt->add_subcommand("maximize", "multi-start gradient search");
  opt_max->add_option("--space", space_path, "space JSON")->required();
  opt_max->add_option("--p", p, "moment exponent");
  opt_max->add_option("--T", t, "time");
  opt_max->add_option("--config", config_path, "optimizer config JSON");
  opt_max->add_option("--restarts", restarts, "restart count");
  opt_max->add_option("--copies", copies, "state copies per point");
  opt_max->add_option("--seed", seed, "search seed");
  opt_max->add_option("--maxT", max_t, "matrix power cap");
  opt_max->add_option("--tol", tol, "metric tolerance");
  opt_max->add_option("--json", json_out, "write the full report as JSON");
  opt_max->add_option("--csv", csv_out, "write the restart log as CSV");
  opt_max->callback([&] {
    rc = cmd_opt_maximize(space_path, p, t, config_path, restarts, copies,
                          seed, max_t, tol, json_out, csv_out);
  });
  auto* opt_grid = opt->add_subcommand("grid", "exhaustive small-weight scan");
  opt_grid->add_option("--space", space_path, "space JSON")->required();
  opt_grid->add_option("--p", p, "moment exponent");
  opt_grid->add_option("--T", t, "time");
  opt_grid->add_option("--resolution", resolution, "integer weight budget");
  opt_grid->add_option("--tol", tol, "metric tolerance");
  opt_grid->add_option("--json", json_out, "write the value as JSON");
  opt_grid->callback(
      [&] { rc = cmd_opt_grid(space_path, p, t, resolution, tol, json_out); });

  // exp
  auto* exp = app.add_subcommand("exp", "experiment suites");
  exp->require_subcommand(1);
  auto* exp_torus = exp->add_subcommand("torus", "cyclic covers of cycles");
  exp_torus->add_option("--nmax", nmax, "largest base cycle");
  exp_torus->add_option("--kmax", kmax, "largest cover multiplicity");
  exp_torus->add_option("--T", t, "time");
  exp_torus->add_option("--tol", exp_tol, "ratio tolerance over 1");
  exp_torus->add_option("--restarts", restarts, "optimizer restarts");
  exp_torus->add_option("--seed", seed, "optimizer seed");
  exp_torus->add_option("--json", json_out, "write the report as JSON");
  exp_torus->add_option("--csv", csv_out, "write rows as CSV");
  exp_torus->callback([&] {
    rc = cmd_exp_torus(nmax, kmax, t, exp_tol, restarts, seed, json_out,
                       csv_out);
  });
  auto* exp_ham = exp->add_subcommand("hamming", "cube growth table");
  exp_ham->add_option("--dmax", dmax, "largest (even) dimension");
  exp_ham->add_option("--optimize-dmax", optimize_dmax,
                      "optimize up to this dimension");
  exp_ham->add_option("--restarts", restarts, "optimizer restarts");
  exp_ham->add_option("--seed", seed, "optimizer seed");
  exp_ham->add_option("--json", json_out, "write the report as JSON");
  exp_ham->add_option("--csv", csv_out, "write rows as CSV");
  exp_ham->callback([&] {
    rc = cmd_exp_hamming(dmax, optimize_dmax, restarts, seed, json_out,
                         csv_out);
  });
  auto* exp_cant = exp->add_subcommand("cantlift", "non-liftable walk pipeline");
  exp_cant->add_option("--json", json_out, "write the report as JSON");
  exp_cant->callback([&] { rc = cmd_exp_cantlift(json_out); });
  auto* exp_wass = exp->add_subcommand("wasserstein", "transport consistency");
  exp_wass->add_option("--trials", trials, "instance count");
  exp_wass->add_option("--seed", seed, "instance seed");
  exp_wass->add_option("--json", json_out, "write the report as JSON");
  exp_wass->callback([&] {
    rc = cmd_exp_wasserstein(trials, seed == 0 ? 1 : seed, json_out);
  });

  // bound
  auto* bound = app.add_subcommand("bound", "closed-form bound evaluators");
  bound->require_subcommand(1);
  auto* bound_wp_cmd = bound->add_subcommand("wp", "M_p bound at time T");
  bound_wp_cmd->add_option("--p", pd, "exponent > 2");
  bound_wp_cmd->add_option("--d", dim, "dimension");
  bound_wp_cmd->add_option("--T", time_steps, "time");
  bound_wp_cmd->callback([&] { rc = cmd_bound_wp(pd, dim, time_steps); });
  auto* bound_w2_cmd = bound->add_subcommand("w2", "M_2 bound");
  bound_w2_cmd->add_option("--p", pd, "exponent > 2");
  bound_w2_cmd->add_option("--d", dim, "dimension");
  bound_w2_cmd->callback([&] { rc = cmd_bound_w2(pd, dim); });
  auto* bound_dist_cmd =
      bound->add_subcommand("distortion", "snowflake distortion lower bound");
  bound_dist_cmd->add_option("--n", npts, "point count");
  bound_dist_cmd->add_option("--alpha", alpha, "snowflake exponent in [1/2, 1]");
  bound_dist_cmd->add_option("--p", pd, "exponent > 2");
  bound_dist_cmd->add_option("--d", dim, "dimension");
  bound_dist_cmd->add_option("--C", cconst, "caller-supplied constant");
  bound_dist_cmd->callback(
      [&] { rc = cmd_bound_distortion(npts, alpha, pd, dim, cconst); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
