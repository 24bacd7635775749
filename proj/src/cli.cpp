#include "gapulse/cli.hpp"

#include "gapulse/catalog.hpp"
#include "gapulse/fidelity.hpp"
#include "gapulse/operators.hpp"
#include "gapulse/sequence_io.hpp"
#include "gapulse/simulate.hpp"
#include "gapulse/sweep.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

namespace gapulse {

using nlohmann::json;

namespace {

json config_to_json(const GAConfig& c) {
  return json{{"population_size", c.population_size},
              {"generations", c.generations},
              {"cutoff", c.cutoff},
              {"elite_count", c.elite_count},
              {"tournament_size", c.tournament_size},
              {"crossover_rate", c.crossover_rate},
              {"mutation_rate", c.mutation_rate},
              {"sigma_angle_rad", c.sigma_angle_rad},
              {"sigma_delay_frac", c.sigma_delay_frac},
              {"crusher_flip_prob", c.crusher_flip_prob},
              {"mutation_decades", c.mutation_decades},
              {"d_max_s", c.d_max_s},
              {"rng_seed", c.rng_seed},
              {"restarts", c.restarts},
              {"stall_window", c.stall_window}};
}

template <typename T>
T require(const json& j, const std::string& field) {
  if (!j.contains(field))
    throw std::runtime_error("report: field '" + field + "' is missing");
  try {
    return j.at(field).get<T>();
  } catch (const json::exception&) {
    throw std::runtime_error("report: field '" + field + "' has the wrong type");
  }
}

GAConfig config_from_json(const json& j) {
  GAConfig c;
  c.population_size = require<int>(j, "population_size");
  c.generations = require<int>(j, "generations");
  c.cutoff = require<double>(j, "cutoff");
  c.elite_count = require<int>(j, "elite_count");
  c.tournament_size = require<int>(j, "tournament_size");
  c.crossover_rate = require<double>(j, "crossover_rate");
  c.mutation_rate = require<double>(j, "mutation_rate");
  c.sigma_angle_rad = require<double>(j, "sigma_angle_rad");
  c.sigma_delay_frac = require<double>(j, "sigma_delay_frac");
  c.crusher_flip_prob = require<double>(j, "crusher_flip_prob");
  c.mutation_decades = require<double>(j, "mutation_decades");
  c.d_max_s = require<double>(j, "d_max_s");
  c.rng_seed = require<std::uint64_t>(j, "rng_seed");
  c.restarts = require<int>(j, "restarts");
  c.stall_window = require<int>(j, "stall_window");
  return c;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Per-family optimize cutoffs: what each family's search reliably reaches;
// the config file and --cutoff both override.
double default_cutoff(const std::string& problem) {
  if (problem.starts_with("cnot")) return 0.9999;
  if (problem.starts_with("pps")) return 0.999;
  if (problem.starts_with("bell")) return 0.99;
  if (problem.starts_with("sqr")) return 0.999;
  return GAConfig{}.cutoff;
}

struct CommonOpts {
  std::string problem;
  double delta_hz = 500.0;
  double j_hz = 0.0;
  double theta = std::numbers::pi / 2;
  double phi = std::numbers::pi / 2;
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double cutoff = -1.0;
  bool cutoff_given = false;
};

GAConfig build_config(const CommonOpts& opt, double family_cutoff) {
  GAConfig c;
  c.cutoff = family_cutoff;
  if (!opt.config_path.empty())
    c = apply_config_text(c, read_text_file(opt.config_path));
  if (opt.cutoff_given) c.cutoff = opt.cutoff;
  if (opt.seed_given) {
    c.rng_seed = opt.seed;
  } else if (opt.config_path.empty()) {
    std::random_device rd;
    c.rng_seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  c.validate();
  return c;
}

std::string history_csv(const GAResult& r) {
  std::string out = "generation,best,mean\n";
  char line[96];
  for (size_t i = 0; i < r.best_history.size(); ++i) {
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", i + 1, r.best_history[i],
                  r.mean_history[i]);
    out += line;
  }
  return out;
}

int cmd_optimize(const CommonOpts& opt, const std::string& out_dir) {
  const SpinSystem system = SpinSystem::homonuclear_pair(opt.delta_hz, opt.j_hz);
  const Problem problem = catalog_problem(opt.problem, system, opt.theta, opt.phi);
  const GAConfig config = build_config(opt, default_cutoff(opt.problem));

  const auto t0 = std::chrono::steady_clock::now();
  const GAResult result = solve(problem, config);

  PulseSequence final_seq = result.best;
  int genes_after = result.gene_count;
  if (result.reached_cutoff) {
    // the template may have grown during solve(); match it before reducing
    Problem sized = problem;
    while (sized.tmpl.size() < result.gene_count) {
      GeneTemplate g;
      g.flips.assign(sized.tmpl.n_channels, std::nullopt);
      g.phases.assign(sized.tmpl.n_channels, std::nullopt);
      g.delay = std::nullopt;
      g.crusher = sized.tmpl.allows_crushers() ? std::optional<bool>{}
                                               : std::optional<bool>{false};
      sized.tmpl.genes.push_back(g);
    }
    final_seq = reduce_genes(result.best, sized, config);
    genes_after = final_seq.size();
  }
  final_seq = snap_sequence(final_seq);
  double fidelity = -1.0;
  try {
    fidelity = evaluate_fitness(final_seq, problem);
  } catch (const std::invalid_argument&) {
    fidelity = 0.0;  // fully crushed result; report it as worthless
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  RunReport report;
  report.problem = opt.problem;
  report.delta_hz = opt.delta_hz;
  report.j_hz = opt.j_hz;
  report.theta = opt.theta;
  report.phi = opt.phi;
  report.config = config;
  report.best_fidelity = fidelity;
  report.reached_cutoff = fidelity >= config.cutoff;
  report.genes_before = result.gene_count;
  report.genes_after = genes_after;
  report.generations_run = result.generations_run;
  report.restarts_used = result.restarts_used;
  report.wall_time_s = wall;
  if (!result.best_history.empty()) {
    report.history_best_first = result.best_history.front();
    report.history_best_last = result.best_history.back();
    report.history_mean_last = result.mean_history.back();
  }

  const std::string stem = out_dir + "/" + opt.problem;
  write_text_file(stem + "_sequence.json",
                  sequence_to_json(final_seq, system.channel_of_spin));
  write_text_file(stem + "_report.json", report_to_json(report));
  write_text_file(stem + "_history.csv", history_csv(result));

  std::printf("%s: fidelity %.12g after %d genes (%d before reduction), seed %llu\n",
              opt.problem.c_str(), fidelity, genes_after, report.genes_before,
              static_cast<unsigned long long>(config.rng_seed));
  return report.reached_cutoff ? kExitOk : kExitQuality;
}

int cmd_verify(const CommonOpts& opt, const std::string& sequence_path, double tolerance) {
  const SpinSystem system = SpinSystem::homonuclear_pair(opt.delta_hz, opt.j_hz);
  const Problem problem = catalog_problem(opt.problem, system, opt.theta, opt.phi);
  const PulseSequence seq = sequence_from_json(read_text_file(sequence_path));

  std::printf("problem: %s\n", opt.problem.c_str());
  double fidelity = 0.0;
  if (problem.kind == ObjectiveKind::State) {
    const DensityDeviation out = simulate_deviation(system, seq, problem.initial_state);
    if (out.norm() > kCrushedNormTol * problem.initial_state.norm())
      fidelity = state_fidelity(out, problem.target_state);
    std::printf("fidelity: %.17g\n", fidelity);
    const Eigen::VectorXd pops = diagonal_populations(out);
    std::printf("populations:");
    for (int i = 0; i < pops.size(); ++i) std::printf(" %.12g", pops(i));
    std::printf("\n");
    std::printf("transfer_efficiency: %.12g\n",
                transfer_efficiency(out, problem.initial_state));
  } else {
    fidelity = evaluate_fitness(seq, problem);
    std::printf("fidelity: %.17g\n", fidelity);
  }
  return fidelity >= tolerance ? kExitOk : kExitQuality;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::runtime_error("bad number in list: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

int cmd_sweep(const CommonOpts& opt, const std::string& family, const std::string& ratios,
              const std::string& thetas, const std::string& out_path) {
  SweepFamily fam;
  double family_cutoff = GAConfig{}.cutoff;
  if (family == "sqr") {
    fam = SweepFamily::Sqr;
    family_cutoff = 0.999;
  } else if (family == "cnot") {
    fam = SweepFamily::Cnot;
    family_cutoff = 0.9984;
  } else if (family == "pps") {
    fam = SweepFamily::Pps;
    family_cutoff = 0.999;
  } else {
    throw std::runtime_error("unknown sweep family: " + family);
  }

  SweepGrid grid = SweepGrid::defaults();
  grid.delta_hz = opt.delta_hz;
  if (fam != SweepFamily::Sqr) {
    // J = 0 leaves these families unsolvable by construction, so the
    // default grid starts at the first nonzero ratio instead.
    grid.ratios.erase(grid.ratios.begin());
  }
  if (!ratios.empty()) grid.ratios = parse_list(ratios);
  if (!thetas.empty()) grid.thetas = parse_list(thetas);
  grid.validate();

  const GAConfig config = build_config(opt, family_cutoff);
  const SweepSolver solver =
      fam == SweepFamily::Sqr ? SweepSolver::FixedTemplate : SweepSolver::Ga;
  const SweepTable table = fidelity_sweep(fam, solver, grid, config);

  std::string csv = fam == SweepFamily::Sqr ? "j_over_delta,theta,fidelity,converged\n"
                                            : "j_over_delta,fidelity,converged\n";
  char line[128];
  for (const SweepRow& r : table.rows) {
    if (fam == SweepFamily::Sqr)
      std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%d\n", r.j_over_delta, r.theta,
                    r.fidelity, r.converged ? 1 : 0);
    else
      std::snprintf(line, sizeof line, "%.12g,%.12g,%d\n", r.j_over_delta, r.fidelity,
                    r.converged ? 1 : 0);
    csv += line;
  }
  write_text_file(out_path, csv);
  std::printf("%s sweep: %zu rows -> %s\n", family.c_str(), table.rows.size(),
              out_path.c_str());
  return kExitOk;
}

}  // namespace

std::string report_to_json(const RunReport& r) {
  const json j{{"problem", r.problem},
               {"delta_hz", r.delta_hz},
               {"j_hz", r.j_hz},
               {"theta", r.theta},
               {"phi", r.phi},
               {"config", config_to_json(r.config)},
               {"best_fidelity", r.best_fidelity},
               {"reached_cutoff", r.reached_cutoff},
               {"genes_before", r.genes_before},
               {"genes_after", r.genes_after},
               {"generations_run", r.generations_run},
               {"restarts_used", r.restarts_used},
               {"wall_time_s", r.wall_time_s},
               {"history_best_first", r.history_best_first},
               {"history_best_last", r.history_best_last},
               {"history_mean_last", r.history_mean_last}};
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("report: not valid JSON: ") + e.what());
  }
  RunReport r;
  r.problem = require<std::string>(j, "problem");
  r.delta_hz = require<double>(j, "delta_hz");
  r.j_hz = require<double>(j, "j_hz");
  r.theta = require<double>(j, "theta");
  r.phi = require<double>(j, "phi");
  r.config = config_from_json(require<json>(j, "config"));
  r.best_fidelity = require<double>(j, "best_fidelity");
  r.reached_cutoff = require<bool>(j, "reached_cutoff");
  r.genes_before = require<int>(j, "genes_before");
  r.genes_after = require<int>(j, "genes_after");
  r.generations_run = require<int>(j, "generations_run");
  r.restarts_used = require<int>(j, "restarts_used");
  r.wall_time_s = require<double>(j, "wall_time_s");
  r.history_best_first = require<double>(j, "history_best_first");
  r.history_best_last = require<double>(j, "history_best_last");
  r.history_mean_last = require<double>(j, "history_mean_last");
  return r;
}

GAConfig apply_config_text(const GAConfig& base, const std::string& text) {
  GAConfig c = base;
  std::stringstream ss(text);
  std::string raw;
  while (std::getline(ss, raw)) {
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    auto as_int = [&](int& out) {
      size_t used = 0;
      out = std::stoi(value, &used);
      if (used != value.size()) throw std::invalid_argument(key);
    };
    auto as_double = [&](double& out) {
      size_t used = 0;
      out = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(key);
    };
    try {
      if (key == "population_size") as_int(c.population_size);
      else if (key == "generations") as_int(c.generations);
      else if (key == "cutoff") as_double(c.cutoff);
      else if (key == "elite_count") as_int(c.elite_count);
      else if (key == "tournament_size") as_int(c.tournament_size);
      else if (key == "crossover_rate") as_double(c.crossover_rate);
      else if (key == "mutation_rate") as_double(c.mutation_rate);
      else if (key == "sigma_angle_rad") as_double(c.sigma_angle_rad);
      else if (key == "sigma_delay_frac") as_double(c.sigma_delay_frac);
      else if (key == "crusher_flip_prob") as_double(c.crusher_flip_prob);
      else if (key == "mutation_decades") as_double(c.mutation_decades);
      else if (key == "d_max_s") as_double(c.d_max_s);
      else if (key == "rng_seed") {
        size_t used = 0;
        c.rng_seed = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(key);
      } else if (key == "restarts") as_int(c.restarts);
      else if (key == "stall_window") as_int(c.stall_window);
      else throw std::runtime_error("config: unknown key '" + key + "'");
    } catch (const std::runtime_error&) {
      throw;
    } catch (const std::exception&) {
      throw std::runtime_error("config: invalid value for '" + key + "'");
    }
  }
  return c;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Pulse sequence search and verification for weakly coupled spin pairs"};
  app.require_subcommand(1);

  CommonOpts opt;
  std::string out_dir = ".";
  std::string sequence_path;
  double tolerance = 0.99;
  std::string family;
  std::string ratios, thetas;
  std::string sweep_out = "sweep.csv";

  auto add_system_flags = [&](CLI::App* cmd, bool need_problem) {
    auto* p = cmd->add_option("--problem", opt.problem, "catalog problem name");
    if (need_problem) p->required();
    cmd->add_option("--delta", opt.delta_hz, "shift magnitude, Hz (spins sit at +-delta)");
    cmd->add_option("--j", opt.j_hz, "scalar coupling, Hz");
    cmd->add_option("--theta", opt.theta, "sqr flip angle, rad");
    cmd->add_option("--phi", opt.phi, "sqr phase, rad");
    cmd->add_option("--config", opt.config_path, "key=value GA config file");
    cmd->add_option("--seed", opt.seed, "master RNG seed")
        ->trigger_on_parse()
        ->each([&](const std::string&) { opt.seed_given = true; });
    cmd->add_option("--cutoff", opt.cutoff, "fitness cutoff override")
        ->trigger_on_parse()
        ->each([&](const std::string&) { opt.cutoff_given = true; });
  };

  CLI::App* optimize = app.add_subcommand("optimize", "search for a pulse sequence");
  add_system_flags(optimize, true);
  optimize->add_option("--out", out_dir, "output directory");

  CLI::App* verify = app.add_subcommand("verify", "re-simulate a sequence file");
  add_system_flags(verify, true);
  verify->add_option("--sequence", sequence_path, "sequence JSON file")->required();
  verify->add_option("--tolerance", tolerance, "minimum acceptable fidelity");

  CLI::App* sweep = app.add_subcommand("sweep", "fidelity over a J/delta grid");
  add_system_flags(sweep, false);
  sweep->add_option("--family", family, "sqr | cnot | pps")->required();
  sweep->add_option("--ratios", ratios, "comma-separated J/delta values");
  sweep->add_option("--thetas", thetas, "comma-separated flip angles (sqr)");
  sweep->add_option("--out", sweep_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (optimize->parsed()) return cmd_optimize(opt, out_dir);
    if (verify->parsed()) return cmd_verify(opt, sequence_path, tolerance);
    return cmd_sweep(opt, family, ratios, thetas, sweep_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}

}  // namespace gapulse
