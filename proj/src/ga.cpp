#include "gapulse/ga.hpp"

#include "gapulse/fidelity.hpp"
#include "gapulse/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace gapulse {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kImprovementEps = 1e-12;  // below this, "no progress" for the stall exit

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}


double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

// Fold into [0, hi] by reflection at both ends.
double reflect(double x, double hi) {
  if (hi <= 0.0) return 0.0;
  double t = std::fmod(x, 2.0 * hi);
  if (t < 0.0) t += 2.0 * hi;
  return t <= hi ? t : 2.0 * hi - t;
}

struct Genome {
  std::vector<double> p;
  std::vector<char> c;
};

struct Layout {
  std::vector<ParamSlot> slots;
  std::vector<int> cslots;
  double d_max;
};

PulseSequence to_sequence(const SequenceTemplate& t, const Genome& g) {
  return instantiate(t, g.p, std::vector<bool>(g.c.begin(), g.c.end()));
}

// Fitness with the crushed-to-zero guard; evaluate_fitness itself throws on
// a zero-norm state, which must not abort the evolution loop.
class Evaluator {
 public:
  explicit Evaluator(const Problem& problem) : problem_(problem), sim_(problem.system) {}

  double operator()(const PulseSequence& s) const {
    if (problem_.kind == ObjectiveKind::Unitary)
      return operator_fidelity(sim_.unitary(s), problem_.target_unitary);
    const DensityDeviation out = sim_.deviation(s, problem_.initial_state);
    if (out.norm() <= kCrushedNormTol * problem_.initial_state.norm()) return -1.0;
    return state_fidelity(out, problem_.target_state);
  }

 private:
  const Problem& problem_;
  Simulator sim_;
};

Genome random_genome(const Layout& lay, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> delay(0.0, lay.d_max);
  std::uniform_int_distribution<int> coin(0, 1);
  Genome g;
  g.p.reserve(lay.slots.size());
  for (const ParamSlot& s : lay.slots)
    g.p.push_back(s.kind == ParamSlot::Kind::Delay ? delay(rng) : angle(rng));
  g.c.reserve(lay.cslots.size());
  for (size_t i = 0; i < lay.cslots.size(); ++i) g.c.push_back(static_cast<char>(coin(rng)));
  return g;
}

int tournament(const std::vector<double>& fit, int size, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(fit.size()) - 1);
  int best = pick(rng);
  for (int k = 1; k < size; ++k) {
    const int i = pick(rng);
    if (fit[i] > fit[best] || (fit[i] == fit[best] && i < best)) best = i;
  }
  return best;
}

Genome make_child(const std::vector<Genome>& pop, const std::vector<double>& fit,
                  const Layout& lay, const GAConfig& cfg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const Genome& a = pop[tournament(fit, cfg.tournament_size, rng)];
  const Genome& b = pop[tournament(fit, cfg.tournament_size, rng)];
  Genome child = a;
  if (u01(rng) < cfg.crossover_rate) {
    for (size_t i = 0; i < child.p.size(); ++i) {
      const double u = u01(rng);
      if (lay.slots[i].kind == ParamSlot::Kind::Delay) {
        child.p[i] = a.p[i] + u * (b.p[i] - a.p[i]);
      } else {
        // blend along the shorter arc so 0.1 and 2*pi-0.1 mix near 0
        const double diff = std::remainder(b.p[i] - a.p[i], kTwoPi);
        child.p[i] = wrap_angle(a.p[i] + u * diff);
      }
    }
    for (size_t i = 0; i < child.c.size(); ++i)
      if (u01(rng) < 0.5) child.c[i] = b.c[i];
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (size_t i = 0; i < child.p.size(); ++i) {
    if (u01(rng) < cfg.mutation_rate) {
      const double scale = std::pow(10.0, -cfg.mutation_decades * u01(rng));
      if (lay.slots[i].kind == ParamSlot::Kind::Delay)
        child.p[i] = reflect(
            child.p[i] + gauss(rng) * scale * cfg.sigma_delay_frac * lay.d_max, lay.d_max);
      else
        child.p[i] = wrap_angle(child.p[i] + gauss(rng) * scale * cfg.sigma_angle_rad);
    }
  }
  for (size_t i = 0; i < child.c.size(); ++i)
    if (u01(rng) < cfg.crusher_flip_prob) child.c[i] = !child.c[i];
  return child;
}

}  // namespace

void GAConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("GAConfig: population_size must be >= 2");
  if (generations < 1) throw std::invalid_argument("GAConfig: generations must be >= 1");
  if (!(cutoff > 0.0 && cutoff <= 1.0)) throw std::invalid_argument("GAConfig: cutoff must be in (0,1]");
  if (elite_count < 0 || elite_count >= population_size)
    throw std::invalid_argument("GAConfig: elite_count must be in [0, population_size)");
  if (tournament_size < 1 || tournament_size > population_size)
    throw std::invalid_argument("GAConfig: tournament_size must be in [1, population_size]");
  for (double r : {crossover_rate, mutation_rate, crusher_flip_prob})
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("GAConfig: rates must be in [0,1]");
  if (sigma_angle_rad < 0.0 || sigma_delay_frac < 0.0)
    throw std::invalid_argument("GAConfig: mutation scales must be >= 0");
  if (mutation_decades < 0.0)
    throw std::invalid_argument("GAConfig: mutation_decades must be >= 0");
  if (d_max_s < 0.0) throw std::invalid_argument("GAConfig: d_max_s must be >= 0");
  if (restarts < 0) throw std::invalid_argument("GAConfig: restarts must be >= 0");
  if (stall_window < 1) throw std::invalid_argument("GAConfig: stall_window must be >= 1");
}

std::uint64_t derive_seed(std::uint64_t base, int index) {
  if (index == 0) return base;
  return splitmix64(base ^ (static_cast<std::uint64_t>(index) * 0x9e3779b97f4a7c15ULL));
}

double derive_d_max(const SpinSystem& system) {
  system.validate();
  double jmax = 0.0;
  for (int i = 0; i < system.n_spins; ++i)
    for (int k = i + 1; k < system.n_spins; ++k)
      jmax = std::max(jmax, std::abs(system.j_hz[i][k]));
  if (jmax > 0.0) return 2.0 / jmax;
  double dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < system.n_spins; ++i)
    for (int k = i + 1; k < system.n_spins; ++k) {
      const double d = std::abs(system.shifts_hz[i] - system.shifts_hz[k]);
      if (d > 0.0) dmin = std::min(dmin, d);
    }
  if (std::isfinite(dmin)) return 2.0 / dmin;
  double smax = 0.0;
  for (double s : system.shifts_hz) smax = std::max(smax, std::abs(s));
  if (smax > 0.0) return 1.0 / smax;
  return 1.0;  // driftless: delays have no effect anyway
}

GAResult run_ga(const Problem& problem, const GAConfig& config,
                const std::vector<PulseSequence>& initial_population,
                const GenerationObserver& observer) {
  problem.validate();
  config.validate();

  const SequenceTemplate& tmpl = problem.tmpl;
  const Layout lay{free_slots(tmpl), free_crusher_slots(tmpl),
                   config.d_max_s > 0.0 ? config.d_max_s : derive_d_max(problem.system)};
  const Evaluator eval(problem);
  const int pop_n = config.population_size;

  std::mt19937_64 master(config.rng_seed);

  std::vector<Genome> pop(pop_n);
  const int injected = std::min(static_cast<int>(initial_population.size()), pop_n);
  for (int i = 0; i < injected; ++i) {
    auto [params, crushers] = extract_params(tmpl, initial_population[i]);
    pop[i].p = std::move(params);
    pop[i].c.assign(crushers.begin(), crushers.end());
  }
  for (int i = injected; i < pop_n; ++i) {
    std::mt19937_64 sub(master());
    pop[i] = random_genome(lay, sub);
  }

  std::vector<double> fitness(pop_n);
  auto evaluate_all = [&] {
    for (int i = 0; i < pop_n; ++i) fitness[i] = eval(to_sequence(tmpl, pop[i]));
  };
  evaluate_all();

  Genome best_g = pop[0];
  double best_f = fitness[0];
  auto track_best = [&] {
    for (int i = 0; i < pop_n; ++i)
      if (fitness[i] > best_f) {
        best_f = fitness[i];
        best_g = pop[i];
      }
  };
  track_best();

  auto notify = [&](int gen) {
    if (!observer) return;
    std::vector<PulseSequence> seqs;
    seqs.reserve(pop_n);
    for (const Genome& g : pop) seqs.push_back(to_sequence(tmpl, g));
    observer(gen, seqs, fitness);
  };
  notify(0);

  GAResult result;
  result.seed = config.rng_seed;
  result.gene_count = tmpl.size();

  double prev_best = best_f;
  int stall = 0;
  std::vector<int> order(pop_n);
  for (int gen = 1; gen <= config.generations; ++gen) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fitness[a] > fitness[b]; });

    std::vector<Genome> next;
    next.reserve(pop_n);
    for (int e = 0; e < config.elite_count; ++e) next.push_back(pop[order[e]]);
    while (static_cast<int>(next.size()) < pop_n) {
      std::mt19937_64 sub(master());  // per-child substream
      next.push_back(make_child(pop, fitness, lay, config, sub));
    }
    pop = std::move(next);
    evaluate_all();
    track_best();

    result.best_history.push_back(best_f);
    result.mean_history.push_back(
        std::accumulate(fitness.begin(), fitness.end(), 0.0) / pop_n);
    result.generations_run = gen;
    notify(gen);

    if (best_f > prev_best + kImprovementEps) {
      stall = 0;
      prev_best = best_f;
    } else {
      ++stall;
    }
    if (best_f >= config.cutoff && stall >= config.stall_window) break;
  }

  result.best = to_sequence(tmpl, best_g);
  result.best_fitness = best_f;
  result.reached_cutoff = best_f >= config.cutoff;
  return result;
}

GAResult solve(const Problem& problem, const GAConfig& config) {
  problem.validate();
  config.validate();

  const bool grow_crushers = !free_crusher_slots(problem.tmpl).empty();
  const int m0 = problem.tmpl.size();
  const int m_max = problem.tmpl.extensible ? std::max(m0, 12) : m0;

  GAResult best;
  best.best_fitness = -std::numeric_limits<double>::infinity();
  Problem current = problem;
  int runs = 0;
  for (int m = m0; m <= m_max; ++m) {
    if (m > m0) {
      GeneTemplate g;
      g.flips.assign(current.tmpl.n_channels, std::nullopt);
      g.phases.assign(current.tmpl.n_channels, std::nullopt);
      g.delay = std::nullopt;
      g.crusher = grow_crushers ? std::optional<bool>{} : std::optional<bool>{false};
      current.tmpl.genes.push_back(g);
    }
    for (int attempt = 0; attempt <= config.restarts; ++attempt, ++runs) {
      GAConfig c = config;
      c.rng_seed = derive_seed(config.rng_seed, runs);
      GAResult r = run_ga(current, c);
      r.restarts_used = runs;
      if (r.best_fitness > best.best_fitness) best = std::move(r);
      if (best.reached_cutoff) return best;
    }
  }
  return best;
}

namespace {

// Re-polish with `slot_template` (the candidate parameter already pinned),
// seeding the population with the zeroed solution.
bool polish(const Problem& problem, const SequenceTemplate& slot_template,
            const PulseSequence& seeded, const GAConfig& config, std::uint64_t salt,
            PulseSequence& out) {
  Problem sub = problem;
  sub.tmpl = slot_template;
  GAConfig pc = config;
  pc.generations = std::min(config.generations, 200);
  pc.rng_seed = splitmix64(config.rng_seed ^ salt);
  const GAResult r = run_ga(sub, pc, {seeded});
  if (!r.reached_cutoff) return false;
  out = r.best;
  return true;
}

}  // namespace

PulseSequence reduce_genes(const PulseSequence& solution, const Problem& problem,
                           const GAConfig& config) {
  problem.validate();
  config.validate();
  solution.validate();
  if (solution.size() != problem.tmpl.size() ||
      solution.n_channels != problem.tmpl.n_channels)
    throw std::invalid_argument("reduce_genes: solution does not match the template shape");

  const Evaluator eval(problem);
  if (eval(solution) < config.cutoff)
    throw std::invalid_argument("reduce_genes: input fidelity below cutoff");

  SequenceTemplate tmpl = problem.tmpl;
  PulseSequence seq = solution;
  std::uint64_t salt = 0x5eedULL;

  // On success the pin is committed to tmpl, so a later polish run cannot move
  // an already-zeroed slot back to a nonzero value (the loop would never end).
  auto try_candidate = [&](PulseSequence candidate, const SequenceTemplate& pinned) {
    if (eval(candidate) >= config.cutoff) {
      seq = std::move(candidate);
      tmpl = pinned;
      return true;
    }
    PulseSequence polished;
    if (polish(problem, pinned, candidate, config, ++salt, polished)) {
      seq = std::move(polished);
      tmpl = pinned;
      return true;
    }
    return false;
  };

  bool changed = true;
  while (changed) {
    changed = false;

    // drop zero-effect genes the template does not pin to something else;
    // doing this before any polish runs keeps pre-existing zero genes intact
    for (int gi = seq.size() - 1; gi >= 0; --gi) {
      if (seq.size() <= 1) break;
      if (!seq.genes[gi].is_zero_effect()) continue;
      const GeneTemplate& gt = tmpl.genes[gi];
      bool droppable = true;
      for (const auto& f : gt.flips)
        if (f && *f != 0.0) droppable = false;
      if (gt.delay && *gt.delay != 0.0) droppable = false;
      if (gt.crusher && *gt.crusher) droppable = false;
      if (!droppable) continue;
      seq.genes.erase(seq.genes.begin() + gi);
      tmpl.genes.erase(tmpl.genes.begin() + gi);
      changed = true;
    }

    // free delays -> 0
    for (const ParamSlot& s : free_slots(tmpl)) {
      if (s.kind != ParamSlot::Kind::Delay || seq.genes[s.gene].delay_s == 0.0) continue;
      PulseSequence cand = seq;
      cand.genes[s.gene].delay_s = 0.0;
      SequenceTemplate pinned = tmpl;
      pinned.genes[s.gene].delay = 0.0;
      if (try_candidate(std::move(cand), pinned)) changed = true;
    }

    // free crushers -> off
    for (int gi : free_crusher_slots(tmpl)) {
      if (!seq.genes[gi].crusher_after) continue;
      PulseSequence cand = seq;
      cand.genes[gi].crusher_after = false;
      SequenceTemplate pinned = tmpl;
      pinned.genes[gi].crusher = false;
      if (try_candidate(std::move(cand), pinned)) changed = true;
    }

    // free flips -> 0 (a zero flip makes the phase dead weight, so pin a free
    // phase to 0 in the same step and the gene stays droppable and canonical)
    for (const ParamSlot& s : free_slots(tmpl)) {
      if (s.kind != ParamSlot::Kind::Flip || seq.genes[s.gene].flips_rad[s.channel] == 0.0)
        continue;
      PulseSequence cand = seq;
      cand.genes[s.gene].flips_rad[s.channel] = 0.0;
      SequenceTemplate pinned = tmpl;
      pinned.genes[s.gene].flips[s.channel] = 0.0;
      if (!pinned.genes[s.gene].phases[s.channel]) {
        pinned.genes[s.gene].phases[s.channel] = 0.0;
        cand.genes[s.gene].phases_rad[s.channel] = 0.0;
      }
      if (try_candidate(std::move(cand), pinned)) changed = true;
    }
  }

  if (eval(seq) < config.cutoff) return solution;  // defensive; should not happen
  return seq;
}

}  // namespace gapulse
