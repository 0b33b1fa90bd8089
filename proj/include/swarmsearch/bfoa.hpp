#pragma once

// Bacterial Foraging Optimization over a discretized habitat: tumble and
// swim chemotaxis, the cell-to-cell attraction/repulsion term, reproduction
// of the healthiest half, and elimination-dispersal.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "swarmsearch/landscape.hpp"
#include "swarmsearch/rng.hpp"
#include "swarmsearch/ssa.hpp"

namespace swarmsearch {

struct Bacterium {
  Vec2 position;
  double health = 0.0;  // sum of costs evaluated since the last reproduction
  double last_cost = 0.0;
};

struct BfoaParams {
  std::size_t S = 50;
  std::size_t Nc = 100;
  std::size_t Ns = 4;
  std::size_t Nre = 4;
  std::size_t Ned = 1;
  double p_ed = 0.25;
  double step_size = 0.1;
  double d_attract = 0.1;
  double w_attract = 0.2;
  double h_repellent = 0.1;
  double w_repellent = 10.0;

  bool operator==(const BfoaParams&) const = default;
};

// Defaults scaled to the habitat's domain: step size is a tenth of a cell
// on a 30-cell-wide domain.
inline BfoaParams default_bfoa_params(const Domain& domain) {
  BfoaParams p;
  p.step_size = 0.1 * domain.x.width() / 30.0;
  return p;
}

inline void validate(const BfoaParams& p) {
  if (p.S == 0 || p.S % 2 != 0) throw ConfigError("S must be a positive even number");
  if (p.Nc == 0 || p.Nre == 0 || p.Ned == 0) throw ConfigError("Nc, Nre and Ned must be >= 1");
  if (!(p.p_ed >= 0.0 && p.p_ed <= 1.0)) throw ConfigError("p_ed must be in [0, 1]");
  if (!(p.step_size > 0.0)) throw ConfigError("step_size must be > 0");
  for (double v : {p.d_attract, p.w_attract, p.h_repellent, p.w_repellent}) {
    if (!(v >= 0.0)) throw ConfigError("swarming coefficients must be >= 0");
  }
}

inline double jcc(Vec2 pos, std::span<const Bacterium> population, const BfoaParams& p) {
  double attract = 0.0;
  double repel = 0.0;
  for (const Bacterium& b : population) {
    const double dx = pos.x - b.position.x;
    const double dy = pos.y - b.position.y;
    const double d2 = dx * dx + dy * dy;
    attract += std::exp(-p.w_attract * d2);
    repel += std::exp(-p.w_repellent * d2);
  }
  return -p.d_attract * attract + p.h_repellent * repel;
}

inline Vec2 tumble(Rng& rng) {
  const double angle = 2.0 * std::numbers::pi * rng.uniform();
  return {std::cos(angle), std::sin(angle)};
}

// Lattice cost at a point, negated when maximizing so lower is always better.
inline double raw_cost(const Habitat& h, Objective obj, Vec2 pos) {
  const double z = h.altitude(h.cell_of(pos));
  return obj == Objective::Maximize ? -z : z;
}

struct ChemotaxisOutcome {
  std::size_t swims = 0;
  double best_raw_cost = std::numeric_limits<double>::infinity();
};

// One tumble followed by up to Ns swims in the same direction while the
// total cost keeps strictly improving. Every evaluated cost is added to the
// bacterium's health.
inline ChemotaxisOutcome chemotaxis_step(Bacterium& b, const Habitat& habitat, Objective obj,
                                         std::span<const Bacterium> population, const BfoaParams& p, Rng& rng) {
  const Domain& dom = habitat.domain();
  ChemotaxisOutcome out;
  auto cost_at = [&](Vec2 pos) {
    const double raw = raw_cost(habitat, obj, pos);
    out.best_raw_cost = std::min(out.best_raw_cost, raw);
    const double j = raw + jcc(pos, population, p);
    b.health += j;
    return j;
  };

  double j_last = cost_at(b.position);
  const Vec2 dir = tumble(rng);
  auto advance = [&](Vec2 from) { return dom.clamp({from.x + p.step_size * dir.x, from.y + p.step_size * dir.y}); };
  b.position = advance(b.position);
  double j = cost_at(b.position);
  while (out.swims < p.Ns && j < j_last) {
    j_last = j;
    b.position = advance(b.position);
    j = cost_at(b.position);
    ++out.swims;
  }
  b.last_cost = j;
  return out;
}

// Keeps the healthier half (lower accumulated cost), duplicated in place of
// the other half. Health restarts at zero for everyone.
inline void reproduce(std::vector<Bacterium>& population, const BfoaParams& p) {
  if (population.size() != p.S || p.S % 2 != 0) throw ConfigError("reproduction needs an even population of S");
  std::stable_sort(population.begin(), population.end(),
                   [](const Bacterium& a, const Bacterium& b) { return a.health < b.health; });
  const std::size_t half = population.size() / 2;
  for (std::size_t i = 0; i < half; ++i) population[half + i] = population[i];
  for (Bacterium& b : population) b.health = 0.0;
}

// Each bacterium is relocated uniformly over the domain with probability
// p_ed. Returns the number relocated.
inline std::size_t eliminate_disperse(std::vector<Bacterium>& population, const Domain& domain,
                                      const BfoaParams& p, Rng& rng) {
  std::size_t moved = 0;
  for (Bacterium& b : population) {
    if (rng.uniform() < p.p_ed) {
      const double x = rng.uniform(domain.x.lo, domain.x.hi);
      const double y = rng.uniform(domain.y.lo, domain.y.hi);
      b.position = {x, y};
      ++moved;
    }
  }
  return moved;
}

struct BfoaSnapshot {
  long t;  // chemotactic step count; 0 is the initial placement
  const Habitat& habitat;
  Objective objective;
  std::span<const Bacterium> population;
  double best_so_far;  // lowest raw cost evaluated so far (negated altitude when maximizing)
  std::size_t max_swims;
};

using BfoaObserver = std::function<void(const BfoaSnapshot&)>;

struct BfoaResult {
  std::vector<Bacterium> population;
  double best_so_far = std::numeric_limits<double>::infinity();
  long steps = 0;
};

// Ned x Nre x Nc nested loops from a given starting population. Each
// chemotactic step visits every bacterium once; reproduction closes each
// generation and elimination-dispersal closes each dispersal event.
inline BfoaResult run_bfoa(const Habitat& habitat, Objective obj, const BfoaParams& p, std::uint64_t seed,
                           std::vector<Vec2> initial_positions, const BfoaObserver& observer = {}) {
  validate(p);
  if (initial_positions.size() != p.S) throw ConfigError("initial population size must equal S");
  Rng rng(seed);
  const Domain& dom = habitat.domain();
  BfoaResult run;
  run.population.resize(p.S);
  for (std::size_t i = 0; i < p.S; ++i) {
    Bacterium& b = run.population[i];
    b.position = dom.clamp(initial_positions[i]);
    b.last_cost = raw_cost(habitat, obj, b.position);
    run.best_so_far = std::min(run.best_so_far, b.last_cost);
  }
  if (observer) observer({0, habitat, obj, run.population, run.best_so_far, 0});

  for (std::size_t ell = 0; ell < p.Ned; ++ell) {
    for (std::size_t k = 0; k < p.Nre; ++k) {
      for (std::size_t j = 0; j < p.Nc; ++j) {
        std::size_t max_swims = 0;
        for (Bacterium& b : run.population) {
          const ChemotaxisOutcome o = chemotaxis_step(b, habitat, obj, run.population, p, rng);
          run.best_so_far = std::min(run.best_so_far, o.best_raw_cost);
          max_swims = std::max(max_swims, o.swims);
        }
        ++run.steps;
        if (observer) observer({run.steps, habitat, obj, run.population, run.best_so_far, max_swims});
      }
      reproduce(run.population, p);
    }
    eliminate_disperse(run.population, dom, p, rng);
  }
  return run;
}

// Same, starting from S uniformly random positions drawn from the seed.
inline BfoaResult run_bfoa(const Habitat& habitat, Objective obj, const BfoaParams& p, std::uint64_t seed,
                           const BfoaObserver& observer = {}) {
  validate(p);
  Rng placement(seed ^ 0x9E3779B97F4A7C15ULL);
  const Domain& dom = habitat.domain();
  std::vector<Vec2> start(p.S);
  for (Vec2& v : start) {
    v.x = placement.uniform(dom.x.lo, dom.x.hi);
    v.y = placement.uniform(dom.y.lo, dom.y.hi);
  }
  return run_bfoa(habitat, obj, p, seed, std::move(start), observer);
}

}  // namespace swarmsearch
