#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "swarmsearch/ssa.hpp"

using namespace swarmsearch;

namespace {

const FieldParams kFig2{0.07, 1.93, 0.015, 3.5, 0.2};

struct StepLog {
  std::vector<std::vector<AntState>> ants;
  std::vector<std::vector<double>> fields;
};

template <typename Deposit = DynamicDeposit>
StepLog record(const SsaConfig& cfg) {
  StepLog log;
  run_ssa<Deposit>(cfg, [&](const SsaSnapshot& s) {
    log.ants.push_back(s.colony.ants);
    log.fields.push_back(s.field.values());
  });
  return log;
}

// All cells occupied except the listed ones.
std::vector<std::uint8_t> occupancy_with_free(const Lattice& lat, std::initializer_list<CellIndex> free) {
  std::vector<std::uint8_t> occ(lat.size(), 1);
  for (CellIndex c : free) occ[c] = 0;
  return occ;
}

}  // namespace

TEST(HeadingDelta, Examples) {
  EXPECT_EQ(heading_delta(0, 0), 0);
  EXPECT_EQ(heading_delta(0, 4), 4);
  EXPECT_EQ(heading_delta(1, 7), 2);
  EXPECT_EQ(heading_delta(7, 1), 2);
  for (Heading a = 0; a < 8; ++a) {
    for (Heading b = 0; b < 8; ++b) {
      ASSERT_EQ(heading_delta(a, b), heading_delta(b, a));
      ASSERT_LE(heading_delta(a, b), 4);
    }
  }
}

TEST(Lattice, ToroidalWrapSouthWestCorner) {
  const Lattice lat(100, 100);
  const CellIndex south_west = lat.index(0, 99);
  const Heading sw = 5;
  EXPECT_EQ(lat.neighbor(south_west, sw), lat.index(99, 0));
  EXPECT_EQ(lat.neighbor(lat.index(99, 0), 1), south_west);  // NE back again
  for (CellIndex c = 0; c < lat.size(); c += 97) {
    std::set<CellIndex> ring;
    for (Heading h = 0; h < 8; ++h) ring.insert(lat.neighbor(c, h));
    ASSERT_EQ(ring.size(), 8u);
    ASSERT_FALSE(ring.count(c));
  }
}

TEST(TransitionDistribution, UniformFieldFollowsDirectionWeights) {
  const Lattice lat(10, 10);
  PheromoneField field(lat);
  for (CellIndex c = 0; c < lat.size(); ++c) field.add(c, 2.5);
  std::vector<std::uint8_t> occ(lat.size(), 0);
  const AntState ant{lat.index(5, 5), 2};
  occ[ant.cell] = 1;
  const TransitionDistribution d = transition_distribution(ant, field, occ, kFig2, DirectionWeights{});
  ASSERT_EQ(d.count, 8u);
  double same = 0;
  double uturn = 0;
  for (const Candidate& c : d.candidates()) {
    if (c.heading == 2) same = c.probability;
    if (c.heading == 6) uturn = c.probability;
  }
  EXPECT_NEAR(same / uturn, 20.0, 1e-12);
  // Zero pheromone start: W(0) = 1, so probabilities are the weights normalized.
  const PheromoneField empty(lat);
  const TransitionDistribution z = transition_distribution(ant, empty, occ, kFig2, DirectionWeights{});
  const double wsum = 1.0 + 2 * 0.5 + 2 * 0.25 + 2.0 / 12.0 + 1.0 / 20.0;
  for (const Candidate& c : z.candidates()) {
    EXPECT_NEAR(c.probability, DirectionWeights{}.w[heading_delta(2, c.heading)] / wsum, 1e-15);
  }
}

TEST(TransitionDistribution, SingleAndNoFreeNeighbor) {
  const Lattice lat(5, 5);
  const PheromoneField field(lat);
  const AntState ant{lat.index(2, 2), 0};
  const CellIndex only = lat.neighbor(ant.cell, 3);
  const TransitionDistribution one =
      transition_distribution(ant, field, occupancy_with_free(lat, {only}), kFig2, DirectionWeights{});
  ASSERT_EQ(one.count, 1u);
  EXPECT_EQ(one.items[0].cell, only);
  EXPECT_EQ(one.items[0].heading, 3);
  EXPECT_EQ(one.items[0].probability, 1.0);
  const TransitionDistribution none =
      transition_distribution(ant, field, occupancy_with_free(lat, {}), kFig2, DirectionWeights{});
  EXPECT_TRUE(none.empty());
}

TEST(TransitionDistribution, NormalizedOverRandomStates) {
  const Lattice lat(6, 5);
  Rng rng(42);
  std::size_t tested = 0;
  for (int trial = 0; trial < 100000; ++trial) {
    PheromoneField field(lat);
    for (CellIndex c = 0; c < lat.size(); ++c) field.add(c, rng.uniform() < 0.3 ? 0.0 : 50.0 * rng.uniform());
    std::vector<std::uint8_t> occ(lat.size());
    for (auto& o : occ) o = rng.uniform() < 0.5;
    const AntState ant{rng.below(lat.size()), static_cast<Heading>(rng.below(8))};
    occ[ant.cell] = 1;
    FieldParams fp{0.0, 0.0, 0.0, 8.0 * rng.uniform(), 0.01 + rng.uniform()};
    const TransitionDistribution d = transition_distribution(ant, field, occ, fp, DirectionWeights{});
    if (d.empty()) continue;
    ++tested;
    double sum = 0.0;
    for (const Candidate& c : d.candidates()) {
      ASSERT_GE(c.probability, 0.0);
      ASSERT_FALSE(occ[c.cell]);
      sum += c.probability;
    }
    ASSERT_NEAR(sum, 1.0, 1e-12);
  }
  EXPECT_GT(tested, 90000u);
}

TEST(Sample, InverseCdf) {
  TransitionDistribution d;
  d.items[0] = {10, 0, 0.25};
  d.items[1] = {11, 1, 0.5};
  d.items[2] = {12, 2, 0.25};
  d.count = 3;
  EXPECT_EQ(sample(d, 0.0).cell, 10u);
  EXPECT_EQ(sample(d, 0.2499).cell, 10u);
  EXPECT_EQ(sample(d, 0.25).cell, 11u);
  EXPECT_EQ(sample(d, 0.7499).cell, 11u);
  EXPECT_EQ(sample(d, 0.99999).cell, 12u);
}

TEST(InitColony, DistinctCellsAndCapacity) {
  const Colony c = init_colony(3000, Lattice(100, 100), 1);
  std::set<CellIndex> cells;
  for (const AntState& a : c.ants) {
    cells.insert(a.cell);
    ASSERT_LT(a.heading, 8);
  }
  EXPECT_EQ(cells.size(), 3000u);
  EXPECT_EQ(std::accumulate(c.occupancy.begin(), c.occupancy.end(), 0), 3000);

  const Colony full = init_colony(10000, Lattice(100, 100), 2);
  EXPECT_TRUE(std::all_of(full.occupancy.begin(), full.occupancy.end(), [](auto o) { return o == 1; }));
  EXPECT_THROW(init_colony(10001, Lattice(100, 100), 3), ConfigError);
}

TEST(InitColony, HeadingsRoughlyUniform) {
  const Colony c = init_colony(8000, Lattice(100, 100), 4);
  std::array<int, 8> counts{};
  for (const AntState& a : c.ants) ++counts[a.heading];
  for (int n : counts) EXPECT_NEAR(n, 1000, 150);
}

TEST(StepColony, SingleAntOnFlatTorusDepositsEta) {
  const Lattice lat(3, 3);
  const Habitat flat = discretize(make_constant(1.0), 3, 3);
  Colony colony = init_colony(1, lat, 5);
  PheromoneField field(lat);
  AltitudeRecords rec;
  FieldParams fp = kFig2;
  fp.k = 0.0;
  const CellIndex start = colony.ants[0].cell;
  step_colony(colony, flat, field, rec, Objective::Maximize, fp, DirectionWeights{});
  EXPECT_EQ(field.total(), fp.eta);
  EXPECT_NE(colony.ants[0].cell, start);
  EXPECT_EQ(field[colony.ants[0].cell], fp.eta);
}

TEST(StepColony, SaturatedTorusNobodyMoves) {
  const Lattice lat(3, 3);
  const Habitat flat = discretize(make_constant(0.0), 3, 3);
  Colony colony = init_colony(9, lat, 6);
  const std::vector<AntState> before = colony.ants;
  PheromoneField field(lat);
  AltitudeRecords rec;
  FieldParams fp = kFig2;
  fp.k = 0.0;
  step_colony(colony, flat, field, rec, Objective::Maximize, fp, DirectionWeights{});
  EXPECT_EQ(colony.ants, before);
  EXPECT_NEAR(field.total(), 9 * fp.eta, 1e-15);
  for (CellIndex c = 0; c < lat.size(); ++c) EXPECT_EQ(field[c], fp.eta);
}

TEST(StepColony, HeadingIsDirectionMoved) {
  const Lattice lat(8, 8);
  const Habitat flat = discretize(make_constant(0.0), 8, 8);
  Colony colony = init_colony(20, lat, 7);
  PheromoneField field(lat);
  AltitudeRecords rec;
  for (int step = 0; step < 50; ++step) {
    const std::vector<AntState> before = colony.ants;
    step_colony(colony, flat, field, rec, Objective::Maximize, kFig2, DirectionWeights{});
    for (std::size_t i = 0; i < before.size(); ++i) {
      if (colony.ants[i].cell == before[i].cell) {
        ASSERT_EQ(colony.ants[i].heading, before[i].heading);
      } else {
        ASSERT_EQ(lat.neighbor(before[i].cell, colony.ants[i].heading), colony.ants[i].cell);
      }
    }
    check_invariants(colony, field);
  }
}

TEST(StepColony, MismatchedDimensionsRejected) {
  Colony colony = init_colony(2, Lattice(4, 4), 1);
  PheromoneField field(Lattice(4, 4));
  AltitudeRecords rec;
  EXPECT_THROW(step_colony(colony, discretize(make_constant(0.0), 5, 4), field, rec, Objective::Maximize, kFig2,
                           DirectionWeights{}),
               ConfigError);
}

TEST(RunSsa, OccupancyHoldsOnDenseColony) {
  SsaConfig cfg;
  cfg.schedule = {{{0, make_function(FunctionId::F5), Objective::Minimize}}, 200};
  cfg.phase_params = {kFig2};
  cfg.n_ants = 700;
  cfg.lattice = Lattice(30, 30);
  cfg.seed = 8;
  cfg.check_invariants = true;
  std::size_t steps = 0;
  EXPECT_NO_THROW(run_ssa(cfg, [&](const SsaSnapshot& s) {
    ++steps;
    ASSERT_EQ(s.colony.ants.size(), 700u);
  }));
  EXPECT_EQ(steps, 201u);
}

TEST(RunSsa, DeterministicForSeed) {
  SsaConfig cfg;
  cfg.schedule = {{{0, make_function(FunctionId::F0a), Objective::Maximize}}, 60};
  cfg.phase_params = {kFig2};
  cfg.n_ants = 300;
  cfg.lattice = Lattice(40, 40);
  cfg.seed = 77;
  const StepLog a = record(cfg);
  const StepLog b = record(cfg);
  EXPECT_EQ(a.ants, b.ants);
  EXPECT_EQ(a.fields, b.fields);
  cfg.seed = 78;
  EXPECT_NE(record(cfg).ants, a.ants);
}

TEST(RunSsa, FlatLandscapeEqualsConstantDeposition) {
  SsaConfig cfg;
  cfg.schedule = {{{0, make_constant(-3.0, square_domain(0, 10)), Objective::Maximize},
                   {40, make_constant(-3.0, square_domain(0, 10)), Objective::Minimize}},
                  80};
  cfg.phase_params = {kFig2};
  cfg.n_ants = 200;
  cfg.lattice = Lattice(25, 25);
  cfg.seed = 13;
  const StepLog dynamic = record<DynamicDeposit>(cfg);
  const StepLog constant = record<ConstantDeposit>(cfg);
  EXPECT_EQ(dynamic.ants, constant.ants);
  EXPECT_EQ(dynamic.fields, constant.fields);
}

TEST(StepColony, AltitudeAffineMapLeavesTrajectoryBitIdentical) {
  // Integer altitudes keep every difference exact, so the deposit ratio is
  // the same correctly-rounded quotient under z -> c z + shift.
  const Lattice lat(20, 20);
  std::vector<double> z(lat.size());
  for (CellIndex c = 0; c < lat.size(); ++c) {
    z[c] = static_cast<double>((lat.col(c) * 7 + lat.row(c) * 13) % 23) - 11.0;
  }
  const Habitat base(lat, z);
  for (auto [scale, shift] : {std::pair{3.0, 0.0}, std::pair{0.5, 1024.0}, std::pair{7.0, -5.0}}) {
    const Habitat moved = base.rescaled(scale, shift);
    Colony ca = init_colony(60, lat, 21);
    Colony cb = init_colony(60, lat, 21);
    PheromoneField fa(lat);
    PheromoneField fb(lat);
    AltitudeRecords ra;
    AltitudeRecords rb;
    for (int step = 0; step < 150; ++step) {
      const Objective o = step < 75 ? Objective::Maximize : Objective::Minimize;
      step_colony(ca, base, fa, ra, o, kFig2, DirectionWeights{});
      step_colony(cb, moved, fb, rb, o, kFig2, DirectionWeights{});
      ASSERT_EQ(ca.ants, cb.ants) << "scale " << scale << " shift " << shift << " step " << step;
      ASSERT_EQ(fa.values(), fb.values());
    }
  }
}

TEST(RunSsa, RecordsClearOnFunctionChangeOnly) {
  SsaConfig cfg;
  cfg.schedule = {{{0, make_function(FunctionId::F0a), Objective::Maximize},
                   {11, make_function(FunctionId::F0a), Objective::Minimize},
                   {21, make_function(FunctionId::F1), Objective::Minimize}},
                  30};
  cfg.phase_params = {kFig2};
  cfg.n_ants = 50;
  cfg.lattice = Lattice(20, 20);
  cfg.seed = 3;
  AltitudeRecords at10;
  std::optional<AltitudeRecords> at11;
  AltitudeRecords at21;
  std::vector<std::pair<double, double>> phase0;
  run_ssa(cfg, [&](const SsaSnapshot& s) {
    if (s.t == 10) at10 = s.records;
    if (s.t == 11) at11 = s.records;
    if (s.t == 21) at21 = s.records;
    if (s.phase == 0 && s.t > 0) phase0.emplace_back(s.records.max_seen(), s.records.min_seen());
  });
  // Objective-only switch keeps history; a function switch restarts it.
  EXPECT_GE(at11->max_seen(), at10.max_seen());
  EXPECT_LE(at11->min_seen(), at10.min_seen());
  const Habitat f1 = discretize(make_function(FunctionId::F1), 20, 20);
  EXPECT_LE(at21.max_seen(), f1.z_hi());
  EXPECT_GE(at21.min_seen(), f1.z_lo());
  EXPECT_LT(at10.min_seen(), 0.0);
  EXPECT_GE(at21.min_seen(), 0.0);
  for (std::size_t i = 1; i < phase0.size(); ++i) {
    ASSERT_GE(phase0[i].first, phase0[i - 1].first);
    ASSERT_LE(phase0[i].second, phase0[i - 1].second);
  }
}

TEST(RunSsa, PhaseBoundariesFollowSchedule) {
  SsaConfig cfg;
  cfg.schedule = {{{0, make_function(FunctionId::F0a), Objective::Maximize},
                   {1001, make_function(FunctionId::F0b), Objective::Maximize}},
                  1150};
  cfg.phase_params = {kFig2};
  cfg.n_ants = 30;
  cfg.lattice = Lattice(100, 100);
  cfg.seed = 1;
  long first_new = -1;
  long last_t = -1;
  run_ssa(cfg, [&](const SsaSnapshot& s) {
    if (s.phase == 1 && first_new < 0) first_new = s.t;
    last_t = s.t;
  });
  EXPECT_EQ(first_new, 1001);
  EXPECT_EQ(last_t, 1150);
}

TEST(RunSsa, PerPhaseParameters) {
  SsaConfig cfg;
  cfg.schedule = {{{0, make_function(FunctionId::F1), Objective::Minimize},
                   {5, make_function(FunctionId::F1), Objective::Maximize}},
                  10};
  FieldParams keep = kFig2;
  keep.k = 0.0;
  FieldParams wipe = kFig2;
  wipe.k = 1.0;
  cfg.phase_params = {keep, wipe};
  cfg.n_ants = 10;
  cfg.lattice = Lattice(10, 10);
  std::vector<double> totals;
  run_ssa(cfg, [&](const SsaSnapshot& s) { totals.push_back(s.field.total()); });
  EXPECT_GT(totals[4], 0.0);
  EXPECT_EQ(totals[5], 0.0);
  EXPECT_EQ(totals[10], 0.0);
  cfg.phase_params = {keep, wipe, keep};
  EXPECT_THROW(run_ssa(cfg), ConfigError);
}

TEST(Validate, DirectionWeights) {
  EXPECT_NO_THROW(validate(DirectionWeights{}));
  DirectionWeights bad;
  bad.w[3] = 0.5;
  EXPECT_THROW(validate(bad), ConfigError);
  bad = DirectionWeights{};
  bad.w[4] = 0.0;
  EXPECT_THROW(validate(bad), ConfigError);
}
