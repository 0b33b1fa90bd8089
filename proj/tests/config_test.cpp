#include <random>

#include <gtest/gtest.h>

#include "swarmsearch/config.hpp"

using namespace swarmsearch;

namespace {

ExperimentConfig preset(const std::string& name) {
  auto p = find_preset(name);
  EXPECT_TRUE(p.has_value()) << name;
  return *p;
}

void expect_field(const FieldParams& f, double eta, double p, double k, double beta, double gamma) {
  EXPECT_EQ(f.eta, eta);
  EXPECT_EQ(f.p, p);
  EXPECT_EQ(f.k, k);
  EXPECT_EQ(f.beta, beta);
  EXPECT_EQ(f.gamma, gamma);
}

}  // namespace

TEST(Presets, AllListedPresetsResolveAndValidate) {
  for (const std::string& name : preset_names()) {
    const ExperimentConfig c = preset(name);
    EXPECT_NO_THROW(validate(c)) << name;
    EXPECT_FALSE(preset_description(name).empty()) << name;
    EXPECT_NO_THROW(validate(bfoa_counterpart(c))) << name;
  }
  EXPECT_FALSE(find_preset("fig9").has_value());
}

TEST(Presets, Fig2) {
  const ExperimentConfig c = preset("fig2");
  EXPECT_EQ(c.grid, Lattice(100, 100));
  EXPECT_EQ(c.agents, 3000u);
  EXPECT_EQ(c.schedule.t_max, 1000);
  ASSERT_EQ(c.schedule.phases.size(), 1u);
  EXPECT_EQ(c.schedule.phases[0].function.id, FunctionId::F0a);
  EXPECT_EQ(c.schedule.phases[0].objective, Objective::Maximize);
  ASSERT_EQ(c.field.size(), 1u);
  expect_field(c.field[0], 0.07, 1.93, 0.015, 3.5, 0.2);
  EXPECT_EQ(c.snapshot_steps, (std::vector<long>{0, 50, 100, 500, 1000}));
}

TEST(Presets, Fig3) {
  const ExperimentConfig c = preset("fig3");
  EXPECT_EQ(c.agents, 3000u);
  EXPECT_EQ(c.schedule.t_max, 1150);
  ASSERT_EQ(c.schedule.phases.size(), 2u);
  EXPECT_EQ(c.schedule.phases[1].t_start, 1001);
  EXPECT_EQ(c.schedule.phases[1].function.id, FunctionId::F0b);
  EXPECT_EQ(c.schedule.phases[1].objective, Objective::Maximize);
  expect_field(c.field[0], 0.07, 1.93, 0.015, 3.5, 0.2);
}

TEST(Presets, Fig4) {
  const ExperimentConfig c = preset("fig4");
  EXPECT_EQ(c.agents, 2000u);
  EXPECT_EQ(c.schedule.t_max, 500);
  ASSERT_EQ(c.schedule.phases.size(), 2u);
  EXPECT_EQ(c.schedule.phases[0].function.id, FunctionId::F0a);
  EXPECT_EQ(c.schedule.phases[0].objective, Objective::Maximize);
  EXPECT_EQ(c.schedule.phases[1].t_start, 251);
  EXPECT_EQ(c.schedule.phases[1].function.id, FunctionId::F0a);
  EXPECT_EQ(c.schedule.phases[1].objective, Objective::Minimize);
  expect_field(c.field[0], 0.10, 1.90, 1.0, 3.5, 0.2);
}

TEST(Presets, Fig5) {
  const ExperimentConfig c = preset("fig5");
  EXPECT_EQ(c.agents, 3000u);
  EXPECT_EQ(c.schedule.t_max, 600);
  ASSERT_EQ(c.schedule.phases.size(), 2u);
  EXPECT_EQ(c.schedule.phases[0].function.id, FunctionId::F6);
  EXPECT_EQ(c.schedule.phases[0].objective, Objective::Minimize);
  EXPECT_EQ(c.schedule.phases[1].t_start, 301);
  EXPECT_EQ(c.schedule.phases[1].function.id, FunctionId::F0a);
  expect_field(c.field[0], 0.01, 1.90, 1.0, 3.5, 0.2);
  EXPECT_EQ(c.snapshot_steps, (std::vector<long>{20, 100, 300, 320, 400, 500, 600}));
}

TEST(Presets, NutrientScenarios) {
  for (const char* name : {"passino1", "passino2", "passino3"}) {
    const ExperimentConfig c = preset(name);
    EXPECT_EQ(c.grid, Lattice(30, 30)) << name;
    EXPECT_EQ(c.agents, 50u) << name;
    EXPECT_EQ(c.schedule.t_max, 400) << name;
    EXPECT_EQ(c.schedule.phases[0].objective, Objective::Minimize) << name;
    EXPECT_EQ(c.schedule.phases[0].function.domain, square_domain(0, 30)) << name;
    EXPECT_EQ(c.radius(), 3u) << name;
  }
  expect_field(preset("passino1").field[0], 0.1, 1.9, 1.0, 6.0, 0.2);
  expect_field(preset("passino2").field[0], 0.1, 1.9, 1.0, 7.0, 0.2);
  const ExperimentConfig p3 = preset("passino3");
  ASSERT_EQ(p3.schedule.phases.size(), 2u);
  EXPECT_EQ(p3.schedule.phases[1].objective, Objective::Maximize);
  EXPECT_EQ(p3.schedule.phases[1].function, p3.schedule.phases[0].function);
}

TEST(Presets, BfoaCounterpartMatchesBudget) {
  const ExperimentConfig b = bfoa_counterpart(preset("passino1"));
  EXPECT_EQ(b.algorithm, Algorithm::BFOA);
  EXPECT_EQ(b.agents, 50u);
  EXPECT_EQ(b.bfoa.Nre, 4u);
  EXPECT_EQ(b.bfoa.Nc, 100u);
  EXPECT_EQ(b.bfoa.Ned, 1u);
  EXPECT_EQ(b.bfoa.Ns, 4u);
  EXPECT_EQ(b.bfoa.p_ed, 0.25);
  EXPECT_EQ(b.schedule.t_max, 400);
  EXPECT_DOUBLE_EQ(b.bfoa.step_size, 0.1);
  EXPECT_EQ(b.bfoa.d_attract, 0.1);
  EXPECT_EQ(b.bfoa.w_attract, 0.2);
  EXPECT_EQ(b.bfoa.h_repellent, 0.1);
  EXPECT_EQ(b.bfoa.w_repellent, 10.0);
  EXPECT_EQ(bfoa_counterpart(preset("passino3")).schedule.phases.size(), 1u);
}

TEST(LoadConfig, BarePresetNameAndPresetKey) {
  EXPECT_EQ(load_config("\"fig2\""), preset("fig2"));
  const ExperimentConfig c = load_config(R"({"preset": "fig2", "agents": 500, "seed": 9})");
  ExperimentConfig expect = preset("fig2");
  expect.agents = 500;
  expect.seed = 9;
  EXPECT_EQ(c, expect);
}

TEST(LoadConfig, NegativeGammaNamesTheField) {
  try {
    load_config(R"({"preset": "fig2", "field": {"gamma": -1}})");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("field.gamma"), std::string::npos) << e.what();
  }
}

TEST(LoadConfig, UnknownKeysRejected) {
  EXPECT_THROW(load_config(R"({"preset": "fig2", "antz": 3})"), ConfigError);
  EXPECT_THROW(load_config(R"({"preset": "fig2", "field": {"rho": 1}})"), ConfigError);
  EXPECT_THROW(load_config(R"({"preset": "nope"})"), ConfigError);
  EXPECT_THROW(load_config("\"nope\""), ConfigError);
}

TEST(LoadConfig, ParseErrorReportsLine) {
  try {
    load_config("{\n  \"preset\": \"fig2\",\n  \"agents\": ,\n}\n");
    FAIL() << "expected ConfigParseError";
  } catch (const ConfigParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(LoadConfig, ValidationFailures) {
  EXPECT_THROW(load_config(R"({"preset": "passino1", "agents": 901})"), ConfigError);
  EXPECT_THROW(load_config(R"({"preset": "fig2", "snapshot_steps": [1001]})"), ConfigError);
  EXPECT_THROW(load_config(R"({"preset": "fig2", "direction_weights": [1, 1, 1]})"), ConfigError);
  EXPECT_THROW(load_config(R"({"preset": "fig2", "schedule": [{"t_start": 5, "function": "F1", "objective": "min"}]})"),
               ConfigError);
  EXPECT_THROW(load_config(R"({"preset": "fig2", "schedule": [{"t_start": 0, "function": "F1", "objective": "up"}]})"),
               ConfigError);
  EXPECT_THROW(load_config(R"({"preset": "passino1", "algorithm": "bfoa", "agents": 50, "t_max": 300})"), ConfigError);
}

TEST(LoadConfig, FullDocumentWithPerPhaseField) {
  const ExperimentConfig c = load_config(R"({
    "name": "custom",
    "grid": {"width": 40, "height": 20},
    "agents": 100,
    "t_max": 60,
    "field": {"eta": 0.05},
    "schedule": [
      {"t_start": 0, "function": "F5", "objective": "min"},
      {"t_start": 31, "function": {"id": "GaussMix", "domain": {"x": [0, 10], "y": [0, 5]},
                                   "terms": [{"center": [5, 2], "weight": 2, "spread": 1}]},
       "objective": "max", "field": {"k": 0.5}}
    ]
  })");
  EXPECT_EQ(c.grid, Lattice(40, 20));
  ASSERT_EQ(c.field.size(), 2u);
  EXPECT_EQ(c.field[0].eta, 0.05);
  EXPECT_EQ(c.field[0].k, FieldParams{}.k);
  EXPECT_EQ(c.field[1].eta, 0.05);
  EXPECT_EQ(c.field[1].k, 0.5);
  EXPECT_EQ(c.schedule.phases[1].function.terms.size(), 1u);
  EXPECT_EQ(load_config(serialize(c)), c);
}

TEST(Serialize, RoundTripsPresetsAndRandomVariants) {
  for (const std::string& name : preset_names()) {
    const ExperimentConfig c = preset(name);
    ASSERT_EQ(load_config(serialize(c)), c) << name;
    const ExperimentConfig b = bfoa_counterpart(c);
    ASSERT_EQ(load_config(serialize(b)), b) << name;
  }
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    ExperimentConfig c = preset(preset_names()[i % preset_names().size()]);
    for (FieldParams& f : c.field) {
      f.eta = u(gen);
      f.p = 3 * u(gen);
      f.k = u(gen);
      f.beta = 10 * u(gen);
      f.gamma = u(gen);
    }
    c.seed = gen();
    c.direction_weights.w[3] = 0.05 + 0.2 * u(gen);
    c.adaptation_threshold = 0.01 + 0.99 * u(gen);
    if (i % 2) c.capture_radius = 1 + i % 7;
    ASSERT_EQ(load_config(serialize(c)), c) << serialize(c);
  }
}
