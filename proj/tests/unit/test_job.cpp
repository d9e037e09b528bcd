#include <gtest/gtest.h>

#include <random>

#include "resurgence/job.hpp"

using namespace resurgence;
using nlohmann::json;

namespace {

const char* kMinimal = R"({
  "vars": 2,
  "ideals": {"I": [[1, 0], [0, 1]]},
  "families": {"p": {"kind": "powers", "ideal": "I"}},
  "tasks": [{"op": "beta_table", "a": "p", "b": "p", "s_max": 3}]
})";

bool mentions(const std::vector<std::string>& errors, const std::string& a, const std::string& b) {
  for (const auto& e : errors) {
    if (e.find(a) != std::string::npos && e.find(b) != std::string::npos) return true;
  }
  return false;
}

json without_timing(const std::string& text) {
  json j = json::parse(text);
  j.erase("timing");
  return j;
}

}  // namespace

TEST(Config, MinimalParses) {
  auto r = parse_config(kMinimal);
  ASSERT_TRUE(r.config.has_value()) << (r.errors.empty() ? "" : r.errors[0]);
  EXPECT_EQ(r.config->tasks.size(), 1u);
}

TEST(Config, UndefinedIdealNamesTaskIndex) {
  auto r = parse_config(R"({"vars": 2, "ideals": {"I": [[1, 0]]},
    "tasks": [{"op": "rho_window", "a": "I", "b": "I"}, {"op": "beta_table", "a": "I", "b": "J"}]})");
  ASSERT_FALSE(r.config.has_value());
  EXPECT_TRUE(mentions(r.errors, "'J'", "tasks[1]"));
}

TEST(Config, CeilingAcceptsExactRational) {
  auto r = parse_config(R"({"vars": 1, "ideals": {"m": [[1]]},
    "families": {"c": {"kind": "ceiling", "ideal": "m", "alpha": "3/2"}}})");
  ASSERT_TRUE(r.config.has_value());
  EXPECT_EQ(r.config->families.at("c").alpha, Rational(3, 2));
}

TEST(Config, CollectsAllErrors) {
  auto r = parse_config(R"({"vars": 2,
    "ideals": {"I": [[1, 0, 0]]},
    "families": {"f": {"kind": "spline", "ideal": "I"}, "g": {"kind": "ceiling", "ideal": "I", "alpha": "x/2"}},
    "tasks": [{"op": "frobnicate"}]})");
  ASSERT_FALSE(r.config.has_value());
  EXPECT_TRUE(mentions(r.errors, "ideals.I", "length 3"));
  EXPECT_TRUE(mentions(r.errors, "families.f", "spline"));
  EXPECT_TRUE(mentions(r.errors, "families.g", "malformed number"));
  EXPECT_TRUE(mentions(r.errors, "tasks[0]", "frobnicate"));
}

TEST(Config, CyclesRejected) {
  auto r = parse_config(R"({"vars": 1, "families": {
    "a": {"kind": "closure_of", "family": "b"}, "b": {"kind": "veronese", "family": "a", "k": 2}}})");
  ASSERT_FALSE(r.config.has_value());
  EXPECT_TRUE(mentions(r.errors, "families.", "cyclic"));
}

TEST(Config, SyntaxError) {
  auto r = parse_config("{ not json");
  ASSERT_FALSE(r.config.has_value());
  EXPECT_TRUE(mentions(r.errors, "syntax", ""));
}

// Random configs survive emit then parse.
TEST(ConfigProperty, RoundTrip) {
  std::mt19937_64 rng(71);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto fraction = [&](int hi_num, int hi_den) {
    Rational q(pick(1, hi_num), pick(1, hi_den));
    q.canonicalize();
    return q;
  };
  const char* kinds[] = {"powers", "symbolic", "closure_powers", "ceiling", "table", "constant", "pattern",
                         "closure_of", "veronese"};
  for (int trial = 0; trial < 200; ++trial) {
    JobConfig c;
    c.vars = static_cast<std::size_t>(pick(1, 3));
    for (int i = 0; i < pick(1, 3); ++i) {
      std::vector<std::vector<std::int64_t>> gens;
      for (int g = 0; g < pick(1, 3); ++g) {
        std::vector<std::int64_t> e(c.vars);
        for (auto& x : e) x = pick(0, 3);
        gens.push_back(e);
      }
      c.ideals["I" + std::to_string(i)] = gens;
    }
    c.families["base"] = FamilySpec{"powers", "I0"};
    for (int i = 0; i < pick(0, 4); ++i) {
      FamilySpec f;
      f.kind = kinds[pick(0, 8)];
      if (f.kind == "closure_of" || f.kind == "veronese") {
        f.family = "base";
        if (f.kind == "veronese") f.k = pick(1, 4);
      } else if (f.kind == "table") {
        f.prefix = {"I0"};
        f.tail = TailSpec{"power", "I0", pick(0, 1) ? "sqrt" : "3/2"};
      } else if (f.kind == "pattern") {
        f.period = 2;
        f.residues = {{{FactorSpec{"I0", 1, 0, 2}}}, {{FactorSpec{"", 0, 1, 1, "self", -1}, FactorSpec{"I0"}}}};
      } else {
        f.ideal = "I0";
        if (f.kind == "ceiling") f.alpha = fraction(9, 4);
      }
      c.families["f" + std::to_string(i)] = f;
    }
    for (int i = 0; i < pick(0, 4); ++i) {
      TaskSpec t;
      t.op = "rho_exact";
      t.a = "base";
      t.b = "I0";
      if (pick(0, 1)) t.cutoff = pick(1, 100);
      if (pick(0, 1)) t.assertions.rho_hat = fraction(5, 5);
      if (pick(0, 1)) t.assertions.finite_generation = true;
      if (pick(0, 1)) t.search = "linear";
      c.tasks.push_back(t);
    }
    if (pick(0, 1)) c.defaults.cutoff = pick(1, 500);
    if (pick(0, 1)) c.output = OutputSpec{"csv", "out"};
    auto back = parse_config(config_to_json(c).dump());
    ASSERT_TRUE(back.config.has_value()) << back.errors.front();
    ASSERT_TRUE(*back.config == c) << config_to_json(c).dump();
    ASSERT_EQ(config_digest(*back.config), config_digest(c));
  }
}

TEST(Emit, Encodings) {
  EXPECT_EQ(to_json(ExtendedRational::neg_inf()), json("-inf"));
  EXPECT_EQ(to_json(ExtendedRational::pos_inf()), json("inf"));
  EXPECT_EQ(to_json(Rational(3, 2)), (json{{"num", "3"}, {"den", "2"}}));
  EXPECT_EQ(SequenceValue::exceeds(500).to_string(), ">500");
}

TEST(Run, TriangleJobReportsTwoThirds) {
  auto c = parse_config(R"({"vars": 3,
    "ideals": {"T": [[1,1,0],[1,0,1],[0,1,1]], "m": [[1,0,0],[0,1,0],[0,0,1]]},
    "families": {"a": {"kind": "symbolic", "ideal": "T"}, "b": {"kind": "powers", "ideal": "m"}},
    "tasks": [{"op": "rho_hat_rees", "a": "a", "b": "b"}]})");
  ASSERT_TRUE(c.config.has_value());
  auto rep = run(*c.config);
  ASSERT_FALSE(rep.any_error());
  EXPECT_EQ(rep.tasks[0].result["value"], (json{{"num", "2"}, {"den", "3"}}));
}

TEST(Run, SqrtBetaTableCsv) {
  auto c = parse_config(R"({"vars": 2, "ideals": {"I": [[1,0],[0,1]]},
    "families": {"a": {"kind": "powers", "ideal": "I"},
                 "b": {"kind": "table", "tail": {"kind": "power", "ideal": "I", "exponent": "sqrt"}}},
    "tasks": [{"op": "beta_table", "a": "a", "b": "b", "s_max": 10, "cutoff": 500},
              {"op": "beta_table", "a": "a", "b": "b", "s_max": 3, "cutoff": 4}]})");
  ASSERT_TRUE(c.config.has_value());
  auto files = emit_csv(run(*c.config));
  ASSERT_EQ(files.size(), 2u);
  std::string want = "index,value,tag\n";
  for (int s = 1; s <= 10; ++s) want += std::to_string(s) + "," + std::to_string(s * s + 1) + ",finite\n";
  EXPECT_EQ(files[0].second, want);
  EXPECT_EQ(files[1].second, "index,value,tag\n1,2,finite\n2,,>4\n3,,>4\n");
}

TEST(Run, EmptyTaskList) {
  auto c = parse_config(R"({"vars": 1})");
  ASSERT_TRUE(c.config.has_value());
  auto rep = run(*c.config);
  EXPECT_TRUE(rep.tasks.empty());
  EXPECT_FALSE(rep.any_error());
}

TEST(Run, FailuresAreCapturedAndLaterTasksRun) {
  auto c = parse_config(R"({"vars": 2, "ideals": {"I": [[1,0],[0,1]], "Z": [[2,0]]},
    "families": {"p": {"kind": "powers", "ideal": "I"}, "s": {"kind": "symbolic", "ideal": "Z"}},
    "tasks": [{"op": "waldschmidt", "family": "s", "valuation": [1, 1]},
              {"op": "rho_window", "a": "p", "b": "p", "s_max": 3, "r_max": 3}]})");
  ASSERT_TRUE(c.config.has_value());
  auto rep = run(*c.config);
  EXPECT_FALSE(rep.tasks[0].ok);
  EXPECT_TRUE(rep.tasks[1].ok);
  EXPECT_TRUE(rep.any_error());
}

TEST(Run, Deterministic) {
  auto c = parse_config(kMinimal);
  ASSERT_TRUE(c.config.has_value());
  EXPECT_EQ(without_timing(emit_json(run(*c.config))), without_timing(emit_json(run(*c.config))));
  EXPECT_EQ(emit_json(run(*c.config), false), emit_json(run(*c.config), false));
}

TEST(Run, OverridesTakePrecedence) {
  auto c = parse_config(R"({"vars": 1, "ideals": {"m": [[1]]},
    "families": {"p": {"kind": "powers", "ideal": "m"}},
    "tasks": [{"op": "beta_table", "a": "p", "b": "p", "s_max": 3, "cutoff": 100}],
    "defaults": {"cutoff": 50}})");
  ASSERT_TRUE(c.config.has_value());
  EXPECT_EQ(run(*c.config).tasks[0].result["cutoff"], 100);
  EXPECT_EQ(run(*c.config, Overrides{std::nullopt, 2, std::nullopt, std::nullopt}).tasks[0].result["cutoff"], 2);
}
