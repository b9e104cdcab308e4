#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "opp/experiment.hpp"

using namespace opp;

namespace {

ExperimentConfig small(const std::string& construction) {
  ExperimentConfig c;
  c.construction = construction;
  c.n_list = {4, 8, 16};
  c.seeds = {1, 2};
  c.c_grid = {0.5};
  return c;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(FitLogLog, ExactPowerLaw) {
  std::vector<std::pair<double, double>> pts;
  for (double n : {10.0, 20.0, 40.0, 80.0}) pts.emplace_back(n, 3 * std::pow(n, 0.7));
  const auto f = fit_loglog(pts, "x");
  EXPECT_NEAR(f.slope, 0.7, 1e-12);
  EXPECT_TRUE(f.has_interval);
  EXPECT_NEAR(f.lo, 0.7, 1e-9);
  EXPECT_NEAR(f.hi, 0.7, 1e-9);
  EXPECT_EQ(f.points, 4u);
}

TEST(FitLogLog, IntervalMatchesHandComputation) {
  // x = ln n, y = ln m for n = e^0..e^3 and y = 0, 1, 1, 3:
  // slope 0.9, residual SS 0.7, Sxx 5, t(0.975, 2) = 4.302652729...
  std::vector<std::pair<double, double>> pts;
  const double ys[] = {0, 1, 1, 3};
  for (int i = 0; i < 4; ++i) pts.emplace_back(std::exp(i), std::exp(ys[i]));
  const auto f = fit_loglog(pts, "hand");
  EXPECT_NEAR(f.slope, 0.9, 1e-12);
  const double half = 4.302652729911275 * std::sqrt(0.7 / 2 / 5);
  EXPECT_NEAR(f.lo, 0.9 - half, 1e-9);
  EXPECT_NEAR(f.hi, 0.9 + half, 1e-9);
}

TEST(FitLogLog, TooFewPoints) {
  EXPECT_EQ(fit_loglog({}, "none").points, 0u);
  const auto two = fit_loglog({{2, 2}, {4, 4}}, "two");
  EXPECT_NEAR(two.slope, 1, 1e-12);
  EXPECT_FALSE(two.has_interval);
  // Zero sizes are dropped before taking logs.
  EXPECT_EQ(fit_loglog({{2, 0}, {4, 4}}, "z").points, 1u);
}

TEST(ScalingExperiment, EmptyGraphsHalve) {
  const auto r = scaling_experiment(small("empty"));
  ASSERT_EQ(r.rows.size(), 6u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.polarity, Polarity::anticomplete);
    EXPECT_EQ(row.min_size, static_cast<std::size_t>(row.n / 2));
    EXPECT_EQ(row.mode, "exact");
    EXPECT_FALSE(row.seconds);
  }
  ASSERT_EQ(r.fits.size(), 3u);
  EXPECT_NEAR(r.fits.back().slope, 1.0, 1e-12);
  EXPECT_EQ(r.fits.back().label, "pooled");
}

TEST(ScalingExperiment, CompleteGraphsUseTheCompleteSide) {
  const auto r = scaling_experiment(small("complete"));
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.polarity, Polarity::complete);
    EXPECT_EQ(row.min_size, static_cast<std::size_t>(row.n / 2));
  }
}

TEST(ScalingExperiment, RowOrderAndThreadIndependence) {
  auto cfg = small("random");
  cfg.n_list = {10, 14};
  cfg.seeds = {3, 1};
  const auto one = scaling_experiment(cfg);
  cfg.threads = 4;
  const auto four = scaling_experiment(cfg);
  EXPECT_EQ(experiment_csv(one, cfg), experiment_csv(four, cfg));
  EXPECT_EQ(one.rows[0].n, 10);
  EXPECT_EQ(one.rows[0].seed, 3u);
  EXPECT_EQ(one.rows[1].seed, 1u);
  EXPECT_EQ(one.rows[2].n, 14);
}

TEST(ScalingExperiment, BudgetMarksCappedRows) {
  auto cfg = small("random");
  cfg.n_list = {40};
  cfg.seeds = {5};
  cfg.exact_cap = 10;
  cfg.node_budget = 50;
  const auto r = scaling_experiment(cfg);
  EXPECT_EQ(r.rows[0].mode, "branch_bound+capped");
}

TEST(ScalingExperiment, RejectsBadConfig) {
  auto cfg = small("nope");
  EXPECT_THROW(scaling_experiment(cfg), InputError);
  cfg = small("empty");
  cfg.seeds.clear();
  EXPECT_THROW(scaling_experiment(cfg), InputError);
}

TEST(ExperimentCsv, HeaderHashAndTrailer) {
  const auto cfg = small("empty");
  const auto r = scaling_experiment(cfg);
  const auto text = lines(experiment_csv(r, cfg));
  const std::string canon = "construction=empty;n=4,8,16;seeds=1,2;c=0.5;exact_cap=22;budget=2000000;timing=0";
  EXPECT_EQ(r.canonical_config, canon);
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a64(canon)));
  EXPECT_EQ(text[0], std::string("# config ") + hash + " " + canon);
  EXPECT_EQ(text[1], "construction,n,seed,polarity,z1,z2,min_size,mode,seconds");
  EXPECT_EQ(text[2], "empty,4,1,anticomplete,2,2,2,exact,NA");
  EXPECT_EQ(text[8], "# fit seed=1 slope=1 ci95=[1,1] points=3");
  EXPECT_EQ(text[10], "# fit pooled slope=1 ci95=[1,1] points=6");
  // n / 2 over n^{1/2}
  EXPECT_EQ(text[11], "# ratio c=0.5 n=4 mean=1");
  EXPECT_EQ(text[13], "# ratio c=0.5 n=16 mean=2");
  EXPECT_EQ(text.size(), 14u);
}

TEST(ExperimentCsv, ThreadsDoNotEnterTheHash) {
  auto a = small("girth");
  auto b = a;
  b.threads = 8;
  EXPECT_EQ(canonical_config(a), canonical_config(b));
  b.girth = 4;
  EXPECT_NE(canonical_config(a), canonical_config(b));
}

TEST(ExperimentCsv, TimingFillsSeconds) {
  auto cfg = small("empty");
  cfg.timing = true;
  const auto r = scaling_experiment(cfg);
  for (const auto& row : r.rows) EXPECT_TRUE(row.seconds);
  EXPECT_EQ(lines(experiment_csv(r, cfg))[2].find("NA"), std::string::npos);
}
