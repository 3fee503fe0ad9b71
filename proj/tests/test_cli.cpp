#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "cli_runner.hpp"
#include "hdvar/csv.hpp"
#include "hdvar/records.hpp"

namespace fs = std::filesystem;
using cli_test::run;
using cli_test::scratch_dir;
using cli_test::slurp;

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
  EXPECT_EQ(run("table1 --no-such-flag").exit_code, 2);
  EXPECT_EQ(run("table1 --cols 9 --out " + scratch_dir("cols").string()).exit_code, 2);
  EXPECT_EQ(run("--help").exit_code, 0);
}

TEST(Cli, EstimateSubstitution) {
  const auto dir = scratch_dir("estimate");
  std::ofstream(dir / "one.txt") << "1 1\n1 2\n";
  const auto r = run("estimate " + (dir / "one.txt").string());
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("estimate=4\n"), std::string::npos) << r.output;

  std::ofstream(dir / "zero.txt") << "2 3\n1 2 3 0\n-1 0.5 2 0\n";
  const auto z = run("estimate " + (dir / "zero.txt").string() + " --sigma2 1 --beta-norm2 0");
  EXPECT_EQ(z.exit_code, 0) << z.output;
  EXPECT_NE(z.output.find("estimate=0\n"), std::string::npos) << z.output;
  EXPECT_NE(z.output.find("variance_formula="), std::string::npos);
}

TEST(Cli, EstimateFileErrors) {
  const auto dir = scratch_dir("estimate-err");
  const auto missing = (dir / "nope.txt").string();
  auto r = run("estimate " + missing);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find(missing), std::string::npos);

  std::ofstream(dir / "bad.txt") << "2 2\n1 2 3\n1 x 3\n";
  r = run("estimate " + (dir / "bad.txt").string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("line 3"), std::string::npos) << r.output;
}

TEST(Cli, Table1SingleCell) {
  const auto dir = scratch_dir("table1-cell");
  const auto r = run("table1 --rows 100 --cols 1 --out " + dir.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto text = slurp(dir / "table1.csv");
  const auto table = hdvar::csv::read_string(text);
  const auto rows = hdvar::records::parse_table1(table);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].replications, 10000u);
  EXPECT_GE(rows[0].error_rate, 0.30);
  EXPECT_LE(rows[0].error_rate, 0.48);
  EXPECT_NE(text.find("# master_seed=20240101"), std::string::npos);
  EXPECT_NE(text.find("# hdvar "), std::string::npos);
  // Re-emitting the parsed rows reproduces the body byte for byte.
  hdvar::csv::Table again{{}, table.header, {}};
  for (const auto& row : rows) again.rows.push_back(hdvar::records::to_fields(row));
  EXPECT_EQ(hdvar::csv::to_string(again), hdvar::csv::body(text));
}

TEST(Cli, Table1FullGridShape) {
  const auto dir = scratch_dir("table1-grid");
  const auto r = run("table1 --replications 20 --out " + dir.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(hdvar::csv::read_string(slurp(dir / "table1.csv")).rows.size(), 50u);
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  const auto a = scratch_dir("threads-a"), b = scratch_dir("threads-b");
  const std::string args = "table1 --rows 100,200 --cols 1,4 --replications 400 ";
  ASSERT_EQ(run(args + "--threads 1 --out " + a.string()).exit_code, 0);
  ASSERT_EQ(run(args + "--threads 4 --out " + b.string()).exit_code, 0);
  EXPECT_EQ(slurp(a / "table1.csv"), slurp(b / "table1.csv"));
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto dir = scratch_dir("config");
  std::ofstream(dir / "run.toml") << "seed = 77\nreplications = 40\n";
  const auto out1 = dir / "o1", out2 = dir / "o2";
  ASSERT_EQ(run("--config " + (dir / "run.toml").string() + " table1 --rows 100 --cols 2 --out " +
                out1.string()).exit_code, 0);
  const auto t1 = slurp(out1 / "table1.csv");
  EXPECT_NE(t1.find("# master_seed=77"), std::string::npos) << t1;
  EXPECT_EQ(hdvar::records::parse_table1(hdvar::csv::read_string(t1))[0].replications, 40u);

  ASSERT_EQ(run("--config " + (dir / "run.toml").string() + " --seed 78 table1 --rows 100 --cols 2 --out " +
                out2.string()).exit_code, 0);
  EXPECT_NE(slurp(out2 / "table1.csv").find("# master_seed=78"), std::string::npos);
}

TEST(Cli, Figure1Smoke) {
  const auto dir = scratch_dir("figure1");
  const auto r = run("figure1 --designs 10 --replications 1000 --out " + dir.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(hdvar::csv::read_string(slurp(dir / "figure1_raw.csv")).rows.size(), 10u);
  const auto hist = hdvar::records::parse_histogram(hdvar::csv::read_string(slurp(dir / "figure1_hist.csv")));
  std::size_t total = 0;
  for (const auto& h : hist) total += h.count;
  EXPECT_EQ(total, 10u);
  EXPECT_EQ(hist.size(), 30u);
  const auto svg = slurp(dir / "figure1.svg");
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("id=\"density\""), std::string::npos);
}

TEST(Cli, UnwritableOutputExitsTwo) {
  const auto dir = scratch_dir("unwritable");
  std::ofstream(dir / "file") << "x";
  const auto r = run("table1 --rows 100 --cols 1 --replications 10 --out " + (dir / "file" / "sub").string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("cannot create output directory"), std::string::npos) << r.output;
}

TEST(Cli, BoundCheckHugeThresholdAndForcedFailure) {
  const auto dir = scratch_dir("bound");
  auto r = run("bound-check --xi 100 --replications 200 --n-grid 50,100 --out " + dir.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto t = hdvar::csv::read_string(slurp(dir / "bound_check.csv"));
  for (const auto& row : t.rows) EXPECT_EQ(row[t.column("exceedances")], "0");

  r = run("bound-check --xi 0.5 --C 1e-9 --replications 500 --n-grid 50,100 --out " + dir.string());
  EXPECT_EQ(r.exit_code, 1) << r.output;
  EXPECT_NE(r.output.find("bound-check failed"), std::string::npos);
}

TEST(Cli, MomentCheckUnitVector) {
  const auto dir = scratch_dir("moment");
  const auto r = run("moment-check --beta 1,0,0 --out " + dir.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto t = hdvar::csv::read_string(slurp(dir / "moment_check.csv"));
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_NEAR(hdvar::csv::parse_real(t.rows[0][t.column("estimate")]), 3.0, 0.05);
  EXPECT_EQ(t.rows[0][t.column("target")], "3");
}

TEST(Cli, VarianceCheckDefaultsPass) {
  const auto dir = scratch_dir("variance");
  const auto r = run("variance-check --out " + dir.string());
  EXPECT_EQ(r.exit_code, 0) << r.output;
  const auto t = hdvar::csv::read_string(slurp(dir / "variance_check.csv"));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][t.column("pass")], "1");
}
