#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rbvp/config.hpp"
#include "rbvp/error.hpp"
#include "rbvp/experiment.hpp"
#include "rbvp/io.hpp"
#include "rbvp/verify.hpp"

using namespace rbvp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rbvp_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

config::ExperimentConfig make(const std::string& problem, std::map<std::string, std::string> values) {
  ::unsetenv("RBVP_OUTPUT_DIR");
  return {problem, std::move(values)};
}

}  // namespace

TEST(Parse, Numbers) {
  EXPECT_DOUBLE_EQ(config::parse_real("1/128"), 1.0 / 128);
  EXPECT_DOUBLE_EQ(config::parse_real("-0.25"), -0.25);
  EXPECT_THROW(config::parse_real("abc"), Error);
  EXPECT_THROW(config::parse_real("1/0"), Error);
  EXPECT_EQ(config::parse_complex("2"), cd(2.0, 0.0));
  EXPECT_EQ(config::parse_complex("-0.3i"), cd(0.0, -0.3));
  EXPECT_EQ(config::parse_complex("1+2i"), cd(1.0, 2.0));
  EXPECT_EQ(config::parse_complex("0.5-1e-3i"), cd(0.5, -1e-3));
}

TEST(Parse, ConfigFileSectionsAndComments) {
  const auto dir = scratch("config");
  const auto file = dir / "run.cfg";
  std::ofstream(file) << "# comment\nproblem = neumann\n[grid]\nh = 1/64\n[data]\nphi = const:-2  # inline\nG = const:4\n";
  const auto cfg = config::read_config_file(file.string());
  EXPECT_EQ(cfg.problem, "neumann");
  EXPECT_DOUBLE_EQ(cfg.h(), 1.0 / 64);
  EXPECT_EQ(cfg.get("phi", ""), "const:-2");
  EXPECT_EQ(cfg.get("G", ""), "const:4");
  EXPECT_EQ(cfg.anchors(), 64u);
  EXPECT_THROW(config::read_config_file((dir / "missing.cfg").string()), Error);
  std::ofstream(dir / "bad.cfg") << "just words\n";
  EXPECT_THROW(config::read_config_file((dir / "bad.cfg").string()), Error);
}

TEST(Validate, RejectsBadSettings) {
  EXPECT_NO_THROW(make("hilbert", {}).validate());
  EXPECT_THROW(make("nosuch", {}).validate(), Error);
  EXPECT_THROW(make("hilbert", {{"anchors", "8"}}).validate(), Error);
  EXPECT_THROW(make("hilbert", {{"tol", "0"}}).validate(), Error);
  EXPECT_THROW(make("hilbert", {{"tol", "-1e-3"}}).validate(), Error);
  EXPECT_THROW(make("hilbert", {{"phi", "file:/nonexistent/data.csv"}}).validate(), Error);
  try {
    make("hilbert", {{"anchors", "4"}}).validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.module(), "cli");
  }
}

TEST(Forms, BoundaryData) {
  const auto c = config::boundary("const:2.5", 64, false);
  for (double v : c.real_samples()) EXPECT_EQ(v, 2.5);
  const auto f = config::boundary("fourier:0,1", 64, true);
  for (std::size_t j = 0; j < 64; ++j) EXPECT_LT(std::abs(f[j] - std::polar(1.0, 2.0 * f.node(j))), 1e-14);
  const auto s = config::boundary("step:0,3.14159,1,0", 64, false);
  EXPECT_EQ(s[0].real(), 1.0);
  EXPECT_EQ(s[40].real(), 0.0);
  EXPECT_THROW(config::boundary("bogus:1", 64, false), Error);
  EXPECT_THROW(config::boundary("step:0,1", 64, false), Error);
}

TEST(Forms, DomainsSourcesFieldsShiftsMaps) {
  EXPECT_EQ(config::domain("disk").kind(), MapKind::identity);
  EXPECT_NEAR(config::domain("ellipse:1.2,0.8")(0.9).real(), ConformalMap::ellipse(1.2, 0.8)(0.9).real(), 1e-12);
  EXPECT_THROW(config::domain("torus"), Error);
  const auto disk = ConformalMap::identity();
  EXPECT_FALSE(config::source("zero", disk, 1.0 / 32).has_value());
  const auto g = config::source("gauss:50", disk, 1.0 / 64);
  ASSERT_TRUE(g.has_value());
  EXPECT_NEAR(g->value_at(0.0), 1.0, 1e-2);
  EXPECT_THROW(config::source("gauss:-1", disk, 1.0 / 64), Error);
  const auto inner = config::field("inner", disk, 64);
  EXPECT_LT(std::abs(inner(0.0) + 1.0), 1e-12);
  const auto rot = config::shift("rotation:0.2", 64);
  EXPECT_NEAR(rot.forward(1.0), 1.2, 1e-12);
  const auto aff = config::caratheodory("affine:2,1", 64);
  EXPECT_EQ(aff(0.3, cd(1.0)), cd(3.0));
  EXPECT_THROW(config::caratheodory("affine:2", 64), Error);
  EXPECT_THROW(config::shift("wobble", 64), Error);
}

TEST(Io, BoundaryRoundTrip) {
  const auto dir = scratch("io");
  const auto data = BoundaryFunction::sample_complex([](double t) { return cd(std::cos(t), std::sin(3 * t)); }, 128);
  io::write_boundary((dir / "b.csv").string(), data);
  const auto back = io::read_boundary((dir / "b.csv").string());
  ASSERT_EQ(back.size(), data.size());
  for (std::size_t j = 0; j < data.size(); ++j) EXPECT_LT(std::abs(back[j] - data[j]), 1e-12);
  std::ofstream(dir / "gap.csv") << "theta,value\n0,1\n0.5,2\n";
  EXPECT_THROW(io::read_boundary((dir / "gap.csv").string()), Error);
}

TEST(Io, GridSourceRoundTrip) {
  const auto dir = scratch("grid");
  const auto g = GridSource::sample([](cd z) { return std::exp(-20.0 * std::norm(z)); }, cd(-1.25, -1.25),
                                    cd(1.25, 1.25), 1.0 / 32);
  io::write_grid_source((dir / "g.csv").string(), g);
  const auto back = io::read_grid_source((dir / "g.csv").string());
  EXPECT_DOUBLE_EQ(back.cell_size(), g.cell_size());
  for (cd z : {cd(0.0), cd(0.3, -0.2), cd(-0.7, 0.5)}) EXPECT_NEAR(back.value_at(z), g.value_at(z), 1e-12);
}

TEST(Io, JsonCarriesSchemaVersion) {
  const std::vector<AnchorResidual> r{{0.5, 1e-3, true}};
  const auto j = io::to_json(r);
  EXPECT_EQ(j.at("schema_version").get<int>(), io::kSchemaVersion);
}

TEST(Experiment, LuzinDemoPassesAndIsDeterministic) {
  const auto a = scratch("luzin_a");
  const auto b = scratch("luzin_b");
  const auto ra = run_experiment(make("luzin_demo", {{"phi", "const:1"}, {"out", a.string()}}));
  const auto rb = run_experiment(make("luzin_demo", {{"phi", "const:1"}, {"out", b.string()}}));
  EXPECT_TRUE(ra.passed()) << ra.summary();
  ASSERT_EQ(ra.artifacts.size(), rb.artifacts.size());
  for (const char* f : {"luzin_primitive.csv", "luzin_field.csv"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  EXPECT_TRUE(fs::exists(a / "luzin_demo_summary.txt"));
}

TEST(Experiment, JumpExactSplit) {
  const auto dir = scratch("jump");
  const auto r = run_experiment(make("jump", {{"B", "fourier:1"}, {"g", "zero"}, {"out", dir.string()}}));
  EXPECT_TRUE(r.passed()) << r.summary();
  EXPECT_NE(r.summary().find("PASS"), std::string::npos);
}

TEST(Experiment, RejectsVerifyAndUnknownInputs) {
  const auto dir = scratch("reject");
  EXPECT_THROW(run_experiment(make("verify", {{"out", dir.string()}})), Error);
  EXPECT_THROW(run_experiment(make("hilbert", {{"domain", "torus"}, {"out", dir.string()}})), Error);
}

TEST(Verify, SuitesAndNegativeControl) {
  const auto& s = verify::suites();
  EXPECT_NE(std::find(s.begin(), s.end(), "all"), s.end());
  const auto ok = verify::run("identities", {});
  EXPECT_TRUE(ok.passed()) << ok.summary();
  EXPECT_EQ(ok.to_json().at("schema_version").get<int>(), io::kSchemaVersion);
  verify::Options neg;
  neg.flip_lambda_sign = true;
  EXPECT_FALSE(verify::run("neumann", neg).passed());
  EXPECT_THROW(verify::run("nosuch", {}), Error);
}
