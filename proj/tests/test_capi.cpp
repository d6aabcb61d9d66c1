#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conedn/conedn.h"

namespace fs = std::filesystem;

namespace {

const double kTheta = 0.860274346749;

std::vector<double> gaussian(const cdn_grid* g, double a, double w) {
  std::vector<double> s(cdn_grid_size(g)), v(s.size());
  cdn_grid_nodes(g, s.data());
  for (size_t i = 0; i < s.size(); ++i) v[i] = a * std::exp(-s[i] * s[i] / (w * w));
  return v;
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "conedn_capi";
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CONEDN_CLI) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(CApi, StatusAndLastError) {
  cdn_grid* g = nullptr;
  EXPECT_EQ(cdn_grid_create(16.0, 100, &g), CDN_ERR_CONFIG);
  EXPECT_EQ(g, nullptr);
  EXPECT_NE(std::string(cdn_last_error()), "");
  ASSERT_EQ(cdn_grid_create(16.0, 64, &g), CDN_OK);
  EXPECT_EQ(std::string(cdn_last_error()), "");
  EXPECT_EQ(cdn_grid_size(g), 64);
  EXPECT_EQ(cdn_grid_create(16.0, 64, nullptr), CDN_ERR_CONFIG);
  EXPECT_STREQ(cdn_status_name(CDN_ERR_DOMAIN), cdn_status_name(CDN_ERR_DOMAIN));
  EXPECT_STRNE(cdn_status_name(CDN_OK), cdn_status_name(CDN_ERR_SOLVER));
  EXPECT_NE(std::string(cdn_version()), "");
  cdn_grid_destroy(g);
  cdn_grid_destroy(nullptr);
}

TEST(CApi, AngleAndLegendre) {
  double t = 0.0, P = 1.0, P1 = 0.0, C = 0.0;
  ASSERT_EQ(cdn_taylor_angle(1e-12, &t), CDN_OK);
  EXPECT_NEAR(t, kTheta, 1e-10);
  ASSERT_EQ(cdn_legendre_half(t, &P, &P1), CDN_OK);
  EXPECT_LT(std::abs(P), 1e-9);
  EXPECT_GT(P1, 0.0);
  ASSERT_EQ(cdn_taylor_constant(t, 1.0, 1.0, &C), CDN_OK);
  EXPECT_NEAR(C, -std::sqrt(1.0 / std::tan(t)) / P1, 1e-13);
  double ls = 0.0, d[5];
  EXPECT_EQ(cdn_conical(2.0, 0.5, 5, &ls, d), CDN_ERR_DOMAIN);
  ASSERT_EQ(cdn_conical(0.0, t, 1, &ls, d), CDN_OK);
  double g0 = 0.0;
  ASSERT_EQ(cdn_flat_symbol(0.0, t, &g0), CDN_OK);
  EXPECT_NEAR(g0, d[1] / d[0], 1e-13);
}

TEST(CApi, FlatOperatorThroughHandles) {
  cdn_grid* g = nullptr;
  cdn_symbol_table* t = nullptr;
  ASSERT_EQ(cdn_grid_create(16.0, 64, &g), CDN_OK);
  ASSERT_EQ(cdn_symbol_table_create(g, kTheta, &t), CDN_OK);
  std::vector<double> z(64), sym(64), phi(64), out(64), s(64);
  cdn_grid_frequencies(g, z.data());
  cdn_grid_nodes(g, s.data());
  cdn_symbol_values(t, sym.data());
  const int q = 5;
  for (int i = 0; i < 64; ++i) phi[i] = std::cos(z[q] * s[i]);
  ASSERT_EQ(cdn_dn_flat(t, phi.data(), out.data()), CDN_OK);
  for (int i = 0; i < 64; ++i) EXPECT_NEAR(out[i], sym[q] * phi[i], 1e-12);
  EXPECT_EQ(cdn_dn_flat(t, nullptr, out.data()), CDN_ERR_CONFIG);
  cdn_symbol_table_destroy(t);
  cdn_grid_destroy(g);
}

TEST(CApi, ProfileFieldAndDomain) {
  cdn_grid* g = nullptr;
  ASSERT_EQ(cdn_grid_create(16.0, 64, &g), CDN_OK);
  cdn_profile* p = nullptr;
  const std::vector<double> big = gaussian(g, 1.0, 1.0);
  EXPECT_EQ(cdn_profile_create(g, kTheta, big.data(), &p), CDN_ERR_DOMAIN);
  EXPECT_EQ(p, nullptr);
  const std::vector<double> eta = gaussian(g, 0.05, 1.0), phi = gaussian(g, 1.0, 1.5);
  ASSERT_EQ(cdn_profile_create(g, kTheta, eta.data(), &p), CDN_OK);
  cdn_field* f = nullptr;
  ASSERT_EQ(cdn_solve_strip(p, 16, phi.data(), &f), CDN_OK);
  int ns = 0, ny = 0;
  ASSERT_EQ(cdn_field_dims(f, &ns, &ny), CDN_OK);
  EXPECT_EQ(ns, 64);
  EXPECT_GE(ny, 16);
  std::vector<double> vals(static_cast<size_t>(ns) * ny);
  ASSERT_EQ(cdn_field_values(f, vals.data()), CDN_OK);
  std::vector<double> G(64);
  ASSERT_EQ(cdn_dn_general(p, 16, phi.data(), G.data(), nullptr, nullptr), CDN_OK);
  EXPECT_EQ(cdn_field_write_csv(f, "/nonexistent/dir/f.csv"), CDN_ERR_IO);
  cdn_field_destroy(f);
  cdn_profile_destroy(p);
  cdn_grid_destroy(g);
}

TEST(CApi, ConfigAndRun) {
  cdn_config* c = nullptr;
  ASSERT_EQ(cdn_config_create(&c), CDN_OK);
  EXPECT_EQ(cdn_config_set(c, "grid.bogus", "1"), CDN_ERR_CONFIG);
  EXPECT_NE(std::string(cdn_last_error()).find("grid.bogus"), std::string::npos);
  char h[17];
  ASSERT_EQ(cdn_config_hash(c, h), CDN_OK);
  EXPECT_EQ(std::string(h).size(), 16u);
  cdn_report* r = nullptr;
  EXPECT_EQ(cdn_run("nonsense", c, &r), CDN_ERR_CONFIG);
  ASSERT_EQ(cdn_run("angle", c, &r), CDN_OK);
  EXPECT_EQ(cdn_report_pass(r), 1);
  const auto js = nlohmann::json::parse(cdn_report_json(r));
  EXPECT_EQ(js.at("subcommand"), "angle");
  EXPECT_EQ(js.at("config_hash"), std::string(h));
  EXPECT_TRUE(js.at("pass").get<bool>());
  cdn_report_destroy(r);
  cdn_config_destroy(c);

  cdn_config* bad = nullptr;
  EXPECT_EQ(cdn_config_load_string("grid:\n  n_sigma: 12\n", &bad), CDN_ERR_CONFIG);
  EXPECT_EQ(bad, nullptr);
}

TEST(Cli, ExitCodes) {
  const std::string out = "--out " + (scratch() / "out").string();
  EXPECT_EQ(run_cli("angle " + out), 0);
  EXPECT_EQ(run_cli("warp " + out), 2);
  EXPECT_EQ(run_cli("angle -c " + write_config("badkey.yaml", "grid:\n  n_zeta: 3\n") + " " + out), 2);
  const std::string small = "grid:\n  n_sigma: 64\n  n_y: 16\n";
  EXPECT_EQ(run_cli("shape-check -c " +
                    write_config("big.yaml", small + "cone:\n  eta_tilde:\n    amplitude: 1.0\n") + " " + out),
            2);
  EXPECT_EQ(run_cli("shape-check -c " + write_config("tight.yaml", small + "tol:\n  shape: 1e-14\n") + " " + out),
            1);
  EXPECT_TRUE(fs::exists(scratch() / "out" / "angle.json"));
}
