#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "unruhqi/unruhqi.h"

namespace {

const double kQuarter = 0.78539816339744830962;

struct StateGuard {
  uqi_state* s = nullptr;
  ~StateGuard() { uqi_state_free(s); }
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(uqi_version()) == "1.0.0");
  CHECK(std::string(uqi_status_name(UQI_OK)) == "ok");
  CHECK(std::string(uqi_status_name(UQI_ERR_DOMAIN)) == "domain error");
}

TEST_CASE("state handles") {
  StateGuard w;
  REQUIRE(uqi_state_werner(0.5, &w.s) == UQI_OK);
  double m[32];
  REQUIRE(uqi_state_matrix(w.s, m) == UQI_OK);
  CHECK(m[0] == doctest::Approx(0.375));
  CHECK(m[2 * 3] == doctest::Approx(0.25));

  StateGuard copy;
  REQUIRE(uqi_state_from_matrix(m, &copy.s) == UQI_OK);
  double c = 0;
  REQUIRE(uqi_concurrence(copy.s, &c) == UQI_OK);
  CHECK(c == doctest::Approx(0.25));

  m[0] = 2.0;  // trace no longer 1
  uqi_state* bad = nullptr;
  CHECK(uqi_state_from_matrix(m, &bad) == UQI_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(std::string(uqi_last_error()).size() > 0);

  uqi_state* out = nullptr;
  CHECK(uqi_state_werner(1.5, &out) == UQI_ERR_INVALID_ARGUMENT);
  CHECK(uqi_state_alice_rob(0.5, 1.0, &out) == UQI_ERR_INVALID_ARGUMENT);
  uqi_state_free(nullptr);
}

TEST_CASE("null arguments") {
  double v = 0;
  CHECK(uqi_state_werner(0.5, nullptr) == UQI_ERR_NULL_ARGUMENT);
  CHECK(uqi_concurrence(nullptr, &v) == UQI_ERR_NULL_ARGUMENT);
  StateGuard w;
  REQUIRE(uqi_state_werner(0.5, &w.s) == UQI_OK);
  CHECK(uqi_concurrence(w.s, nullptr) == UQI_ERR_NULL_ARGUMENT);
  CHECK(uqi_sweep_csv(nullptr, nullptr, "-") == UQI_ERR_NULL_ARGUMENT);
  CHECK(uqi_analysis_json(nullptr, nullptr, 0, nullptr) == UQI_ERR_NULL_ARGUMENT);
}

TEST_CASE("accelerated state through the C API") {
  StateGuard s;
  REQUIRE(uqi_state_alice_rob(0.9, kQuarter, &s.s) == UQI_OK);
  int is_x = 0;
  REQUIRE(uqi_state_is_x(s.s, 1e-12, &is_x) == UQI_OK);
  CHECK(is_x == 1);

  double a[3], b[3], T[9];
  REQUIRE(uqi_state_pauli(s.s, a, b, T) == UQI_OK);
  CHECK(b[2] == doctest::Approx(-0.5));
  CHECK(T[8] == doctest::Approx(0.45));

  double c = 0, cx = 0;
  REQUIRE(uqi_concurrence(s.s, &c) == UQI_OK);
  REQUIRE(uqi_concurrence_x(s.s, &cx) == UQI_OK);
  CHECK(c == doctest::Approx(0.5218317106939968).epsilon(1e-12));
  CHECK(cx == doctest::Approx(c).epsilon(1e-12));

  double m = 0, bmax = 0;
  REQUIRE(uqi_chsh_m(s.s, &m, &bmax) == UQI_OK);
  CHECK(m == doctest::Approx(0.81));
  CHECK(bmax == doctest::Approx(1.8));

  double center[3], semi[3], axes[9];
  REQUIRE(uqi_steering_ellipsoid(s.s, UQI_FIRST, center, semi, axes) == UQI_OK);
  CHECK(center[2] == doctest::Approx(0.3));
  CHECK(semi[0] == doctest::Approx(0.7348469228349535));
  CHECK(uqi_steering_ellipsoid(s.s, 7, center, semi, axes) == UQI_ERR_INVALID_ARGUMENT);

  double msc = 0, oracle = 0;
  REQUIRE(uqi_msc_closed_form(s.s, UQI_FIRST, &msc) == UQI_OK);
  REQUIRE(uqi_msc_oracle(s.s, UQI_FIRST, 32, 30, &oracle) == UQI_OK);
  CHECK(std::abs(msc - oracle) <= 1e-4);

  double rc = 0, rq = 0;
  int unsteerable = 0, unsteerable_q = 0;
  REQUIRE(uqi_critical_radius_analytic(0.9, kQuarter, &rc, &unsteerable) == UQI_OK);
  REQUIRE(uqi_critical_radius_quadrature(T, 64, &rq, &unsteerable_q) == UQI_OK);
  CHECK(std::abs(rc - rq) <= 1e-6);
  CHECK(unsteerable == unsteerable_q);

  StateGuard canon;
  REQUIRE(uqi_state_canonical(s.s, &canon.s) == UQI_OK);
  StateGuard again;
  REQUIRE(uqi_state_apply_unruh(s.s, UQI_SECOND, 0.0, &again.s) == UQI_OK);
}

TEST_CASE("domain errors") {
  double entries[32] = {};
  // |0><0| x I/2: the second qubit is maximally mixed, the first is pure.
  entries[0] = 0.5;
  entries[2 * 5] = 0.5;
  StateGuard product;
  REQUIRE(uqi_state_from_matrix(entries, &product.s) == UQI_OK);
  double center[3], semi[3], axes[9];
  CHECK(uqi_steering_ellipsoid(product.s, UQI_SECOND, center, semi, axes) == UQI_ERR_DOMAIN);
  uqi_state* canon = nullptr;
  CHECK(uqi_state_canonical(product.s, &canon) == UQI_ERR_DOMAIN);

  const double singular[9] = {0.5, 0, 0, 0, 0, 0, 0, 0, 0.5};
  double v = 0;
  int u = 0;
  CHECK(uqi_critical_radius_quadrature(singular, 32, &v, &u) == UQI_ERR_DOMAIN);
}

TEST_CASE("scalar functions") {
  double v = 0;
  REQUIRE(uqi_separability_threshold(0.0, &v) == UQI_OK);
  CHECK(v == doctest::Approx(1.0 / 3.0));
  REQUIRE(uqi_bell_threshold(kQuarter, &v) == UQI_OK);
  CHECK(v == doctest::Approx(1.0));
  REQUIRE(uqi_steerability_threshold(kQuarter, &v) == UQI_OK);
  CHECK(v == doctest::Approx(0.7779690592966854));
  REQUIRE(uqi_concurrence_eq17(1.0, kQuarter, &v) == UQI_OK);
  CHECK(v == doctest::Approx(0.5));
  REQUIRE(uqi_r_from_acceleration(1.0, 1e12, 1.0, &v) == UQI_OK);
  CHECK(v == doctest::Approx(kQuarter));
  double k0[8], k1[8];
  REQUIRE(uqi_unruh_kraus(kQuarter, k0, k1) == UQI_OK);
  CHECK(k0[0] == doctest::Approx(std::sqrt(0.5)));
  CHECK(k1[4] == doctest::Approx(std::sqrt(0.5)));
  int u = 0;
  REQUIRE(uqi_critical_radius_analytic(0.0, 0.2, &v, &u) == UQI_OK);
  CHECK(std::isinf(v));
  CHECK(u == 1);
}

TEST_CASE("analysis JSON buffer protocol") {
  uqi_options opts;
  uqi_options_default(&opts);
  CHECK(opts.oracle_grid == 64);
  uqi_analysis* an = nullptr;
  REQUIRE(uqi_analyze(0.5, 0.39269908169872414, &opts, &an) == UQI_OK);
  std::size_t needed = 0;
  REQUIRE(uqi_analysis_json(an, nullptr, 0, &needed) == UQI_OK);
  CHECK(needed > 100);
  std::vector<char> small(needed - 1);
  CHECK(uqi_analysis_json(an, small.data(), small.size(), &needed) == UQI_ERR_BUFFER_TOO_SMALL);
  std::vector<char> buf(needed);
  REQUIRE(uqi_analysis_json(an, buf.data(), buf.size(), nullptr) == UQI_OK);
  const std::string json(buf.data());
  CHECK(json.size() + 1 == needed);
  CHECK(json.find("\"ellipsoid_first_semiaxes\":[0.466974416,0.466974416,0.43613021]") != std::string::npos);
  uqi_analysis_free(an);

  CHECK(uqi_analyze(0.5, 2.0, nullptr, &an) == UQI_ERR_INVALID_ARGUMENT);
}

TEST_CASE("file output") {
  const auto dir = std::filesystem::temp_directory_path() / "unruhqi_c_api_test";
  std::filesystem::create_directories(dir);
  uqi_sweep_spec spec;
  uqi_sweep_spec_default(&spec);
  spec.p_steps = 3;
  spec.r_steps = 2;
  spec.quantities = "concurrence,r_c";
  REQUIRE(uqi_sweep_csv(&spec, nullptr, (dir / "sweep.csv").string().c_str()) == UQI_OK);
  const std::string csv = read_file(dir / "sweep.csv");
  CHECK(csv.rfind("p,r,concurrence,r_c\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);

  spec.quantities = "bogus";
  CHECK(uqi_sweep_csv(&spec, nullptr, (dir / "bogus.csv").string().c_str()) == UQI_ERR_INVALID_ARGUMENT);
  CHECK_FALSE(std::filesystem::exists(dir / "bogus.csv"));

  spec.quantities = nullptr;
  CHECK(uqi_sweep_csv(&spec, nullptr, (dir / "missing" / "x.csv").string().c_str()) == UQI_ERR_IO);

  REQUIRE(uqi_ellipsoid_csv(0.9, kQuarter, UQI_FIRST, 8, (dir / "ell.csv").string().c_str()) == UQI_OK);
  CHECK(read_file(dir / "ell.csv").rfind("# center=0,0,0.3 ", 0) == 0);
  CHECK(uqi_ellipsoid_csv(0.9, kQuarter, UQI_FIRST, 4, (dir / "ell.csv").string().c_str()) ==
        UQI_ERR_INVALID_ARGUMENT);
  std::filesystem::remove_all(dir);
}
