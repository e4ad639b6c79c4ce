#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "orad/errors.hpp"
#include "orad/identities.hpp"

using namespace orad;
using numerics::kPi;

namespace {

double G(double x) { return std::tgamma(x); }

GrassmannConfig cfg(int n, int p, int q, int l) { return GrassmannConfig::make(n, p, q, l); }

ConstantParams params(const GrassmannConfig& c) {
  ConstantParams pr;
  pr.n = c.n;
  pr.p = c.p;
  pr.q = c.q;
  pr.l = c.l;
  return pr;
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("constants: closed-form values") {
  auto pr = params(cfg(6, 1, 1, 1));
  pr.lambda = 2.0;
  CHECK(constant("c1", pr) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(constant("c3", pr) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(constant("c4", pr) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

  ConstantParams kn;
  kn.n = 2;
  kn.k = 1;
  CHECK(constant("c_kn", kn) == doctest::Approx(2.0).epsilon(1e-12));

  auto f4 = params(cfg(4, 1, 1, 1));
  CHECK(constant("fuglede_c", f4) == doctest::Approx(8.0 * kPi).epsilon(1e-12));
  CHECK(constant("fuglede_c_typo", f4) == doctest::Approx(12.0 * std::sqrt(kPi)).epsilon(1e-12));
  // l = q = 1, n - j = 2: 2 sqrt(pi) G(1) / G(1/2) = 2.
  CHECK(constant("semyanistyi_dual_c", f4) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(constant("semyanistyi_forward_c_printed", f4) / constant("semyanistyi_forward_c", f4) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
}

TEST_CASE("constants: c1 and c2 agree with their printed forms when p = q") {
  auto c = cfg(6, 1, 1, 1);
  auto pr = params(c);
  pr.lambda = 2.5;
  CHECK(constant("c1", pr) == doctest::Approx(constant("c1_printed", pr)).epsilon(1e-12));
  CHECK(constant("c2", pr) == doctest::Approx(constant("c2_printed", pr)).epsilon(1e-12));

  // Oracle: composition of the two Beta integrals, at a config with p != q.
  auto d = cfg(7, 1, 2, 2);
  auto pd = params(d);
  pd.lambda = 3.0;
  const double lam = 3.0;
  const double c1 = std::pow(kPi, 1.0) * G((lam - 2) / 2) * G((7 - 3 - lam) / 2) * G((7 - 3) / 2.0) /
                    (G(lam / 2) * G((7 - 1 - lam) / 2) * G(2 / 2.0));
  CHECK(constant("c1", pd) == doctest::Approx(c1).epsilon(1e-12));
  CHECK(constant("c1", pd) != doctest::Approx(constant("c1_printed", pd)).epsilon(1e-6));
}

TEST_CASE("constants: errors") {
  auto pr = params(cfg(6, 1, 1, 1));
  CHECK_THROWS_AS(constant("no_such_constant", pr), DomainError);
  CHECK_THROWS_AS(constant("c1", pr), DomainError);  // lambda missing
  pr.lambda = 1.0;                                     // G((lam - l)/2) pole
  CHECK_THROWS_AS(constant("c1", pr), DomainError);
  try {
    constant("c1", pr);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("0") != std::string::npos);
  }
  CHECK(constant_names().size() >= 9);
  for (const auto& name : {"c1", "c2", "c3", "c4", "c_kn", "tilde_c1", "tilde_c2", "fuglede_c", "gamma_dk"}) {
    CHECK(has(constant_names(), name));
  }
}

TEST_CASE("report verdict logic") {
  IdentityReport r;
  r.tolerance = 1e-4;
  r.probes = {1, 2, 3};
  r.lhs = {2, 4, 6};
  r.rhs = {1, 2, 3};
  finalize_report(r);
  CHECK(r.verdict == Verdict::constant_mismatch);
  CHECK(r.fitted_constant_ratio == doctest::Approx(2.0));
  r.rhs = {2, 4, 6};
  finalize_report(r);
  CHECK(r.verdict == Verdict::pass);
  r.rhs = {2, 3, 6};
  finalize_report(r);
  CHECK(r.verdict == Verdict::fail);
  CHECK(to_string(Verdict::constant_mismatch) == "constant-mismatch");
}

TEST_CASE("probe grids") {
  auto p = default_probes();
  REQUIRE(p.size() == 8);
  CHECK(p.front() == doctest::Approx(0.25));
  CHECK(p.back() == doctest::Approx(4.0));
  CHECK(p[1] / p[0] == doctest::Approx(p[7] / p[6]));
  auto q = interior_probes();
  REQUIRE(q.size() == 8);
  CHECK(q.back() == doctest::Approx(2.0));
}

TEST_CASE("intertwining") {
  auto c = cfg(6, 1, 1, 1);
  auto g = check_intertwining(RadialProfile::gaussian(), c, 1.0);
  CHECK(g.verdict == Verdict::pass);
  CHECK(g.max_rel_dev <= 1e-4);
  CHECK(g.lhs.size() == 8);

  // Homogeneous of degree l - lambda + alpha = -1/2.
  auto p = check_intertwining(RadialProfile::power_law(2.5), c, 1.0);
  CHECK(p.verdict == Verdict::pass);
  CHECK(p.lhs.front() * std::sqrt(p.probes.front()) ==
        doctest::Approx(p.lhs.back() * std::sqrt(p.probes.back())).epsilon(1e-6));
  // lambda = 2 puts I^1 f ~ t^-1 on the boundary l of the forward window.
  CHECK_THROWS(check_intertwining(RadialProfile::power_law(2.0), c, 1.0));

  CHECK_THROWS_AS(check_intertwining(RadialProfile::gaussian(), c, 3.0), DomainError);  // n-k-q
  CHECK_THROWS_AS(check_intertwining(RadialProfile::gaussian(), c, 0.0), DomainError);
}

TEST_CASE("weighted duality") {
  auto c = cfg(6, 1, 1, 1);
  auto f = RadialProfile::gaussian();
  auto two = check_weighted_duality(f, c, 2.5, WeightedDuality::forward_power);
  CHECK(two.verdict == Verdict::pass);
  CHECK(two.max_rel_dev <= 1e-6);
  for (auto w : {WeightedDuality::dual_power, WeightedDuality::dual_cauchy, WeightedDuality::forward_cauchy}) {
    CHECK(check_weighted_duality(f, c, 2.5, w).verdict == Verdict::pass);
  }
  CHECK_THROWS_AS(check_weighted_duality(f, c, 1.0, WeightedDuality::forward_power), DomainError);  // q
  CHECK_THROWS_AS(check_weighted_duality(f, c, 4.0, WeightedDuality::forward_power), DomainError);  // n-k

  // p != q: the printed c1 misses by a constant, the derived one matches.
  auto d = cfg(7, 1, 2, 2);
  auto r = check_weighted_duality(f, d, 3.0, WeightedDuality::dual_power);
  CHECK(r.verdict == Verdict::constant_mismatch);
  CHECK(has(r.matching_candidates, "c1"));
  CHECK(r.fitted_constant_ratio == doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-6));
}

TEST_CASE("semyanistyi relations") {
  auto c = cfg(4, 1, 1, 1);
  auto g = RadialProfile::gaussian();
  auto dual = check_semyanistyi(g, c, 0.0, SemyanistyiSide::dualside);
  CHECK(dual.verdict == Verdict::pass);
  CHECK(dual.ratio_spread <= 1e-4);

  auto fwd = check_semyanistyi(g, c, 0.0, SemyanistyiSide::forwardside);
  CHECK(fwd.verdict != Verdict::fail);
  CHECK(fwd.ratio_spread <= 1e-4);
  CHECK(has(fwd.matching_candidates, "semyanistyi_forward_c"));

  auto z = check_semyanistyi(RadialProfile::zero(), c, 0.0, SemyanistyiSide::dualside);
  for (double v : z.lhs) CHECK(v == 0.0);
  for (double v : z.rhs) CHECK(v == 0.0);
}

TEST_CASE("fuglede") {
  auto g = RadialProfile::gaussian();
  auto r6 = check_fuglede(g, cfg(6, 1, 1, 1), 0.0, 0.0);
  CHECK(r6.verdict == Verdict::pass);
  CHECK(r6.max_rel_dev <= 1e-4);
  auto r4 = check_fuglede(g, cfg(4, 1, 1, 1), 0.0, 0.0);
  CHECK(r4.constant_used == doctest::Approx(8.0 * kPi).epsilon(1e-12));
  CHECK(r4.verdict == Verdict::pass);
  CHECK(has(r4.matching_candidates, "fuglede_c"));
  CHECK_FALSE(has(r4.matching_candidates, "fuglede_c_typo"));

  CHECK_THROWS_AS(check_fuglede(g, cfg(4, 1, 1, 1), 0.5, 0.5), DomainError);  // order = n

  auto z = check_fuglede(RadialProfile::zero(), cfg(4, 1, 1, 1), 0.0, 0.0);
  for (double v : z.lhs) CHECK(v == 0.0);
}

TEST_CASE("fuglede orders coincide structurally") {
  for (int n = 3; n <= 9; ++n)
    for (int p = 1; p < n; ++p)
      for (int q = 1; p + q < n; ++q)
        for (int l = 1; p + q + l < n; ++l) {
          auto c = cfg(n, p, q, l);
          CHECK(c.j() + c.l == c.k() + c.q);
        }
}

TEST_CASE("fitted ratio is scale invariant") {
  auto c = cfg(4, 1, 1, 1);
  auto a = check_semyanistyi(RadialProfile::gaussian(), c, 0.0, SemyanistyiSide::forwardside);
  auto b = check_semyanistyi(RadialProfile::gaussian().scaled(37.5), c, 0.0, SemyanistyiSide::forwardside);
  CHECK(std::abs(a.fitted_constant_ratio - b.fitted_constant_ratio) <= 1e-10 * a.fitted_constant_ratio);
  auto d = cfg(7, 1, 2, 2);
  auto x = check_weighted_duality(RadialProfile::gaussian(), d, 3.0, WeightedDuality::forward_power);
  auto y = check_weighted_duality(RadialProfile::gaussian().scaled(1e-3), d, 3.0, WeightedDuality::forward_power);
  CHECK(std::abs(x.fitted_constant_ratio - y.fitted_constant_ratio) <= 1e-10 * x.fitted_constant_ratio);
}

TEST_CASE("range inversion") {
  auto r = invert_via_range(RadialProfile::gaussian(), cfg(6, 1, 1, 1), 0.0);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.max_rel_dev <= 1e-2);
  auto gc = invert_via_range(RadialProfile::generalized_cauchy(5.0), cfg(4, 1, 1, 1), 0.0);
  CHECK(gc.verdict == Verdict::pass);
  auto z = invert_via_range(RadialProfile::zero(), cfg(4, 1, 1, 1), 0.0);
  for (double v : z.lhs) CHECK(v == 0.0);
}

TEST_CASE("riesz derivative inverts the potential") {
  auto g = RadialProfile::gaussian();
  const std::vector<double> radii = {0.3, 0.7, 1.2, 2.0};
  auto pot = riesz_profile(g, 1.5, 5);
  auto back = riesz_derivative_radial(pot, 1.5, 5, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(back.values[i] == doctest::Approx(g(radii[i])).epsilon(1e-4));
  }
  CHECK_THROWS_AS(riesz_derivative_radial(pot, 5.0, 5, radii), DomainError);
}

TEST_CASE("standard suite never fails") {
  auto reports = standard_suite({cfg(4, 1, 1, 1), cfg(6, 1, 1, 1), cfg(7, 1, 2, 2)});
  CHECK(reports.size() >= 30);
  for (const auto& r : reports) {
    INFO(r.identity << " n=" << r.config.n << " dev " << r.max_rel_dev);
    CHECK(r.verdict != Verdict::fail);
    if (r.verdict == Verdict::constant_mismatch) CHECK_FALSE(r.matching_candidates.empty());
  }
}
