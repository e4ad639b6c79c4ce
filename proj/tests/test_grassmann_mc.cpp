#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "orad/errors.hpp"
#include "orad/grassmann_mc.hpp"

using namespace orad;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using Mode = GrassmannConfig::Mode;

namespace {

GrassmannConfig cfg(int n, int p, int q, int l, Mode m = Mode::strict) {
  return GrassmannConfig::make(n, p, q, l, m);
}

AffinePlane kplane_at(int n, int k, double r) {
  VectorXd v = VectorXd::Zero(n);
  v(n - 1) = r;
  return AffinePlane::through(Subspace{MatrixXd::Identity(n, k)}, v);
}

bool within(const MCEstimate& e, double target, double nsig = 3.0) {
  return std::abs(e.mean - target) <= nsig * e.std_error;
}

}  // namespace

TEST_CASE("sampled frames are orthonormal") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 8; ++n)
    for (int m = 0; m <= n; ++m) {
      const Subspace s = sample_grassmann(n, m, rng);
      CHECK(s.ambient_dim() == n);
      CHECK(s.dim() == m);
      CHECK(s.orthonormality_residual() <= 1e-12);
      const Subspace c = s.complement();
      CHECK(c.dim() == n - m);
      CHECK(c.orthonormality_residual() <= 1e-12);
      if (m > 0 && m < n) CHECK((s.frame.transpose() * c.frame).cwiseAbs().maxCoeff() <= 1e-12);
    }
  CHECK_THROWS_AS(sample_grassmann(3, 4, rng), DomainError);
  CHECK_THROWS_AS(sample_grassmann(0, 0, rng), DomainError);
}

TEST_CASE("lines: squared first coordinate has mean 1/n") {
  // Beta(1/2, (n-1)/2): mean 1/n, variance 2(n-1)/(n^2(n+2)).
  for (int n : {2, 5, 9}) {
    std::mt19937_64 rng(100 + n);
    const int N = 100000;
    double sum = 0.0;
    for (int i = 0; i < N; ++i) {
      const double x = sample_grassmann(n, 1, rng).frame(0, 0);
      sum += x * x;
    }
    const double se = std::sqrt(2.0 * (n - 1) / (double(n) * n * (n + 2)) / N);
    CHECK(std::abs(sum / N - 1.0 / n) <= 4.0 * se);
  }
}

TEST_CASE("planes and offsets") {
  std::mt19937_64 rng(9);
  const Subspace s = sample_grassmann(6, 2, rng);
  VectorXd x(6);
  x << 1, -2, 0.5, 3, 0, 1;
  const AffinePlane t = AffinePlane::through(s, x);
  CHECK((s.frame.transpose() * t.offset).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(t.distance() <= x.norm());
  const Subspace r = rotate_within(s, rng);
  CHECK(r.orthonormality_residual() <= 1e-12);
  CHECK((r.project_out(s.frame.col(0))).norm() <= 1e-12);
}

TEST_CASE("determinism") {
  std::mt19937_64 a(77), b(77);
  CHECK(sample_grassmann(5, 2, a).frame == sample_grassmann(5, 2, b).frame);

  const auto c = cfg(4, 1, 1, 1);
  const auto f = radial_plane_function(RadialProfile::gaussian());
  MCOptions one, two;
  one.threads = 1;
  two.threads = 3;
  const auto e1 = mc_strichartz(f, kplane_at(4, 2, 1.0), c, 5000, 11, one);
  const auto e2 = mc_strichartz(f, kplane_at(4, 2, 1.0), c, 5000, 11, two);
  CHECK(e1.mean == e2.mean);
  CHECK(e1.std_error == e2.std_error);
  CHECK(e1.seed == 11);
  CHECK(e1.n_samples == 5000);
  const auto e3 = mc_strichartz(f, kplane_at(4, 2, 1.0), c, 5000, 12, one);
  CHECK(e3.mean != e1.mean);
}

TEST_CASE("forward transform of a gaussian matches the radial formula") {
  const auto c = cfg(4, 1, 1, 1);
  const auto g = RadialProfile::gaussian();
  const auto e = mc_strichartz(radial_plane_function(g), kplane_at(4, 2, 1.0), c, 100000, 2024);
  CHECK(within(e, strichartz_forward_radial(g, c, 1.0)));
  CHECK_FALSE(e.variance_warning);
}

TEST_CASE("dual transform of a gaussian matches the radial formula") {
  const auto c = cfg(6, 1, 1, 1);
  const auto g = RadialProfile::gaussian();
  VectorXd u = VectorXd::Zero(6);
  u(5) = 0.8;
  const auto tau = AffinePlane::through(Subspace{MatrixXd::Identity(6, 2)}, u);
  const auto e = mc_strichartz_dual(radial_plane_function(g), tau, c, 100000, 31);
  CHECK(within(e, strichartz_dual_radial(g, c, 0.8)));
}

TEST_CASE("power law with the adaptive Cauchy proposal") {
  // t^-2 on (6,1,1,1): c1 |v|^{l - 2} = 4 at |v| = 1.
  const auto c = cfg(6, 1, 1, 1);
  const auto f = radial_plane_function(RadialProfile::power_law(2.0));
  MCOptions o;
  o.proposal.kind = OffsetProposal::Kind::cauchy_adaptive;
  const auto e = mc_strichartz(f, kplane_at(6, 2, 1.0), c, 100000, 1, o);
  CHECK(within(e, 4.0));
  CHECK_FALSE(e.variance_warning);

  // The Gaussian proposal cannot carry the r^-2 tail.
  const auto bad = mc_strichartz(f, kplane_at(6, 2, 1.0), c, 100000, 7);
  CHECK(bad.variance_warning);
}

TEST_CASE("zero input") {
  const auto c = cfg(4, 1, 1, 1);
  const auto e = mc_strichartz(radial_plane_function(RadialProfile::zero()), kplane_at(4, 2, 1.0), c, 1000, 3);
  CHECK(e.mean == 0.0);
  CHECK(e.std_error == 0.0);
  const auto p = mc_pairing_duality(RadialProfile::zero(), RadialProfile::gaussian(), c, 1000, 3);
  CHECK(p.forward.mean == 0.0);
  CHECK(p.dual.mean == 0.0);
  const auto t = mc_vs_radial(RadialProfile::zero(), c, {0.5, 1.0}, 1000, 3);
  for (const auto& row : t.rows) {
    CHECK(row.estimate.mean == 0.0);
    CHECK(row.radial == 0.0);
    CHECK(row.z == 0.0);
  }
}

TEST_CASE("pairing duality") {
  for (const auto& c : {cfg(4, 1, 1, 1), cfg(6, 1, 1, 1)}) {
    const auto g = RadialProfile::gaussian();
    const auto p = mc_pairing_duality(g, g, c, 100000, 17);
    const double combined = std::hypot(p.forward.std_error, p.dual.std_error);
    CHECK(std::abs(p.forward.mean - p.dual.mean) <= 3.0 * combined);
    CHECK(within(p.forward, p.reference));
    CHECK(within(p.dual, p.reference));
    CHECK(std::abs(p.reference - p.reference_dual) <= 1e-6 * std::abs(p.reference));
  }
}

TEST_CASE("pairing references with q != l") {
  // Forward and dual reductions are genuinely different integrals here.
  const auto g = RadialProfile::gaussian();
  const auto c = cfg(6, 1, 1, 2);
  const auto p = mc_pairing_duality(g, RadialProfile::generalized_cauchy(8.0), c, 100000, 5);
  CHECK(std::abs(p.reference - p.reference_dual) <= 1e-6 * std::abs(p.reference));
  CHECK(within(p.forward, p.reference, 4.0));
  CHECK(within(p.dual, p.reference, 4.0));
}

TEST_CASE("comparison table against the radial formula") {
  const auto t = mc_vs_radial(RadialProfile::gaussian(), cfg(4, 1, 1, 1), {0.5, 1.0, 2.0}, 100000, 42);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.max_abs_z <= 3.0);

  // q = 0 is the inclusion transform.
  const auto inc = cfg(5, 1, 0, 2, Mode::special_case);
  const auto ti = mc_vs_radial(RadialProfile::gaussian(), inc, {0.5, 1.5}, 100000, 8);
  CHECK(ti.max_abs_z <= 3.0);
  for (const auto& row : ti.rows) {
    CHECK(row.radial == doctest::Approx(inclusion_radial(RadialProfile::gaussian(), 1, 3, 5, row.radius))
                            .epsilon(1e-8));
  }

  // p = 0: Gonzalez transform.
  const auto gz = cfg(5, 0, 1, 2, Mode::special_case);
  CHECK(mc_vs_radial(RadialProfile::gaussian(), gz, {0.7}, 100000, 4).max_abs_z <= 3.0);
}

TEST_CASE("rotation invariance") {
  std::mt19937_64 rng(123);
  MCOptions rot;
  rot.rotation = sample_grassmann(6, 6, rng).frame;
  const auto c = cfg(6, 1, 1, 1);
  const auto f = radial_plane_function(RadialProfile::gaussian());
  const auto a = mc_strichartz(f, kplane_at(6, 2, 1.0), c, 50000, 5);
  const auto b = mc_strichartz(f, kplane_at(6, 2, 1.0), c, 50000, 6, rot);
  CHECK(std::abs(a.mean - b.mean) <= 3.0 * (a.std_error + b.std_error));

  MCOptions skew;
  skew.rotation = MatrixXd::Identity(6, 6) * 2.0;
  CHECK_THROWS_AS(mc_strichartz(f, kplane_at(6, 2, 1.0), c, 100, 5, skew), DomainError);
}

TEST_CASE("standard error scales as one over root n") {
  const auto c = cfg(4, 1, 1, 1);
  const auto f = radial_plane_function(RadialProfile::gaussian());
  const auto small = mc_strichartz(f, kplane_at(4, 2, 1.0), c, 4000, 21);
  const auto large = mc_strichartz(f, kplane_at(4, 2, 1.0), c, 64000, 21);
  const double ratio = small.std_error / large.std_error;
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
}

TEST_CASE("argument errors") {
  const auto c = cfg(4, 1, 1, 1);
  const auto f = radial_plane_function(RadialProfile::gaussian());
  CHECK_THROWS_AS(mc_strichartz(f, kplane_at(4, 1, 1.0), c, 100, 1), DomainError);
  CHECK_THROWS_AS(mc_strichartz(f, kplane_at(4, 2, 1.0), c, 1, 1), DomainError);
  CHECK_THROWS_AS(mc_strichartz_dual(f, kplane_at(5, 2, 1.0), c, 100, 1), DomainError);
  MCOptions o;
  o.substreams = 0;
  CHECK_THROWS_AS(mc_strichartz(f, kplane_at(4, 2, 1.0), c, 100, 1, o), DomainError);
}
