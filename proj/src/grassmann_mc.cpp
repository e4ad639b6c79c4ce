#include "orad/grassmann_mc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orad/errors.hpp"
#include "orad/identities.hpp"
#include "orad/numerics.hpp"
#include "orad/parallel.hpp"

namespace orad {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using numerics::kPi;

double Subspace::orthonormality_residual() const {
  if (dim() == 0) return 0.0;
  const MatrixXd g = frame.transpose() * frame - MatrixXd::Identity(dim(), dim());
  return g.cwiseAbs().maxCoeff();
}

Subspace Subspace::complement() const {
  const int n = ambient_dim(), m = dim();
  if (m == 0) return {MatrixXd::Identity(n, n)};
  Eigen::HouseholderQR<MatrixXd> qr(frame);
  const MatrixXd q = qr.householderQ() * MatrixXd::Identity(n, n);
  return {q.rightCols(n - m)};
}

VectorXd Subspace::project_out(const VectorXd& x) const {
  if (dim() == 0) return x;
  return x - frame * (frame.transpose() * x);
}

AffinePlane AffinePlane::through(const Subspace& direction, const VectorXd& x) {
  return {direction, direction.project_out(x)};
}

PlaneFunction radial_plane_function(const RadialProfile& f0) {
  return [f0](const AffinePlane& t) { return f0(t.distance()); };
}

Subspace sample_grassmann(int n, int m, std::mt19937_64& rng) {
  if (n < 1 || m < 0 || m > n) {
    throw DomainError("sample_grassmann: need 0 <= m <= n, n >= 1 (n=" + std::to_string(n) +
                      ", m=" + std::to_string(m) + ")");
  }
  if (m == 0) return {MatrixXd(n, 0)};
  std::normal_distribution<double> normal;
  for (;;) {
    MatrixXd a(n, m);
    for (int c = 0; c < m; ++c)
      for (int r = 0; r < n; ++r) a(r, c) = normal(rng);
    Eigen::HouseholderQR<MatrixXd> qr(a);
    const VectorXd diag = qr.matrixQR().diagonal();
    if (diag.cwiseAbs().minCoeff() < 1e-10) continue;
    MatrixXd q = qr.householderQ() * MatrixXd::Identity(n, m);
    for (int c = 0; c < m; ++c)
      if (diag(c) < 0.0) q.col(c) *= -1.0;
    return {q};
  }
}

Subspace rotate_within(const Subspace& s, std::mt19937_64& rng) {
  if (s.dim() == 0) return s;
  return {s.frame * sample_grassmann(s.dim(), s.dim(), rng).frame};
}

namespace {

struct Offset {
  VectorXd y;
  double density = 1.0;
};

// `adaptive` is the scale used by the Cauchy proposal.
Offset draw_offset(int dim, const OffsetProposal& prop, double adaptive, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Offset o;
  o.y = VectorXd(dim);
  if (dim == 0) return o;
  for (int i = 0; i < dim; ++i) o.y(i) = normal(rng);
  if (prop.kind == OffsetProposal::Kind::gaussian) {
    const double s = prop.scale;
    o.y *= s;
    o.density = std::pow(2.0 * kPi * s * s, -0.5 * dim) * std::exp(-0.5 * o.y.squaredNorm() / (s * s));
    return o;
  }
  const double s = adaptive > 0.0 ? adaptive : prop.scale;
  double c = 0.0;
  while (c == 0.0) c = normal(rng);
  o.y *= s / std::abs(c);
  const double h = 0.5 * (dim + 1);
  o.density = std::exp(std::lgamma(h)) / (std::pow(kPi, h) * std::pow(s, dim)) *
              std::pow(1.0 + o.y.squaredNorm() / (s * s), -h);
  return o;
}

// One weighted sample of the fiber integral at the plane base + x:
// P in G_pdim(base), C in G_cdim(base^perp), u on the fiber P^perp cap base.
double fiber_sample(const PlaneFunction& f, const MatrixXd& base, const MatrixXd& perp, const VectorXd& x,
                    int pdim, int fdim, int cdim, const MCOptions& opt, std::mt19937_64& rng) {
  const int n = static_cast<int>(base.rows());
  const int a = static_cast<int>(base.cols());
  const MatrixXd rotated = base * sample_grassmann(a, a, rng).frame;
  const MatrixXd c = perp * sample_grassmann(n - a, cdim, rng).frame;
  MatrixXd dir(n, pdim + cdim);
  dir << rotated.leftCols(pdim), c;
  const VectorXd resid = cdim > 0 ? VectorXd(x - c * (c.transpose() * x)) : x;
  const Offset u = draw_offset(fdim, opt.proposal, resid.norm(), rng);
  VectorXd point = x;
  if (fdim > 0) point += rotated.rightCols(fdim) * u.y;
  if (opt.rotation.size() > 0) {
    dir = opt.rotation * dir;
    point = opt.rotation * point;
  }
  const double v = f(AffinePlane::through(Subspace{dir}, point));
  if (v == 0.0) return 0.0;
  return v / u.density;
}

struct Moments {
  std::int64_t n = 0;
  double mean = 0.0, m2 = 0.0, sumsq = 0.0, maxsq = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
    sumsq += x * x;
    maxsq = std::max(maxsq, x * x);
  }
  void merge(const Moments& o) {
    if (o.n == 0) return;
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double d = o.mean - mean;
    mean += d * nb / (na + nb);
    m2 += o.m2 + d * d * na * nb / (na + nb);
    n += o.n;
    sumsq += o.sumsq;
    maxsq = std::max(maxsq, o.maxsq);
  }
};

MCEstimate run_streams(std::int64_t n_samples, std::uint64_t seed, const MCOptions& opt,
                       const std::function<double(std::mt19937_64&)>& draw) {
  if (n_samples < 2) throw DomainError("Monte Carlo: need at least 2 samples");
  if (opt.substreams < 1) throw DomainError("Monte Carlo: substreams must be positive");
  if (opt.rotation.size() > 0) {
    const auto& r = opt.rotation;
    if (r.rows() != r.cols() || (r.transpose() * r - MatrixXd::Identity(r.rows(), r.cols())).cwiseAbs().maxCoeff() > 1e-10) {
      throw DomainError("Monte Carlo: rotation must be an orthogonal matrix");
    }
  }
  const auto streams = static_cast<std::size_t>(opt.substreams);
  std::vector<Moments> parts(streams);
  const std::int64_t base = n_samples / opt.substreams, extra = n_samples % opt.substreams;
  parallel_for(
      streams,
      [&](std::size_t i) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(i)};
        std::mt19937_64 rng(seq);
        const std::int64_t count = base + (static_cast<std::int64_t>(i) < extra ? 1 : 0);
        for (std::int64_t s = 0; s < count; ++s) parts[i].add(draw(rng));
      },
      opt.threads);
  Moments all;
  for (const auto& p : parts) all.merge(p);

  MCEstimate e;
  e.n_samples = all.n;
  e.seed = seed;
  e.mean = all.mean;
  const double var = all.m2 / static_cast<double>(all.n - 1);
  e.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(all.n));
  e.variance_warning = all.n >= 100 && all.sumsq > 0.0 && all.maxsq > 0.25 * all.sumsq;
  return e;
}

void check_plane(const AffinePlane& t, int n, int dim, const char* what) {
  if (t.direction.ambient_dim() != n || t.direction.dim() != dim || t.offset.size() != n) {
    throw DomainError(std::string(what) + ": plane has the wrong dimensions for the configuration");
  }
}

Asymptotics product_asymptotics(const Asymptotics& a, const Asymptotics& b) {
  Asymptotics r;
  r.head_exponent = a.head_exponent + b.head_exponent;
  if (a.tail == TailKind::vanishing || b.tail == TailKind::vanishing) {
    Asymptotics v = Asymptotics::vanishing();
    v.head_exponent = r.head_exponent;
    return v;
  }
  r.tail_exponent = a.tail_exponent + b.tail_exponent;
  if (a.tail == TailKind::gaussian && b.tail == TailKind::gaussian) {
    r.tail = TailKind::gaussian;
    r.scale = 1.0 / std::sqrt(1.0 / (a.scale * a.scale) + 1.0 / (b.scale * b.scale));
  } else if (a.tail == TailKind::gaussian || b.tail == TailKind::gaussian) {
    r.tail = TailKind::gaussian;
    r.scale = a.tail == TailKind::gaussian ? a.scale : b.scale;
  } else {
    r.tail = TailKind::power;
    r.tail_log_power = a.tail_log_power + b.tail_log_power;
  }
  return r;
}

}  // namespace

MCEstimate mc_strichartz(const PlaneFunction& f, const AffinePlane& zeta, const GrassmannConfig& cfg,
                         std::int64_t n_samples, std::uint64_t seed, const MCOptions& opt) {
  check_plane(zeta, cfg.n, cfg.k(), "mc_strichartz");
  const MatrixXd base = zeta.direction.frame;
  const MatrixXd perp = zeta.direction.complement().frame;
  const VectorXd x = zeta.offset;
  return run_streams(n_samples, seed, opt, [&](std::mt19937_64& rng) {
    return fiber_sample(f, base, perp, x, cfg.p, cfg.l, cfg.q, opt, rng);
  });
}

MCEstimate mc_strichartz_dual(const PlaneFunction& g, const AffinePlane& tau, const GrassmannConfig& cfg,
                              std::int64_t n_samples, std::uint64_t seed, const MCOptions& opt) {
  check_plane(tau, cfg.n, cfg.j(), "mc_strichartz_dual");
  const MatrixXd base = tau.direction.frame;
  const MatrixXd perp = tau.direction.complement().frame;
  const VectorXd x = tau.offset;
  return run_streams(n_samples, seed, opt, [&](std::mt19937_64& rng) {
    return fiber_sample(g, base, perp, x, cfg.p, cfg.q, cfg.l, opt, rng);
  });
}

PairingResult mc_pairing_duality(const RadialProfile& f, const RadialProfile& g, const GrassmannConfig& cfg,
                                 std::int64_t n_samples, std::uint64_t seed, const MCOptions& opt) {
  const int n = cfg.n, j = cfg.j(), k = cfg.k();
  const PlaneFunction fp = radial_plane_function(f), gp = radial_plane_function(g);
  OffsetProposal outer = opt.proposal;
  outer.kind = OffsetProposal::Kind::gaussian;

  // Outer plane (dim `a`) with a Gaussian offset in its orthocomplement, weight
  // w0(|offset|); inner one-sample estimate of the transform there.
  auto pairing = [&](int a, const RadialProfile& w0, const PlaneFunction& inner, int pdim, int fdim, int cdim) {
    return [&, a, w0, inner, pdim, fdim, cdim](std::mt19937_64& rng) {
      const Subspace dir = sample_grassmann(n, a, rng);
      const MatrixXd perp = dir.complement().frame;
      const Offset o = draw_offset(n - a, outer, outer.scale, rng);
      const double w = w0(o.y.norm());
      if (w == 0.0) return 0.0;
      const VectorXd x = perp * o.y;
      return w * fiber_sample(inner, dir.frame, perp, x, pdim, fdim, cdim, opt, rng) / o.density;
    };
  };

  PairingResult res;
  res.forward = run_streams(n_samples, seed, opt, pairing(k, g, fp, cfg.p, cfg.l, cfg.q));
  res.dual = run_streams(n_samples, seed ^ 0x9e3779b97f4a7c15ULL, opt, pairing(j, f, gp, cfg.p, cfg.q, cfg.l));

  if (f.kind() == ProfileKind::zero || g.kind() == ProfileKind::zero) return res;
  const RadialProfile rf = strichartz_forward_profile(f, cfg);
  const RadialProfile rg = strichartz_dual_profile(g, cfg);
  res.reference = plane_integral([&](double t) { return rf(t) * g(t); },
                                 product_asymptotics(rf.asymptotics(), g.asymptotics()), n, k);
  res.reference_dual = plane_integral([&](double t) { return f(t) * rg(t); },
                                      product_asymptotics(f.asymptotics(), rg.asymptotics()), n, j);
  return res;
}

MCComparison mc_vs_radial(const RadialProfile& f, const GrassmannConfig& cfg, const std::vector<double>& radii,
                          std::int64_t n_samples, std::uint64_t seed, const MCOptions& opt) {
  const int n = cfg.n, k = cfg.k();
  const Subspace eta{MatrixXd::Identity(n, k)};
  const PlaneFunction fp = radial_plane_function(f);
  MCComparison out;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (!(r >= 0.0)) throw DomainError("mc_vs_radial: radii must be non-negative");
    VectorXd v = VectorXd::Zero(n);
    v(n - 1) = r;
    MCComparisonRow row;
    row.radius = r;
    row.estimate = mc_strichartz(fp, AffinePlane::through(eta, v), cfg, n_samples, seed + i, opt);
    row.radial = strichartz_forward_radial(f, cfg, r);
    const double diff = row.estimate.mean - row.radial;
    // An exactly matched proposal has no sampling error; the radial value
    // itself is only good to about 1e-9.
    const double sd = std::hypot(row.estimate.std_error, 1e-9 * std::abs(row.radial));
    if (sd > 0.0) {
      row.z = diff / sd;
    } else {
      row.z = diff == 0.0 ? 0.0 : HUGE_VAL;
    }
    out.max_abs_z = std::max(out.max_abs_z, std::abs(row.z));
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace orad
