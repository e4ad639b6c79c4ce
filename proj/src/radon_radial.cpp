#include "orad/radon_radial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orad/errors.hpp"
#include "orad/parallel.hpp"

namespace orad {

using numerics::gamma_ln;
using numerics::kPi;
using numerics::tanh_sinh;
using numerics::TailDecay;

namespace {

// sigma_m = |S^m|, the area of the unit sphere in R^{m+1}; sigma_{-1} = 0.
double sigma(int m) { return numerics::sphere_area(m + 1); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

Asymptotics shifted(Asymptotics a, double by) {
  a.head_exponent += by;
  a.tail_exponent += by;
  return a;
}

// Integrals over tabulated data converge only algebraically in the level.
NumericSpec for_tabulated(const NumericSpec& spec) {
  NumericSpec s = spec;
  s.quad.rel_tol = std::max(s.quad.rel_tol, 1e-9);
  s.quad.max_refinements = std::max(s.quad.max_refinements, 10);
  s.quad.accept_relative = std::max(s.quad.accept_relative, 1e-5);
  return s;
}

LogGrid widened(const LogGrid& g, double decades) {
  const double per_decade = (g.count - 1) / std::log10(g.hi / g.lo);
  LogGrid w;
  w.lo = g.lo * std::pow(10.0, -decades);
  w.hi = g.hi * std::pow(10.0, decades);
  w.count = static_cast<int>(std::ceil(per_decade * std::log10(w.hi / w.lo))) + 1;
  return w;
}

// The shape shared by the forward and dual transforms:
//   ctilde s^{2+kk-n} (I+^{plus/2} r^{ell-2} I-^{minus/2} f)(s)
// ctilde s^{2+kk-n} I+^{plus/2} r^{ell-2} I-^{minus/2}: both transforms and the
// EK-factorized Riesz potential have this shape.
struct Shape {
  double n, kk, minus, plus, ell;
  double ctilde;
};

Shape forward_shape(const GrassmannConfig& c) {
  return {double(c.n), double(c.k()), double(c.l), double(c.q), double(c.ell()), tilde_c1(c)};
}
Shape dual_shape(const GrassmannConfig& c) {
  return {double(c.n), double(c.j()), double(c.q), double(c.l), double(c.ell()), tilde_c2(c)};
}
Shape riesz_shape(int d, double alpha) { return {double(d), 0.0, alpha, alpha, d - alpha, std::exp2(-alpha)}; }

RadialProfile inner_profile(const RadialProfile& f, const Shape& sh, const NumericSpec& spec) {
  const RadialProfile h = sh.minus > 0 ? ek_minus_profile(f, FracOrder(0.5 * sh.minus), spec) : f;
  return h.times_power(sh.ell - 2.0);
}

Asymptotics shape_asymptotics(const Asymptotics& in, const Shape& sh) {
  Asymptotics a = sh.minus > 0 ? ek_minus_asymptotics(in, 0.5 * sh.minus) : in;
  a = shifted(a, sh.ell - 2.0);
  if (sh.plus > 0) a = ek_plus_asymptotics(a, 0.5 * sh.plus);
  return shifted(a, 2.0 + sh.kk - sh.n);
}

double shape_at_zero(const RadialProfile& f, const Shape& sh, const NumericSpec& spec) {
  // s^{2+kk-n} I+^{plus/2} r^{ell-2} h ~ Gamma(ell/2)/Gamma((n-kk)/2) h(0), so the
  // limit is pi^{minus/2} h(0) with h = I-^{minus/2} f.
  if (sh.minus == 0) return f(0.0);
  if (!head_integrable(f.asymptotics(), sh.minus - 1.0)) return HUGE_VAL;
  return std::pow(kPi, 0.5 * sh.minus) * ek_minus(f, FracOrder(0.5 * sh.minus), 0.0, spec);
}

double shape_value(const RadialProfile& inner, const Shape& sh, double s, const NumericSpec& spec) {
  const double pre = sh.ctilde * std::pow(s, 2.0 + sh.kk - sh.n);
  if (sh.plus == 0) return pre * inner(s);
  return pre * ek_plus(inner, FracOrder(0.5 * sh.plus), s, spec);
}

void require_existence(const ExistenceVerdict& v, const char* who, const GrassmannConfig& cfg) {
  if (v.ok()) return;
  std::string why;
  if (!v.head_ok) why += " the head condition fails";
  if (!v.tail_ok) why += std::string(why.empty() ? "" : " and") + " the tail condition fails";
  throw DivergenceError(std::string(who) + ": transform does not exist for " + cfg.describe() + ";" + why);
}

}  // namespace

// ---------------------------------------------------------------------------

GrassmannConfig GrassmannConfig::make(int n, int p, int q, int l, Mode mode) {
  if (n < 2) throw DomainError("GrassmannConfig: n must be >= 2");
  if (p < 0 || q < 0 || l < 0) throw DomainError("GrassmannConfig: p, q, l must be non-negative");
  if (!(p + q + l < n)) throw DomainError("GrassmannConfig: requires p + q + l < n");
  if (l == 0) throw DomainError("GrassmannConfig: l must be positive");
  if (mode == Mode::strict && (p == 0 || q == 0)) {
    throw DomainError("GrassmannConfig: strict mode requires p, q, l > 0 (use special-case mode for "
                      "p = 0 or q = 0)");
  }
  GrassmannConfig c;
  c.n = n;
  c.p = p;
  c.q = q;
  c.l = l;
  c.mode = mode;
  return c;
}

std::string GrassmannConfig::case_label() const {
  if (p == 0 && q == 0) return "gonzalez+inclusion";
  if (p == 0) return "gonzalez";
  if (q == 0) return "inclusion";
  return "strict";
}

std::string GrassmannConfig::describe() const {
  std::ostringstream os;
  os << "(n=" << n << ", p=" << p << ", q=" << q << ", l=" << l << "; j=" << j() << ", k=" << k()
     << ", ell=" << ell() << ")";
  if (case_label() != "strict") os << " [" << case_label() << "]";
  return os.str();
}

ExistenceVerdict check_existence(const RadialProfile& f, const GrassmannConfig& cfg) {
  ExistenceVerdict v;
  v.method = f.closed_form() ? ExistenceVerdict::Method::analytic_exponent
                             : ExistenceVerdict::Method::numeric_growth;
  if (f.kind() == ProfileKind::zero) {
    v.head_ok = v.tail_ok = true;
    return v;
  }
  v.head_ok = head_integrable(f.asymptotics(), cfg.n - cfg.j() - 1.0);
  v.tail_ok = tail_integrable(f.asymptotics(), cfg.l - 1.0);
  return v;
}

ExistenceVerdict check_existence_dual(const RadialProfile& g, const GrassmannConfig& cfg) {
  ExistenceVerdict v;
  v.method = g.closed_form() ? ExistenceVerdict::Method::analytic_exponent
                             : ExistenceVerdict::Method::numeric_growth;
  if (g.kind() == ProfileKind::zero) {
    v.head_ok = v.tail_ok = true;
    return v;
  }
  v.head_ok = head_integrable(g.asymptotics(), cfg.n - cfg.k() - 1.0);
  v.tail_ok = tail_integrable(g.asymptotics(), cfg.q - 1.0);
  return v;
}

// ---------------------------------------------------------------------------

double inclusion_radial(const RadialProfile& f, int jj, int kk, int nn, double s, const NumericSpec& spec) {
  if (!(0 <= jj && jj < kk && kk < nn)) throw DomainError("inclusion_radial: requires 0 <= j < k < n");
  if (!(s >= 0.0)) throw DomainError("inclusion_radial: s must be non-negative");
  const double a = 0.5 * (kk - jj);
  // sigma_{k-j-1} int (r^2-s^2)^{a-1} f r dr = sigma_{k-j-1} Gamma(a)/2 (I-^a f)(s)
  const double c = sigma(kk - jj - 1) * std::exp(gamma_ln(a)) / 2.0;
  return c * ek_minus(f, FracOrder(a), s, spec);
}

RadialProfile inclusion_profile(const RadialProfile& f, int jj, int kk, int nn, const NumericSpec& spec) {
  if (!(0 <= jj && jj < kk && kk < nn)) throw DomainError("inclusion_profile: requires 0 <= j < k < n");
  const double a = 0.5 * (kk - jj);
  const double c = sigma(kk - jj - 1) * std::exp(gamma_ln(a)) / 2.0;
  return ek_minus_profile(f, FracOrder(a), spec).scaled(c);
}

double dual_kplane_radial(const RadialProfile& phi, int nn, int kk, double r, const NumericSpec& spec) {
  if (!(1 <= kk && kk < nn)) throw DomainError("dual_kplane_radial: requires 1 <= k < n");
  if (!(r > 0.0)) throw DomainError("dual_kplane_radial: r must be positive");
  if (!head_integrable(phi.asymptotics(), nn - kk - 1.0)) {
    throw DivergenceError("dual_kplane_radial: phi is not integrable at 0 against s^{n-k-1}");
  }
  if (phi.kind() == ProfileKind::zero) return 0.0;
  const double e = 0.5 * kk - 1.0;
  const int w = nn - kk - 1;
  const double I = tanh_sinh(
                       [&](double s, double, double dr) {
                         const double v = phi(s);
                         if (v == 0.0) return 0.0;
                         double k = 1.0;
                         if (e != 0.0) k = std::pow(dr, e) * std::pow(r + s, e);
                         return v * k * std::pow(s, w);
                       },
                       0.0, r, spec.quad)
                       .value;
  const double c = sigma(kk - 1) * sigma(nn - kk - 1) / sigma(nn - 1);
  return c * I / std::pow(r, nn - 2);
}

RadialProfile dual_kplane_profile(const RadialProfile& phi, int nn, int kk, const NumericSpec& spec) {
  if (!(1 <= kk && kk < nn)) throw DomainError("dual_kplane_profile: requires 1 <= k < n");
  // phi ~ t^h at 0 gives t^h at 0; at infinity the average tends to a
  // multiple of r^{2-n} (integrable phi) or follows phi.
  Asymptotics a;
  const Asymptotics& in = phi.asymptotics();
  a.head_exponent = std::min(0.0, in.head_exponent);
  if (in.tail == TailKind::power && in.tail_exponent + nn - kk > 0.0) {
    a.tail_exponent = in.tail_exponent;
  } else {
    a.tail_exponent = 2.0 - nn + (kk - 2.0);
  }
  return RadialProfile::from_function(
      [phi, nn, kk, spec](double r) {
        if (r == 0.0) return phi(0.0);
        return dual_kplane_radial(phi, nn, kk, r, spec);
      },
      a, "R*_" + std::to_string(kk) + "[" + phi.describe() + "]");
}

// ---------------------------------------------------------------------------

double tilde_c1(const GrassmannConfig& c) {
  return std::exp(0.5 * c.l * std::log(kPi) + gamma_ln(0.5 * (c.n - c.k())) - gamma_ln(0.5 * c.ell()));
}

double tilde_c2(const GrassmannConfig& c) {
  return std::exp(0.5 * c.q * std::log(kPi) + gamma_ln(0.5 * (c.n - c.j())) - gamma_ln(0.5 * c.ell()));
}

double sigma_c1(const GrassmannConfig& c) {
  if (c.q == 0 || c.l == 0) throw DomainError("sigma_c1: requires q, l > 0");
  return sigma(c.l - 1) * sigma(c.q - 1) * sigma(c.ell() - 1) / sigma(c.n - c.k() - 1);
}

Asymptotics strichartz_forward_asymptotics(const Asymptotics& in, const GrassmannConfig& cfg) {
  return shape_asymptotics(in, forward_shape(cfg));
}

Asymptotics strichartz_dual_asymptotics(const Asymptotics& in, const GrassmannConfig& cfg) {
  return shape_asymptotics(in, dual_shape(cfg));
}

double strichartz_forward_radial(const RadialProfile& f, const GrassmannConfig& cfg, double s,
                                 const NumericSpec& spec) {
  if (!(s >= 0.0)) throw DomainError("strichartz_forward_radial: s must be non-negative");
  require_existence(check_existence(f, cfg), "strichartz_forward_radial", cfg);
  if (f.kind() == ProfileKind::zero) return 0.0;
  const Shape sh = forward_shape(cfg);
  if (s == 0.0) return shape_at_zero(f, sh, spec);
  return shape_value(inner_profile(f, sh, spec), sh, s, spec);
}

double strichartz_dual_radial(const RadialProfile& g, const GrassmannConfig& cfg, double t,
                              const NumericSpec& spec) {
  if (!(t >= 0.0)) throw DomainError("strichartz_dual_radial: t must be non-negative");
  require_existence(check_existence_dual(g, cfg), "strichartz_dual_radial", cfg);
  if (g.kind() == ProfileKind::zero) return 0.0;
  const Shape sh = dual_shape(cfg);
  if (t == 0.0) return shape_at_zero(g, sh, spec);
  return shape_value(inner_profile(g, sh, spec), sh, t, spec);
}

namespace {

RadialProfile shape_profile(const RadialProfile& f, const Shape& sh, const LogGrid& grid,
                            const NumericSpec& spec) {
  const Asymptotics out_asym = shape_asymptotics(f.asymptotics(), sh);
  auto radii = grid.points();
  if (f.kind() == ProfileKind::zero) {
    return RadialProfile::grid(radii, std::vector<double>(radii.size(), 0.0), Asymptotics::vanishing(),
                               Interpolation::lagrange);
  }
  const RadialProfile lazy_inner = inner_profile(f, sh, spec);
  Asymptotics inner_asym = lazy_inner.asymptotics();
  const RadialProfile inner = materialize(lazy_inner, widened(grid, 2.0), inner_asym);
  const NumericSpec tab = for_tabulated(spec);
  std::vector<double> v = sample_values([&](double s) { return shape_value(inner, sh, s, tab); }, radii);
  return RadialProfile::grid(std::move(radii), std::move(v), out_asym, Interpolation::lagrange);
}

}  // namespace

RadialProfile strichartz_forward_profile(const RadialProfile& f, const GrassmannConfig& cfg,
                                         const LogGrid& grid, const NumericSpec& spec) {
  require_existence(check_existence(f, cfg), "strichartz_forward_profile", cfg);
  return shape_profile(f, forward_shape(cfg), grid, spec);
}

RadialProfile strichartz_dual_profile(const RadialProfile& g, const GrassmannConfig& cfg,
                                      const LogGrid& grid, const NumericSpec& spec) {
  require_existence(check_existence_dual(g, cfg), "strichartz_dual_profile", cfg);
  return shape_profile(g, dual_shape(cfg), grid, spec);
}

// ---------------------------------------------------------------------------

double strichartz_forward_sigma_form(const RadialProfile& f, const GrassmannConfig& cfg, double s,
                                     const NumericSpec& spec) {
  if (cfg.q == 0 || cfg.l == 0) throw DomainError("sigma form: requires q, l > 0");
  if (!(s > 0.0)) throw DomainError("sigma form: s must be positive");
  require_existence(check_existence(f, cfg), "strichartz_forward_sigma_form", cfg);
  const int l = cfg.l, q = cfg.q, ell = cfg.ell();
  const Asymptotics& as = f.asymptotics();

  // F(r) = int_r^inf f0(t)(t^2-r^2)^{l/2-1} t dt = int_0^inf f0(sqrt(r^2+w^2)) w^{l-1} dw
  auto F = [&](double r) {
    auto body = [&](double w) {
      const double v = f(std::hypot(r, w));
      return v == 0.0 ? 0.0 : v * std::pow(w, l - 1);
    };
    const double c = std::max(r, as.tail == TailKind::power ? 1.0 : as.scale);
    double acc = 0.0;
    if (r > 0.0 && r < c) {
      acc += tanh_sinh([&](double w, double, double) { return body(w); }, 0.0, r, spec.quad).value;
      acc += tanh_sinh([&](double w, double, double) { return body(w); }, r, c, spec.quad).value;
    } else {
      acc += tanh_sinh([&](double w, double, double) { return body(w); }, 0.0, c, spec.quad).value;
    }
    TailDecay decay = as.tail == TailKind::power
                          ? TailDecay::power(std::max(1.0 - as.tail_exponent - l, 1.0 + 1e-9))
                          : TailDecay::exponential(as.scale * as.scale / (as.scale + 2.0 * c));
    acc += numerics::integrate_tail(body, c, decay, spec.quad);
    return acc;
  };
  // With r = s sin(theta) the outer integral is
  // s^{q+ell-2} int_0^{pi/2} cos^{q-1} sin^{ell-1} F(s sin) dtheta, and the powers of s cancel.
  const double I = tanh_sinh(
                       [&](double th, double, double to_end) {
                         const double c = std::sin(to_end);  // cos(theta), exact near pi/2
                         return std::pow(c, q - 1) * std::pow(std::sin(th), ell - 1) * F(s * std::sin(th));
                       },
                       0.0, 0.5 * kPi, spec.quad)
                       .value;
  return sigma_c1(cfg) * I;
}

double strichartz_forward_composed(const RadialProfile& f, const GrassmannConfig& cfg, double s,
                                   const NumericSpec& spec) {
  if (cfg.q == 0) throw DomainError("composed form: requires q > 0");
  if (!(s > 0.0)) throw DomainError("composed form: s must be positive");
  require_existence(check_existence(f, cfg), "strichartz_forward_composed", cfg);
  // F0: the l-plane transform of f0 (inside Q-perp, radial); then the dual
  // q-plane transform inside the (n-k)-dimensional fibre.
  const RadialProfile F0 = inclusion_profile(f, 0, cfg.l, cfg.n - cfg.q, spec);
  return dual_kplane_radial(F0, cfg.n - cfg.k(), cfg.q, s, spec);
}

// ---------------------------------------------------------------------------

namespace {

// Stencil reach of apply_D below and above t: the half-width starts at 0.3 t^2.
constexpr double kStencilBelow = 0.83666;  // sqrt(0.7)
constexpr double kStencilAbove = 1.14018;  // sqrt(1.3)

InversionResult invert_shape(const RadialProfile& phi, const Shape& sh, std::span<const double> radii,
                             const InversionOptions& opt) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw DomainError("inversion: radii must be positive");
  }
  InversionResult res;
  res.radii.assign(radii.begin(), radii.end());
  res.values.assign(radii.size(), 0.0);
  res.error_bounds.assign(radii.size(), 0.0);
  res.settled.assign(radii.size(), true);
  res.trusted_lo = opt.work_grid.lo / kStencilBelow;
  res.trusted_hi = opt.work_grid.hi / kStencilAbove;
  if (phi.kind() == ProfileKind::zero) {
    if (!res.radii.empty()) {
      res.profile = res.radii.size() >= 2
                        ? RadialProfile::grid(res.radii, res.values, Asymptotics::vanishing())
                        : RadialProfile::zero();
    }
    return res;
  }

  NumericSpec spec = for_tabulated(opt.spec);
  spec.deriv.rel_tol = opt.deriv_rel_tol;

  // Stage 0: tabulate phi unless it already is data.
  const RadialProfile data =
      phi.kind() == ProfileKind::grid ? phi : materialize(phi, opt.work_grid, phi.asymptotics());
  const RadialProfile psi1 = data.times_power(sh.n - sh.kk - 2.0);

  // Stage 1: D+^{plus/2} on the work grid, with Ridders error estimates.
  const std::vector<double> w = opt.work_grid.points();
  std::vector<double> v2(w.size()), e2(w.size());
  parallel_for(w.size(), [&](std::size_t i) {
    if (sh.plus == 0) {
      v2[i] = psi1(w[i]);
      e2[i] = 0.0;
      return;
    }
    const auto d = ek_derivative_plus_estimate(psi1, FracOrder(0.5 * sh.plus), w[i], spec);
    v2[i] = d.value * std::pow(w[i], 2.0 - sh.ell);
    e2[i] = d.error * std::pow(w[i], 2.0 - sh.ell);
  });

  // Stage 2: psi3 = r^{2-ell} psi2. Beyond the first point where the value is
  // lost in the differentiation noise the profile is treated as vanishing.
  double peak = 0.0;
  for (double x : v2) peak = std::max(peak, std::abs(x));
  std::size_t keep = w.size();
  for (std::size_t i = w.size() / 2; i < w.size(); ++i) {
    if (std::abs(v2[i]) <= 10.0 * e2[i] || std::abs(v2[i]) <= 1e-14 * peak) {
      keep = i;
      break;
    }
  }
  keep = std::max<std::size_t>(keep, 2);
  std::vector<double> r3(w.begin(), w.begin() + static_cast<long>(keep));
  std::vector<double> v3(v2.begin(), v2.begin() + static_cast<long>(keep));
  Asymptotics a3 = fitted_asymptotics(r3, v3);
  if (keep < w.size()) a3.tail = TailKind::vanishing;
  if (a3.tail == TailKind::power && !tail_integrable(a3, sh.minus - 1.0)) {
    // Fitted slopes near the threshold are not trusted; the input class has it.
    a3.tail_exponent = std::min(a3.tail_exponent, -sh.minus - 1e-6);
  }
  const RadialProfile psi3 = RadialProfile::grid(std::move(r3), std::move(v3), a3, Interpolation::lagrange);

  // Stage 3: D-^{minus/2} at the requested radii.
  std::vector<std::string> failures(radii.size());
  parallel_for(radii.size(), [&](std::size_t i) {
    const double t = radii[i];
    if (sh.minus == 0) {
      res.values[i] = psi3(t) / sh.ctilde;
      return;
    }
    const auto d = ek_derivative_minus_estimate(psi3, FracOrder(0.5 * sh.minus), t, spec);
    res.values[i] = d.value / sh.ctilde;
    res.error_bounds[i] = d.error / sh.ctilde;
    if (!d.accepted) failures[i] = fmt(t);
  });
  res.settled.assign(radii.size(), true);
  for (std::size_t i = 0; i < radii.size(); ++i) res.settled[i] = failures[i].empty();
  for (std::size_t i = 0; i < radii.size() && opt.throw_unsettled; ++i) {
    if (!failures[i].empty()) {
      throw AccuracyError("inversion: differentiation did not settle at t = " + failures[i],
                          res.values[i], res.error_bounds[i]);
    }
  }
  if (res.radii.size() >= 2) {
    res.profile = RadialProfile::grid(res.radii, res.values, fitted_asymptotics(res.radii, res.values));
  }
  return res;
}

}  // namespace

InversionResult strichartz_invert_radial(const RadialProfile& phi, const GrassmannConfig& cfg,
                                         std::span<const double> radii, const InversionOptions& opt) {
  return invert_shape(phi, forward_shape(cfg), radii, opt);
}

InversionResult strichartz_dual_invert_radial(const RadialProfile& psi, const GrassmannConfig& cfg,
                                              std::span<const double> radii, const InversionOptions& opt) {
  return invert_shape(psi, dual_shape(cfg), radii, opt);
}

// ---------------------------------------------------------------------------

RadialProfile semyanistyi_profile(const RadialProfile& f, int nn, int kk, double alpha, const LogGrid& grid,
                                  const NumericSpec& spec) {
  if (!(1 <= kk && kk < nn)) throw DomainError("semyanistyi: requires 1 <= k < n");
  if (!(alpha > 0.0 && alpha < nn - kk)) throw DomainError("semyanistyi: requires 0 < alpha < n - k");
  const RadialProfile rk = inclusion_profile(f, 0, kk, nn, spec);
  const RadialProfile tab = materialize(rk, grid, rk.asymptotics());
  return riesz_profile(tab, alpha, nn - kk, RieszBackend::ek_factorized, for_tabulated(spec));
}

double semyanistyi_radial(const RadialProfile& f, int nn, int kk, double alpha, double s,
                          const NumericSpec& spec) {
  if (!(s > 0.0)) throw DomainError("semyanistyi: s must be positive");
  return semyanistyi_profile(f, nn, kk, alpha, LogGrid{1e-3, 1e3, 600}, spec)(s);
}

// ---------------------------------------------------------------------------

double lp_existence_bound(const GrassmannConfig& cfg, TransformSide side) {
  if (side == TransformSide::forward) {
    if (cfg.l == 0) throw DomainError("lp_existence_bound: l = 0 makes the bound degenerate");
    return static_cast<double>(cfg.n - cfg.j()) / cfg.l;
  }
  if (cfg.q == 0) throw DomainError("lp_existence_bound: q = 0 makes the bound degenerate");
  return static_cast<double>(cfg.n - cfg.k()) / cfg.q;
}

std::vector<double> sharpness_probe(const GrassmannConfig& cfg, double s, std::span<const double> cutoffs,
                                    const NumericSpec& spec) {
  if (!(s > 0.0)) throw DomainError("sharpness_probe: s must be positive");
  const double e = static_cast<double>(cfg.n - cfg.j()) / s;
  const int l = cfg.l;
  // t = exp(x): f0(t) t^{l-1} dt = exp(-e log(2+t) + l x) / log(2+t) dx
  auto body = [e, l](double x) {
    const double L = x > 30.0 ? x + std::log1p(2.0 * std::exp(-x)) : std::log(2.0 + std::exp(x));
    return std::exp(-e * L + l * x) / L;
  };
  std::vector<double> out;
  out.reserve(cutoffs.size());
  double acc = 0.0, x0 = 0.0;
  double prev = 1.0;
  for (double R : cutoffs) {
    if (!(R > prev) || !std::isfinite(R)) {
      throw DomainError("sharpness_probe: cutoffs must be finite, > 1 and increasing");
    }
    const double x1 = std::log(R);
    // Unit-length pieces keep the integrand's dynamic range small.
    for (double a = x0; a < x1;) {
      const double b = std::min(x1, a + 1.0);
      acc += tanh_sinh([&](double x, double, double) { return body(x); }, a, b, spec.quad).value;
      a = b;
    }
    out.push_back(acc);
    x0 = x1;
    prev = R;
  }
  return out;
}

InversionResult riesz_derivative_radial(const RadialProfile& g, double alpha, int d,
                                        std::span<const double> radii, const InversionOptions& opt) {
  if (d < 1) throw DomainError("riesz_derivative_radial: dimension must be positive");
  if (!(alpha > 0.0 && alpha < d)) throw DomainError("riesz_derivative_radial: requires 0 < alpha < d");
  return invert_shape(g, riesz_shape(d, alpha), radii, opt);
}

}  // namespace orad
