#include "orad/frac_calc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>

#include "orad/errors.hpp"
#include "orad/parallel.hpp"

namespace orad {

using numerics::gamma_ln;
using numerics::kPi;
using numerics::sphere_area;
using numerics::tanh_sinh;
using numerics::TailDecay;

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("FracOrder: order must be positive and finite, got " + std::to_string(alpha));
  }
  const double fl = std::floor(alpha);
  m_ = static_cast<int>(fl);
  alpha0_ = alpha - fl;
  // Orders such as 1.5000000000000002 coming from sums are snapped.
  if (std::abs(alpha0_) < 1e-13) alpha0_ = 0.0;
  if (std::abs(alpha0_ - 1.0) < 1e-13) {
    alpha0_ = 0.0;
    ++m_;
  }
  if (std::abs(alpha0_ - 0.5) < 1e-13) alpha0_ = 0.5;
}

namespace {

// Below this order the kernel singularity (t - r)^{a-1} is subtracted out.
constexpr double kSubtractBelow = 0.25;

double kpow(double x, double e) {
  if (e == 0.0) return 1.0;
  if (e == -0.5) return 1.0 / std::sqrt(x);
  if (e == 0.5) return std::sqrt(x);
  return std::pow(x, e);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

bool is_vanishing_grid(const RadialProfile& f) {
  return f.kind() == ProfileKind::grid && f.asymptotics().tail == TailKind::vanishing;
}

// Lazily evaluated operator output. Outside [lo, hi] the declared
// asymptotics extrapolate from the value at the nearer end; the nested
// quadratures would otherwise over- or underflow there. The window is 1e+-60,
// narrowed so that input and output powers stay below about 1e200.
double trust_decades(double a, double b) {
  const double m = std::max({1.0, std::abs(a), std::abs(b)});
  return std::min(60.0, 200.0 / m);
}

RadialProfile lazy_profile(std::function<double(double)> eval, const Asymptotics& in,
                           const Asymptotics& asym, std::string label) {
  struct Anchors {
    std::once_flag lo_once, hi_once;
    double lo = 0.0, hi = 0.0;
  };
  auto anchors = std::make_shared<Anchors>();
  const double kTrustLo = std::pow(10.0, -trust_decades(in.head_exponent, asym.head_exponent));
  const double kTrustHi = std::pow(
      10.0, trust_decades(in.tail == TailKind::power ? in.tail_exponent : 0.0,
                          asym.tail == TailKind::power ? asym.tail_exponent : 0.0));
  return RadialProfile::from_function(
      [eval = std::move(eval), asym, anchors, kTrustLo, kTrustHi](double t) {
        if (t < kTrustLo) {
          if (t == 0.0) {
            if (asym.head_exponent > 0.0) return 0.0;
            if (asym.head_exponent < 0.0) return HUGE_VAL;
          }
          std::call_once(anchors->lo_once, [&] { anchors->lo = eval(kTrustLo); });
          return t == 0.0 ? anchors->lo : anchors->lo * std::pow(t / kTrustLo, asym.head_exponent);
        }
        if (t > kTrustHi) {
          if (asym.tail != TailKind::power) return 0.0;
          std::call_once(anchors->hi_once, [&] { anchors->hi = eval(kTrustHi); });
          return anchors->hi * std::pow(t / kTrustHi, asym.tail_exponent);
        }
        return eval(t);
      },
      asym, std::move(label));
}

}  // namespace

double ek_plus(const RadialProfile& f, FracOrder order, double t, const NumericSpec& spec) {
  if (!(t >= 0.0)) throw DomainError("ek_plus: t must be non-negative");
  if (f.kind() == ProfileKind::zero) return 0.0;
  if (!head_integrable(f.asymptotics(), 1.0)) {
    throw DivergenceError("ek_plus: f ~ t^" + fmt(f.asymptotics().head_exponent) +
                          " at 0 makes int_0 f(r) r dr diverge");
  }
  if (t == 0.0) return 0.0;
  const double a = order.alpha();
  const double e = a - 1.0;
  const double coef = 2.0 * std::exp(-gamma_ln(a));

  // Tabulated data joins its extrapolation at the end radii with a kink; the
  // rule only converges fast when those are piece boundaries.
  std::vector<double> cuts{0.0};
  if (f.kind() == ProfileKind::grid) {
    for (double c : {f.radii().front(), f.radii().back()}) {
      if (c > cuts.back() && c < 0.999 * t) cuts.push_back(c);
    }
  }
  cuts.push_back(t);

  const bool subtract = a < kSubtractBelow;
  const double ft = subtract ? f(t) : 0.0;
  double I = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const bool last = i + 2 == cuts.size();
    I += tanh_sinh(
             [&](double r, double, double db) {
               const double dt = last ? db : t - r;
               const double fr = subtract ? f(r) - ft : f(r);
               if (a == 1.0) return r * fr;
               return kpow(dt, e) * kpow(t + r, e) * r * fr;
             },
             cuts[i], cuts[i + 1], spec.quad)
             .value;
  }
  if (subtract) I += ft * std::pow(t, 2.0 * a) / (2.0 * a);
  return coef * I;
}

double ek_minus(const RadialProfile& f, FracOrder order, double t, const NumericSpec& spec) {
  if (!(t >= 0.0)) throw DomainError("ek_minus: t must be non-negative");
  if (f.kind() == ProfileKind::zero) return 0.0;
  const double a = order.alpha();
  const Asymptotics& as = f.asymptotics();
  if (!tail_integrable(as, 2.0 * a - 1.0)) {
    throw DivergenceError("ek_minus: tail t^" + fmt(as.tail_exponent) + " is too heavy for order " +
                          fmt(a) + " (needs tail exponent < " + fmt(-2.0 * a) + ")");
  }
  if (t == 0.0 && !head_integrable(as, 2.0 * a - 1.0)) {
    throw DivergenceError("ek_minus: value at 0 diverges for head exponent " +
                          fmt(as.head_exponent));
  }
  const double e = a - 1.0;
  const double coef = 2.0 * std::exp(-gamma_ln(a));

  double upper = std::numeric_limits<double>::infinity();
  if (is_vanishing_grid(f)) {
    upper = f.radii().back();
    if (t >= upper) return 0.0;
  }

  double b;
  double mid = 0.0;  // power tails: [t, 2t] keeps the head scale, [2t, t + scale] the bulk
  if (std::isfinite(upper)) {
    b = upper;
  } else if (as.tail == TailKind::power) {
    b = t > 0.0 ? 2.0 * t : 1.0;
    const bool pure = f.kind() == ProfileKind::power_law;
    if (t > 0.0 && t < as.scale && !pure) mid = t + as.scale;
  } else {
    b = t + as.scale * as.scale / (as.scale + 2.0 * t);
  }

  double I;
  const bool subtract = a < kSubtractBelow && t > 0.0;
  if (subtract) {
    const double ft = f(t);
    I = tanh_sinh(
            [&](double r, double dt, double) { return kpow(dt, e) * kpow(r + t, e) * r * (f(r) - ft); },
            t, b, spec.quad)
            .value;
    I += ft * std::pow((b - t) * (b + t), a) / (2.0 * a);
  } else if (a == 1.0) {
    I = tanh_sinh([&](double r, double, double) { return r * f(r); }, t, b, spec.quad).value;
  } else {
    I = tanh_sinh([&](double r, double dt, double) { return kpow(dt, e) * kpow(r + t, e) * r * f(r); }, t,
                  b, spec.quad)
            .value;
  }
  if (std::isfinite(upper)) return coef * I;
  std::vector<double> cuts;
  if (mid > b) {
    // geometric pieces, so a head singularity far below the bulk stays resolved
    for (double c = b * 1e3; c < mid; c *= 1e3) cuts.push_back(c);
    cuts.push_back(mid);
  }
  if (f.kind() == ProfileKind::grid && f.radii().back() > std::max(b, mid)) cuts.push_back(f.radii().back());
  for (double c : cuts) {
    I += tanh_sinh([&](double r, double, double) { return kpow(r - t, e) * kpow(r + t, e) * r * f(r); }, b, c,
                   spec.quad)
             .value;
    b = c;
  }

  TailDecay decay;
  if (as.tail == TailKind::power) {
    // integrand ~ r^{tail + 2a - 1}
    decay = TailDecay::power(std::max(1.0 - as.tail_exponent - 2.0 * a, 1.0 + 1e-9));
  } else if (as.tail == TailKind::gaussian) {
    decay = TailDecay::exponential(as.scale * as.scale / (as.scale + 2.0 * b));
  } else {
    decay = TailDecay::exponential(as.scale);
  }
  const double bt = b - t;
  I += numerics::integrate_tail(
      [&](double r, double off) {
        const double fr = f(r);
        if (fr == 0.0) return 0.0;
        return kpow(off + bt, e) * kpow(r + t, e) * r * fr;
      },
      b, decay, spec.quad);
  return coef * I;
}

Asymptotics ek_plus_asymptotics(const Asymptotics& in, double a) {
  Asymptotics out;
  out.head_exponent = in.head_exponent + 2.0 * a;
  out.tail = TailKind::power;
  out.tail_log_power = 0.0;
  out.scale = 1.0;
  if (in.tail != TailKind::power || in.tail_exponent < -2.0) {
    // int_0^inf f r dr converges: I+ f ~ const * t^{2a-2}
    out.tail_exponent = 2.0 * a - 2.0;
  } else if (in.tail_exponent == -2.0) {
    out.tail_exponent = 2.0 * a - 2.0;
    out.tail_log_power = in.tail_log_power + 1.0;
  } else {
    out.tail_exponent = in.tail_exponent + 2.0 * a;
    out.tail_log_power = in.tail_log_power;
  }
  return out;
}

Asymptotics ek_minus_asymptotics(const Asymptotics& in, double a) {
  Asymptotics out = in;
  switch (in.tail) {
    case TailKind::gaussian:
      out.tail_exponent = in.tail_exponent + 2.0 * a - 2.0;
      break;
    case TailKind::power:
      out.tail_exponent = in.tail_exponent + 2.0 * a;
      break;
    case TailKind::vanishing:
      break;
  }
  out.head_exponent = std::min(0.0, in.head_exponent + 2.0 * a);
  return out;
}

RadialProfile ek_plus_profile(const RadialProfile& f, FracOrder order, const NumericSpec& spec) {
  return lazy_profile([f, order, spec](double t) { return ek_plus(f, order, t, spec); }, f.asymptotics(),
                      ek_plus_asymptotics(f.asymptotics(), order.alpha()),
                      "I+^" + fmt(order.alpha()) + "[" + f.describe() + "]");
}

RadialProfile ek_minus_profile(const RadialProfile& f, FracOrder order, const NumericSpec& spec) {
  return lazy_profile([f, order, spec](double t) { return ek_minus(f, order, t, spec); }, f.asymptotics(),
                      ek_minus_asymptotics(f.asymptotics(), order.alpha()),
                      "I-^" + fmt(order.alpha()) + "[" + f.describe() + "]");
}

numerics::DerivativeEstimate ek_derivative_plus_estimate(const RadialProfile& phi, FracOrder order,
                                                         double t, const NumericSpec& spec) {
  if (!(t > 0.0)) throw DomainError("ek_derivative_plus: t must be positive");
  if (order.is_integer()) {
    return numerics::apply_D_estimate([&phi](double x) { return phi(x); }, t, order.m(), +1,
                                      spec.deriv);
  }
  const RadialProfile g = ek_plus_profile(phi, FracOrder(1.0 - order.alpha0()), spec);
  return numerics::apply_D_estimate([&g](double x) { return g(x); }, t, order.m() + 1, +1,
                                    spec.deriv);
}

numerics::DerivativeEstimate ek_derivative_minus_estimate(const RadialProfile& phi, FracOrder order,
                                                          double t, const NumericSpec& spec) {
  if (!(t > 0.0)) throw DomainError("ek_derivative_minus: t must be positive");
  const int m = order.m();
  if (order.is_integer()) {
    return numerics::apply_D_estimate([&phi](double x) { return phi(x); }, t, m, -1, spec.deriv);
  }
  RadialProfile h;
  double outer;
  int times;
  if (order.is_half_odd()) {
    // alpha = k/2: t (-D)^{(k+1)/2} t^k I-^{1/2} t^{-k-1} phi
    const int k = 2 * m + 1;
    h = ek_minus_profile(phi.times_power(-(k + 1.0)), FracOrder(0.5), spec).times_power(k);
    outer = t;
    times = (k + 1) / 2;
  } else {
    const double a0 = order.alpha0();
    h = ek_minus_profile(phi.times_power(-2.0 * m - 2.0), FracOrder(1.0 - a0), spec)
            .times_power(2.0 * order.alpha());
    outer = std::pow(t, 2.0 * (1.0 - a0));
    times = m + 1;
  }
  auto d = numerics::apply_D_estimate([&h](double x) { return h(x); }, t, times, -1, spec.deriv);
  d.value *= outer;
  d.error *= outer;
  return d;
}

namespace {

double accept_or_throw(const numerics::DerivativeEstimate& d, const char* who, double t) {
  if (!d.accepted) {
    throw AccuracyError(std::string(who) + ": derivative extrapolation did not settle at t = " +
                            fmt(t),
                        d.value, d.error);
  }
  return d.value;
}

}  // namespace

double ek_derivative_plus(const RadialProfile& phi, FracOrder order, double t, const NumericSpec& spec) {
  return accept_or_throw(ek_derivative_plus_estimate(phi, order, t, spec), "ek_derivative_plus", t);
}

double ek_derivative_minus(const RadialProfile& phi, FracOrder order, double t,
                           const NumericSpec& spec) {
  return accept_or_throw(ek_derivative_minus_estimate(phi, order, t, spec), "ek_derivative_minus", t);
}

// ---------------------------------------------------------------------------
// Riesz potentials
// ---------------------------------------------------------------------------

double riesz_normalization(int d, double alpha) {
  if (d < 1) throw DomainError("riesz_normalization: dimension must be >= 1");
  if (!(alpha > 0.0 && alpha < d)) throw DomainError("riesz_normalization: requires 0 < alpha < d");
  return std::exp(alpha * std::log(2.0) + 0.5 * d * std::log(kPi) + gamma_ln(0.5 * alpha) -
                  gamma_ln(0.5 * (d - alpha)));
}

double riesz_ek_constant(double alpha) { return std::exp2(-alpha); }

Asymptotics riesz_asymptotics(const Asymptotics& in, double alpha, int d) {
  Asymptotics out;
  out.tail = TailKind::power;
  out.scale = 1.0;
  out.head_exponent = std::min(0.0, in.head_exponent + alpha);
  if (in.tail != TailKind::power || in.tail_exponent < -d) {
    out.tail_exponent = alpha - d;
    out.tail_log_power = 0.0;
  } else {
    out.tail_exponent = in.tail_exponent + alpha;
    out.tail_log_power = in.tail_log_power;
  }
  return out;
}

namespace {

void riesz_checks(const RadialProfile& f, double alpha, int d, double r) {
  if (d < 1) throw DomainError("riesz_radial: dimension must be >= 1");
  if (!(alpha > 0.0 && alpha < d)) {
    throw DomainError("riesz_radial: requires 0 < alpha < d, got alpha = " + fmt(alpha) +
                      ", d = " + std::to_string(d));
  }
  if (!(r > 0.0)) throw DomainError("riesz_radial: r must be positive");
  const Asymptotics& as = f.asymptotics();
  if (!tail_integrable(as, alpha - 1.0)) {
    throw DivergenceError("riesz_radial: tail t^" + fmt(as.tail_exponent) +
                          " needs exponent < " + fmt(-alpha) + " for order " + fmt(alpha));
  }
  if (!head_integrable(as, d - 1.0)) {
    throw DivergenceError("riesz_radial: f is not locally integrable at the origin");
  }
}

// Angular kernel int_0^pi ((r-s)^2 + 4rs sin^2(phi/2))^{-(d-alpha)/2} sin^{d-2}(phi) dphi,
// with delta = |r - s| supplied exactly.
double angular_kernel(double r, double s, double delta, int d, double alpha,
                      const numerics::QuadratureSpec& q) {
  const double nu = 0.5 * (d - alpha);
  const double rs = r * s;
  // Such nodes only occur far out on the outer rule, where they carry no mass.
  if (delta < 1e-100 * std::sqrt(rs)) return 0.0;
  auto integrand = [&](double phi, double pi_minus_phi) {
    const double sh = std::sin(0.5 * phi);
    const double base = delta * delta + 4.0 * rs * sh * sh;
    double v = std::pow(base, -nu);
    if (d > 2) v *= std::pow(std::sin(std::min(phi, pi_minus_phi)), d - 2);
    return v;
  };
  // The kernel varies on the scale delta / sqrt(rs) near phi = 0.
  std::vector<double> cuts{0.0};
  for (double x = delta / std::sqrt(rs); x < kPi / 8.0; x *= 8.0) {
    if (x > 0.0) cuts.push_back(x);
    if (x == 0.0) break;
  }
  cuts.push_back(kPi);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const bool last = i + 2 == cuts.size();
    total += tanh_sinh(
                 [&](double phi, double, double db) {
                   return integrand(phi, last ? db : kPi - phi);
                 },
                 lo, hi, q)
                 .value;
  }
  return total;
}

double riesz_angular(const RadialProfile& f, double alpha, int d, double r, const NumericSpec& spec) {
  const Asymptotics& as = f.asymptotics();
  const double gamma = riesz_normalization(d, alpha);
  std::function<double(double, double)> kernel;  // (s, |r-s|)
  double outer;
  if (d == 1) {
    kernel = [&](double s, double delta) {
      return std::pow(delta, alpha - 1.0) + std::pow(r + s, alpha - 1.0);
    };
    outer = 1.0 / gamma;
  } else {
    kernel = [&](double s, double delta) {
      return std::pow(s, d - 1) * angular_kernel(r, s, delta, d, alpha, spec.quad);
    };
    outer = sphere_area(d - 1) / gamma;
  }
  auto body = [&](double s, double delta) {
    const double fs = f(s);
    if (fs == 0.0) return 0.0;
    return fs * kernel(s, delta);
  };
  double I = tanh_sinh([&](double s, double, double dr) { return body(s, dr); }, 0.0, r, spec.quad)
                 .value;
  if (is_vanishing_grid(f)) {
    const double upper = f.radii().back();
    if (upper > r) {
      I += tanh_sinh([&](double s, double ds, double) { return body(s, ds); }, r, upper, spec.quad)
               .value;
    }
    return outer * I;
  }
  TailDecay decay;
  if (as.tail == TailKind::power) {
    decay = TailDecay::power(std::max(1.0 - as.tail_exponent - alpha, 1.0 + 1e-9));
  } else if (as.tail == TailKind::gaussian) {
    decay = TailDecay::exponential(as.scale * as.scale / (as.scale + 2.0 * r));
  } else {
    decay = TailDecay::exponential(as.scale);
  }
  I += numerics::integrate_tail([&](double s, double off) { return body(s, off); }, r, decay,
                                spec.quad);
  return outer * I;
}

double riesz_ek(const RadialProfile& f, double alpha, int d, double r, const NumericSpec& spec) {
  const FracOrder half(0.5 * alpha);
  const RadialProfile g = ek_minus_profile(f, half, spec).times_power(d - alpha - 2.0);
  return riesz_ek_constant(alpha) * std::pow(r, 2.0 - d) * ek_plus(g, half, r, spec);
}

}  // namespace

double riesz_radial(const RadialProfile& f, double alpha, int d, double r, RieszBackend backend,
                    const NumericSpec& spec) {
  riesz_checks(f, alpha, d, r);
  if (f.kind() == ProfileKind::zero) return 0.0;
  return backend == RieszBackend::angular_kernel ? riesz_angular(f, alpha, d, r, spec)
                                                 : riesz_ek(f, alpha, d, r, spec);
}

RadialProfile riesz_profile(const RadialProfile& f, double alpha, int d, RieszBackend backend,
                            const NumericSpec& spec) {
  const Asymptotics asym = riesz_asymptotics(f.asymptotics(), alpha, d);
  riesz_checks(f, alpha, d, 1.0);
  return lazy_profile([f, alpha, d, backend, spec](double r) {
                        return riesz_radial(f, alpha, d, r, backend, spec);
                      },
                      f.asymptotics(), asym, "I^" + fmt(alpha) + "_" + std::to_string(d) + "[" + f.describe() + "]");
}

double semigroup_check(const RadialProfile& f, FracOrder a1, FracOrder a2, EkSide side,
                       std::span<const double> grid, double abs_tol, const NumericSpec& spec) {
  const FracOrder sum(a1.alpha() + a2.alpha());
  std::vector<double> dev(grid.size(), 0.0);
  const bool plus = side == EkSide::plus;
  const RadialProfile inner = plus ? ek_plus_profile(f, a2, spec) : ek_minus_profile(f, a2, spec);
  parallel_for(grid.size(), [&](std::size_t i) {
    const double t = grid[i];
    const double lhs = plus ? ek_plus(inner, a1, t, spec) : ek_minus(inner, a1, t, spec);
    const double rhs = plus ? ek_plus(f, sum, t, spec) : ek_minus(f, sum, t, spec);
    dev[i] = std::abs(lhs - rhs) / (std::abs(rhs) + abs_tol);
  });
  return grid.empty() ? 0.0 : *std::max_element(dev.begin(), dev.end());
}

}  // namespace orad
