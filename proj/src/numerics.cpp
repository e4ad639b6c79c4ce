#include "orad/numerics.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "orad/errors.hpp"

namespace orad::numerics {

double gamma_ln(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("gamma_ln: argument must be positive and finite, got " + std::to_string(x));
  }
  int sign = 0;
  // lgamma_r leaves the global signgam alone.
  return ::lgamma_r(x, &sign);
}

double gamma_fn(double x) { return std::exp(gamma_ln(x)); }

double sphere_area(int m) {
  if (m < 0) throw DomainError("sphere_area: negative dimension " + std::to_string(m));
  if (m == 0) return 0.0;
  return 2.0 * std::pow(kPi, 0.5 * m) / gamma_fn(0.5 * m);
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be positive");
  if (!(abs_tol > 0.0)) throw DomainError("QuadratureSpec: abs_tol must be positive");
  if (max_refinements < 1) throw DomainError("QuadratureSpec: max_refinements must be >= 1");
  if (tail_policy == TailPolicy::hard_cutoff && !(r_max > 0.0)) {
    throw DomainError("QuadratureSpec: hard-cutoff requires r_max > 0");
  }
  if (!(accept_relative >= 0.0)) throw DomainError("QuadratureSpec: accept_relative must be non-negative");
}

namespace {

constexpr double kTauMax = 6.1;  // exp(pi sinh 6.1) ~ 1e304
constexpr int kMinLevel = 3;

struct Node {
  double x, dist_a, dist_b, weight;
};

Node make_node(double tau, double a, double b) {
  const double len = b - a;
  const double y = 0.5 * kPi * std::sinh(tau);
  const double e = std::exp(-2.0 * std::abs(y));
  const double near = len * e / (1.0 + e);
  const double far = len / (1.0 + e);
  Node n{};
  if (y >= 0.0) {
    n.dist_b = near;
    n.dist_a = far;
    n.x = b - near;
  } else {
    n.dist_a = near;
    n.dist_b = far;
    n.x = a + near;
  }
  // (len/2) (pi/2) cosh(tau) sech^2(y), sech^2(y) = 4e/(1+e)^2
  n.weight = 0.5 * len * 0.5 * kPi * std::cosh(tau) * 4.0 * e / ((1.0 + e) * (1.0 + e));
  return n;
}

}  // namespace

QuadResult tanh_sinh(const EndpointIntegrand& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  QuadResult res;
  if (!(b > a)) {
    if (b == a) return res;
    throw DomainError("tanh_sinh: requires b > a");
  }

  auto eval = [&](double tau) -> double {
    const Node n = make_node(tau, a, b);
    if (n.weight == 0.0 || n.dist_a <= 0.0 || n.dist_b <= 0.0) return 0.0;
    const double fx = f(n.x, n.dist_a, n.dist_b);
    ++res.evaluations;
    if (!std::isfinite(fx)) {
      // Endpoint overflow of an integrable singularity: these nodes carry no mass.
      if (std::abs(tau) > 3.0) return 0.0;
      char buf[160];
      std::snprintf(buf, sizeof buf, "tanh_sinh: integrand not finite at x = %.17g on [%.17g, %.17g]",
                    n.x, a, b);
      throw DomainError(buf);
    }
    return n.weight * fx;
  };

  // Level 0, h = 1: also decides how far each side must be sampled.
  const int kmax = static_cast<int>(kTauMax);
  std::vector<double> left, right;
  double sum = eval(0.0);
  double scale = std::abs(sum);
  for (int k = 1; k <= kmax; ++k) {
    right.push_back(eval(static_cast<double>(k)));
    left.push_back(eval(-static_cast<double>(k)));
    sum += right.back() + left.back();
    scale = std::max({scale, std::abs(right.back()), std::abs(left.back())});
  }
  auto limit_of = [&](const std::vector<double>& terms) {
    int last = 0;
    for (int k = 0; k < static_cast<int>(terms.size()); ++k) {
      if (std::abs(terms[k]) > 1e-18 * scale) last = k + 1;
    }
    return std::min(kTauMax, last + 1.0);
  };
  const double tau_right = scale > 0.0 ? limit_of(right) : kTauMax;
  const double tau_left = scale > 0.0 ? limit_of(left) : kTauMax;

  double h = 1.0;
  double estimate = sum * h;
  double err = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= spec.max_refinements; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (double tau = h; tau <= tau_right; tau += 2.0 * h) add += eval(tau);
    for (double tau = h; tau <= tau_left; tau += 2.0 * h) add += eval(-tau);
    sum += add;
    const double next = sum * h;
    err = std::abs(next - estimate);
    estimate = next;
    res.levels = level;
    if (level >= kMinLevel && err <= std::max(spec.rel_tol * std::abs(estimate), spec.abs_tol)) {
      res.value = estimate;
      res.error = err;
      return res;
    }
  }
  if (err <= spec.accept_relative * std::abs(estimate)) {
    res.value = estimate;
    res.error = err;
    return res;
  }
  throw AccuracyError("tanh_sinh: no convergence within max_refinements", estimate, err);
}

double integrate_singular(const EndpointIntegrand& f, double a, double b,
                          const EndpointSingularity& sing, const QuadratureSpec& spec) {
  if (!(sing.exponent_left > -1.0) || !(sing.exponent_right > -1.0)) {
    throw DivergenceError("integrate_singular: endpoint exponent <= -1 is not integrable");
  }
  if (!(b > a)) throw DomainError("integrate_singular: requires b > a");
  return tanh_sinh(f, a, b, spec).value;
}

double integrate_singular(const Integrand& f, double a, double b, const EndpointSingularity& sing,
                          const QuadratureSpec& spec) {
  return integrate_singular([&f](double x, double, double) { return f(x); }, a, b, sing, spec);
}

double integrate_tail(const std::function<double(double, double)>& f, double a,
                      const TailDecay& tail, const QuadratureSpec& spec) {
  spec.validate();
  if (!(a > 0.0)) throw DomainError("integrate_tail: lower limit must be positive");
  if (spec.tail_policy == QuadratureSpec::TailPolicy::hard_cutoff) {
    if (spec.r_max <= a) return 0.0;
    return tanh_sinh([&f](double r, double da, double) { return f(r, da); }, a, spec.r_max, spec)
        .value;
  }
  if (tail.kind == TailDecay::Kind::power) {
    if (!(tail.exponent > 1.0)) {
      throw DivergenceError("integrate_tail: power tail r^-" + std::to_string(tail.exponent) +
                            " is not integrable");
    }
    // r = a / w, dr = a / w^2 dw, r - a = a (1 - w) / w
    return tanh_sinh(
               [&f, a](double w, double, double one_minus_w) {
                 const double r = a / w;
                 if (!std::isfinite(r)) return 0.0;
                 const double v = f(r, a * one_minus_w / w);
                 if (v == 0.0) return 0.0;
                 return v * (a / (w * w));
               },
               0.0, 1.0, spec)
        .value;
  }
  if (!(tail.scale > 0.0)) throw DomainError("integrate_tail: exponential scale must be positive");
  const double s = tail.scale;
  // r = a + s w / (1 - w), dr = s / (1 - w)^2 dw
  return tanh_sinh(
             [&f, a, s](double, double w, double one_minus_w) {
               const double off = s * w / one_minus_w;
               const double r = a + off;
               if (!std::isfinite(r)) return 0.0;
               const double v = f(r, off);
               if (v == 0.0) return 0.0;
               return v * s / (one_minus_w * one_minus_w);
             },
             0.0, 1.0, spec)
      .value;
}

double integrate_tail(const Integrand& f, double a, const TailDecay& tail,
                      const QuadratureSpec& spec) {
  return integrate_tail([&f](double r, double) { return f(r); }, a, tail, spec);
}

namespace {

double binomial(int m, int i) {
  double c = 1.0;
  for (int k = 1; k <= i; ++k) c = c * (m - i + k) / k;
  return c;
}

}  // namespace

DerivativeEstimate apply_D_estimate(const std::function<double(double)>& phi, double t, int order,
                                    int sign, const DerivativeSpec& spec) {
  if (!(t > 0.0)) throw DomainError("apply_D: t must be positive");
  if (order < 1) throw DomainError("apply_D: order must be a positive integer");
  if (sign != 1 && sign != -1) throw DomainError("apply_D: sign must be +1 or -1");

  const double u0 = t * t;
  auto Phi = [&phi](double u) { return phi(std::sqrt(u)); };

  // Central order-th difference on nodes u0 + (order/2 - i) h, i = 0..order.
  // Its error expansion is even in h, so Richardson in h^2 applies.
  std::vector<double> coef(order + 1);
  for (int i = 0; i <= order; ++i) coef[i] = ((i % 2) ? -1.0 : 1.0) * binomial(order, i);
  auto difference = [&](double h) {
    double acc = 0.0;
    for (int i = 0; i <= order; ++i) {
      acc += coef[i] * Phi(u0 + (0.5 * order - i) * h);
    }
    return acc / std::pow(h, order);
  };

  const int ntab = spec.max_steps;
  const double con2 = spec.shrink * spec.shrink;
  std::vector<std::vector<double>> a(ntab, std::vector<double>(ntab, 0.0));
  // The stencil half-width starts at 0.3 u0, inside the Taylor radius of
  // power-type profiles.
  double h = 0.6 * u0 / order;
  a[0][0] = difference(h);
  double best = a[0][0];
  double err = std::numeric_limits<double>::infinity();
  for (int i = 1; i < ntab; ++i) {
    h /= spec.shrink;
    a[0][i] = difference(h);
    double fac = con2;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
      fac *= con2;
      const double e = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
      if (e <= err) {
        err = e;
        best = a[j][i];
      }
    }
    if (i >= 3 && std::abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * err) break;
  }

  DerivativeEstimate out;
  out.value = (sign < 0 && (order % 2)) ? -best : best;
  out.error = err;
  const double natural = std::abs(Phi(u0)) / std::pow(u0, order);
  const double allowed = spec.rel_tol * std::max(std::abs(best), natural) + spec.abs_tol;
  out.accepted = err <= allowed;
  return out;
}

double apply_D(const std::function<double(double)>& phi, double t, int order, int sign,
               const DerivativeSpec& spec) {
  const DerivativeEstimate d = apply_D_estimate(phi, t, order, sign, spec);
  if (!d.accepted) {
    throw AccuracyError("apply_D: derivative extrapolation did not settle at t = " +
                            std::to_string(t),
                        d.value, d.error);
  }
  return d.value;
}

}  // namespace orad::numerics
