#pragma once

#include <functional>
#include <numbers>

namespace orad::numerics {

inline constexpr double kPi = std::numbers::pi;

/// Natural log of Gamma(x) for x > 0. Throws DomainError otherwise.
double gamma_ln(double x);

/// Gamma(x) for x > 0, computed as exp(gamma_ln(x)).
double gamma_fn(double x);

/// Area of the unit sphere S^{m-1} in R^m: 2 pi^{m/2} / Gamma(m/2).
/// By convention sphere_area(0) == 0, the limit of the formula.
double sphere_area(int m);

struct QuadratureSpec {
  enum class TailPolicy { analytic_power_tail, exponential_tail, hard_cutoff };

  double rel_tol = 1e-10;
  double abs_tol = 1e-250;
  int max_refinements = 8;
  TailPolicy tail_policy = TailPolicy::analytic_power_tail;
  double r_max = 0.0;  // only for hard_cutoff
  /// When refinements run out, accept the estimate anyway if its error is
  /// within this relative bound (0: always throw). For integrands built on
  /// tabulated data, whose interpolation error sets a floor.
  double accept_relative = 0.0;

  /// Throws DomainError when a field violates its invariant.
  void validate() const;
};

/// Algebraic exponents of the integrand at each endpoint: |f| ~ dist^exponent.
struct EndpointSingularity {
  double exponent_left = 0.0;
  double exponent_right = 0.0;
};

/// How an integrand decays on [a, inf).
struct TailDecay {
  enum class Kind { power, exponential };
  Kind kind = Kind::power;
  double exponent = 2.0;  // power: |f(r)| ~ r^{-exponent}
  double scale = 1.0;     // exponential: decay length

  static TailDecay power(double exponent) { return {Kind::power, exponent, 1.0}; }
  static TailDecay exponential(double scale) { return {Kind::exponential, 0.0, scale}; }
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  int levels = 0;
};

using Integrand = std::function<double(double)>;

/// Integrand that also receives the exact distances x - a and b - x. Kernels
/// like (t^2 - r^2)^{a-1} must use these instead of recomputing b - x, which
/// cancels catastrophically near the endpoint.
using EndpointIntegrand = std::function<double(double x, double dist_a, double dist_b)>;

/// Double-exponential (tanh-sinh) rule on [a, b] with level refinement.
/// Throws AccuracyError when max_refinements is exhausted.
QuadResult tanh_sinh(const EndpointIntegrand& f, double a, double b, const QuadratureSpec& spec);

double integrate_singular(const Integrand& f, double a, double b, const EndpointSingularity& sing,
                          const QuadratureSpec& spec = {});
double integrate_singular(const EndpointIntegrand& f, double a, double b,
                          const EndpointSingularity& sing, const QuadratureSpec& spec = {});

/// Integral over [a, inf). Power tails are mapped with r = a/w onto (0, 1],
/// exponential tails with r = a + scale * w / (1 - w). Throws DivergenceError
/// when the declared decay is not integrable.
double integrate_tail(const Integrand& f, double a, const TailDecay& tail,
                      const QuadratureSpec& spec = {});

/// Same as above; the integrand gets the exact offset r - a as second argument.
double integrate_tail(const std::function<double(double r, double r_minus_a)>& f, double a,
                      const TailDecay& tail, const QuadratureSpec& spec = {});

struct DerivativeSpec {
  double rel_tol = 1e-6;
  double abs_tol = 0.0;
  int max_steps = 24;
  double shrink = 1.4;
};

/// (sign * D)^order phi at t, with D = (1/(2t)) d/dt. Since D = d/du for
/// u = t^2, this is a single order-th u-derivative of phi(sqrt(u)), taken with
/// a symmetric stencil and Ridders-Richardson extrapolation over shrinking steps.
double apply_D(const std::function<double(double)>& phi, double t, int order, int sign,
               const DerivativeSpec& spec = {});

struct DerivativeEstimate {
  double value = 0.0;
  double error = 0.0;    // Ridders error estimate
  bool accepted = false; // error within the spec tolerance
};

/// As apply_D, but reports instead of throwing when the tolerance is missed.
DerivativeEstimate apply_D_estimate(const std::function<double(double)>& phi, double t, int order,
                                    int sign, const DerivativeSpec& spec = {});

}  // namespace orad::numerics
