#pragma once

#include <span>
#include <vector>

#include "orad/numerics.hpp"
#include "orad/profile.hpp"

namespace orad {

/// A positive fractional order alpha = m + alpha0 with m = floor(alpha) and
/// 0 <= alpha0 < 1.
class FracOrder {
 public:
  explicit FracOrder(double alpha);

  double alpha() const noexcept { return alpha_; }
  int m() const noexcept { return m_; }
  double alpha0() const noexcept { return alpha0_; }
  bool is_integer() const noexcept { return alpha0_ == 0.0; }
  /// alpha = k/2 with k odd.
  bool is_half_odd() const noexcept { return alpha0_ == 0.5; }

 private:
  double alpha_;
  int m_;
  double alpha0_;
};

/// Quadrature and differentiation settings shared by the operator layer.
struct NumericSpec {
  numerics::QuadratureSpec quad{};
  numerics::DerivativeSpec deriv{};
};

// ---------------------------------------------------------------------------
// Erdelyi-Kober fractional integrals
//   (I+ f)(t) = 2/Gamma(a) int_0^t (t^2 - r^2)^{a-1} f(r) r dr
//   (I- f)(t) = 2/Gamma(a) int_t^inf (r^2 - t^2)^{a-1} f(r) r dr
// ---------------------------------------------------------------------------

double ek_plus(const RadialProfile& f, FracOrder order, double t, const NumericSpec& spec = {});
double ek_minus(const RadialProfile& f, FracOrder order, double t, const NumericSpec& spec = {});

/// Lazy profiles t -> ek_plus(f, order, t) and t -> ek_minus(f, order, t).
RadialProfile ek_plus_profile(const RadialProfile& f, FracOrder order, const NumericSpec& spec = {});
RadialProfile ek_minus_profile(const RadialProfile& f, FracOrder order, const NumericSpec& spec = {});

/// Asymptotics of the output of I+^a / I-^a given those of the input.
Asymptotics ek_plus_asymptotics(const Asymptotics& in, double a);
Asymptotics ek_minus_asymptotics(const Asymptotics& in, double a);

/// Left inverses of ek_plus / ek_minus. Integer orders differentiate directly;
/// half-odd orders of the minus side use t (-D)^{(k+1)/2} t^k I-^{1/2} t^{-k-1};
/// other fractional orders use D^{m+1} I+^{1-a0} and
/// t^{2(1-a0)} (-D)^{m+1} t^{2a} I-^{1-a0} t^{-2m-2}.
double ek_derivative_plus(const RadialProfile& phi, FracOrder order, double t,
                          const NumericSpec& spec = {});
double ek_derivative_minus(const RadialProfile& phi, FracOrder order, double t,
                           const NumericSpec& spec = {});

/// Non-throwing forms; the error estimate includes any outer power factor.
numerics::DerivativeEstimate ek_derivative_plus_estimate(const RadialProfile& phi, FracOrder order,
                                                         double t, const NumericSpec& spec = {});
numerics::DerivativeEstimate ek_derivative_minus_estimate(const RadialProfile& phi, FracOrder order,
                                                          double t, const NumericSpec& spec = {});

// ---------------------------------------------------------------------------
// Riesz potential of a radial function on R^d
// ---------------------------------------------------------------------------

enum class RieszBackend { angular_kernel, ek_factorized };

/// gamma_d(alpha) = 2^alpha pi^{d/2} Gamma(alpha/2) / Gamma((d - alpha)/2)
double riesz_normalization(int d, double alpha);

/// (I_d^alpha f)(r) for x -> f(|x|) on R^d. Requires 0 < alpha < d.
double riesz_radial(const RadialProfile& f, double alpha, int d, double r,
                    RieszBackend backend = RieszBackend::ek_factorized, const NumericSpec& spec = {});

RadialProfile riesz_profile(const RadialProfile& f, double alpha, int d,
                            RieszBackend backend = RieszBackend::ek_factorized,
                            const NumericSpec& spec = {});
Asymptotics riesz_asymptotics(const Asymptotics& in, double alpha, int d);

/// Factor C in I_d^alpha f = C r^{2-d} I+^{alpha/2} r^{d-alpha-2} I-^{alpha/2} f.
/// Fixed after calibration against the angular-kernel route on power laws.
double riesz_ek_constant(double alpha);

enum class EkSide { plus, minus };

/// max over the grid of |I^{a1} I^{a2} f - I^{a1+a2} f| / (|I^{a1+a2} f| + abs_tol).
double semigroup_check(const RadialProfile& f, FracOrder a1, FracOrder a2, EkSide side,
                       std::span<const double> grid, double abs_tol = 1e-14,
                       const NumericSpec& spec = {});

}  // namespace orad
