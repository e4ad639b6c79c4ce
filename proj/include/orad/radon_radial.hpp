#pragma once

#include <span>
#include <string>
#include <vector>

#include "orad/frac_calc.hpp"
#include "orad/profile.hpp"

namespace orad {

/// The quadruple (n, p, q, l) with j = p + q, k = p + l and ell = n - k - q.
struct GrassmannConfig {
  enum class Mode {
    strict,       // p, q, l > 0
    special_case  // additionally admits p = 0 (Gonzalez) and q = 0 (inclusion)
  };

  int n = 0, p = 0, q = 0, l = 0;
  Mode mode = Mode::strict;

  /// Validates and returns the configuration. Throws DomainError.
  static GrassmannConfig make(int n, int p, int q, int l, Mode mode = Mode::strict);

  int j() const { return p + q; }
  int k() const { return p + l; }
  int ell() const { return n - k() - q; }

  bool is_gonzalez() const { return p == 0; }
  bool is_inclusion() const { return q == 0; }
  /// "strict", "gonzalez", "inclusion" or "gonzalez+inclusion".
  std::string case_label() const;
  std::string describe() const;
};

struct ExistenceVerdict {
  enum class Method { analytic_exponent, numeric_growth };
  bool head_ok = false;
  bool tail_ok = false;
  Method method = Method::analytic_exponent;

  bool ok() const { return head_ok && tail_ok; }
};

/// Both integrability conditions for the forward transform:
///   int_0^a |f0| t^{n-j-1} dt < inf,  int_a^inf |f0| t^{l-1} dt < inf.
/// Closed forms are decided by exponent arithmetic; tabulated and composed
/// profiles by their declared asymptotics (method numeric_growth).
ExistenceVerdict check_existence(const RadialProfile& f, const GrassmannConfig& cfg);
/// Same for the dual transform: exponents n-k-1 and q-1.
ExistenceVerdict check_existence_dual(const RadialProfile& g, const GrassmannConfig& cfg);

/// sigma_{kk-jj-1} int_s^inf f0(r) (r^2 - s^2)^{(kk-jj)/2 - 1} r dr. jj = 0 is the
/// k-plane transform.
double inclusion_radial(const RadialProfile& f, int jj, int kk, int nn, double s,
                        const NumericSpec& spec = {});
RadialProfile inclusion_profile(const RadialProfile& f, int jj, int kk, int nn,
                                const NumericSpec& spec = {});

/// sigma_{k-1} sigma_{n-k-1} / (sigma_{n-1} r^{n-2}) int_0^r phi0(s) (r^2 - s^2)^{k/2-1} s^{n-k-1} ds
double dual_kplane_radial(const RadialProfile& phi, int nn, int kk, double r,
                          const NumericSpec& spec = {});
RadialProfile dual_kplane_profile(const RadialProfile& phi, int nn, int kk, const NumericSpec& spec = {});

/// tilde c1 = pi^{l/2} Gamma((n-k)/2) / Gamma(ell/2)
double tilde_c1(const GrassmannConfig& cfg);
/// tilde c2 = pi^{q/2} Gamma((n-j)/2) / Gamma(ell/2)
double tilde_c2(const GrassmannConfig& cfg);
/// c1 = sigma_{l-1} sigma_{q-1} sigma_{ell-1} / sigma_{n-k-1} (needs q, l > 0)
double sigma_c1(const GrassmannConfig& cfg);

/// (I_{j,k} f0)(s) = tilde c1 s^{2+k-n} (I+^{q/2} r^{ell-2} I-^{l/2} f0)(s).
/// At s = 0 the value is the limit pi^{l/2} (I-^{l/2} f0)(0). Throws
/// DivergenceError when check_existence fails.
double strichartz_forward_radial(const RadialProfile& f, const GrassmannConfig& cfg, double s,
                                 const NumericSpec& spec = {});
/// (I_{k,j} g0)(t) = tilde c2 t^{2+j-n} (I+^{l/2} r^{ell-2} I-^{q/2} g0)(t).
double strichartz_dual_radial(const RadialProfile& g, const GrassmannConfig& cfg, double t,
                              const NumericSpec& spec = {});

/// The forward transform tabulated on `grid`. The inner profile
/// r^{ell-2} I-^{l/2} f0 is tabulated first on a grid two decades wider on each
/// side, so each output point costs one quadrature over data.
RadialProfile strichartz_forward_profile(const RadialProfile& f, const GrassmannConfig& cfg,
                                         const LogGrid& grid = {}, const NumericSpec& spec = {});
RadialProfile strichartz_dual_profile(const RadialProfile& g, const GrassmannConfig& cfg,
                                      const LogGrid& grid = {}, const NumericSpec& spec = {});

/// Declared asymptotics of the forward / dual transform output.
Asymptotics strichartz_forward_asymptotics(const Asymptotics& in, const GrassmannConfig& cfg);
Asymptotics strichartz_dual_asymptotics(const Asymptotics& in, const GrassmannConfig& cfg);

/// The double integral c1 s^{2+k-n} int_0^s (s^2-r^2)^{q/2-1} r^{ell-1} F(r) dr with
/// F(r) = int_r^inf f0(t) (t^2-r^2)^{l/2-1} t dt, each integral taken directly.
/// Requires q, l > 0.
double strichartz_forward_sigma_form(const RadialProfile& f, const GrassmannConfig& cfg, double s,
                                     const NumericSpec& spec = {});

/// The forward transform as the dual q-plane transform, inside the
/// (n-k)-dimensional orthocomplement, of the l-plane transform of f0.
double strichartz_forward_composed(const RadialProfile& f, const GrassmannConfig& cfg, double s,
                                   const NumericSpec& spec = {});

struct InversionOptions {
  LogGrid work_grid{};             // where intermediate profiles are tabulated
  double deriv_rel_tol = 1e-4;     // accepted Ridders error on output points
  bool throw_unsettled = true;     // else report them in InversionResult::settled
  NumericSpec spec = [] {
    NumericSpec s;
    s.quad.rel_tol = 1e-9;
    s.quad.max_refinements = 10;
    return s;
  }();
};

struct InversionResult {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> error_bounds;  // from the final differentiation
  std::vector<bool> settled;         // final differentiation met deriv_rel_tol
  double trusted_lo = 0.0;           // work grid shrunk by the stencil width
  double trusted_hi = 0.0;
  RadialProfile profile;             // values on radii, monotone cubic
};

/// f0 = tilde c1^{-1} D-^{l/2} r^{2-ell} D+^{q/2} s^{n-k-2} phi on the given radii.
/// Throws AccuracyError naming the radius when a final differentiation fails.
InversionResult strichartz_invert_radial(const RadialProfile& phi, const GrassmannConfig& cfg,
                                         std::span<const double> radii,
                                         const InversionOptions& opt = {});
/// g0 = tilde c2^{-1} D-^{q/2} r^{2-ell} D+^{l/2} s^{n-j-2} psi.
InversionResult strichartz_dual_invert_radial(const RadialProfile& psi, const GrassmannConfig& cfg,
                                              std::span<const double> radii,
                                              const InversionOptions& opt = {});

/// The Riesz derivative on radial functions of R^d, the left inverse of
/// I_d^alpha: the EK factorization of the potential undone stage by stage.
InversionResult riesz_derivative_radial(const RadialProfile& g, double alpha, int d,
                                        std::span<const double> radii, const InversionOptions& opt = {});

/// (P_k^alpha f)(s) = (I_{n-k}^alpha R_k f)(s), with R_k f tabulated on `grid`.
double semyanistyi_radial(const RadialProfile& f, int nn, int kk, double alpha, double s,
                          const NumericSpec& spec = {});
RadialProfile semyanistyi_profile(const RadialProfile& f, int nn, int kk, double alpha,
                                  const LogGrid& grid = {1e-3, 1e3, 600}, const NumericSpec& spec = {});

enum class TransformSide { forward, dual };

/// (n-j)/l for the forward transform, (n-k)/q for the dual.
double lp_existence_bound(const GrassmannConfig& cfg, TransformSide side);

/// Truncations int_1^R f0(t) t^{l-1} dt of the tail condition for
/// f0(t) = (2+t)^{(j-n)/s} / log(2+t), at each cutoff R > 1 (increasing).
/// Integrated in log t, so cutoffs up to 1e300 are fine.
std::vector<double> sharpness_probe(const GrassmannConfig& cfg, double s, std::span<const double> cutoffs,
                                    const NumericSpec& spec = {});

}  // namespace orad
