#pragma once

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "orad/radon_radial.hpp"

namespace orad {

// ---------------------------------------------------------------------------
// Named constants
// ---------------------------------------------------------------------------

struct ConstantParams {
  int n = 0, p = 0, q = 0, l = 0;
  int k = 0;  // c_kn only
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();  // gamma_dk: d = n
};

/// Evaluates a named gamma-ratio constant. Names:
///   c1 c2 c3 c4               weighted-duality constants (c1, c2 need lambda)
///   c1_printed c2_printed     c1, c2 with the Gamma arguments as printed
///   c_kn                      2^k pi^{k/2} G(n/2) / G((n-k)/2)
///   tilde_c1 tilde_c2         EK-form transform constants
///   fuglede_c                 2^{j+l} pi^{(j+l)/2} G(n/2) / G((n-j-l)/2)
///   fuglede_c_typo            the same with pi * (j+l)/2 in place of the power
///   semyanistyi_dual_c        2^l pi^{l/2} G((n-j)/2) / G((n-j-l)/2)
///   semyanistyi_forward_c     2^q pi^{q/2} G((n-k)/2) / G((n-k-q)/2)
///   semyanistyi_forward_c_printed   the same with pi^q
///   gamma_dk                  Riesz normalization gamma_n(alpha)
/// Throws DomainError for unknown names, invalid configurations and Gamma
/// poles (the message names the offending argument).
double constant(std::string_view name, const ConstantParams& params);
std::vector<std::string> constant_names();

// ---------------------------------------------------------------------------
// Identity reports
// ---------------------------------------------------------------------------

enum class Verdict { pass, constant_mismatch, fail };
std::string to_string(Verdict v);

struct ConstantCandidate {
  std::string name;
  double value = 0.0;
};

struct IdentityReport {
  std::string identity;
  GrassmannConfig config;
  std::map<std::string, double> parameters;  // alpha, beta, lambda, ...
  std::vector<double> probes;
  std::vector<double> lhs, rhs;
  double tolerance = 0.0;
  std::string constant_name;   // the constant multiplying rhs
  double constant_used = 1.0;
  double max_rel_dev = 0.0;
  /// Least-squares c with lhs ~ c * rhs.
  double fitted_constant_ratio = 1.0;
  /// max |lhs - c rhs| / |c rhs| over the probes.
  double ratio_spread = 0.0;
  Verdict verdict = Verdict::fail;
  /// Candidate values of the constant (printed forms and alternatives) and
  /// the names of those equal to constant_used * fitted_constant_ratio.
  std::vector<ConstantCandidate> candidates;
  std::vector<std::string> matching_candidates;
};

/// Fills max_rel_dev, the fitted ratio, the spread, the verdict and the
/// matching candidates from lhs, rhs and tolerance.
///   pass               max_rel_dev <= tolerance
///   constant_mismatch  otherwise, if lhs / rhs is constant to tolerance across
///                      the probes (with a single probe: if the fitted constant
///                      matches a candidate)
///   fail               otherwise
void finalize_report(IdentityReport& r);

/// Integral over the affine Grassmannian of dim-planes in R^n of
/// fn(|t|) |t|^weight_power (1 + |t|^2)^-cauchy, fn described by `as`.
double plane_integral(const std::function<double(double)>& fn, const Asymptotics& as, int n, int dim,
                      double weight_power = 0.0, double cauchy = 0.0);

/// 8 log-spaced radii in [0.25, 4].
std::vector<double> default_probes();

/// R I_{n-j}^alpha f against I_{n-k}^alpha R f, 0 < alpha < n-k-q. Tolerance 1e-4.
IdentityReport check_intertwining(const RadialProfile& f, const GrassmannConfig& cfg, double alpha,
                                  const std::vector<double>& probes = default_probes());

enum class WeightedDuality {
  dual_power,      // int R^* g |t|^{-lam} = c1 int g |z|^{l-lam},    l < lam < n-j
  forward_power,   // int R f |z|^{-lam} = c2 int f |t|^{q-lam},      q < lam < n-k
  dual_cauchy,     // weight (1+|t|^2)^{-(n-p)/2}  -> c3 (1+|z|^2)^{-(n-k-q)/2}
  forward_cauchy   // weight (1+|z|^2)^{-(n-p)/2}  -> c4 (1+|t|^2)^{-(n-j-l)/2}
};
std::string to_string(WeightedDuality w);

/// Both sides reduced to integrals over the half-line with the surface
/// factor of the plane's orthocomplement. `lambda` is ignored for the Cauchy
/// weights. Single probe; tolerance 1e-6.
IdentityReport check_weighted_duality(const RadialProfile& f, const GrassmannConfig& cfg, double lambda,
                                      WeightedDuality which);

enum class SemyanistyiSide {
  dualside,    // P_k^{alpha*} R f = c P_j^{(alpha+l)*} f,  f on planes
  forwardside  // R P_j^alpha h = c P_k^{q+alpha} h,         h on R^n
};
std::string to_string(SemyanistyiSide s);

/// Tolerance 1e-4. The rhs uses the printed constant.
IdentityReport check_semyanistyi(const RadialProfile& f, const GrassmannConfig& cfg, double alpha,
                                 SemyanistyiSide which, const std::vector<double>& probes = default_probes());

/// P_k^{beta*} R P_j^alpha h against c I_n^{alpha+beta+j+l} h. Tolerance 1e-4.
IdentityReport check_fuglede(const RadialProfile& h, const GrassmannConfig& cfg, double alpha, double beta,
                             const std::vector<double>& probes = default_probes());

/// 8 log-spaced radii in [0.25, 2]: where a Gaussian input is still resolved
/// after the numerical Riesz derivative.
std::vector<double> interior_probes();

/// Recovers f = R_j h from R f by c^{-1} R_j D_n^{j+l+alpha} R_k^* I_{n-k}^alpha R f
/// and compares with f. lhs is the recovered profile, rhs the original.
/// Tolerance 1e-2.
IdentityReport invert_via_range(const RadialProfile& h, const GrassmannConfig& cfg, double alpha,
                                const std::vector<double>& probes = interior_probes());

/// The standard suite: every identity on the given configs and inputs.
std::vector<IdentityReport> standard_suite(const std::vector<GrassmannConfig>& configs);

}  // namespace orad
