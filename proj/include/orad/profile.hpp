#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace orad {

enum class ProfileKind { power_law, generalized_cauchy, gaussian, log_tempered_power, grid, composite, zero };

enum class TailKind {
  power,     // |f| ~ t^tail_exponent * log(t)^tail_log_power
  gaussian,  // |f| ~ t^tail_exponent * exp(-(t/scale)^2)
  vanishing  // identically zero beyond some radius
};

/// Behaviour of a profile at 0 and at infinity. Existence checks and the choice
/// of quadrature map are decided from these exponents, not from samples.
struct Asymptotics {
  double head_exponent = 0.0;  // f ~ t^head_exponent as t -> 0
  TailKind tail = TailKind::power;
  double tail_exponent = 0.0;
  double tail_log_power = 0.0;
  double scale = 1.0;

  static Asymptotics vanishing() { return {0.0, TailKind::vanishing, 0.0, 0.0, 1.0}; }
  static Asymptotics power(double head, double tail) { return {head, TailKind::power, tail, 0.0, 1.0}; }
  static Asymptotics gaussian(double head, double scale, double tail_power = 0.0) {
    return {head, TailKind::gaussian, tail_power, 0.0, scale};
  }
};

/// int_0^1 |f| t^extra dt < inf, decided from the head exponent.
bool head_integrable(const Asymptotics& a, double extra);
/// int_1^inf |f| t^extra dt < inf, decided from the tail description.
bool tail_integrable(const Asymptotics& a, double extra);

enum class Interpolation { monotone_cubic, lagrange };

/// Log-uniform radii: count points from lo to hi inclusive.
struct LogGrid {
  double lo = 1e-2;
  double hi = 1e2;
  int count = 512;

  std::vector<double> points() const;
};

/// A function f0 on the positive half-line, f(tau) = f0(|tau|). Immutable and
/// cheap to copy; safe to evaluate from several threads.
class RadialProfile {
 public:
  /// t^{-lambda}
  static RadialProfile power_law(double lambda);
  /// (1 + t^2)^{-beta/2}
  static RadialProfile generalized_cauchy(double beta);
  /// exp(-(t/scale)^2)
  static RadialProfile gaussian(double scale = 1.0);
  /// (2 + t)^{-exponent} / log(2 + t)
  static RadialProfile log_tempered_power(double exponent);
  /// Tabulated values. Radii strictly increasing and positive. Outside the
  /// table the declared asymptotics extrapolate from the end values.
  static RadialProfile grid(std::vector<double> radii, std::vector<double> values,
                            Asymptotics asymptotics,
                            Interpolation interp = Interpolation::monotone_cubic);
  static RadialProfile grid(std::vector<double> radii, std::vector<double> values,
                            double head_exponent, double tail_exponent,
                            Interpolation interp = Interpolation::monotone_cubic);
  static RadialProfile zero();
  static RadialProfile from_function(std::function<double(double)> fn, Asymptotics asymptotics,
                                     std::string label);

  RadialProfile();  // zero profile

  /// Value at t >= 0. At t = 0 this is the limit, possibly infinite.
  double operator()(double t) const;

  ProfileKind kind() const;
  bool closed_form() const;
  const Asymptotics& asymptotics() const;
  std::string describe() const;
  /// The kind's defining parameter (lambda, beta, scale or exponent); 0 otherwise.
  double parameter() const;

  /// c * f
  RadialProfile scaled(double c) const;
  /// t^a * f
  RadialProfile times_power(double a) const;

  std::span<const double> radii() const;
  std::span<const double> values() const;
  Interpolation interpolation() const;

  struct Impl;

 private:
  explicit RadialProfile(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// fn at each radius, in parallel. A point whose quadrature does not converge
/// keeps its best estimate when that is below negligible * (largest converged
/// value); otherwise the AccuracyError propagates.
std::vector<double> sample_values(const std::function<double(double)>& fn, std::span<const double> radii,
                                  double negligible = 1e-8);

/// Samples f on the grid (in parallel) and returns a Lagrange-interpolated grid
/// profile carrying the given asymptotics for extrapolation.
RadialProfile materialize(const RadialProfile& f, const LogGrid& grid, const Asymptotics& asym);
RadialProfile materialize(const RadialProfile& f, const LogGrid& grid);

/// Exponents read off the end segments of tabulated data in log-log scale. A
/// tail whose end values are negligible against the peak is reported vanishing.
Asymptotics fitted_asymptotics(std::span<const double> radii, std::span<const double> values);

/// CSV grid format:
///   # orad-profile v1
///   # head_exponent=<real>
///   # tail_exponent=<real>
///   # tail=power|gaussian|vanishing        (optional, default power)
///   # scale=<real>                          (optional, gaussian tails)
///   radius,value
///   <r>,<v>
///   ...
void write_profile_csv(std::ostream& os, std::span<const double> radii, std::span<const double> values,
                       const Asymptotics& asym);
RadialProfile read_profile_csv(std::istream& is);
RadialProfile read_profile_csv_file(const std::string& path);

}  // namespace orad
