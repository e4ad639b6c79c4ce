#include "orad/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "orad/errors.hpp"
#include "orad/parallel.hpp"

namespace orad {

namespace {
constexpr double kExponentEps = 1e-12;
}

bool head_integrable(const Asymptotics& a, double extra) {
  return a.head_exponent + extra > -1.0 + kExponentEps;
}

bool tail_integrable(const Asymptotics& a, double extra) {
  if (a.tail != TailKind::power) return true;
  const double e = a.tail_exponent + extra;
  if (e < -1.0 - kExponentEps) return true;
  if (std::abs(e + 1.0) <= kExponentEps) return a.tail_log_power < -1.0;
  return false;
}

std::vector<double> LogGrid::points() const {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw DomainError("LogGrid: requires 0 < lo < hi and count >= 2");
  }
  std::vector<double> r(count);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i) r[i] = std::exp(a + (b - a) * i / (count - 1));
  r.front() = lo;
  r.back() = hi;
  return r;
}

struct RadialProfile::Impl {
  ProfileKind kind = ProfileKind::zero;
  double param = 0.0;
  double factor = 1.0;  // multiplies the base value
  double power = 0.0;   // extra t^power applied to the base value
  Asymptotics asym = Asymptotics::vanishing();
  std::string label;

  // grid
  std::vector<double> radii, values, logr, slopes;
  Interpolation interp = Interpolation::monotone_cubic;

  // composite
  std::function<double(double)> fn;

  double base(double t) const;
  double grid_value(double t) const;
};

namespace {

constexpr int kLagrangePoints = 8;

// Fritsch-Carlson slopes for a monotone piecewise cubic Hermite interpolant.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0), h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) {
      s = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0)) {
      s = 3.0 * d0;
    }
    return s;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

}  // namespace

double RadialProfile::Impl::grid_value(double t) const {
  const double x = std::log(t);
  const std::size_t n = radii.size();
  auto it = std::upper_bound(logr.begin(), logr.end(), x);
  std::size_t i = (it == logr.begin()) ? 0 : static_cast<std::size_t>(it - logr.begin()) - 1;
  i = std::min(i, n - 2);
  if (x == logr[i]) return values[i];
  if (interp == Interpolation::monotone_cubic) {
    const double h = logr[i + 1] - logr[i];
    const double s = (x - logr[i]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * values[i] + h10 * h * slopes[i] + h01 * values[i + 1] + h11 * h * slopes[i + 1];
  }
  // Barycentric Lagrange on the kLagrangePoints nodes centred on the interval.
  const int m = static_cast<int>(std::min<std::size_t>(kLagrangePoints, n));
  long start = static_cast<long>(i) - (m / 2 - 1);
  start = std::clamp<long>(start, 0, static_cast<long>(n) - m);
  double num = 0.0, den = 0.0;
  for (int a = 0; a < m; ++a) {
    const std::size_t ia = static_cast<std::size_t>(start + a);
    const double dx = x - logr[ia];
    if (dx == 0.0) return values[ia];
    double w = 1.0;
    for (int b = 0; b < m; ++b) {
      if (b != a) w *= logr[ia] - logr[static_cast<std::size_t>(start + b)];
    }
    const double c = 1.0 / (w * dx);
    num += c * values[ia];
    den += c;
  }
  return num / den;
}

double RadialProfile::Impl::base(double t) const {
  switch (kind) {
    case ProfileKind::zero:
      return 0.0;
    case ProfileKind::power_law:
      return std::pow(t, -param);
    case ProfileKind::generalized_cauchy:
      return std::pow(1.0 + t * t, -0.5 * param);
    case ProfileKind::gaussian: {
      const double z = t / param;
      return std::exp(-z * z);
    }
    case ProfileKind::log_tempered_power:
      return std::pow(2.0 + t, -param) / std::log(2.0 + t);
    case ProfileKind::composite:
      return fn(t);
    case ProfileKind::grid: {
      const double r0 = radii.front(), rn = radii.back();
      if (t < r0) {
        if (t == 0.0) {
          if (asym.head_exponent > 0.0) return 0.0;
          if (asym.head_exponent == 0.0) return values.front();
          return values.front() == 0.0 ? 0.0 : std::copysign(HUGE_VAL, values.front());
        }
        return values.front() * std::pow(t / r0, asym.head_exponent);
      }
      if (t > rn) {
        switch (asym.tail) {
          case TailKind::vanishing:
            return 0.0;
          case TailKind::power:
            return values.back() * std::pow(t / rn, asym.tail_exponent);
          case TailKind::gaussian: {
            const double s2 = asym.scale * asym.scale;
            return values.back() * std::pow(t / rn, asym.tail_exponent) *
                   std::exp(-(t - rn) * (t + rn) / s2);
          }
        }
      }
      return grid_value(t);
    }
  }
  return 0.0;
}

RadialProfile::RadialProfile() : RadialProfile(std::make_shared<Impl>()) {}

RadialProfile::RadialProfile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

RadialProfile RadialProfile::zero() { return RadialProfile(); }

RadialProfile RadialProfile::power_law(double lambda) {
  if (!std::isfinite(lambda)) throw DomainError("power_law: exponent must be finite");
  auto p = std::make_shared<Impl>();
  p->kind = ProfileKind::power_law;
  p->param = lambda;
  p->asym = Asymptotics::power(-lambda, -lambda);
  return RadialProfile(std::move(p));
}

RadialProfile RadialProfile::generalized_cauchy(double beta) {
  if (!std::isfinite(beta)) throw DomainError("generalized_cauchy: beta must be finite");
  auto p = std::make_shared<Impl>();
  p->kind = ProfileKind::generalized_cauchy;
  p->param = beta;
  p->asym = Asymptotics::power(0.0, -beta);
  return RadialProfile(std::move(p));
}

RadialProfile RadialProfile::gaussian(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("gaussian: scale must be positive");
  auto p = std::make_shared<Impl>();
  p->kind = ProfileKind::gaussian;
  p->param = scale;
  p->asym = Asymptotics::gaussian(0.0, scale);
  return RadialProfile(std::move(p));
}

RadialProfile RadialProfile::log_tempered_power(double exponent) {
  if (!std::isfinite(exponent)) throw DomainError("log_tempered_power: exponent must be finite");
  auto p = std::make_shared<Impl>();
  p->kind = ProfileKind::log_tempered_power;
  p->param = exponent;
  p->asym = {0.0, TailKind::power, -exponent, -1.0, 1.0};
  return RadialProfile(std::move(p));
}

RadialProfile RadialProfile::grid(std::vector<double> radii, std::vector<double> values,
                                  Asymptotics asymptotics, Interpolation interp) {
  if (radii.size() != values.size()) throw DomainError("grid profile: radii/values size mismatch");
  if (radii.size() < 2) throw DomainError("grid profile: needs at least two points");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) {
      throw DomainError("grid profile: radii must be positive and finite");
    }
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw DomainError("grid profile: radii must be strictly increasing");
    }
    if (!std::isfinite(values[i])) throw DomainError("grid profile: values must be finite");
  }
  if (!std::isfinite(asymptotics.head_exponent) || !std::isfinite(asymptotics.tail_exponent)) {
    throw DomainError("grid profile: head/tail exponents must be finite");
  }
  auto p = std::make_shared<Impl>();
  p->kind = ProfileKind::grid;
  p->asym = asymptotics;
  p->interp = interp;
  p->logr.resize(radii.size());
  std::transform(radii.begin(), radii.end(), p->logr.begin(), [](double r) { return std::log(r); });
  p->radii = std::move(radii);
  p->values = std::move(values);
  if (interp == Interpolation::monotone_cubic) p->slopes = pchip_slopes(p->logr, p->values);
  return RadialProfile(std::move(p));
}

RadialProfile RadialProfile::grid(std::vector<double> radii, std::vector<double> values,
                                  double head_exponent, double tail_exponent, Interpolation interp) {
  return grid(std::move(radii), std::move(values), Asymptotics::power(head_exponent, tail_exponent),
              interp);
}

RadialProfile RadialProfile::from_function(std::function<double(double)> fn, Asymptotics asymptotics,
                                           std::string label) {
  auto p = std::make_shared<Impl>();
  p->kind = ProfileKind::composite;
  p->fn = std::move(fn);
  p->asym = asymptotics;
  p->label = std::move(label);
  return RadialProfile(std::move(p));
}

double RadialProfile::operator()(double t) const {
  if (t < 0.0 || std::isnan(t)) throw DomainError("RadialProfile: radius must be nonnegative");
  const Impl& p = *impl_;
  if (p.factor == 0.0 || p.kind == ProfileKind::zero) return 0.0;
  double v = p.base(t);
  if (p.power != 0.0) v *= std::pow(t, p.power);
  return p.factor * v;
}

ProfileKind RadialProfile::kind() const { return impl_->kind; }

bool RadialProfile::closed_form() const {
  switch (impl_->kind) {
    case ProfileKind::grid:
    case ProfileKind::composite:
      return false;
    default:
      return true;
  }
}

const Asymptotics& RadialProfile::asymptotics() const { return impl_->asym; }

double RadialProfile::parameter() const { return impl_->param; }

std::string RadialProfile::describe() const {
  std::ostringstream os;
  os << std::setprecision(17);
  const Impl& p = *impl_;
  if (p.factor != 1.0) os << p.factor << "*";
  if (p.power != 0.0) os << "t^" << p.power << "*";
  switch (p.kind) {
    case ProfileKind::zero: os << "zero"; break;
    case ProfileKind::power_law: os << "power-law(" << p.param << ")"; break;
    case ProfileKind::generalized_cauchy: os << "generalized-cauchy(" << p.param << ")"; break;
    case ProfileKind::gaussian: os << "gaussian(" << p.param << ")"; break;
    case ProfileKind::log_tempered_power: os << "log-tempered-power(" << p.param << ")"; break;
    case ProfileKind::grid: os << "grid(" << p.radii.size() << " points)"; break;
    case ProfileKind::composite: os << (p.label.empty() ? "composite" : p.label); break;
  }
  return os.str();
}

RadialProfile RadialProfile::scaled(double c) const {
  if (!std::isfinite(c)) throw DomainError("scaled: factor must be finite");
  auto p = std::make_shared<Impl>(*impl_);
  p->factor *= c;
  if (c == 0.0) p->asym = Asymptotics::vanishing();
  return RadialProfile(std::move(p));
}

RadialProfile RadialProfile::times_power(double a) const {
  if (!std::isfinite(a)) throw DomainError("times_power: exponent must be finite");
  auto p = std::make_shared<Impl>(*impl_);
  p->power += a;
  p->asym.head_exponent += a;
  p->asym.tail_exponent += a;
  return RadialProfile(std::move(p));
}

std::span<const double> RadialProfile::radii() const { return impl_->radii; }
std::span<const double> RadialProfile::values() const { return impl_->values; }
Interpolation RadialProfile::interpolation() const { return impl_->interp; }

std::vector<double> sample_values(const std::function<double(double)>& fn, std::span<const double> radii,
                                  double negligible) {
  std::vector<double> v(radii.size());
  std::vector<char> failed(radii.size(), 0);
  std::vector<double> bound(radii.size(), 0.0);
  parallel_for(radii.size(), [&](std::size_t i) {
    try {
      v[i] = fn(radii[i]);
    } catch (const AccuracyError& e) {
      v[i] = e.best_estimate();
      bound[i] = e.error_bound();
      failed[i] = 1;
    }
  });
  double peak = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!failed[i]) peak = std::max(peak, std::abs(v[i]));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (failed[i] && !(std::abs(v[i]) + bound[i] <= negligible * peak)) {
      throw AccuracyError("sampling: no convergence at r = " + std::to_string(radii[i]), v[i], bound[i]);
    }
  }
  return v;
}

RadialProfile materialize(const RadialProfile& f, const LogGrid& grid, const Asymptotics& asym) {
  auto r = grid.points();
  std::vector<double> v = sample_values([&f](double t) { return f(t); }, r);
  return RadialProfile::grid(std::move(r), std::move(v), asym, Interpolation::lagrange);
}

RadialProfile materialize(const RadialProfile& f, const LogGrid& grid) {
  return materialize(f, grid, f.asymptotics());
}

Asymptotics fitted_asymptotics(std::span<const double> radii, std::span<const double> values) {
  const std::size_t n = radii.size();
  if (n < 2 || values.size() != n) throw DomainError("fitted_asymptotics: needs matching data");
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  auto slope = [&](std::size_t i, std::size_t j) {
    if (values[i] == 0.0 || values[j] == 0.0 || values[i] * values[j] < 0.0) return 0.0;
    return std::log(std::abs(values[j] / values[i])) / std::log(radii[j] / radii[i]);
  };
  Asymptotics a;
  a.head_exponent = slope(0, 1);
  const double end = std::abs(values[n - 1]);
  if (peak == 0.0 || end <= 1e-13 * peak || values[n - 1] * values[n - 2] <= 0.0) {
    a.tail = TailKind::vanishing;
  } else {
    a.tail = TailKind::power;
    a.tail_exponent = slope(n - 2, n - 1);
  }
  return a;
}

void write_profile_csv(std::ostream& os, std::span<const double> radii, std::span<const double> values,
                       const Asymptotics& asym) {
  if (radii.size() != values.size()) throw DomainError("write_profile_csv: size mismatch");
  os << std::setprecision(17);
  os << "# orad-profile v1\n";
  os << "# head_exponent=" << asym.head_exponent << "\n";
  os << "# tail_exponent=" << asym.tail_exponent << "\n";
  switch (asym.tail) {
    case TailKind::power: os << "# tail=power\n"; break;
    case TailKind::gaussian: os << "# tail=gaussian\n# scale=" << asym.scale << "\n"; break;
    case TailKind::vanishing: os << "# tail=vanishing\n"; break;
  }
  os << "radius,value\n";
  for (std::size_t i = 0; i < radii.size(); ++i) os << radii[i] << "," << values[i] << "\n";
}

RadialProfile read_profile_csv(std::istream& is) {
  Asymptotics asym = Asymptotics::power(0.0, 0.0);
  bool have_head = false, have_tail = false;
  std::vector<double> r, v;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(" \t"));
      key.erase(key.find_last_not_of(" \t") + 1);
      const auto val = line.substr(eq + 1);
      try {
        if (key == "head_exponent") {
          asym.head_exponent = std::stod(val);
          have_head = true;
        } else if (key == "tail_exponent") {
          asym.tail_exponent = std::stod(val);
          have_tail = true;
        } else if (key == "scale") {
          asym.scale = std::stod(val);
        } else if (key == "tail") {
          if (val == "power") asym.tail = TailKind::power;
          else if (val == "gaussian") asym.tail = TailKind::gaussian;
          else if (val == "vanishing") asym.tail = TailKind::vanishing;
          else throw DomainError("profile csv: unknown tail kind '" + val + "'");
        }
      } catch (const std::invalid_argument&) {
        throw DomainError("profile csv line " + std::to_string(lineno) + ": bad number");
      }
      continue;
    }
    if (line.rfind("radius", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw DomainError("profile csv line " + std::to_string(lineno) + ": expected 'radius,value'");
    }
    try {
      r.push_back(std::stod(line.substr(0, comma)));
      v.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw DomainError("profile csv line " + std::to_string(lineno) + ": bad number");
    }
  }
  if (!have_head || !have_tail) {
    throw DomainError("profile csv: header must declare head_exponent and tail_exponent");
  }
  return RadialProfile::grid(std::move(r), std::move(v), asym, Interpolation::monotone_cubic);
}

RadialProfile read_profile_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open profile file '" + path + "'");
  return read_profile_csv(in);
}

}  // namespace orad
