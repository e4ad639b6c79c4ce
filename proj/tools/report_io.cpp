#include "report_io.hpp"

#include <charconv>
#include <cmath>

namespace orad::cli {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json to_json(const GrassmannConfig& cfg) {
  return json{{"n", cfg.n}, {"p", cfg.p}, {"q", cfg.q}, {"l", cfg.l}, {"j", cfg.j()}, {"k", cfg.k()},
              {"ell", cfg.ell()}};
}

json to_json(const IdentityReport& r) {
  json j;
  j["identity"] = r.identity;
  j["config"] = to_json(r.config);
  j["parameters"] = json::object();
  for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
  j["probes"] = r.probes;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["max_rel_dev"] = r.max_rel_dev;
  j["fitted_constant_ratio"] = r.fitted_constant_ratio;
  j["verdict"] = to_string(r.verdict);
  j["tolerance"] = r.tolerance;
  j["constant_name"] = r.constant_name;
  j["constant_used"] = r.constant_used;
  j["ratio_spread"] = r.ratio_spread;
  json cands = json::array();
  for (const auto& c : r.candidates) cands.push_back({{"name", c.name}, {"value", c.value}});
  j["candidates"] = cands;
  j["matching_candidates"] = r.matching_candidates;
  return j;
}

json to_json(const MCEstimate& e) {
  return json{{"mean", e.mean},
              {"stderr", e.std_error},
              {"n_samples", e.n_samples},
              {"seed", e.seed},
              {"variance_warning", e.variance_warning}};
}

void write_csv(std::ostream& os, const json& meta, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  for (const auto& [k, v] : meta.items()) {
    os << "# " << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << number(row[i]);
    os << '\n';
  }
}

}  // namespace orad::cli
