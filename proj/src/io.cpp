#include "spectra/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace spectra {

namespace {

const Json& require_field(const Json& obj, const std::string& name,
                          const std::string& where) {
  if (!obj.contains(name))
    throw std::invalid_argument(where + ": missing field \"" + name + "\"");
  return obj.at(name);
}

double require_number(const Json& obj, const std::string& name,
                      const std::string& where) {
  const Json& v = require_field(obj, name, where);
  if (!v.is_number())
    throw std::invalid_argument(where + ": field \"" + name +
                                "\" must be a number");
  return v.get<double>();
}

std::uint64_t seed_or_default(const Json& params,
                              std::optional<std::uint64_t> default_seed,
                              std::uint64_t fallback) {
  if (params.contains("seed")) {
    const Json& v = params.at("seed");
    if (!v.is_number_integer())
      throw std::invalid_argument(
          "family spec: field \"seed\" must be an integer");
    return v.get<std::uint64_t>();
  }
  return default_seed.value_or(fallback);
}

}  // namespace

ParamFamily family_from_json(const Json& spec,
                             std::optional<std::uint64_t> default_seed) {
  if (!spec.is_object())
    throw std::invalid_argument("family spec: expected a JSON object");
  const Json& kind_field = require_field(spec, "kind", "family spec");
  if (!kind_field.is_string())
    throw std::invalid_argument("family spec: field \"kind\" must be a string");
  const std::string kind = kind_field.get<std::string>();
  const Json params = spec.contains("params") ? spec.at("params") : Json::object();
  if (!params.is_object())
    throw std::invalid_argument(
        "family spec: field \"params\" must be an object");

  auto alpha_or = [&](std::optional<double> fallback) {
    if (spec.contains("alpha")) {
      const double a = require_number(spec, "alpha", "family spec");
      if (!(a > 0.0 && a <= 1.0))
        throw std::invalid_argument(
            "family spec: field \"alpha\" must lie in (0, 1]");
      return a;
    }
    if (!fallback)
      throw std::invalid_argument("family spec: missing field \"alpha\"");
    return *fallback;
  };

  if (kind == "rough_coupling") {
    const double alpha = alpha_or(std::nullopt);
    const double scale =
        params.contains("scale") ? require_number(params, "scale", "params") : 1.0;
    return build_rough_coupling(alpha, scale);
  }
  if (kind == "crossing_lines") {
    const Json& slopes_field = require_field(params, "slopes", "params");
    if (!slopes_field.is_array() || slopes_field.size() < 2)
      throw std::invalid_argument(
          "params: field \"slopes\" must be an array of at least 2 numbers");
    std::vector<double> slopes;
    for (const auto& s : slopes_field) {
      if (!s.is_number())
        throw std::invalid_argument(
            "params: field \"slopes\" must contain only numbers");
      slopes.push_back(s.get<double>());
    }
    std::vector<double> offsets;
    if (params.contains("offsets")) {
      const Json& off = params.at("offsets");
      if (!off.is_array() || off.size() != slopes.size())
        throw std::invalid_argument(
            "params: field \"offsets\" must be an array matching \"slopes\"");
      for (const auto& o : off) offsets.push_back(o.get<double>());
    }
    std::optional<std::uint64_t> seed;
    if (params.contains("seed"))
      seed = seed_or_default(params, default_seed, 0);
    else if (default_seed)
      seed = default_seed;
    auto lines = build_crossing_lines(slopes, seed, offsets);
    lines.family.claimed_alpha = alpha_or(1.0);
    return std::move(lines.family);
  }
  if (kind == "schrodinger") {
    const Json& n_field = require_field(params, "n", "params");
    if (!n_field.is_number_integer())
      throw std::invalid_argument("params: field \"n\" must be an integer");
    const int n = n_field.get<int>();
    const std::string potential =
        params.contains("potential")
            ? params.at("potential").get<std::string>()
            : std::string("zero");
    std::function<double(std::span<const double>, double)> v;
    if (potential == "zero")
      v = [](std::span<const double>, double) { return 0.0; };
    else if (potential == "shift")
      v = [](std::span<const double> u, double) { return u[0]; };
    else if (potential == "linear_x")
      v = [](std::span<const double> u, double x) { return u[0] * x; };
    else
      throw std::invalid_argument(
          "params: field \"potential\" must be one of \"zero\", \"shift\", "
          "\"linear_x\"");
    auto family = build_schrodinger_1d(v, n);
    family.claimed_alpha = alpha_or(1.0);
    if (potential == "zero") family.known_matrix_constant = 0.0;
    if (potential == "shift") family.known_matrix_constant = 1.0;
    if (potential == "linear_x")
      family.known_matrix_constant = static_cast<double>(n) / (n + 1);
    return family;
  }
  if (kind == "random_holder") {
    const double alpha = alpha_or(std::nullopt);
    const Json& n_field = require_field(params, "N", "params");
    if (!n_field.is_number_integer())
      throw std::invalid_argument("params: field \"N\" must be an integer");
    const Json& terms_field = require_field(params, "terms", "params");
    if (!terms_field.is_number_integer())
      throw std::invalid_argument("params: field \"terms\" must be an integer");
    const std::uint64_t seed = seed_or_default(params, default_seed, 1);
    return build_random_holder(seed, alpha, n_field.get<int>(),
                               terms_field.get<int>())
        .family;
  }
  throw std::invalid_argument("family spec: unknown kind \"" + kind + "\"");
}

Json family_summary(const ParamFamily& family) {
  Json domain = Json::array();
  for (const auto& box : family.domain)
    domain.push_back(Json::array({box[0], box[1]}));
  return Json{{"kind", family.kind},
              {"N", family.matrix_dim},
              {"d", family.param_dim},
              {"alpha", family.claimed_alpha},
              {"domain", domain}};
}

Json certificate_json(const HolderCertificate& cert) {
  Json out{{"alpha", cert.alpha},
           {"constant", cert.constant},
           {"witness", Json::array({cert.witness[0], cert.witness[1]})},
           {"pairs_tested", cert.pairs_tested},
           {"claimed_bound", nullptr},
           {"passed", cert.passed}};
  if (cert.claimed_bound) out["claimed_bound"] = *cert.claimed_bound;
  return out;
}

Json transfer_json(const TransferReport& report) {
  return Json{{"C_ordered", report.c_ordered},
              {"C_selection", report.c_selection},
              {"N", report.n},
              {"holds", report.holds}};
}

Json gronwall_json(const GrowthModel& model, const GronwallReport& report) {
  return Json{{"C", model.c},
              {"a", model.a},
              {"max_violation", report.max_violation},
              {"holds", report.holds}};
}

Json crossings_json(std::span<const CrossingEvent> events) {
  Json out = Json::array();
  for (const auto& ev : events)
    out.push_back(Json{{"t_lo", ev.t_lo},
                       {"t_hi", ev.t_hi},
                       {"pair", Json::array({ev.lower_index, ev.lower_index + 1})},
                       {"min_gap", ev.min_gap}});
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_branches_csv(std::ostream& os, std::span<const Branch> branches) {
  os << "t,value,index,switched\n";
  for (const auto& branch : branches) {
    for (std::size_t j = 0; j < branch.grid.size(); ++j) {
      bool switched = false;
      for (const auto& sp : branch.switch_points)
        if (sp.node == static_cast<int>(j)) switched = true;
      os << format_double(branch.grid[j]) << ',' << format_double(branch.values[j])
         << ',' << branch.indices[j] << ',' << (switched ? 1 : 0) << '\n';
    }
  }
}

}  // namespace spectra
