#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "spectra/certification.hpp"
#include "spectra/families.hpp"
#include "spectra/tracking.hpp"

namespace spectra {

using Json = nlohmann::ordered_json;

/// Builds a family from its JSON specification
///   { "kind": "rough_coupling" | "crossing_lines" | "schrodinger"
///             | "random_holder",
///     "params": {...}, "alpha": real }.
/// default_seed fills a missing "seed" in params. Malformed specs throw
/// std::invalid_argument naming the offending field.
ParamFamily family_from_json(const Json& spec,
                             std::optional<std::uint64_t> default_seed = {});

/// { "kind", "N", "d", "alpha", "domain" } summary of a resolved family.
Json family_summary(const ParamFamily& family);

/// Certificate JSON with the exact field names
/// { "alpha", "constant", "witness", "pairs_tested", "claimed_bound",
///   "passed" }.
Json certificate_json(const HolderCertificate& cert);

Json transfer_json(const TransferReport& report);
Json gronwall_json(const GrowthModel& model, const GronwallReport& report);
Json crossings_json(std::span<const CrossingEvent> events);

/// CSV rows `t,value,index,switched`, branch-major then grid order;
/// floating-point fields are printed with %.17g so reruns are byte-stable.
void write_branches_csv(std::ostream& os, std::span<const Branch> branches);

std::string format_double(double v);

}  // namespace spectra
