#pragma once

#include <string>

#include "vendor_json.hpp"

#include "rosen/experiments.hpp"
#include "rosen/rosenblatt.hpp"

namespace rosen {

using json = nlohmann::json;

// FNV-1a over the canonical parameter encoding; embedded in reports and names
std::string config_hash(const Params& p);

json params_to_json(const Params& p);
// Strict parse: unknown keys rejected, missing keys keep defaults.
Params params_from_json(const json& j);

json run_meta_json(const RosenblattRun& run);
json law_report_json(const LawReport& rep);
json rate_fit_json(const RateFit& fit);
json strong_rate_json(const StrongRateReport& rep);
json summary_json(const McSummary& s);

// CSV: RFC-4180 style, '.' decimal, 17 significant digits
void write_run_csv(const std::string& path, const RosenblattRun& run);
void write_path_csv(const std::string& path, const PiecewiseLinearPath& pl,
                    const std::string& name, uint64_t seed);
void write_transport_csv(const std::string& path, const TransportPath& Z);
void write_samples_csv(const std::string& path, const std::vector<std::vector<double>>& rows,
                       const std::string& header);
void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

}  // namespace rosen
