#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nsm/diagnostics.hpp"
#include "nsm/probes.hpp"
#include "nsm/state.hpp"
#include "nsm/thresholds.hpp"

#include <json.hpp>

namespace nsm {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double x);

/// CSV with a header line and one line per row. Throws Error when the
/// file cannot be written or a row has the wrong width.
void write_series(const std::filesystem::path& path, const std::vector<std::string>& columns,
                  const std::vector<std::vector<double>>& rows);

/// Text header followed by raw little-endian doubles: field, component,
/// mode (FFT order), real and imaginary part interleaved.
void write_snapshot(const std::filesystem::path& path, const NsmState& s);
NsmState read_snapshot(const std::filesystem::path& path);

nlohmann::json to_json(const EnergyReport& r);
nlohmann::json to_json(const AprioriReport& r);
nlohmann::json to_json(const ThresholdReport& r);
nlohmann::json to_json(const RatioStudy& r);

/// Per-sample ratio table: sample, lhs, rhs, ratio.
void write_ratio_study(const std::filesystem::path& path, const RatioStudy& r);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace nsm
