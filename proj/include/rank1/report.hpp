#pragma once

#include <string>

#include "rank1/flow.hpp"
#include "rank1/lab.hpp"

namespace rank1 {

// shortest round-trip decimal representation (deterministic on a platform)
std::string format_double(double x);

// canonical JSON payload: no wall-clock data, byte-stable for a fixed seed
std::string report_to_json(const CampaignReport& rep, bool include_timing = false);
std::string campaign_summary(const CampaignReport& rep);

std::string sphere_trace_csv(const FlowTrace& trace);
std::string curve_trace_csv(const CurveTrace& trace);
std::string curve_snapshots_csv(const CurveTrace& trace);
std::string pinch_scan_csv(const PinchScan& scan);
std::string pinch_scan_summary(const PinchScan& scan, const SpaceSpec& space);

std::string run_manifest_json(const SpaceSpec& space, const std::string& sub,
                              std::uint64_t seed, const std::string& params);

std::string margin_profile_csv(const std::vector<MarginProfileRow>& rows);

}  // namespace rank1
