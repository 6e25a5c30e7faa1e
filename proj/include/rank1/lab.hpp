#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rank1/ambient.hpp"

namespace rank1 {

// One hypothesis configuration a case cycles through.
struct CaseConfig {
    SpaceSpec space;
    int m = 0, k = 0;
    double eps = 0.05;
};

struct SampleOutcome {
    double margin = 0.0;     // >= 0 means the inequality holds for this draw
    bool applicable = true;  // false: precondition not met, draw is skipped
};

struct LemmaCase {
    std::string id;
    std::string statement;  // human-readable description of the inequality
    std::vector<CaseConfig> configs;
    double tolerance = 1e-9;
    bool informational = false;  // reported but never fails the campaign
    bool needs_ambient = false;  // enforce m + k = dn on every config
    // eval(config index, rng, scale): `scale` shrinks the traceless data
    // toward the umbilic configuration when minimizing a witness (1.0 for
    // normal runs)
    std::function<SampleOutcome(std::size_t, SampleRng&, double)> eval;
};

struct CaseResult {
    std::string id;
    std::string statement;
    bool executed = false;
    std::string skip_reason;
    std::uint64_t samples = 0;
    std::uint64_t skipped = 0;
    std::uint64_t violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::uint64_t worst_counter = 0;
    bool informational = false;
    // populated only when a violation was found and minimized
    double witness_scale = 1.0;
    double witness_margin = 0.0;
    std::string witness_family;
    int witness_m = 0, witness_k = 0;
};

struct CampaignReport {
    std::uint64_t root_seed = 0;
    std::uint64_t budget = 0;
    std::vector<CaseResult> cases;
    double runtime_seconds = 0.0;  // never part of the canonical serialization

    bool all_passed() const;
};

// Runs every case: OpenMP-parallel sampling with counter-based seeds, so the
// report is bit-identical for any thread count.
CampaignReport run_campaign(const std::vector<LemmaCase>& registry, std::uint64_t root_seed,
                            std::uint64_t budget);
// Serial reference path, kept for testing the parallel kernels against.
CampaignReport run_campaign_serial(const std::vector<LemmaCase>& registry,
                                   std::uint64_t root_seed, std::uint64_t budget);

// The standard registry and the manifest of ids it must cover.
std::vector<LemmaCase> standard_registry();
std::vector<std::string> registry_manifest();
std::vector<LemmaCase> filter_cases(const std::vector<LemmaCase>& registry,
                                    const std::string& glob);

// Coefficient profile across a dimension grid (threshold exploration).
struct MarginProfileRow {
    int d = 0, m = 0;
    double omega_coeff = 0.0;   // omega-term coefficient from the proof
    double gradient_gap_coeff = 0.0;   // 2(10-d)/(9(m+2)) - 1/(m-1+eps)
    double alpha_k2 = 0.0;        // ((11-2d)m-19)/(9m(m+2))
    bool threshold_ok = false;      // m reaches the family threshold
    bool grad_usable = false;     // threshold_ok && gradient_gap_coeff >= 0
};
std::vector<MarginProfileRow> margin_profile(const std::vector<int>& ds,
                                             const std::vector<int>& ms, double eps);

}  // namespace rank1
