#include "rank1/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace rank1 {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

ordered_json case_json(const CaseResult& c) {
    ordered_json j;
    j["id"] = c.id;
    j["statement"] = c.statement;
    j["executed"] = c.executed;
    if (!c.executed) j["skip_reason"] = c.skip_reason;
    j["informational"] = c.informational;
    j["samples"] = c.samples;
    j["skipped"] = c.skipped;
    j["violations"] = c.violations;
    if (c.executed && c.samples > 0) {
        j["worst_margin"] = c.worst_margin;
        j["worst_counter"] = c.worst_counter;
    }
    if (c.violations > 0) {
        j["witness"] = ordered_json{{"lemma", c.id},
                                    {"counter", c.worst_counter},
                                    {"family", c.witness_family},
                                    {"m", c.witness_m},
                                    {"k", c.witness_k},
                                    {"margin", c.witness_margin},
                                    {"shrink_scale", c.witness_scale}};
    }
    return j;
}

}  // namespace

std::string report_to_json(const CampaignReport& rep, bool include_timing) {
    ordered_json j;
    j["kind"] = "campaign-report";
    j["seed"] = rep.root_seed;  // witnesses reproduce from (seed, case id, counter)
    j["budget"] = rep.budget;
    j["passed"] = rep.all_passed();
    j["cases"] = ordered_json::array();
    for (const auto& c : rep.cases) j["cases"].push_back(case_json(c));
    if (include_timing) j["runtime_seconds"] = rep.runtime_seconds;
    return j.dump(2) + "\n";
}

std::string campaign_summary(const CampaignReport& rep) {
    std::ostringstream os;
    os << "campaign: seed=" << rep.root_seed << " budget=" << rep.budget << "\n";
    os << "  " << (rep.all_passed() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : rep.cases) {
        os << "  [" << (c.executed ? (c.violations == 0 ? (c.informational ? "info" : "ok  ")
                                                        : (c.informational ? "info" : "FAIL"))
                                   : "skip")
           << "] " << c.id;
        if (c.executed && c.samples == 0) {
            os << "  (no applicable draws)";
        } else if (c.executed) {
            os << "  worst_margin=" << format_double(c.worst_margin)
               << "  violations=" << c.violations << "/" << c.samples;
            if (c.violations > 0)
                os << "  witness_counter=" << c.worst_counter
                   << " shrink=" << format_double(c.witness_scale);
        } else {
            os << "  (" << c.skip_reason << ")";
        }
        os << "\n";
    }
    return os.str();
}

std::string sphere_trace_csv(const FlowTrace& trace) {
    std::ostringstream os;
    os << "t,r,normH2,normh2,normh02,Q0,Qeps,W,fsigma,Kmin,myers_diam\n";
    for (const auto& s : trace.samples) {
        os << format_double(s.t) << ',' << format_double(s.r) << ',' << format_double(s.H2)
           << ',' << format_double(s.h2) << ',' << format_double(s.h02) << ','
           << format_double(s.Q0) << ',' << format_double(s.Qeps) << ',' << format_double(s.W)
           << ',' << format_double(s.f_sigma) << ',' << format_double(s.K_min) << ','
           << format_double(s.myers_diam) << "\n";
    }
    return os.str();
}

std::string curve_trace_csv(const CurveTrace& trace) {
    std::ostringstream os;
    os << "t,length,diameter,kappa2_ds,roundness\n";
    for (const auto& s : trace.samples) {
        os << format_double(s.t) << ',' << format_double(s.length) << ','
           << format_double(s.diameter) << ',' << format_double(s.kappa2_ds) << ','
           << format_double(s.roundness) << "\n";
    }
    return os.str();
}

std::string curve_snapshots_csv(const CurveTrace& trace) {
    std::ostringstream os;
    os << "t,vertex,x,y,z\n";
    for (const auto& snap : trace.snapshots) {
        for (int i = 0; i < snap.pts.rows(); ++i) {
            os << format_double(snap.t) << ',' << i << ',' << format_double(snap.pts(i, 0))
               << ',' << format_double(snap.pts(i, 1)) << ',' << format_double(snap.pts(i, 2))
               << "\n";
        }
    }
    return os.str();
}

std::string pinch_scan_csv(const PinchScan& scan) {
    std::ostringstream os;
    os << "r,normH2,normh2,normh02,star_margin,Qeps,Kmin,muW,myers_diam\n";
    for (const auto& row : scan.rows) {
        os << format_double(row.r) << ',' << format_double(row.H2) << ','
           << format_double(row.h2) << ',' << format_double(row.h02) << ','
           << format_double(row.star_margin) << ',' << format_double(row.q_eps) << ','
           << format_double(row.K_min) << ',' << format_double(row.muW) << ','
           << format_double(row.myers_diam) << "\n";
    }
    return os.str();
}

std::string pinch_scan_summary(const PinchScan& scan, const SpaceSpec& space) {
    std::ostringstream os;
    os << "pinch scan for " << space.name() << " over " << scan.rows.size() << " radii\n";
    if (scan.has_critical) {
        os << "  critical radius r* = " << format_double(scan.r_critical) << "  bracketed in ["
           << format_double(scan.r_lo) << ", " << format_double(scan.r_hi) << "]\n";
    } else {
        os << "  no sign change of the pinching margin on this grid\n";
    }
    return os.str();
}

std::string run_manifest_json(const SpaceSpec& space, const std::string& sub,
                              std::uint64_t seed, const std::string& params) {
    ordered_json j;
    j["kind"] = "run-manifest";
    j["subcommand"] = sub;
    j["space"] = ordered_json{{"family", family_name(space.family)},
                              {"sign", space.sign},
                              {"n", space.n},
                              {"c", space.c}};
    j["seed"] = seed;
    j["params"] = params;
    j["version"] = 1;
    return j.dump(2) + "\n";
}

std::string margin_profile_csv(const std::vector<MarginProfileRow>& rows) {
    std::ostringstream os;
    os << "d,m,omega_coeff,gradient_gap_coeff,alpha_k2,threshold_ok,grad_usable\n";
    for (const auto& r : rows) {
        os << r.d << ',' << r.m << ',' << format_double(r.omega_coeff) << ','
           << format_double(r.gradient_gap_coeff) << ',' << format_double(r.alpha_k2) << ','
           << (r.threshold_ok ? 1 : 0) << ',' << (r.grad_usable ? 1 : 0) << "\n";
    }
    return os.str();
}

}  // namespace rank1
