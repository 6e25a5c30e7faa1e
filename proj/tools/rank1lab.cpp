// rank1lab: numerical laboratory for curvature pinching and reduced mean
// curvature flows in the rank-one symmetric families.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include <omp.h>

#include "rank1/config.hpp"
#include "rank1/report.hpp"

namespace fs = std::filesystem;
using namespace rank1;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // violations / domain diagnostics
constexpr int kExitUsage = 2;    // bad flags, bad config, bad values

void write_file(const std::string& path, const std::string& text) {
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << text;
}

struct CommonFlags {
    std::string config_file;
    std::vector<std::pair<std::string, std::string>> overrides;
};

RunConfig load_config(const CommonFlags& cf, const std::string& sub) {
    RunConfig cfg;
    if (!cf.config_file.empty()) cfg = RunConfig::from_file(cf.config_file);
    for (const auto& [k, v] : cf.overrides) cfg.merge_flag(k, v);
    cfg.validate(sub);
    const int threads = cfg.get_int("threads", 0);
    if (threads > 0) omp_set_num_threads(threads);
    return cfg;
}

void add_flag_option(CLI::App* cmd, CommonFlags& cf, const std::string& flag,
                     const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&cf, key](const std::string& v) { cf.overrides.emplace_back(key, v); }, help);
}

int cmd_verify_algebra(const RunConfig& cfg) {
    const auto seed = cfg.get_u64("seed", kDefaultSeed);
    const auto budget = cfg.get_u64("budget", 2000);
    const std::string glob = cfg.get("cases", "*");
    const auto registry = filter_cases(standard_registry(), glob);
    if (registry.empty()) throw ConfigError("no cases match '" + glob + "'");
    const CampaignReport rep = run_campaign(registry, seed, budget);
    const bool timing = cfg.get("timing", "0") == "1";
    const std::string payload = report_to_json(rep, timing);
    const std::string out = cfg.get("out", "");
    if (out.empty())
        std::cout << payload;
    else
        write_file(out, payload);
    std::cerr << campaign_summary(rep);
    return rep.all_passed() ? kExitOk : kExitFailure;
}

int cmd_flow_sphere(const RunConfig& cfg) {
    const SpaceSpec space = cfg.space();
    SphereFlowOptions opt;
    opt.eps = cfg.get_double("eps", 0.05);
    opt.sigma = cfg.get_double("sigma", 0.1);
    opt.stride = 16;
    const std::string outdir = cfg.get("out", "flow_out");
    std::vector<double> radii;
    const std::string sweep = cfg.get("sweep", "");
    if (!sweep.empty()) {
        // sweep syntax: r0=a:b:count
        const auto eq = sweep.find('=');
        if (eq == std::string::npos || sweep.substr(0, eq) != "r0")
            throw ConfigError("bad sweep spec (want r0=a:b:count): " + sweep);
        const std::string rest = sweep.substr(eq + 1);
        double a, b;
        int count;
        if (std::sscanf(rest.c_str(), "%lf:%lf:%d", &a, &b, &count) != 3 || count < 1)
            throw ConfigError("bad sweep spec (want r0=a:b:count): " + sweep);
        for (int i = 0; i < count; ++i)
            radii.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
    } else {
        if (!cfg.kv.count("r0")) throw ConfigError("flow-sphere needs --r0 or --sweep");
        radii.push_back(cfg.get_double("r0", 0.0));
    }
    for (double r0 : radii) {
        FlowTrace trace;
        try {
            trace = sphere_flow(space, r0, opt);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        char rtag[32];
        std::snprintf(rtag, sizeof(rtag), "%.6g", r0);
        write_file(outdir + "/trace_r0_" + rtag + ".csv", sphere_trace_csv(trace));
        std::cout << space.name() << " r0=" << format_double(r0);
        if (trace.blew_up) {
            std::cout << "  T_collapse=" << format_double(trace.t_collapse);
            if (space.sign < 0)
                std::cout << "  bound=" << format_double(trace.collapse_bound)
                          << (trace.t_collapse <= trace.collapse_bound + 1e-12 ? "  (within bound)"
                                                                               : "  (EXCEEDS bound)");
        } else {
            std::cout << "  no collapse before t_end (" << trace.note << ")";
        }
        std::cout << "\n";
    }
    std::ostringstream params;
    params << "r0-grid of " << radii.size() << " radii; eps=" << format_double(opt.eps)
           << " sigma=" << format_double(opt.sigma);
    write_file(outdir + "/manifest.json",
               run_manifest_json(space, "flow-sphere", cfg.get_u64("seed", kDefaultSeed),
                                 params.str()));
    return kExitOk;
}

int cmd_flow_curve(const RunConfig& cfg) {
    const double c = cfg.get_double("c", 1.0);
    const double r0 = cfg.get_double("r0", 0.3);
    const int vertices = cfg.get_int("vertices", 256);
    CurveFlowOptions opt;
    opt.t_end = cfg.get_double("tend", 1e9);
    opt.snapshot_stride = cfg.get_int("stride", 0);
    Polyline start;
    try {
        start = geodesic_circle(c, r0, vertices);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const CurveTrace trace = curve_flow(start, opt);
    const std::string outdir = cfg.get("out", "flow_out");
    write_file(outdir + "/curve_trace.csv", curve_trace_csv(trace));
    if (opt.snapshot_stride > 0)
        write_file(outdir + "/curve_snapshots.csv", curve_snapshots_csv(trace));
    std::ostringstream params;
    params << "circle r0=" << format_double(r0) << " vertices=" << vertices;
    write_file(outdir + "/manifest.json",
               run_manifest_json(make_space(Family::C, 1, 1, c), "flow-curve",
                                 cfg.get_u64("seed", kDefaultSeed), params.str()));
    if (trace.collapsed) {
        std::cout << "collapsed at T=" << format_double(trace.t_collapse)
                  << "  (closed-form circle value " << format_double(circle_collapse_time(c, r0))
                  << ")\n";
    } else if (trace.halted) {
        std::cout << "halted: " << trace.note << "\n";
    } else {
        std::cout << "reached t_end\n";
    }
    return trace.halted ? kExitFailure : kExitOk;
}

int cmd_pinch_scan(const RunConfig& cfg) {
    const SpaceSpec space = cfg.space();
    const int k = cfg.get_int("k", 1);
    if (space.family == Family::O && k >= 2) {
        std::cerr << "alpha undefined: the octonionic families with codimension >= 2 have a "
                     "negative pinching-normalization constant; no scan is possible\n";
        return kExitFailure;
    }
    if (space.family == Family::O) {
        std::cerr << "pointwise-only family: geodesic-sphere scans cover the C and H families\n";
        return kExitFailure;
    }
    if (k != 1) throw ConfigError("geodesic-sphere scans are codimension-one (k=1)");
    const double rmin = cfg.get_double("rmin", 0.05);
    const double rmax = cfg.get_double("rmax", space.sign > 0 ? 0.7 : 1.2);
    const int count = cfg.get_int("count", 40);
    if (!(rmin > 0.0) || !(rmax > rmin) || count < 2) throw ConfigError("bad radius grid");
    std::vector<double> radii;
    for (int i = 0; i < count; ++i) radii.push_back(rmin + (rmax - rmin) * i / (count - 1));
    PinchScan scan;
    try {
        scan = pinch_monitor_scan(space, radii, cfg.get_double("eps", 0.05));
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const std::string format = cfg.get("format", "csv");
    if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
    std::string payload;
    if (format == "csv") {
        payload = pinch_scan_csv(scan);
    } else {
        nlohmann::ordered_json j;
        j["kind"] = "pinch-scan";
        j["space"] = space.name();
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : scan.rows)
            j["rows"].push_back({{"r", row.r},
                                 {"normH2", row.H2},
                                 {"normh2", row.h2},
                                 {"normh02", row.h02},
                                 {"star_margin", row.star_margin},
                                 {"Qeps", row.q_eps},
                                 {"Kmin", row.K_min},
                                 {"muW", row.muW}});
        if (scan.has_critical) {
            j["r_critical"] = scan.r_critical;
            j["bracket"] = {scan.r_lo, scan.r_hi};
        }
        payload = j.dump(2) + "\n";
    }
    const std::string out = cfg.get("out", "");
    if (out.empty())
        std::cout << payload;
    else
        write_file(out, payload);
    std::cerr << pinch_scan_summary(scan, space);
    return kExitOk;
}

int cmd_report(const RunConfig& cfg) {
    const std::string in = cfg.get("report", "");
    if (in.empty()) throw ConfigError("report needs --in FILE (a campaign JSON report)");
    std::ifstream is(in);
    if (!is) throw ConfigError("cannot open " + in);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad report JSON: ") + e.what());
    }
    CampaignReport rep;
    rep.root_seed = j.at("seed").get<std::uint64_t>();
    rep.budget = j.at("budget").get<std::uint64_t>();
    for (const auto& cj : j.at("cases")) {
        CaseResult c;
        c.id = cj.at("id").get<std::string>();
        c.statement = cj.value("statement", "");
        c.executed = cj.at("executed").get<bool>();
        c.skip_reason = cj.value("skip_reason", "");
        c.informational = cj.value("informational", false);
        c.samples = cj.value("samples", std::uint64_t{0});
        c.skipped = cj.value("skipped", std::uint64_t{0});
        c.violations = cj.value("violations", std::uint64_t{0});
        c.worst_margin = cj.value("worst_margin", 0.0);
        c.worst_counter = cj.value("worst_counter", std::uint64_t{0});
        rep.cases.push_back(std::move(c));
    }
    std::cout << campaign_summary(rep);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory: curvature pinching and reduced mean curvature flows"};
    app.require_subcommand(1);

    CommonFlags cf;
    std::string sub;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", cf.config_file, "key=value or JSON config file");
        add_flag_option(cmd, cf, "--seed", "seed", "root seed (fixed default, not entropy)");
        add_flag_option(cmd, cf, "--out", "out", "output file or directory");
        add_flag_option(cmd, cf, "--space", "space", "space descriptor FAM[,n[,c]]");
        add_flag_option(cmd, cf, "--sign", "sign", "curvature sign {+,-}");
        add_flag_option(cmd, cf, "--n", "n", "F-dimension n");
        add_flag_option(cmd, cf, "--c", "c", "curvature scale c > 0");
        add_flag_option(cmd, cf, "--m", "m", "submanifold dimension");
        add_flag_option(cmd, cf, "--k", "k", "codimension");
        add_flag_option(cmd, cf, "--eps", "eps", "pinching slack epsilon");
        add_flag_option(cmd, cf, "--sigma", "sigma", "decay exponent sigma");
        add_flag_option(cmd, cf, "--format", "format", "output format {csv,json}");
    };

    auto* verify = app.add_subcommand("verify-algebra", "run the inequality campaigns");
    add_common(verify);
    add_flag_option(verify, cf, "--budget", "budget", "samples per case");
    add_flag_option(verify, cf, "--cases", "cases", "case id glob, e.g. 'L3.*'");
    add_flag_option(verify, cf, "--timing", "timing", "include wall-clock data in the JSON (1/0)");
    verify->callback([&] { sub = "verify-algebra"; });

    auto* fsphere = app.add_subcommand("flow-sphere", "integrate a geodesic-sphere flow");
    add_common(fsphere);
    add_flag_option(fsphere, cf, "--r0", "r0", "initial geodesic radius");
    add_flag_option(fsphere, cf, "--sweep", "sweep", "radius sweep r0=a:b:count");
    fsphere->callback([&] { sub = "flow-sphere"; });

    auto* fcurve = app.add_subcommand("flow-curve", "polyline curve shortening on the 2-sphere");
    add_common(fcurve);
    add_flag_option(fcurve, cf, "--r0", "r0", "geodesic circle radius");
    add_flag_option(fcurve, cf, "--vertices", "vertices", "polyline vertex count");
    add_flag_option(fcurve, cf, "--tend", "tend", "time horizon");
    add_flag_option(fcurve, cf, "--stride", "stride", "per-vertex snapshot stride (0: off)");
    fcurve->callback([&] { sub = "flow-curve"; });

    auto* pscan = app.add_subcommand("pinch-scan", "pinching margins over sphere radii");
    add_common(pscan);
    add_flag_option(pscan, cf, "--rmin", "rmin", "smallest radius");
    add_flag_option(pscan, cf, "--rmax", "rmax", "largest radius");
    add_flag_option(pscan, cf, "--count", "count", "grid size");
    pscan->callback([&] { sub = "pinch-scan"; });

    auto* rep = app.add_subcommand("report", "regenerate the human summary from a JSON report");
    rep->add_option_function<std::string>(
        "--in", [&cf](const std::string& v) { cf.overrides.emplace_back("report", v); },
        "campaign JSON report");
    rep->callback([&] { sub = "report"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        const RunConfig cfg = load_config(cf, sub);
        if (sub == "verify-algebra") return cmd_verify_algebra(cfg);
        if (sub == "flow-sphere") return cmd_flow_sphere(cfg);
        if (sub == "flow-curve") return cmd_flow_curve(cfg);
        if (sub == "pinch-scan") return cmd_pinch_scan(cfg);
        if (sub == "report") return cmd_report(cfg);
        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
