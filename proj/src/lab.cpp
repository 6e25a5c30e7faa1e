#include "rank1/lab.hpp"

#include <omp.h>

#include <chrono>
#include <cstdlib>

#include "rank1/codazzi.hpp"
#include "rank1/shape.hpp"

namespace rank1 {

bool CampaignReport::all_passed() const {
    for (const auto& c : cases)
        if (c.executed && !c.informational && c.violations > 0) return false;
    return true;
}

namespace {

std::string config_problem(const LemmaCase& lc) {
    for (const auto& cfg : lc.configs) {
        if (lc.needs_ambient && cfg.m + cfg.k != cfg.space.real_dim())
            return "m + k does not match the ambient dimension";
        if (cfg.k > cfg.m) return "hypothesis needs k <= m";
        if (cfg.m < 2) return "hypothesis needs m >= 2";
    }
    if (lc.configs.empty()) return "no hypothesis configurations";
    return {};
}

CaseResult run_case(const LemmaCase& lc, std::uint64_t root_seed, std::uint64_t budget,
                    bool parallel) {
    CaseResult res;
    res.id = lc.id;
    res.statement = lc.statement;
    res.informational = lc.informational;
    res.skip_reason = config_problem(lc);
    if (!res.skip_reason.empty()) return res;
    res.executed = true;

    const std::uint64_t stream = fnv1a(lc.id.c_str());
    const std::int64_t n = static_cast<std::int64_t>(budget);
    double worst = std::numeric_limits<double>::infinity();
    std::uint64_t worst_counter = 0;
    std::uint64_t violations = 0;
    std::uint64_t skipped = 0;

#pragma omp parallel if (parallel)
    {
        double w = std::numeric_limits<double>::infinity();
        std::uint64_t wc = 0;
        std::uint64_t viol = 0, skip = 0;
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < n; ++i) {
            const auto counter = static_cast<std::uint64_t>(i);
            SampleRng rng(root_seed, stream, counter);
            const SampleOutcome out = lc.eval(counter % lc.configs.size(), rng, 1.0);
            if (!out.applicable) {
                ++skip;
                continue;
            }
            if (out.margin < -lc.tolerance) ++viol;
            if (out.margin < w || (out.margin == w && counter < wc)) {
                w = out.margin;
                wc = counter;
            }
        }
#pragma omp critical
        {
            if (w < worst || (w == worst && wc < worst_counter)) {
                worst = w;
                worst_counter = wc;
            }
            violations += viol;
            skipped += skip;
        }
    }

    res.samples = budget - skipped;
    res.skipped = skipped;
    res.violations = violations;
    res.worst_margin = worst;
    res.worst_counter = worst_counter;

    if (violations > 0) {
        // shrink the witness toward the umbilic configuration: halve the
        // sampled magnitudes while the violation persists
        double scale = 1.0;
        double margin = worst;
        for (int it = 0; it < 40; ++it) {
            const double next = scale * 0.5;
            SampleRng rng(root_seed, stream, worst_counter);
            const SampleOutcome out = lc.eval(worst_counter % lc.configs.size(), rng, next);
            if (!out.applicable || out.margin >= -lc.tolerance) break;
            scale = next;
            margin = out.margin;
        }
        res.witness_scale = scale;
        res.witness_margin = margin;
        const auto& wc = lc.configs[worst_counter % lc.configs.size()];
        res.witness_family = family_name(wc.space.family) + std::string(wc.space.sign > 0 ? "P" : "H");
        res.witness_m = wc.m;
        res.witness_k = wc.k;
    }
    return res;
}

CampaignReport run_impl(const std::vector<LemmaCase>& registry, std::uint64_t root_seed,
                        std::uint64_t budget, bool parallel) {
    if (budget == 0) throw std::invalid_argument("campaign budget must be positive");
    if (registry.empty()) throw std::invalid_argument("campaign registry is empty");
    if (const char* cap = std::getenv("RANK1_LAB_THREADS")) {
        const int v = std::atoi(cap);
        if (v > 0) omp_set_num_threads(v);
    }
    const auto t0 = std::chrono::steady_clock::now();
    CampaignReport rep;
    rep.root_seed = root_seed;
    rep.budget = budget;
    for (const auto& lc : registry) rep.cases.push_back(run_case(lc, root_seed, budget, parallel));
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace

CampaignReport run_campaign(const std::vector<LemmaCase>& registry, std::uint64_t root_seed,
                            std::uint64_t budget) {
    return run_impl(registry, root_seed, budget, true);
}

CampaignReport run_campaign_serial(const std::vector<LemmaCase>& registry,
                                   std::uint64_t root_seed, std::uint64_t budget) {
    return run_impl(registry, root_seed, budget, false);
}

std::vector<LemmaCase> filter_cases(const std::vector<LemmaCase>& registry,
                                    const std::string& glob) {
    auto match = [](const std::string& pat, const std::string& s) {
        // tiny glob: '*' matches any run of characters
        std::function<bool(size_t, size_t)> rec = [&](size_t pi, size_t si) -> bool {
            while (pi < pat.size()) {
                if (pat[pi] == '*') {
                    for (size_t skip = 0; si + skip <= s.size(); ++skip)
                        if (rec(pi + 1, si + skip)) return true;
                    return false;
                }
                if (si >= s.size() || pat[pi] != s[si]) return false;
                ++pi;
                ++si;
            }
            return si == s.size();
        };
        return rec(0, 0);
    };
    std::vector<LemmaCase> out;
    for (const auto& lc : registry)
        if (match(glob, lc.id)) out.push_back(lc);
    return out;
}

std::vector<MarginProfileRow> margin_profile(const std::vector<int>& ds,
                                             const std::vector<int>& ms, double eps) {
    std::vector<MarginProfileRow> rows;
    for (int d : ds)
        for (int m : ms) {
            if (m < 2) continue;
            MarginProfileRow r;
            r.d = d;
            r.m = m;
            r.omega_coeff = omega_term_coefficient(d, m);
            r.gradient_gap_coeff = gradient_gap_coefficient(d, m, eps);
            r.alpha_k2 = alpha_k2_formula(d, m);
            r.threshold_ok = m >= mean_gradient_threshold(d);
            r.grad_usable = r.threshold_ok && r.gradient_gap_coeff >= 0.0;
            rows.push_back(r);
        }
    return rows;
}

}  // namespace rank1
