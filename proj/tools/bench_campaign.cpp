// Compares the serial reference campaign runner against the OpenMP kernels
// and checks that both produce identical reports.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "rank1/lab.hpp"
#include "rank1/report.hpp"

using namespace rank1;

int main(int argc, char** argv) {
    std::uint64_t budget = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4000;
    const std::uint64_t seed = 0xbe9cULL;
    const auto registry = standard_registry();

    const auto t0 = std::chrono::steady_clock::now();
    const CampaignReport serial = run_campaign_serial(registry, seed, budget);
    const auto t1 = std::chrono::steady_clock::now();
    const CampaignReport parallel = run_campaign(registry, seed, budget);
    const auto t2 = std::chrono::steady_clock::now();

    const double ts = std::chrono::duration<double>(t1 - t0).count();
    const double tp = std::chrono::duration<double>(t2 - t1).count();

    const bool identical = report_to_json(serial) == report_to_json(parallel);
    std::printf("budget per case : %llu\n", static_cast<unsigned long long>(budget));
    std::printf("threads         : %d\n", omp_get_max_threads());
    std::printf("serial          : %.3f s\n", ts);
    std::printf("openmp          : %.3f s\n", tp);
    std::printf("speedup         : %.2fx\n", ts / tp);
    std::printf("reports match   : %s\n", identical ? "yes" : "NO");
    std::printf("%-16s %12s %12s\n", "case", "violations", "worst");
    for (const auto& c : serial.cases) {
        if (!c.executed) continue;
        std::printf("%-16s %12llu %12.3e\n", c.id.c_str(),
                    static_cast<unsigned long long>(c.violations), c.worst_margin);
    }
    return identical ? 0 : 1;
}
