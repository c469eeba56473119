#include "opmcs/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "opmcs/bbp.hpp"
#include "opmcs/generator.hpp"
#include "opmcs/weights.hpp"

namespace opmcs {

std::vector<BenchRow> run_bench(const std::vector<int>& sizes, double ratio, double block_size,
                                int reps, std::uint64_t seed) {
    using clock = std::chrono::steady_clock;
    const WeightFn w = WeightFn::uniform();
    std::vector<BenchRow> rows;
    rows.reserve(sizes.size());
    for (int n : sizes) {
        const std::uint64_t base = seed + static_cast<std::uint64_t>(n) * 0x9E3779B97F4A7C15ULL;
        double sum = 0.0, sumsq = 0.0;
        for (int i = 0; i < reps; ++i) {
            LabeledGraph a = gen_outerplanar(n, ratio, block_size, 1, base + 2ULL * i);
            LabeledGraph b = gen_outerplanar(n, ratio, block_size, 1, base + 2ULL * i + 1);
            auto t0 = clock::now();
            bbp_mcis(a, b, w);
            auto t1 = clock::now();
            double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            sum += ms;
            sumsq += ms * ms;
        }
        BenchRow row{n, ratio, block_size, reps, 0.0, 0.0};
        if (reps > 0) {
            row.mean_ms = sum / reps;
            if (reps > 1) {
                double var = (sumsq - sum * sum / reps) / (reps - 1);
                row.sd_ms = var > 0.0 ? std::sqrt(var) : 0.0;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "size,ratio,block_size,reps,mean_ms,sd_ms\n";
    char buf[160];
    for (const BenchRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%g,%g,%d,%.6f,%.6f\n", r.size, r.ratio, r.block_size,
                      r.reps, r.mean_ms, r.sd_ms);
        os << buf;
    }
    return os.str();
}

}  // namespace opmcs
