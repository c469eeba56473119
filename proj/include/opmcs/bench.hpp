#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace opmcs {

struct BenchRow {
    int size = 0;
    double ratio = 0.0;
    double block_size = 0.0;
    int reps = 0;
    double mean_ms = 0.0;
    double sd_ms = 0.0;
};

// Times bbp_mcis on reps generated pairs per size (uniform weights, single
// label). Generation and parsing are outside the clock; every pair's seeds
// derive from seed, so reruns time the same inputs.
std::vector<BenchRow> run_bench(const std::vector<int>& sizes, double ratio, double block_size,
                                int reps, std::uint64_t seed);

// Header line "size,ratio,block_size,reps,mean_ms,sd_ms" plus one row each.
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace opmcs
