#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cssr/stat_tests.hpp"

namespace cssr {

struct BenchConfig {
    std::string process = "even";
    std::vector<std::size_t> grid_n{100, 1000, 10000, 100000, 1000000};
    std::vector<int> grid_lmax{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    int reps = 30;
    double alpha = 1e-3;
    TestKind test = TestKind::Ks;
    std::uint64_t seed = 1;
    int threads = 1;
    int word_length = 10;
};

struct BenchRow {
    std::string process;
    std::size_t n = 0;
    int lmax = 0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    bool mean = false;   // per-cell mean row
    bool ok = true;      // for mean rows: at least one run succeeded
    double n_states = 0.0;
    double cmu = 0.0;
    double hmu = 0.0;
    double vd = 0.0;
    double vd_scaled = 0.0;
    double ms = 0.0;
    /// Run rows: inferred machine has the generating machine's topology.
    /// Mean rows: fraction of runs that did.
    double correct = 0.0;
};

/// Seed of realisation `rep` at sample length n. Shared across lmax values so
/// one cell column reuses the same data.
std::uint64_t realization_seed(std::uint64_t base, std::size_t n, int rep);

/// Runs every (N, lmax) cell for `reps` seeded realisations. Rows come back
/// in (N, lmax, rep) order with one mean row after each cell, regardless of
/// the number of threads.
std::vector<BenchRow> run_benchmark(const BenchConfig& config);

/// process,N,lmax,alpha,seed,status,n_states,cmu,hmu,vd_L10,vd_scaled,ms_elapsed
std::string benchmark_csv(const std::vector<BenchRow>& rows);

}  // namespace cssr
