#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "cssr/homogenize.hpp"
#include "cssr/ingest.hpp"
#include "cssr/machine.hpp"
#include "cssr/stat_tests.hpp"

namespace cssr {

struct ReconstructOptions {
    int lmax = 3;
    double alpha = 0.01;
    TestKind test = TestKind::Ks;
    HomogenizeOptions homogenize;
    bool trace = false;
};

struct Reconstruction {
    StateSet states;
    EpsilonMachine machine;
    /// State occupation probabilities (stationary when the machine is irreducible).
    std::vector<double> occupation;
    bool irreducible = true;
    double cmu = 0.0;
    double hmu = 0.0;
    std::size_t suffix_count = 0;   // suffixes kept by homogenize
    double min_suffix_support = 0.0;
    std::vector<double> suffix_supports;
    std::vector<std::string> trace;
    double ms_counts = 0.0;
    double ms_homogenize = 0.0;
    double ms_determinize = 0.0;
    double ms_total = 0.0;
};

/// Counts, homogenize, determinize, transition estimation and the summary
/// measures, on sampled data.
Reconstruction reconstruct(std::span<const SymbolSequence> seqs, const Alphabet& alphabet,
                           const ReconstructOptions& options);
/// Same, from precomputed statistics.
Reconstruction reconstruct(const SuffixStatistics& stats, const Alphabet& alphabet, const ReconstructOptions& options);

/// Entropy of the occupation distribution and the occupation-weighted morph entropy.
/// Equal to C_mu and h_mu for irreducible machines.
std::pair<double, double> occupation_measures(const EpsilonMachine& m, const std::vector<double>& occupation);

struct RunConfig {
    std::string command = "reconstruct";
    std::string alphabet = "01";
    int lmax = 3;
    double alpha = 0.01;
    TestKind test = TestKind::Ks;
    std::string input;
    SequenceFormat format = SequenceFormat::Chars;
    std::string output_dir = ".";
    std::uint64_t seed = 1;
    std::vector<std::size_t> grid_n;
    std::vector<int> grid_lmax;
    int reps = 30;
    std::string process = "even";
    std::size_t length = 10000;
    int depth = 6;
    double delta = 0.05;
    int threads = 1;
    bool trace = false;

    /// Throws BadParameter on out-of-range values.
    void validate() const;
};

nlohmann::json config_json(const RunConfig& config);

/// Report for a reconstruct run: config echo, states, transitions, measures,
/// error bounds, history-length advice and timings (under "timing").
nlohmann::json run_report(const RunConfig& config, const Reconstruction& r, std::size_t sample_length);

}  // namespace cssr
