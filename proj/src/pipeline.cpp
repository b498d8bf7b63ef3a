#include "cssr/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "cssr/count_store.hpp"
#include "cssr/determinize.hpp"
#include "cssr/diagnostics.hpp"
#include "cssr/errors.hpp"

namespace cssr {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

std::pair<double, double> occupation_measures(const EpsilonMachine& m, const std::vector<double>& occupation) {
    double hmu = 0.0;
    std::vector<double> morph(m.alphabet_size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t s = 0; s < m.alphabet_size(); ++s) morph[s] = m.emission(i, static_cast<Symbol>(s));
        hmu += occupation[i] * entropy(morph);
    }
    return {entropy(occupation), hmu};
}

Reconstruction reconstruct(const SuffixStatistics& stats, const Alphabet& alphabet, const ReconstructOptions& options) {
    const auto start = Clock::now();
    SignificanceComparator comparator(options.test, options.alpha);
    std::vector<std::string> trace;
    auto* sink = options.trace ? &trace : nullptr;

    auto t = Clock::now();
    StateSet set = homogenize(stats, options.lmax, comparator, options.homogenize, sink);
    const double ms_h = ms_since(t);

    std::vector<double> supports;
    for (const auto& [w, id] : set.assignments()) supports.push_back(stats.support(w));
    const std::size_t suffixes = supports.size();

    t = Clock::now();
    determinize(set, stats, sink);
    const double ms_d = ms_since(t);

    EpsilonMachine machine = estimate_transitions(set, stats, alphabet);
    const auto occupation = occupation_distribution(machine);
    bool irreducible = true;
    try {
        stationary_distribution(machine);
    } catch (const Reducible&) {
        irreducible = false;
    }
    const auto [cmu, hmu] = occupation_measures(machine, occupation);

    Reconstruction r{std::move(set), std::move(machine), occupation, irreducible, cmu, hmu, suffixes,
                     supports.empty() ? 0.0 : *std::min_element(supports.begin(), supports.end()),
                     std::move(supports), std::move(trace)};
    r.ms_homogenize = ms_h;
    r.ms_determinize = ms_d;
    r.ms_total = ms_since(start);
    return r;
}

Reconstruction reconstruct(std::span<const SymbolSequence> seqs, const Alphabet& alphabet,
                           const ReconstructOptions& options) {
    const auto start = Clock::now();
    const CountStore store = CountStore::build(seqs, alphabet.size(), options.lmax);
    const double ms_counts = ms_since(start);
    Reconstruction r = reconstruct(store, alphabet, options);
    r.ms_counts = ms_counts;
    r.ms_total = ms_since(start);
    return r;
}

void RunConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw BadParameter("alpha must lie in (0, 1)");
    if (lmax < 1) throw BadParameter("lmax must be >= 1");
    if (reps < 1) throw BadParameter("reps must be >= 1");
    if (threads < 1) throw BadParameter("threads must be >= 1");
    for (int l : grid_lmax)
        if (l < 1) throw BadParameter("grid lmax values must be >= 1");
    for (auto n : grid_n)
        if (n < 1) throw BadParameter("grid N values must be >= 1");
}

nlohmann::json config_json(const RunConfig& c) {
    return {{"command", c.command},
            {"alphabet", c.alphabet},
            {"lmax", c.lmax},
            {"alpha", c.alpha},
            {"test", to_string(c.test)},
            {"input", c.input},
            {"format", c.format == SequenceFormat::Chars ? "chars" : "tokens"},
            {"output_dir", c.output_dir},
            {"seed", c.seed},
            {"grid_n", c.grid_n},
            {"grid_lmax", c.grid_lmax},
            {"reps", c.reps},
            {"process", c.process},
            {"length", c.length},
            {"depth", c.depth},
            {"delta", c.delta}};
}

nlohmann::json run_report(const RunConfig& config, const Reconstruction& r, std::size_t sample_length) {
    const auto& m = r.machine;
    nlohmann::json j;
    j["config"] = config_json(config);
    j["sample_length"] = sample_length;
    j["n_states"] = m.size();
    j["irreducible"] = r.irreducible;
    j["cmu"] = r.cmu;
    j["hmu"] = r.hmu;

    j["states"] = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        nlohmann::json suffixes = nlohmann::json::array();
        for (const auto& w : m.states()[i].suffixes) suffixes.push_back(m.alphabet().render(w));
        nlohmann::json morph = nlohmann::json::array();
        for (std::size_t s = 0; s < m.alphabet_size(); ++s) morph.push_back(m.emission(i, static_cast<Symbol>(s)));
        j["states"].push_back({{"id", m.states()[i].id},
                               {"suffixes", suffixes},
                               {"occupation", r.occupation[i]},
                               {"morph", morph}});
    }
    j["transitions"] = nlohmann::json::parse(export_machine(m, ExportFormat::Json))["transitions"];

    const int k = static_cast<int>(m.alphabet_size());
    const double t = 0.1;
    ErrorBoundInputs inputs;
    inputs.k = k;
    inputs.s = static_cast<double>(std::max<std::size_t>(r.suffix_count, 1));
    inputs.m = std::max(1.0, r.min_suffix_support);
    inputs.t = t;
    for (double n : r.suffix_supports) inputs.n_vec.push_back(std::max(1.0, n));
    const auto bound = collective_error_bound(inputs);
    const double h_bound = std::log2(static_cast<double>(std::max(k, 2)));
    const int advised = sample_length >= 2 ? lmax_advisor(static_cast<double>(sample_length), h_bound, 0.1) : 0;

    nlohmann::json warnings = nlohmann::json::array();
    if (config.lmax > advised)
        warnings.push_back("lmax " + std::to_string(config.lmax) + " exceeds the advised maximum " +
                           std::to_string(advised) + " for this sample length");
    if (!r.irreducible) warnings.push_back("inferred machine has several closed classes");

    j["diagnostics"] = {{"tolerance", t},
                        {"suffix_count", r.suffix_count},
                        {"min_suffix_count", r.min_suffix_support},
                        {"collective_error_bound", bound.uniform},
                        {"per_suffix_error_bound", bound.per_suffix.value_or(bound.uniform)},
                        {"entropy_rate_bound", h_bound},
                        {"advised_lmax", advised}};
    j["warnings"] = warnings;
    j["timing"] = {{"ms_counts", r.ms_counts},
                   {"ms_homogenize", r.ms_homogenize},
                   {"ms_determinize", r.ms_determinize},
                   {"ms_total", r.ms_total}};
    return j;
}

}  // namespace cssr
