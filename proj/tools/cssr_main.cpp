#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cssr/baseline_subtree.hpp"
#include "cssr/bench.hpp"
#include "cssr/errors.hpp"
#include "cssr/oracle.hpp"
#include "cssr/pipeline.hpp"
#include "cssr/simulate.hpp"

namespace fs = std::filesystem;
using namespace cssr;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("failed writing " + path.string());
}

std::vector<SymbolSequence> load_or_simulate(const RunConfig& c, const Alphabet& alphabet) {
    if (!c.input.empty()) return load_multisequence(c.input, alphabet, c.format);
    return {simulate(builtin_process(c.process), c.length, c.seed)};
}

int cmd_reconstruct(const RunConfig& c) {
    const auto alphabet = Alphabet::parse(c.alphabet);
    if (c.input.empty()) throw BadParameter("reconstruct needs --input");
    const auto seqs = load_multisequence(c.input, alphabet, c.format);
    std::size_t total = 0;
    for (const auto& s : seqs) total += s.size();

    ReconstructOptions options;
    options.lmax = c.lmax;
    options.alpha = c.alpha;
    options.test = c.test;
    options.trace = c.trace;
    const auto r = reconstruct(seqs, alphabet, options);

    const fs::path dir = c.output_dir;
    auto report = run_report(c, r, total);
    if (c.trace) report["trace"] = r.trace;
    write_file(dir / "report.json", report.dump(2) + "\n");
    write_file(dir / "machine.json", export_machine(r.machine, ExportFormat::Json));
    write_file(dir / "machine.dot", export_machine(r.machine, ExportFormat::Dot));
    std::cout << "states " << r.machine.size() << "  Cmu " << r.cmu << "  hmu " << r.hmu << "\n";
    for (const auto& w : report["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
    return 0;
}

int cmd_simulate(const RunConfig& c) {
    const auto spec = builtin_process(c.process);
    const auto seq = simulate(spec, c.length, c.seed);
    const fs::path out = fs::path(c.output_dir) / "sequence.txt";
    write_file(out, render_sequence(seq, spec.machine.alphabet(), c.format) + "\n");
    std::cout << "wrote " << seq.size() << " symbols to " << out.string() << "\n";
    return 0;
}

int cmd_oracle(const RunConfig& c) {
    const auto spec = builtin_process(c.process);
    const auto set = exact_reconstruct(spec.machine, c.lmax);
    ExactStatistics stats(spec.machine, c.lmax);
    const auto machine = estimate_transitions(set, stats, spec.machine.alphabet());

    nlohmann::json partition = nlohmann::json::array();
    for (const auto& cls : set.partition()) {
        nlohmann::json words = nlohmann::json::array();
        for (const auto& w : cls) words.push_back(spec.machine.alphabet().render(w));
        partition.push_back(words);
    }
    nlohmann::json out = {{"process", c.process},
                          {"lmax", c.lmax},
                          {"synchronization_length", synchronization_length(spec.machine)},
                          {"n_states", set.size()},
                          {"partition", partition}};
    const fs::path dir = c.output_dir;
    write_file(dir / "partition.json", out.dump(2) + "\n");
    write_file(dir / "machine.json", export_machine(machine, ExportFormat::Json));
    write_file(dir / "machine.dot", export_machine(machine, ExportFormat::Dot));
    std::cout << "states " << set.size() << "\n";
    return 0;
}

int cmd_baseline(const RunConfig& c) {
    const auto alphabet = c.input.empty() ? builtin_process(c.process).machine.alphabet() : Alphabet::parse(c.alphabet);
    const auto seqs = load_or_simulate(c, alphabet);
    const auto model = subtree_merge(seqs, alphabet.size(), c.depth, c.delta);
    const fs::path dir = c.output_dir;
    write_file(dir / "baseline.json", export_subtree(model, alphabet, ExportFormat::Json));
    write_file(dir / "baseline.dot", export_subtree(model, alphabet, ExportFormat::Dot));
    std::cout << "classes " << model.classes.size() << "  recurrent " << model.recurrent_count()
              << "  deterministic " << (model.deterministic ? "yes" : "no") << "\n";
    return 0;
}

int cmd_benchmark(const RunConfig& c, bool alpha_given) {
    BenchConfig b;
    b.process = c.process;
    if (!c.grid_n.empty()) b.grid_n = c.grid_n;
    if (!c.grid_lmax.empty()) b.grid_lmax = c.grid_lmax;
    b.reps = c.reps;
    b.alpha = alpha_given ? c.alpha : 1e-3;
    b.test = c.test;
    b.seed = c.seed;
    b.threads = c.threads;
    const auto rows = run_benchmark(b);
    const fs::path out = fs::path(c.output_dir) / "benchmark.csv";
    write_file(out, benchmark_csv(rows));
    std::cout << "wrote " << rows.size() << " rows to " << out.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Causal-state splitting reconstruction of epsilon-machines"};
    app.require_subcommand(1);

    RunConfig config;
    std::string test_name = "ks";
    std::string format_name = "chars";

    auto* reconstruct = app.add_subcommand("reconstruct", "Infer a machine from symbol sequences");
    auto* simulate_cmd = app.add_subcommand("simulate", "Sample a builtin process");
    auto* benchmark = app.add_subcommand("benchmark", "Run a seeded (N, lmax) grid and write benchmark.csv");
    auto* oracle = app.add_subcommand("oracle", "Exact causal-state partition of a builtin process");
    auto* baseline = app.add_subcommand("baseline", "Subtree-merging reconstruction");

    CLI::Option* alpha_opt = nullptr;
    for (auto* sub : {reconstruct, simulate_cmd, benchmark, oracle, baseline}) {
        sub->add_option("--alphabet", config.alphabet, "Symbols, e.g. 01 or a,b,c")->capture_default_str();
        sub->add_option("--lmax", config.lmax, "Longest history length")->capture_default_str();
        auto* a = sub->add_option("--alpha", config.alpha, "Significance level (benchmark default 1e-3)")
                      ->capture_default_str();
        if (sub == benchmark) alpha_opt = a;
        sub->add_option("--test", test_name, "ks or chisq")->capture_default_str();
        sub->add_option("--input", config.input, "Sequence file (blank lines separate sequences)");
        sub->add_option("--format", format_name, "chars or tokens")->capture_default_str();
        sub->add_option("--output-dir", config.output_dir, "Directory for output files")->capture_default_str();
        sub->add_option("--seed", config.seed, "Random seed")->capture_default_str();
        sub->add_option("--grid-n", config.grid_n, "Sample lengths for the benchmark grid")->delimiter(',');
        sub->add_option("--grid-lmax", config.grid_lmax, "History lengths for the benchmark grid")->delimiter(',');
        sub->add_option("--reps", config.reps, "Realisations per grid cell")->capture_default_str();
        sub->add_option("--process", config.process, "even, iid(p), period(p), golden_mean(p)")->capture_default_str();
        sub->add_option("--length", config.length, "Simulated sequence length")->capture_default_str();
        sub->add_option("--depth", config.depth, "Subtree depth D (even)")->capture_default_str();
        sub->add_option("--delta", config.delta, "Subtree merge tolerance")->capture_default_str();
        sub->add_option("--threads", config.threads, "Benchmark worker threads")->capture_default_str();
        sub->add_flag("--trace", config.trace, "Record homogenize/determinize decisions in the report");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        config.test = parse_test_kind(test_name);
        config.format = parse_format(format_name);
        auto* chosen = app.get_subcommands().front();
        config.command = chosen->get_name();
        config.validate();
        if (chosen == reconstruct) return cmd_reconstruct(config);
        if (chosen == simulate_cmd) return cmd_simulate(config);
        if (chosen == oracle) return cmd_oracle(config);
        if (chosen == baseline) return cmd_baseline(config);
        return cmd_benchmark(config, alpha_opt->count() > 0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
