#include "cssr/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "cssr/errors.hpp"
#include "cssr/pipeline.hpp"
#include "cssr/simulate.hpp"

namespace cssr {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Job {
    std::size_t n;
    int lmax;
    int rep;
};

BenchRow run_one(const BenchConfig& config, const ProcessSpec& spec, const Distribution& truth, const Job& job) {
    BenchRow row;
    row.process = config.process;
    row.n = job.n;
    row.lmax = job.lmax;
    row.alpha = config.alpha;
    row.seed = realization_seed(config.seed, job.n, job.rep);

    const auto start = std::chrono::steady_clock::now();
    const auto seq = simulate(spec, job.n, row.seed);
    ReconstructOptions options;
    options.lmax = job.lmax;
    options.alpha = config.alpha;
    options.test = config.test;
    try {
        const auto r = reconstruct(std::span(&seq, 1), spec.machine.alphabet(), options);
        row.n_states = static_cast<double>(r.machine.size());
        row.cmu = r.cmu;
        row.hmu = r.hmu;
        row.vd = variational_distance(truth, word_distribution(r.machine, config.word_length, r.occupation));
        row.vd_scaled = row.vd * std::sqrt(static_cast<double>(job.n));
        row.correct = same_topology(r.machine, spec.machine) ? 1.0 : 0.0;
    } catch (const NoRecurrentStates&) {
        row.ok = false;
    } catch (const LmaxTooLargeForData&) {
        row.ok = false;
    }
    row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

BenchRow mean_row(const std::vector<BenchRow>& runs) {
    BenchRow m = runs.front();
    m.mean = true;
    m.seed = 0;
    m.n_states = m.cmu = m.hmu = m.vd = m.vd_scaled = m.ms = m.correct = 0.0;
    std::size_t ok = 0;
    for (const auto& r : runs) {
        m.ms += r.ms;
        m.correct += r.correct;
        if (!r.ok) continue;
        ++ok;
        m.n_states += r.n_states;
        m.cmu += r.cmu;
        m.hmu += r.hmu;
        m.vd += r.vd;
        m.vd_scaled += r.vd_scaled;
    }
    const double n = static_cast<double>(runs.size());
    m.ms /= n;
    m.correct /= n;
    m.ok = ok > 0;
    if (ok > 0) {
        const double d = static_cast<double>(ok);
        m.n_states /= d;
        m.cmu /= d;
        m.hmu /= d;
        m.vd /= d;
        m.vd_scaled /= d;
    }
    return m;
}

std::string number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

}  // namespace

std::uint64_t realization_seed(std::uint64_t base, std::size_t n, int rep) {
    return splitmix(splitmix(splitmix(base) ^ static_cast<std::uint64_t>(n)) ^ static_cast<std::uint64_t>(rep));
}

std::vector<BenchRow> run_benchmark(const BenchConfig& config) {
    if (config.grid_n.empty() || config.grid_lmax.empty()) throw BadParameter("benchmark grid is empty");
    if (config.reps < 1) throw BadParameter("reps must be >= 1");
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw BadParameter("alpha must lie in (0, 1)");

    const ProcessSpec spec = builtin_process(config.process);
    const Distribution truth = word_distribution(spec.machine, config.word_length);

    std::vector<Job> jobs;
    for (auto n : config.grid_n)
        for (int l : config.grid_lmax)
            for (int rep = 0; rep < config.reps; ++rep) jobs.push_back({n, l, rep});

    std::vector<BenchRow> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) results[i] = run_one(config, spec, truth, jobs[i]);
    };
    const int threads = std::max(1, config.threads);
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<BenchRow> rows;
    const auto reps = static_cast<std::size_t>(config.reps);
    for (std::size_t start = 0; start < results.size(); start += reps) {
        std::vector<BenchRow> cell(results.begin() + static_cast<std::ptrdiff_t>(start),
                                   results.begin() + static_cast<std::ptrdiff_t>(start + reps));
        rows.insert(rows.end(), cell.begin(), cell.end());
        rows.push_back(mean_row(cell));
    }
    return rows;
}

std::string benchmark_csv(const std::vector<BenchRow>& rows) {
    std::string out = "process,N,lmax,alpha,seed,status,n_states,cmu,hmu,vd_L10,vd_scaled,ms_elapsed\n";
    for (const auto& r : rows) {
        out += r.process + "," + std::to_string(r.n) + "," + std::to_string(r.lmax) + "," + number(r.alpha) + ",";
        out += r.mean ? "mean" : std::to_string(r.seed);
        out += ",";
        out += r.mean ? (r.ok ? "mean" : "failed") : (r.ok ? "ok" : "failed");
        if (r.ok) {
            out += "," + number(r.n_states) + "," + number(r.cmu) + "," + number(r.hmu) + "," + number(r.vd) + "," +
                   number(r.vd_scaled);
        } else {
            out += ",,,,,";
        }
        out += "," + number(r.ms) + "\n";
    }
    return out;
}

}  // namespace cssr
