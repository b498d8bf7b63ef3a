#include "cssr/simulate.hpp"

#include <charconv>
#include <random>

#include "cssr/errors.hpp"

namespace cssr {

namespace {

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t draw(const std::vector<double>& probs, double u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    // Rounding left u above the cumulative sum; take the last positive entry.
    for (std::size_t i = probs.size(); i-- > 0;)
        if (probs[i] > 0.0) return i;
    return 0;
}

std::vector<MachineState> plain_states(std::size_t n) {
    std::vector<MachineState> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i].id = static_cast<StateId>(i);
    return out;
}

void check_probability(double p) {
    if (!(p > 0.0 && p < 1.0)) throw BadParameter("process probability must lie in (0, 1)");
}

}  // namespace

EpsilonMachine even_machine() {
    Eigen::MatrixXd t0(2, 2), t1(2, 2);
    t0 << 0.5, 0.0, 0.0, 0.0;
    t1 << 0.0, 0.5, 1.0, 0.0;
    return EpsilonMachine(Alphabet::binary(), plain_states(2), {t0, t1});
}

EpsilonMachine iid_machine(double p) {
    check_probability(p);
    Eigen::MatrixXd t0(1, 1), t1(1, 1);
    t0 << 1.0 - p;
    t1 << p;
    return EpsilonMachine(Alphabet::binary(), plain_states(1), {t0, t1});
}

EpsilonMachine period_machine(int period) {
    if (period < 1) throw BadParameter("period must be >= 1");
    const Eigen::Index n = period;
    Eigen::MatrixXd t0 = Eigen::MatrixXd::Zero(n, n), t1 = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        auto& t = (i == n - 1) ? t1 : t0;
        t(i, (i + 1) % n) = 1.0;
    }
    return EpsilonMachine(Alphabet::binary(), plain_states(static_cast<std::size_t>(n)), {t0, t1});
}

EpsilonMachine golden_mean_machine(double p) {
    check_probability(p);
    Eigen::MatrixXd t0(2, 2), t1(2, 2);
    t0 << 0.0, p, 0.0, 0.0;
    t1 << 1.0 - p, 0.0, 1.0, 0.0;
    return EpsilonMachine(Alphabet::binary(), plain_states(2), {t0, t1});
}

SymbolSequence simulate(const ProcessSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw BadParameter("simulation length must be >= 1");
    const auto& m = spec.machine;
    std::mt19937_64 rng(seed);

    std::size_t state;
    if (spec.fixed_state) {
        if (*spec.fixed_state >= m.size()) throw BadParameter("fixed initial state does not exist");
        state = *spec.fixed_state;
    } else {
        state = draw(stationary_distribution(m).probs, uniform(rng));
    }

    const std::size_t k = m.alphabet_size();
    std::vector<std::vector<double>> emit(m.size(), std::vector<double>(k));
    std::vector<std::vector<std::size_t>> next(m.size(), std::vector<std::size_t>(k, 0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t s = 0; s < k; ++s) {
            emit[i][s] = m.emission(i, static_cast<Symbol>(s));
            if (auto j = m.successor(i, static_cast<Symbol>(s))) next[i][s] = *j;
        }

    SymbolSequence out;
    out.data.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        const auto s = draw(emit[state], uniform(rng));
        out.data[t] = static_cast<Symbol>(s);
        state = next[state][s];
    }
    return out;
}

ProcessSpec builtin_process(std::string_view name) {
    std::string_view base = name;
    std::optional<std::string_view> arg;
    if (auto open = name.find('('); open != std::string_view::npos) {
        if (name.back() != ')') throw BadParameter("malformed process name: " + std::string(name));
        base = name.substr(0, open);
        arg = name.substr(open + 1, name.size() - open - 2);
    } else if (auto colon = name.find(':'); colon != std::string_view::npos) {
        base = name.substr(0, colon);
        arg = name.substr(colon + 1);
    }

    auto number = [&](double fallback) {
        if (!arg) return fallback;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(arg->data(), arg->data() + arg->size(), v);
        if (ec != std::errc() || ptr != arg->data() + arg->size())
            throw BadParameter("bad process parameter: " + std::string(*arg));
        return v;
    };

    ProcessSpec spec{std::string(name), even_machine(), std::nullopt};
    if (base == "even") {
        if (arg) throw BadParameter("even takes no parameter");
    } else if (base == "iid") {
        spec.machine = iid_machine(number(0.5));
    } else if (base == "period") {
        const double p = number(2.0);
        if (p != static_cast<int>(p)) throw BadParameter("period must be an integer");
        spec.machine = period_machine(static_cast<int>(p));
    } else if (base == "golden_mean") {
        spec.machine = golden_mean_machine(number(0.5));
    } else {
        throw BadParameter("unknown process: " + std::string(name));
    }
    return spec;
}

}  // namespace cssr
