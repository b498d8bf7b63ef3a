#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cssr/ingest.hpp"
#include "cssr/machine.hpp"

namespace cssr {

/// A generating machine plus its starting condition. With no fixed state the
/// initial state is drawn from the stationary distribution.
struct ProcessSpec {
    std::string name;
    EpsilonMachine machine;
    std::optional<std::size_t> fixed_state;
};

/// Samples n symbols. The generator is std::mt19937_64 seeded with `seed`;
/// uniforms are (x >> 11) * 2^-53. Same (spec, n, seed) gives the same output
/// on every platform.
SymbolSequence simulate(const ProcessSpec& spec, std::size_t n, std::uint64_t seed);

/// "even", "iid(p)", "period(p)", "golden_mean(p)"; "name:p" is also accepted.
ProcessSpec builtin_process(std::string_view name);

EpsilonMachine even_machine();
EpsilonMachine iid_machine(double p);
EpsilonMachine period_machine(int period);
EpsilonMachine golden_mean_machine(double p);

}  // namespace cssr
