#include <map>

#include "doctest.h"

#include "cssr/count_store.hpp"
#include "cssr/errors.hpp"
#include "cssr/simulate.hpp"

using namespace cssr;

namespace {

Distribution empirical(const SymbolSequence& s, const Alphabet& alphabet, int length) {
    const auto store = CountStore::build(std::span(&s, 1), alphabet.size(), length - 1);
    Distribution d;
    Word w(static_cast<std::size_t>(length), 0);
    const double total = static_cast<double>(store.total(length));
    std::size_t cells = 1;
    for (int i = 0; i < length; ++i) cells *= alphabet.size();
    for (std::size_t code = 0; code < cells; ++code) {
        std::size_t c = code;
        for (int i = length; i-- > 0;) w[static_cast<std::size_t>(i)] = static_cast<Symbol>(c % alphabet.size()), c /= alphabet.size();
        d.outcomes.push_back(alphabet.render(w));
        d.probs.push_back(static_cast<double>(store.count(w)) / total);
    }
    return d;
}

}  // namespace

TEST_CASE("builtin processes") {
    auto even = builtin_process("even").machine;
    CHECK(even.labelled(0)(0, 0) == 0.5);
    CHECK(even.labelled(1)(0, 1) == 0.5);
    CHECK(even.labelled(1)(1, 0) == 1.0);
    CHECK(even.labelled(0).sum() == 0.5);
    CHECK(builtin_process("iid(0.5)").machine.size() == 1);
    CHECK(builtin_process("iid:0.25").machine.emission(0, 1) == 0.25);
    CHECK(builtin_process("period(3)").machine.size() == 3);
    CHECK(builtin_process("golden_mean(0.4)").machine.emission(0, 0) == doctest::Approx(0.4));
    CHECK_THROWS_AS(builtin_process("iid(1.5)"), BadParameter);
    CHECK_THROWS_AS(builtin_process("period(0)"), BadParameter);
    CHECK_THROWS_AS(builtin_process("period(2.5)"), BadParameter);
    CHECK_THROWS_AS(builtin_process("lorenz"), BadParameter);
}

TEST_CASE("even samples: symbol frequencies and forbidden words") {
    auto spec = builtin_process("even");
    auto s = simulate(spec, 10000, 42);
    double ones = 0;
    for (Symbol x : s.data) ones += x;
    CHECK(std::fabs(ones / 10000.0 - 0.669) < 0.02);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto t = simulate(spec, 2000, seed);
        // A 0 may only be followed by a block of an even number of 1s before the next 0.
        std::size_t run = 0;
        bool seen_zero = false;
        for (Symbol x : t.data) {
            if (x == 1) {
                ++run;
                continue;
            }
            if (seen_zero) CHECK(run % 2 == 0);
            seen_zero = true;
            run = 0;
        }
    }
}

TEST_CASE("fixed start and determinism") {
    ProcessSpec p2{"period(2)", period_machine(2), 0};
    auto s = simulate(p2, 10, 1);
    CHECK(s.data == make_word({0, 1, 0, 1, 0, 1, 0, 1, 0, 1}));
    auto even = builtin_process("even");
    CHECK(simulate(even, 1000, 5) == simulate(even, 1000, 5));
    CHECK_FALSE(simulate(even, 1000, 5) == simulate(even, 1000, 6));
    CHECK_THROWS_AS(simulate(even, 0, 1), BadParameter);
    ProcessSpec bad{"even", even_machine(), 4};
    CHECK_THROWS_AS(simulate(bad, 10, 1), BadParameter);
}

TEST_CASE("empirical word frequencies converge to the machine's") {
    for (const char* name : {"even", "iid(0.5)", "period(2)", "period(3)", "golden_mean(0.5)"}) {
        auto spec = builtin_process(name);
        auto s = simulate(spec, 1000000, 2024);
        const auto truth = word_distribution(spec.machine, 4);
        CHECK(variational_distance(empirical(s, spec.machine.alphabet(), 4), truth) < 0.02);
    }
}
