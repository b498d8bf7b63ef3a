#include <algorithm>

#include "doctest.h"

#include "cssr/determinize.hpp"
#include "cssr/errors.hpp"
#include "cssr/homogenize.hpp"
#include "cssr/oracle.hpp"
#include "cssr/simulate.hpp"
#include "support.hpp"

using namespace cssr;
using testing::words;

namespace {

std::vector<Word> members(const StateSet& set, StateId id) {
    const auto& s = set.state(id).suffixes;
    return {s.begin(), s.end()};
}

StateId state_of(const StateSet& set, const char* digits) { return *set.state_of(digits_to_word(digits)); }

std::vector<Word> sorted(std::vector<Word> w) {
    std::sort(w.begin(), w.end());
    return w;
}

}  // namespace

TEST_CASE("initialize holds the null suffix with the unconditional morph") {
    auto store = testing::even_table_store();
    auto set = initialize(store);
    REQUIRE(set.size() == 1);
    CHECK(set.state_of(Word{}).has_value());
    CHECK(set.states().begin()->second.morph().probs[1] == doctest::Approx(6687.0 / 9996.0).epsilon(1e-12));
}

TEST_CASE("child_suffixes") {
    auto store = testing::even_table_store();
    CHECK(child_suffixes(digits_to_word("0"), store) == words({"00", "10"}));
    CHECK(child_suffixes(digits_to_word("01"), store) == words({"001", "101"}));
    CHECK(child_suffixes(digits_to_word("10"), store) == words({"110"}));
}

TEST_CASE("table counts homogenize into four states A, B, C, D") {
    auto store = testing::even_table_store();
    SignificanceComparator ks(TestKind::Ks, 0.01);
    std::vector<std::string> trace;
    auto set = homogenize(store, 3, ks, {}, &trace);
    REQUIRE(set.size() == 4);
    CHECK(members(set, state_of(set, "")) == sorted({Word{}, digits_to_word("11")}));
    CHECK(members(set, state_of(set, "1")) == words({"1", "111"}));
    CHECK(members(set, state_of(set, "0")) == words({"0", "00", "000", "011", "10", "100", "110"}));
    CHECK(members(set, state_of(set, "01")) == words({"001", "01", "101"}));
    CHECK_FALSE(trace.empty());

    // Creation order: the null-suffix state, then children in alphabet order
    // (*0 before *1), then *01.
    auto ids = set.ids();
    CHECK(ids[0] == state_of(set, ""));
    CHECK(ids[1] == state_of(set, "0"));
    CHECK(ids[2] == state_of(set, "1"));
    CHECK(ids[3] == state_of(set, "01"));
}

TEST_CASE("pooled morph is the count-weighted mean of member morphs") {
    auto store = testing::even_table_store();
    auto set = homogenize(store, 3, SignificanceComparator(TestKind::Ks, 0.01));
    for (const auto& [id, state] : set.states()) {
        double total = 0.0, ones = 0.0;
        for (const auto& w : state.suffixes) {
            std::vector<double> next(2);
            store.next_counts(w, next);
            total += next[0] + next[1];
            ones += next[1];
        }
        CHECK(state.support() == doctest::Approx(total));
        CHECK(state.morph().probs[1] == doctest::Approx(ones / total).epsilon(1e-9));
    }
}

TEST_CASE("homogenize is reproducible and checks lmax") {
    auto store = testing::even_table_store();
    SignificanceComparator ks(TestKind::Ks, 0.01);
    CHECK(homogenize(store, 3, ks).partition() == homogenize(store, 3, ks).partition());
    CHECK_THROWS_AS(homogenize(store, 2, ks), LmaxMismatch);
}

TEST_CASE("members do not reject against their state without them") {
    auto seq = simulate(builtin_process("golden_mean(0.5)"), 20000, 9);
    auto store = CountStore::build(std::span(&seq, 1), 2, 3);
    const double alpha = 0.01;
    auto set = homogenize(store, 3, SignificanceComparator(TestKind::Ks, alpha));
    int rejects = 0, tested = 0;
    for (const auto& [id, state] : set.states())
        for (const auto& w : state.suffixes) {
            std::vector<double> own(2), rest = state.counts;
            store.next_counts(w, own);
            rest[0] -= own[0];
            rest[1] -= own[1];
            if (rest[0] + rest[1] <= 0) continue;
            ++tested;
            rejects += ks_two_sample(Morph::from_counts(own), Morph::from_counts(rest), alpha).reject;
        }
    CHECK(tested > 0);
    CHECK(rejects == 0);
}

TEST_CASE("exact period-2 statistics separate by last symbol") {
    auto m = period_machine(2);
    ExactStatistics stats(m, 2);
    auto set = homogenize(stats, 2, ExactComparator(), {0.0, false});
    REQUIRE(set.size() == 3);
    CHECK(state_of(set, "0") == state_of(set, "10"));
    CHECK(state_of(set, "1") == state_of(set, "01"));
    CHECK(state_of(set, "0") != state_of(set, "1"));
    CHECK(set.state(state_of(set, "0")).morph().probs[1] == 1.0);
    CHECK(set.state(state_of(set, "1")).morph().probs[0] == 1.0);
}

TEST_CASE("exact iid statistics stay in one state") {
    auto m = iid_machine(0.3);
    ExactStatistics stats(m, 3);
    auto set = homogenize(stats, 3, ExactComparator(), {0.0, false});
    CHECK(set.size() == 1);
    CHECK(set.suffix_count() == 15);
}
