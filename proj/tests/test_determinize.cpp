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

StateSet table_states() {
    static const auto store = testing::even_table_store();
    return homogenize(store, 3, SignificanceComparator(TestKind::Ks, 0.01));
}

StateId id_of(const StateSet& set, const char* digits) { return *set.state_of(digits_to_word(digits)); }

}  // namespace

TEST_CASE("successor lookup on the table partition") {
    auto set = table_states();
    CHECK(successor(set, digits_to_word("0"), 1, 3) == id_of(set, "01"));
    CHECK(successor(set, digits_to_word("01"), 1, 3) == id_of(set, "011"));
    CHECK(successor(set, digits_to_word("011"), 0, 3) == id_of(set, "110"));

    StateSet sparse(2);
    auto s = sparse.create_state();
    sparse.add_suffix(s, digits_to_word("00"));
    CHECK_FALSE(successor(sparse, digits_to_word("00"), 1, 2).has_value());
}

TEST_CASE("transients A and B are removed, leaving C and D") {
    auto store = testing::even_table_store();
    auto set = table_states();
    const auto c = id_of(set, "0"), d = id_of(set, "01");
    remove_transients(set, store);
    CHECK(set.ids() == std::vector<StateId>{c, d});
    determinize(set, store);
    REQUIRE(set.size() == 2);
    CHECK(set.state(c).suffixes.size() == 7);
    CHECK(set.state(d).suffixes.size() == 3);
    auto table = compute_transitions(set, store);
    CHECK(table.deterministic());
    CHECK(table.successors.at(c)[0] == std::set<StateId>{c});
    CHECK(table.successors.at(c)[1] == std::set<StateId>{d});
    CHECK(table.successors.at(d)[1] == std::set<StateId>{c});
    CHECK(table.successors.at(d)[0].empty());
}

TEST_CASE("scc helpers") {
    StateGraph loop{{0, {0}}};
    CHECK(recurrent_states(loop) == std::set<StateId>{0});
    StateGraph cycle{{0, {1}}, {1, {0}}};
    CHECK(recurrent_states(cycle) == std::set<StateId>{0, 1});
    StateGraph chain{{0, {1}}, {1, {2}}, {2, {1}}};
    CHECK(recurrent_states(chain) == std::set<StateId>{1, 2});
    StateGraph sink{{0, {1}}, {1, {}}};
    CHECK(recurrent_states(sink).empty());
    CHECK(strongly_connected_components(chain).size() == 2);
}

TEST_CASE("a state with conflicting successors is split") {
    // Exact period-3 statistics with *10 misplaced: on 0, *1 goes to its own
    // state while *01 and *10 go to the other.
    auto m = period_machine(3);
    ExactStatistics stats(m, 3);
    StateSet set(2);
    auto x = set.create_state();
    for (const char* w : {"0", "00", "100", "010"}) set.add_suffix(x, digits_to_word(w));
    auto y = set.create_state();
    for (const char* w : {"1", "01", "001", "10"}) set.add_suffix(y, digits_to_word(w));
    set.repool_all(stats);
    std::vector<std::string> trace;
    determinize(set, stats, &trace);
    // *1 is split off on its own, and then has no incoming edge from the
    // remaining states, so it is pruned as transient.
    REQUIRE(trace.size() == 1);
    CHECK(trace[0].find("split") != std::string::npos);
    CHECK(set.size() == 2);
    CHECK_FALSE(set.contains(digits_to_word("1")));
    CHECK(set.state(x).suffixes.size() == 4);
    CHECK(compute_transitions(set, stats).deterministic());
}

TEST_CASE("determinize output invariants and idempotence on sampled data") {
    for (const char* name : {"even", "golden_mean(0.3)", "period(3)", "iid(0.6)"}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            auto seq = simulate(builtin_process(name), 5000, seed);
            for (int lmax : {2, 4}) {
                auto store = CountStore::build(std::span(&seq, 1), 2, lmax);
                auto homogeneous = homogenize(store, lmax, SignificanceComparator(TestKind::Ks, 0.01));
                auto set = homogeneous;
                determinize(set, store);
                auto table = compute_transitions(set, store);
                CHECK(table.deterministic());
                CHECK(table.unresolved.empty());
                CHECK(recurrent_states(transition_graph(set, store)).size() == set.size());
                // Splitting only refines the homogenized partition.
                for (const auto& [id, state] : set.states()) {
                    auto owner = homogeneous.state_of(*state.suffixes.begin());
                    REQUIRE(owner.has_value());
                    for (const auto& w : state.suffixes) CHECK(homogeneous.state_of(w) == owner);
                }
                auto again = set;
                determinize(again, store);
                CHECK(again.partition() == set.partition());
            }
        }
    }
}

TEST_CASE("everything transient raises NoRecurrentStates") {
    // Counts of the single sequence 0 1 1 1: no state has an incoming cycle.
    SymbolSequence s{make_word({0, 1, 1, 1})};
    auto store = CountStore::build(std::span(&s, 1), 2, 2);
    StateSet set(2);
    auto a = set.create_state();
    set.add_suffix(a, digits_to_word("0"));
    set.repool_all(store);
    CHECK_THROWS_AS(remove_transients(set, store), NoRecurrentStates);
}
