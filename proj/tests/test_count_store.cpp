#include <map>
#include <random>

#include "doctest.h"

#include "cssr/count_store.hpp"
#include "cssr/errors.hpp"
#include "cssr/simulate.hpp"
#include "support.hpp"

using namespace cssr;

namespace {

/// Direct recount of every length-l tail of each (lmax+1)-window.
std::map<Word, std::uint64_t> naive_counts(const Word& seq, int lmax) {
    std::map<Word, std::uint64_t> out;
    const std::size_t window = static_cast<std::size_t>(lmax) + 1;
    for (std::size_t end = window; end <= seq.size(); ++end)
        for (std::size_t l = 1; l <= window; ++l) out[Word(seq.begin() + static_cast<long>(end - l), seq.begin() + static_cast<long>(end))]++;
    return out;
}

}  // namespace

TEST_CASE("tiny sequence hand count") {
    SymbolSequence s{make_word({0, 1})};
    auto all = CountStore::build(std::span(&s, 1), 2, 1, Windowing::AllWindows);
    CHECK(all.count(make_word({0})) == 1);
    CHECK(all.count(make_word({1})) == 1);
    CHECK(all.count(make_word({0, 1})) == 1);
    CHECK(all.total(2) == 1);

    // Suffix-closed windows keep only the tail of the single window 01.
    auto closed = CountStore::build(std::span(&s, 1), 2, 1);
    CHECK(closed.count(make_word({0})) == 0);
    CHECK(closed.count(make_word({1})) == 1);
    CHECK(closed.count(make_word({0, 1})) == 1);
    CHECK(closed.total(1) == closed.total(2));
}

TEST_CASE("table store lookups") {
    auto store = testing::even_table_store();
    CHECK(store.count(digits_to_word("1111")) == 2537);
    CHECK(store.count(digits_to_word("0101")) == 0);
    CHECK(store.count(digits_to_word("010")) == 0);
    CHECK(store.count(digits_to_word("11")) == 5032);
    CHECK(store.count(digits_to_word("0")) == 3309);
    for (int l = 1; l <= 4; ++l) CHECK(store.total(l) == 9996);
    CHECK_THROWS_AS(store.count(digits_to_word("00000")), WordTooLong);
}

TEST_CASE("simulated even sample has N - lmax windows per length") {
    auto seq = simulate(builtin_process("even"), 10000, 3);
    auto store = CountStore::build(std::span(&seq, 1), 2, 4);
    for (int l = 1; l <= 5; ++l) CHECK(store.total(l) == 9996);
    // Forbidden words 0 1^(2j+1) 0.
    CHECK(store.count(digits_to_word("010")) == 0);
    CHECK(store.count(digits_to_word("0110")) > 0);
    CHECK(store.count(digits_to_word("01110")) == 0);
}

TEST_CASE("too short for any window") {
    SymbolSequence s{make_word({0, 1})};
    CHECK_THROWS_AS(CountStore::build(std::span(&s, 1), 2, 3), LmaxTooLargeForData);
}

TEST_CASE("counts agree with a naive recount, dense and sparse") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t k = 2 + rng() % 3;
        const int lmax = 1 + static_cast<int>(rng() % 4);
        SymbolSequence s;
        for (int i = 0; i < 500; ++i) s.data.push_back(static_cast<Symbol>(rng() % k));
        auto store = CountStore::build(std::span(&s, 1), k, lmax);
        for (const auto& [w, c] : naive_counts(s.data, lmax)) CHECK(store.count(w) == c);
    }
    // k^(lmax+1) beyond the dense limit exercises the hashed table.
    SymbolSequence s;
    for (int i = 0; i < 3000; ++i) s.data.push_back(static_cast<Symbol>(rng() % 40));
    auto store = CountStore::build(std::span(&s, 1), 40, 4);
    for (const auto& [w, c] : naive_counts(s.data, 4)) CHECK(store.count(w) == c);
}

TEST_CASE("suffix-closed counts are exactly consistent") {
    std::mt19937_64 rng(5);
    std::vector<SymbolSequence> seqs(3);
    for (auto& s : seqs)
        for (int i = 0; i < 400; ++i) s.data.push_back(static_cast<Symbol>(rng() % 3));
    auto store = CountStore::build(seqs, 3, 3);
    store.for_each([&](WordView w, std::uint64_t c) {
        if (w.size() > 3) return;
        std::uint64_t left = 0;
        for (Symbol a = 0; a < 3; ++a) left += store.count(prepend(a, w));
        CHECK(left == c);
        double right = 0;
        std::vector<double> next(3);
        store.next_counts(w, next);
        for (double x : next) right += x;
        // Right extensions lose at most one window per sequence.
        CHECK(std::abs(right - static_cast<double>(c)) <= static_cast<double>(seqs.size()));
    });
}

TEST_CASE("csv dump is sorted") {
    SymbolSequence s{make_word({1, 0, 1})};
    auto store = CountStore::build(std::span(&s, 1), 2, 1);
    CHECK(store.to_csv(Alphabet::binary()) == "word,count\n0,1\n01,1\n1,1\n10,1\n");
}
