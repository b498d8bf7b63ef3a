#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cssr/count_store.hpp"

namespace cssr::testing {

/// Word counts of length 1..4 from a 10^4-step sample of the even process,
/// 9996 windows per length.
inline CountStore even_table_store() {
    const std::vector<std::pair<std::string, std::uint64_t>> table = {
        {"0", 3309},    {"1", 6687},    {"00", 1654},   {"01", 1655},   {"10", 1655},   {"11", 5032},
        {"000", 836},   {"001", 818},   {"010", 0},     {"011", 1655},  {"100", 818},   {"101", 837},
        {"110", 1654},  {"111", 3378},  {"0000", 414}, {"0001", 422}, {"0010", 0},    {"0011", 818},
        {"0100", 0},   {"0101", 0},    {"0110", 814}, {"0111", 841}, {"1000", 422}, {"1001", 396},
        {"1010", 0},   {"1011", 837},  {"1100", 818}, {"1101", 836}, {"1110", 841}, {"1111", 2537},
    };
    std::vector<std::pair<Word, std::uint64_t>> counts;
    for (const auto& [w, c] : table) counts.emplace_back(digits_to_word(w), c);
    return CountStore::from_counts(2, 3, counts);
}

inline std::vector<Word> words(std::initializer_list<const char*> digits) {
    std::vector<Word> out;
    for (const char* d : digits) out.push_back(digits_to_word(d));
    return out;
}

}  // namespace cssr::testing
