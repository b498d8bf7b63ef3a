#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cssr/ingest.hpp"
#include "cssr/suffix_statistics.hpp"

namespace cssr {

/// Which sliding windows contribute at each word length.
enum class Windowing {
    /// Only the last l symbols of each window of length lmax+1. Every length
    /// sees the same number of windows and nu(w) = sum_a nu(aw) exactly.
    SuffixClosed,
    /// Every window of every length 1..lmax+1.
    AllWindows,
};

/// Word counts nu(w) for every observed word of length <= lmax+1, built in a
/// single pass. Immutable once built.
///
/// Small tables (k^(lmax+1) <= 2^22) are stored densely, indexed by the base-k
/// value of the word with its oldest symbol most significant; larger ones fall
/// back to a hash map keyed by the raw symbol bytes.
class CountStore final : public SuffixStatistics {
public:
    static CountStore build(std::span<const SymbolSequence> seqs, std::size_t alphabet_size, int lmax,
                            Windowing windowing = Windowing::SuffixClosed);

    /// Store with explicitly given counts (e.g. a hand-built table). Words of
    /// every length 1..lmax+1 should be present; totals are derived.
    static CountStore from_counts(std::size_t alphabet_size, int lmax,
                                  const std::vector<std::pair<Word, std::uint64_t>>& counts);

    std::uint64_t count(WordView w) const;
    /// Number of windows counted at word length `length` (0 <= length <= lmax+1).
    std::uint64_t total(int length) const { return totals_.at(static_cast<std::size_t>(length)); }

    std::size_t alphabet_size() const override { return k_; }
    int lmax() const override { return lmax_; }
    Windowing windowing() const { return windowing_; }
    void next_counts(WordView w, std::span<double> out) const override;

    /// Visits every word with nonzero count, in lexicographic order.
    void for_each(const std::function<void(WordView, std::uint64_t)>& fn) const;

    /// CSV dump "word,count", one row per nonzero word, sorted lexicographically.
    std::string to_csv(const Alphabet& alphabet) const;

private:
    CountStore(std::size_t k, int lmax, Windowing windowing);

    bool dense() const { return !dense_.empty(); }
    std::uint64_t& slot(WordView w);
    void add_window(WordView window_tail);

    std::size_t k_;
    int lmax_;
    Windowing windowing_;
    std::vector<std::uint64_t> totals_;
    std::vector<std::vector<std::uint64_t>> dense_;  // dense_[len][code]
    std::unordered_map<std::string, std::uint64_t> sparse_;
};

}  // namespace cssr
