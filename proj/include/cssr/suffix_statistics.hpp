#pragma once

#include <span>

#include "cssr/word.hpp"

namespace cssr {

/// Source of next-symbol evidence for suffixes: out[a] receives the weight of
/// "w followed by a". For sampled data this is the count nu(wa); for the exact
/// oracle it is the probability P(wa). Reconstruction only ever looks at these
/// weights, so both paths share the same homogenize/determinize code.
class SuffixStatistics {
public:
    virtual ~SuffixStatistics() = default;

    virtual std::size_t alphabet_size() const = 0;
    /// Longest suffix length the source supports (words up to lmax+1 are known).
    virtual int lmax() const = 0;
    virtual void next_counts(WordView w, std::span<double> out) const = 0;

    /// Convenience: sum of next_counts(w).
    double support(WordView w) const;
};

}  // namespace cssr
