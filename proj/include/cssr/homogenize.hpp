#pragma once

#include <string>
#include <vector>

#include "cssr/state_set.hpp"

namespace cssr {

struct HomogenizeOptions {
    /// Children with support below this are not created. Support must also be > 0.
    double min_support = 1.0;
    /// Test a child against its parent state's pooled counts minus the child's own.
    bool exclude_child_from_parent = true;
};

/// Single-state set holding only the null suffix; its morph is the
/// unconditional next-symbol distribution.
StateSet initialize(const SuffixStatistics& stats);

/// Children a·w (alphabet order) of suffix w with positive predictive support.
std::vector<Word> child_suffixes(WordView w, const SuffixStatistics& stats, double min_support = 1.0);

/// Grows the partition from L = 0 to lmax so every state is homogeneous for
/// the next symbol. Children are tested against their parent state; on
/// rejection they join the closest non-rejecting state (largest score, then
/// smallest statistic, then oldest state) or found a new one. Pooled morphs
/// are refreshed at the end of each length pass.
///
/// `trace`, if given, receives one line per child decision.
StateSet homogenize(const SuffixStatistics& stats, int lmax, const MorphComparator& comparator,
                    const HomogenizeOptions& options = {}, std::vector<std::string>* trace = nullptr);

}  // namespace cssr
