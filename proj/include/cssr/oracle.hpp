#pragma once

#include <map>

#include "cssr/machine.hpp"
#include "cssr/state_set.hpp"
#include "cssr/stat_tests.hpp"
#include "cssr/suffix_statistics.hpp"

namespace cssr {

/// Suffix statistics of a known machine: next_counts(w) gives the exact word
/// probabilities P(wa), computed by propagating pi through T[w_1]...T[w_L].
class ExactStatistics final : public SuffixStatistics {
public:
    ExactStatistics(const EpsilonMachine& m, int lmax);

    std::size_t alphabet_size() const override { return m_.alphabet_size(); }
    int lmax() const override { return lmax_; }
    void next_counts(WordView w, std::span<double> out) const override;

    double probability(WordView w) const;

private:
    const EpsilonMachine& m_;
    int lmax_;
    Eigen::RowVectorXd pi_;
};

/// Exact P(.|w) for every word of length 0..lmax with P(w) > 0, from the
/// state distribution conditioned on having just emitted w.
std::map<Word, Morph> exact_morphs(const EpsilonMachine& m, int lmax);

/// Homogenize with exact morph equality (1e-12) followed by determinize.
/// Throws LmaxBelowSynchronization when lmax is too short to recover the
/// recurrent states.
StateSet exact_reconstruct(const EpsilonMachine& m, int lmax);

/// Smallest L such that every state is the certain state after some
/// positive-probability word of length <= L.
int synchronization_length(const EpsilonMachine& m, int limit = 24);

/// True when both state sets induce the same partition of the suffixes they
/// have in common, and have the same number of states.
bool partitions_agree(const StateSet& a, const StateSet& b);

}  // namespace cssr
