#pragma once

#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "cssr/stat_tests.hpp"
#include "cssr/suffix_statistics.hpp"

namespace cssr {

using StateId = int;

/// A candidate causal state: a set of suffixes plus the pooled next-symbol
/// counts of its members (the weighted-average morph, unnormalised).
struct State {
    StateId id = 0;
    std::set<Word> suffixes;  // lexicographic order
    std::vector<double> counts;

    double support() const;
    Morph morph() const { return Morph::from_counts(counts); }
};

/// Partition of the retained suffixes into states. States iterate in creation
/// order (ids are never reused).
class StateSet {
public:
    explicit StateSet(std::size_t alphabet_size = 0) : k_(alphabet_size) {}

    std::size_t alphabet_size() const { return k_; }
    std::size_t size() const { return states_.size(); }
    bool empty() const { return states_.empty(); }

    const std::map<StateId, State>& states() const { return states_; }
    const State& state(StateId id) const { return states_.at(id); }
    std::vector<StateId> ids() const;

    std::optional<StateId> state_of(WordView w) const;
    bool contains(WordView w) const { return assignment_.count(Word(w.begin(), w.end())) > 0; }
    std::size_t suffix_count() const { return assignment_.size(); }

    StateId create_state();
    /// Adds w (which must not be assigned yet) to state `id`; does not touch the pooled counts.
    void add_suffix(StateId id, const Word& w);
    /// Moves an assigned suffix to another state.
    void move_suffix(const Word& w, StateId to);
    void remove_state(StateId id);

    /// Recomputes the pooled counts of `id` from its members.
    void repool(StateId id, const SuffixStatistics& stats);
    void repool_all(const SuffixStatistics& stats);

    /// Every suffix sorted lexicographically, with its state.
    std::vector<std::pair<Word, StateId>> assignments() const;

    /// Canonical form of the partition: sorted list of sorted suffix sets.
    std::vector<std::vector<Word>> partition() const;

private:
    std::size_t k_;
    StateId next_id_ = 0;
    std::map<StateId, State> states_;
    std::unordered_map<Word, StateId, WordHash> assignment_;
};

}  // namespace cssr
