#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cssr/state_set.hpp"

namespace cssr {

/// State reached from suffix w on symbol a: w·a is cut to its last
/// min(|w|+1, lmax) symbols and matched against the longest retained suffix.
std::optional<StateId> successor(const StateSet& set, WordView w, Symbol a, int lmax);

/// Successor sets per (state, symbol), over member suffixes w with nu(wa) > 0.
struct TransitionTable {
    std::map<StateId, std::vector<std::set<StateId>>> successors;
    /// (state, symbol) pairs with positive count but no resolvable successor.
    std::set<std::pair<StateId, Symbol>> unresolved;

    bool deterministic() const;
};

TransitionTable compute_transitions(const StateSet& set, const SuffixStatistics& stats);

/// Directed state graph used to find recurrent states.
using StateGraph = std::map<StateId, std::set<StateId>>;

/// Edges for transient removal. For each (state, symbol) the edge targets come
/// from member suffixes shorter than lmax, whose extension needs no
/// truncation; Lmax-length suffixes are consulted only when no shorter member
/// has evidence on that symbol.
StateGraph transition_graph(const StateSet& set, const SuffixStatistics& stats);

/// Strongly connected components (Tarjan), each sorted, in reverse topological order.
std::vector<std::vector<StateId>> strongly_connected_components(const StateGraph& graph);

/// States lying in closed SCCs (no edge leaves the component) that contain at
/// least one edge.
std::set<StateId> recurrent_states(const StateGraph& graph);

/// Drops transient states, and states with an observed symbol whose successor
/// cannot be resolved, until the remaining graph is a union of closed SCCs.
/// Throws NoRecurrentStates if nothing survives.
void remove_transients(StateSet& set, const SuffixStatistics& stats);

/// Splits states until every (state, symbol) has at most one successor, then
/// re-prunes transients; repeats until stable. Expects transients already removed
/// but tolerates them.
void determinize(StateSet& set, const SuffixStatistics& stats, std::vector<std::string>* trace = nullptr);

}  // namespace cssr
