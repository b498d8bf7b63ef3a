#include "cssr/determinize.hpp"

#include <algorithm>
#include <functional>

#include "cssr/errors.hpp"

namespace cssr {

std::optional<StateId> successor(const StateSet& set, WordView w, Symbol a, int lmax) {
    Word next = append(w, a);
    std::size_t start = next.size() > static_cast<std::size_t>(lmax) ? next.size() - lmax : 0;
    for (; start <= next.size(); ++start) {
        if (auto id = set.state_of(WordView(next).subspan(start))) return id;
    }
    return std::nullopt;
}

bool TransitionTable::deterministic() const {
    for (const auto& [_, per_symbol] : successors)
        for (const auto& targets : per_symbol)
            if (targets.size() > 1) return false;
    return true;
}

TransitionTable compute_transitions(const StateSet& set, const SuffixStatistics& stats) {
    const std::size_t k = set.alphabet_size();
    const int lmax = stats.lmax();
    TransitionTable table;
    std::vector<double> counts(k);
    for (const auto& [id, state] : set.states()) {
        auto& per_symbol = table.successors[id];
        per_symbol.assign(k, {});
        std::vector<bool> observed(k, false);
        for (const auto& w : state.suffixes) {
            stats.next_counts(w, counts);
            for (std::size_t a = 0; a < k; ++a) {
                if (counts[a] <= 0.0) continue;
                observed[a] = true;
                if (auto next = successor(set, w, static_cast<Symbol>(a), lmax)) per_symbol[a].insert(*next);
            }
        }
        for (std::size_t a = 0; a < k; ++a)
            if (observed[a] && per_symbol[a].empty()) table.unresolved.emplace(id, static_cast<Symbol>(a));
    }
    return table;
}

namespace {

struct GraphWithLeaks {
    StateGraph graph;
    std::set<StateId> leaky;
};

GraphWithLeaks build_graph(const StateSet& set, const SuffixStatistics& stats) {
    const std::size_t k = set.alphabet_size();
    const auto lmax = static_cast<std::size_t>(stats.lmax());
    GraphWithLeaks out;
    std::vector<double> counts(k);
    for (const auto& [id, state] : set.states()) {
        auto& edges = out.graph[id];
        std::vector<std::set<StateId>> shorter(k), longest(k);
        std::vector<bool> observed(k, false);
        for (const auto& w : state.suffixes) {
            stats.next_counts(w, counts);
            for (std::size_t a = 0; a < k; ++a) {
                if (counts[a] <= 0.0) continue;
                observed[a] = true;
                if (auto next = successor(set, w, static_cast<Symbol>(a), static_cast<int>(lmax)))
                    (w.size() < lmax ? shorter : longest)[a].insert(*next);
            }
        }
        for (std::size_t a = 0; a < k; ++a) {
            const auto& chosen = shorter[a].empty() ? longest[a] : shorter[a];
            edges.insert(chosen.begin(), chosen.end());
            if (observed[a] && chosen.empty()) out.leaky.insert(id);
        }
    }
    return out;
}

}  // namespace

StateGraph transition_graph(const StateSet& set, const SuffixStatistics& stats) {
    return build_graph(set, stats).graph;
}

std::vector<std::vector<StateId>> strongly_connected_components(const StateGraph& graph) {
    std::map<StateId, int> index, low;
    std::set<StateId> on_stack;
    std::vector<StateId> stack;
    std::vector<std::vector<StateId>> components;
    int counter = 0;

    std::function<void(StateId)> visit = [&](StateId v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack.insert(v);
        if (auto it = graph.find(v); it != graph.end()) {
            for (StateId w : it->second) {
                if (!index.count(w)) {
                    visit(w);
                    low[v] = std::min(low[v], low[w]);
                } else if (on_stack.count(w)) {
                    low[v] = std::min(low[v], index[w]);
                }
            }
        }
        if (low[v] == index[v]) {
            std::vector<StateId> component;
            StateId w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack.erase(w);
                component.push_back(w);
            } while (w != v);
            std::sort(component.begin(), component.end());
            components.push_back(std::move(component));
        }
    };

    for (const auto& [v, _] : graph)
        if (!index.count(v)) visit(v);
    return components;
}

std::set<StateId> recurrent_states(const StateGraph& graph) {
    std::set<StateId> out;
    for (const auto& component : strongly_connected_components(graph)) {
        const std::set<StateId> members(component.begin(), component.end());
        bool closed = true, has_edge = false;
        for (StateId v : component) {
            auto it = graph.find(v);
            if (it == graph.end()) continue;
            for (StateId w : it->second) {
                if (members.count(w)) has_edge = true;
                else closed = false;
            }
        }
        if (closed && has_edge) out.insert(members.begin(), members.end());
    }
    return out;
}

void remove_transients(StateSet& set, const SuffixStatistics& stats) {
    while (true) {
        const auto [graph, leaky] = build_graph(set, stats);
        std::set<StateId> doomed(leaky);
        const auto keep = recurrent_states(graph);
        for (StateId id : set.ids())
            if (!keep.count(id)) doomed.insert(id);
        if (doomed.empty()) break;
        for (StateId id : doomed) set.remove_state(id);
        if (set.empty()) throw NoRecurrentStates("every reconstructed state is transient");
    }
}

namespace {

/// Splits the first nondeterministic (state, symbol) found. Returns false when
/// the whole set is deterministic.
bool split_once(StateSet& set, const SuffixStatistics& stats, std::vector<std::string>* trace) {
    const std::size_t k = set.alphabet_size();
    const int lmax = stats.lmax();
    std::vector<double> counts(k);

    for (StateId id : set.ids()) {
        const State& state = set.state(id);
        for (std::size_t a = 0; a < k; ++a) {
            std::map<StateId, std::vector<Word>> by_target;
            std::vector<Word> unresolved;
            for (const auto& w : state.suffixes) {
                stats.next_counts(w, counts);
                std::optional<StateId> next;
                if (counts[a] > 0.0) next = successor(set, w, static_cast<Symbol>(a), lmax);
                if (next) by_target[*next].push_back(w);
                else unresolved.push_back(w);
            }
            if (by_target.size() <= 1) continue;

            // Groups ordered by their lexicographically least suffix.
            std::vector<std::vector<Word>> groups;
            for (auto& [_, g] : by_target) groups.push_back(std::move(g));
            std::sort(groups.begin(), groups.end(),
                      [](const auto& x, const auto& y) { return x.front() < y.front(); });

            if (!unresolved.empty()) {
                std::size_t largest = 0;
                double best = -1.0;
                for (std::size_t g = 0; g < groups.size(); ++g) {
                    double total = 0.0;
                    for (const auto& w : groups[g]) total += stats.support(w);
                    if (total > best) {
                        best = total;
                        largest = g;
                    }
                }
                groups[largest].insert(groups[largest].end(), unresolved.begin(), unresolved.end());
                std::sort(groups[largest].begin(), groups[largest].end());
            }

            const Word& least = *state.suffixes.begin();
            std::size_t stay = 0;
            for (std::size_t g = 0; g < groups.size(); ++g)
                if (std::find(groups[g].begin(), groups[g].end(), least) != groups[g].end()) stay = g;

            std::vector<StateId> created;
            for (std::size_t g = 0; g < groups.size(); ++g) {
                if (g == stay) continue;
                const StateId fresh = set.create_state();
                for (const auto& w : groups[g]) set.move_suffix(w, fresh);
                created.push_back(fresh);
            }
            set.repool(id, stats);
            for (StateId c : created) set.repool(c, stats);

            if (trace) {
                std::string line = "split state " + std::to_string(id) + " on symbol " + std::to_string(a) + " ->";
                for (StateId c : created) line += " " + std::to_string(c);
                if (!unresolved.empty())
                    line += " (" + std::to_string(unresolved.size()) + " suffixes without successor kept with largest group)";
                trace->push_back(line);
            }
            return true;
        }
    }
    return false;
}

}  // namespace

void determinize(StateSet& set, const SuffixStatistics& stats, std::vector<std::string>* trace) {
    while (true) {
        remove_transients(set, stats);
        bool changed = false;
        while (split_once(set, stats, trace)) changed = true;
        if (!changed) break;
    }
}

}  // namespace cssr
