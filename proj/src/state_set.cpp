#include "cssr/state_set.hpp"

#include <algorithm>
#include <numeric>

#include "cssr/errors.hpp"

namespace cssr {

double State::support() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

std::vector<StateId> StateSet::ids() const {
    std::vector<StateId> out;
    out.reserve(states_.size());
    for (const auto& [id, _] : states_) out.push_back(id);
    return out;
}

std::optional<StateId> StateSet::state_of(WordView w) const {
    auto it = assignment_.find(Word(w.begin(), w.end()));
    if (it == assignment_.end()) return std::nullopt;
    return it->second;
}

StateId StateSet::create_state() {
    State s;
    s.id = next_id_++;
    s.counts.assign(k_, 0.0);
    states_.emplace(s.id, std::move(s));
    return next_id_ - 1;
}

void StateSet::add_suffix(StateId id, const Word& w) {
    auto& state = states_.at(id);
    if (!assignment_.emplace(w, id).second) throw Error("suffix assigned twice");
    state.suffixes.insert(w);
}

void StateSet::move_suffix(const Word& w, StateId to) {
    auto it = assignment_.find(w);
    if (it == assignment_.end()) throw Error("moving an unassigned suffix");
    states_.at(it->second).suffixes.erase(w);
    states_.at(to).suffixes.insert(w);
    it->second = to;
}

void StateSet::remove_state(StateId id) {
    auto it = states_.find(id);
    if (it == states_.end()) return;
    for (const auto& w : it->second.suffixes) assignment_.erase(w);
    states_.erase(it);
}

void StateSet::repool(StateId id, const SuffixStatistics& stats) {
    auto& state = states_.at(id);
    std::vector<double> buf(k_);
    state.counts.assign(k_, 0.0);
    for (const auto& w : state.suffixes) {
        stats.next_counts(w, buf);
        for (std::size_t a = 0; a < k_; ++a) state.counts[a] += buf[a];
    }
}

void StateSet::repool_all(const SuffixStatistics& stats) {
    for (auto& [id, _] : states_) repool(id, stats);
}

std::vector<std::pair<Word, StateId>> StateSet::assignments() const {
    std::vector<std::pair<Word, StateId>> out(assignment_.begin(), assignment_.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<Word>> StateSet::partition() const {
    std::vector<std::vector<Word>> out;
    for (const auto& [_, s] : states_) out.emplace_back(s.suffixes.begin(), s.suffixes.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cssr
