#include "cssr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cssr/determinize.hpp"
#include "cssr/errors.hpp"
#include "cssr/homogenize.hpp"

namespace cssr {

namespace {

Eigen::RowVectorXd stationary_row(const EpsilonMachine& m) {
    const auto pi = stationary_distribution(m).probs;
    return Eigen::Map<const Eigen::RowVectorXd>(pi.data(), static_cast<Eigen::Index>(pi.size()));
}

}  // namespace

ExactStatistics::ExactStatistics(const EpsilonMachine& m, int lmax) : m_(m), lmax_(lmax), pi_(stationary_row(m)) {
    if (lmax < 1) throw BadParameter("lmax must be >= 1");
}

double ExactStatistics::probability(WordView w) const {
    Eigen::RowVectorXd v = pi_;
    for (Symbol s : w) v = v * m_.labelled(s);
    return v.sum();
}

void ExactStatistics::next_counts(WordView w, std::span<double> out) const {
    if (static_cast<int>(w.size()) > lmax_) throw WordTooLong("suffix longer than lmax");
    Eigen::RowVectorXd v = pi_;
    for (Symbol s : w) v = v * m_.labelled(s);
    for (std::size_t a = 0; a < out.size(); ++a) out[a] = (v * m_.labelled(static_cast<Symbol>(a))).sum();
}

std::map<Word, Morph> exact_morphs(const EpsilonMachine& m, int lmax) {
    const std::size_t k = m.alphabet_size();
    std::map<Word, Morph> out;
    // Breadth-first over words; each entry carries the normalised state
    // distribution after the word.
    std::vector<std::pair<Word, Eigen::RowVectorXd>> level{{Word{}, stationary_row(m)}};
    for (int len = 0; len <= lmax; ++len) {
        std::vector<std::pair<Word, Eigen::RowVectorXd>> next_level;
        for (const auto& [w, dist] : level) {
            Morph morph;
            morph.probs.resize(k);
            morph.support = 1.0;
            for (std::size_t a = 0; a < k; ++a) {
                const Eigen::RowVectorXd after = dist * m.labelled(static_cast<Symbol>(a));
                const double p = after.sum();
                morph.probs[a] = p;
                if (len < lmax && p > 0.0) next_level.emplace_back(append(w, static_cast<Symbol>(a)), after / p);
            }
            out.emplace(w, std::move(morph));
        }
        level = std::move(next_level);
    }
    return out;
}

StateSet exact_reconstruct(const EpsilonMachine& m, int lmax) {
    ExactStatistics stats(m, lmax);
    ExactComparator comparator;
    HomogenizeOptions options;
    options.min_support = 0.0;
    options.exclude_child_from_parent = false;
    StateSet set = homogenize(stats, lmax, comparator, options);
    try {
        determinize(set, stats);
    } catch (const NoRecurrentStates&) {
        throw LmaxBelowSynchronization("no recurrent states at lmax " + std::to_string(lmax));
    }
    const auto table = compute_transitions(set, stats);
    if (!table.deterministic() || !table.unresolved.empty())
        throw LmaxBelowSynchronization("exact partition is not deterministic at lmax " + std::to_string(lmax));

    // A partition built from too-short histories can still be deterministic;
    // it then predicts longer words wrongly.
    const auto fitted = estimate_transitions(set, stats, m.alphabet());
    const double bits = std::log2(static_cast<double>(std::max<std::size_t>(m.alphabet_size(), 2)));
    const int length = std::max(1, std::min(lmax + 4, static_cast<int>(16.0 / bits)));
    const double gap = variational_distance(word_distribution(m, length),
                                            word_distribution(fitted, length, occupation_distribution(fitted)));
    if (gap > 1e-9)
        throw LmaxBelowSynchronization("exact partition at lmax " + std::to_string(lmax) +
                                       " does not reproduce the word distribution");
    return set;
}

int synchronization_length(const EpsilonMachine& m, int limit) {
    const std::size_t n = m.size(), k = m.alphabet_size();
    std::set<std::size_t> reached;
    // Each frontier entry is the set of states possible after a word.
    std::set<std::vector<bool>> frontier{std::vector<bool>(n, true)};
    for (int len = 0; len <= limit; ++len) {
        std::set<std::vector<bool>> next;
        for (const auto& possible : frontier) {
            std::size_t count = 0, last = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (possible[i]) ++count, last = i;
            if (count == 1) reached.insert(last);
            for (std::size_t a = 0; a < k; ++a) {
                std::vector<bool> after(n, false);
                bool any = false;
                for (std::size_t i = 0; i < n; ++i)
                    if (possible[i])
                        if (auto j = m.successor(i, static_cast<Symbol>(a))) after[*j] = any = true;
                if (any) next.insert(std::move(after));
            }
        }
        if (reached.size() == n) return len;
        frontier = std::move(next);
    }
    throw LmaxBelowSynchronization("machine does not synchronize within " + std::to_string(limit) + " symbols");
}

bool partitions_agree(const StateSet& a, const StateSet& b) {
    if (a.size() != b.size()) return false;
    std::map<StateId, StateId> ab, ba;
    for (const auto& [w, sa] : a.assignments()) {
        auto sb = b.state_of(w);
        if (!sb) continue;
        auto [it1, new1] = ab.emplace(sa, *sb);
        auto [it2, new2] = ba.emplace(*sb, sa);
        if (it1->second != *sb || it2->second != sa) return false;
    }
    return true;
}

}  // namespace cssr
