#include "cssr/homogenize.hpp"

#include <sstream>

#include "cssr/errors.hpp"

namespace cssr {

namespace {

std::string show(WordView w) {
    std::string s = "*";
    if (w.empty()) return s + "λ";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0 && (w[i] > 9 || w[i - 1] > 9)) s += '.';
        s += std::to_string(w[i]);
    }
    return s;
}

}  // namespace

StateSet initialize(const SuffixStatistics& stats) {
    StateSet set(stats.alphabet_size());
    const StateId id = set.create_state();
    set.add_suffix(id, Word{});
    set.repool(id, stats);
    return set;
}

std::vector<Word> child_suffixes(WordView w, const SuffixStatistics& stats, double min_support) {
    std::vector<Word> out;
    if (w.size() >= static_cast<std::size_t>(stats.lmax())) return out;
    for (std::size_t a = 0; a < stats.alphabet_size(); ++a) {
        Word child = prepend(static_cast<Symbol>(a), w);
        const double support = stats.support(child);
        if (support > 0.0 && support >= min_support) out.push_back(std::move(child));
    }
    return out;
}

StateSet homogenize(const SuffixStatistics& stats, int lmax, const MorphComparator& comparator,
                    const HomogenizeOptions& options, std::vector<std::string>* trace) {
    if (lmax != stats.lmax())
        throw LmaxMismatch("homogenize lmax " + std::to_string(lmax) + " differs from statistics lmax " +
                           std::to_string(stats.lmax()));
    const std::size_t k = stats.alphabet_size();
    StateSet set = initialize(stats);

    for (int length = 0; length < lmax; ++length) {
        // Morphs are frozen for the pass; states founded during it use their founder's morph.
        std::map<StateId, Morph> frozen;
        for (const auto& [id, s] : set.states()) frozen.emplace(id, s.morph());

        std::vector<double> child_counts(k), excluded(k);
        for (StateId parent : set.ids()) {
            std::vector<Word> members;
            for (const auto& w : set.state(parent).suffixes)
                if (w.size() == static_cast<std::size_t>(length)) members.push_back(w);

            for (const auto& w : members) {
                for (auto& child : child_suffixes(w, stats, options.min_support)) {
                    stats.next_counts(child, child_counts);
                    const Morph child_morph = Morph::from_counts(child_counts);

                    Morph parent_morph = frozen.at(parent);
                    if (options.exclude_child_from_parent) {
                        const auto& pooled = set.state(parent).counts;
                        for (std::size_t a = 0; a < k; ++a) excluded[a] = std::max(0.0, pooled[a] - child_counts[a]);
                        Morph rest = Morph::from_counts(excluded);
                        if (rest.defined()) parent_morph = std::move(rest);
                    }

                    const Comparison vs_parent = comparator.compare(child_morph, parent_morph);
                    std::ostringstream line;
                    if (trace) line << show(child) << " parent=" << parent << " score=" << vs_parent.score;

                    if (!vs_parent.reject) {
                        set.add_suffix(parent, child);
                        if (trace) trace->push_back(line.str() + " action=stay");
                        continue;
                    }

                    std::optional<StateId> best;
                    Comparison best_cmp;
                    for (const auto& [id, morph] : frozen) {
                        if (id == parent) continue;
                        const Comparison c = comparator.compare(child_morph, morph);
                        if (c.reject) continue;
                        // Iteration is in id order, so strict comparisons keep the older state on ties.
                        if (!best || c.score > best_cmp.score ||
                            (c.score == best_cmp.score && c.statistic < best_cmp.statistic)) {
                            best = id;
                            best_cmp = c;
                        }
                    }

                    if (best) {
                        set.add_suffix(*best, child);
                        if (trace) trace->push_back(line.str() + " action=move(" + std::to_string(*best) + ")");
                    } else {
                        const StateId fresh = set.create_state();
                        set.add_suffix(fresh, child);
                        frozen.emplace(fresh, child_morph);
                        if (trace) trace->push_back(line.str() + " action=new(" + std::to_string(fresh) + ")");
                    }
                }
            }
        }
        set.repool_all(stats);
    }
    return set;
}

}  // namespace cssr
