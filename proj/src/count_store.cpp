#include "cssr/count_store.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cssr/errors.hpp"

namespace cssr {

namespace {

constexpr std::uint64_t kDenseLimit = 1ull << 22;

std::string key_of(WordView w) { return std::string(w.begin(), w.end()); }

std::uint64_t code_of(WordView w, std::size_t k) {
    std::uint64_t code = 0;
    for (Symbol s : w) code = code * k + s;
    return code;
}

Word word_of(std::uint64_t code, std::size_t length, std::size_t k) {
    Word w(length);
    for (std::size_t i = length; i-- > 0;) {
        w[i] = static_cast<Symbol>(code % k);
        code /= k;
    }
    return w;
}

}  // namespace

double SuffixStatistics::support(WordView w) const {
    std::vector<double> buf(alphabet_size());
    next_counts(w, buf);
    double total = 0.0;
    for (double c : buf) total += c;
    return total;
}

CountStore::CountStore(std::size_t k, int lmax, Windowing windowing)
    : k_(k), lmax_(lmax), windowing_(windowing), totals_(static_cast<std::size_t>(lmax) + 2, 0) {
    if (k < 1 || k > 256) throw BadParameter("alphabet size must be in [1, 256]");
    if (lmax < 1) throw BadParameter("lmax must be >= 1");

    // Fits densely if k^(lmax+1) stays under the limit.
    std::uint64_t cells = 1;
    bool fits = true;
    for (int l = 0; l <= lmax; ++l) {
        if (cells > kDenseLimit / k) {
            fits = false;
            break;
        }
        cells *= k;
    }
    if (fits) {
        dense_.resize(static_cast<std::size_t>(lmax) + 2);
        std::uint64_t size = 1;
        for (auto& table : dense_) {
            table.assign(size, 0);
            size *= k;
        }
    }
}

std::uint64_t& CountStore::slot(WordView w) {
    if (dense()) return dense_[w.size()][code_of(w, k_)];
    return sparse_[key_of(w)];
}

CountStore CountStore::build(std::span<const SymbolSequence> seqs, std::size_t alphabet_size, int lmax,
                             Windowing windowing) {
    CountStore store(alphabet_size, lmax, windowing);
    const auto window = static_cast<std::size_t>(lmax) + 1;

    bool any_full_window = false;
    for (const auto& seq : seqs) {
        const auto& data = seq.data;
        const std::size_t n = data.size();
        if (n >= window) any_full_window = true;
        for (Symbol s : data)
            if (s >= alphabet_size) throw BadParameter("sequence symbol outside alphabet");

        const std::size_t first_end = windowing == Windowing::SuffixClosed ? window - 1 : 0;
        if (n <= first_end) continue;

        if (store.dense()) {
            // Rolling base-k code of the last lmax+1 symbols; the code of the
            // last l symbols is that value mod k^l.
            std::vector<std::uint64_t> pow(window + 1, 1);
            for (std::size_t l = 1; l <= window; ++l) pow[l] = pow[l - 1] * alphabet_size;
            std::uint64_t code = 0;
            for (std::size_t p = 0; p < n; ++p) {
                code = (code * alphabet_size + data[p]) % pow[window];
                if (p < first_end) continue;
                const std::size_t longest = std::min(window, p + 1);
                for (std::size_t l = 1; l <= longest; ++l) {
                    ++store.dense_[l][code % pow[l]];
                    ++store.totals_[l];
                }
                ++store.totals_[0];
            }
        } else {
            for (std::size_t p = first_end; p < n; ++p) {
                const std::size_t longest = std::min(window, p + 1);
                store.add_window(WordView(data.data() + (p + 1 - longest), longest));
            }
        }
    }

    if (!any_full_window)
        throw LmaxTooLargeForData("no sequence has a window of length lmax+1 = " + std::to_string(window));
    return store;
}

void CountStore::add_window(WordView tail) {
    for (std::size_t l = 1; l <= tail.size(); ++l) {
        ++slot(tail.subspan(tail.size() - l));
        ++totals_[l];
    }
    ++totals_[0];
}

CountStore CountStore::from_counts(std::size_t alphabet_size, int lmax,
                                   const std::vector<std::pair<Word, std::uint64_t>>& counts) {
    CountStore store(alphabet_size, lmax, Windowing::SuffixClosed);
    for (const auto& [w, c] : counts) {
        if (w.empty() || w.size() > static_cast<std::size_t>(lmax) + 1)
            throw WordTooLong("word length out of range for lmax");
        for (Symbol s : w)
            if (s >= alphabet_size) throw BadParameter("word symbol outside alphabet");
        store.slot(w) += c;
        store.totals_[w.size()] += c;
    }
    store.totals_[0] = store.totals_[1];
    return store;
}

std::uint64_t CountStore::count(WordView w) const {
    if (w.size() > static_cast<std::size_t>(lmax_) + 1)
        throw WordTooLong("word of length " + std::to_string(w.size()) + " exceeds lmax+1");
    if (w.empty()) return totals_[0];
    for (Symbol s : w)
        if (s >= k_) return 0;
    if (dense()) return dense_[w.size()][code_of(w, k_)];
    auto it = sparse_.find(key_of(w));
    return it == sparse_.end() ? 0 : it->second;
}

void CountStore::next_counts(WordView w, std::span<double> out) const {
    if (w.size() > static_cast<std::size_t>(lmax_))
        throw WordTooLong("suffix of length " + std::to_string(w.size()) + " exceeds lmax");
    Word extended(w.begin(), w.end());
    extended.push_back(0);
    for (std::size_t a = 0; a < k_; ++a) {
        extended.back() = static_cast<Symbol>(a);
        out[a] = static_cast<double>(count(extended));
    }
}

void CountStore::for_each(const std::function<void(WordView, std::uint64_t)>& fn) const {
    if (dense()) {
        std::vector<std::pair<Word, std::uint64_t>> rows;
        for (std::size_t l = 1; l < dense_.size(); ++l)
            for (std::uint64_t code = 0; code < dense_[l].size(); ++code)
                if (dense_[l][code] > 0) rows.emplace_back(word_of(code, l, k_), dense_[l][code]);
        std::sort(rows.begin(), rows.end());
        for (const auto& [w, c] : rows) fn(w, c);
        return;
    }
    std::map<Word, std::uint64_t> sorted;
    for (const auto& [key, c] : sparse_)
        if (c > 0) sorted.emplace(Word(key.begin(), key.end()), c);
    for (const auto& [w, c] : sorted) fn(w, c);
}

std::string CountStore::to_csv(const Alphabet& alphabet) const {
    std::ostringstream out;
    out << "word,count\n";
    for_each([&](WordView w, std::uint64_t c) { out << alphabet.render(w) << ',' << c << '\n'; });
    return out.str();
}

}  // namespace cssr
