#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cssr {

/// Index of a symbol in its alphabet. Alphabets hold at most 256 symbols.
using Symbol = std::uint8_t;

/// A finite string over an alphabet, oldest symbol first. A suffix "*w" is
/// stored as w; the null suffix is the empty word.
using Word = std::vector<Symbol>;
using WordView = std::span<const Symbol>;

struct WordHash {
    std::size_t operator()(WordView w) const noexcept {
        // FNV-1a, length folded in so "" and "\0" differ.
        std::uint64_t h = 1469598103934665603ull ^ w.size();
        for (Symbol s : w) {
            h ^= s;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
    std::size_t operator()(const Word& w) const noexcept { return (*this)(WordView(w)); }
};

inline Word make_word(std::initializer_list<int> symbols) {
    Word w;
    w.reserve(symbols.size());
    for (int s : symbols) w.push_back(static_cast<Symbol>(s));
    return w;
}

/// Word from a string of decimal digits, e.g. "0110". Test and CLI helper.
inline Word digits_to_word(std::string_view digits) {
    Word w;
    w.reserve(digits.size());
    for (char c : digits) w.push_back(static_cast<Symbol>(c - '0'));
    return w;
}

/// Returns the word with symbol a prepended (the child suffix a·w).
inline Word prepend(Symbol a, WordView w) {
    Word out;
    out.reserve(w.size() + 1);
    out.push_back(a);
    out.insert(out.end(), w.begin(), w.end());
    return out;
}

inline Word append(WordView w, Symbol a) {
    Word out(w.begin(), w.end());
    out.push_back(a);
    return out;
}

}  // namespace cssr
