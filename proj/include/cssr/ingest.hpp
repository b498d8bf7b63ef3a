#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cssr/word.hpp"

namespace cssr {

/// Ordered, duplicate-free list of symbol tokens. The order is canonical for a
/// run: KS statistics are taken over CDFs in this order.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    /// "01" -> {"0","1"}; "a,b,c" -> {"a","b","c"}.
    static Alphabet parse(std::string_view spec);
    static Alphabet binary() { return Alphabet({"0", "1"}); }

    std::size_t size() const { return symbols_.size(); }
    const std::string& token(Symbol s) const { return symbols_.at(s); }
    const std::vector<std::string>& tokens() const { return symbols_; }
    std::optional<Symbol> index_of(std::string_view token) const;

    /// Renders a word using single-character tokens when possible, else
    /// space-separated tokens.
    std::string render(WordView w) const;

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> symbols_;
};

enum class SequenceFormat { Chars, Tokens };

SequenceFormat parse_format(std::string_view name);

struct SymbolSequence {
    Word data;
    std::size_t size() const { return data.size(); }
    bool operator==(const SymbolSequence&) const = default;
};

SymbolSequence parse_sequence(std::string_view raw, const Alphabet& alphabet, SequenceFormat format);

/// Splits text on blank lines and parses each block as an independent sequence.
std::vector<SymbolSequence> parse_multisequence(std::string_view text, const Alphabet& alphabet,
                                                SequenceFormat format);

std::vector<SymbolSequence> load_multisequence(const std::filesystem::path& path,
                                               const Alphabet& alphabet, SequenceFormat format);

std::string render_sequence(const SymbolSequence& seq, const Alphabet& alphabet, SequenceFormat format);

}  // namespace cssr
