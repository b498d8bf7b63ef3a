#include "cssr/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "cssr/errors.hpp"

namespace cssr {

namespace {

bool is_blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw BadParameter("alphabet is empty");
    if (symbols_.size() > 256) throw BadParameter("alphabet has more than 256 symbols");
    std::unordered_set<std::string> seen;
    for (const auto& s : symbols_) {
        if (s.empty()) throw BadParameter("alphabet contains an empty token");
        if (!seen.insert(s).second) throw BadParameter("alphabet contains duplicate token '" + s + "'");
    }
}

Alphabet Alphabet::parse(std::string_view spec) {
    std::vector<std::string> symbols;
    if (spec.find(',') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= spec.size()) {
            auto end = spec.find(',', start);
            if (end == std::string_view::npos) end = spec.size();
            symbols.emplace_back(trim(spec.substr(start, end - start)));
            start = end + 1;
        }
    } else {
        for (char c : trim(spec)) symbols.emplace_back(1, c);
    }
    return Alphabet(std::move(symbols));
}

std::optional<Symbol> Alphabet::index_of(std::string_view token) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i] == token) return static_cast<Symbol>(i);
    return std::nullopt;
}

std::string Alphabet::render(WordView w) const {
    const bool single = std::all_of(symbols_.begin(), symbols_.end(),
                                    [](const std::string& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!single && i > 0) out += ' ';
        out += token(w[i]);
    }
    return out;
}

SequenceFormat parse_format(std::string_view name) {
    if (name == "chars") return SequenceFormat::Chars;
    if (name == "tokens") return SequenceFormat::Tokens;
    throw BadParameter("unknown sequence format '" + std::string(name) + "' (expected chars|tokens)");
}

SymbolSequence parse_sequence(std::string_view raw, const Alphabet& alphabet, SequenceFormat format) {
    raw = trim(raw);
    if (raw.empty()) throw EmptyInput("input sequence is empty");

    SymbolSequence seq;
    if (format == SequenceFormat::Chars) {
        seq.data.reserve(raw.size());
        for (char c : raw) {
            if (c == '\n' || c == '\r') continue;
            auto idx = alphabet.index_of(std::string_view(&c, 1));
            if (!idx) throw UnknownSymbol(seq.data.size(), std::string(1, c));
            seq.data.push_back(*idx);
        }
    } else {
        std::istringstream in{std::string(raw)};
        std::string token;
        while (in >> token) {
            auto idx = alphabet.index_of(token);
            if (!idx) throw UnknownSymbol(seq.data.size(), token);
            seq.data.push_back(*idx);
        }
    }
    return seq;
}

std::vector<SymbolSequence> parse_multisequence(std::string_view text, const Alphabet& alphabet,
                                                SequenceFormat format) {
    std::vector<SymbolSequence> out;
    std::string block;
    auto flush = [&] {
        if (!block.empty()) out.push_back(parse_sequence(block, alphabet, format));
        block.clear();
    };

    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (is_blank(line)) {
            flush();
        } else {
            block.append(line);
            block.push_back('\n');
        }
        start = end + 1;
    }
    flush();

    if (out.empty()) throw EmptyInput("input contains no sequences");
    return out;
}

std::vector<SymbolSequence> load_multisequence(const std::filesystem::path& path,
                                               const Alphabet& alphabet, SequenceFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
    return parse_multisequence(buf.str(), alphabet, format);
}

std::string render_sequence(const SymbolSequence& seq, const Alphabet& alphabet, SequenceFormat format) {
    std::string out;
    for (std::size_t i = 0; i < seq.data.size(); ++i) {
        if (format == SequenceFormat::Tokens && i > 0) out += ' ';
        out += alphabet.token(seq.data[i]);
    }
    return out;
}

}  // namespace cssr
