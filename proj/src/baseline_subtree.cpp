#include "cssr/baseline_subtree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

#include "cssr/count_store.hpp"
#include "cssr/determinize.hpp"
#include "cssr/errors.hpp"

namespace cssr {

namespace {

/// All words of exactly `length` symbols, lexicographic.
std::vector<Word> words_of_length(std::size_t k, int length) {
    std::vector<Word> out{Word{}};
    for (int l = 0; l < length; ++l) {
        std::vector<Word> next;
        next.reserve(out.size() * k);
        for (const auto& w : out)
            for (std::size_t a = 0; a < k; ++a) next.push_back(append(w, static_cast<Symbol>(a)));
        out = std::move(next);
    }
    return out;
}

struct Node {
    Word word;
    std::vector<double> futures;  // count(u v) for every v of length D/2
    std::vector<double> next;     // count(u a)
};

bool equivalent(const std::vector<double>& a, const std::vector<double>& b, double delta) {
    double ta = 0.0, tb = 0.0;
    for (double x : a) ta += x;
    for (double x : b) tb += x;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::fabs(a[i] / ta - b[i] / tb) > delta) return false;
    return true;
}

}  // namespace

std::size_t SubtreeModel::recurrent_count() const {
    return static_cast<std::size_t>(
        std::count_if(classes.begin(), classes.end(), [](const SubtreeClass& c) { return c.recurrent; }));
}

std::string merge_order_policy() {
    return "breadth-first nodes; pairs (i<j) in index order; merge j into i; restart scan after each merge";
}

SubtreeModel subtree_merge(std::span<const SymbolSequence> seqs, std::size_t k, int depth, double delta) {
    if (depth < 2 || depth % 2 != 0) throw BadParameter("tree depth must be an even number >= 2");
    if (!(delta > 0.0 && delta < 1.0)) throw BadParameter("delta must lie in (0, 1)");

    std::optional<CountStore> store;
    try {
        store.emplace(CountStore::build(seqs, k, depth - 1));
    } catch (const LmaxTooLargeForData& e) {
        throw DepthTooLargeForData(e.what());
    }
    const int half = depth / 2;
    const auto futures = words_of_length(k, half);

    std::vector<Node> nodes;
    for (int len = 0; len <= half; ++len)
        for (const auto& u : words_of_length(k, len)) {
            Node node{u, {}, std::vector<double>(k)};
            double total = 0.0;
            for (const auto& v : futures) {
                Word uv = u;
                uv.insert(uv.end(), v.begin(), v.end());
                node.futures.push_back(static_cast<double>(store->count(uv)));
                total += node.futures.back();
            }
            if (total <= 0.0) continue;
            store->next_counts(u, node.next);
            nodes.push_back(std::move(node));
        }
    if (nodes.empty()) throw DepthTooLargeForData("no tree node has a complete subtree");

    // members[c] lists node indices; pooled[c] sums their future counts.
    std::vector<std::vector<std::size_t>> members;
    std::vector<std::vector<double>> pooled;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        members.push_back({i});
        pooled.push_back(nodes[i].futures);
    }
    for (bool merged = true; merged;) {
        merged = false;
        for (std::size_t i = 0; i < members.size() && !merged; ++i)
            for (std::size_t j = i + 1; j < members.size() && !merged; ++j) {
                if (!equivalent(pooled[i], pooled[j], delta)) continue;
                members[i].insert(members[i].end(), members[j].begin(), members[j].end());
                for (std::size_t f = 0; f < futures.size(); ++f) pooled[i][f] += pooled[j][f];
                members.erase(members.begin() + static_cast<std::ptrdiff_t>(j));
                pooled.erase(pooled.begin() + static_cast<std::ptrdiff_t>(j));
                merged = true;
            }
    }

    SubtreeModel model;
    model.alphabet_size = k;
    model.depth = depth;
    model.delta = delta;
    std::map<Word, int> class_of;
    for (std::size_t c = 0; c < members.size(); ++c) {
        SubtreeClass cls;
        cls.id = static_cast<int>(c);
        cls.next_counts.assign(k, 0.0);
        std::sort(members[c].begin(), members[c].end());
        for (auto i : members[c]) {
            cls.nodes.push_back(nodes[i].word);
            class_of[nodes[i].word] = cls.id;
            for (std::size_t a = 0; a < k; ++a) cls.next_counts[a] += nodes[i].next[a];
        }
        model.classes.push_back(std::move(cls));
    }

    // Edge weights: counts of u·a over member nodes, grouped by target class.
    std::map<std::tuple<int, Symbol, int>, double> weight;
    for (const auto& cls : model.classes)
        for (std::size_t i = 0; i < cls.nodes.size(); ++i) {
            const auto& u = cls.nodes[i];
            std::vector<double> next(k);
            store->next_counts(u, next);
            for (std::size_t a = 0; a < k; ++a) {
                if (next[a] <= 0.0) continue;
                Word ua = append(u, static_cast<Symbol>(a));
                for (std::size_t cut = 0; cut <= ua.size(); ++cut) {
                    Word tail(ua.begin() + static_cast<std::ptrdiff_t>(cut), ua.end());
                    if (auto it = class_of.find(tail); it != class_of.end()) {
                        weight[{cls.id, static_cast<Symbol>(a), it->second}] += next[a];
                        break;
                    }
                }
            }
        }

    StateGraph graph;
    std::map<std::pair<int, Symbol>, int> fanout;
    for (const auto& cls : model.classes) graph[cls.id];
    for (const auto& [key, w] : weight) {
        const auto [from, a, to] = key;
        double total = 0.0;
        for (double c : model.classes[static_cast<std::size_t>(from)].next_counts) total += c;
        model.edges.push_back({from, a, to, w / total});
        graph[from].insert(to);
        if (++fanout[{from, a}] > 1) model.deterministic = false;
    }
    const auto recurrent = recurrent_states(graph);
    for (auto& cls : model.classes) cls.recurrent = recurrent.count(cls.id) > 0;
    return model;
}

std::string export_subtree(const SubtreeModel& model, const Alphabet& alphabet, ExportFormat format) {
    if (format == ExportFormat::Dot) {
        std::ostringstream out;
        out << "digraph subtree_model {\n  rankdir=LR;\n  node [shape=circle];\n"
            << "  label=\"deterministic=" << (model.deterministic ? "true" : "false") << "\";\n";
        for (const auto& c : model.classes)
            out << "  c" << c.id << " [label=\"" << c.id << "\"" << (c.recurrent ? "" : ", style=dashed") << "];\n";
        for (const auto& e : model.edges) {
            char prob[32];
            std::snprintf(prob, sizeof prob, "%.3f", e.prob);
            out << "  c" << e.from << " -> c" << e.to << " [label=\"" << alphabet.token(e.symbol) << " | " << prob
                << "\"];\n";
        }
        out << "}\n";
        return out.str();
    }
    nlohmann::json j;
    j["alphabet"] = alphabet.tokens();
    j["depth"] = model.depth;
    j["delta"] = model.delta;
    j["deterministic"] = model.deterministic;
    j["merge_order"] = merge_order_policy();
    j["classes"] = nlohmann::json::array();
    for (const auto& c : model.classes) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const auto& w : c.nodes) nodes.push_back(alphabet.render(w));
        j["classes"].push_back({{"id", c.id}, {"nodes", nodes}, {"recurrent", c.recurrent}, {"next_counts", c.next_counts}});
    }
    j["transitions"] = nlohmann::json::array();
    for (const auto& e : model.edges)
        j["transitions"].push_back({{"from", e.from}, {"symbol", alphabet.token(e.symbol)}, {"to", e.to}, {"prob", e.prob}});
    return j.dump(2) + "\n";
}

}  // namespace cssr
