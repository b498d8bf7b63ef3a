#pragma once

#include <span>
#include <string>
#include <vector>

#include "cssr/ingest.hpp"
#include "cssr/machine.hpp"

namespace cssr {

struct SubtreeClass {
    int id = 0;
    /// Tree nodes (histories of length <= D/2) in the class, breadth-first order.
    std::vector<Word> nodes;
    /// Pooled next-symbol counts of the member nodes.
    std::vector<double> next_counts;
    bool recurrent = false;
};

struct SubtreeEdge {
    int from = 0;
    Symbol symbol = 0;
    int to = 0;
    double prob = 0.0;
};

/// Result of subtree merging. Classes are linked by the suffix-extension rule
/// (node u on a goes to the class of the longest node that is a suffix of ua),
/// so a class may have several successors on one symbol; that is reported in
/// `deterministic`, not repaired.
struct SubtreeModel {
    std::size_t alphabet_size = 0;
    int depth = 0;
    double delta = 0.0;
    std::vector<SubtreeClass> classes;
    std::vector<SubtreeEdge> edges;
    bool deterministic = true;

    std::size_t recurrent_count() const;
};

/// Breadth-first node order; pairs (i, j), i < j, scanned in index order;
/// j is merged into i; the scan restarts after every merge until a full
/// pass finds nothing to merge.
std::string merge_order_policy();

/// Builds the depth-D tree of observed words, takes every node whose depth-D/2
/// subtree is fully observed, and merges classes whose conditional
/// probabilities of every length-D/2 continuation agree within delta.
SubtreeModel subtree_merge(std::span<const SymbolSequence> seqs, std::size_t alphabet_size, int depth, double delta);

std::string export_subtree(const SubtreeModel& model, const Alphabet& alphabet, ExportFormat format);

}  // namespace cssr
