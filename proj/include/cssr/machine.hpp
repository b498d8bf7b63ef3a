#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cssr/errors.hpp"
#include "cssr/ingest.hpp"
#include "cssr/state_set.hpp"

namespace cssr {

/// Probability distribution over labelled outcomes (words or state ids).
struct Distribution {
    std::vector<std::string> outcomes;
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }
};

struct MachineState {
    StateId id = 0;
    std::vector<Word> suffixes;
    /// Pooled suffix count backing the state's morph (0 for hand-built machines).
    double support = 0.0;

    bool operator==(const MachineState&) const = default;
};

/// Recurrent causal states with labelled transition matrices:
/// T[s](i, j) = P(next symbol s and next state j | state i).
class EpsilonMachine {
public:
    EpsilonMachine(Alphabet alphabet, std::vector<MachineState> states, std::vector<Eigen::MatrixXd> labelled);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t alphabet_size() const { return alphabet_.size(); }
    std::size_t size() const { return states_.size(); }
    const std::vector<MachineState>& states() const { return states_; }
    const Eigen::MatrixXd& labelled(Symbol s) const { return labelled_.at(s); }

    /// P(next symbol s | state i).
    double emission(std::size_t i, Symbol s) const { return labelled_[s].row(static_cast<Eigen::Index>(i)).sum(); }
    /// Unique successor of state i on s, if s can be emitted there.
    std::optional<std::size_t> successor(std::size_t i, Symbol s) const;
    /// State-to-state matrix P = sum_s T[s].
    Eigen::MatrixXd state_matrix() const;

    /// Checks nonnegativity, row-stochasticity (1e-9), determinism and that the
    /// state graph is a union of closed SCCs. Throws InvalidMachine.
    void validate() const;

    bool operator==(const EpsilonMachine& other) const;

private:
    Alphabet alphabet_;
    std::vector<MachineState> states_;
    std::vector<Eigen::MatrixXd> labelled_;
};

/// T[s](i,j) = sum_{w in i} nu(ws) / sum_{w in i} nu(w·) when state i goes to j
/// on s. Requires a deterministic, leak-free state set.
EpsilonMachine estimate_transitions(const StateSet& set, const SuffixStatistics& stats, const Alphabet& alphabet);

/// Unique pi with pi P = pi. Throws Reducible when P has several closed classes.
Distribution stationary_distribution(const EpsilonMachine& m);

/// Stationary distribution of an irreducible machine; for a reducible one, the
/// per-class stationary distributions mixed by the classes' pooled support (or
/// uniformly when supports are unknown).
std::vector<double> occupation_distribution(const EpsilonMachine& m);

/// Thrown by stationary_distribution; carries one distribution per closed class.
class Reducible : public Error {
public:
    Reducible(std::vector<std::vector<std::size_t>> classes, std::vector<std::vector<double>> per_class)
        : Error("state chain is reducible (" + std::to_string(classes.size()) + " closed classes)"),
          classes_(std::move(classes)), per_class_(std::move(per_class)) {}
    const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
    const std::vector<std::vector<double>>& per_class() const { return per_class_; }

private:
    std::vector<std::vector<std::size_t>> classes_;
    std::vector<std::vector<double>> per_class_;
};

double statistical_complexity(const EpsilonMachine& m);
double entropy_rate(const EpsilonMachine& m);

/// Distribution over all k^L words of length L (lexicographic order), started
/// from the stationary distribution.
Distribution word_distribution(const EpsilonMachine& m, int length);
/// Same, started from an explicit state distribution.
Distribution word_distribution(const EpsilonMachine& m, int length, const std::vector<double>& initial);

double variational_distance(const Distribution& p, const Distribution& q);

double entropy(const Distribution& d);
double entropy(std::span<const double> probs);
/// Joint distribution p(x, y) as a row-major matrix, rows indexed by x.
double conditional_entropy(const Eigen::MatrixXd& joint);  // H[X|Y]
double mutual_information(const Eigen::MatrixXd& joint);   // I[X;Y]

enum class ExportFormat { Dot, Json };

std::string export_machine(const EpsilonMachine& m, ExportFormat format);
EpsilonMachine parse_machine_json(std::string_view text);

/// True when the two machines have the same labelled transition structure up
/// to a relabelling of states (probabilities ignored).
bool same_topology(const EpsilonMachine& a, const EpsilonMachine& b);

}  // namespace cssr
