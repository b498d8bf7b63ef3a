#include "cssr/machine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "cssr/determinize.hpp"
#include "cssr/errors.hpp"

namespace cssr {

namespace {

constexpr double kStochasticTol = 1e-9;

StateGraph graph_of(const EpsilonMachine& m) {
    StateGraph g;
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto& edges = g[static_cast<StateId>(i)];
        for (std::size_t s = 0; s < m.alphabet_size(); ++s)
            if (auto j = m.successor(i, static_cast<Symbol>(s))) edges.insert(static_cast<StateId>(*j));
    }
    return g;
}

std::string fixed3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

}  // namespace

EpsilonMachine::EpsilonMachine(Alphabet alphabet, std::vector<MachineState> states,
                               std::vector<Eigen::MatrixXd> labelled)
    : alphabet_(std::move(alphabet)), states_(std::move(states)), labelled_(std::move(labelled)) {
    const auto n = static_cast<Eigen::Index>(states_.size());
    if (labelled_.size() != alphabet_.size()) throw InvalidMachine("need one transition matrix per symbol");
    for (const auto& t : labelled_)
        if (t.rows() != n || t.cols() != n) throw InvalidMachine("transition matrix has wrong shape");
}

std::optional<std::size_t> EpsilonMachine::successor(std::size_t i, Symbol s) const {
    const auto& t = labelled_.at(s);
    for (Eigen::Index j = 0; j < t.cols(); ++j)
        if (t(static_cast<Eigen::Index>(i), j) > 0.0) return static_cast<std::size_t>(j);
    return std::nullopt;
}

Eigen::MatrixXd EpsilonMachine::state_matrix() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (const auto& t : labelled_) p += t;
    return p;
}

void EpsilonMachine::validate() const {
    if (states_.empty()) throw InvalidMachine("machine has no states");
    for (std::size_t i = 0; i < size(); ++i) {
        double row = 0.0;
        for (std::size_t s = 0; s < alphabet_size(); ++s) {
            const auto r = labelled_[s].row(static_cast<Eigen::Index>(i));
            if ((r.array() < 0.0).any()) throw InvalidMachine("negative transition probability");
            if ((r.array() > 0.0).count() > 1)
                throw InvalidMachine("state " + std::to_string(i) + " is nondeterministic on symbol " +
                                     alphabet_.token(static_cast<Symbol>(s)));
            row += r.sum();
        }
        if (std::fabs(row - 1.0) > kStochasticTol)
            throw InvalidMachine("row " + std::to_string(i) + " sums to " + std::to_string(row));
    }
    if (recurrent_states(graph_of(*this)).size() != size())
        throw InvalidMachine("state graph has transient states");
}

bool EpsilonMachine::operator==(const EpsilonMachine& other) const {
    if (!(alphabet_ == other.alphabet_) || !(states_ == other.states_)) return false;
    for (std::size_t s = 0; s < labelled_.size(); ++s)
        if (labelled_[s] != other.labelled_[s]) return false;
    return true;
}

EpsilonMachine estimate_transitions(const StateSet& set, const SuffixStatistics& stats, const Alphabet& alphabet) {
    const std::size_t k = set.alphabet_size();
    if (alphabet.size() != k) throw BadParameter("alphabet size does not match the state set");
    const auto table = compute_transitions(set, stats);
    if (!table.deterministic()) throw NondeterministicInput("state set is not deterministic");
    if (!table.unresolved.empty()) throw NondeterministicInput("state set has observed symbols without a successor");

    std::vector<StateId> ids = set.ids();
    std::map<StateId, Eigen::Index> index;
    std::vector<MachineState> states;
    for (StateId id : ids) {
        index[id] = static_cast<Eigen::Index>(states.size());
        const auto& s = set.state(id);
        states.push_back({id, std::vector<Word>(s.suffixes.begin(), s.suffixes.end()), s.support()});
    }

    const auto n = static_cast<Eigen::Index>(ids.size());
    std::vector<Eigen::MatrixXd> labelled(k, Eigen::MatrixXd::Zero(n, n));
    for (StateId id : ids) {
        const auto& state = set.state(id);
        const double total = state.support();
        if (total <= 0.0) throw NondeterministicInput("state without support");
        const auto& per_symbol = table.successors.at(id);
        for (std::size_t a = 0; a < k; ++a) {
            if (state.counts[a] <= 0.0) continue;
            const StateId target = *per_symbol[a].begin();
            auto it = index.find(target);
            if (it == index.end()) throw NondeterministicInput("successor outside the state set");
            labelled[a](index[id], it->second) = state.counts[a] / total;
        }
    }
    return EpsilonMachine(alphabet, std::move(states), std::move(labelled));
}

namespace {

std::vector<double> solve_stationary(const Eigen::MatrixXd& p) {
    const auto n = p.rows();
    // (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
    Eigen::MatrixXd a = p.transpose() - Eigen::MatrixXd::Identity(n, n);
    a.row(n - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b(n - 1) = 1.0;
    Eigen::VectorXd pi = a.colPivHouseholderQr().solve(b);
    std::vector<double> out(pi.data(), pi.data() + n);
    for (auto& x : out) x = std::max(0.0, x);
    const double total = std::accumulate(out.begin(), out.end(), 0.0);
    for (auto& x : out) x /= total;
    return out;
}

std::vector<std::vector<std::size_t>> closed_classes(const EpsilonMachine& m) {
    const auto g = graph_of(m);
    const auto recurrent = recurrent_states(g);
    std::vector<std::vector<std::size_t>> out;
    for (const auto& comp : strongly_connected_components(g)) {
        if (!recurrent.count(comp.front())) continue;
        std::vector<std::size_t> cls;
        for (StateId v : comp) cls.push_back(static_cast<std::size_t>(v));
        out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> class_stationary(const EpsilonMachine& m, const std::vector<std::size_t>& cls) {
    const auto p = m.state_matrix();
    const auto c = static_cast<Eigen::Index>(cls.size());
    Eigen::MatrixXd sub(c, c);
    for (Eigen::Index i = 0; i < c; ++i)
        for (Eigen::Index j = 0; j < c; ++j)
            sub(i, j) = p(static_cast<Eigen::Index>(cls[i]), static_cast<Eigen::Index>(cls[j]));
    return solve_stationary(sub);
}

}  // namespace

Distribution stationary_distribution(const EpsilonMachine& m) {
    const auto classes = closed_classes(m);
    std::size_t covered = 0;
    for (const auto& c : classes) covered += c.size();
    if (classes.size() != 1 || covered != m.size()) {
        std::vector<std::vector<double>> per_class;
        for (const auto& c : classes) per_class.push_back(class_stationary(m, c));
        throw Reducible(classes, per_class);
    }
    Distribution d;
    d.probs = solve_stationary(m.state_matrix());
    for (const auto& s : m.states()) d.outcomes.push_back(std::to_string(s.id));
    return d;
}

std::vector<double> occupation_distribution(const EpsilonMachine& m) {
    try {
        return stationary_distribution(m).probs;
    } catch (const Reducible& r) {
        std::vector<double> out(m.size(), 0.0);
        std::vector<double> weight;
        for (const auto& cls : r.classes()) {
            double w = 0.0;
            for (auto i : cls) w += m.states()[i].support;
            weight.push_back(w);
        }
        double total = std::accumulate(weight.begin(), weight.end(), 0.0);
        if (total <= 0.0) {
            std::fill(weight.begin(), weight.end(), 1.0);
            total = static_cast<double>(weight.size());
        }
        for (std::size_t c = 0; c < r.classes().size(); ++c)
            for (std::size_t i = 0; i < r.classes()[c].size(); ++i)
                out[r.classes()[c][i]] = weight[c] / total * r.per_class()[c][i];
        return out;
    }
}

double entropy(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

double entropy(const Distribution& d) { return entropy(d.probs); }

double statistical_complexity(const EpsilonMachine& m) { return entropy(stationary_distribution(m)); }

double entropy_rate(const EpsilonMachine& m) {
    const auto pi = stationary_distribution(m).probs;
    double h = 0.0;
    std::vector<double> morph(m.alphabet_size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t s = 0; s < m.alphabet_size(); ++s) morph[s] = m.emission(i, static_cast<Symbol>(s));
        h += pi[i] * entropy(morph);
    }
    return h;
}

Distribution word_distribution(const EpsilonMachine& m, int length) {
    return word_distribution(m, length, stationary_distribution(m).probs);
}

Distribution word_distribution(const EpsilonMachine& m, int length, const std::vector<double>& initial) {
    if (length < 1) throw BadParameter("word length must be >= 1");
    const std::size_t k = m.alphabet_size();
    double cells = std::pow(static_cast<double>(k), length);
    if (cells > static_cast<double>(1u << 24)) throw BadParameter("too many words to enumerate");
    if (initial.size() != m.size()) throw BadParameter("initial distribution has wrong size");

    Distribution d;
    d.probs.reserve(static_cast<std::size_t>(cells));
    d.outcomes.reserve(static_cast<std::size_t>(cells));

    // Depth-first over words in lexicographic order; v is the unnormalised
    // state distribution after reading the prefix.
    const auto n = static_cast<Eigen::Index>(m.size());
    std::vector<Eigen::RowVectorXd> stack(static_cast<std::size_t>(length) + 1, Eigen::RowVectorXd(n));
    stack[0] = Eigen::Map<const Eigen::RowVectorXd>(initial.data(), n);
    Word word(static_cast<std::size_t>(length), 0);

    std::function<void(int)> walk = [&](int depth) {
        if (depth == length) {
            d.outcomes.push_back(m.alphabet().render(word));
            d.probs.push_back(stack[static_cast<std::size_t>(depth)].sum());
            return;
        }
        for (std::size_t s = 0; s < k; ++s) {
            word[static_cast<std::size_t>(depth)] = static_cast<Symbol>(s);
            stack[static_cast<std::size_t>(depth) + 1] = stack[static_cast<std::size_t>(depth)] * m.labelled(static_cast<Symbol>(s));
            walk(depth + 1);
        }
    };
    walk(0);
    return d;
}

double variational_distance(const Distribution& p, const Distribution& q) {
    if (p.size() != q.size() || p.outcomes != q.outcomes)
        throw MismatchedSupport("distributions are over different outcome spaces");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d += std::fabs(p.probs[i] - q.probs[i]);
    return d;
}

double conditional_entropy(const Eigen::MatrixXd& joint) {
    std::vector<double> flat(joint.data(), joint.data() + joint.size());
    Eigen::VectorXd py = joint.colwise().sum().transpose();
    return entropy(flat) - entropy(std::span<const double>(py.data(), static_cast<std::size_t>(py.size())));
}

double mutual_information(const Eigen::MatrixXd& joint) {
    Eigen::VectorXd px = joint.rowwise().sum();
    return entropy(std::span<const double>(px.data(), static_cast<std::size_t>(px.size()))) - conditional_entropy(joint);
}

std::string export_machine(const EpsilonMachine& m, ExportFormat format) {
    const auto& alpha = m.alphabet();
    if (format == ExportFormat::Dot) {
        std::ostringstream out;
        out << "digraph epsilon_machine {\n  rankdir=LR;\n  node [shape=circle];\n";
        for (const auto& s : m.states()) out << "  s" << s.id << " [label=\"" << s.id << "\"];\n";
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t a = 0; a < m.alphabet_size(); ++a)
                if (auto j = m.successor(i, static_cast<Symbol>(a)))
                    out << "  s" << m.states()[i].id << " -> s" << m.states()[*j].id << " [label=\""
                        << alpha.token(static_cast<Symbol>(a)) << " | "
                        << fixed3(m.labelled(static_cast<Symbol>(a))(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(*j)))
                        << "\"];\n";
        out << "}\n";
        return out.str();
    }

    nlohmann::json j;
    j["alphabet"] = alpha.tokens();
    j["states"] = nlohmann::json::array();
    for (const auto& s : m.states()) {
        nlohmann::json suffixes = nlohmann::json::array();
        for (const auto& w : s.suffixes) suffixes.push_back(alpha.render(w));
        j["states"].push_back({{"id", s.id}, {"suffixes", suffixes}, {"support", s.support}});
    }
    j["transitions"] = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t a = 0; a < m.alphabet_size(); ++a)
            if (auto t = m.successor(i, static_cast<Symbol>(a)))
                j["transitions"].push_back(
                    {{"from", m.states()[i].id},
                     {"symbol", alpha.token(static_cast<Symbol>(a))},
                     {"to", m.states()[*t].id},
                     {"prob", m.labelled(static_cast<Symbol>(a))(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(*t))}});
    return j.dump(2) + "\n";
}

namespace {

Word parse_suffix(const std::string& text, const Alphabet& alpha) {
    const bool single = std::all_of(alpha.tokens().begin(), alpha.tokens().end(),
                                    [](const std::string& t) { return t.size() == 1; });
    Word w;
    if (text.empty()) return w;
    if (single) {
        for (char c : text) {
            auto idx = alpha.index_of(std::string_view(&c, 1));
            if (!idx) throw UnknownSymbol(w.size(), std::string(1, c));
            w.push_back(*idx);
        }
    } else {
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            auto idx = alpha.index_of(tok);
            if (!idx) throw UnknownSymbol(w.size(), tok);
            w.push_back(*idx);
        }
    }
    return w;
}

}  // namespace

EpsilonMachine parse_machine_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidMachine(std::string("malformed machine JSON: ") + e.what());
    }
    try {
        Alphabet alpha(j.at("alphabet").get<std::vector<std::string>>());
        std::vector<MachineState> states;
        std::map<StateId, Eigen::Index> index;
        for (const auto& s : j.at("states")) {
            MachineState ms;
            ms.id = s.at("id").get<StateId>();
            for (const auto& w : s.at("suffixes")) ms.suffixes.push_back(parse_suffix(w.get<std::string>(), alpha));
            ms.support = s.value("support", 0.0);
            index[ms.id] = static_cast<Eigen::Index>(states.size());
            states.push_back(std::move(ms));
        }
        const auto n = static_cast<Eigen::Index>(states.size());
        std::vector<Eigen::MatrixXd> labelled(alpha.size(), Eigen::MatrixXd::Zero(n, n));
        for (const auto& t : j.at("transitions")) {
            auto sym = alpha.index_of(t.at("symbol").get<std::string>());
            if (!sym) throw InvalidMachine("transition symbol not in alphabet");
            labelled[*sym](index.at(t.at("from").get<StateId>()), index.at(t.at("to").get<StateId>())) =
                t.at("prob").get<double>();
        }
        return EpsilonMachine(std::move(alpha), std::move(states), std::move(labelled));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidMachine(std::string("machine JSON does not match schema: ") + e.what());
    } catch (const std::out_of_range&) {
        throw InvalidMachine("transition refers to an unknown state id");
    }
}

bool same_topology(const EpsilonMachine& a, const EpsilonMachine& b) {
    if (a.size() != b.size() || a.alphabet_size() != b.alphabet_size()) return false;
    const std::size_t n = a.size(), k = a.alphabet_size();
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    std::vector<std::size_t> fwd(n, kNone), back(n, kNone);
    // Extends the mapping along deterministic edges from (i -> j). Returns false on conflict.
    std::function<bool(std::size_t, std::size_t, std::vector<std::size_t>&, std::vector<std::size_t>&)> bind =
        [&](std::size_t i, std::size_t j, std::vector<std::size_t>& f, std::vector<std::size_t>& r) {
            if (f[i] != kNone || r[j] != kNone) return f[i] == j && r[j] == i;
            f[i] = j;
            r[j] = i;
            for (std::size_t s = 0; s < k; ++s) {
                auto x = a.successor(i, static_cast<Symbol>(s));
                auto y = b.successor(j, static_cast<Symbol>(s));
                if (x.has_value() != y.has_value()) return false;
                if (x && !bind(*x, *y, f, r)) return false;
            }
            return true;
        };

    std::function<bool(std::vector<std::size_t>, std::vector<std::size_t>)> search =
        [&](std::vector<std::size_t> f, std::vector<std::size_t> r) {
            auto it = std::find(f.begin(), f.end(), kNone);
            if (it == f.end()) return true;
            const auto i = static_cast<std::size_t>(it - f.begin());
            for (std::size_t j = 0; j < n; ++j) {
                if (r[j] != kNone) continue;
                auto f2 = f, r2 = r;
                if (bind(i, j, f2, r2) && search(f2, r2)) return true;
            }
            return false;
        };
    return search(fwd, back);
}

}  // namespace cssr
