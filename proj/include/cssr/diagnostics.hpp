#pragma once

#include <optional>
#include <vector>

namespace cssr {

struct ErrorBoundInputs {
    int k = 2;        // alphabet size
    double s = 1;     // number of suffixes
    double m = 1;     // smallest suffix count
    double t = 0.1;   // variational tolerance
    std::vector<double> n_vec;       // per-suffix counts, optional
    std::optional<double> p_star;    // least probable word, reported only
};

struct CollectiveBound {
    double uniform = 1.0;                // from s and m
    std::optional<double> per_suffix;    // sum over n_vec, when given
};

/// Probability that an n-sample morph estimate is t or more away (in
/// variational distance) from the true morph: min(1, 2^(k+1) exp(-8 n t^2)).
double morph_error_bound(int k, double n, double t);

/// Same bound for one or more of s suffixes at once.
CollectiveBound collective_error_bound(const ErrorBoundInputs& in);

/// Largest history length with L <= log2 N / (h + epsilon).
int lmax_advisor(double n, double h_bound, double epsilon = 0.1);

}  // namespace cssr
