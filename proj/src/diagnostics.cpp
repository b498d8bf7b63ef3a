#include "cssr/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "cssr/errors.hpp"

namespace cssr {

namespace {

double unclamped(int k, double n, double t) { return std::ldexp(std::exp(-8.0 * n * t * t), k + 1); }

}  // namespace

double morph_error_bound(int k, double n, double t) {
    if (k < 1) throw BadParameter("alphabet size must be >= 1");
    if (n < 1) throw BadParameter("sample size must be >= 1");
    if (!(t > 0)) throw BadParameter("tolerance must be > 0");
    return std::min(1.0, unclamped(k, n, t));
}

CollectiveBound collective_error_bound(const ErrorBoundInputs& in) {
    if (in.k < 1) throw BadParameter("alphabet size must be >= 1");
    if (!(in.t > 0)) throw BadParameter("tolerance must be > 0");
    if (in.m < 1 || in.s < 1) throw BadParameter("suffix count and minimum count must be >= 1");
    if (in.p_star && !(*in.p_star > 0.0 && *in.p_star <= 1.0)) throw BadParameter("p_star must lie in (0, 1]");

    CollectiveBound out;
    out.uniform = std::min(1.0, in.s * unclamped(in.k, in.m, in.t));
    if (!in.n_vec.empty()) {
        double sum = 0.0;
        for (double n : in.n_vec) sum += unclamped(in.k, n, in.t);
        out.per_suffix = std::min(1.0, sum);
    }
    return out;
}

int lmax_advisor(double n, double h_bound, double epsilon) {
    if (n < 2) throw BadParameter("N must be >= 2");
    if (!(h_bound > 0) || !(epsilon > 0)) throw BadParameter("entropy bound and epsilon must be > 0");
    return static_cast<int>(std::floor(std::log2(n) / (h_bound + epsilon)));
}

}  // namespace cssr
