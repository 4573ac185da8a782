#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "brushlab/common.hpp"

namespace brushlab {

// Composite trapezoid on [lo, hi] with n subintervals. The integrands in this
// library are smooth and vanish to all orders at the endpoints, where the
// trapezoid rule converges spectrally.
template <typename F>
auto trapezoid(F&& f, double lo, double hi, std::size_t n) {
    using R = decltype(f(lo));
    const double h = (hi - lo) / static_cast<double>(n);
    R acc = R(0.5) * (f(lo) + f(hi));
    for (std::size_t i = 1; i < n; ++i) acc += f(lo + h * static_cast<double>(i));
    return acc * h;
}

// Trapezoid with step-halving verification: refine until two successive
// refinements agree to abs_tol, or raise accuracy_error.
template <typename F>
auto trapezoid_checked(F&& f, double lo, double hi, std::size_t n0, double abs_tol,
                       int max_refine = 12) {
    auto prev = trapezoid(f, lo, hi, n0);
    std::size_t n = n0;
    for (int r = 0; r < max_refine; ++r) {
        n *= 2;
        auto cur = trapezoid(f, lo, hi, n);
        if (std::abs(cur - prev) <= abs_tol) return cur;
        prev = cur;
    }
    throw accuracy_error("trapezoid_checked: refinement did not converge");
}

// Uniform sample grid of n+1 nodes spanning [lo, hi].
inline std::vector<double> uniform_nodes(double lo, double hi, std::size_t n) {
    std::vector<double> xs(n + 1);
    const double h = (hi - lo) / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) xs[i] = lo + h * static_cast<double>(i);
    xs.back() = hi;
    return xs;
}

// Trapezoid weights for precomputed samples on a uniform grid.
inline double trapezoid_of_samples(const std::vector<double>& vals, double h) {
    double acc = 0.5 * (vals.front() + vals.back());
    for (std::size_t i = 1; i + 1 < vals.size(); ++i) acc += vals[i];
    return acc * h;
}

inline std::complex<double> trapezoid_of_samples(const std::vector<std::complex<double>>& vals,
                                                 double h) {
    std::complex<double> acc = 0.5 * (vals.front() + vals.back());
    for (std::size_t i = 1; i + 1 < vals.size(); ++i) acc += vals[i];
    return acc * h;
}

}  // namespace brushlab
