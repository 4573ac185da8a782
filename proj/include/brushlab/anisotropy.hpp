#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "brushlab/common.hpp"

namespace brushlab {

// Per-axis dilation exponents a with homogeneous dimension nu = sum a_i.
// t^a x scales axis i by t^{a_i}; all geometry below derives from this action.
struct Anisotropy {
    std::vector<double> a;
    double nu = 0.0;

    int dim() const { return static_cast<int>(a.size()); }
    double a_min() const { return *std::min_element(a.begin(), a.end()); }
    double a_max() const { return *std::max_element(a.begin(), a.end()); }
};

inline Anisotropy make_anisotropy(std::vector<double> a) {
    if (a.empty()) throw domain_error("anisotropy: empty exponent vector");
    for (double ai : a)
        if (!(ai >= 1.0) || !std::isfinite(ai))
            throw domain_error("anisotropy: exponents must lie in [1,inf)");
    Anisotropy an;
    an.nu = std::accumulate(a.begin(), a.end(), 0.0);
    an.a = std::move(a);
    return an;
}

// x |-> t^a x, componentwise.
inline std::vector<double> dilate(double t, const Anisotropy& an, const std::vector<double>& x) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::pow(t, an.a[i]) * x[i];
    return y;
}

namespace detail {

inline double euclid_of_scaled(const std::vector<double>& x, const Anisotropy& an, double t) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = x[i] / std::pow(t, an.a[i]);
        s += v * v;
    }
    return std::sqrt(s);
}

}  // namespace detail

// The anisotropic quasi-norm: |0| = 0 and otherwise the unique t > 0 with
// |t^{-a} x| = 1 in the Euclidean norm. The map t |-> |t^{-a}x| is strictly
// decreasing, so bracketed bisection is exact up to the requested tolerance.
//
// Bracket: with M = max_i |x_i|^{1/a_i}, the root lies in [M, sqrt(d) M]
// (the M-coordinate alone contributes 1 at t = M, and every coordinate is
// below 1/sqrt(d) at t = sqrt(d) M). We widen the lower end to M/sqrt(d),
// which stays positive even when some coordinates vanish.
inline double quasi_norm(const std::vector<double>& x, const Anisotropy& an,
                         double rel_tol = 1e-12) {
    if (static_cast<int>(x.size()) != an.dim())
        throw domain_error("quasi_norm: dimension mismatch");
    if (!finite(x)) throw domain_error("quasi_norm: non-finite input");
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        m = std::max(m, std::pow(std::fabs(x[i]), 1.0 / an.a[i]));
    if (m == 0.0) return 0.0;

    const double sd = std::sqrt(static_cast<double>(x.size()));
    double lo = m / sd;
    double hi = sd * m;
    for (int it = 0; it < 200 && (hi - lo) > rel_tol * lo; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (detail::euclid_of_scaled(x, an, mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Anisotropic bracket <x> = |(1, x)| under the extended anisotropy (1, a).
// Plays the role of 1 + |x|_a; equals 1 at the origin.
inline double bracket(const std::vector<double>& x, const Anisotropy& an,
                      double rel_tol = 1e-12) {
    std::vector<double> ext(x.size() + 1);
    ext[0] = 1.0;
    std::copy(x.begin(), x.end(), ext.begin() + 1);
    std::vector<double> ea(an.a.size() + 1);
    ea[0] = 1.0;
    std::copy(an.a.begin(), an.a.end(), ea.begin() + 1);
    Anisotropy ean;
    ean.a = std::move(ea);
    ean.nu = an.nu + 1.0;
    return quasi_norm(ext, ean, rel_tol);
}

// Dyadic rectangle Q_{jk}: lower corner 2^{-j a} k, side 2^{-j a_i} on axis i,
// volume 2^{-nu j}. Half-open, so rectangles at a fixed level tile space.
struct DyadicRect {
    int j = 0;
    std::vector<long long> k;
    std::vector<double> lower;
    std::vector<double> side;

    double volume() const {
        double v = 1.0;
        for (double s : side) v *= s;
        return v;
    }

    bool contains(const std::vector<double>& x) const {
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (!(x[i] >= lower[i] && x[i] < lower[i] + side[i])) return false;
        return true;
    }
};

inline DyadicRect dyadic_rect_of_point(const std::vector<double>& x, int j, const Anisotropy& an) {
    if (static_cast<int>(x.size()) != an.dim())
        throw domain_error("dyadic_rect_of_point: dimension mismatch");
    if (!finite(x)) throw domain_error("dyadic_rect_of_point: non-finite input");
    DyadicRect q;
    q.j = j;
    q.k.resize(x.size());
    q.lower.resize(x.size());
    q.side.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double scale = pow2(static_cast<double>(j) * an.a[i]);
        q.k[i] = static_cast<long long>(std::floor(scale * x[i]));
        q.side[i] = 1.0 / scale;
        q.lower[i] = static_cast<double>(q.k[i]) / scale;
    }
    return q;
}

}  // namespace brushlab
