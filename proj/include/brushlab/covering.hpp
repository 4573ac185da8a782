#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "brushlab/anisotropy.hpp"
#include "brushlab/common.hpp"

namespace brushlab {

// Frequency interval [alpha, alpha') with cutoff radii eps (left) and eps'
// (right). Validity: eps + eps' <= |I| and eps, eps' >= c_floor |I|; adjacent
// intervals of a covering must agree on the radius at a shared endpoint.
struct CutoffInterval {
    double alpha = 0.0;
    double alpha_prime = 0.0;
    double eps = 0.0;
    double eps_prime = 0.0;

    double length() const { return alpha_prime - alpha; }
    // Support of the associated bell function.
    double support_lo() const { return alpha - eps; }
    double support_hi() const { return alpha_prime + eps_prime; }
};

inline CutoffInterval make_cutoff_interval(double alpha, double alpha_prime, double eps,
                                           double eps_prime, double c_floor = 1e-12) {
    if (!(alpha < alpha_prime))
        throw domain_error("cutoff interval: endpoints out of order");
    const double len = alpha_prime - alpha;
    if (!(eps > 0.0) || !(eps_prime > 0.0) || eps + eps_prime > len * (1.0 + 1e-12))
        throw domain_error("cutoff interval: radii violate eps + eps' <= |I|");
    if (eps < c_floor * len || eps_prime < c_floor * len)
        throw domain_error("cutoff interval: radii below the relative floor");
    return CutoffInterval{alpha, alpha_prime, eps, eps_prime};
}

namespace detail {

// Cutoff radius assigned to the univariate endpoint family at level j:
// 2^{(j-2)a} at +-2^{ja} and 2^{(j-3)a} at {0, +-2^{(j-1)a}}. Shared
// endpoints therefore always carry one radius, also across levels
// (the outer endpoint of level j is the middle endpoint of level j+1).
inline double level_outer_radius(int j, double a) { return pow2((j - 2) * a); }
inline double level_inner_radius(int j, double a) { return pow2((j - 3) * a); }

// The univariate interval of the k-component on one axis:
//   |k|=1 : sign * [0, 2^{(j-1)a});   |k|=2 : sign * [2^{(j-1)a}, 2^{ja}).
// Negative signs keep the half-open [alpha, alpha') convention, so the four
// intervals tile [-2^{ja}, 2^{ja}) exactly.
inline CutoffInterval axis_interval(int j, int k, double a) {
    const double mid = pow2((j - 1) * a);
    const double out = pow2(j * a);
    const double r_in = level_inner_radius(j, a);
    const double r_out = level_outer_radius(j, a);
    switch (k) {
        case 1:
            return make_cutoff_interval(0.0, mid, r_in, r_in);
        case 2:
            return make_cutoff_interval(mid, out, r_in, r_out);
        case -1:
            return make_cutoff_interval(-mid, 0.0, r_in, r_in);
        case -2:
            return make_cutoff_interval(-out, -mid, r_out, r_in);
        default:
            throw domain_error("axis_interval: k component must be in {+-1,+-2}");
    }
}

}  // namespace detail

// One rectangle R_{j,k} of the anisotropic Lizorkin partition, together with
// its affine representation R = 2^{ja} B(k)([-1,1)^d) + c.
struct LizorkinRect {
    int j = 0;
    std::vector<int> k;
    std::vector<CutoffInterval> intervals;
    std::vector<double> center;
    std::vector<double> b_diag;

    int dim() const { return static_cast<int>(k.size()); }

    double volume() const {
        double v = 1.0;
        for (const auto& iv : intervals) v *= iv.length();
        return v;
    }

    bool contains(const std::vector<double>& x) const {
        for (int i = 0; i < dim(); ++i)
            if (!(x[i] >= intervals[i].alpha && x[i] < intervals[i].alpha_prime)) return false;
        return true;
    }
};

inline LizorkinRect make_lizorkin_rect(int j, const std::vector<int>& k, const Anisotropy& an) {
    if (static_cast<int>(k.size()) != an.dim())
        throw domain_error("lizorkin rect: dimension mismatch");
    bool outer = false;
    for (int ki : k) {
        if (ki == 0 || std::abs(ki) > 2) throw domain_error("lizorkin rect: bad k component");
        if (std::abs(ki) == 2) outer = true;
    }
    if (!outer) throw domain_error("lizorkin rect: k must have a component of magnitude 2");
    LizorkinRect r;
    r.j = j;
    r.k = k;
    r.intervals.reserve(k.size());
    r.center.resize(k.size());
    r.b_diag.resize(k.size());
    for (int i = 0; i < an.dim(); ++i) {
        const double a = an.a[i];
        r.intervals.push_back(detail::axis_interval(j, k[i], a));
        r.center[i] = 0.5 * (r.intervals.back().alpha + r.intervals.back().alpha_prime);
        r.b_diag[i] =
            std::abs(k[i]) == 1 ? pow2(-(a + 1.0)) : 0.5 * (1.0 - pow2(-a));
    }
    return r;
}

// All 4^d - 2^d rectangles tiling the corridor K_j = R_j \ R_{j-1}.
inline std::vector<LizorkinRect> lizorkin_level(int j, const Anisotropy& an) {
    const int d = an.dim();
    std::vector<LizorkinRect> out;
    const int choices[4] = {-2, -1, 1, 2};
    std::vector<int> k(d, 0);
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        bool outer = false;
        for (int i = 0; i < d; ++i) {
            k[i] = choices[c % 4];
            if (std::abs(k[i]) == 2) outer = true;
            c /= 4;
        }
        if (!outer) continue;
        out.push_back(make_lizorkin_rect(j, k, an));
    }
    return out;
}

// The level-j box interval [-2^{ja_i}, 2^{ja_i}) on one axis, with radius
// 2^{(j-2)a_i} at both endpoints. Merging the four level-j intervals of an
// axis reproduces exactly this interval; the telescoping check relies on it.
inline CutoffInterval box_interval(int j, int axis, const Anisotropy& an) {
    const double a = an.a[axis];
    const double edge = pow2(j * a);
    const double r = detail::level_outer_radius(j, a);
    return make_cutoff_interval(-edge, edge, r, r);
}

// Spatial cell U(R,n): the closed box with 2^{ja} y - pi (n + 1/2) in [-1,1]^d,
// i.e. side 2 * 2^{-j a_i} per axis, centered at pi 2^{-ja}(n + 1/2).
// Note the exact volume is 2^d 2^{-j nu}; it depends on R only through j.
struct UCell {
    int j = 0;
    std::vector<int> n;
    std::vector<double> lo;
    std::vector<double> hi;

    double volume() const {
        double v = 1.0;
        for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
        return v;
    }

    bool contains(const std::vector<double>& x) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(x[i] >= lo[i] && x[i] <= hi[i])) return false;
        return true;
    }
};

inline UCell u_cell_at_level(int j, const std::vector<int>& n, const Anisotropy& an) {
    if (static_cast<int>(n.size()) != an.dim()) throw domain_error("u_cell: dimension mismatch");
    UCell u;
    u.j = j;
    u.n = n;
    u.lo.resize(n.size());
    u.hi.resize(n.size());
    for (int i = 0; i < an.dim(); ++i) {
        if (n[i] < 0) throw domain_error("u_cell: n components must be nonnegative");
        const double inv = pow2(-static_cast<double>(j) * an.a[i]);
        const double c = std::numbers::pi * (n[i] + 0.5);
        u.lo[i] = inv * (c - 1.0);
        u.hi[i] = inv * (c + 1.0);
    }
    return u;
}

inline UCell u_cell(const LizorkinRect& rect, const std::vector<int>& n, const Anisotropy& an) {
    return u_cell_at_level(rect.j, n, an);
}

// Sum_n 1_{U(R,n)}(x) over the truncation box [0, n_max]^d. Cell centers are
// pi apart in the rescaled variable while cells have width 2 < pi, so the
// count is bounded uniformly in x and R.
inline int overlap_count(const std::vector<double>& x, const LizorkinRect& rect, int n_max,
                         const Anisotropy& an) {
    const int d = an.dim();
    int count = 0;
    std::vector<int> n(d, 0);
    while (true) {
        if (u_cell(rect, n, an).contains(x)) ++count;
        int axis = 0;
        while (axis < d) {
            if (++n[axis] <= n_max) break;
            n[axis] = 0;
            ++axis;
        }
        if (axis == d) break;
    }
    return count;
}

}  // namespace brushlab
