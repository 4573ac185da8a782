#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "brushlab/common.hpp"

namespace brushlab {

// Real function piecewise constant on the cells of a tensor breakpoint grid:
// breaks[i] has B_i + 1 strictly increasing entries, values holds the
// prod B_i cell values with axis 0 at stride 1. All quadrature on such data
// is exact, which is what the sequence-norm engine relies on.
struct GridFunction {
    std::vector<std::vector<double>> breaks;
    std::vector<double> values;

    int dim() const { return static_cast<int>(breaks.size()); }

    std::size_t cells(int axis) const { return breaks[axis].size() - 1; }

    std::size_t cell_count() const {
        std::size_t n = 1;
        for (int i = 0; i < dim(); ++i) n *= cells(i);
        return n;
    }

    // Cell index along an axis for a point (right-open cells; the last cell
    // also owns its upper edge). Throws if outside the grid span.
    std::size_t locate(int axis, double x) const {
        const auto& b = breaks[axis];
        if (x < b.front() || x > b.back()) throw domain_error("grid function: point outside grid");
        auto it = std::upper_bound(b.begin(), b.end(), x);
        std::size_t i = static_cast<std::size_t>(it - b.begin());
        if (i > 0) --i;
        if (i >= cells(axis)) i = cells(axis) - 1;
        return i;
    }

    double value_at(const std::vector<double>& x) const {
        std::size_t idx = 0, stride = 1;
        for (int i = 0; i < dim(); ++i) {
            idx += locate(i, x[i]) * stride;
            stride *= cells(i);
        }
        return values[idx];
    }
};

inline GridFunction make_grid_function(const std::vector<std::vector<double>>& breaks,
                                       const std::function<double(const std::vector<double>&)>& f) {
    GridFunction g;
    g.breaks = breaks;
    for (const auto& b : breaks)
        if (b.size() < 2 || !std::is_sorted(b.begin(), b.end()))
            throw domain_error("grid function: breakpoints must be increasing");
    g.values.resize(g.cell_count());
    const int d = g.dim();
    std::vector<std::size_t> c(d, 0);
    std::vector<double> mid(d);
    for (std::size_t idx = 0; idx < g.values.size(); ++idx) {
        for (int i = 0; i < d; ++i) mid[i] = 0.5 * (breaks[i][c[i]] + breaks[i][c[i] + 1]);
        g.values[idx] = f(mid);
        for (int i = 0; i < d; ++i) {
            if (++c[i] < g.cells(i)) break;
            c[i] = 0;
        }
    }
    return g;
}

// Split every cell of every axis into `factor` equal parts (same function,
// finer arrangement). Used by the refinement-stability checks.
inline GridFunction refine_grid(const GridFunction& f, int factor) {
    std::vector<std::vector<double>> rb(f.dim());
    for (int i = 0; i < f.dim(); ++i) {
        const auto& b = f.breaks[i];
        for (std::size_t t = 0; t + 1 < b.size(); ++t) {
            for (int s = 0; s < factor; ++s)
                rb[i].push_back(b[t] + (b[t + 1] - b[t]) * static_cast<double>(s) /
                                           static_cast<double>(factor));
        }
        rb[i].push_back(b.back());
    }
    return make_grid_function(rb, [&f](const std::vector<double>& x) { return f.value_at(x); });
}

// Mixed-norm Lebesgue quasi-norm: iterated exact integration, innermost axis
// first, raising to the exponent ratios; p_i = inf replaces the integral by a
// per-axis max.
inline double mixed_lp(const GridFunction& f, const std::vector<double>& p) {
    if (static_cast<int>(p.size()) != f.dim()) throw domain_error("mixed_lp: dimension mismatch");
    for (double pi : p)
        if (!(pi > 0.0)) throw domain_error("mixed_lp: exponents must be positive");
    std::vector<double> cur = f.values;
    std::vector<std::size_t> dims(f.dim());
    for (int i = 0; i < f.dim(); ++i) dims[i] = f.cells(i);

    for (int axis = 0; axis < f.dim(); ++axis) {
        const std::size_t n = dims[axis];
        std::size_t outer = 1;
        for (int t = axis + 1; t < f.dim(); ++t) outer *= dims[t];
        std::vector<double> nxt(outer);
        for (std::size_t o = 0; o < outer; ++o) {
            const double* line = cur.data() + o * n;
            double acc = 0.0;
            if (std::isinf(p[axis])) {
                for (std::size_t t = 0; t < n; ++t) acc = std::max(acc, std::fabs(line[t]));
            } else {
                for (std::size_t t = 0; t < n; ++t) {
                    const double len = f.breaks[axis][t + 1] - f.breaks[axis][t];
                    acc += std::pow(std::fabs(line[t]), p[axis]) * len;
                }
                acc = std::pow(acc, 1.0 / p[axis]);
            }
            nxt[o] = acc;
        }
        cur = std::move(nxt);
    }
    return cur[0];
}

namespace detail {

// Brute-force best window average along one axis line (prefix sums over
// breakpoint windows containing the cell).
inline void maximal_line(const std::vector<double>& breaks, std::vector<double>& line) {
    const std::size_t n = line.size();
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t t = 0; t < n; ++t)
        prefix[t + 1] = prefix[t] + std::fabs(line[t]) * (breaks[t + 1] - breaks[t]);
    std::vector<double> out(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b <= n; ++b) {
            const double avg = (prefix[b] - prefix[a]) / (breaks[b] - breaks[a]);
            for (std::size_t c = a; c < b; ++c) out[c] = std::max(out[c], avg);
        }
    }
    line = std::move(out);
}

template <typename LineOp>
void for_each_line(GridFunction& f, int axis, LineOp&& op) {
    std::vector<std::size_t> dims(f.dim());
    for (int i = 0; i < f.dim(); ++i) dims[i] = f.cells(i);
    std::size_t stride = 1;
    for (int i = 0; i < axis; ++i) stride *= dims[i];
    const std::size_t n = dims[axis];
    const std::size_t block = stride * n;
    std::vector<double> line(n);
    for (std::size_t base = 0; base < f.values.size(); base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            for (std::size_t t = 0; t < n; ++t) line[t] = f.values[base + off + t * stride];
            op(line);
            for (std::size_t t = 0; t < n; ++t) f.values[base + off + t * stride] = line[t];
        }
    }
}

}  // namespace detail

// Directional maximal function along one axis, over the whole grid. The
// supremum runs over windows with breakpoint endpoints; for piecewise
// constant data this equals the unrestricted supremum.
inline GridFunction maximal_axis(const GridFunction& f, int axis) {
    GridFunction out = f;
    detail::for_each_line(out, axis,
                          [&](std::vector<double>& line) { detail::maximal_line(out.breaks[axis], line); });
    return out;
}

// M_k f at a point: sup over windows with breakpoint endpoints containing
// x_axis (note a breakpoint x admits windows ending exactly at x, so values
// at nodes can exceed both neighboring cell values).
inline double maximal_1d(const GridFunction& f, int axis, const std::vector<double>& x) {
    const auto& b = f.breaks[axis];
    if (x[axis] < b.front() || x[axis] > b.back())
        throw domain_error("maximal_1d: point outside grid");
    std::vector<std::size_t> line_coord(f.dim());
    for (int i = 0; i < f.dim(); ++i)
        if (i != axis) line_coord[i] = f.locate(i, x[i]);
    std::vector<std::size_t> dims(f.dim()), strides(f.dim());
    std::size_t s = 1;
    for (int i = 0; i < f.dim(); ++i) {
        dims[i] = f.cells(i);
        strides[i] = s;
        s *= dims[i];
    }
    std::size_t base = 0;
    for (int i = 0; i < f.dim(); ++i)
        if (i != axis) base += line_coord[i] * strides[i];
    const std::size_t n = dims[axis];
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t t = 0; t < n; ++t)
        prefix[t + 1] =
            prefix[t] + std::fabs(f.values[base + t * strides[axis]]) * (b[t + 1] - b[t]);
    double best = 0.0;
    for (std::size_t lo = 0; lo < n + 1; ++lo) {
        if (b[lo] > x[axis]) break;
        for (std::size_t hi = lo + 1; hi < n + 1; ++hi) {
            if (b[hi] < x[axis]) continue;
            best = std::max(best, (prefix[hi] - prefix[lo]) / (b[hi] - b[lo]));
        }
    }
    return best;
}

// Iterated maximal function: (M_d ... M_1 |f|^theta)^{1/theta}.
inline GridFunction iterated_maximal(const GridFunction& f, double theta) {
    if (!(theta > 0.0)) throw domain_error("iterated_maximal: theta must be positive");
    GridFunction g = f;
    for (double& v : g.values) v = std::pow(std::fabs(v), theta);
    for (int axis = 0; axis < f.dim(); ++axis) g = maximal_axis(g, axis);
    for (double& v : g.values) v = std::pow(v, 1.0 / theta);
    return g;
}

// || (sum_j |f_j|^q)^{1/q} ||_p for a family on a common grid.
inline double vector_lq_norm(const std::vector<GridFunction>& family, const std::vector<double>& p,
                             double q) {
    if (family.empty()) return 0.0;
    for (const auto& g : family)
        if (g.breaks != family.front().breaks)
            throw domain_error("vector_lq_norm: family must share one grid");
    GridFunction acc = family.front();
    if (std::isinf(q)) {
        for (std::size_t c = 0; c < acc.values.size(); ++c) {
            double m = 0.0;
            for (const auto& g : family) m = std::max(m, std::fabs(g.values[c]));
            acc.values[c] = m;
        }
    } else {
        if (!(q > 0.0)) throw domain_error("vector_lq_norm: q must be positive");
        for (std::size_t c = 0; c < acc.values.size(); ++c) {
            double s = 0.0;
            for (const auto& g : family) s += std::pow(std::fabs(g.values[c]), q);
            acc.values[c] = std::pow(s, 1.0 / q);
        }
    }
    return mixed_lp(acc, p);
}

}  // namespace brushlab
