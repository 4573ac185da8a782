#pragma once

#include <algorithm>
#include <complex>
#include <functional>
#include <vector>

#include "brushlab/bells.hpp"
#include "brushlab/covering.hpp"

namespace brushlab {

using Complex = std::complex<double>;

// A complex-valued function sampled on a strictly increasing 1-d grid.
struct Spectrum1D {
    std::vector<double> nodes;
    std::vector<Complex> values;

    std::size_t size() const { return nodes.size(); }
};

namespace detail {

inline std::ptrdiff_t find_node(const std::vector<double>& nodes, double x) {
    if (nodes.size() < 2) return -1;
    const double h = (nodes.back() - nodes.front()) / static_cast<double>(nodes.size() - 1);
    auto it = std::lower_bound(nodes.begin(), nodes.end(), x - 1e-6 * h);
    if (it == nodes.end()) return -1;
    if (std::fabs(*it - x) > 1e-6 * h) return -1;
    return it - nodes.begin();
}

}  // namespace detail

// Uniform grid anchor + k*h covering [lo, hi]; every reflection 2c - x about a
// point c with 2(c - anchor)/h integral maps nodes to nodes exactly.
inline std::vector<double> make_anchored_grid(double lo, double hi, double h, double anchor) {
    if (!(h > 0.0) || !(lo < hi)) throw domain_error("make_anchored_grid: bad range");
    const long long k0 = static_cast<long long>(std::floor((lo - anchor) / h)) - 1;
    const long long k1 = static_cast<long long>(std::ceil((hi - anchor) / h)) + 1;
    std::vector<double> nodes;
    nodes.reserve(static_cast<std::size_t>(k1 - k0 + 1));
    for (long long k = k0; k <= k1; ++k) nodes.push_back(anchor + static_cast<double>(k) * h);
    return nodes;
}

// Grid suited for projecting onto one interval: covers the bell support and
// both endpoint reflections of it, with alpha on-grid and h dividing |I|.
inline std::vector<double> make_projection_grid(const CutoffInterval& I, std::size_t m) {
    const double h = I.length() / static_cast<double>(m);
    const double lo = 2.0 * I.alpha - I.alpha_prime - I.eps_prime;
    const double hi = 2.0 * I.alpha_prime - I.alpha + I.eps;
    return make_anchored_grid(lo - 2.0 * h, hi + 2.0 * h, h, I.alpha);
}

inline Spectrum1D sample_spectrum(const std::vector<double>& nodes,
                                  const std::function<Complex(double)>& f) {
    Spectrum1D s;
    s.nodes = nodes;
    s.values.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) s.values[i] = f(nodes[i]);
    return s;
}

// Does the grid contain the reflection 2*alpha - xi of every node xi for
// which the reflected point falls inside the grid span?
inline bool reflection_compatible(const std::vector<double>& nodes, double alpha) {
    for (double x : nodes) {
        const double r = 2.0 * alpha - x;
        if (r < nodes.front() - 1e-12 || r > nodes.back() + 1e-12) continue;
        if (detail::find_node(nodes, r) < 0) return false;
    }
    return true;
}

// The orthogonal projection P_I on grid samples:
//   (P_I f)(xi) = b(xi) [ b(xi) f(xi) + b(2a - xi) f(2a - xi) - b(2a' - xi) f(2a' - xi) ].
// Reflected samples are fetched from the same grid; a needed node that is
// missing raises domain_error (values are never interpolated).
inline Spectrum1D project_interval(const Spectrum1D& f, const CutoffInterval& I) {
    BellFunction bell{I};
    Spectrum1D out;
    out.nodes = f.nodes;
    out.values.assign(f.nodes.size(), Complex(0.0));
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
        const double xi = f.nodes[i];
        const double b0 = bell(xi);
        if (b0 == 0.0) continue;
        Complex acc = b0 * f.values[i];
        const double rl = 2.0 * I.alpha - xi;
        const double bl = bell(rl);
        if (bl != 0.0) {
            const std::ptrdiff_t idx = detail::find_node(f.nodes, rl);
            if (idx < 0) throw domain_error("project_interval: grid lacks reflected node");
            acc += bl * f.values[static_cast<std::size_t>(idx)];
        }
        const double rr = 2.0 * I.alpha_prime - xi;
        const double br = bell(rr);
        if (br != 0.0) {
            const std::ptrdiff_t idx = detail::find_node(f.nodes, rr);
            if (idx < 0) throw domain_error("project_interval: grid lacks reflected node");
            acc -= br * f.values[static_cast<std::size_t>(idx)];
        }
        out.values[i] = b0 * acc;
    }
    return out;
}

// Complex function sampled on a tensor grid; axis 0 has stride 1.
struct SampledSpectrum {
    std::vector<std::vector<double>> axes;
    std::vector<Complex> values;

    int dim() const { return static_cast<int>(axes.size()); }

    std::size_t size() const {
        std::size_t n = 1;
        for (const auto& ax : axes) n *= ax.size();
        return n;
    }

    std::size_t index(const std::vector<std::size_t>& coord) const {
        std::size_t idx = 0, stride = 1;
        for (int i = 0; i < dim(); ++i) {
            idx += coord[i] * stride;
            stride *= axes[i].size();
        }
        return idx;
    }
};

inline SampledSpectrum sample_spectrum(const std::vector<std::vector<double>>& axes,
                                       const std::function<Complex(const std::vector<double>&)>& f) {
    SampledSpectrum s;
    s.axes = axes;
    s.values.resize(s.size());
    const int d = s.dim();
    std::vector<std::size_t> coord(d, 0);
    std::vector<double> x(d);
    for (std::size_t idx = 0; idx < s.values.size(); ++idx) {
        for (int i = 0; i < d; ++i) x[i] = axes[i][coord[i]];
        s.values[idx] = f(x);
        for (int i = 0; i < d; ++i) {
            if (++coord[i] < axes[i].size()) break;
            coord[i] = 0;
        }
    }
    return s;
}

namespace detail {

// Apply a 1-d spectral operator along one axis of a tensor grid.
template <typename Op>
SampledSpectrum apply_along_axis(const SampledSpectrum& f, int axis, Op&& op) {
    SampledSpectrum out = f;
    const std::size_t n_axis = f.axes[axis].size();
    std::size_t stride = 1;
    for (int i = 0; i < axis; ++i) stride *= f.axes[i].size();
    const std::size_t total = f.size();
    const std::size_t block = stride * n_axis;
    Spectrum1D line;
    line.nodes = f.axes[axis];
    line.values.resize(n_axis);
    for (std::size_t base = 0; base < total; base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            for (std::size_t t = 0; t < n_axis; ++t)
                line.values[t] = f.values[base + off + t * stride];
            Spectrum1D res = op(line);
            for (std::size_t t = 0; t < n_axis; ++t)
                out.values[base + off + t * stride] = res.values[t];
        }
    }
    return out;
}

}  // namespace detail

// Tensor projection P_R = (x) P_{I_i} applied axis by axis on the grid.
inline SampledSpectrum project_rect(const SampledSpectrum& f, const LizorkinRect& rect) {
    if (f.dim() != rect.dim()) throw domain_error("project_rect: dimension mismatch");
    SampledSpectrum cur = f;
    for (int axis = 0; axis < f.dim(); ++axis) {
        const CutoffInterval& I = rect.intervals[axis];
        cur = detail::apply_along_axis(
            cur, axis, [&I](const Spectrum1D& line) { return project_interval(line, I); });
    }
    return cur;
}

// Pointwise tensor projection of a closure: expands (x)P_{I_i} into its 3^d
// reflection patterns and evaluates f directly at the reflected points, so no
// grid-commensurability is required.
inline Complex project_value(const std::function<Complex(const std::vector<double>&)>& f,
                             const std::vector<CutoffInterval>& intervals,
                             const std::vector<double>& xi) {
    const int d = static_cast<int>(intervals.size());
    std::vector<double> b0(d);
    for (int i = 0; i < d; ++i) {
        b0[i] = bell_eval(intervals[i], xi[i]);
        if (b0[i] == 0.0) return Complex(0.0);
    }
    std::size_t patterns = 1;
    for (int i = 0; i < d; ++i) patterns *= 3;
    Complex acc(0.0);
    std::vector<double> p(d);
    for (std::size_t code = 0; code < patterns; ++code) {
        std::size_t c = code;
        double coef = 1.0;
        for (int i = 0; i < d; ++i) {
            const int sel = static_cast<int>(c % 3);
            c /= 3;
            const CutoffInterval& I = intervals[i];
            if (sel == 0) {
                p[i] = xi[i];
                coef *= b0[i];
            } else if (sel == 1) {
                p[i] = 2.0 * I.alpha - xi[i];
                coef *= bell_eval(I, p[i]);
            } else {
                p[i] = 2.0 * I.alpha_prime - xi[i];
                coef *= -bell_eval(I, p[i]);
            }
            if (coef == 0.0) break;
        }
        if (coef == 0.0) continue;
        acc += coef * f(p);
    }
    for (int i = 0; i < d; ++i) acc *= b0[i];
    return acc;
}

}  // namespace brushlab
