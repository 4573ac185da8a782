#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <tuple>
#include <vector>

#include "brushlab/bells.hpp"
#include "brushlab/covering.hpp"
#include "brushlab/spectrum.hpp"

namespace brushlab {

// Index (n, j, k) of one tensor brushlet w_{n, R_{j,k}}.
struct BrushletIndex {
    int j = 0;
    std::vector<int> k;
    std::vector<int> n;

    friend bool operator==(const BrushletIndex& a, const BrushletIndex& b) {
        return a.j == b.j && a.k == b.k && a.n == b.n;
    }
    // Lexicographic (j, k, n); the greedy selector's tie-break order.
    friend bool operator<(const BrushletIndex& a, const BrushletIndex& b) {
        return std::tie(a.j, a.k, a.n) < std::tie(b.j, b.k, b.n);
    }
};

// Frequency side of the univariate brushlet:
//   w_hat_{n,I}(xi) = sqrt(2/|I|) b_I(xi) cos(pi (n + 1/2)(xi - alpha)/|I|).
inline double brushlet_hat_1d(int n, const CutoffInterval& I, double xi) {
    if (n < 0) throw domain_error("brushlet_hat_1d: oscillation index must be >= 0");
    const double b = bell_eval(I, xi);
    if (b == 0.0) return 0.0;
    const double len = I.length();
    return std::sqrt(2.0 / len) * b *
           std::cos(std::numbers::pi * (n + 0.5) * (xi - I.alpha) / len);
}

// Tensor product over the rectangle's intervals.
inline double brushlet_hat(const BrushletIndex& idx, const LizorkinRect& rect,
                           const std::vector<double>& xi) {
    double v = 1.0;
    for (int i = 0; i < rect.dim(); ++i) {
        v *= brushlet_hat_1d(idx.n[i], rect.intervals[i], xi[i]);
        if (v == 0.0) return 0.0;
    }
    return v;
}

// Hump center frequency e_{n,I} = pi (n + 1/2) / |I|.
inline double hump_center(int n, const CutoffInterval& I) {
    return std::numbers::pi * (n + 0.5) / I.length();
}

// All 2^d sign vectors v_m of the hump frame, each exactly once.
inline std::vector<std::vector<int>> sign_vectors(int d) {
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(1) << d);
    for (std::size_t m = 0; m < (static_cast<std::size_t>(1) << d); ++m) {
        std::vector<int> v(d);
        for (int i = 0; i < d; ++i) v[i] = (m >> i) & 1 ? -1 : 1;
        out.push_back(std::move(v));
    }
    return out;
}

// Time-domain univariate brushlet via the two-hump representation
//   w_{n,I}(x) = sqrt(|I|/2) e^{i alpha x}( g_I(|I|(x + e_{n,I})) + g_I(|I|(x - e_{n,I})) ).
class Brushlet1DTimeEvaluator {
  public:
    Brushlet1DTimeEvaluator(const CutoffInterval& I, std::size_t resolution)
        : interval_(I), bell_(std::make_shared<CentralBellEvaluator>(I, resolution)) {}

    std::complex<double> operator()(int n, double x, double check_tol = 0.0) const {
        const double len = interval_.length();
        const double e = hump_center(n, interval_);
        const std::complex<double> phase =
            std::exp(std::complex<double>(0.0, interval_.alpha * x));
        return std::sqrt(len / 2.0) * phase *
               ((*bell_)(len * (x + e), check_tol) + (*bell_)(len * (x - e), check_tol));
    }

    const CentralBellEvaluator& central_bell() const { return *bell_; }

  private:
    CutoffInterval interval_;
    std::shared_ptr<CentralBellEvaluator> bell_;
};

// Hump frame of a rectangle: scale matrix Delta = diag(|I_i|), centers
// U_m e_{n,R}, and the tensor envelope G_R = (x)_i g_{I_i}.
class HumpFrame {
  public:
    HumpFrame(const LizorkinRect& rect, std::size_t resolution) : rect_(rect) {
        for (int i = 0; i < rect.dim(); ++i)
            bells_.emplace_back(std::make_shared<CentralBellEvaluator>(rect.intervals[i], resolution));
        signs_ = sign_vectors(rect.dim());
    }

    const std::vector<std::vector<int>>& signs() const { return signs_; }

    std::vector<double> delta() const {
        std::vector<double> d(rect_.dim());
        for (int i = 0; i < rect_.dim(); ++i) d[i] = rect_.intervals[i].length();
        return d;
    }

    std::vector<double> hump_vector(const std::vector<int>& n) const {
        std::vector<double> e(rect_.dim());
        for (int i = 0; i < rect_.dim(); ++i) e[i] = hump_center(n[i], rect_.intervals[i]);
        return e;
    }

    // |G_R(y)| with G_R = (x) g_{I_i}.
    double envelope(const std::vector<double>& y) const {
        double v = 1.0;
        for (int i = 0; i < rect_.dim(); ++i) v *= std::abs((*bells_[i])(y[i]));
        return v;
    }

    // sum_m |G_R(Delta(x + U_m e_{n,R}))|, the right side of the hump bound.
    double hump_bound_sum(const std::vector<int>& n, const std::vector<double>& x) const {
        const auto d = delta();
        const auto e = hump_vector(n);
        double total = 0.0;
        std::vector<double> y(rect_.dim());
        for (const auto& v : signs_) {
            for (int i = 0; i < rect_.dim(); ++i) y[i] = d[i] * (x[i] + v[i] * e[i]);
            total += envelope(y);
        }
        return total;
    }

  private:
    LizorkinRect rect_;
    std::vector<std::shared_ptr<CentralBellEvaluator>> bells_;
    std::vector<std::vector<int>> signs_;
};

// Time-domain tensor brushlet as the product of univariate evaluations.
class BrushletTimeEvaluator {
  public:
    BrushletTimeEvaluator(const LizorkinRect& rect, std::size_t resolution) : rect_(rect) {
        for (int i = 0; i < rect.dim(); ++i)
            axes_.emplace_back(rect.intervals[i], resolution);
    }

    std::complex<double> operator()(const std::vector<int>& n, const std::vector<double>& x,
                                    double check_tol = 0.0) const {
        std::complex<double> v(1.0);
        for (int i = 0; i < rect_.dim(); ++i) v *= axes_[i](n[i], x[i], check_tol);
        return v;
    }

  private:
    LizorkinRect rect_;
    std::vector<Brushlet1DTimeEvaluator> axes_;
};

inline std::complex<double> brushlet_time(const BrushletIndex& idx, const LizorkinRect& rect,
                                          const std::vector<double>& x, std::size_t resolution,
                                          double check_tol = 1e-9) {
    BrushletTimeEvaluator ev(rect, resolution);
    return ev(idx.n, x, check_tol);
}

}  // namespace brushlab
