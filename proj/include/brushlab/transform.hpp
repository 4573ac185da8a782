#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <vector>

#include "brushlab/brushlet.hpp"
#include "brushlab/parallel.hpp"
#include "brushlab/quadrature.hpp"
#include "brushlab/spectrum.hpp"

namespace brushlab {

// Explicit finite index family: levels j_lo..j_hi, all k in E, and every
// oscillation component n_i in [0, n_max).
struct Truncation {
    int j_lo = 0;
    int j_hi = 0;
    int n_max = 1;

    bool contains(const BrushletIndex& idx) const {
        if (idx.j < j_lo || idx.j > j_hi) return false;
        for (int ni : idx.n)
            if (ni < 0 || ni >= n_max) return false;
        return true;
    }
};

// Sparse map from brushlet indices to complex coefficients.
struct CoefficientSet {
    Truncation trunc;
    std::map<BrushletIndex, Complex> entries;

    void set(const BrushletIndex& idx, Complex v) {
        if (!trunc.contains(idx))
            throw domain_error("coefficient set: index outside truncation");
        entries[idx] = v;
    }

    std::size_t size() const { return entries.size(); }
};

using SpectrumProvider = std::function<Complex(const std::vector<double>&)>;

// Quadrature sizing for frequency-side inner products. Node counts follow the
// oscillation sampling rule (>= 8 samples per period of the fastest cosine
// factor) and additionally resolve the bell transition zones; `check` turns on
// the step-halving verification against `tol`.
struct QuadRule {
    std::size_t base = 256;
    double tol = 1e-9;
    bool check = true;
};

namespace detail {

inline std::size_t next_pow2(double x) {
    std::size_t n = 1;
    while (static_cast<double>(n) < x) n *= 2;
    return n;
}

inline std::size_t axis_nodes(const CutoffInterval& I, int n_max, const QuadRule& q) {
    const double span = I.support_hi() - I.support_lo();
    const double cycles = (n_max + 0.5) / (2.0 * I.length());
    const double for_osc = 8.0 * span * cycles;
    const double for_bell = 10.0 * span / std::min(I.eps, I.eps_prime);
    return next_pow2(std::max({static_cast<double>(q.base), for_osc, for_bell}));
}

// Inner product of two univariate brushlets by trapezoid over the overlap of
// their bell supports. Disjoint supports short-circuit to an exact zero.
inline double univariate_inner(const CutoffInterval& I1, int n1, const CutoffInterval& I2,
                               int n2, const QuadRule& q) {
    const double lo = std::max(I1.support_lo(), I2.support_lo());
    const double hi = std::min(I1.support_hi(), I2.support_hi());
    if (!(lo < hi)) return 0.0;
    const double span = hi - lo;
    const double cycles =
        (n1 + 0.5) / (2.0 * I1.length()) + (n2 + 0.5) / (2.0 * I2.length());
    const double eps_min = std::min({I1.eps, I1.eps_prime, I2.eps, I2.eps_prime});
    const double want = std::max({static_cast<double>(q.base), 8.0 * span * cycles,
                                  10.0 * span / eps_min});
    const std::size_t n = next_pow2(want);
    auto f = [&](double xi) {
        return brushlet_hat_1d(n1, I1, xi) * brushlet_hat_1d(n2, I2, xi);
    };
    if (!q.check) return trapezoid(f, lo, hi, n);
    return trapezoid_checked(f, lo, hi, n, q.tol);
}

}  // namespace detail

// Enumerates the rectangles of a truncation in deterministic order.
inline std::vector<LizorkinRect> truncation_rects(const Truncation& t, const Anisotropy& an) {
    std::vector<LizorkinRect> rects;
    for (int j = t.j_lo; j <= t.j_hi; ++j) {
        auto level = lizorkin_level(j, an);
        rects.insert(rects.end(), level.begin(), level.end());
    }
    return rects;
}

namespace detail {

// All coefficients of one rectangle: tensor-sample f_hat over the bell
// support (trapezoid weights folded in), then contract axis by axis against
// the sampled cosines. `mult` scales every per-axis node count.
inline std::vector<Complex> analyze_rect(const SpectrumProvider& f_hat, const LizorkinRect& rect,
                                         int n_max, const QuadRule& quad, std::size_t mult) {
    const int d = rect.dim();
    std::vector<std::vector<double>> nodes(d);
    std::vector<std::vector<double>> weights(d);
    std::vector<std::vector<std::vector<double>>> basis(d);  // [axis][n][node]
    for (int i = 0; i < d; ++i) {
        const CutoffInterval& I = rect.intervals[i];
        const std::size_t m = axis_nodes(I, n_max, quad) * mult;
        nodes[i] = uniform_nodes(I.support_lo(), I.support_hi(), m);
        const double h = (I.support_hi() - I.support_lo()) / static_cast<double>(m);
        weights[i].assign(m + 1, h);
        weights[i].front() *= 0.5;
        weights[i].back() *= 0.5;
        basis[i].resize(n_max);
        for (int nn = 0; nn < n_max; ++nn) {
            basis[i][nn].resize(m + 1);
            for (std::size_t t = 0; t <= m; ++t)
                basis[i][nn][t] = brushlet_hat_1d(nn, I, nodes[i][t]);
        }
    }

    std::vector<std::size_t> sizes(d);
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) {
        sizes[i] = nodes[i].size();
        total *= sizes[i];
    }
    std::vector<Complex> cur(total);
    {
        std::vector<std::size_t> c(d, 0);
        std::vector<double> x(d);
        for (std::size_t idx = 0; idx < total; ++idx) {
            double w = 1.0;
            for (int i = 0; i < d; ++i) {
                x[i] = nodes[i][c[i]];
                w *= weights[i][c[i]];
            }
            cur[idx] = w * f_hat(x);
            for (int i = 0; i < d; ++i) {
                if (++c[i] < sizes[i]) break;
                c[i] = 0;
            }
        }
    }

    // data[..., node_i, ...] -> data[..., n_i, ...], one axis at a time.
    std::vector<std::size_t> dims = sizes;
    for (int i = 0; i < d; ++i) {
        std::size_t stride = 1;
        for (int t = 0; t < i; ++t) stride *= dims[t];
        std::size_t outer = 1;
        for (int t = i + 1; t < d; ++t) outer *= dims[t];
        std::vector<Complex> nxt(stride * static_cast<std::size_t>(n_max) * outer);
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t s = 0; s < stride; ++s) {
                for (int nn = 0; nn < n_max; ++nn) {
                    Complex acc = 0.0;
                    const std::size_t base = o * stride * dims[i] + s;
                    for (std::size_t t = 0; t < dims[i]; ++t)
                        acc += basis[i][nn][t] * cur[base + t * stride];
                    nxt[o * stride * n_max + nn * stride + s] = acc;
                }
            }
        }
        cur = std::move(nxt);
        dims[i] = static_cast<std::size_t>(n_max);
    }
    return cur;
}

}  // namespace detail

// Canonical analysis operator: coefficients <f, w_{n,R}> computed on the
// frequency side as integrals of f_hat * w_hat over the rectangle's bell
// support (w_hat is real; Parseval moves the pairing to frequency). With
// `quad.check`, node counts are doubled until every coefficient of the
// rectangle moves by at most quad.tol; failure to stabilize raises the
// accuracy flag.
inline CoefficientSet analyze(const SpectrumProvider& f_hat, const Truncation& trunc,
                              const Anisotropy& an, const QuadRule& quad = {},
                              int threads = 1) {
    const int d = an.dim();
    CoefficientSet out;
    out.trunc = trunc;
    const auto rects = truncation_rects(trunc, an);
    std::vector<std::vector<Complex>> results(rects.size());

    parallel_for(rects.size(), threads, [&](std::size_t ri) {
        const LizorkinRect& rect = rects[ri];
        std::vector<Complex> cur = detail::analyze_rect(f_hat, rect, trunc.n_max, quad, 1);
        if (quad.check) {
            bool stable = false;
            for (std::size_t mult = 2; mult <= 8; mult *= 2) {
                std::vector<Complex> next =
                    detail::analyze_rect(f_hat, rect, trunc.n_max, quad, mult);
                double dev = 0.0;
                for (std::size_t t = 0; t < cur.size(); ++t)
                    dev = std::max(dev, std::abs(next[t] - cur[t]));
                cur = std::move(next);
                if (dev <= quad.tol) {
                    stable = true;
                    break;
                }
            }
            if (!stable) throw accuracy_error("analyze: quadrature did not stabilize");
        }
        results[ri] = std::move(cur);
    });

    for (std::size_t ri = 0; ri < rects.size(); ++ri) {
        std::vector<int> nvec(d, 0);
        for (std::size_t idx = 0; idx < results[ri].size(); ++idx) {
            std::size_t c2 = idx;
            for (int i = 0; i < d; ++i) {
                nvec[i] = static_cast<int>(c2 % static_cast<std::size_t>(trunc.n_max));
                c2 /= static_cast<std::size_t>(trunc.n_max);
            }
            out.entries.emplace(BrushletIndex{rects[ri].j, rects[ri].k, nvec}, results[ri][idx]);
        }
    }
    return out;
}

// Evaluation closure for sum_c c w_hat.
inline SpectrumProvider spectrum_closure(const CoefficientSet& coeffs, const Anisotropy& an) {
    struct Term {
        LizorkinRect rect;
        BrushletIndex idx;
        Complex c;
    };
    auto terms = std::make_shared<std::vector<Term>>();
    std::map<std::pair<int, std::vector<int>>, LizorkinRect> rect_cache;
    for (const auto& [idx, c] : coeffs.entries) {
        auto key = std::make_pair(idx.j, idx.k);
        auto it = rect_cache.find(key);
        if (it == rect_cache.end())
            it = rect_cache.emplace(key, make_lizorkin_rect(idx.j, idx.k, an)).first;
        terms->push_back(Term{it->second, idx, c});
    }
    return [terms](const std::vector<double>& xi) {
        Complex acc = 0.0;
        for (const auto& t : *terms) acc += t.c * brushlet_hat(t.idx, t.rect, xi);
        return acc;
    };
}

// Synthesis operator T: evaluates sum_c c w_hat on the tensor grid.
inline SampledSpectrum synthesize(const CoefficientSet& coeffs, const Anisotropy& an,
                                  const std::vector<std::vector<double>>& axes) {
    return sample_spectrum(axes, spectrum_closure(coeffs, an));
}

// Gram matrix <w_i, w_j> by frequency quadrature, factored through univariate
// inner products of the tensor components (cached; exact zeros for disjoint
// bell supports).
inline std::vector<std::vector<double>> gram_matrix(const std::vector<BrushletIndex>& indices,
                                                    const Anisotropy& an,
                                                    const QuadRule& quad = {},
                                                    int threads = 1) {
    const int d = an.dim();
    const std::size_t n = indices.size();

    // Collect distinct univariate factors per axis: (j, k_i, n_i).
    using Key = std::array<int, 3>;
    std::vector<std::map<Key, std::size_t>> factor_ids(d);
    std::vector<std::vector<Key>> factors(d);
    std::vector<std::vector<std::size_t>> factor_of(n, std::vector<std::size_t>(d));
    for (std::size_t t = 0; t < n; ++t) {
        for (int i = 0; i < d; ++i) {
            Key key{indices[t].j, indices[t].k[i], indices[t].n[i]};
            auto [it, fresh] = factor_ids[i].emplace(key, factors[i].size());
            if (fresh) factors[i].push_back(key);
            factor_of[t][i] = it->second;
        }
    }

    // Univariate Gram tables per axis.
    std::vector<std::vector<std::vector<double>>> table(d);
    for (int i = 0; i < d; ++i) {
        const std::size_t m = factors[i].size();
        table[i].assign(m, std::vector<double>(m, 0.0));
        std::vector<CutoffInterval> ivs(m);
        for (std::size_t a = 0; a < m; ++a)
            ivs[a] = detail::axis_interval(factors[i][a][0], factors[i][a][1], an.a[i]);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a; b < m; ++b) pairs.emplace_back(a, b);
        parallel_for(pairs.size(), threads, [&](std::size_t pi) {
            const auto [a, b] = pairs[pi];
            const double v = detail::univariate_inner(ivs[a], factors[i][a][2], ivs[b],
                                                      factors[i][b][2], quad);
            table[i][a][b] = v;
            table[i][b][a] = v;
        });
    }

    std::vector<std::vector<double>> G(n, std::vector<double>(n, 0.0));
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p; q < n; ++q) {
            double v = 1.0;
            for (int i = 0; i < d; ++i) {
                v *= table[i][factor_of[p][i]][factor_of[q][i]];
                if (v == 0.0) break;
            }
            G[p][q] = v;
            G[q][p] = v;
        }
    }
    return G;
}

// ---------------------------------------------------------------------------
// Telescoping completeness check.
// ---------------------------------------------------------------------------

// (sum_{j=j0-N}^{j0+N} sum_{k in E} P_{R_{j,k}} f)(xi), evaluated pointwise.
inline Complex level_projection_sum_value(const SpectrumProvider& f, const Anisotropy& an,
                                          int j0, int N, const std::vector<double>& xi) {
    Complex acc = 0.0;
    for (int j = j0 - N; j <= j0 + N; ++j)
        for (const auto& rect : lizorkin_level(j, an))
            acc += project_value(f, rect.intervals, xi);
    return acc;
}

// (P_{box(j_outer)} - P_{box(j_inner)}) f at xi, box intervals per axis.
inline Complex box_projection_difference_value(const SpectrumProvider& f, const Anisotropy& an,
                                               int j_outer, int j_inner,
                                               const std::vector<double>& xi) {
    std::vector<CutoffInterval> outer, inner;
    for (int i = 0; i < an.dim(); ++i) {
        outer.push_back(box_interval(j_outer, i, an));
        inner.push_back(box_interval(j_inner, i, an));
    }
    return project_value(f, outer, xi) - project_value(f, inner, xi);
}

// Tensor evaluation axes that sample every dyadic scale in [j_lo, j_hi]:
// the union of per-level uniform grids over [-2^{ja_i}, 2^{ja_i}] (slightly
// enlarged). A single uniform grid would miss the narrow inner corridors.
inline std::vector<std::vector<double>> multiscale_axes(const Anisotropy& an, int j_lo, int j_hi,
                                                        std::size_t per_level = 16) {
    std::vector<std::vector<double>> axes(an.dim());
    for (int i = 0; i < an.dim(); ++i) {
        for (int j = j_lo; j <= j_hi; ++j) {
            const double edge = pow2(j * an.a[i]) * 1.05;
            const auto layer = uniform_nodes(-edge, edge, per_level);
            axes[i].insert(axes[i].end(), layer.begin(), layer.end());
        }
        std::sort(axes[i].begin(), axes[i].end());
        axes[i].erase(std::unique(axes[i].begin(), axes[i].end()), axes[i].end());
    }
    return axes;
}

// Region where a spectrum must live so that levels [j0-N, j0+N] cover it:
// inside the flat zone of box(j0+N) and clear of the bell support of
// box(j0-N-1).
inline bool in_covered_annulus(const std::vector<double>& xi, const Anisotropy& an, int j0,
                               int N) {
    bool outside_inner = false;
    for (int i = 0; i < an.dim(); ++i) {
        const CutoffInterval out = box_interval(j0 + N, i, an);
        if (std::fabs(xi[i]) > out.alpha_prime - out.eps_prime) return false;
        const CutoffInterval in = box_interval(j0 - N - 1, i, an);
        if (std::fabs(xi[i]) > in.alpha_prime + in.eps_prime) outside_inner = true;
    }
    return outside_inner;
}

// Sup-norm grid residual of the telescoping identity
//   sum_{j=j0-N}^{j0+N} sum_k P_{R_{j,k}} = P_{box(j0+N)} - P_{box(j0-N-1)}
// over the tensor evaluation grid. The band-limit precondition is probed on a
// multiscale grid (one uniform layer per dyadic level, so features of every
// covered scale are sampled); violating it raises domain_error.
inline double telescoping_check(const SpectrumProvider& f, const Anisotropy& an, int j0, int N,
                                const std::vector<std::vector<double>>& eval_axes,
                                int threads = 1) {
    const int d = an.dim();
    std::vector<std::size_t> sizes(d);
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) {
        sizes[i] = eval_axes[i].size();
        total *= sizes[i];
    }

    // Probe the band-limit precondition.
    double amp = 0.0, leak = 0.0;
    for (int j = j0 - N - 1; j <= j0 + N + 1; ++j) {
        std::vector<std::vector<double>> layer(d);
        std::size_t layer_total = 1;
        for (int i = 0; i < d; ++i) {
            layer[i] = uniform_nodes(-pow2(j * an.a[i]) * 1.05, pow2(j * an.a[i]) * 1.05, 64);
            layer_total *= layer[i].size();
        }
        std::vector<std::size_t> c(d, 0);
        std::vector<double> x(d);
        for (std::size_t idx = 0; idx < layer_total; ++idx) {
            for (int i = 0; i < d; ++i) x[i] = layer[i][c[i]];
            const double v = std::abs(f(x));
            amp = std::max(amp, v);
            if (!in_covered_annulus(x, an, j0, N)) leak = std::max(leak, v);
            for (int i = 0; i < d; ++i) {
                if (++c[i] < layer[i].size()) break;
                c[i] = 0;
            }
        }
    }
    if (amp == 0.0) return 0.0;
    if (leak > 1e-8 * amp)
        throw domain_error("telescoping_check: spectrum not band-limited in covered annulus");

    std::vector<double> residual(total, 0.0);
    parallel_for(total, threads, [&](std::size_t idx) {
        std::vector<std::size_t> c(d);
        std::size_t rem = idx;
        std::vector<double> x(d);
        for (int i = 0; i < d; ++i) {
            c[i] = rem % sizes[i];
            rem /= sizes[i];
            x[i] = eval_axes[i][c[i]];
        }
        const Complex lhs = level_projection_sum_value(f, an, j0, N, x);
        const Complex rhs = box_projection_difference_value(f, an, j0 + N, j0 - N - 1, x);
        residual[idx] = std::abs(lhs - rhs);
    });
    double sup = 0.0;
    for (double r : residual) sup = std::max(sup, r);
    return sup;
}

// Random band-limited test spectrum: Gaussian bumps parked at rectangle
// centers of levels [j_lo, j_hi], with widths an eighth of the rectangle
// half-sides so the mass stays inside the corridors up to ~1e-14 tails.
inline SpectrumProvider random_corridor_spectrum(const Anisotropy& an, int j_lo, int j_hi,
                                                 int bumps, std::uint64_t seed) {
    struct Bump {
        std::vector<double> center;
        std::vector<double> inv_two_sigma_sq;
        Complex amp;
    };
    auto data = std::make_shared<std::vector<Bump>>();
    Rng rng(seed);
    for (int b = 0; b < bumps; ++b) {
        const int j = j_lo + static_cast<int>(rng() % static_cast<std::uint64_t>(j_hi - j_lo + 1));
        const auto level = lizorkin_level(j, an);
        const auto& rect = level[rng() % level.size()];
        Bump bump;
        bump.center = rect.center;
        bump.inv_two_sigma_sq.resize(an.dim());
        for (int i = 0; i < an.dim(); ++i) {
            const double half = 0.5 * rect.intervals[i].length();
            const double sigma = half / 8.0;
            bump.inv_two_sigma_sq[i] = 1.0 / (2.0 * sigma * sigma);
            bump.center[i] += uniform(rng, -0.25 * half, 0.25 * half);
        }
        bump.amp = Complex(uniform(rng, 0.4, 1.0), uniform(rng, -0.5, 0.5));
        data->push_back(std::move(bump));
    }
    return [data](const std::vector<double>& xi) {
        Complex acc = 0.0;
        for (const auto& b : *data) {
            double e = 0.0;
            for (std::size_t i = 0; i < xi.size(); ++i) {
                const double dlt = xi[i] - b.center[i];
                e += dlt * dlt * b.inv_two_sigma_sq[i];
            }
            if (e < 700.0) acc += b.amp * std::exp(-e);
        }
        return acc;
    };
}

// ---------------------------------------------------------------------------
// Admissible pair.
// ---------------------------------------------------------------------------

// Radial profile theta with supp theta = [1/2, 2] and the exact telescoping
// partition sum_j theta(2^{-j} t)^2 = 1 for t > 0, built from the ramp:
// S(u) = rho(2u-1)^2 is a smooth 0->1 step on [0,1] and
// theta(t)^2 = S(log2 t + 1) - S(log2 t).
//
// The profile is composed with the anisotropic quasi-norm, phi_hat(xi) =
// theta(|xi|_a), so that |2^{-ja} xi|_a = 2^{-j} |xi|_a makes the dilated
// family telescope exactly; support and lower-bound conditions are stated on
// quasi-norm annuli accordingly.
struct AdmissiblePair {
    Anisotropy aniso;

    static double step(double u) {
        const double r = ramp_eval(2.0 * u - 1.0);
        return r * r;
    }

    static double profile_sq(double t) {
        if (!(t > 0.0)) return 0.0;
        const double u = std::log2(t);
        const double v = step(u + 1.0) - step(u);
        return v > 0.0 ? v : 0.0;
    }

    static double profile(double t) { return std::sqrt(profile_sq(t)); }

    double phi_hat(const std::vector<double>& xi) const {
        return profile(quasi_norm(xi, aniso, 1e-14));
    }

    // phi_hat_j(xi) = phi_hat(2^{-ja} xi).
    double phi_hat_j(int j, const std::vector<double>& xi) const {
        return profile(pow2(-j) * quasi_norm(xi, aniso, 1e-14));
    }

    // Support set T_j = 2^{ja} { 1/2 <= |xi|_a <= 2 } as a quasi-norm range.
    std::pair<double, double> support_range(int j) const {
        return {pow2(j - 1), pow2(j + 1)};
    }
};

inline AdmissiblePair build_admissible(const Anisotropy& an) { return AdmissiblePair{an}; }

// | sum_j |phi_hat(2^{-ja} xi)|^2 - 1 | over the finitely many levels whose
// support set contains xi.
inline double phi4_residual(const AdmissiblePair& pair, const std::vector<double>& xi) {
    const double t = quasi_norm(xi, pair.aniso, 1e-14);
    if (t == 0.0) throw domain_error("phi4_residual: xi must be nonzero");
    const double u = std::log2(t);
    const int jc = static_cast<int>(std::floor(u));
    double sum = 0.0;
    for (int j = jc - 2; j <= jc + 2; ++j) sum += AdmissiblePair::profile_sq(pow2(-j) * t);
    return std::fabs(sum - 1.0);
}

}  // namespace brushlab
