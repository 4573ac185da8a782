#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "brushlab/covering.hpp"
#include "brushlab/quadrature.hpp"

namespace brushlab {

namespace detail {

// Classical C^infinity step: h(t) = exp(-1/t) for t > 0, and
// g(t) = h(t) / (h(t) + h(1-t)) rises from 0 to 1 on [0,1].
inline double smooth_h(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

inline double smooth_g(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = smooth_h(t);
    const double b = smooth_h(1.0 - t);
    return a / (a + b);
}

// Odd transition eta with eta = -1 for xi <= -1 and +1 for xi >= 1.
// Oddness is enforced structurally so that ramp^2(xi) + ramp^2(-xi) = 1
// reduces to sin^2 + cos^2 in floating point.
inline double eta(double xi) {
    const double mag = 2.0 * smooth_g((std::fabs(xi) + 1.0) / 2.0) - 1.0;
    return xi >= 0.0 ? mag : -mag;
}

}  // namespace detail

// Smooth ramp rho: 0 below -1, 1 above +1, with rho(xi)^2 + rho(-xi)^2 = 1.
inline double ramp_eval(double xi) {
    return std::sin(0.25 * std::numbers::pi * (1.0 + detail::eta(xi)));
}

// Bell function of an interval: rho((xi - alpha)/eps) * rho((alpha' - xi)/eps').
// Supported on [alpha - eps, alpha' + eps'], identically 1 on
// [alpha + eps, alpha' - eps'].
struct BellFunction {
    CutoffInterval interval;

    double operator()(double xi) const {
        const CutoffInterval& I = interval;
        if (xi <= I.alpha - I.eps || xi >= I.alpha_prime + I.eps_prime) return 0.0;
        return ramp_eval((xi - I.alpha) / I.eps) *
               ramp_eval((I.alpha_prime - xi) / I.eps_prime);
    }
};

inline double bell_eval(const CutoffInterval& interval, double xi) {
    return BellFunction{interval}(xi);
}

// Central bell on the unit-interval frame: g_hat(u) = rho(|I|u/eps) rho(|I|(1-u)/eps'),
// so that b_I(xi) = g_hat((xi - alpha)/|I|). Supported on [-eps/|I|, 1 + eps'/|I|].
inline double central_bell_hat_eval(const CutoffInterval& interval, double u) {
    const double len = interval.length();
    return ramp_eval(len * u / interval.eps) *
           ramp_eval(len * (1.0 - u) / interval.eps_prime);
}

// Time-domain central bell g_I by quadrature of the inverse Fourier integral
// over the compact support of g_hat. Samples of g_hat are cached so repeated
// point evaluations only pay for the oscillatory factor.
//
// resolution: subintervals of the base grid. A value is trusted only if the
// half-resolution estimate agrees to check_tol (else accuracy_error).
class CentralBellEvaluator {
  public:
    CentralBellEvaluator(const CutoffInterval& interval, std::size_t resolution)
        : interval_(interval),
          lo_(-interval.eps / interval.length()),
          hi_(1.0 + interval.eps_prime / interval.length()) {
        if (resolution < 4 || resolution % 2 != 0)
            throw domain_error("central bell evaluator: resolution must be even and >= 4");
        nodes_ = uniform_nodes(lo_, hi_, resolution);
        samples_.resize(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            samples_[i] = central_bell_hat_eval(interval_, nodes_[i]);
    }

    // g_I(x) = (2 pi)^{-1/2} \int g_hat(u) e^{iux} du.
    std::complex<double> operator()(double x, double check_tol = 0.0) const {
        const std::complex<double> fine = integrate(x, 1);
        if (check_tol > 0.0) {
            const std::complex<double> coarse = integrate(x, 2);
            if (std::abs(fine - coarse) > check_tol)
                throw accuracy_error("central bell: quadrature resolution insufficient");
        }
        return fine;
    }

    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    std::size_t resolution() const { return nodes_.size() - 1; }

  private:
    std::complex<double> integrate(double x, std::size_t stride) const {
        const double h = (hi_ - lo_) * static_cast<double>(stride) /
                         static_cast<double>(nodes_.size() - 1);
        std::complex<double> acc = 0.0;
        const std::size_t last = nodes_.size() - 1;
        for (std::size_t i = 0; i <= last; i += stride) {
            const std::complex<double> term =
                samples_[i] * std::exp(std::complex<double>(0.0, x * nodes_[i]));
            acc += (i == 0 || i == last) ? 0.5 * term : term;
        }
        return acc * h / std::sqrt(2.0 * std::numbers::pi);
    }

    CutoffInterval interval_;
    double lo_, hi_;
    std::vector<double> nodes_;
    std::vector<double> samples_;
};

// One-shot evaluation; resolution must give >= 8 samples per period of
// e^{ixu} over the support (the caller sizes it, we verify by halving).
inline std::complex<double> central_bell_time_eval(const CutoffInterval& interval, double x,
                                                   std::size_t resolution,
                                                   double check_tol = 1e-9) {
    CentralBellEvaluator ev(interval, resolution);
    return ev(x, check_tol);
}

// Suggested resolution for oscillations up to |x| <= xmax in the unit frame.
inline std::size_t central_bell_resolution(const CutoffInterval& interval, double xmax,
                                           std::size_t base = 256) {
    const double span = 1.0 + interval.eps / interval.length() +
                        interval.eps_prime / interval.length();
    const double per_osc = 8.0 * span * std::fabs(xmax) / (2.0 * std::numbers::pi);
    std::size_t n = base;
    while (static_cast<double>(n) < 4.0 * per_osc) n *= 2;
    return n;
}

}  // namespace brushlab
