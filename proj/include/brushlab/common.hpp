#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace brushlab {

// Error taxonomy, mirrored by the CLI exit codes (config 2, domain 3, accuracy 4).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a quadrature result fails its step-halving (Richardson) check.
struct accuracy_error : std::runtime_error {
    explicit accuracy_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double pow2(double e) { return std::exp2(e); }

inline bool finite(const std::vector<double>& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

// Deterministic RNG; every stochastic test and experiment seeds one of these.
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Least-squares slope of y against x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw domain_error("fit_line: need at least two matching points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw domain_error("fit_line: degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

// FNV-1a over bytes; used for the reproducibility hash in CLI summaries.
inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace brushlab
