#include <doctest.h>

#include <cmath>

#include "brushlab/anisotropy.hpp"

using namespace brushlab;

namespace {

std::vector<double> random_point(Rng& rng, int d, double lo = -10.0, double hi = 10.0) {
    std::vector<double> x(d);
    for (auto& v : x) v = uniform(rng, lo, hi);
    return x;
}

}  // namespace

TEST_CASE("quasi-norm basic cases") {
    const auto an = make_anisotropy({1.0, 2.0});

    SUBCASE("zero maps to zero") { CHECK(quasi_norm({0.0, 0.0}, an) == 0.0); }

    SUBCASE("isotropic case is the Euclidean norm") {
        const auto iso = make_anisotropy({1.0, 1.0, 1.0});
        Rng rng(7);
        for (int t = 0; t < 200; ++t) {
            const auto x = random_point(rng, 3);
            const double expect = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
            CHECK(quasi_norm(x, iso) == doctest::Approx(expect).epsilon(1e-11));
        }
    }

    SUBCASE("closed form for a=(1,2), x=(1,1)") {
        // t^{-2} + t^{-4} = 1 gives t^{-2} = (sqrt 5 - 1)/2.
        const double u = (std::sqrt(5.0) - 1.0) / 2.0;
        const double expect = 1.0 / std::sqrt(u);
        CHECK(quasi_norm({1.0, 1.0}, an) == doctest::Approx(expect).epsilon(1e-10));
        CHECK(quasi_norm({1.0, 1.0}, an) == doctest::Approx(1.272020).epsilon(1e-6));
    }

    SUBCASE("non-finite input rejected") {
        CHECK_THROWS_AS(quasi_norm({1.0, std::nan("")}, an), domain_error);
    }

    SUBCASE("exponents below one rejected") {
        CHECK_THROWS_AS(make_anisotropy({0.5, 2.0}), domain_error);
    }
}

TEST_CASE("quasi-norm homogeneity |t^a x|_a = t |x|_a") {
    const auto an = make_anisotropy({1.0, 2.0, 1.5});
    Rng rng(11);
    for (int t = 0; t < 2000; ++t) {
        const auto x = random_point(rng, 3);
        const double scale = std::exp(uniform(rng, std::log(1e-3), std::log(1e3)));
        const double lhs = quasi_norm(dilate(scale, an, x), an);
        const double rhs = scale * quasi_norm(x, an);
        if (rhs == 0.0) continue;
        CHECK(std::fabs(lhs - rhs) <= 1e-10 * rhs);
    }
}

TEST_CASE("Euclidean sandwich ratios stay bounded across rescaling") {
    const auto an = make_anisotropy({1.0, 2.0});
    Rng rng(13);
    double lo1 = kInf, lo2 = kInf;
    for (int t = 0; t < 2000; ++t) {
        auto x = random_point(rng, 2);
        const int j = static_cast<int>(rng() % 41) - 20;
        x = dilate(pow2(j), an, x);
        if (!finite(x)) continue;
        const double qn = quasi_norm(x, an);
        const double eu = std::sqrt(x[0] * x[0] + x[1] * x[1]);
        const double r1 = (1.0 + eu) / std::pow(1.0 + qn, an.a_min());
        const double r2 = std::pow(1.0 + qn, an.a_max()) / (1.0 + eu);
        lo1 = std::min(lo1, r1);
        lo2 = std::min(lo2, r2);
    }
    CHECK(lo1 > 1e-6);
    CHECK(lo2 > 1e-6);
}

TEST_CASE("bracket") {
    const auto an = make_anisotropy({1.0, 2.0});

    SUBCASE("origin gives exactly one") {
        CHECK(bracket({0.0, 0.0}, an) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("large single coordinate grows like |x1|^{1/a1}") {
        for (double big : {1e4, 1e6, 1e8}) {
            const double b = bracket({big, 0.0}, an);
            CHECK(b == doctest::Approx(std::pow(big, 1.0)).epsilon(1e-3));
        }
        const auto an2 = make_anisotropy({2.0, 1.0});
        for (double big : {1e4, 1e6, 1e8}) {
            const double b = bracket({big, 0.0}, an2);
            CHECK(b == doctest::Approx(std::sqrt(big)).epsilon(1e-3));
        }
    }

    SUBCASE("bracket equivalence with 1 + |x|_a, stable across scale bands") {
        auto fit_band = [&](std::uint64_t seed, int j_lo, int j_hi) {
            Rng rng(seed);
            double hi = 0.0, lo = kInf;  // bounds on (1 + |x|_a) / <x>
            for (int t = 0; t < 2000; ++t) {
                auto x = random_point(rng, 2);
                const int j = j_lo + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                                                 j_hi - j_lo + 1));
                x = dilate(pow2(j), an, x);
                const double ratio = (1.0 + quasi_norm(x, an)) / bracket(x, an);
                hi = std::max(hi, ratio);
                lo = std::min(lo, ratio);
            }
            return std::make_pair(lo, hi);
        };
        const auto small_scales = fit_band(17, -10, 0);
        const auto large_scales = fit_band(18, 0, 10);
        CHECK(small_scales.first > 1e-3);
        CHECK(large_scales.first > 1e-3);
        CHECK(small_scales.second < 1e3);
        CHECK(large_scales.second < 1e3);
        // The fitted envelope does not degrade between bands.
        CHECK(large_scales.second <= 2.0 * small_scales.second + 2.0);
        CHECK(small_scales.second <= 2.0 * large_scales.second + 2.0);
    }

    SUBCASE("submultiplicativity constant is stable across batches") {
        auto fit_c5 = [&](std::uint64_t seed, int count) {
            Rng rng(seed);
            double c5 = 0.0;
            for (int t = 0; t < count; ++t) {
                const auto x = random_point(rng, 2, -50.0, 50.0);
                const auto y = random_point(rng, 2, -50.0, 50.0);
                std::vector<double> s{x[0] + y[0], x[1] + y[1]};
                c5 = std::max(c5, bracket(s, an) / (bracket(x, an) * bracket(y, an)));
            }
            return c5;
        };
        const double a = fit_c5(101, 10000);
        const double b = fit_c5(202, 10000);
        CHECK(a > 0.0);
        CHECK(std::fabs(a - b) <= 0.25 * std::max(a, b));
    }
}

TEST_CASE("bracket integrability: box integrals of <x>^-(nu+1) are Cauchy") {
    const auto an = make_anisotropy({1.0, 2.0});
    const double tau = an.nu + 1.0;
    auto box_integral = [&](double half, int cells) {
        const double h = 2.0 * half / cells;
        double acc = 0.0;
        for (int i = 0; i < cells; ++i) {
            for (int j = 0; j < cells; ++j) {
                const std::vector<double> x{-half + (i + 0.5) * h, -half + (j + 0.5) * h};
                acc += std::pow(bracket(x, an), -tau) * h * h;
            }
        }
        return acc;
    };
    const double i1 = box_integral(20.0, 160);
    const double i2 = box_integral(40.0, 320);
    const double i3 = box_integral(80.0, 640);
    CHECK(i2 - i1 > 0.0);
    CHECK(i3 - i2 < i2 - i1);       // increments shrink
    CHECK(i3 - i2 < 0.2 * i2);      // tail is small relative to the value
}

TEST_CASE("dyadic rectangles") {
    const auto an = make_anisotropy({1.0, 2.0});

    SUBCASE("origin at level 0 has k = 0") {
        const auto q = dyadic_rect_of_point({0.0, 0.0}, 0, an);
        CHECK(q.k == std::vector<long long>{0, 0});
    }

    SUBCASE("worked example j=1, x=(0.6, 0.3)") {
        const auto q = dyadic_rect_of_point({0.6, 0.3}, 1, an);
        CHECK(q.k == std::vector<long long>{1, 1});
    }

    SUBCASE("volume is 2^{-nu j}") {
        Rng rng(23);
        for (int t = 0; t < 100; ++t) {
            const auto x = random_point(rng, 2);
            const int j = static_cast<int>(rng() % 9) - 4;
            const auto q = dyadic_rect_of_point(x, j, an);
            CHECK(q.volume() == doctest::Approx(pow2(-an.nu * j)).epsilon(1e-12));
        }
    }

    SUBCASE("membership: exactly one rectangle per point at fixed level") {
        Rng rng(29);
        for (int t = 0; t < 500; ++t) {
            const auto x = random_point(rng, 2);
            const int j = static_cast<int>(rng() % 5) - 2;
            const auto q = dyadic_rect_of_point(x, j, an);
            CHECK(q.contains(x));
            // Neighbors must not contain the point.
            for (int di = -1; di <= 1; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    DyadicRect nb = q;
                    nb.k[0] += di;
                    nb.k[1] += dj;
                    for (int i = 0; i < 2; ++i)
                        nb.lower[i] = static_cast<double>(nb.k[i]) * nb.side[i];
                    CHECK(!nb.contains(x));
                }
            }
        }
    }
}
