#include <catch2/catch_amalgamated.hpp>

#include "koblab/holo.hpp"
#include "koblab/rng.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace koblab;

namespace {

ComplexSeries random_series(Rng& rng, int deg, double scale) {
    std::vector<cplx> c(static_cast<size_t>(deg) + 1);
    for (auto& v : c) v = scale * rng.in_disc(1.0);
    return ComplexSeries{c};
}

} // namespace

TEST_CASE("series arithmetic round trips") {
    Rng rng(11);
    const ComplexSeries a = random_series(rng, 7, 1.0);
    const ComplexSeries b = random_series(rng, 5, 1.0);

    SECTION("mul distributes over eval") {
        const ComplexSeries ab = series_mul(a, b);
        for (int i = 0; i < 20; ++i) {
            const cplx z = rng.in_disc(0.9);
            REQUIRE(std::abs(ab.eval(z) - a.eval(z) * b.eval(z)) < 1e-12);
        }
    }

    SECTION("exp inverts log") {
        ComplexSeries f = a;
        f.c[0] = cplx(2.0, 0.3); // keep the constant term away from 0
        const ComplexSeries lg = series_log(f, 24);
        const ComplexSeries back = series_exp(lg, 24);
        for (int j = 0; j <= 7; ++j) REQUIRE(std::abs(back.coeff(j) - f.coeff(j)) < 1e-12);
    }

    SECTION("derivative of z^n is n z^(n-1)") {
        const ComplexSeries zn = series_shift(ComplexSeries{{cplx(1.0)}}, 6);
        const ComplexSeries d = series_derivative(zn);
        REQUIRE(std::abs(d.coeff(5) - cplx(6.0)) < 1e-15);
        REQUIRE(vanishing_order(d) == 5);
    }

    SECTION("stretch relocates coefficients to multiples of k") {
        const ComplexSeries s = series_stretch(a, 3);
        for (int j = 0; j <= 7; ++j) {
            REQUIRE(std::abs(s.coeff(3 * j) - a.coeff(j)) < 1e-15);
            if (j >= 1) {
                REQUIRE(std::abs(s.coeff(3 * j - 1)) == 0.0);
                REQUIRE(std::abs(s.coeff(3 * j - 2)) == 0.0);
            }
        }
    }

    SECTION("compose agrees with pointwise evaluation") {
        ComplexSeries inner = random_series(rng, 4, 0.2);
        inner.c[0] = cplx(0.0); // composition needs a vanishing inner constant term
        const ComplexSeries comp = series_compose(a, inner, 32);
        for (int i = 0; i < 10; ++i) {
            const cplx z = rng.in_disc(0.5);
            REQUIRE(std::abs(comp.eval(z) - a.eval(inner.eval(z))) < 1e-10);
        }
    }
}

TEST_CASE("fourier coefficients recover polynomial coefficients") {
    const int M = 256;

    SECTION("monomial z^2") {
        const auto g = sample_boundary([](cplx z) { return z * z; }, 1.0, M);
        const auto co = fourier_coefficients(g);
        REQUIRE(std::abs(co.at(2) - cplx(1.0)) < 1e-13);
        for (int q = -M / 2; q < M / 2; ++q) {
            if (q == 2) continue;
            REQUIRE(std::abs(co.at(q)) < 1e-13);
        }
    }

    SECTION("conjugate coordinate lands at frequency -1") {
        const auto g = sample_boundary([](cplx z) { return std::conj(z); }, 1.0, M);
        const auto co = fourier_coefficients(g);
        REQUIRE(std::abs(co.at(-1) - cplx(1.0)) < 1e-13);
        REQUIRE(std::abs(co.at(1)) < 1e-13);
    }

    SECTION("constant lands at frequency 0") {
        const auto g = sample_boundary([](cplx) { return cplx(3.0); }, 1.0, M);
        const auto co = fourier_coefficients(g);
        REQUIRE(std::abs(co.at(0) - cplx(3.0)) < 1e-13);
    }

    SECTION("random polynomials of degree <= M/4 round-trip to 1e-12") {
        Rng rng(7);
        for (int trial = 0; trial < 25; ++trial) {
            const int deg = 1 + static_cast<int>(rng.uniform_int(M / 4));
            const ComplexSeries p = random_series(rng, deg, 1.0);
            const auto g = sample_boundary([&](cplx z) { return p.eval(z); }, 1.0, M);
            const auto co = fourier_coefficients(g);
            for (int j = 0; j <= deg; ++j) REQUIRE(std::abs(co.at(j) - p.coeff(j)) < 1e-12);
        }
    }

    SECTION("sampling away from r = 1 rescales bins consistently") {
        const ComplexSeries p{{cplx(0.5), cplx(0.0, 1.0), cplx(-2.0)}};
        const auto g = sample_boundary([&](cplx z) { return p.eval(z); }, 0.9, M);
        const auto co = fourier_coefficients(g);
        for (int j = 0; j <= 2; ++j) REQUIRE(std::abs(co.at(j) - p.coeff(j)) < 1e-12);
    }

    SECTION("grid size must be a power of two") {
        REQUIRE_THROWS_AS(sample_boundary([](cplx z) { return z; }, 1.0, 100), InvalidParameter);
    }
}

TEST_CASE("blaschke factors are boundary isometries") {
    const std::vector<cplx> as = {cplx(0.3), cplx(-0.7, 0.2), cplx(0.0, 0.05), cplx(0.0)};
    const CVec ring = circle_points(1.0, 2048);
    for (const cplx a : as) {
        for (const cplx z : ring) REQUIRE(std::abs(std::abs(blaschke(a, z)) - 1.0) < 1e-12);
        REQUIRE(std::abs(blaschke(a, a)) < 1e-15); // root at the parameter
    }
}

TEST_CASE("analytic disc constructors expose jets and evaluators") {
    const ComplexSeries c1{{cplx(0.0), cplx(1.0), cplx(0.25)}};
    const ComplexSeries c2{{cplx(-1.0), cplx(0.0), cplx(0.5)}};
    const AnalyticDisc f = make_series_disc({c1, c2}, "probe");

    REQUIRE(f.n == 2);
    const CVec v0 = f.value0();
    REQUIRE(std::abs(v0[0]) == 0.0);
    REQUIRE(std::abs(v0[1] - cplx(-1.0)) == 0.0);

    const cplx z(0.3, -0.2);
    const CVec w = f(z);
    REQUIRE(std::abs(w[0] - c1.eval(z)) < 1e-15);
    REQUIRE(std::abs(w[1] - c2.eval(z)) < 1e-15);
}

TEST_CASE("compose_power stretches jets and multiplies the order") {
    Rng rng(5);
    ComplexSeries c = random_series(rng, 6, 0.3);
    c.c[0] = cplx(0.1, 0.0);
    AnalyticDisc f = make_series_disc({c});
    f.order = 1;

    const int k = 4;
    const AnalyticDisc g = compose_power(f, k);
    REQUIRE(g.order == k);
    REQUIRE(g.n == 1);

    SECTION("evaluator factors through z^k exactly") {
        for (int i = 0; i < 50; ++i) {
            const cplx z = rng.in_disc(0.95);
            REQUIRE(std::abs(g(z)[0] - f(pow_int(z, k))[0]) == 0.0);
        }
    }

    SECTION("jet at order k j equals base jet at order j, zero in between") {
        for (int j = 0; j <= 6; ++j) {
            REQUIRE(std::abs(g.jets[0].coeff(k * j) - c.coeff(j)) == 0.0);
            for (int off = 1; off < k && k * j + off <= 24; ++off)
                REQUIRE(std::abs(g.jets[0].coeff(k * j + off)) == 0.0);
        }
    }

    SECTION("first derivative transfers: g^(k)(0) = k! f'(0)") {
        const cplx fp = c.coeff(1);
        const cplx gk = kth_derivative_at_zero(g.jets[0], k);
        REQUIRE(std::abs(gk - factorial(k) * fp) < 1e-12);
    }

    SECTION("grid image of the composition sits inside the base image set") {
        const CVec zs = circle_points(0.9, 128);
        const CVec ref_pts = circle_points(std::pow(0.9, k), 4096);
        for (const cplx z : zs) {
            const cplx gz = g(z)[0];
            double best = 1e300;
            for (const cplx w : ref_pts) best = std::min(best, std::abs(gz - f(w)[0]));
            REQUIRE(best < 1e-4);
        }
    }

    SECTION("non-positive power is rejected") {
        REQUIRE_THROWS_AS(compose_power(f, 0), InvalidParameter);
    }
}

TEST_CASE("zero_free_root tracks the branch across the disc") {
    SECTION("q-th power returns the base function for 100 seeded samples") {
        for (int trial = 0; trial < 100; ++trial) {
            Rng rng = Rng::substream(42, static_cast<std::uint64_t>(trial));
            ComplexSeries p = random_series(rng, 8, 0.05);
            p.c[0] = cplx(0.0);
            // exp(poly) is zero-free on the closed disc
            const ComplexSeries rough = p;
            auto base = [rough](cplx z) { return std::exp(rough.eval(z)) * cplx(1.3, -0.4); };
            const int q = 2 + static_cast<int>(rng.uniform_int(3));
            const cplx anchor = std::pow(base(cplx(0.0)), 1.0 / q);
            HoloPower root = zero_free_root(base, q, anchor);
            double worst = 0.0;
            for (const cplx z : circle_points(0.999, 64))
                worst = std::max(worst, std::abs(pow_int(root(z), q) - base(z)));
            REQUIRE(worst < 1e-10);
        }
    }

    SECTION("anchor with the wrong power is rejected") {
        auto base = [](cplx z) { return cplx(4.0) + z; };
        REQUIRE_THROWS_AS(zero_free_root(base, 2, cplx(1.0)), AnchorError);
    }

    SECTION("base vanishing at 0 is rejected") {
        auto base = [](cplx z) { return z; };
        REQUIRE_THROWS_AS(zero_free_root(base, 2, cplx(0.0)), BranchError);
    }

    SECTION("zero crossing along the evaluation path is detected") {
        auto base = [](cplx z) { return z - cplx(0.5); };
        HoloPower root = zero_free_root(base, 2, std::sqrt(cplx(-0.5)));
        REQUIRE_THROWS_AS(root(cplx(0.9)), BranchError);
        // paths that avoid the zero still evaluate
        REQUIRE(std::abs(pow_int(root(cplx(0.0, 0.9)), 2) - base(cplx(0.0, 0.9))) < 1e-10);
    }

    SECTION("fractional powers compose multiplicatively") {
        auto base = [](cplx z) { return cplx(2.0) + 0.5 * z; };
        HoloPower h = holomorphic_power(base, 1.5, std::pow(cplx(2.0), 1.5));
        const cplx z(0.4, 0.3);
        REQUIRE(std::abs(h(z) - std::pow(base(z), 1.5)) < 1e-10);
    }
}

TEST_CASE("winding_number counts loop turns around 0") {
    const CVec one = circle_points(1.0, 64);
    REQUIRE(winding_number(one) == 1);

    CVec two(one.size());
    for (size_t j = 0; j < one.size(); ++j) two[j] = one[j] * one[j];
    REQUIRE(winding_number(two) == 2);

    const CVec flat(64, cplx(2.0, 1.0));
    REQUIRE(winding_number(flat) == 0);

    CVec bad = one;
    bad[3] = cplx(0.0);
    REQUIRE_THROWS_AS(winding_number(bad), BranchError);
}

TEST_CASE("cauchy_taylor reproduces analytic jets") {
    SECTION("exponential at the origin") {
        const auto co = cauchy_taylor([](cplx z) { return std::exp(z); }, cplx(0.0), 12, 0.5, 256);
        for (int j = 0; j <= 12; ++j)
            REQUIRE(std::abs(co[static_cast<size_t>(j)] - cplx(1.0 / factorial(j))) < 1e-12);
    }

    SECTION("shifted center") {
        const cplx z0(0.2, -0.1);
        const auto co =
            cauchy_taylor([](cplx z) { return z * z * z; }, z0, 4, 0.3, 256);
        REQUIRE(std::abs(co[0] - z0 * z0 * z0) < 1e-12);
        REQUIRE(std::abs(co[1] - 3.0 * z0 * z0) < 1e-12);
        REQUIRE(std::abs(co[3] - cplx(1.0)) < 1e-12);
        REQUIRE(std::abs(co[4]) < 1e-12);
    }
}
