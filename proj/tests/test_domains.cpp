#include <catch2/catch_amalgamated.hpp>

#include "koblab/catalog.hpp"
#include "koblab/domains.hpp"
#include "koblab/metrics.hpp"
#include "koblab/rng.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace koblab;

namespace {

AnalyticDisc ray_disc(cplx slope) {
    return make_series_disc({ComplexSeries{{cplx(0.0), slope}}}, "ray");
}

AnalyticDisc affine_disc(cplx c0, cplx c1) {
    return make_series_disc({ComplexSeries{{c0, c1}}}, "affine");
}

// Wirtinger gradient reconstructed from central differences in the 2n real
// coordinates: g_j = (d rho/dx_j - i d rho/dy_j) / 2.
CVec fd_gradient(const ModelDomain& d, const CVec& z, double h) {
    CVec g(z.size());
    for (size_t j = 0; j < z.size(); ++j) {
        CVec zp = z, zm = z;
        zp[j] += h;
        zm[j] -= h;
        const double dx = (rho(d, zp) - rho(d, zm)) / (2.0 * h);
        zp = z;
        zm = z;
        zp[j] += cplx(0.0, h);
        zm[j] -= cplx(0.0, h);
        const double dy = (rho(d, zp) - rho(d, zm)) / (2.0 * h);
        g[j] = cplx(dx / 2.0, -dy / 2.0);
    }
    return g;
}

void check_gradient_at(const ModelDomain& d, const CVec& z) {
    const CVec g = grad_rho(d, z);
    const CVec fd = fd_gradient(d, z, 1e-5);
    double scale = 1e-3; // absolute floor keeps the relative test meaningful near critical points
    for (const cplx& v : g) scale = std::max(scale, std::abs(v));
    for (size_t j = 0; j < g.size(); ++j) REQUIRE(std::abs(g[j] - fd[j]) < 1e-6 * scale);
}

} // namespace

TEST_CASE("defining functions take their pinned values") {
    const ModelDomain yu = ModelDomain::yu_domain();
    REQUIRE(rho(yu, {cplx(0.0), cplx(0.0), cplx(-1.0)}) == -1.0);
    REQUIRE(rho(yu, {cplx(1.0), cplx(1.0), cplx(0.0)}) == 0.0);

    const ModelDomain el = ModelDomain::ellipsoid(0.35);
    REQUIRE(rho(el, {cplx(0.0), cplx(0.0)}) == -1.0);
    REQUIRE(std::abs(rho(el, {cplx(0.6), cplx(0.0)}) - (-0.64)) < 1e-15);

    REQUIRE(rho(ModelDomain::unit_disc(), {cplx(0.0, 0.5)}) == -0.75);
    REQUIRE(rho(ModelDomain::half_plane(), {cplx(3.0, 2.0)}) == -2.0);
    REQUIRE(rho(ModelDomain::polydisc(2), {cplx(0.5), cplx(0.0, 0.9)}) == Catch::Approx(-0.19));

    REQUIRE_THROWS_AS(rho(yu, {cplx(0.0)}), DimensionMismatch);
}

TEST_CASE("domain factories and identifiers") {
    REQUIRE(ModelDomain::yu_domain().n == 3);
    REQUIRE(ModelDomain::ellipsoid(0.3).nonconvex);
    REQUIRE_FALSE(ModelDomain::ellipsoid(0.6).nonconvex);
    REQUIRE_THROWS_AS(ModelDomain::ellipsoid(1.5), InvalidParameter);
    REQUIRE_THROWS_AS(ModelDomain::ellipsoid(0.0), InvalidParameter);

    for (const char* id : {"unit_disc", "punctured_disc", "polydisc", "yu_domain", "half_plane"})
        REQUIRE(ModelDomain::parse(id).id() == id);
    REQUIRE(ModelDomain::parse("ellipsoid:0.35").m == 0.35);
    REQUIRE_THROWS_AS(ModelDomain::parse("banana"), UsageError);
}

TEST_CASE("complex gradients match the coded formulas") {
    const ModelDomain yu = ModelDomain::yu_domain();
    const CVec g0 = grad_rho(yu, {cplx(0.0), cplx(0.0), cplx(-1.0)});
    REQUIRE(std::abs(g0[0]) == 0.0);
    REQUIRE(std::abs(g0[1]) == 0.0);
    REQUIRE(g0[2] == cplx(0.5));

    const ModelDomain el = ModelDomain::ellipsoid(1.0 / 3.0);
    const cplx a1(0.4, 0.1), a2(0.5, -0.2);
    const CVec ge = grad_rho(el, {a1, a2});
    REQUIRE(std::abs(ge[0] - std::conj(a1)) < 1e-15);
    const double expected = std::pow(std::abs(a2), 2.0 / 3.0 - 2.0) / 3.0;
    REQUIRE(std::abs(ge[1] - expected * std::conj(a2)) < 1e-15);

    REQUIRE(grad_rho(ModelDomain::half_plane(), {cplx(1.0, 1.0)})[0] == cplx(0.0, 0.5));
}

TEST_CASE("gradients agree with central finite differences") {
    Rng rng(99);

    SECTION("unit and punctured disc") {
        for (const auto tag : {ModelDomain::unit_disc(), ModelDomain::punctured_disc()}) {
            for (int i = 0; i < 100; ++i) {
                cplx z = rng.in_disc(0.9);
                if (std::abs(z) < 0.05) z += cplx(0.3);
                check_gradient_at(tag, {z});
            }
        }
    }

    SECTION("polydisc away from corners") {
        const ModelDomain d = ModelDomain::polydisc(2);
        for (int i = 0; i < 100; ++i) {
            cplx z1 = rng.in_disc(0.9);
            cplx z2 = rng.in_disc(0.9);
            if (std::abs(std::abs(z1) - std::abs(z2)) < 0.05) z1 *= 2.0; // keep the max unique
            check_gradient_at(d, {z1, z2});
        }
    }

    SECTION("yu domain") {
        const ModelDomain d = ModelDomain::yu_domain();
        for (int i = 0; i < 100; ++i)
            check_gradient_at(d, {rng.in_disc(1.2), rng.in_disc(1.2), rng.in_disc(2.0)});
    }

    SECTION("ellipsoids away from the z2 axis") {
        for (const double m : {0.25, 0.5, 0.75}) {
            const ModelDomain d = ModelDomain::ellipsoid(m);
            for (int i = 0; i < 100; ++i) {
                cplx z2 = rng.in_disc(0.9);
                if (std::abs(z2) < 0.1) z2 += cplx(0.4);
                check_gradient_at(d, {rng.in_disc(0.9), z2});
            }
        }
    }

    SECTION("half plane") {
        const ModelDomain d = ModelDomain::half_plane();
        for (int i = 0; i < 100; ++i)
            check_gradient_at(d, {cplx(rng.uniform(-2.0, 2.0), rng.uniform(0.1, 2.0))});
    }
}

TEST_CASE("gradient singularities are reported, not regularized") {
    REQUIRE_THROWS_AS(grad_rho(ModelDomain::ellipsoid(0.35), {cplx(0.5), cplx(0.0)}),
                      SingularityError);
    REQUIRE_THROWS_AS(grad_rho(ModelDomain::polydisc(2), {cplx(0.5), cplx(0.0, 0.5)}),
                      SingularityError);
}

TEST_CASE("contains_disc classifies model discs") {
    const ModelDomain ud = ModelDomain::unit_disc();

    SECTION("half-radius ray is contained with max_rho near -0.75") {
        const ContainmentReport rep = contains_disc(ud, ray_disc(cplx(0.5)));
        REQUIRE(rep.verdict == Verdict::Contained);
        REQUIRE(rep.max_rho == Catch::Approx(-0.75).margin(2e-3));
        REQUIRE(rep.boundary_extrapolation == Catch::Approx(-0.75).margin(1e-9));
        REQUIRE(rep.interior_ok());
    }

    SECTION("identity ray is attached") {
        const ContainmentReport rep = contains_disc(ud, ray_disc(cplx(1.0)));
        REQUIRE(rep.verdict == Verdict::Attached);
        REQUIRE(std::abs(rep.boundary_extrapolation) < 1e-12);
        REQUIRE(rep.interior_ok());
    }

    SECTION("overshooting ray is violated on the lattice") {
        const ContainmentReport rep = contains_disc(ud, ray_disc(cplx(1.1)));
        REQUIRE(rep.verdict == Verdict::Violated);
        REQUIRE(rep.max_rho > 0.0);
        REQUIRE_FALSE(rep.interior_ok());
    }

    SECTION("ray exiting between the outer radius and the boundary is violated") {
        // All lattice values are interior, but the extrapolated boundary
        // trend is positive; accepting such a disc once produced an upper
        // bound below the true metric value.
        const ContainmentReport rep = contains_disc(ud, ray_disc(cplx(1.0005)));
        REQUIRE(rep.max_rho < -1e-9);
        REQUIRE(rep.boundary_extrapolation > 1e-4);
        REQUIRE(rep.verdict == Verdict::Violated);
        REQUIRE_FALSE(rep.interior_ok());
    }
}

TEST_CASE("punctured-disc containment tracks the excluded point") {
    const ModelDomain pd = ModelDomain::punctured_disc();

    SECTION("zero-free affine disc is contained") {
        const ContainmentReport rep = contains_disc(pd, affine_disc(cplx(0.3), cplx(0.1)));
        REQUIRE(rep.verdict == Verdict::Contained);
        REQUIRE(rep.winding == 0);
        REQUIRE(rep.min_modulus > 0.19);
    }

    SECTION("disc looping once around the puncture is rejected") {
        const ContainmentReport rep = contains_disc(pd, ray_disc(cplx(0.5)));
        REQUIRE(rep.winding == 1);
        REQUIRE(rep.verdict == Verdict::Violated);
    }

    SECTION("disc looping twice around the puncture is rejected") {
        const AnalyticDisc f =
            make_series_disc({ComplexSeries{{cplx(0.02), cplx(0.0), cplx(0.25)}}});
        const ContainmentReport rep = contains_disc(pd, f);
        REQUIRE(rep.winding == 2);
        REQUIRE(rep.verdict == Verdict::Violated);
    }

    SECTION("modulus floor is enforced") {
        GridConfig cfg;
        cfg.floor = 1e-2;
        const ContainmentReport rep = contains_disc(pd, affine_disc(cplx(0.005), cplx(0.001)), cfg);
        REQUIRE(rep.verdict == Verdict::Violated);
    }
}

TEST_CASE("strip witnesses keep winding zero on every grid size") {
    // The boundary trace of these discs sweeps long argument arcs; coarse
    // endpoint-only subdivision once reported spurious windings up to 12.
    const ModelDomain pd = ModelDomain::punctured_disc();
    for (const double p : {0.2, std::exp(-1.0), 0.7}) {
        for (const int k : {1, 2, 3}) {
            const JetTarget t{{cplx(p)}, {cplx(1.0)}, k};
            const WitnessCandidate w = punctured_strip_witness(t, 1e-9);
            for (const int M : {256, 1024, 4096}) {
                GridConfig cfg;
                cfg.M = M;
                const ContainmentReport rep = contains_disc(pd, w.disc, cfg);
                REQUIRE(rep.winding == 0);
                REQUIRE(rep.verdict != Verdict::Violated);
            }
        }
    }
}

TEST_CASE("yu-domain radius maxima grow toward the boundary") {
    const ModelDomain yu = ModelDomain::yu_domain();
    Rng rng(3);
    std::vector<AnalyticDisc> discs;
    discs.push_back(yu_simple_disc().disc);
    discs.push_back(yu_parametric_disc(yu_optimal_params()).disc);
    for (int i = 0; i < 10; ++i) {
        std::vector<ComplexSeries> comps;
        for (int c = 0; c < 3; ++c) {
            std::vector<cplx> coef(7);
            for (auto& v : coef) v = 0.4 * rng.in_disc(1.0);
            comps.push_back(ComplexSeries{coef});
        }
        discs.push_back(make_series_disc(std::move(comps)));
    }
    for (const AnalyticDisc& f : discs) {
        const ContainmentReport rep = contains_disc(yu, f);
        REQUIRE(rep.per_radius_max.size() == 3);
        REQUIRE(rep.per_radius_max[0] <= rep.per_radius_max[2] + 1e-12);
    }
}

TEST_CASE("catalog verdicts are stable under grid refinement") {
    struct Case {
        ModelDomain d;
        AnalyticDisc f;
    };
    Rng rng(17);
    std::vector<Case> cases;
    cases.push_back({ModelDomain::yu_domain(), yu_simple_disc().disc});
    cases.push_back({ModelDomain::yu_domain(), yu_parametric_disc(yu_optimal_params()).disc});
    cases.push_back({ModelDomain::yu_domain(), exact_kobayashi_disc(ExactKobayashiParams{}).disc});
    const EllipsoidKind1Params prm = sample_kind1(rng, 0.35);
    cases.push_back({ModelDomain::ellipsoid(0.35), ellipsoid_kind1(prm)});

    for (const Case& c : cases) {
        GridConfig coarse;
        coarse.M = 2048;
        GridConfig fine;
        fine.M = 4096;
        const Verdict a = contains_disc(c.d, c.f, coarse).verdict;
        const Verdict b = contains_disc(c.d, c.f, fine).verdict;
        REQUIRE(a == b);
        REQUIRE(a != Verdict::Violated);
    }
}

TEST_CASE("boundary extrapolation is exact on polynomial ladders") {
    const std::vector<double> radii = {0.9, 0.99, 0.999};
    std::vector<double> maxima;
    for (const double r : radii) {
        const double x = 1.0 - r;
        maxima.push_back(2.0 * x * x + 3.0 * x - 0.5);
    }
    REQUIRE(extrapolate_to_boundary(radii, maxima) == Catch::Approx(-0.5).margin(1e-12));
}
