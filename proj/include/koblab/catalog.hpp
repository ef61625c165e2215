#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>
#include <cmath>

#include "domains.hpp"
#include "holo.hpp"
#include "rng.hpp"

namespace koblab {

inline constexpr int kJetDegree = kSeriesDegreeDefault;

inline ComplexSeries blaschke_series(cplx a, int deg = kJetDegree) {
    return series_truncate(series_mul(ComplexSeries({-a, 1.0}), geom_series(std::conj(a), deg)), deg);
}

// --- exponential discs in the pseudoconvex model domain ------------------------
//
// Family (z^4 (1 + z phi), z^3 h2, -1) with phi = alpha (e^{beta z} - 1)/z and
// h2^3 = phi (2 + z phi). The defining function evaluates to |z|^16 - 1 along
// the disc because (1 + z phi)^2 - z phi (2 + z phi) = 1 identically.

struct YuDiscParams {
    double alpha = 1.0;
    double beta = 1.0;
};

struct YuDisc {
    AnalyticDisc disc;
    double r = 0.0; // third-derivative coefficient: f'''(0) = 6 r (0,1,0)
};

inline void validate_yu_params(const YuDiscParams& p) {
    if (!(p.alpha > 0.0) || !(p.beta > 0.0))
        throw InvalidParameter("yu disc: alpha and beta must be positive");
    if (p.beta > 2.0 * kPi + 1e-12)
        throw InvalidParameter("yu disc: beta must not exceed 2*pi");
    // Zero-freeness of the cube-root radicand on the open disc: the equation
    // 2 + z phi = 0 reads e^{beta z} = (alpha-2)/alpha, whose solutions must
    // stay outside |z| < 1.
    if (p.alpha > 2.0) {
        if (std::log((p.alpha - 2.0) / p.alpha) > -p.beta + 1e-12)
            throw InvalidParameter("yu disc: log((alpha-2)/alpha) <= -beta required");
    } else if (p.alpha < 2.0) {
        const double L = std::log((2.0 - p.alpha) / p.alpha);
        if (L * L + kPi * kPi < p.beta * p.beta - 1e-9)
            throw InvalidParameter("yu disc: radicand vanishes inside the disc for these parameters");
    }
}

inline YuDisc yu_parametric_disc(const YuDiscParams& p, std::string name = "") {
    validate_yu_params(p);
    const double alpha = p.alpha, beta = p.beta;
    const double r = std::cbrt(2.0 * alpha * beta);

    std::vector<cplx> pc(kJetDegree + 1);
    for (int j = 0; j <= kJetDegree; ++j) pc[j] = alpha * std::pow(beta, j + 1) / factorial(j + 1);
    const ComplexSeries phi(pc);
    const ComplexSeries zphi = series_shift(phi, 1);
    const ComplexSeries radicand =
        series_truncate(series_mul(phi, series_add(ComplexSeries({2.0}), zphi)), kJetDegree);
    const ComplexSeries h2 = series_pow_anchored(radicand, 1.0 / 3.0, r, kJetDegree);

    std::vector<ComplexSeries> jets(3);
    jets[0] = series_shift(series_add(ComplexSeries({1.0}), zphi), 4);
    jets[1] = series_shift(h2, 3);
    jets[2] = ComplexSeries({-1.0});

    auto phi_eval = [alpha, beta](cplx z) -> cplx {
        if (std::abs(z) < 1e-8) return alpha * beta * (1.0 + beta * z / 2.0);
        return alpha * (std::exp(beta * z) - 1.0) / z;
    };
    auto radicand_eval = [phi_eval](cplx z) -> cplx {
        const cplx ph = phi_eval(z);
        return ph * (2.0 + z * ph);
    };
    const HoloPower h2_eval = zero_free_root(radicand_eval, 3, r);

    AnalyticDisc d;
    d.n = 3;
    d.order = 3;
    d.jets = std::move(jets);
    if (name.empty()) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "yu-param:%.17g,%.17g", alpha, beta);
        name = buf;
    }
    d.name = std::move(name);
    d.eval = [phi_eval, h2_eval](cplx z) -> CVec {
        const cplx z2 = z * z;
        const cplx z3 = z2 * z;
        return {z3 * z * (1.0 + z * phi_eval(z)), z3 * h2_eval(z), cplx(-1.0)};
    };
    return {std::move(d), r};
}

inline YuDiscParams yu_optimal_params() {
    return {2.0 / (1.0 - std::exp(-2.0 * kPi)), 2.0 * kPi};
}

inline YuDisc yu_simple_disc() { return yu_parametric_disc({1.0, 1.0}, "yu-simple"); }

// --- first-order disc with an exactly known metric value -----------------------
//
// f = (z (A + z phi), z h2, -t) with A = a t^{1/4}/|a|, phi = (e^{c z} - 1)/z,
// c = b^3 sqrt(t) / (2 a |a|^2), h2^3 = phi (2A + z phi). The square/cube terms
// collapse to f1^2 - f2^3 = A^2 z^2, so rho(f) = -t + t |z|^4 on the nose.

struct ExactKobayashiParams {
    double t = 0.5;
    cplx a{1.0};
    cplx b{0.0};
};

struct ExactKobayashiDisc {
    AnalyticDisc disc;
    double value = 0.0;
};

inline double exact_kobayashi_ratio_cap(double t) {
    return (2.0 / std::sqrt(t)) * std::min(2.0 * kPi, std::log1p(2.0 * std::pow(t, 0.25)));
}

inline void validate_exact_kobayashi_params(const ExactKobayashiParams& p) {
    if (!(p.t > 0.0 && p.t < 1.0)) throw InvalidParameter("exact disc: t must lie in (0,1)");
    if (std::abs(std::norm(p.a) + std::norm(p.b) - 1.0) > 1e-9)
        throw InvalidParameter("exact disc: |a|^2 + |b|^2 = 1 required");
    if (std::abs(p.a) < 1e-12) throw InvalidParameter("exact disc: a must be nonzero");
    const double ratio = std::pow(std::abs(p.b) / std::abs(p.a), 3.0);
    if (ratio > exact_kobayashi_ratio_cap(p.t) + 1e-12)
        throw InfeasibleParameters("exact disc: |b|^3/|a|^3 exceeds the feasibility cap");
}

inline ExactKobayashiDisc exact_kobayashi_disc(const ExactKobayashiParams& p) {
    validate_exact_kobayashi_params(p);
    const double t = p.t;
    const double t14 = std::pow(t, 0.25);
    const cplx A = p.a * t14 / std::abs(p.a);
    const cplx c = p.b * p.b * p.b * std::sqrt(t) / (2.0 * p.a * std::norm(p.a));
    const double value = std::abs(p.a) / t14;

    std::vector<ComplexSeries> jets(3);
    jets[2] = ComplexSeries({cplx(-t)});
    AnalyticDisc d;
    d.n = 3;
    d.order = 1;
    d.name = "exact-kob";

    if (std::abs(p.b) < 1e-14) {
        jets[0] = ComplexSeries({0.0, A});
        jets[1] = ComplexSeries({0.0});
        d.jets = std::move(jets);
        d.eval = [A, t](cplx z) -> CVec { return {A * z, cplx(0.0), cplx(-t)}; };
        return {std::move(d), value};
    }

    std::vector<cplx> pc(kJetDegree + 1);
    cplx cp = c;
    for (int j = 0; j <= kJetDegree; ++j) {
        pc[j] = cp / factorial(j + 1);
        cp *= c;
    }
    const ComplexSeries phi(pc);
    const ComplexSeries radicand = series_truncate(
        series_mul(phi, series_add(ComplexSeries({2.0 * A}), series_shift(phi, 1))), kJetDegree);
    const cplx anchor = p.b * t14 / std::abs(p.a);
    const ComplexSeries h2 = series_pow_anchored(radicand, 1.0 / 3.0, anchor, kJetDegree);

    jets[0] = series_add(ComplexSeries({0.0, A}), series_shift(phi, 2));
    jets[1] = series_shift(h2, 1);
    d.jets = std::move(jets);

    auto phi_eval = [c](cplx z) -> cplx {
        if (std::abs(z) < 1e-8) return c * (1.0 + c * z / 2.0);
        return (std::exp(c * z) - 1.0) / z;
    };
    auto radicand_eval = [phi_eval, A](cplx z) -> cplx {
        const cplx ph = phi_eval(z);
        return ph * (2.0 * A + z * ph);
    };
    const HoloPower h2_eval = zero_free_root(radicand_eval, 3, anchor);
    d.eval = [phi_eval, h2_eval, A, t](cplx z) -> CVec {
        return {z * (A + z * phi_eval(z)), z * h2_eval(z), cplx(-t)};
    };
    return {std::move(d), value};
}

// --- odd-order lift -------------------------------------------------------------
//
// g = (z^3 f1, z^2 f2, f3) raises a disc with k-th jet along (0,1,0) from
// order 2n-1 to order 2n+1 with the same jet coefficient, and strictly
// decreases the defining function off 0.
inline AnalyticDisc odd_order_lift(const AnalyticDisc& f) {
    if (f.n != 3) throw DimensionMismatch("odd_order_lift: expects a 3-component disc");
    AnalyticDisc g;
    g.n = 3;
    g.order = f.order + 2;
    g.name = f.name + "+odd-lift";
    g.jets = {series_shift(f.jets[0], 3), series_shift(f.jets[1], 2), f.jets[2]};
    auto base = f.eval;
    g.eval = [base](cplx z) -> CVec {
        CVec v = base(z);
        const cplx z2 = z * z;
        return {z2 * z * v[0], z2 * v[1], v[2]};
    };
    return g;
}

// --- complex ellipsoid extremal families ----------------------------------------

struct EllipsoidKind1Params {
    cplx a1{1.0}, a2{1.0};
    cplx alpha0{0.0}, alpha1{0.0}, alpha2{0.0};
    int r1 = 0, r2 = 0;
    double m = 0.5;
};

inline void validate_kind1(const EllipsoidKind1Params& p) {
    if (!(p.m > 0.0 && p.m < 1.0)) throw InvalidParameter("kind1: m must lie in (0,1)");
    if (std::abs(p.a1) < 1e-14 || std::abs(p.a2) < 1e-14)
        throw InvalidParameter("kind1: a1, a2 must be nonzero");
    if ((p.r1 != 0 && p.r1 != 1) || (p.r2 != 0 && p.r2 != 1))
        throw InvalidParameter("kind1: r flags must be 0 or 1");
    if (std::abs(p.alpha0) >= 1.0) throw InvalidParameter("kind1: alpha0 must lie in the open disc");
    if (std::abs(p.alpha1) > 1.0 || std::abs(p.alpha2) > 1.0)
        throw InvalidParameter("kind1: alpha1, alpha2 must lie in the closed disc");
    if ((p.r1 == 1 && std::abs(p.alpha1) >= 1.0) || (p.r2 == 1 && std::abs(p.alpha2) >= 1.0))
        throw InvalidParameter("kind1: Blaschke centers must lie in the open disc");
    const double w1 = std::norm(p.a1);
    const double w2 = std::pow(std::abs(p.a2), 2.0 * p.m);
    const cplx e1 = w1 * p.alpha1 + w2 * p.alpha2 - p.alpha0;
    const double e2 = w1 * (1.0 + std::norm(p.alpha1)) + w2 * (1.0 + std::norm(p.alpha2)) -
                      (1.0 + std::norm(p.alpha0));
    if (std::abs(e1) > 1e-10 * (1.0 + std::abs(p.alpha0)))
        throw InvalidParameter("kind1: center constraint alpha0 = w1 alpha1 + w2 alpha2 violated");
    if (std::abs(e2) > 1e-10 * (1.0 + std::norm(p.alpha0)))
        throw InvalidParameter("kind1: norm constraint 1+|alpha0|^2 = sum w_j (1+|alpha_j|^2) violated");
}

inline AnalyticDisc ellipsoid_kind1(const EllipsoidKind1Params& p) {
    validate_kind1(p);
    const double inv_m = 1.0 / p.m;

    ComplexSeries s1({p.a1});
    if (p.r1) s1 = series_truncate(series_mul(s1, blaschke_series(p.alpha1)), kJetDegree);
    s1 = series_truncate(series_mul(s1, ComplexSeries({1.0, -std::conj(p.alpha1)})), kJetDegree);
    s1 = series_truncate(series_mul(s1, geom_series(std::conj(p.alpha0))), kJetDegree);

    const ComplexSeries L =
        series_sub(log_one_minus(std::conj(p.alpha2)), log_one_minus(std::conj(p.alpha0)));
    ComplexSeries s2 = series_scale(series_exp(series_scale(L, inv_m), kJetDegree), p.a2);
    if (p.r2) s2 = series_truncate(series_mul(s2, blaschke_series(p.alpha2)), kJetDegree);

    AnalyticDisc d;
    d.n = 2;
    d.order = 1;
    d.name = "ellipsoid-k1";
    d.jets = {std::move(s1), std::move(s2)};
    const EllipsoidKind1Params q = p;
    d.eval = [q, inv_m](cplx z) -> CVec {
        const cplx d0 = 1.0 - std::conj(q.alpha0) * z;
        cplx f1 = q.a1 * (1.0 - std::conj(q.alpha1) * z) / d0;
        if (q.r1) f1 *= blaschke(q.alpha1, z);
        cplx f2 = q.a2 * std::exp(inv_m * (std::log(1.0 - std::conj(q.alpha2) * z) - std::log(d0)));
        if (q.r2) f2 *= blaschke(q.alpha2, z);
        return {f1, f2};
    };
    return d;
}

struct EllipsoidKind2Params {
    cplx a1{1.0}, a2{1.0};
    std::vector<cplx> alpha0, alpha1, alpha2; // factor centers, one per l = 1..k
    std::vector<int> r1, r2;
    int k = 1;
    double m = 0.5;
};

// prod_l (z - a_l) as exact polynomial coefficients.
inline ComplexSeries monic_from_roots(const std::vector<cplx>& roots) {
    ComplexSeries acc({1.0});
    for (cplx a : roots) acc = series_mul(acc, ComplexSeries({-a, 1.0}));
    return acc;
}

// prod_l (1 - conj(a_l) z).
inline ComplexSeries cofactor_from_roots(const std::vector<cplx>& roots) {
    ComplexSeries acc({1.0});
    for (cplx a : roots) acc = series_mul(acc, ComplexSeries({1.0, -std::conj(a)}));
    return acc;
}

inline double kind2_identity_residual(const EllipsoidKind2Params& p) {
    const double w1 = std::norm(p.a1);
    const double w2 = std::pow(std::abs(p.a2), 2.0 * p.m);
    const ComplexSeries lhs = series_add(
        series_scale(series_mul(monic_from_roots(p.alpha1), cofactor_from_roots(p.alpha1)), w1),
        series_scale(series_mul(monic_from_roots(p.alpha2), cofactor_from_roots(p.alpha2)), w2));
    const ComplexSeries rhs =
        series_mul(monic_from_roots(p.alpha0), cofactor_from_roots(p.alpha0));
    double scale = 1.0, resid = 0.0;
    for (int j = 0; j <= std::max(lhs.degree(), rhs.degree()); ++j) {
        scale = std::max(scale, std::abs(rhs.coeff(j)));
        resid = std::max(resid, std::abs(lhs.coeff(j) - rhs.coeff(j)));
    }
    return resid / scale;
}

inline void validate_kind2(const EllipsoidKind2Params& p) {
    if (!(p.m > 0.0 && p.m < 1.0)) throw InvalidParameter("kind2: m must lie in (0,1)");
    if (p.k < 1) throw InvalidParameter("kind2: k must be positive");
    const size_t k = static_cast<size_t>(p.k);
    if (p.alpha0.size() != k || p.alpha1.size() != k || p.alpha2.size() != k ||
        p.r1.size() != k || p.r2.size() != k)
        throw InvalidParameter("kind2: parameter vectors must have length k");
    if (std::abs(p.a1) < 1e-14 || std::abs(p.a2) < 1e-14)
        throw InvalidParameter("kind2: a1, a2 must be nonzero");
    for (size_t l = 0; l < k; ++l) {
        if (std::abs(p.alpha0[l]) >= 1.0)
            throw InvalidParameter("kind2: denominator centers must lie in the open disc");
        if (std::abs(p.alpha1[l]) > 1.0 || std::abs(p.alpha2[l]) > 1.0)
            throw InvalidParameter("kind2: centers must lie in the closed disc");
        if ((p.r1[l] == 1 && std::abs(p.alpha1[l]) >= 1.0) ||
            (p.r2[l] == 1 && std::abs(p.alpha2[l]) >= 1.0))
            throw InvalidParameter("kind2: Blaschke centers must lie in the open disc");
    }
    if (kind2_identity_residual(p) > 1e-10)
        throw InvalidParameter("kind2: polynomial attachment identity violated");
}

inline AnalyticDisc ellipsoid_kind2(const EllipsoidKind2Params& p) {
    validate_kind2(p);
    const double inv_m = 1.0 / p.m;

    ComplexSeries s1({p.a1});
    for (int l = 0; l < p.k; ++l) {
        if (p.r1[l]) s1 = series_truncate(series_mul(s1, blaschke_series(p.alpha1[l])), kJetDegree);
        s1 = series_truncate(series_mul(s1, ComplexSeries({1.0, -std::conj(p.alpha1[l])})), kJetDegree);
        s1 = series_truncate(series_mul(s1, geom_series(std::conj(p.alpha0[l]))), kJetDegree);
    }
    ComplexSeries L;
    for (int l = 0; l < p.k; ++l)
        L = series_add(L, series_sub(log_one_minus(std::conj(p.alpha2[l])),
                                     log_one_minus(std::conj(p.alpha0[l]))));
    ComplexSeries s2 = series_scale(series_exp(series_scale(L, inv_m), kJetDegree), p.a2);
    for (int l = 0; l < p.k; ++l)
        if (p.r2[l]) s2 = series_truncate(series_mul(s2, blaschke_series(p.alpha2[l])), kJetDegree);

    AnalyticDisc d;
    d.n = 2;
    d.order = 1;
    d.name = "ellipsoid-k2";
    d.jets = {std::move(s1), std::move(s2)};
    const EllipsoidKind2Params q = p;
    d.eval = [q, inv_m](cplx z) -> CVec {
        cplx f1 = q.a1;
        cplx lg(0.0);
        for (int l = 0; l < q.k; ++l) {
            f1 *= (1.0 - std::conj(q.alpha1[l]) * z) / (1.0 - std::conj(q.alpha0[l]) * z);
            if (q.r1[l]) f1 *= blaschke(q.alpha1[l], z);
            lg += std::log(1.0 - std::conj(q.alpha2[l]) * z) - std::log(1.0 - std::conj(q.alpha0[l]) * z);
        }
        cplx f2 = q.a2 * std::exp(inv_m * lg);
        for (int l = 0; l < q.k; ++l)
            if (q.r2[l]) f2 *= blaschke(q.alpha2[l], z);
        return {f1, f2};
    };
    return d;
}

// k-th roots ordered by principal argument.
inline std::vector<cplx> kth_roots(cplx a, int k) {
    std::vector<cplx> out;
    out.reserve(static_cast<size_t>(k));
    if (std::abs(a) < 1e-300) {
        out.assign(static_cast<size_t>(k), cplx(0.0));
        return out;
    }
    const double mag = std::pow(std::abs(a), 1.0 / k);
    const double base = std::arg(a);
    for (int l = 0; l < k; ++l) {
        const double t = (base + 2.0 * kPi * l) / k;
        out.push_back(cplx(mag * std::cos(t), mag * std::sin(t)));
    }
    std::sort(out.begin(), out.end(), [](cplx x, cplx y) { return std::arg(x) < std::arg(y); });
    return out;
}

inline EllipsoidKind2Params lift_kind1(const EllipsoidKind1Params& p, int k) {
    validate_kind1(p);
    if (k < 1) throw InvalidParameter("lift_kind1: k must be positive");
    EllipsoidKind2Params q;
    q.a1 = p.a1;
    q.a2 = p.a2;
    q.k = k;
    q.m = p.m;
    q.alpha0 = kth_roots(p.alpha0, k);
    q.alpha1 = kth_roots(p.alpha1, k);
    q.alpha2 = kth_roots(p.alpha2, k);
    q.r1.assign(static_cast<size_t>(k), p.r1);
    q.r2.assign(static_cast<size_t>(k), p.r2);
    return q;
}

// --- ellipsoid automorphism ------------------------------------------------------

inline CVec ellipsoid_automorphism(cplx a, double theta, double m, const CVec& z) {
    if (std::abs(a) >= 1.0) throw InvalidParameter("automorphism: |a| must be < 1");
    if (z.size() != 2) throw DimensionMismatch("automorphism: expects a point in C^2");
    const cplx den = 1.0 - std::conj(a) * z[0];
    if (std::abs(den) < 1e-14) throw PoleError("automorphism: pole at z1 = 1/conj(a)");
    const cplx phase(std::cos(theta), std::sin(theta));
    const cplx f1 = (z[0] - a) / den;
    const cplx f2 =
        phase * std::pow(1.0 - std::norm(a), 1.0 / (2.0 * m)) * z[1] * std::exp(-std::log(den) / m);
    return {f1, f2};
}

// Rows of the complex Jacobian dF at z.
inline std::array<CVec, 2> ellipsoid_automorphism_jacobian(cplx a, double theta, double m,
                                                           const CVec& z) {
    if (z.size() != 2) throw DimensionMismatch("automorphism jacobian: expects a point in C^2");
    const cplx den = 1.0 - std::conj(a) * z[0];
    if (std::abs(den) < 1e-14) throw PoleError("automorphism jacobian: pole at z1 = 1/conj(a)");
    const cplx phase(std::cos(theta), std::sin(theta));
    const cplx pw = phase * std::pow(1.0 - std::norm(a), 1.0 / (2.0 * m)) * std::exp(-std::log(den) / m);
    std::array<CVec, 2> J;
    J[0] = {(1.0 - std::norm(a)) / (den * den), cplx(0.0)};
    J[1] = {pw * z[1] * std::conj(a) / (m * den), pw};
    return J;
}

// --- seeded feasible parameters ---------------------------------------------------
//
// Draw alpha1, alpha2 and |a2|^{2m}, solve the two scalar attachment
// constraints for |a1|^2 and alpha0, and reject until alpha0 is comfortably
// interior. Phases of a1, a2 are free.
inline EllipsoidKind1Params sample_kind1(Rng& rng, double m) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const cplx alpha1 = rng.in_disc(0.6);
        const cplx alpha2 = rng.in_disc(0.6);
        const double y = rng.uniform(0.2, 0.8); // |a2|^{2m}
        const double A = std::norm(alpha1);
        const double B = 2.0 * y * (alpha1 * std::conj(alpha2)).real() - (1.0 + std::norm(alpha1));
        const double C = y * y * std::norm(alpha2) - y * (1.0 + std::norm(alpha2)) + 1.0;
        double roots[2];
        int nroots = 0;
        if (A < 1e-12) {
            if (std::abs(B) > 1e-12) roots[nroots++] = -C / B;
        } else {
            const double disc = B * B - 4.0 * A * C;
            if (disc >= 0.0) {
                roots[nroots++] = (-B + std::sqrt(disc)) / (2.0 * A);
                roots[nroots++] = (-B - std::sqrt(disc)) / (2.0 * A);
            }
        }
        for (int i = 0; i < nroots; ++i) {
            const double x = roots[i]; // |a1|^2
            if (!(x > 0.02 && x <= 6.0)) continue;
            const cplx alpha0 = x * alpha1 + y * alpha2;
            if (std::abs(alpha0) > 0.7) continue;
            EllipsoidKind1Params p;
            p.m = m;
            p.alpha0 = alpha0;
            p.alpha1 = alpha1;
            p.alpha2 = alpha2;
            const double phi1 = rng.angle();
            const double phi2 = rng.angle();
            p.a1 = std::sqrt(x) * cplx(std::cos(phi1), std::sin(phi1));
            p.a2 = std::pow(y, 1.0 / (2.0 * m)) * cplx(std::cos(phi2), std::sin(phi2));
            p.r1 = static_cast<int>(rng.uniform_int(2));
            p.r2 = static_cast<int>(rng.uniform_int(2));
            return p;
        }
    }
    throw SearchFailure("sample_kind1: rejection sampling exhausted");
}

// Negative control: the composed map with the first component's Blaschke
// factor replaced by z^2. Boundary moduli are unchanged (still attached) but
// no positive weight makes the covector extend holomorphically.
inline AnalyticDisc perturbed_kind1_disc(const EllipsoidKind1Params& p, int k) {
    validate_kind1(p);
    const AnalyticDisc base = compose_power(ellipsoid_kind1(p), k);
    AnalyticDisc d;
    d.n = 2;
    d.order = 1;
    d.name = "perturbed-k1";
    ComplexSeries s1 =
        series_truncate(series_mul(ComplexSeries({1.0, -std::conj(p.alpha1)}),
                                   geom_series(std::conj(p.alpha0))),
                        kJetDegree);
    s1 = series_shift(series_scale(series_stretch(s1, k), p.a1), 2);
    d.jets = {std::move(s1), base.jets[1]};
    const EllipsoidKind1Params q = p;
    auto base_eval = base.eval;
    d.eval = [q, base_eval, k](cplx z) -> CVec {
        const cplx zk = pow_int(z, k);
        const cplx f1 = q.a1 * z * z * (1.0 - std::conj(q.alpha1) * zk) / (1.0 - std::conj(q.alpha0) * zk);
        return {f1, base_eval(z)[1]};
    };
    return d;
}

// --- stable catalog names ----------------------------------------------------------

struct CatalogEntry {
    AnalyticDisc disc;
    ModelDomain domain;
    std::optional<double> claimed_r;    // jet coefficient when the family states one
    std::optional<double> exact_value;  // metric value when exactly known
};

// Re-derives the sampled parameter set behind an "ellipsoid-k1:..." name;
// nullopt for other name families.
inline std::optional<EllipsoidKind1Params> kind1_params_from_name(const std::string& name) {
    if (name.rfind("ellipsoid-k1:", 0) != 0) return std::nullopt;
    std::uint64_t seed = 1;
    double m = 0.5;
    std::string rest = name.substr(13);
    size_t pos = 0;
    while (pos <= rest.size()) {
        size_t nxt = rest.find(',', pos);
        if (nxt == std::string::npos) nxt = rest.size();
        const std::string kv = rest.substr(pos, nxt - pos);
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("ellipsoid-k1 expects key=value pairs");
        const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        try {
            if (key == "seed") seed = std::stoull(val);
            else if (key == "m") m = std::stod(val);
            else throw UsageError("ellipsoid-k1: unknown key " + key);
        } catch (const std::invalid_argument&) {
            throw UsageError("ellipsoid-k1: malformed value for " + key);
        }
        pos = nxt + 1;
    }
    Rng rng(seed);
    return sample_kind1(rng, m);
}

// Names: yu-simple | yu-optimal | yu-param:<alpha>,<beta>
//        exact-kob:<t>,<aRe>,<bRe> or exact-kob:<t>,<aRe>,<aIm>,<bRe>,<bIm>
//        ellipsoid-k1:seed=<S>,m=<m>
inline CatalogEntry catalog_lookup(const std::string& name) {
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> out;
        size_t pos = 0;
        while (pos <= s.size()) {
            const size_t nxt = s.find(sep, pos);
            if (nxt == std::string::npos) {
                out.push_back(s.substr(pos));
                break;
            }
            out.push_back(s.substr(pos, nxt - pos));
            pos = nxt + 1;
        }
        return out;
    };
    try {
        if (name == "yu-simple") {
            YuDisc y = yu_simple_disc();
            return {std::move(y.disc), ModelDomain::yu_domain(), y.r, std::nullopt};
        }
        if (name == "yu-optimal") {
            YuDisc y = yu_parametric_disc(yu_optimal_params(), "yu-optimal");
            return {std::move(y.disc), ModelDomain::yu_domain(), y.r, std::nullopt};
        }
        if (name.rfind("yu-param:", 0) == 0) {
            const auto f = split(name.substr(9), ',');
            if (f.size() != 2) throw UsageError("yu-param expects alpha,beta");
            YuDisc y = yu_parametric_disc({std::stod(f[0]), std::stod(f[1])});
            return {std::move(y.disc), ModelDomain::yu_domain(), y.r, std::nullopt};
        }
        if (name.rfind("exact-kob:", 0) == 0) {
            const auto f = split(name.substr(10), ',');
            ExactKobayashiParams p;
            if (f.size() == 3) {
                p = {std::stod(f[0]), cplx(std::stod(f[1])), cplx(std::stod(f[2]))};
            } else if (f.size() == 5) {
                p = {std::stod(f[0]), cplx(std::stod(f[1]), std::stod(f[2])),
                     cplx(std::stod(f[3]), std::stod(f[4]))};
            } else {
                throw UsageError("exact-kob expects t,aRe,bRe or t,aRe,aIm,bRe,bIm");
            }
            ExactKobayashiDisc e = exact_kobayashi_disc(p);
            return {std::move(e.disc), ModelDomain::yu_domain(), std::nullopt, e.value};
        }
        if (auto p = kind1_params_from_name(name)) {
            return {ellipsoid_kind1(*p), ModelDomain::ellipsoid(p->m), std::nullopt, std::nullopt};
        }
    } catch (const std::invalid_argument&) {
        throw UsageError("catalog: malformed numeric field in " + name);
    }
    throw UsageError("catalog: unknown disc name " + name);
}

} // namespace koblab
