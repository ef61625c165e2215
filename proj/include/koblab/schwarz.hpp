#pragma once

#include <string>
#include <vector>
#include <cmath>

#include "catalog.hpp"
#include "holo.hpp"
#include "rng.hpp"

namespace koblab {

// --- sampled disc self-maps with prescribed vanishing --------------------------

struct SampleProfile {
    int k = 1;
    int factors = 3;            // Blaschke factors / polynomial degree
    std::string target = "blaschke"; // blaschke | poly | punctured-exp | pick
    cplx zeta0{0.0};            // base point for pick samples
};

struct SelfMapSample {
    AnalyticDisc f; // scalar (n = 1)
    int k = 1;
    std::string profile;
    std::uint64_t seed = 0;
};

namespace detail {

inline cplx eval1(const AnalyticDisc& f, cplx z) { return f.eval(z)[0]; }

inline double sup_on_circle(const AnalyticDisc& f, double r, int M) {
    double s = 0.0;
    for (const cplx& z : circle_points(r, M)) s = std::max(s, std::abs(eval1(f, z)));
    return s;
}

// Deterministic mixed-radius test lattice.
inline CVec test_lattice(int per_radius) {
    static const double radii[] = {0.3, 0.6, 0.9, 0.99, 0.999};
    CVec pts;
    pts.reserve(5 * static_cast<size_t>(per_radius));
    for (double r : radii)
        for (int j = 0; j < per_radius; ++j) {
            const double t = 2.0 * kPi * j / per_radius;
            pts.push_back(cplx(r * std::cos(t), r * std::sin(t)));
        }
    return pts;
}

} // namespace detail

inline SelfMapSample sample_self_map(std::uint64_t seed, const SampleProfile& prof) {
    if (prof.k < 1) throw InvalidParameter("sample_self_map: k must be positive");
    if (prof.factors < 0) throw InvalidParameter("sample_self_map: factor count must be >= 0");
    Rng rng(seed);
    SelfMapSample out;
    out.k = prof.k;
    out.seed = seed;
    out.profile = prof.target;
    const int k = prof.k;

    if (prof.target == "blaschke") {
        std::vector<cplx> centers(static_cast<size_t>(prof.factors));
        for (auto& a : centers) a = rng.in_disc(0.8);
        ComplexSeries s({1.0});
        for (cplx a : centers) s = series_truncate(series_mul(s, blaschke_series(a)), kJetDegree);
        AnalyticDisc d;
        d.n = 1;
        d.order = k;
        d.name = "blaschke-sample";
        d.jets = {series_shift(s, k)};
        d.eval = [centers, k](cplx z) -> CVec {
            cplx v = pow_int(z, k);
            for (cplx a : centers) v *= blaschke(a, z);
            return {v};
        };
        out.f = std::move(d);
        return out;
    }

    if (prof.target == "poly") {
        std::vector<cplx> q(static_cast<size_t>(prof.factors) + 1);
        for (auto& c : q) c = cplx(rng.normal(), rng.normal());
        const ComplexSeries qs(q);
        double sup = 0.0;
        for (const cplx& z : circle_points(1.0, 512)) sup = std::max(sup, std::abs(qs.eval(z)));
        const double scale = 1.0 + sup;
        AnalyticDisc d;
        d.n = 1;
        d.order = k;
        d.name = "poly-sample";
        d.jets = {series_shift(series_scale(qs, 1.0 / scale), k)};
        const ComplexSeries jet = d.jets[0];
        d.eval = [jet](cplx z) -> CVec { return {jet.eval(z)}; };
        out.f = std::move(d);
        return out;
    }

    if (prof.target == "punctured-exp") {
        // f = e^{ia} exp(L (1 + 0.9 z^k B(z))), L = log t < 0: Re of the
        // exponent stays below L/10, so f maps into D \ {0}.
        const double t = rng.uniform(0.1, 0.9);
        const double alpha = rng.angle();
        std::vector<cplx> centers(static_cast<size_t>(prof.factors));
        for (auto& a : centers) a = rng.in_disc(0.8);
        const double L = std::log(t);
        ComplexSeries B({1.0});
        for (cplx a : centers) B = series_truncate(series_mul(B, blaschke_series(a)), kJetDegree);
        ComplexSeries g = series_scale(series_shift(B, k), 0.9 * L);
        g = series_add(g, ComplexSeries({cplx(L)}));
        const cplx phase(std::cos(alpha), std::sin(alpha));
        AnalyticDisc d;
        d.n = 1;
        d.order = k;
        d.name = "punctured-sample";
        d.jets = {series_scale(series_exp(g, kJetDegree), phase)};
        d.eval = [centers, k, L, phase](cplx z) -> CVec {
            cplx u = 0.9 * pow_int(z, k);
            for (cplx a : centers) u *= blaschke(a, z);
            return {phase * std::exp(L * (1.0 + u))};
        };
        out.f = std::move(d);
        return out;
    }

    if (prof.target == "pick") {
        // phi_b . h . B_{zeta0} with h vanishing to order k at 0: derivatives
        // 1..k-1 vanish at zeta0 by the chain rule.
        if (std::abs(prof.zeta0) >= 1.0) throw InvalidParameter("sample_self_map: |zeta0| must be < 1");
        std::vector<cplx> centers(static_cast<size_t>(prof.factors));
        for (auto& a : centers) a = rng.in_disc(0.8);
        const cplx b = rng.in_disc(0.6);
        const cplx z0 = prof.zeta0;
        auto eval = [centers, k, b, z0](cplx z) -> CVec {
            const cplx w = blaschke(z0, z);
            cplx v = pow_int(w, k);
            for (cplx a : centers) v *= blaschke(a, w);
            return {blaschke(-b, v)};
        };
        AnalyticDisc d;
        d.n = 1;
        d.order = 1;
        d.name = "pick-sample";
        d.eval = eval;
        d.jets = {ComplexSeries(cauchy_taylor([eval](cplx z) { return eval(z)[0]; }, cplx(0.0), 16,
                                              0.5, 1024))};
        out.f = std::move(d);
        return out;
    }

    throw UsageError("sample_self_map: unknown profile target " + prof.target);
}

// --- Schwarz-type checks --------------------------------------------------------

enum class EqualityStatus { None, NearUnconfirmed, Confirmed };

inline const char* equality_status_name(EqualityStatus s) {
    switch (s) {
        case EqualityStatus::None: return "none";
        case EqualityStatus::NearUnconfirmed: return "near-unconfirmed";
        case EqualityStatus::Confirmed: return "confirmed";
    }
    return "?";
}

// Violations and gaps are on the normalized coefficient scale (derivatives
// divided by k!), so every reported quantity is O(1).
struct SchwarzReport {
    double max_violation = 0.0;
    double equality_gap = 0.0;
    EqualityStatus equality = EqualityStatus::None;
    double theta = 0.0;
    double reconstruction_error = 0.0;
};

inline constexpr double kEqualityDetect = 1e-8;
inline constexpr double kEqualityConfirm = 1e-7;

namespace detail {

inline void require_self_map(const AnalyticDisc& f) {
    if (sup_on_circle(f, 0.999, 1024) >= 1.0 - 1e-9)
        throw InvalidParameter("schwarz: sample is not a strict self-map on the grid");
}

inline EqualityStatus classify_equality(double gap, double recon) {
    if (gap <= kEqualityDetect) return recon <= kEqualityConfirm ? EqualityStatus::Confirmed
                                                                 : EqualityStatus::NearUnconfirmed;
    return gap <= kEqualityConfirm ? EqualityStatus::NearUnconfirmed : EqualityStatus::None;
}

} // namespace detail

// |f(z)| <= |z|^k on the lattice and |f^{(k)}(0)| <= k!; equality pins
// f = e^{i theta} z^k.
inline SchwarzReport check_higher_schwarz(const SelfMapSample& s, int k) {
    if (k < 1) throw InvalidParameter("check_higher_schwarz: k must be positive");
    const AnalyticDisc& f = s.f;
    if (f.n != 1) throw DimensionMismatch("check_higher_schwarz: scalar samples only");
    detail::require_self_map(f);
    double low = 0.0;
    for (int j = 1; j < k; ++j) low = std::max(low, std::abs(f.jets[0].coeff(j)));
    if (std::abs(f.jets[0].coeff(0)) > 1e-9 || low > 1e-9)
        throw InvalidParameter("check_higher_schwarz: sample does not vanish to order k");

    SchwarzReport rep;
    for (const cplx& z : detail::test_lattice(200)) {
        const double viol = std::abs(detail::eval1(f, z)) - std::pow(std::abs(z), k);
        rep.max_violation = std::max(rep.max_violation, viol);
    }
    const cplx ck = f.jets[0].coeff(k);
    rep.max_violation = std::max(rep.max_violation, std::abs(ck) - 1.0);
    rep.equality_gap = 1.0 - std::abs(ck);

    if (rep.equality_gap <= kEqualityConfirm) {
        rep.theta = std::arg(ck);
        const cplx phase(std::cos(rep.theta), std::sin(rep.theta));
        double recon = 0.0;
        for (const cplx& z : circle_points(0.999, 512))
            recon = std::max(recon, std::abs(detail::eval1(f, z) - phase * pow_int(z, k)));
        rep.reconstruction_error = recon;
        rep.equality = detail::classify_equality(rep.equality_gap, recon);
    }
    return rep;
}

// Schwarz-Pick at an interior base point zeta0 where f^{(1..k-1)}(zeta0) = 0:
// derivative bound |f^{(k)}(zeta0)|/k! <= (1-|f(zeta0)|^2)/(1-|zeta0|^2)^k and
// the invariant-quotient bound against |B_{zeta0}(w)|^k.
inline SchwarzReport check_schwarz_pick_higher(const SelfMapSample& s, cplx zeta0, int k) {
    if (k < 1) throw InvalidParameter("check_schwarz_pick_higher: k must be positive");
    if (std::abs(zeta0) >= 1.0) throw InvalidParameter("check_schwarz_pick_higher: |zeta0| must be < 1");
    const AnalyticDisc& f = s.f;
    if (f.n != 1) throw DimensionMismatch("check_schwarz_pick_higher: scalar samples only");
    detail::require_self_map(f);

    const double R = std::min(0.3, (1.0 - std::abs(zeta0)) / 2.0);
    auto g = [&f](cplx z) { return detail::eval1(f, z); };
    const std::vector<cplx> c = cauchy_taylor(g, zeta0, k, R, 1024);
    for (int j = 1; j < k; ++j)
        if (std::abs(c[static_cast<size_t>(j)]) > 1e-8)
            throw InvalidParameter("check_schwarz_pick_higher: hypothesis derivatives do not vanish");

    const cplx c0 = c[0];
    const cplx ck = c[static_cast<size_t>(k)];
    const double bound = (1.0 - std::norm(c0)) / std::pow(1.0 - std::norm(zeta0), k);

    SchwarzReport rep;
    rep.max_violation = std::abs(ck) - bound;
    for (const cplx& w : detail::test_lattice(100)) {
        const cplx fw = g(w);
        const double lhs = std::abs((c0 - fw) / (1.0 - std::conj(c0) * fw));
        const double rhs = std::pow(std::abs(blaschke(zeta0, w)), k);
        rep.max_violation = std::max(rep.max_violation, lhs - rhs);
    }
    rep.equality_gap = bound - std::abs(ck);

    if (rep.equality_gap <= kEqualityConfirm) {
        // ck = e^{i theta} (1-|c0|^2) / (1-|zeta0|^2)^k at equality.
        rep.theta = std::arg(ck);
        const cplx phase(std::cos(rep.theta), std::sin(rep.theta));
        double recon = 0.0;
        for (const cplx& w : circle_points(0.999, 512)) {
            const cplx form = blaschke(-c0, phase * pow_int(blaschke(zeta0, w), k));
            recon = std::max(recon, std::abs(g(w) - form));
        }
        rep.reconstruction_error = recon;
        rep.equality = detail::classify_equality(std::abs(rep.equality_gap), recon);
    }
    return rep;
}

// Zero-free samples into the punctured disc: |f^{(k)}(0)|/k! <= -2|f(0)|log|f(0)|.
inline SchwarzReport check_punctured(const SelfMapSample& s, int k) {
    if (k < 1) throw InvalidParameter("check_punctured: k must be positive");
    const AnalyticDisc& f = s.f;
    if (f.n != 1) throw DimensionMismatch("check_punctured: scalar samples only");
    detail::require_self_map(f);
    for (const cplx& z : detail::test_lattice(200))
        if (std::abs(detail::eval1(f, z)) < 1e-300)
            throw InvalidParameter("check_punctured: sample has a zero on the grid");

    const cplx c0 = f.jets[0].coeff(0);
    const double a0 = std::abs(c0);
    if (a0 <= 0.0 || a0 >= 1.0)
        throw InvalidParameter("check_punctured: |f(0)| must lie in (0,1)");
    double low = 0.0;
    for (int j = 1; j < k; ++j) low = std::max(low, std::abs(f.jets[0].coeff(j)));
    if (low > 1e-9)
        throw InvalidParameter("check_punctured: sample does not vanish to order k past f(0)");

    const cplx ck = f.jets[0].coeff(k);
    const double bound = -2.0 * a0 * std::log(a0);

    SchwarzReport rep;
    rep.max_violation = std::abs(ck) - bound;
    rep.equality_gap = bound - std::abs(ck);

    if (rep.equality_gap <= kEqualityConfirm && std::abs(ck) > 0.0) {
        const double alpha = std::arg(c0);
        const cplx ea(std::cos(alpha), std::sin(alpha));
        rep.theta = std::arg(-ck / ea);
        const cplx phase(std::cos(rep.theta), std::sin(rep.theta));
        const double L = std::log(a0);
        double recon = 0.0;
        for (const cplx& z : circle_points(0.999, 512)) {
            const cplx w = phase * pow_int(z, k);
            const cplx form = ea * std::exp(L * (1.0 + w) / (1.0 - w));
            recon = std::max(recon, std::abs(detail::eval1(f, z) - form));
        }
        rep.reconstruction_error = recon;
        rep.equality = detail::classify_equality(std::abs(rep.equality_gap), recon);
    }
    return rep;
}

// --- closed-form equality witnesses ----------------------------------------------

inline SelfMapSample equality_basic(double theta, int k) {
    SelfMapSample s;
    s.k = k;
    s.profile = "equality-basic";
    const cplx phase(std::cos(theta), std::sin(theta));
    std::vector<cplx> c(static_cast<size_t>(k) + 1, cplx(0.0));
    c[static_cast<size_t>(k)] = phase;
    AnalyticDisc d;
    d.n = 1;
    d.order = k;
    d.name = "equality-basic";
    d.jets = {ComplexSeries(std::move(c))};
    d.eval = [phase, k](cplx z) -> CVec { return {phase * pow_int(z, k)}; };
    s.f = std::move(d);
    return s;
}

inline SelfMapSample equality_pick(cplx zeta0, cplx c0, double theta, int k) {
    if (std::abs(zeta0) >= 1.0 || std::abs(c0) >= 1.0)
        throw InvalidParameter("equality_pick: parameters must lie in the open disc");
    SelfMapSample s;
    s.k = k;
    s.profile = "equality-pick";
    const cplx phase(std::cos(theta), std::sin(theta));
    auto eval = [zeta0, c0, phase, k](cplx z) -> CVec {
        return {blaschke(-c0, phase * pow_int(blaschke(zeta0, z), k))};
    };
    AnalyticDisc d;
    d.n = 1;
    d.order = 1;
    d.name = "equality-pick";
    d.eval = eval;
    d.jets = {ComplexSeries(
        cauchy_taylor([eval](cplx z) { return eval(z)[0]; }, cplx(0.0), 16, 0.5, 1024))};
    s.f = std::move(d);
    return s;
}

inline SelfMapSample equality_punctured(double t, double alpha, double theta, int k) {
    if (!(t > 0.0 && t < 1.0)) throw InvalidParameter("equality_punctured: t must lie in (0,1)");
    SelfMapSample s;
    s.k = k;
    s.profile = "equality-punctured";
    const double L = std::log(t);
    const cplx ea(std::cos(alpha), std::sin(alpha));
    const cplx phase(std::cos(theta), std::sin(theta));
    // L (1+w)/(1-w) = L + 2L sum_{j>=1} w^j
    std::vector<cplx> g(static_cast<size_t>(kJetDegree) + 1, cplx(2.0 * L));
    g[0] = L;
    ComplexSeries F = series_scale(series_exp(ComplexSeries(std::move(g)), kJetDegree), ea);
    F = series_compose(F, ComplexSeries({cplx(0.0), phase}), kJetDegree);
    AnalyticDisc d;
    d.n = 1;
    d.order = k;
    d.name = "equality-punctured";
    d.jets = {series_stretch(F, k)};
    d.eval = [L, ea, phase, k](cplx z) -> CVec {
        const cplx w = phase * pow_int(z, k);
        return {ea * std::exp(L * (1.0 + w) / (1.0 - w))};
    };
    s.f = std::move(d);
    return s;
}

// --- seeded suites ----------------------------------------------------------------

struct SchwarzSuiteRow {
    int index = 0;
    std::uint64_t seed = 0;
    double max_violation = 0.0;
    double equality_gap = 0.0;
    EqualityStatus status = EqualityStatus::None;
};

struct SchwarzSuiteResult {
    std::string lemma;
    int samples = 0;
    int violations = 0; // rows with max_violation > 1e-8
    double worst = 0.0;
    int confirmed = 0;
    int near = 0;
    std::vector<SchwarzSuiteRow> rows;
};

inline SchwarzSuiteResult run_schwarz_suite(const std::string& lemma, int k, int nsamples,
                                            std::uint64_t seed, cplx zeta0 = cplx(0.0),
                                            int factors = 3) {
    SchwarzSuiteResult res;
    res.lemma = lemma;
    res.samples = nsamples;
    res.rows.reserve(static_cast<size_t>(nsamples));
    for (int i = 0; i < nsamples; ++i) {
        const std::uint64_t si = derive_seed(seed, static_cast<std::uint64_t>(i));
        SampleProfile prof;
        prof.k = k;
        prof.factors = factors;
        SchwarzReport rep;
        if (lemma == "basic") {
            prof.target = (i % 2 == 0) ? "blaschke" : "poly";
            rep = check_higher_schwarz(sample_self_map(si, prof), k);
        } else if (lemma == "pick") {
            prof.target = "pick";
            prof.zeta0 = zeta0;
            rep = check_schwarz_pick_higher(sample_self_map(si, prof), zeta0, k);
        } else if (lemma == "punctured") {
            prof.target = "punctured-exp";
            rep = check_punctured(sample_self_map(si, prof), k);
        } else {
            throw UsageError("schwarz suite: unknown lemma " + lemma);
        }
        res.worst = std::max(res.worst, rep.max_violation);
        if (rep.max_violation > 1e-8) ++res.violations;
        if (rep.equality == EqualityStatus::Confirmed) ++res.confirmed;
        if (rep.equality == EqualityStatus::NearUnconfirmed) ++res.near;
        res.rows.push_back({i, si, rep.max_violation, rep.equality_gap, rep.equality});
    }
    return res;
}

} // namespace koblab
