#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "holo.hpp"

namespace koblab {

enum class DomainTag { UnitDisc, PuncturedDisc, Polydisc, YuDomain, Ellipsoid, HalfPlane };

// Model domain {rho < 0} in C^n (punctured disc additionally removes 0).
struct ModelDomain {
    DomainTag tag = DomainTag::UnitDisc;
    int n = 1;
    double m = 0.0; // ellipsoid exponent
    bool nonconvex = false;

    static ModelDomain unit_disc() { return {DomainTag::UnitDisc, 1, 0.0, false}; }
    static ModelDomain punctured_disc() { return {DomainTag::PuncturedDisc, 1, 0.0, false}; }
    static ModelDomain polydisc(int n = 2) { return {DomainTag::Polydisc, n, 0.0, false}; }
    static ModelDomain yu_domain() { return {DomainTag::YuDomain, 3, 0.0, false}; }
    static ModelDomain half_plane() { return {DomainTag::HalfPlane, 1, 0.0, false}; }

    static ModelDomain ellipsoid(double m) {
        if (!(m > 0.0 && m < 1.0)) throw InvalidParameter("ellipsoid: exponent m must lie in (0,1)");
        return {DomainTag::Ellipsoid, 2, m, m < 0.5};
    }

    std::string id() const {
        switch (tag) {
            case DomainTag::UnitDisc: return "unit_disc";
            case DomainTag::PuncturedDisc: return "punctured_disc";
            case DomainTag::Polydisc: return "polydisc";
            case DomainTag::YuDomain: return "yu_domain";
            case DomainTag::HalfPlane: return "half_plane";
            case DomainTag::Ellipsoid: {
                char buf[48];
                std::snprintf(buf, sizeof(buf), "ellipsoid:%.17g", m);
                return buf;
            }
        }
        return "unknown";
    }

    static ModelDomain parse(const std::string& id) {
        if (id == "unit_disc") return unit_disc();
        if (id == "punctured_disc") return punctured_disc();
        if (id == "polydisc") return polydisc();
        if (id == "yu_domain") return yu_domain();
        if (id == "half_plane") return half_plane();
        if (id.rfind("ellipsoid:", 0) == 0) return ellipsoid(std::stod(id.substr(10)));
        throw UsageError("unknown domain id: " + id);
    }
};

inline void check_dimension(const ModelDomain& d, const CVec& z) {
    if (static_cast<int>(z.size()) != d.n)
        throw DimensionMismatch("point dimension does not match domain");
}

inline double rho(const ModelDomain& d, const CVec& z) {
    check_dimension(d, z);
    switch (d.tag) {
        case DomainTag::UnitDisc:
        case DomainTag::PuncturedDisc:
            return std::norm(z[0]) - 1.0;
        case DomainTag::Polydisc: {
            double mx = -std::numeric_limits<double>::infinity();
            for (const cplx& w : z) mx = std::max(mx, std::norm(w));
            return mx - 1.0;
        }
        case DomainTag::YuDomain: {
            const cplx w = z[0] * z[0] - z[1] * z[1] * z[1];
            return z[2].real() + std::norm(w);
        }
        case DomainTag::Ellipsoid:
            return std::norm(z[0]) + std::pow(std::abs(z[1]), 2.0 * d.m) - 1.0;
        case DomainTag::HalfPlane:
            return -z[0].imag();
    }
    throw InvalidParameter("rho: unknown domain");
}

inline bool interior_point(const ModelDomain& d, const CVec& z) {
    if (rho(d, z) >= 0.0) return false;
    if (d.tag == DomainTag::PuncturedDisc && std::abs(z[0]) == 0.0) return false;
    return true;
}

// Wirtinger gradient (d rho / d z_j); the first-order change along a step h
// in C^n is 2 Re <grad, conj(h)> terms, i.e. rho(z+h) - rho(z) ~ 2 Re(sum_j g_j h_j).
inline CVec grad_rho(const ModelDomain& d, const CVec& z) {
    check_dimension(d, z);
    switch (d.tag) {
        case DomainTag::UnitDisc:
        case DomainTag::PuncturedDisc:
            return {std::conj(z[0])};
        case DomainTag::Polydisc: {
            size_t arg = 0;
            double best = -1.0, second = -1.0;
            for (size_t j = 0; j < z.size(); ++j) {
                const double a = std::norm(z[j]);
                if (a > best) {
                    second = best;
                    best = a;
                    arg = j;
                } else {
                    second = std::max(second, a);
                }
            }
            if (best - second < 1e-12)
                throw SingularityError("grad_rho: polydisc corner (tied moduli)");
            CVec g(z.size(), cplx(0.0));
            g[arg] = std::conj(z[arg]);
            return g;
        }
        case DomainTag::YuDomain: {
            const cplx w = z[0] * z[0] - z[1] * z[1] * z[1];
            return {2.0 * z[0] * std::conj(w), -3.0 * z[1] * z[1] * std::conj(w), cplx(0.5)};
        }
        case DomainTag::Ellipsoid: {
            const double a2 = std::abs(z[1]);
            if (a2 < 1e-300)
                throw SingularityError("grad_rho: ellipsoid gradient singular at z2 = 0");
            return {std::conj(z[0]), d.m * std::pow(a2, 2.0 * d.m - 2.0) * std::conj(z[1])};
        }
        case DomainTag::HalfPlane:
            return {cplx(0.0, 0.5)};
    }
    throw InvalidParameter("grad_rho: unknown domain");
}

// --- containment certification ------------------------------------------------

struct GridConfig {
    int M = 4096;
    std::vector<double> ladder = {0.9, 0.99, 0.999};
    double margin = 1e-9;     // contained requires rho < -margin
    double viol_tol = 1e-9;   // any lattice rho above this is a violation
    double attach_tol = 1e-4; // |extrapolated boundary rho| below this is attached
    double floor = 1e-9;      // punctured disc: min |f| on the lattice
};

enum class Verdict { Contained, Attached, Violated };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Contained: return "contained";
        case Verdict::Attached: return "attached";
        case Verdict::Violated: return "violated";
    }
    return "?";
}

struct ContainmentReport {
    double max_rho = 0.0;
    double margin = 0.0;
    std::vector<double> ladder;
    std::vector<double> per_radius_max;
    double boundary_extrapolation = 0.0;
    double min_modulus = std::numeric_limits<double>::infinity(); // punctured only
    int winding = 0;                                              // punctured only
    Verdict verdict = Verdict::Violated;
    int grid_M = 0;

    // A disc usable as a metric witness: no lattice point on or outside the
    // boundary, and (for the punctured disc) zero-free with the modulus floor.
    bool interior_ok() const { return verdict != Verdict::Violated && max_rho < 0.0; }
};

// Lagrange extrapolation of the per-radius maxima to the boundary (x = 1-r -> 0).
inline double extrapolate_to_boundary(const std::vector<double>& radii, const std::vector<double>& maxima) {
    const size_t n = radii.size();
    if (n == 1) return maxima[0];
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double w = 1.0;
        const double xi = 1.0 - radii[i];
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double xj = 1.0 - radii[j];
            w *= (0.0 - xj) / (xi - xj);
        }
        acc += w * maxima[i];
    }
    return acc;
}

namespace detail {

// Argument increment of g along the arc [t0, t1]. The midpoint is always
// probed and the arc accepted only when both halves keep the sample ratio
// close to 1 (bounding phase step and modulus swing per half), so a fast
// transit between similar-looking endpoints cannot alias the count.
inline double arg_sweep(const std::function<cplx(double)>& g, double t0, double t1, cplx f0,
                        cplx f1, int depth) {
    if (depth <= 0) return std::arg(f1 / f0);
    const double tm = 0.5 * (t0 + t1);
    const cplx fm = g(tm);
    if (std::abs(fm) < 1e-300) throw BranchError("winding: zero sample on the loop");
    const cplx q0 = fm / f0, q1 = f1 / fm;
    if (std::abs(q0 - 1.0) < 0.35 && std::abs(q1 - 1.0) < 0.35) return std::arg(q0) + std::arg(q1);
    return arg_sweep(g, t0, tm, f0, fm, depth - 1) + arg_sweep(g, tm, t1, fm, f1, depth - 1);
}

} // namespace detail

// Winding of g around 0 from M base samples (g at angles 2 pi j / M), with
// adaptive arc refinement between them.
inline int refined_winding(const std::vector<cplx>& samples,
                           const std::function<cplx(double)>& g, int depth = 20) {
    const size_t M = samples.size();
    if (M < 2) throw InvalidParameter("refined_winding: need at least two samples");
    double total = 0.0;
    for (size_t j = 0; j < M; ++j) {
        const cplx f0 = samples[j];
        const cplx f1 = samples[(j + 1) % M];
        if (std::abs(f0) < 1e-300 || std::abs(f1) < 1e-300)
            throw BranchError("winding: zero sample on the loop");
        const double t0 = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M);
        const double t1 = 2.0 * kPi * static_cast<double>(j + 1) / static_cast<double>(M);
        total += detail::arg_sweep(g, t0, t1, f0, f1, depth);
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

// Certifies f(D) against the domain on the radius ladder. rho is
// plurisubharmonic along discs on every model domain here, so the sup over
// each closed sub-disc is attained on its outermost sampled circle.
inline ContainmentReport contains_disc(const ModelDomain& d, const AnalyticDisc& f,
                                       const GridConfig& cfg = GridConfig{}) {
    if (f.n != d.n) throw DimensionMismatch("contains_disc: disc dimension mismatch");
    ContainmentReport rep;
    rep.margin = cfg.margin;
    rep.ladder = cfg.ladder;
    rep.grid_M = cfg.M;
    rep.max_rho = -std::numeric_limits<double>::infinity();

    const bool punct = d.tag == DomainTag::PuncturedDisc;
    CVec outer_loop;
    for (double r : cfg.ladder) {
        double mx = -std::numeric_limits<double>::infinity();
        const auto pts = circle_points(r, cfg.M);
        if (punct && r == cfg.ladder.back()) outer_loop.reserve(pts.size());
        for (const cplx& z : pts) {
            const CVec w = f.eval(z);
            mx = std::max(mx, rho(d, w));
            if (punct) {
                rep.min_modulus = std::min(rep.min_modulus, std::abs(w[0]));
                if (r == cfg.ladder.back()) outer_loop.push_back(w[0]);
            }
        }
        rep.per_radius_max.push_back(mx);
        rep.max_rho = std::max(rep.max_rho, mx);
    }
    rep.boundary_extrapolation = extrapolate_to_boundary(cfg.ladder, rep.per_radius_max);

    bool puncture_ok = true;
    if (punct) {
        if (rep.min_modulus <= cfg.floor) {
            puncture_ok = false;
        } else {
            try {
                const double rr = cfg.ladder.back();
                auto g = [&f, rr](double th) {
                    return f.eval(cplx(rr * std::cos(th), rr * std::sin(th)))[0];
                };
                rep.winding = refined_winding(outer_loop, g);
                puncture_ok = rep.winding == 0;
            } catch (const BranchError&) {
                puncture_ok = false;
                rep.winding = 999;
            }
        }
    }

    if (rep.max_rho > cfg.viol_tol || !puncture_ok) {
        rep.verdict = Verdict::Violated;
    } else if (std::abs(rep.boundary_extrapolation) <= cfg.attach_tol) {
        rep.verdict = Verdict::Attached;
    } else if (rep.max_rho < -cfg.margin && rep.boundary_extrapolation < 0.0) {
        rep.verdict = Verdict::Contained;
    } else {
        // Interior lattice margins with a positive boundary trend mean the
        // image exits between the outermost sampled radius and the boundary.
        rep.verdict = Verdict::Violated;
    }
    return rep;
}

} // namespace koblab
