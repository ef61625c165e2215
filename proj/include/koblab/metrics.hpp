#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>
#include <cmath>

#include "domains.hpp"
#include "holo.hpp"
#include "rng.hpp"

namespace koblab {

// Order-k jet data: f(0) = p, f vanishes to order k at 0 beyond p, and
// f^{(k)}(0) = k! r v for some r > 0. The metric value reported is 1/r.
struct JetTarget {
    CVec p;
    CVec v;
    int k = 1;
};

inline double vec_abs(const CVec& v) {
    double s = 0.0;
    for (cplx c : v) s += std::norm(c);
    return std::sqrt(s);
}

inline void validate_target(const ModelDomain& d, const JetTarget& t) {
    check_dimension(d, t.p);
    check_dimension(d, t.v);
    if (t.k < 1) throw InvalidParameter("jet order k must be >= 1");
    if (vec_abs(t.v) < 1e-12) throw InvalidParameter("direction vector must be nonzero");
    if (!(rho(d, t.p) < 0.0)) throw InvalidParameter("base point must be interior");
    if (d.tag == DomainTag::PuncturedDisc && std::abs(t.p[0]) <= 1e-6)
        throw InvalidParameter("punctured disc: base point must stay away from the puncture");
}

inline double poincare(cplx p, cplx v) {
    if (std::abs(p) >= 1.0) throw InvalidParameter("poincare: point must lie in the unit disc");
    return std::abs(v) / (1.0 - std::norm(p));
}

// Order-free value on the punctured disc.
inline double punctured_order_k(cplx p, cplx v) {
    const double ap = std::abs(p);
    if (ap <= 0.0 || ap >= 1.0)
        throw InvalidParameter("punctured disc value: point must lie in the punctured disc");
    return std::abs(v) / (-2.0 * ap * std::log(ap));
}

struct JetResidualReport {
    double dist_p = 0.0;          // |f(0) - p|
    double lower_defect = 0.0;    // largest coefficient modulus at orders 1..k-1
    double r_ls = 0.0;            // real least-squares multiple of v in the k-th coefficient
    double parallel_defect = 0.0; // |c_k - r_ls v|
    bool ok(double tol = 1e-9) const {
        return dist_p <= tol && lower_defect <= tol && parallel_defect <= tol && r_ls > 0.0;
    }
};

inline JetResidualReport verify_jet(const AnalyticDisc& f, const JetTarget& t) {
    if (f.n != static_cast<int>(t.p.size()))
        throw DimensionMismatch("verify_jet: dimension mismatch between disc and target");
    if (f.jets.empty()) throw InvalidParameter("verify_jet: disc carries no jets");
    JetResidualReport rep;
    const CVec f0 = f.value0();
    double dp = 0.0;
    for (int i = 0; i < f.n; ++i) dp += std::norm(f0[i] - t.p[i]);
    rep.dist_p = std::sqrt(dp);
    for (int j = 1; j < t.k; ++j)
        for (int i = 0; i < f.n; ++i)
            rep.lower_defect = std::max(rep.lower_defect, std::abs(f.jets[i].coeff(j)));
    cplx inner(0.0);
    double vsq = 0.0;
    CVec ck(f.n);
    for (int i = 0; i < f.n; ++i) {
        ck[i] = f.jets[i].coeff(t.k);
        inner += ck[i] * std::conj(t.v[i]);
        vsq += std::norm(t.v[i]);
    }
    rep.r_ls = (inner / vsq).real();
    double pd = 0.0;
    for (int i = 0; i < f.n; ++i) pd += std::norm(ck[i] - rep.r_ls * t.v[i]);
    rep.parallel_defect = std::sqrt(pd);
    return rep;
}

// --- certified model witnesses -----------------------------------------------------

struct WitnessCandidate {
    AnalyticDisc disc;
    double r = 0.0;
};

namespace detail {

// Series of (w + p) / (1 + conj(p) w) at w = phase * zeta.
inline ComplexSeries mobius_series(cplx p, cplx phase, int deg) {
    std::vector<cplx> c(static_cast<size_t>(deg) + 1);
    c[0] = p;
    const double om = 1.0 - std::norm(p);
    cplx w = phase;
    for (int j = 1; j <= deg; ++j) {
        c[j] = om * w;
        w *= -std::conj(p) * phase;
    }
    return ComplexSeries(std::move(c));
}

inline cplx mobius_eval(cplx p, cplx w) { return (w + p) / (1.0 + std::conj(p) * w); }

} // namespace detail

inline WitnessCandidate unit_disc_witness(const JetTarget& t) {
    const cplx p = t.p[0], v = t.v[0];
    const double r = (1.0 - std::norm(p)) / std::abs(v);
    const cplx phase = v / std::abs(v);
    AnalyticDisc d;
    d.n = 1;
    d.order = t.k;
    d.name = "mobius-witness";
    d.jets = {series_stretch(detail::mobius_series(p, phase, kSeriesDegreeDefault), t.k)};
    const int k = t.k;
    d.eval = [p, phase, k](cplx z) -> CVec { return {detail::mobius_eval(p, phase * pow_int(z, k))}; };
    return {std::move(d), r};
}

inline WitnessCandidate polydisc_witness(const JetTarget& t) {
    const int n = static_cast<int>(t.p.size());
    double r = 1e300;
    for (int i = 0; i < n; ++i)
        if (std::abs(t.v[i]) > 1e-15) r = std::min(r, (1.0 - std::norm(t.p[i])) / std::abs(t.v[i]));
    AnalyticDisc d;
    d.n = n;
    d.order = t.k;
    d.name = "polydisc-witness";
    d.jets.resize(static_cast<size_t>(n));
    struct Comp {
        cplx p;
        cplx w; // phase * saturation, |w| <= 1
        bool constant;
    };
    std::vector<Comp> comps(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double av = std::abs(t.v[i]);
        if (av < 1e-15) {
            comps[i] = {t.p[i], cplx(0.0), true};
            d.jets[i] = ComplexSeries({t.p[i]});
            continue;
        }
        double s = r * av / (1.0 - std::norm(t.p[i]));
        s = std::min(s, 1.0);
        const cplx w = s * t.v[i] / av;
        comps[i] = {t.p[i], w, false};
        d.jets[i] = series_stretch(detail::mobius_series(t.p[i], w, kSeriesDegreeDefault), t.k);
    }
    const int k = t.k;
    d.eval = [comps, k](cplx z) -> CVec {
        CVec out(comps.size());
        const cplx zk = pow_int(z, k);
        for (size_t i = 0; i < comps.size(); ++i)
            out[i] = comps[i].constant ? comps[i].p : detail::mobius_eval(comps[i].p, comps[i].w * zk);
        return out;
    };
    return {std::move(d), r};
}

// Attached disc in the punctured disc whose modulus traverses the strip
// {log(floor) < log|f| < 0}. Among competitors respecting a hard modulus
// floor this is the extremal shape; its jet coefficient approaches the
// unconstrained value as the floor goes to 0.
inline WitnessCandidate punctured_strip_witness(const JetTarget& t, double floor_mod) {
    const cplx p = t.p[0], v = t.v[0];
    const double ap = std::abs(p);
    const double L = -std::log(floor_mod);
    const double q = -std::log(ap) / L; // in (0,1)
    if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("strip witness: |p| outside (floor, 1)");
    const double alpha = kPi * q - kPi / 2.0;
    const double y = std::tan(alpha / 2.0);
    const cplx z0(0.0, y);
    const cplx etau(0.0, -1.0); // S'(z0) is a positive multiple of i
    const double sigma_d0 = (2.0 * L / kPi) * std::sin(kPi * q);
    const double r = ap * sigma_d0 / std::abs(v);
    const cplx arg_p = p / ap;
    const cplx ephase = (v / std::abs(v)) * std::conj(arg_p);

    const int deg = kSeriesDegreeDefault;
    // mu(zeta) - z0 = etau (1-|z0|^2) zeta / (1 + conj(z0) etau zeta)
    ComplexSeries G(std::vector<cplx>(static_cast<size_t>(deg) + 1, cplx(0.0)));
    {
        std::vector<cplx> g(static_cast<size_t>(deg) + 1, cplx(0.0));
        cplx pw = etau * (1.0 - std::norm(z0));
        const cplx ratio = -std::conj(z0) * etau;
        for (int j = 1; j <= deg; ++j) {
            g[j] = pw;
            pw *= ratio;
        }
        G = ComplexSeries(std::move(g));
    }
    // S(z0 + x) - S(z0) as a series in x.
    std::vector<cplx> sc(static_cast<size_t>(deg) + 1, cplx(0.0));
    {
        const cplx iLpi = cplx(0.0, L / kPi);
        cplx pw_plus = 1.0, pw_minus = 1.0;
        for (int j = 1; j <= deg; ++j) {
            pw_plus /= (1.0 + z0);
            pw_minus /= (1.0 - z0);
            const double sgn = (j % 2 == 1) ? 1.0 : -1.0;
            sc[j] = iLpi * (sgn * pw_plus + pw_minus) / static_cast<double>(j);
        }
    }
    ComplexSeries sigma = series_compose(ComplexSeries(std::move(sc)), G, deg);
    sigma = series_add(sigma, ComplexSeries({cplx(std::log(ap))}));
    ComplexSeries F = series_scale(series_exp(sigma, deg), arg_p);
    F = series_compose(F, ComplexSeries({cplx(0.0), ephase}), deg);

    AnalyticDisc d;
    d.n = 1;
    d.order = t.k;
    d.name = "strip-witness";
    d.jets = {series_stretch(F, t.k)};
    const int k = t.k;
    d.eval = [z0, etau, ephase, arg_p, L, k](cplx z) -> CVec {
        const cplx w = ephase * pow_int(z, k);
        const cplx mu = (z0 + etau * w) / (1.0 + std::conj(z0) * etau * w);
        const cplx S = cplx(0.0, L / kPi) * std::log(cplx(0.0, 1.0) * (1.0 + mu) / (1.0 - mu));
        return {arg_p * std::exp(S)};
    };
    return {std::move(d), r};
}

inline WitnessCandidate half_plane_witness(const JetTarget& t) {
    const cplx p = t.p[0], v = t.v[0];
    const cplx i1(0.0, 1.0);
    const cplx w0 = (p - i1) / (p + i1);
    const cplx dC = 2.0 * i1 / ((1.0 - w0) * (1.0 - w0)); // derivative of i(1+w)/(1-w)
    const cplx c = dC * (1.0 - std::norm(w0));            // |c| = 2 Im p
    const cplx phase = (v / std::abs(v)) * std::conj(c) / std::abs(c);
    const double r = std::abs(c) / std::abs(v);

    const int deg = kSeriesDegreeDefault;
    const ComplexSeries g = detail::mobius_series(w0, phase, deg);
    const ComplexSeries one_plus = series_add(ComplexSeries({1.0}), g);
    ComplexSeries x = series_scale(series_sub(g, ComplexSeries({w0})), 1.0 / (1.0 - w0));
    ComplexSeries inv = series_compose(geom_series(cplx(1.0), deg), x, deg);
    inv = series_scale(inv, 1.0 / (1.0 - w0));
    ComplexSeries F = series_scale(series_truncate(series_mul(one_plus, inv), deg), i1);

    AnalyticDisc d;
    d.n = 1;
    d.order = t.k;
    d.name = "half-plane-witness";
    d.jets = {series_stretch(F, t.k)};
    const int k = t.k;
    d.eval = [w0, phase, i1, k](cplx z) -> CVec {
        const cplx g0 = detail::mobius_eval(w0, phase * pow_int(z, k));
        return {i1 * (1.0 + g0) / (1.0 - g0)};
    };
    return {std::move(d), r};
}

inline std::optional<WitnessCandidate> model_witness(const ModelDomain& d, const JetTarget& t,
                                                     double floor_mod = 1e-9) {
    switch (d.tag) {
        case DomainTag::UnitDisc: return unit_disc_witness(t);
        case DomainTag::Polydisc: return polydisc_witness(t);
        case DomainTag::PuncturedDisc: return punctured_strip_witness(t, floor_mod);
        case DomainTag::HalfPlane: return half_plane_witness(t);
        default: return std::nullopt;
    }
}

// Closed-form lower bound and whether hitting it certifies exactness.
inline std::optional<std::pair<double, bool>> closed_form_lower(const ModelDomain& d,
                                                                const JetTarget& t) {
    switch (d.tag) {
        case DomainTag::UnitDisc:
            return std::make_pair(poincare(t.p[0], t.v[0]), true);
        case DomainTag::Polydisc: {
            double low = 0.0;
            for (size_t i = 0; i < t.p.size(); ++i)
                if (std::abs(t.v[i]) > 1e-15) low = std::max(low, poincare(t.p[i], t.v[i]));
            return std::make_pair(low, true);
        }
        case DomainTag::PuncturedDisc:
            // Containment in the unit disc; never certifies exactness here.
            return std::make_pair(poincare(t.p[0], t.v[0]), false);
        case DomainTag::HalfPlane:
            return std::make_pair(std::abs(t.v[0]) / (2.0 * t.p[0].imag()), t.k == 1);
        default:
            return std::nullopt;
    }
}

// --- penalized search over truncated polynomial discs -------------------------------

struct SearchConfig {
    int degree = 12; // trailing coefficients per component beyond the jet
    int restarts = 16;
    std::uint64_t seed = 1;
    GridConfig grid{};
    int opt_grid = 128;
    int final_grid = 512;
    double opt_margin = 1e-7;
    std::vector<double> stage_weights{1e2, 1e4, 1e6, 1e8, 1e10};
    int evals_base = 300;
    int evals_per_dim = 40;
    int polish_evals = 1000;
    int push_rounds = 2; // alternating radius-bisection and re-centering passes
    int push_evals = 800;
    bool use_model_witnesses = true;
    int threads = 0; // 0: KOBLAB_THREADS or 1
};

enum class BoundKind { Upper, Lower, Exact };

inline const char* bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::Upper: return "upper";
        case BoundKind::Lower: return "lower";
        default: return "exact";
    }
}

struct MetricEstimate {
    double value = 0.0; // 1/r_best
    BoundKind kind = BoundKind::Upper;
    double r_best = 0.0;
    AnalyticDisc witness;
    std::string witness_source;
    JetResidualReport jet;
    ContainmentReport containment;
    std::optional<double> lower_bound;
    SearchConfig config;
};

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* e = std::getenv("KOBLAB_THREADS")) {
        const int v = std::atoi(e);
        if (v > 0) return v;
    }
    return 1;
}

namespace detail {

// f_i(z) = p_i + z^k (r v_i + sum_{j=1..N} c_{ij} z^j); x = [r, Re c, Im c, ...].
struct PolySpace {
    ModelDomain d;
    JetTarget t;
    int N = 0;
    int n = 0;

    int dim() const { return 1 + 2 * n * N; }

    cplx coeff(const std::vector<double>& x, int i, int j) const { // j in 1..N
        const int base = 1 + 2 * (i * N + (j - 1));
        return cplx(x[base], x[base + 1]);
    }

    AnalyticDisc make_disc(const std::vector<double>& x) const {
        std::vector<ComplexSeries> comps;
        comps.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            std::vector<cplx> c(static_cast<size_t>(t.k + N) + 1, cplx(0.0));
            c[0] = t.p[i];
            c[static_cast<size_t>(t.k)] = x[0] * t.v[i];
            for (int j = 1; j <= N; ++j) c[static_cast<size_t>(t.k + j)] = coeff(x, i, j);
            comps.emplace_back(std::move(c));
        }
        AnalyticDisc f = make_series_disc(std::move(comps), "poly-search");
        f.order = t.k;
        return f;
    }

    // Populate z with f(zeta) without allocating.
    void eval_into(const std::vector<double>& x, cplx zeta, CVec& z) const {
        const cplx zk = pow_int(zeta, t.k);
        for (int i = 0; i < n; ++i) {
            cplx acc(0.0);
            for (int j = N; j >= 1; --j) acc = (acc + coeff(x, i, j)) * zeta;
            z[i] = t.p[i] + zk * (x[0] * t.v[i] + acc);
        }
    }
};

struct CircleScan {
    double max_rho = -1e300;
    double min_mod = 1e300;
    int winding = 0;
};

inline CircleScan scan_circle(const PolySpace& sp, const std::vector<double>& x,
                              const std::vector<cplx>& pts, CVec& buf) {
    CircleScan s;
    double total_arg = 0.0;
    cplx prev(0.0), first(0.0);
    const bool punct = sp.d.tag == DomainTag::PuncturedDisc;
    for (size_t q = 0; q < pts.size(); ++q) {
        sp.eval_into(x, pts[q], buf);
        s.max_rho = std::max(s.max_rho, rho(sp.d, buf));
        if (punct) {
            const cplx z = buf[0];
            const double m = std::abs(z);
            s.min_mod = std::min(s.min_mod, m);
            if (m < 1e-300) {
                s.winding = 999;
                continue;
            }
            if (q == 0) {
                first = z;
            } else if (std::abs(prev) > 1e-300) {
                total_arg += std::arg(z / prev);
            }
            prev = z;
        }
    }
    if (punct && s.winding != 999 && std::abs(prev) > 1e-300 && std::abs(first) > 1e-300) {
        total_arg += std::arg(first / prev);
        s.winding = static_cast<int>(std::lround(total_arg / (2.0 * kPi)));
    }
    return s;
}

struct Objective {
    const PolySpace* sp;
    const std::vector<cplx>* pts;
    double W = 1e2;
    double opt_margin = 1e-7;
    mutable CVec buf;
    mutable long evals = 0;

    double operator()(const std::vector<double>& x) const {
        ++evals;
        const double r = x[0];
        if (r <= 0.0) return 1e12 * (1.0 - r);
        if (buf.size() != static_cast<size_t>(sp->n)) buf.assign(static_cast<size_t>(sp->n), cplx(0.0));
        const CircleScan s = scan_circle(*sp, x, *pts, buf);
        double obj = -r;
        const double viol = std::max(0.0, s.max_rho + opt_margin);
        obj += W * viol * viol;
        if (sp->d.tag == DomainTag::PuncturedDisc) {
            if (s.min_mod < 1e-300) return obj + W * 1e6;
            const double vf = std::max(0.0, std::log(1e-8 / s.min_mod));
            obj += W * vf * vf;
            obj += 1e6 * std::abs(static_cast<double>(s.winding));
        }
        return obj;
    }
};

inline std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                                       std::vector<double> x0, const std::vector<double>& steps,
                                       int max_evals) {
    const size_t n = x0.size();
    const double nd = static_cast<double>(n);
    const double alpha = 1.0, beta = 1.0 + 2.0 / nd, gamma = 0.75 - 0.5 / nd, delta = 1.0 - 1.0 / nd;
    std::vector<std::vector<double>> S(n + 1, x0);
    std::vector<double> val(n + 1);
    for (size_t i = 0; i < n; ++i) S[i + 1][i] += steps[i];
    int evals = 0;
    for (size_t i = 0; i <= n; ++i) {
        val[i] = fn(S[i]);
        ++evals;
    }
    std::vector<size_t> idx(n + 1);
    for (size_t i = 0; i <= n; ++i) idx[i] = i;
    std::vector<double> cen(n), xr(n), xe(n), xc(n);
    while (evals < max_evals) {
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return val[a] < val[b]; });
        const size_t best = idx[0], worst = idx[n], second = idx[n - 1];
        if (val[worst] - val[best] < 1e-14 * (1.0 + std::abs(val[best]))) break;
        std::fill(cen.begin(), cen.end(), 0.0);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) cen[j] += S[idx[i]][j];
        for (size_t j = 0; j < n; ++j) cen[j] /= nd;
        for (size_t j = 0; j < n; ++j) xr[j] = cen[j] + alpha * (cen[j] - S[worst][j]);
        const double fr = fn(xr);
        ++evals;
        if (fr < val[best]) {
            for (size_t j = 0; j < n; ++j) xe[j] = cen[j] + beta * (xr[j] - cen[j]);
            const double fe = fn(xe);
            ++evals;
            if (fe < fr) {
                S[worst] = xe;
                val[worst] = fe;
            } else {
                S[worst] = xr;
                val[worst] = fr;
            }
            continue;
        }
        if (fr < val[second]) {
            S[worst] = xr;
            val[worst] = fr;
            continue;
        }
        if (fr < val[worst]) {
            for (size_t j = 0; j < n; ++j) xc[j] = cen[j] + gamma * (xr[j] - cen[j]);
            const double fc = fn(xc);
            ++evals;
            if (fc <= fr) {
                S[worst] = xc;
                val[worst] = fc;
                continue;
            }
        } else {
            for (size_t j = 0; j < n; ++j) xc[j] = cen[j] - gamma * (cen[j] - S[worst][j]);
            const double fc = fn(xc);
            ++evals;
            if (fc < val[worst]) {
                S[worst] = xc;
                val[worst] = fc;
                continue;
            }
        }
        for (size_t i = 1; i <= n; ++i) {
            const size_t ii = idx[i];
            for (size_t j = 0; j < n; ++j) S[ii][j] = S[best][j] + delta * (S[ii][j] - S[best][j]);
            val[ii] = fn(S[ii]);
            ++evals;
        }
    }
    size_t bi = 0;
    for (size_t i = 1; i <= n; ++i)
        if (val[i] < val[bi]) bi = i;
    return S[bi];
}

inline void compass_polish(const std::function<double(const std::vector<double>&)>& fn,
                           std::vector<double>& x, std::vector<double> steps, int max_evals) {
    double fx = fn(x);
    int evals = 1;
    while (evals < max_evals) {
        bool improved = false;
        for (size_t i = 0; i < x.size() && evals < max_evals; ++i) {
            if (steps[i] < 1e-13) continue;
            for (const double s : {steps[i], -steps[i]}) {
                std::vector<double> y = x;
                y[i] += s;
                const double fy = fn(y);
                ++evals;
                if (fy < fx) {
                    x = std::move(y);
                    fx = fy;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) {
            double mx = 0.0;
            for (double& s : steps) {
                s *= 0.5;
                mx = std::max(mx, s);
            }
            if (mx < 1e-13) break;
        }
    }
}

struct Certified {
    AnalyticDisc disc;
    double r = 0.0;
    JetResidualReport jet;
    ContainmentReport cont;
};

inline std::optional<Certified> certify_disc(const ModelDomain& d, const JetTarget& t,
                                             AnalyticDisc disc, const GridConfig& grid) {
    Certified c;
    c.jet = verify_jet(disc, t);
    if (!c.jet.ok(1e-9 * std::max(1.0, vec_abs(t.p) + std::abs(c.jet.r_ls) * vec_abs(t.v))))
        return std::nullopt;
    // Any admissible disc satisfies 1/r >= metric >= lower bound, so a radius
    // past 1/lower can only come from lattice blindness near the boundary.
    if (auto low = closed_form_lower(d, t)) {
        if (low->first > 0.0 && c.jet.r_ls > (1.0 + 1e-12) / low->first) return std::nullopt;
    }
    c.cont = contains_disc(d, disc, grid);
    if (!c.cont.interior_ok()) return std::nullopt;
    c.r = c.jet.r_ls;
    c.disc = std::move(disc);
    return c;
}

} // namespace detail

// Best admissible disc for the jet target; the returned value is an upper
// bound for the order-k metric (exact when a matching closed-form lower
// bound exists). Deterministic for fixed config, independent of thread count.
inline MetricEstimate upper_bound_search(const ModelDomain& d, const JetTarget& t,
                                         const SearchConfig& cfg = SearchConfig{},
                                         const std::vector<AnalyticDisc>& warm_starts = {}) {
    validate_target(d, t);
    const int n = d.n;
    detail::PolySpace sp{d, t, cfg.degree, n};

    struct Entry {
        detail::Certified c;
        std::string source;
    };
    std::vector<Entry> candidates;

    if (cfg.use_model_witnesses) {
        if (auto w = model_witness(d, t, cfg.grid.floor)) {
            if (auto c = detail::certify_disc(d, t, std::move(w->disc), cfg.grid))
                candidates.push_back({std::move(*c), "model-witness"});
        }
    }
    for (const AnalyticDisc& w : warm_starts) {
        if (w.n != n) continue;
        if (auto c = detail::certify_disc(d, t, w, cfg.grid))
            candidates.push_back({std::move(*c), "warm"});
    }

    // Certified ray baseline: constant-direction disc p + s v z^k.
    auto ray_disc = [&](double s) {
        std::vector<double> x(static_cast<size_t>(sp.dim()), 0.0);
        x[0] = s;
        return sp.make_disc(x);
    };
    auto ray_feasible = [&](double s) {
        return detail::certify_disc(d, t, ray_disc(s), cfg.grid).has_value();
    };
    double s_lo = 0.0, s_hi = 0.0;
    {
        double s = 0.5 / std::max(vec_abs(t.v), 1e-12);
        int guard = 0;
        while (!ray_feasible(s) && guard++ < 60) s *= 0.5;
        if (guard < 60) {
            s_lo = s;
            s_hi = s * 2.0;
            guard = 0;
            while (ray_feasible(s_hi) && guard++ < 60) {
                s_lo = s_hi;
                s_hi *= 2.0;
            }
            for (int it = 0; it < 40; ++it) {
                const double mid = 0.5 * (s_lo + s_hi);
                (ray_feasible(mid) ? s_lo : s_hi) = mid;
            }
            if (auto c = detail::certify_disc(d, t, ray_disc(s_lo), cfg.grid))
                candidates.push_back({std::move(*c), "ray"});
        }
    }

    // Coefficients of the best warm start expressible in the search space seed
    // restart 0, so chained sweeps resume where the previous degree stopped.
    const int nm_dim = sp.dim();
    std::optional<std::vector<double>> x_warm;
    {
        double best_warm = 0.0;
        for (const Entry& e : candidates) {
            if (e.source != "warm" || e.c.r <= best_warm) continue;
            std::vector<double> x(static_cast<size_t>(nm_dim), 0.0);
            x[0] = e.c.r;
            bool fits = true;
            for (int i = 0; i < n && fits; ++i) {
                const ComplexSeries& s = e.c.disc.jets[static_cast<size_t>(i)];
                for (int j = 1; j <= cfg.degree; ++j) {
                    const cplx cj = s.coeff(t.k + j);
                    const int base = 1 + 2 * (i * cfg.degree + (j - 1));
                    x[static_cast<size_t>(base)] = cj.real();
                    x[static_cast<size_t>(base) + 1] = cj.imag();
                }
                for (int j = t.k + cfg.degree + 1; j <= s.degree(); ++j)
                    if (std::abs(s.coeff(j)) > 1e-12) fits = false;
            }
            if (fits) {
                best_warm = e.c.r;
                x_warm = std::move(x);
            }
        }
    }

    // Penalized polynomial search, restart results merged in index order.
    std::vector<std::optional<Entry>> slots(static_cast<size_t>(std::max(cfg.restarts, 0)));
    if (cfg.restarts > 0 && s_lo > 0.0) {
        const std::vector<cplx> opt_pts = circle_points(cfg.grid.ladder.back(), cfg.opt_grid);
        const std::vector<cplx> fin_pts = circle_points(cfg.grid.ladder.back(), cfg.final_grid);
        const double vbar = vec_abs(t.v) / std::sqrt(static_cast<double>(n));
        auto run_restart = [&](int ri) {
            Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(ri) + 1);
            std::vector<double> x(static_cast<size_t>(nm_dim), 0.0);
            const double frac = 0.5 + 0.45 * rng.uniform();
            x[0] = frac * s_lo;
            const double cscale = 0.02 * s_lo * std::max(vbar, 1e-12);
            for (int i = 1; i < nm_dim; ++i) x[i] = cscale * rng.normal();
            if (ri == 0 && x_warm) x = *x_warm;

            std::vector<double> steps(static_cast<size_t>(nm_dim), 0.05 * s_lo * std::max(vbar, 1e-12));
            steps[0] = 0.1 * s_lo;
            for (size_t si = 0; si < cfg.stage_weights.size(); ++si) {
                detail::Objective obj;
                obj.sp = &sp;
                obj.pts = (si + 1 == cfg.stage_weights.size()) ? &fin_pts : &opt_pts;
                obj.W = cfg.stage_weights[si];
                obj.opt_margin = cfg.opt_margin;
                const int budget = cfg.evals_base + cfg.evals_per_dim * nm_dim;
                x = detail::nelder_mead([&obj](const std::vector<double>& y) { return obj(y); }, x,
                                        steps, budget);
                for (double& s : steps) s *= 0.5;
            }
            {
                detail::Objective obj;
                obj.sp = &sp;
                obj.pts = &fin_pts;
                obj.W = cfg.stage_weights.back();
                obj.opt_margin = cfg.opt_margin;
                std::vector<double> psteps(static_cast<size_t>(nm_dim),
                                           0.02 * s_lo * std::max(vbar, 1e-12));
                psteps[0] = 0.05 * s_lo;
                detail::compass_polish([&obj](const std::vector<double>& y) { return obj(y); }, x,
                                       psteps, cfg.polish_evals);
                if (ri == 0 && x_warm && obj(*x_warm) < obj(x)) x = *x_warm;
            }

            // Push rounds: alternate radius ascent at frozen trailing
            // coefficients with feasibility restoration at a locked radius.
            // Single-axis and penalty moves both stall on curved cancellation
            // ridges; the alternation walks them. Rounds scale with the space
            // dimension so richer spaces search deeper.
            if (cfg.push_rounds > 0) {
                const int rounds = cfg.push_rounds + nm_dim / 8;
                const bool punct = d.tag == DomainTag::PuncturedDisc;
                std::optional<double> r_cap;
                if (auto low = closed_form_lower(d, t))
                    if (low->first > 0.0) r_cap = (1.0 + 1e-12) / low->first;
                CVec pbuf(static_cast<size_t>(n));
                auto feasible = [&](const std::vector<double>& y) {
                    if (r_cap && y[0] > *r_cap) return false;
                    const detail::CircleScan s = detail::scan_circle(sp, y, fin_pts, pbuf);
                    if (s.max_rho > -cfg.opt_margin) return false;
                    if (punct) return s.min_mod > 1e-8 && s.winding == 0;
                    return true;
                };
                // Boundary-max functional; minimizing it at fixed radius
                // recenters the coefficients inside the feasible set.
                auto restore_obj = [&](const std::vector<double>& y) {
                    const detail::CircleScan s = detail::scan_circle(sp, y, fin_pts, pbuf);
                    double o = s.max_rho;
                    if (punct) {
                        if (s.min_mod < 1e-300) return 1e6;
                        o += std::max(0.0, std::log(1e-8 / s.min_mod));
                        o += 1e6 * std::abs(static_cast<double>(s.winding));
                    }
                    return o;
                };
                auto ascend_radius = [&](std::vector<double>& z) {
                    std::vector<double> y = z;
                    auto feas_r = [&](double r) {
                        y[0] = r;
                        return feasible(y);
                    };
                    if (feasible(z)) {
                        double lo = z[0], hi = z[0] * 2.0;
                        int guard = 0;
                        while (feas_r(hi) && guard++ < 20) {
                            lo = hi;
                            hi *= 2.0;
                        }
                        for (int it = 0; it < 30; ++it) {
                            const double mid = 0.5 * (lo + hi);
                            (feas_r(mid) ? lo : hi) = mid;
                        }
                        z[0] = lo;
                    } else if (feas_r(0.5 * z[0])) {
                        double lo = 0.5 * z[0], hi = z[0];
                        for (int it = 0; it < 30; ++it) {
                            const double mid = 0.5 * (lo + hi);
                            (feas_r(mid) ? lo : hi) = mid;
                        }
                        z[0] = lo;
                    }
                };
                for (int pr = 0; pr < rounds; ++pr) {
                    ascend_radius(x);
                    std::vector<double> rsteps(static_cast<size_t>(nm_dim),
                                               0.05 * x[0] * std::max(vbar, 1e-12));
                    rsteps[0] = 0.0; // radius locked during restoration
                    x = detail::nelder_mead(restore_obj, x, rsteps,
                                            cfg.push_evals + 10 * nm_dim);
                }
                // Final radius ascent against the certification lattice: the
                // rounds end deep inside the domain, and the coarse grid can
                // miss boundary maxima between its nodes, so the last edge
                // approach must use the same grid the certificate will use.
                auto cert_ok = [&](const std::vector<double>& y) {
                    if (r_cap && y[0] > *r_cap) return false;
                    const ContainmentReport rep = contains_disc(d, sp.make_disc(y), cfg.grid);
                    return rep.interior_ok() && rep.max_rho < -cfg.opt_margin;
                };
                if (cert_ok(x)) {
                    std::vector<double> y = x;
                    auto ok_r = [&](double r) {
                        y[0] = r;
                        return cert_ok(y);
                    };
                    double lo = x[0], hi = x[0] * 2.0;
                    int guard = 0;
                    while (ok_r(hi) && guard++ < 20) {
                        lo = hi;
                        hi *= 2.0;
                    }
                    for (int it = 0; it < 30; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        (ok_r(mid) ? lo : hi) = mid;
                    }
                    x[0] = lo;
                }
            }
            if (auto c = detail::certify_disc(d, t, sp.make_disc(x), cfg.grid))
                slots[static_cast<size_t>(ri)] = Entry{std::move(*c), "search"};
        };
        const int threads = std::min(resolve_threads(cfg.threads), std::max(cfg.restarts, 1));
        if (threads <= 1) {
            for (int ri = 0; ri < cfg.restarts; ++ri) run_restart(ri);
        } else {
            std::vector<std::thread> pool;
            for (int tid = 0; tid < threads; ++tid)
                pool.emplace_back([&, tid]() {
                    for (int ri = tid; ri < cfg.restarts; ri += threads) run_restart(ri);
                });
            for (auto& th : pool) th.join();
        }
    }
    for (auto& s : slots)
        if (s) candidates.push_back(std::move(*s));

    if (candidates.empty()) throw SearchFailure("upper_bound_search: no admissible disc found");

    size_t best = 0;
    for (size_t i = 1; i < candidates.size(); ++i)
        if (candidates[i].c.r > candidates[best].c.r) best = i;

    MetricEstimate est;
    est.r_best = candidates[best].c.r;
    est.value = 1.0 / est.r_best;
    est.witness = std::move(candidates[best].c.disc);
    est.witness_source = candidates[best].source;
    est.jet = candidates[best].c.jet;
    est.containment = candidates[best].c.cont;
    est.config = cfg;
    est.kind = BoundKind::Upper;
    if (auto low = closed_form_lower(d, t)) {
        est.lower_bound = low->first;
        if (low->second && std::abs(est.value - low->first) <= 1e-9 * std::max(low->first, 1e-12))
            est.kind = BoundKind::Exact;
    }
    return est;
}

// --- holomorphic transfer -------------------------------------------------------------

struct HoloMap {
    int n_in = 1, n_out = 1;
    std::string name;
    std::function<CVec(const CVec&)> eval;
    std::function<std::vector<CVec>(const CVec&)> differential; // rows dF_i/dz_j
};

inline HoloMap identity_map(int n) {
    HoloMap m;
    m.n_in = m.n_out = n;
    m.name = "identity";
    m.eval = [](const CVec& z) { return z; };
    m.differential = [n](const CVec&) {
        std::vector<CVec> J(static_cast<size_t>(n), CVec(static_cast<size_t>(n), cplx(0.0)));
        for (int i = 0; i < n; ++i) J[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
        return J;
    };
    return m;
}

inline HoloMap linear_map(const std::vector<CVec>& A, std::string name = "linear") {
    HoloMap m;
    m.n_out = static_cast<int>(A.size());
    m.n_in = static_cast<int>(A.at(0).size());
    m.name = std::move(name);
    m.eval = [A](const CVec& z) {
        CVec out(A.size(), cplx(0.0));
        for (size_t i = 0; i < A.size(); ++i)
            for (size_t j = 0; j < z.size(); ++j) out[i] += A[i][j] * z[j];
        return out;
    };
    m.differential = [A](const CVec&) { return A; };
    return m;
}

inline CVec apply_differential(const std::vector<CVec>& J, const CVec& v) {
    CVec out(J.size(), cplx(0.0));
    for (size_t i = 0; i < J.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += J[i][j] * v[j];
    return out;
}

struct PushforwardReport {
    CVec image_point;
    CVec image_vector;
    double chain_gap = 0.0; // k-th coefficient of F(f) vs dF(p) applied to the jet
    JetResidualReport jet;
    ContainmentReport containment;
    double value_bound = 0.0; // 1/r certified for the pushed disc
    bool ok() const { return chain_gap <= 1e-6 && jet.ok(1e-6) && containment.interior_ok(); }
};

// Pushes an order-k disc through F and certifies that the image disc carries
// the transferred jet, so the metric in the target domain is bounded by the
// source bound.
inline PushforwardReport holomorphic_pushforward_check(const HoloMap& F, const ModelDomain& dst,
                                                       const AnalyticDisc& f, int k,
                                                       const GridConfig& grid = GridConfig{}) {
    if (F.n_in != f.n) throw DimensionMismatch("pushforward: map and disc dimensions differ");
    if (dst.n != F.n_out) throw DimensionMismatch("pushforward: map range and domain dimensions differ");
    auto feval = f.eval;
    auto Feval = F.eval;
    AnalyticDisc g;
    g.n = F.n_out;
    g.order = k;
    g.name = F.name + "(" + f.name + ")";
    g.eval = [feval, Feval](cplx z) { return Feval(feval(z)); };

    // Quadrature jets of the composed map, one FFT per component.
    const int jmax = std::max(2 * k, 16);
    const int M = 1024;
    const double R = 0.4;
    std::vector<CVec> vals(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) {
        const double th = 2.0 * kPi * j / M;
        vals[static_cast<size_t>(j)] = g.eval(cplx(R * std::cos(th), R * std::sin(th)));
    }
    g.jets.clear();
    for (int i = 0; i < g.n; ++i) {
        CVec row(static_cast<size_t>(M));
        for (int j = 0; j < M; ++j) row[static_cast<size_t>(j)] = vals[static_cast<size_t>(j)][static_cast<size_t>(i)];
        const CVec bins = fft_forward(std::move(row));
        std::vector<cplx> coef(static_cast<size_t>(jmax) + 1);
        for (int j = 0; j <= jmax; ++j)
            coef[static_cast<size_t>(j)] = bins[static_cast<size_t>(j)] / (static_cast<double>(M) * std::pow(R, j));
        g.jets.emplace_back(std::move(coef));
    }

    PushforwardReport rep;
    const CVec p = f.value0();
    rep.image_point = F.eval(p);
    const auto J = F.differential(p);
    CVec ck(static_cast<size_t>(f.n));
    for (int i = 0; i < f.n; ++i) ck[static_cast<size_t>(i)] = f.jets.at(static_cast<size_t>(i)).coeff(k);
    const CVec pushed = apply_differential(J, ck);
    double gap = 0.0, scale = 1.0;
    for (int i = 0; i < g.n; ++i) {
        gap = std::max(gap, std::abs(g.jets[static_cast<size_t>(i)].coeff(k) - pushed[static_cast<size_t>(i)]));
        scale = std::max(scale, std::abs(pushed[static_cast<size_t>(i)]));
    }
    rep.chain_gap = gap / scale;

    JetTarget t;
    t.p = rep.image_point;
    t.k = k;
    // Direction: normalized pushed coefficient; the jet multiple recovers r.
    const double pn = vec_abs(pushed);
    if (pn < 1e-14) throw SingularityError("pushforward: differential annihilates the jet");
    t.v = pushed;
    for (cplx& c : t.v) c /= pn;
    rep.image_vector = t.v;
    rep.jet = verify_jet(g, t);
    rep.containment = contains_disc(dst, g, grid);
    rep.value_bound = rep.jet.r_ls > 0.0 ? 1.0 / rep.jet.r_ls : 0.0;
    return rep;
}

} // namespace koblab
