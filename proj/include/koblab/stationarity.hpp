#pragma once

#include <string>
#include <vector>
#include <cmath>

#include "catalog.hpp"
#include "domains.hpp"
#include "fft.hpp"
#include "holo.hpp"

namespace koblab {

// Boundary trace ζ^k ∂ρ(f(ζ)) on the unit circle, with gradient-singular
// points masked out (ellipsoid axis touches) and the whole trace normalized
// to unit sup norm.
struct BoundaryCovector {
    int M = 0;
    int k = 1;
    std::vector<CVec> trace; // [component][grid point]; masked entries are 0
    std::vector<char> mask;  // 1 = usable grid point
    int excluded = 0;
    double scale = 1.0; // sup norm divided out of the raw trace
};

inline BoundaryCovector boundary_covector(const ModelDomain& d, const AnalyticDisc& f, int k,
                                          int M = 4096, const GridConfig& grid = GridConfig{}) {
    if (!is_power_of_two(static_cast<size_t>(M)))
        throw InvalidParameter("boundary_covector: grid size must be a power of two");
    if (k < 1) throw InvalidParameter("boundary_covector: k must be positive");
    const ContainmentReport cont = contains_disc(d, f, grid);
    if (cont.verdict != Verdict::Attached)
        throw InvalidParameter("boundary_covector: disc is not attached to the boundary (verdict " +
                               std::string(verdict_name(cont.verdict)) + ")");

    BoundaryCovector bc;
    bc.M = M;
    bc.k = k;
    bc.mask.assign(static_cast<size_t>(M), 1);
    bc.trace.assign(static_cast<size_t>(d.n), CVec(static_cast<size_t>(M), cplx(0.0)));
    const CVec pts = circle_points(1.0, M);
    const bool ell = d.tag == DomainTag::Ellipsoid;
    for (int q = 0; q < M; ++q) {
        const CVec z = f.eval(pts[static_cast<size_t>(q)]);
        if (ell && std::abs(z[1]) < 1e-8) {
            bc.mask[static_cast<size_t>(q)] = 0;
            ++bc.excluded;
            continue;
        }
        const CVec g = grad_rho(d, z);
        const cplx zk = pow_int(pts[static_cast<size_t>(q)], k);
        for (int i = 0; i < d.n; ++i) bc.trace[static_cast<size_t>(i)][static_cast<size_t>(q)] = zk * g[static_cast<size_t>(i)];
    }
    if (bc.excluded == M)
        throw SingularityError("boundary_covector: gradient singular along the entire trace");
    double sup = 0.0;
    for (const CVec& row : bc.trace)
        for (cplx v : row) sup = std::max(sup, std::abs(v));
    if (sup <= 0.0) throw SingularityError("boundary_covector: trace vanishes identically");
    bc.scale = sup;
    for (CVec& row : bc.trace)
        for (cplx& v : row) v /= sup;
    return bc;
}

enum class StationarityVerdict { Stationary, NonStationaryWeight, LargeResidual };

inline const char* stationarity_verdict_name(StationarityVerdict v) {
    switch (v) {
        case StationarityVerdict::Stationary: return "stationary";
        case StationarityVerdict::NonStationaryWeight: return "non-stationary-weight";
        case StationarityVerdict::LargeResidual: return "large-residual";
    }
    return "?";
}

struct StationarityConfig {
    double tikhonov = 1e-12;
    double residual_tol = 1e-8;
    double margin_tol = 1e-6;
};

struct StationarityReport {
    double residual = 0.0;         // sup of negative-frequency content of c * trace
    std::vector<double> c;         // weight samples on the boundary grid, mean 1
    double positivity_margin = 0.0; // min of c over the grid
    int cutoff = 0;
    int excluded = 0;
    int grid_M = 0;
    StationarityVerdict verdict = StationarityVerdict::LargeResidual;
};

namespace detail {

// Solves the SPD system G x = b in place by Cholesky; G is row-major n x n.
inline std::vector<double> cholesky_solve(std::vector<double> G, std::vector<double> b) {
    const size_t n = b.size();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j <= i; ++j) {
            double s = G[i * n + j];
            for (size_t r = 0; r < j; ++r) s -= G[i * n + r] * G[j * n + r];
            if (i == j) {
                if (s <= 0.0) throw SingularityError("cholesky: matrix not positive definite");
                G[i * n + i] = std::sqrt(s);
            } else {
                G[i * n + j] = s / G[j * n + j];
            }
        }
    }
    for (size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (size_t j = 0; j < i; ++j) s -= G[i * n + j] * b[j];
        b[i] = s / G[i * n + i];
    }
    for (size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (size_t j = ii + 1; j < n; ++j) s -= G[j * n + ii] * b[j];
        b[ii] = s / G[ii * n + ii];
    }
    return b;
}

} // namespace detail

// Least-squares weight c = 1 + sum_{j<=F} (u_j cos j8 + w_j sin j8) killing
// the negative-frequency Fourier content of every component of c * trace.
// The modes act linearly through shifted spectra, so the optimum is a
// Tikhonov-regularized normal-equations solve; positivity is checked after.
inline StationarityReport solve_weight(const BoundaryCovector& bc, int k, int F,
                                       const StationarityConfig& cfg = StationarityConfig{}) {
    (void)k; // the order enters through the trace itself
    const int M = bc.M;
    if (F < 1) throw InvalidParameter("solve_weight: cutoff must be positive");
    F = std::min(F, M / 8);
    const int Q = M / 4; // negative modes -Q..-1; lower ones are aliasing guard
    const int P = 2 * F;

    std::vector<double> G(static_cast<size_t>(P) * P, 0.0), rhs(static_cast<size_t>(P), 0.0);
    std::vector<CVec> spectra(bc.trace.size());
    for (size_t i = 0; i < bc.trace.size(); ++i) spectra[i] = fft_forward(bc.trace[i]);
    auto coef = [M](const CVec& hat, int q) {
        return hat[static_cast<size_t>(((q % M) + M) % M)] / static_cast<double>(M);
    };

    std::vector<cplx> a(static_cast<size_t>(P));
    for (const CVec& hat : spectra) {
        for (int q = -Q; q <= -1; ++q) {
            for (int j = 1; j <= F; ++j) {
                const cplx lo = coef(hat, q - j), hi = coef(hat, q + j);
                a[static_cast<size_t>(2 * (j - 1))] = 0.5 * (lo + hi);
                a[static_cast<size_t>(2 * (j - 1) + 1)] = cplx(0.0, -0.5) * (lo - hi);
            }
            const cplx b = -coef(hat, q);
            for (int u = 0; u < P; ++u) {
                const cplx cu = std::conj(a[static_cast<size_t>(u)]);
                for (int v = u; v < P; ++v)
                    G[static_cast<size_t>(u) * P + v] += (cu * a[static_cast<size_t>(v)]).real();
                rhs[static_cast<size_t>(u)] += (cu * b).real();
            }
        }
    }
    for (int u = 0; u < P; ++u)
        for (int v = 0; v < u; ++v) G[static_cast<size_t>(u) * P + v] = G[static_cast<size_t>(v) * P + u];
    for (int u = 0; u < P; ++u) G[static_cast<size_t>(u) * P + u] += cfg.tikhonov;
    const std::vector<double> x = detail::cholesky_solve(std::move(G), std::move(rhs));

    StationarityReport rep;
    rep.cutoff = F;
    rep.excluded = bc.excluded;
    rep.grid_M = M;
    rep.c.resize(static_cast<size_t>(M));
    double cmin = 1e300;
    for (int q = 0; q < M; ++q) {
        const double th = 2.0 * kPi * q / M;
        double c = 1.0;
        for (int j = 1; j <= F; ++j)
            c += x[static_cast<size_t>(2 * (j - 1))] * std::cos(j * th) +
                 x[static_cast<size_t>(2 * (j - 1) + 1)] * std::sin(j * th);
        rep.c[static_cast<size_t>(q)] = c;
        cmin = std::min(cmin, c);
    }
    rep.positivity_margin = cmin;

    // Honest residual: transform the actual product c * trace.
    double resid = 0.0;
    for (const CVec& row : bc.trace) {
        CVec prod(static_cast<size_t>(M));
        for (int q = 0; q < M; ++q) prod[static_cast<size_t>(q)] = rep.c[static_cast<size_t>(q)] * row[static_cast<size_t>(q)];
        const CVec hat = fft_forward(std::move(prod));
        for (int q = -Q; q <= -1; ++q) resid = std::max(resid, std::abs(coef(hat, q)));
    }
    rep.residual = resid;

    if (rep.residual >= cfg.residual_tol)
        rep.verdict = StationarityVerdict::LargeResidual;
    else if (rep.positivity_margin <= cfg.margin_tol)
        rep.verdict = StationarityVerdict::NonStationaryWeight;
    else
        rep.verdict = StationarityVerdict::Stationary;
    return rep;
}

inline int default_cutoff(const EllipsoidKind1Params& p, int k) {
    return 2 * k * (p.r1 + p.r2 + 1) + 8;
}

// Certifies k-stationarity of the order-k lift of a first-kind extremal map.
inline StationarityReport verify_k_stationary(const EllipsoidKind1Params& p, int k, int M = 4096,
                                              int cutoff = -1,
                                              const StationarityConfig& cfg = StationarityConfig{}) {
    if (k < 1) throw InvalidParameter("verify_k_stationary: k must be positive");
    const AnalyticDisc f = compose_power(ellipsoid_kind1(p), k);
    const ModelDomain d = ModelDomain::ellipsoid(p.m);
    const BoundaryCovector bc = boundary_covector(d, f, k, M);
    const int F = cutoff > 0 ? cutoff : default_cutoff(p, k);
    return solve_weight(bc, k, F, cfg);
}

} // namespace koblab
