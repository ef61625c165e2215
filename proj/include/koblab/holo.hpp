#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>
#include <cmath>

#include "errors.hpp"
#include "series.hpp"
#include "fft.hpp"

namespace koblab {

inline cplx pow_int(cplx z, int k) {
    cplx acc(1.0);
    for (int i = 0; i < k; ++i) acc *= z;
    return acc;
}

inline cplx blaschke(cplx a, cplx z) {
    if (std::abs(a) >= 1.0) throw InvalidParameter("blaschke: |a| must be < 1");
    return (z - a) / (1.0 - std::conj(a) * z);
}

inline cplx cayley(cplx z) {
    const cplx den = z + cplx(0.0, 1.0);
    if (std::abs(den) < 1e-14) throw PoleError("cayley: pole at -i");
    return (z - cplx(0.0, 1.0)) / den;
}

// --- boundary grids and Fourier analysis -----------------------------------

struct BoundaryGrid {
    int M = 0;
    double r = 1.0;
    CVec samples;
};

inline CVec circle_points(double r, int M) {
    CVec z(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) {
        const double t = 2.0 * kPi * j / M;
        z[j] = cplx(r * std::cos(t), r * std::sin(t));
    }
    return z;
}

template <class F>
BoundaryGrid sample_boundary(F&& f, double r, int M) {
    if (!is_power_of_two(static_cast<size_t>(M)))
        throw InvalidParameter("sample_boundary: M must be a power of two");
    BoundaryGrid g;
    g.M = M;
    g.r = r;
    g.samples.reserve(static_cast<size_t>(M));
    for (const cplx& z : circle_points(r, M)) g.samples.push_back(f(z));
    return g;
}

// Coefficients for frequencies -M/2 .. M/2-1, normalized so that sampling a
// polynomial of degree < M/2 at r = 1 reproduces its coefficients exactly.
struct FourierCoefficients {
    int M = 0;
    double r = 1.0;
    CVec bins; // raw DFT bins, length M

    cplx at(int q) const {
        if (q < -M / 2 || q >= M / 2) throw OutOfRange("FourierCoefficients::at: frequency out of range");
        const cplx raw = bins[static_cast<size_t>((q % M + M) % M)];
        return raw / (static_cast<double>(M) * std::pow(r, q));
    }
};

inline FourierCoefficients fourier_coefficients(const BoundaryGrid& g) {
    FourierCoefficients out;
    out.M = g.M;
    out.r = g.r;
    out.bins = fft_forward(g.samples);
    return out;
}

// --- analytic discs ----------------------------------------------------------

// Map from the unit disc into C^n. The evaluator is the authoritative value
// source on lattices; the per-component Taylor series at 0 is the
// authoritative jet source (coded analytically by every constructor).
struct AnalyticDisc {
    int n = 1;
    std::function<CVec(cplx)> eval;
    std::vector<ComplexSeries> jets;
    int order = 1; // declared vanishing order of f - f(0)
    std::string name;

    CVec operator()(cplx z) const { return eval(z); }

    CVec value0() const {
        CVec v(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) v[i] = jets[i].coeff(0);
        return v;
    }

    CVec jet(int j) const {
        CVec v(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) v[i] = jets[i].coeff(j);
        return v;
    }
};

inline AnalyticDisc make_series_disc(std::vector<ComplexSeries> comps, std::string name = "series") {
    AnalyticDisc d;
    d.n = static_cast<int>(comps.size());
    d.jets = std::move(comps);
    d.name = std::move(name);
    auto jets = d.jets;
    d.eval = [jets](cplx z) {
        CVec v;
        v.reserve(jets.size());
        for (const auto& s : jets) v.push_back(s.eval(z));
        return v;
    };
    return d;
}

// g(z) = f(z^k); jets spread by k, declared order multiplied by k.
inline AnalyticDisc compose_power(const AnalyticDisc& f, int k) {
    if (k < 1) throw InvalidParameter("compose_power: k must be positive");
    AnalyticDisc g;
    g.n = f.n;
    g.order = f.order * k;
    g.name = f.name + "(z^" + std::to_string(k) + ")";
    auto base = f.eval;
    g.eval = [base, k](cplx z) { return base(pow_int(z, k)); };
    g.jets.reserve(f.jets.size());
    for (const auto& s : f.jets) g.jets.push_back(series_stretch(s, k));
    return g;
}

// --- zero-free roots and powers ---------------------------------------------

// g = anchor * exp(s * (L(z) - L(0))) with L a branch of log f continued
// radially from 0. Well defined and single-valued when f is zero-free on the
// closed sub-disc swept by the evaluation points.
class HoloPower {
  public:
    HoloPower(std::function<cplx(cplx)> base, double s, cplx anchor, double min_mod = 1e-11)
        : base_(std::move(base)), s_(s), anchor_(anchor), min_mod_(min_mod) {
        f0_ = base_(cplx(0.0));
        scale_ = std::max(1.0, std::abs(f0_));
        if (std::abs(f0_) < min_mod_ * scale_)
            throw BranchError("holomorphic power: base vanishes at 0");
        if (std::abs(std::abs(anchor_) - std::pow(std::abs(f0_), s_)) >
            1e-8 * std::max(1.0, std::pow(std::abs(f0_), s_)))
            throw AnchorError("holomorphic power: |anchor| != |f(0)|^s");
        log_f0_ = std::log(f0_);
    }

    cplx operator()(cplx z) const { return anchor_ * std::exp(s_ * (log_along(z) - log_f0_)); }

  private:
    // Continued log f along the straight segment from 0 to z.
    cplx log_along(cplx z) const {
        cplx L = log_f0_;
        cplx w_prev = f0_;
        double t = 0.0;
        double h = 0.0625;
        int halvings = 0;
        while (t < 1.0) {
            const double t2 = std::min(1.0, t + h);
            const cplx w = base_(t2 * z);
            if (std::abs(w) < min_mod_ * scale_)
                throw BranchError("holomorphic power: base vanishes along the path");
            const cplx step = std::log(w / w_prev);
            if (std::abs(step.imag()) > 0.5) {
                h *= 0.5;
                if (++halvings > 60) throw BranchError("holomorphic power: branch tracking failed");
                continue;
            }
            L += step;
            w_prev = w;
            t = t2;
            if (std::abs(step.imag()) < 0.1 && h < 0.125) h *= 1.5;
        }
        return L;
    }

    std::function<cplx(cplx)> base_;
    double s_;
    cplx anchor_;
    double min_mod_;
    cplx f0_;
    cplx log_f0_;
    double scale_;
};

// q-th root of a zero-free function with the branch pinned by the anchor.
inline HoloPower zero_free_root(std::function<cplx(cplx)> f, int q, cplx anchor) {
    if (q < 1) throw InvalidParameter("zero_free_root: q must be positive");
    const cplx f0 = f(cplx(0.0));
    if (std::abs(pow_int(anchor, q) - f0) > 1e-8 * std::max(1.0, std::abs(f0)))
        throw AnchorError("zero_free_root: anchor^q != f(0)");
    return HoloPower(std::move(f), 1.0 / static_cast<double>(q), anchor);
}

inline HoloPower holomorphic_power(std::function<cplx(cplx)> f, double s, cplx anchor) {
    return HoloPower(std::move(f), s, anchor);
}

// --- winding and Cauchy jets -------------------------------------------------

// Winding number of a closed sample loop around 0 (argument principle on the
// sampled circle). Samples must stay away from 0 and be dense enough that
// consecutive phase steps are < pi.
inline int winding_number(const CVec& loop) {
    double total = 0.0;
    const size_t M = loop.size();
    for (size_t j = 0; j < M; ++j) {
        const cplx a = loop[j];
        const cplx b = loop[(j + 1) % M];
        if (std::abs(a) == 0.0 || std::abs(b) == 0.0)
            throw BranchError("winding_number: sample hits 0");
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

// Taylor coefficients of a scalar evaluator at z0 up to degree jmax, by
// trapezoidal Cauchy quadrature on a circle of radius R (spectrally accurate).
template <class F>
std::vector<cplx> cauchy_taylor(F&& f, cplx z0, int jmax, double R, int M) {
    std::vector<cplx> vals(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) {
        const double t = 2.0 * kPi * j / M;
        vals[j] = f(z0 + cplx(R * std::cos(t), R * std::sin(t)));
    }
    auto bins = fft_forward(std::move(vals));
    std::vector<cplx> out(static_cast<size_t>(jmax) + 1);
    for (int j = 0; j <= jmax; ++j)
        out[j] = bins[static_cast<size_t>(j)] / (static_cast<double>(M) * std::pow(R, j));
    return out;
}

} // namespace koblab
