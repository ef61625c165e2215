#pragma once

#include <complex>
#include <vector>
#include <string>
#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace koblab {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline double factorial(int n) {
    if (n < 0 || n > 170) throw OutOfRange("factorial: n out of double range");
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Truncated power series sum c_j z^j, j = 0..degree. Coefficient c_0 is the
// value at 0 exactly; the k-th derivative at 0 is k!*c_k exactly.
struct ComplexSeries {
    std::vector<cplx> c;

    ComplexSeries() : c(1, cplx(0.0)) {}
    explicit ComplexSeries(std::vector<cplx> coeffs) : c(std::move(coeffs)) {
        if (c.empty()) c.assign(1, cplx(0.0));
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    cplx coeff(int j) const { return (j >= 0 && j <= degree()) ? c[j] : cplx(0.0); }

    cplx eval(cplx z) const {
        cplx acc = 0.0;
        for (int j = degree(); j >= 0; --j) acc = acc * z + c[j];
        return acc;
    }
};

inline cplx eval_series(const ComplexSeries& s, cplx z) { return s.eval(z); }

inline cplx kth_derivative_at_zero(const ComplexSeries& s, int k) {
    if (k < 0 || k > s.degree()) throw OutOfRange("kth_derivative_at_zero: k exceeds degree");
    return factorial(k) * s.c[k];
}

inline ComplexSeries series_truncate(const ComplexSeries& a, int deg) {
    std::vector<cplx> c(static_cast<size_t>(deg) + 1, cplx(0.0));
    for (int j = 0; j <= deg; ++j) c[j] = a.coeff(j);
    return ComplexSeries(std::move(c));
}

inline ComplexSeries series_add(const ComplexSeries& a, const ComplexSeries& b) {
    const int deg = std::max(a.degree(), b.degree());
    std::vector<cplx> c(static_cast<size_t>(deg) + 1);
    for (int j = 0; j <= deg; ++j) c[j] = a.coeff(j) + b.coeff(j);
    return ComplexSeries(std::move(c));
}

inline ComplexSeries series_scale(const ComplexSeries& a, cplx s) {
    std::vector<cplx> c(a.c);
    for (auto& v : c) v *= s;
    return ComplexSeries(std::move(c));
}

// Convolution product; deg < 0 keeps the full degree a.degree()+b.degree().
inline ComplexSeries series_mul(const ComplexSeries& a, const ComplexSeries& b, int deg = -1) {
    if (deg < 0) deg = a.degree() + b.degree();
    std::vector<cplx> c(static_cast<size_t>(deg) + 1, cplx(0.0));
    for (int i = 0; i <= std::min(deg, a.degree()); ++i) {
        const cplx ai = a.c[i];
        if (ai == cplx(0.0)) continue;
        const int jmax = std::min(deg - i, b.degree());
        for (int j = 0; j <= jmax; ++j) c[i + j] += ai * b.c[j];
    }
    return ComplexSeries(std::move(c));
}

// Multiply by z^k (reindex up).
inline ComplexSeries series_shift(const ComplexSeries& a, int k) {
    std::vector<cplx> c(a.c.size() + static_cast<size_t>(k), cplx(0.0));
    for (size_t j = 0; j < a.c.size(); ++j) c[j + k] = a.c[j];
    return ComplexSeries(std::move(c));
}

// Substitute z -> z^k (spreads coefficients).
inline ComplexSeries series_stretch(const ComplexSeries& a, int k) {
    std::vector<cplx> c(static_cast<size_t>(a.degree()) * k + 1, cplx(0.0));
    for (int j = 0; j <= a.degree(); ++j) c[static_cast<size_t>(j) * k] = a.c[j];
    return ComplexSeries(std::move(c));
}

inline ComplexSeries series_derivative(const ComplexSeries& a) {
    if (a.degree() == 0) return ComplexSeries();
    std::vector<cplx> c(a.c.size() - 1);
    for (size_t j = 1; j < a.c.size(); ++j) c[j - 1] = static_cast<double>(j) * a.c[j];
    return ComplexSeries(std::move(c));
}

// log of a series with nonzero constant term; branch = principal at c_0.
inline ComplexSeries series_log(const ComplexSeries& f, int deg) {
    const cplx f0 = f.coeff(0);
    if (std::abs(f0) == 0.0) throw BranchError("series_log: zero constant term");
    std::vector<cplx> L(static_cast<size_t>(deg) + 1, cplx(0.0));
    L[0] = std::log(f0);
    // (j+1) f0 L_{j+1} = (j+1) f_{j+1} - sum_{i=0}^{j-1} (i+1) L_{i+1} f_{j-i}
    for (int j = 0; j < deg; ++j) {
        cplx acc = static_cast<double>(j + 1) * f.coeff(j + 1);
        for (int i = 0; i < j; ++i) acc -= static_cast<double>(i + 1) * L[i + 1] * f.coeff(j - i);
        L[j + 1] = acc / (static_cast<double>(j + 1) * f0);
    }
    return ComplexSeries(std::move(L));
}

inline ComplexSeries series_exp(const ComplexSeries& g, int deg) {
    std::vector<cplx> E(static_cast<size_t>(deg) + 1, cplx(0.0));
    E[0] = std::exp(g.coeff(0));
    // j E_j = sum_{i=1}^{j} i g_i E_{j-i}
    for (int j = 1; j <= deg; ++j) {
        cplx acc = 0.0;
        for (int i = 1; i <= j; ++i) acc += static_cast<double>(i) * g.coeff(i) * E[j - i];
        E[j] = acc / static_cast<double>(j);
    }
    return ComplexSeries(std::move(E));
}

// f^s with the branch pinned by an explicit anchor value for f(0)^s.
inline ComplexSeries series_pow_anchored(const ComplexSeries& f, double s, cplx anchor, int deg) {
    ComplexSeries L = series_log(f, deg);
    L.c[0] = 0.0; // exp(s*(L - L_0)) scaled by the anchor
    ComplexSeries E = series_exp(series_scale(L, s), deg);
    return series_scale(E, anchor);
}

// Composition h = outer(inner) requiring inner(0) = 0.
inline ComplexSeries series_compose(const ComplexSeries& outer, const ComplexSeries& inner, int deg) {
    if (std::abs(inner.coeff(0)) > 0.0)
        throw InvalidParameter("series_compose: inner series must vanish at 0");
    ComplexSeries h(std::vector<cplx>{outer.coeff(outer.degree())});
    for (int i = outer.degree() - 1; i >= 0; --i) {
        h = series_mul(h, inner, deg);
        h.c[0] += outer.c[i];
    }
    return series_truncate(h, deg);
}

// Structural vanishing order of f - f(0): index of the first coefficient
// above 1e-10 * max(1, max_i |c_i|); -1 encodes the identically-zero tail.
inline int vanishing_order(const ComplexSeries& f) {
    double peak = 1.0;
    for (int j = 1; j <= f.degree(); ++j) peak = std::max(peak, std::abs(f.c[j]));
    const double tol = 1e-10 * peak;
    for (int j = 1; j <= f.degree(); ++j)
        if (std::abs(f.c[j]) >= tol) return j;
    return -1;
}

inline constexpr int kSeriesDegreeDefault = 48;

inline ComplexSeries series_sub(const ComplexSeries& a, const ComplexSeries& b) {
    return series_add(a, series_scale(b, cplx(-1.0)));
}

// 1/(1 - c z) as a truncated series.
inline ComplexSeries geom_series(cplx c, int deg = kSeriesDegreeDefault) {
    std::vector<cplx> v(static_cast<size_t>(deg) + 1);
    cplx p(1.0);
    for (int j = 0; j <= deg; ++j) {
        v[j] = p;
        p *= c;
    }
    return ComplexSeries(std::move(v));
}

// log(1 - c z), principal branch; the factor has positive real part on D
// whenever |c| < 1.
inline ComplexSeries log_one_minus(cplx c, int deg = kSeriesDegreeDefault) {
    std::vector<cplx> v(static_cast<size_t>(deg) + 1, cplx(0.0));
    cplx p = c;
    for (int j = 1; j <= deg; ++j) {
        v[j] = -p / static_cast<double>(j);
        p *= c;
    }
    return ComplexSeries(std::move(v));
}

} // namespace koblab
