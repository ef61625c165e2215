#pragma once

#include <complex>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace koblab {

inline bool is_power_of_two(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place radix-2 FFT; sign = -1 gives X_q = sum_j x_j e^{-2pi i j q / M}
// (unnormalized), sign = +1 the unnormalized inverse.
inline void fft_inplace(std::vector<cplx>& a, int sign) {
    const size_t n = a.size();
    if (!is_power_of_two(n)) throw InvalidParameter("fft: size must be a power of two");
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

inline std::vector<cplx> fft_forward(std::vector<cplx> a) {
    fft_inplace(a, -1);
    return a;
}

inline std::vector<cplx> fft_inverse(std::vector<cplx> a) {
    fft_inplace(a, +1);
    const double inv = 1.0 / static_cast<double>(a.size());
    for (auto& v : a) v *= inv;
    return a;
}

} // namespace koblab
