#pragma once

#include "bns/besov.hpp"
#include "bns/fft.hpp"
#include "bns/operators.hpp"

namespace testutil {

using namespace bns;

/// cos(m.x) * e_dir as a spectral field (coefficients 1/2 at +-m).
inline VectorField cosine_mode(const Grid3& g, int mx, int my, int mz, int dir,
                               double amp = 1.0) {
    VectorField f(g);
    auto wrap = [&](int m) { return (m % g.n + g.n) % g.n; };
    f.c[dir][g.index(wrap(mx), wrap(my), wrap(mz))] = cplx(0.5 * amp);
    f.c[dir][g.index(wrap(-mx), wrap(-my), wrap(-mz))] = cplx(0.5 * amp);
    return f;
}

/// sin(m.x) * e_dir.
inline VectorField sine_mode(const Grid3& g, int mx, int my, int mz, int dir,
                             double amp = 1.0) {
    VectorField f(g);
    auto wrap = [&](int m) { return (m % g.n + g.n) % g.n; };
    f.c[dir][g.index(wrap(mx), wrap(my), wrap(mz))] = cplx(0.0, -0.5 * amp);
    f.c[dir][g.index(wrap(-mx), wrap(-my), wrap(-mz))] = cplx(0.0, 0.5 * amp);
    return f;
}

/// Hermitian random band-limited field, modes 0 < |m| <= mmax.
inline VectorField random_field(const Grid3& g, std::uint64_t seed, int mmax,
                                int mmin = 1) {
    VectorField f(g);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                const int mx = g.mode(ix), my = g.mode(iy), mz = g.mode(iz);
                if (g.is_nyquist(ix) || g.is_nyquist(iy) || g.is_nyquist(iz))
                    continue;
                const double m2 = double(mx) * mx + double(my) * my + double(mz) * mz;
                if (m2 < double(mmin) * mmin || m2 > double(mmax) * mmax) continue;
                if (mz < 0 || (mz == 0 && (my < 0 || (my == 0 && mx < 0)))) continue;
                std::uint64_t st = mode_key(seed, mx, my, mz);
                const std::size_t i = g.index(ix, iy, iz);
                const std::size_t j =
                    g.index((g.n - ix) % g.n, (g.n - iy) % g.n, (g.n - iz) % g.n);
                for (int d = 0; d < 3; ++d) {
                    const cplx v(normal01(st), normal01(st));
                    f.c[d][i] = v;
                    f.c[d][j] = std::conj(v);
                }
            }
    clear_zero_mode(f);
    return f;
}

/// Divergence-free random band-limited field.
inline VectorField random_divfree(const Grid3& g, std::uint64_t seed, int mmax,
                                  int mmin = 1) {
    return leray_project(random_field(g, seed, mmax, mmin));
}

inline double rel_err(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline double field_rel_err(const VectorField& a, const VectorField& b) {
    const double d = l2_norm(a - b);
    const double scale = std::max(l2_norm(a), l2_norm(b));
    return scale == 0.0 ? 0.0 : d / scale;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testutil
