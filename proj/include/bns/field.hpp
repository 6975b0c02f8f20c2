#pragma once

#include <algorithm>
#include <optional>
#include <utility>

#include "bns/core.hpp"

namespace bns {

// ---------------------------------------------------------------------------
// Spectral fields. Coefficients live on the full n^3 cube in FFT frequency
// order, normalized so that f(x) = sum_k fhat(k) exp(i k.x). Physical fields
// are real, so coefficients are Hermitian-symmetric and the zero mode is kept
// at exactly zero (homogeneous-norm convention).
// ---------------------------------------------------------------------------

struct ScalarField {
    Grid3 grid;
    std::vector<cplx> a;

    ScalarField() = default;
    explicit ScalarField(const Grid3& g) : grid(g), a(g.size(), cplx(0.0)) {}

    cplx& operator()(int ix, int iy, int iz) { return a[grid.index(ix, iy, iz)]; }
    const cplx& operator()(int ix, int iy, int iz) const {
        return a[grid.index(ix, iy, iz)];
    }
};

struct VectorField {
    Grid3 grid;
    std::array<std::vector<cplx>, 3> c;
    std::optional<double> time;

    VectorField() = default;
    explicit VectorField(const Grid3& g) : grid(g) {
        for (auto& comp : c) comp.assign(g.size(), cplx(0.0));
    }

    std::size_t size() const { return grid.size(); }
};

/// Symmetric rank-2 tensor field; component order xx, yy, zz, xy, xz, yz.
struct SymTensorField {
    Grid3 grid;
    std::array<std::vector<cplx>, 6> c;

    SymTensorField() = default;
    explicit SymTensorField(const Grid3& g) : grid(g) {
        for (auto& comp : c) comp.assign(g.size(), cplx(0.0));
    }

    static constexpr std::array<std::pair<int, int>, 6> index_pairs() {
        return {{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};
    }
};

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

inline void check_same_grid(const VectorField& f, const VectorField& g) {
    if (f.grid != g.grid) throw InvalidArgument("fields live on different grids");
}

inline VectorField& operator*=(VectorField& f, double s) {
    for (auto& comp : f.c)
        for (auto& v : comp) v *= s;
    return f;
}

inline VectorField operator*(double s, const VectorField& f) {
    VectorField out = f;
    out *= s;
    return out;
}

inline VectorField& operator+=(VectorField& f, const VectorField& g) {
    check_same_grid(f, g);
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < f.c[d].size(); ++i) f.c[d][i] += g.c[d][i];
    return f;
}

inline VectorField& operator-=(VectorField& f, const VectorField& g) {
    check_same_grid(f, g);
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < f.c[d].size(); ++i) f.c[d][i] -= g.c[d][i];
    return f;
}

inline VectorField operator+(const VectorField& f, const VectorField& g) {
    VectorField out = f;
    out += g;
    return out;
}

inline VectorField operator-(const VectorField& f, const VectorField& g) {
    VectorField out = f;
    out -= g;
    return out;
}

/// f += s*g
inline void axpy(VectorField& f, double s, const VectorField& g) {
    check_same_grid(f, g);
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < f.c[d].size(); ++i) f.c[d][i] += s * g.c[d][i];
}

// ---------------------------------------------------------------------------
// Invariant measurements (all exact spectral sums, no transforms)
// ---------------------------------------------------------------------------

/// Squared l2 mass of the coefficients = squared L2 norm under the
/// normalized measure (Parseval).
inline double coeff_l2_sq(const VectorField& f) {
    long double acc = 0.0L;
    for (const auto& comp : f.c)
        for (const cplx& v : comp) acc += std::norm(v);
    return static_cast<double>(acc);
}

inline double l2_norm(const VectorField& f) { return std::sqrt(coeff_l2_sq(f)); }

/// Squared L2 norm of the gradient: sum |k|^2 |fhat|^2.
inline double grad_l2_sq(const VectorField& f) {
    const Grid3& g = f.grid;
    const double ku = g.k_unit();
    long double acc = 0.0L;
    for (int ix = 0; ix < g.n; ++ix) {
        const double kx = ku * g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = ku * g.mode(iy);
            std::size_t base = g.index(ix, iy, 0);
            for (int iz = 0; iz < g.n; ++iz) {
                const double kz = ku * g.mode(iz);
                const double k2 = kx * kx + ky * ky + kz * kz;
                double m = 0.0;
                for (int d = 0; d < 3; ++d) m += std::norm(f.c[d][base + iz]);
                acc += k2 * m;
            }
        }
    }
    return static_cast<double>(acc);
}

/// Largest |fhat(-k) - conj(fhat(k))| over all modes and components.
inline double hermitian_error(const VectorField& f) {
    const Grid3& g = f.grid;
    double worst = 0.0;
    for (int ix = 0; ix < g.n; ++ix) {
        const int jx = (g.n - ix) % g.n;
        for (int iy = 0; iy < g.n; ++iy) {
            const int jy = (g.n - iy) % g.n;
            for (int iz = 0; iz < g.n; ++iz) {
                const int jz = (g.n - iz) % g.n;
                const std::size_t i = g.index(ix, iy, iz);
                const std::size_t j = g.index(jx, jy, jz);
                for (int d = 0; d < 3; ++d) {
                    const double e = std::abs(f.c[d][j] - std::conj(f.c[d][i]));
                    worst = std::max(worst, e);
                }
            }
        }
    }
    return worst;
}

/// max_k |k.fhat(k)| / (|k| |fhat(k)|), the relative divergence content.
/// Modes below 1e-8 of the peak amplitude hold under 1e-16 of the energy and
/// are rounding noise on this per-mode measure, so they are skipped.
inline double divergence_ratio(const VectorField& f) {
    const Grid3& g = f.grid;
    const double ku = g.k_unit();
    double peak = 0.0;
    for (const auto& comp : f.c)
        for (const cplx& v : comp) peak = std::max(peak, std::abs(v));
    const double floor_mag = 1e-8 * peak;
    double worst = 0.0;
    for (int ix = 0; ix < g.n; ++ix) {
        const double kx = ku * g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = ku * g.mode(iy);
            std::size_t base = g.index(ix, iy, 0);
            for (int iz = 0; iz < g.n; ++iz) {
                const double kz = ku * g.mode(iz);
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 == 0.0) continue;
                const std::size_t i = base + iz;
                const cplx dot = kx * f.c[0][i] + ky * f.c[1][i] + kz * f.c[2][i];
                const double mag = std::sqrt(std::norm(f.c[0][i]) + std::norm(f.c[1][i]) +
                                             std::norm(f.c[2][i]));
                if (mag <= floor_mag) continue;
                worst = std::max(worst, std::abs(dot) / (std::sqrt(k2) * mag));
            }
        }
    }
    return worst;
}

inline double zero_mode_magnitude(const VectorField& f) {
    double m = 0.0;
    for (int d = 0; d < 3; ++d) m = std::max(m, std::abs(f.c[d][0]));
    return m;
}

inline void clear_zero_mode(VectorField& f) {
    for (int d = 0; d < 3; ++d) f.c[d][0] = cplx(0.0);
}

/// Zero out Nyquist planes (idx == n/2 on any axis). Kept empty throughout so
/// Hermitian pairing and exact differentiation never see the ambiguous mode.
inline void clear_nyquist(VectorField& f) {
    const Grid3& g = f.grid;
    const int ny = g.n / 2;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                if (ix != ny && iy != ny && iz != ny) continue;
                const std::size_t i = g.index(ix, iy, iz);
                for (int d = 0; d < 3; ++d) f.c[d][i] = cplx(0.0);
            }
}

/// Largest coefficient magnitude over all components.
inline double max_coeff(const VectorField& f) {
    double m = 0.0;
    for (const auto& comp : f.c)
        for (const cplx& v : comp) m = std::max(m, std::abs(v));
    return m;
}

/// Largest coefficient magnitude on the shell of integer-frequency magnitude
/// in (limit-1, limit]; used by the spectral-tail resolution guard.
inline double tail_amplitude(const VectorField& f, int limit) {
    const Grid3& g = f.grid;
    const double lo2 = static_cast<double>(limit - 1) * (limit - 1);
    const double hi2 = static_cast<double>(limit) * limit;
    double m = 0.0;
    for (int ix = 0; ix < g.n; ++ix) {
        const double mx = g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double my = g.mode(iy);
            std::size_t base = g.index(ix, iy, 0);
            for (int iz = 0; iz < g.n; ++iz) {
                const double mz = g.mode(iz);
                const double m2 = mx * mx + my * my + mz * mz;
                if (m2 <= lo2 || m2 > hi2) continue;
                for (int d = 0; d < 3; ++d)
                    m = std::max(m, std::abs(f.c[d][base + iz]));
            }
        }
    }
    return m;
}

}  // namespace bns
