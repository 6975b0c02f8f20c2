#pragma once

#include "bns/operators.hpp"

namespace bns {

// ---------------------------------------------------------------------------
// Dyadic frequency decomposition. The radial cutoff chi is a fixed C-infinity
// bump built from the exp(-1/x) step: chi = 1 for r <= 1, 0 for r >= 2.
// Block j has symbol chi(|m|/2^{j+1}) - chi(|m|/2^j) in integer-frequency
// units, so its support lies in the open annulus (2^j, 2^{j+2}) and blocks
// telescope to a partition of unity on 2^{jmin+1} <= |m| <= 2^{jmax+1}.
// ---------------------------------------------------------------------------

namespace lp {

inline double smooth_step(double x) {
    // 0 for x <= 0, 1 for x >= 1, strictly monotone in between.
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

/// Radial low-pass profile: 1 on [0,1], 0 on [2,inf).
inline double chi(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    return 1.0 - smooth_step(r - 1.0);
}

/// Symbol of dyadic block j at integer-frequency magnitude m.
inline double block_symbol(int j, double m) {
    const double s = std::ldexp(1.0, -j);  // 2^{-j}
    return chi(m * s * 0.5) - chi(m * s);
}

}  // namespace lp

inline void check_lp_index(const Grid3& g, int j) {
    if (j < g.lp_jmin() || j > g.lp_jmax())
        throw InvalidArgument("lp_block: dyadic index outside resolvable range [" +
                              std::to_string(g.lp_jmin()) + "," +
                              std::to_string(g.lp_jmax()) + "]");
}

/// Frequency-localized piece of f at dyadic scale j.
inline VectorField lp_block(const VectorField& f, int j) {
    check_lp_index(f.grid, j);
    const double ku = f.grid.k_unit();
    return apply_mode_functor(f, [j, ku](double kx, double ky, double kz) {
        const double m = std::sqrt(kx * kx + ky * ky + kz * kz) / ku;
        return cplx(lp::block_symbol(j, m));
    });
}

/// Physical wavenumber of dyadic scale j (used as the scale factor 2^{js}
/// in dimensional form).
inline double dyadic_wavenumber(const Grid3& g, int j) {
    return g.k_unit() * std::ldexp(1.0, j);
}

/// L2 norm of block j of a symmetric tensor (Frobenius, via Parseval).
inline double lp_block_l2_tensor(const SymTensorField& T, int j) {
    check_lp_index(T.grid, j);
    const Grid3& g = T.grid;
    const double ku = g.k_unit();
    long double acc = 0.0L;
    for (int ix = 0; ix < g.n; ++ix) {
        const double mx = g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double my = g.mode(iy);
            const std::size_t base = g.index(ix, iy, 0);
            for (int iz = 0; iz < g.n; ++iz) {
                const double mz = g.mode(iz);
                const double m = std::sqrt(mx * mx + my * my + mz * mz);
                const double s = lp::block_symbol(j, m);
                if (s == 0.0) continue;
                const std::size_t i = base + iz;
                double q = 0.0;
                for (int c = 0; c < 3; ++c) q += std::norm(T.c[c][i]);
                for (int c = 3; c < 6; ++c) q += 2.0 * std::norm(T.c[c][i]);
                acc += s * s * q;
            }
        }
    }
    (void)ku;
    return std::sqrt(static_cast<double>(acc));
}

}  // namespace bns
