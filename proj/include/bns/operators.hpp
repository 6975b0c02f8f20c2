#pragma once

#include <functional>

#include "bns/fft.hpp"

namespace bns {

// ---------------------------------------------------------------------------
// Constant-coefficient operators as Fourier multipliers. Every operator below
// is diagonal per mode (the divergence-free projector mixes components but is
// still pointwise in k). The zero mode is always mapped to zero.
// ---------------------------------------------------------------------------

/// Scalar multiplier symbol: k -> complex factor. Value at k=0 is defined 0.
struct ScalarSymbol {
    std::function<cplx(double kx, double ky, double kz)> eval;
    ScalarSymbol() = default;
    template <class F>
    ScalarSymbol(F&& f) : eval(std::forward<F>(f)) {}
};

namespace symbols {

inline ScalarSymbol identity() {
    return {[](double, double, double) { return cplx(1.0); }};
}

/// Heat semigroup at time t: exp(-|k|^2 t).
inline ScalarSymbol heat(double t) {
    return {[t](double kx, double ky, double kz) {
        return cplx(std::exp(-(kx * kx + ky * ky + kz * kz) * t));
    }};
}

/// sigma * d/dsigma of the heat semigroup: -sigma |k|^2 exp(-sigma |k|^2).
inline ScalarSymbol heat_flow_derivative(double sigma) {
    return {[sigma](double kx, double ky, double kz) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        return cplx(-sigma * k2 * std::exp(-sigma * k2));
    }};
}

/// Riesz transform along axis d: -i k_d / |k|.
inline ScalarSymbol riesz(int d) {
    return {[d](double kx, double ky, double kz) {
        const double k[3] = {kx, ky, kz};
        const double mag = std::sqrt(kx * kx + ky * ky + kz * kz);
        if (mag == 0.0) return cplx(0.0);
        return cplx(0.0, -k[d] / mag);
    }};
}

/// |nabla|: multiplication by |k|.
inline ScalarSymbol modulus_gradient() {
    return {[](double kx, double ky, double kz) {
        return cplx(std::sqrt(kx * kx + ky * ky + kz * kz));
    }};
}

}  // namespace symbols

/// Apply a generic per-mode functor m(kx,ky,kz) -> cplx to every component.
template <class M>
VectorField apply_mode_functor(const VectorField& f, M&& m) {
    const Grid3& g = f.grid;
    VectorField out(g);
    out.time = f.time;
    const double ku = g.k_unit();
    for (int ix = 0; ix < g.n; ++ix) {
        const double kx = ku * g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = ku * g.mode(iy);
            const std::size_t base = g.index(ix, iy, 0);
            for (int iz = 0; iz < g.n; ++iz) {
                const double kz = ku * g.mode(iz);
                const cplx v = m(kx, ky, kz);
                const std::size_t i = base + iz;
                for (int d = 0; d < 3; ++d) out.c[d][i] = v * f.c[d][i];
            }
        }
    }
    clear_zero_mode(out);
    return out;
}

inline VectorField apply_multiplier(const VectorField& f, const ScalarSymbol& m) {
    return apply_mode_functor(f, [&m](double kx, double ky, double kz) {
        return m.eval(kx, ky, kz);
    });
}

inline VectorField heat_semigroup(const VectorField& f, double t) {
    if (t < 0.0) throw InvalidArgument("heat_semigroup: t must be >= 0");
    return apply_mode_functor(f, [t](double kx, double ky, double kz) {
        return cplx(std::exp(-(kx * kx + ky * ky + kz * kz) * t));
    });
}

inline VectorField q_operator(const VectorField& f, double sigma) {
    if (!(sigma > 0.0)) throw InvalidArgument("q_operator: sigma must be > 0");
    return apply_mode_functor(f, [sigma](double kx, double ky, double kz) {
        const double k2 = kx * kx + ky * ky + kz * kz;
        return cplx(-sigma * k2 * std::exp(-sigma * k2));
    });
}

/// Divergence-free projector, symbol Id - k (x) k / |k|^2.
inline VectorField leray_project(const VectorField& f) {
    const Grid3& g = f.grid;
    VectorField out(g);
    out.time = f.time;
    const double ku = g.k_unit();
    for (int ix = 0; ix < g.n; ++ix) {
        const double kx = ku * g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = ku * g.mode(iy);
            const std::size_t base = g.index(ix, iy, 0);
            for (int iz = 0; iz < g.n; ++iz) {
                const double kz = ku * g.mode(iz);
                const double k2 = kx * kx + ky * ky + kz * kz;
                const std::size_t i = base + iz;
                if (k2 == 0.0) continue;
                const cplx dot =
                    (kx * f.c[0][i] + ky * f.c[1][i] + kz * f.c[2][i]) / k2;
                cplx v0 = f.c[0][i] - kx * dot;
                cplx v1 = f.c[1][i] - ky * dot;
                cplx v2 = f.c[2][i] - kz * dot;
                // second pass removes the cancellation residue when the
                // transverse part is much smaller than the input
                const cplx dot2 = (kx * v0 + ky * v1 + kz * v2) / k2;
                out.c[0][i] = v0 - kx * dot2;
                out.c[1][i] = v1 - ky * dot2;
                out.c[2][i] = v2 - kz * dot2;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact spectral differentiation
// ---------------------------------------------------------------------------

inline VectorField gradient(const ScalarField& f) {
    const Grid3& g = f.grid;
    VectorField out(g);
    const double ku = g.k_unit();
    for (int ix = 0; ix < g.n; ++ix) {
        const double kx = ku * g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = ku * g.mode(iy);
            const std::size_t base = g.index(ix, iy, 0);
            for (int iz = 0; iz < g.n; ++iz) {
                const double kz = ku * g.mode(iz);
                const std::size_t i = base + iz;
                const cplx ik_f = cplx(0.0, 1.0) * f.a[i];
                out.c[0][i] = kx * ik_f;
                out.c[1][i] = ky * ik_f;
                out.c[2][i] = kz * ik_f;
            }
        }
    }
    return out;
}

inline ScalarField divergence(const VectorField& f) {
    const Grid3& g = f.grid;
    ScalarField out(g);
    const double ku = g.k_unit();
    for (int ix = 0; ix < g.n; ++ix) {
        const double kx = ku * g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = ku * g.mode(iy);
            const std::size_t base = g.index(ix, iy, 0);
            for (int iz = 0; iz < g.n; ++iz) {
                const double kz = ku * g.mode(iz);
                const std::size_t i = base + iz;
                out.a[i] = cplx(0.0, 1.0) *
                           (kx * f.c[0][i] + ky * f.c[1][i] + kz * f.c[2][i]);
            }
        }
    }
    return out;
}

inline VectorField curl(const VectorField& f) {
    const Grid3& g = f.grid;
    VectorField out(g);
    out.time = f.time;
    const double ku = g.k_unit();
    for (int ix = 0; ix < g.n; ++ix) {
        const double kx = ku * g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = ku * g.mode(iy);
            const std::size_t base = g.index(ix, iy, 0);
            for (int iz = 0; iz < g.n; ++iz) {
                const double kz = ku * g.mode(iz);
                const std::size_t i = base + iz;
                const cplx ii(0.0, 1.0);
                out.c[0][i] = ii * (ky * f.c[2][i] - kz * f.c[1][i]);
                out.c[1][i] = ii * (kz * f.c[0][i] - kx * f.c[2][i]);
                out.c[2][i] = ii * (kx * f.c[1][i] - ky * f.c[0][i]);
            }
        }
    }
    return out;
}

/// Recover the unique zero-mean divergence-free velocity with the given curl:
/// uhat = i k x omegahat / |k|^2.
inline VectorField biot_savart(const VectorField& omega,
                               double div_tol = 1e-8) {
    const double dr = divergence_ratio(omega);
    if (dr > div_tol)
        throw InvalidArgument("biot_savart: vorticity has divergence beyond tolerance");
    const Grid3& g = omega.grid;
    VectorField out(g);
    const double ku = g.k_unit();
    for (int ix = 0; ix < g.n; ++ix) {
        const double kx = ku * g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = ku * g.mode(iy);
            const std::size_t base = g.index(ix, iy, 0);
            for (int iz = 0; iz < g.n; ++iz) {
                const double kz = ku * g.mode(iz);
                const double k2 = kx * kx + ky * ky + kz * kz;
                const std::size_t i = base + iz;
                if (k2 == 0.0) continue;
                const cplx ii(0.0, 1.0);
                out.c[0][i] = ii * (ky * omega.c[2][i] - kz * omega.c[1][i]) / k2;
                out.c[1][i] = ii * (kz * omega.c[0][i] - kx * omega.c[2][i]) / k2;
                out.c[2][i] = ii * (kx * omega.c[1][i] - ky * omega.c[0][i]) / k2;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dealiasing and the convective nonlinearity
// ---------------------------------------------------------------------------

/// Zero every mode with any |m_axis| > n/3 (2/3-rule for quadratic products).
inline void dealias(VectorField& f) {
    const Grid3& g = f.grid;
    const int lim = g.dealias_limit();
    for (int ix = 0; ix < g.n; ++ix) {
        const bool bx = std::abs(g.mode(ix)) > lim;
        for (int iy = 0; iy < g.n; ++iy) {
            const bool by = std::abs(g.mode(iy)) > lim;
            const std::size_t base = g.index(ix, iy, 0);
            for (int iz = 0; iz < g.n; ++iz) {
                if (!(bx || by || std::abs(g.mode(iz)) > lim)) continue;
                const std::size_t i = base + iz;
                for (int d = 0; d < 3; ++d) f.c[d][i] = cplx(0.0);
            }
        }
    }
}

inline bool is_dealias_clean(const VectorField& f) {
    const Grid3& g = f.grid;
    const int lim = g.dealias_limit();
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int iz = 0; iz < g.n; ++iz) {
                if (std::abs(g.mode(ix)) <= lim && std::abs(g.mode(iy)) <= lim &&
                    std::abs(g.mode(iz)) <= lim)
                    continue;
                const std::size_t i = g.index(ix, iy, iz);
                for (int d = 0; d < 3; ++d)
                    if (f.c[d][i] != cplx(0.0)) return false;
            }
    return true;
}

/// Symmetrized tensor product from physical samples of the two factors.
/// mask=false skips the 2/3-rule truncation.
inline SymTensorField tensor_from_physical(const Grid3& grid,
                                           const std::array<std::vector<cplx>, 3>& fp,
                                           const std::array<std::vector<cplx>, 3>& gref,
                                           bool mask = true) {
    SymTensorField T(grid);
    std::vector<cplx> prod(grid.size());
    const auto pairs = SymTensorField::index_pairs();
    for (int c = 0; c < 6; ++c) {
        const auto [a, b] = pairs[c];
        for (std::size_t i = 0; i < prod.size(); ++i) {
            const double va = fp[a][i].real();
            const double vb = gref[b][i].real();
            const double wa = fp[b][i].real();
            const double wb = gref[a][i].real();
            prod[i] = cplx(0.5 * (va * vb + wa * wb));
        }
        physical_to_spectral(grid, prod, T.c[c]);
    }
    if (!mask) {
        for (int c = 0; c < 6; ++c) T.c[c][0] = cplx(0.0);
        return T;
    }
    // 2/3-rule mask on the product.
    const int lim = grid.dealias_limit();
    for (int ix = 0; ix < grid.n; ++ix) {
        const bool bx = std::abs(grid.mode(ix)) > lim;
        for (int iy = 0; iy < grid.n; ++iy) {
            const bool by = std::abs(grid.mode(iy)) > lim;
            const std::size_t base = grid.index(ix, iy, 0);
            for (int iz = 0; iz < grid.n; ++iz) {
                if (!(bx || by || std::abs(grid.mode(iz)) > lim)) continue;
                const std::size_t i = base + iz;
                for (int c = 0; c < 6; ++c) T.c[c][i] = cplx(0.0);
            }
        }
    }
    for (int c = 0; c < 6; ++c) T.c[c][0] = cplx(0.0);
    return T;
}

/// Dealiased symmetrized tensor product (f (x) g + g (x) f)/2 computed
/// pseudo-spectrally. mask=false skips the 2/3-rule truncation.
inline SymTensorField tensor_product_dealiased(const VectorField& f,
                                               const VectorField& g,
                                               bool mask = true) {
    check_same_grid(f, g);
    const auto fp = to_physical(f);
    if (&f == &g) return tensor_from_physical(f.grid, fp, fp, mask);
    return tensor_from_physical(f.grid, fp, to_physical(g), mask);
}

/// Projected divergence of a symmetric tensor: P [  d_j T_ij ].
inline VectorField projected_tensor_divergence(const SymTensorField& T) {
    const Grid3& g = T.grid;
    VectorField out(g);
    const double ku = g.k_unit();
    // T component layout: xx yy zz xy xz yz
    for (int ix = 0; ix < g.n; ++ix) {
        const double kx = ku * g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = ku * g.mode(iy);
            const std::size_t base = g.index(ix, iy, 0);
            for (int iz = 0; iz < g.n; ++iz) {
                const double kz = ku * g.mode(iz);
                const double k2 = kx * kx + ky * ky + kz * kz;
                const std::size_t i = base + iz;
                if (k2 == 0.0) continue;
                const cplx ii(0.0, 1.0);
                cplx div[3];
                div[0] = ii * (kx * T.c[0][i] + ky * T.c[3][i] + kz * T.c[4][i]);
                div[1] = ii * (kx * T.c[3][i] + ky * T.c[1][i] + kz * T.c[5][i]);
                div[2] = ii * (kx * T.c[4][i] + ky * T.c[5][i] + kz * T.c[2][i]);
                const cplx dot = (kx * div[0] + ky * div[1] + kz * div[2]) / k2;
                cplx v0 = div[0] - kx * dot;
                cplx v1 = div[1] - ky * dot;
                cplx v2 = div[2] - kz * dot;
                const cplx dot2 = (kx * v0 + ky * v1 + kz * v2) / k2;
                out.c[0][i] = v0 - kx * dot2;
                out.c[1][i] = v1 - ky * dot2;
                out.c[2][i] = v2 - kz * dot2;
            }
        }
    }
    return out;
}

/// Projected convective term P div(u (x) u), dealiased.
inline VectorField nonlinear_term(const VectorField& u, double div_tol = 1e-8) {
    if (divergence_ratio(u) > div_tol)
        throw InvalidArgument("nonlinear_term: input is not divergence-free");
    return projected_tensor_divergence(tensor_product_dealiased(u, u));
}

/// Real L2 inner product of two fields (Parseval).
inline double inner_product(const VectorField& f, const VectorField& g) {
    check_same_grid(f, g);
    long double acc = 0.0L;
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < f.c[d].size(); ++i)
            acc += f.c[d][i].real() * g.c[d][i].real() +
                   f.c[d][i].imag() * g.c[d][i].imag();
    return static_cast<double>(acc);
}

}  // namespace bns
