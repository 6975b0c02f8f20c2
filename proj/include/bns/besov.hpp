#pragma once

#include <limits>

#include "bns/littlewood_paley.hpp"

namespace bns {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Function-space labels
// ---------------------------------------------------------------------------

/// Homogeneous Besov space indices (s, p, q); q = inf allowed.
struct BesovSpec {
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;

    BesovSpec() = default;
    BesovSpec(double s_, double p_, double q_) : s(s_), p(p_), q(q_) {
        if (p < 1.0 || q < 1.0)
            throw InvalidArgument("BesovSpec: p and q must be >= 1");
    }

    /// The scale-(-1) family: (3/p - 1, p, inf).
    static BesovSpec scale_minus_one(double p) {
        BesovSpec b(3.0 / p - 1.0, p, inf);
        if (std::abs(b.s - 3.0 / b.p + 1.0) > 1e-12)
            throw InvalidArgument("BesovSpec: scale constraint s - 3/p = -1 violated");
        return b;
    }
};

/// Time-space norm indices over [a,b]: time exponent rho outside, Besov
/// indices inside.
struct ChLSpec {
    double rho = inf;
    double s = 0.0;
    double p = 2.0;
    double q = inf;
    double a = 0.0;
    double b = 1.0;

    ChLSpec() = default;
    ChLSpec(double rho_, double s_, double p_, double q_, double a_, double b_)
        : rho(rho_), s(s_), p(p_), q(q_), a(a_), b(b_) {
        if (rho < 1.0 || p < 1.0 || q < 1.0)
            throw InvalidArgument("ChLSpec: exponents must be >= 1");
        if (!(b > a) || a < 0.0)
            throw InvalidArgument("ChLSpec: need 0 <= a < b");
    }

    /// Scale-invariant shorthand: s = -1 + 3/p + 2/rho, q = inf.
    static ChLSpec scaled(double rho, double p, double a, double b) {
        return ChLSpec(rho, -1.0 + 3.0 / p + 2.0 / rho, p, inf, a, b);
    }
};

/// Log-spaced quadrature for the heat-flow scale integral.
struct QuadratureCfg {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    int nodes = 0;

    QuadratureCfg() = default;
    QuadratureCfg(double lo, double hi, int nodes_)
        : sigma_min(lo), sigma_max(hi), nodes(nodes_) {
        if (!(0.0 < lo && lo < hi))
            throw InvalidArgument("QuadratureCfg: need 0 < sigma_min < sigma_max");
        if (nodes < 16) throw InvalidArgument("QuadratureCfg: need >= 16 nodes");
    }

    /// Bracket all scales the grid resolves: from a quarter of the finest
    /// heat time (L/(2 pi n))^2 up to several box times.
    static QuadratureCfg for_grid(const Grid3& g, int per_decade = 32) {
        const double lo = 0.25 * std::pow(g.L / (2.0 * pi * g.n), 2);
        const double hi = 4.0 * g.L * g.L;
        const int n = std::max(16, static_cast<int>(std::ceil(
                                       std::log10(hi / lo) * per_decade)) +
                                       1);
        return QuadratureCfg(lo, hi, n);
    }

    std::vector<double> sigmas() const {
        std::vector<double> s(nodes);
        const double llo = std::log(sigma_min), lhi = std::log(sigma_max);
        for (int i = 0; i < nodes; ++i)
            s[i] = std::exp(llo + (lhi - llo) * i / (nodes - 1));
        return s;
    }
};

// ---------------------------------------------------------------------------
// Lebesgue norms under the normalized measure L^-3 dx (so ||exp(ik.x)||_p = 1
// for every p, and single-mode reference values are resolution independent).
// ---------------------------------------------------------------------------

/// L^p norm from physical samples of the three components.
inline double lebesgue_norm_physical(const std::array<std::vector<cplx>, 3>& phys,
                                     double p) {
    const std::size_t n = phys[0].size();
    if (p == inf) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double q = phys[0][i].real() * phys[0][i].real() +
                             phys[1][i].real() * phys[1][i].real() +
                             phys[2][i].real() * phys[2][i].real();
            m = std::max(m, q);
        }
        return std::sqrt(m);
    }
    long double acc = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = phys[0][i].real() * phys[0][i].real() +
                         phys[1][i].real() * phys[1][i].real() +
                         phys[2][i].real() * phys[2][i].real();
        acc += std::pow(q, 0.5 * p);
    }
    return std::pow(static_cast<double>(acc) / n, 1.0 / p);
}

inline double lebesgue_norm(const VectorField& f, double p) {
    if (p < 1.0) throw InvalidArgument("lebesgue_norm: p must be >= 1");
    if (p == 2.0) return l2_norm(f);
    return lebesgue_norm_physical(to_physical(f), p);
}

// ---------------------------------------------------------------------------
// Radial compression: coefficient mass per integer |m|^2, for fast L2-based
// scale sums.
// ---------------------------------------------------------------------------

inline std::vector<double> radial_mass(const VectorField& f) {
    const Grid3& g = f.grid;
    const int half = g.n / 2;
    std::vector<long double> acc(3 * half * half + 1, 0.0L);
    for (int ix = 0; ix < g.n; ++ix) {
        const int mx = g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const int my = g.mode(iy);
            const std::size_t base = g.index(ix, iy, 0);
            for (int iz = 0; iz < g.n; ++iz) {
                const int mz = g.mode(iz);
                const std::size_t m2 =
                    static_cast<std::size_t>(mx) * mx +
                    static_cast<std::size_t>(my) * my +
                    static_cast<std::size_t>(mz) * mz;
                const std::size_t i = base + iz;
                acc[m2] += std::norm(f.c[0][i]) + std::norm(f.c[1][i]) +
                           std::norm(f.c[2][i]);
            }
        }
    }
    std::vector<double> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i)
        out[i] = static_cast<double>(acc[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Heat-flow characterization of the Besov norm:
//   ||f||_{B^{s,q}_p}^q = integral sigma^{-sq/2} ||Q(sigma) f||_p^q dsigma/sigma
// with Q(sigma) = sigma d/dsigma of the heat semigroup. Trapezoid in
// log(sigma); q = inf takes the max over nodes.
// ---------------------------------------------------------------------------

/// ||Q(sigma_i) f||_p sampled on the quadrature nodes.
struct HeatProfile {
    double p = 2.0;
    std::vector<double> sigma;
    std::vector<double> qnorm;
};

inline HeatProfile compute_heat_profile(const VectorField& f, double p,
                                        const QuadratureCfg& cfg) {
    HeatProfile prof;
    prof.p = p;
    prof.sigma = cfg.sigmas();
    prof.qnorm.assign(prof.sigma.size(), 0.0);

    if (p == 2.0) {
        const auto mass = radial_mass(f);
        const double ku2 = f.grid.k_unit() * f.grid.k_unit();
        for (std::size_t i = 0; i < prof.sigma.size(); ++i) {
            const double sg = prof.sigma[i];
            long double acc = 0.0L;
            for (std::size_t m2 = 1; m2 < mass.size(); ++m2) {
                if (mass[m2] == 0.0) continue;
                const double k2 = ku2 * m2;
                const double w = sg * k2 * std::exp(-sg * k2);
                acc += w * w * mass[m2];
            }
            prof.qnorm[i] = std::sqrt(static_cast<double>(acc));
        }
        return prof;
    }

    parallel_for(prof.sigma.size(), [&](std::size_t i) {
        const VectorField qf = q_operator(f, prof.sigma[i]);
        prof.qnorm[i] = lebesgue_norm_physical(to_physical(qf), p);
    });
    return prof;
}

struct HeatNormResult {
    double value = 0.0;
    bool under_resolved = false;
    double endpoint_fraction = 0.0;  // max endpoint integrand / peak integrand
};

inline HeatNormResult besov_norm_from_profile(const HeatProfile& prof,
                                              const BesovSpec& spec) {
    HeatNormResult res;
    const std::size_t n = prof.sigma.size();
    std::vector<double> integrand(n);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double base = std::pow(prof.sigma[i], -0.5 * spec.s) * prof.qnorm[i];
        integrand[i] = (spec.q == inf) ? base : std::pow(base, spec.q);
        peak = std::max(peak, integrand[i]);
    }
    if (peak == 0.0) return res;

    res.endpoint_fraction = std::max(integrand.front(), integrand.back()) / peak;
    res.under_resolved = res.endpoint_fraction > 0.01;

    if (spec.q == inf) {
        res.value = peak;
        return res;
    }
    // trapezoid in x = log sigma; d sigma / sigma = dx
    long double acc = 0.0L;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dx = std::log(prof.sigma[i + 1] / prof.sigma[i]);
        acc += 0.5 * (integrand[i] + integrand[i + 1]) * dx;
    }
    res.value = std::pow(static_cast<double>(acc), 1.0 / spec.q);
    return res;
}

inline HeatNormResult besov_norm_heat_detailed(const VectorField& f,
                                               const BesovSpec& spec,
                                               const QuadratureCfg& cfg) {
    if (zero_mode_magnitude(f) != 0.0)
        throw InvalidArgument("besov_norm_heat: field must have zero mean");
    return besov_norm_from_profile(compute_heat_profile(f, spec.p, cfg), spec);
}

inline double besov_norm_heat(const VectorField& f, const BesovSpec& spec,
                              const QuadratureCfg& cfg) {
    return besov_norm_heat_detailed(f, spec, cfg).value;
}

inline double besov_norm_heat(const VectorField& f, const BesovSpec& spec) {
    return besov_norm_heat(f, spec, QuadratureCfg::for_grid(f.grid));
}

// ---------------------------------------------------------------------------
// Dyadic-block characterization: l^q over the resolvable range of
// (2 pi 2^j / L)^s ||Delta_j f||_p. The dimensional dyadic scale makes the
// two characterizations agree without L-dependent factors.
// ---------------------------------------------------------------------------

inline std::vector<double> lp_block_norms(const VectorField& f, double p) {
    const Grid3& g = f.grid;
    const int jmin = g.lp_jmin(), jmax = g.lp_jmax();
    std::vector<double> norms(jmax - jmin + 1, 0.0);
    if (p == 2.0) {
        const auto mass = radial_mass(f);
        for (int j = jmin; j <= jmax; ++j) {
            long double acc = 0.0L;
            for (std::size_t m2 = 1; m2 < mass.size(); ++m2) {
                if (mass[m2] == 0.0) continue;
                const double sym = lp::block_symbol(j, std::sqrt(double(m2)));
                acc += sym * sym * mass[m2];
            }
            norms[j - jmin] = std::sqrt(static_cast<double>(acc));
        }
        return norms;
    }
    parallel_for(norms.size(), [&](std::size_t idx) {
        const int j = jmin + static_cast<int>(idx);
        norms[idx] = lebesgue_norm_physical(to_physical(lp_block(f, j)), p);
    });
    return norms;
}

inline double besov_norm_lp(const VectorField& f, const BesovSpec& spec) {
    if (zero_mode_magnitude(f) != 0.0)
        throw InvalidArgument("besov_norm_lp: field must have zero mean");
    const Grid3& g = f.grid;
    const auto norms = lp_block_norms(f, spec.p);
    const int jmin = g.lp_jmin();
    if (spec.q == inf) {
        double m = 0.0;
        for (std::size_t i = 0; i < norms.size(); ++i) {
            const double scale = dyadic_wavenumber(g, jmin + static_cast<int>(i));
            m = std::max(m, std::pow(scale, spec.s) * norms[i]);
        }
        return m;
    }
    long double acc = 0.0L;
    for (std::size_t i = 0; i < norms.size(); ++i) {
        const double scale = dyadic_wavenumber(g, jmin + static_cast<int>(i));
        acc += std::pow(std::pow(scale, spec.s) * norms[i], spec.q);
    }
    return std::pow(static_cast<double>(acc), 1.0 / spec.q);
}

// ---------------------------------------------------------------------------
// Convexity (real-interpolation) check
// ---------------------------------------------------------------------------

inline bool is_interpolation_triple(const BesovSpec& A, const BesovSpec& B,
                                    const BesovSpec& I, double theta,
                                    double tol = 1e-9) {
    auto invq = [](double q) { return q == inf ? 0.0 : 1.0 / q; };
    const double s = theta * A.s + (1.0 - theta) * B.s;
    const double ip = theta / A.p + (1.0 - theta) / B.p;
    const double iq = theta * invq(A.q) + (1.0 - theta) * invq(B.q);
    return std::abs(s - I.s) < tol && std::abs(ip - 1.0 / I.p) < tol &&
           std::abs(iq - invq(I.q)) < tol;
}

/// ||f||_I / (||f||_A^theta ||f||_B^{1-theta}) using dyadic-block norms.
inline double interpolation_check(const VectorField& f, const BesovSpec& A,
                                  const BesovSpec& B, const BesovSpec& I,
                                  double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw InvalidArgument("interpolation_check: theta must be in (0,1)");
    if (!is_interpolation_triple(A, B, I, theta))
        throw InvalidArgument(
            "interpolation_check: inner space is not the convex combination");
    const double nI = besov_norm_lp(f, I);
    const double nA = besov_norm_lp(f, A);
    const double nB = besov_norm_lp(f, B);
    const double denom = std::pow(nA, theta) * std::pow(nB, 1.0 - theta);
    if (denom == 0.0) return nI == 0.0 ? 0.0 : inf;
    return nI / denom;
}

}  // namespace bns
