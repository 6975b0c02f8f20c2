#pragma once

#include "bns/field.hpp"

namespace bns {

// ---------------------------------------------------------------------------
// Exponential-integrator coefficients. All arguments are z = -|k|^2 h <= 0.
// The closed forms divide by z^3 and cancel catastrophically near z = 0, so
// below |z| = 0.25 every function switches to its Taylor series; 18 terms
// put the truncation error far below double rounding at the switch point.
// ---------------------------------------------------------------------------

namespace phi {

inline constexpr double series_switch = 0.25;
inline constexpr int series_terms = 18;

/// phi1(z) = (e^z - 1)/z
inline double phi1(double z) {
    if (std::abs(z) > series_switch) return std::expm1(z) / z;
    double term = 1.0, acc = 0.0;
    for (int j = 0; j < series_terms; ++j) {
        acc += term;           // z^j / (j+1)!
        term *= z / (j + 2.0);
    }
    return acc;
}

/// phi2(z) = (e^z - 1 - z)/z^2
inline double phi2(double z) {
    if (std::abs(z) > series_switch) return (std::expm1(z) - z) / (z * z);
    double term = 0.5, acc = 0.0;
    for (int j = 0; j < series_terms; ++j) {
        acc += term;           // z^j / (j+2)!
        term *= z / (j + 3.0);
    }
    return acc;
}

/// phi3(z) = (e^z - 1 - z - z^2/2)/z^3
inline double phi3(double z) {
    if (std::abs(z) > series_switch)
        return (std::expm1(z) - z - 0.5 * z * z) / (z * z * z);
    double term = 1.0 / 6.0, acc = 0.0;
    for (int j = 0; j < series_terms; ++j) {
        acc += term;           // z^j / (j+3)!
        term *= z / (j + 4.0);
    }
    return acc;
}

/// Quarter-stage weights of the four-stage exponential scheme, divided by h:
///   w1 = (-4 - z + e^z (4 - 3z + z^2)) / z^3   -> series sum (j+1)^2 z^j/(j+3)!
///   w2 = ( 2 + z + e^z (-2 + z)      ) / z^3   -> series sum (j+1)   z^j/(j+3)!
///   w3 = (-4 - 3z - z^2 + e^z (4 - z)) / z^3   -> series sum (1-j)   z^j/(j+3)!
inline double w1(double z) {
    if (std::abs(z) > series_switch)
        return (-4.0 - z + std::exp(z) * (4.0 - 3.0 * z + z * z)) / (z * z * z);
    double pw = 1.0 / 6.0, acc = 0.0;
    for (int j = 0; j < series_terms; ++j) {
        acc += (j + 1.0) * (j + 1.0) * pw;
        pw *= z / (j + 4.0);
    }
    return acc;
}

inline double w2(double z) {
    if (std::abs(z) > series_switch)
        return (2.0 + z + std::exp(z) * (-2.0 + z)) / (z * z * z);
    double pw = 1.0 / 6.0, acc = 0.0;
    for (int j = 0; j < series_terms; ++j) {
        acc += (j + 1.0) * pw;
        pw *= z / (j + 4.0);
    }
    return acc;
}

inline double w3(double z) {
    if (std::abs(z) > series_switch)
        return (-4.0 - 3.0 * z - z * z + std::exp(z) * (4.0 - z)) / (z * z * z);
    double pw = 1.0 / 6.0, acc = 0.0;
    for (int j = 0; j < series_terms; ++j) {
        acc += (1.0 - j) * pw;
        pw *= z / (j + 4.0);
    }
    return acc;
}

}  // namespace phi

// ---------------------------------------------------------------------------
// Per-grid coefficient tables indexed by the integer squared frequency |m|^2.
// ---------------------------------------------------------------------------

struct EtdTables {
    double h = 0.0;
    std::vector<double> E;     // e^{zh}
    std::vector<double> E2;    // e^{zh/2}
    std::vector<double> Qh;    // (h/2) phi1(z/2), half-stage weight
    std::vector<double> f1;    // h w1(z)
    std::vector<double> f2;    // h w2(z)
    std::vector<double> f3;    // h w3(z)
    std::vector<double> t1;    // h (phi1 - phi2), left trapezoid weight
    std::vector<double> t2;    // h phi2, right trapezoid weight

    EtdTables() = default;
    EtdTables(const Grid3& g, double step) : h(step) {
        const int half = g.n / 2;
        const std::size_t count = static_cast<std::size_t>(3) * half * half + 1;
        E.resize(count);
        E2.resize(count);
        Qh.resize(count);
        f1.resize(count);
        f2.resize(count);
        f3.resize(count);
        t1.resize(count);
        t2.resize(count);
        const double ku2 = g.k_unit() * g.k_unit();
        for (std::size_t m2 = 0; m2 < count; ++m2) {
            const double z = -h * ku2 * static_cast<double>(m2);
            E[m2] = std::exp(z);
            E2[m2] = std::exp(0.5 * z);
            Qh[m2] = 0.5 * h * phi::phi1(0.5 * z);
            f1[m2] = h * phi::w1(z);
            f2[m2] = h * phi::w2(z);
            f3[m2] = h * phi::w3(z);
            const double p1 = phi::phi1(z), p2 = phi::phi2(z);
            t1[m2] = h * (p1 - p2);
            t2[m2] = h * p2;
        }
    }
};

/// out[i] = tab[i]*x[i] accumulated over a whole vector field, indexed by
/// the integer |m|^2 of each mode.
template <class F>
void for_each_mode_m2(const Grid3& g, F&& body) {
    for (int ix = 0; ix < g.n; ++ix) {
        const long mx = g.mode(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const long my = g.mode(iy);
            const std::size_t base = g.index(ix, iy, 0);
            for (int iz = 0; iz < g.n; ++iz) {
                const long mz = g.mode(iz);
                const std::size_t m2 =
                    static_cast<std::size_t>(mx * mx + my * my + mz * mz);
                body(base + iz, m2);
            }
        }
    }
}

}  // namespace bns
