#pragma once

#include "bns/besov.hpp"
#include "bns/trajectory.hpp"

namespace bns {

// ---------------------------------------------------------------------------
// Time-space norms: the time-L^rho norm is taken inside each heat-flow scale
// before the scale integral. The scale integral uses the same sigma^{-sq/2}
// weight and log-trapezoid quadrature as the static Besov norm; rho = inf
// takes the max over snapshots, finite rho a trapezoid over the snapshot mesh.
// ---------------------------------------------------------------------------

struct TimeNormResult {
    double value = 0.0;
    bool under_resolved = false;  // scale integrand not bracketed
    bool sparse_time = false;     // fewer than 8 snapshots in [a,b]
};

namespace detail {

/// Indices of snapshots with a <= t <= b.
inline std::vector<std::size_t> window_indices(const Trajectory& traj, double a,
                                               double b) {
    std::vector<std::size_t> idx;
    const double slack = 1e-12 * std::max(1.0, std::abs(b));
    for (std::size_t i = 0; i < traj.size(); ++i)
        if (traj.times[i] >= a - slack && traj.times[i] <= b + slack)
            idx.push_back(i);
    return idx;
}

/// L^rho norm in time of sampled values by trapezoid; rho = inf is the max.
inline double time_lp(const std::vector<double>& t, const std::vector<double>& v,
                      double rho) {
    if (rho == inf) {
        double m = 0.0;
        for (double x : v) m = std::max(m, x);
        return m;
    }
    long double acc = 0.0L;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        acc += 0.5 * (std::pow(v[i], rho) + std::pow(v[i + 1], rho)) *
               (t[i + 1] - t[i]);
    return std::pow(static_cast<double>(acc), 1.0 / rho);
}

}  // namespace detail

inline TimeNormResult chemin_lerner_norm_detailed(const Trajectory& traj,
                                                  const ChLSpec& spec,
                                                  const QuadratureCfg& cfg) {
    if (traj.size() < 2)
        throw InvalidArgument("chemin_lerner_norm: need at least 2 snapshots");
    const auto idx = detail::window_indices(traj, spec.a, spec.b);
    if (idx.size() < 2)
        throw InvalidArgument("chemin_lerner_norm: trajectory does not cover [a,b]");

    TimeNormResult res;
    res.sparse_time = idx.size() < 8;

    const auto sigmas = cfg.sigmas();
    std::vector<double> times(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) times[i] = traj.times[idx[i]];

    // inner[node] = || t -> ||Q(sigma) u(t)||_p ||_{L^rho}
    std::vector<double> inner(sigmas.size(), 0.0);

    if (spec.p == 2.0) {
        std::vector<std::vector<double>> mass(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            mass[i] = radial_mass(traj.at(idx[i]));
        const double ku2 = traj.grid().k_unit() * traj.grid().k_unit();
        parallel_for(sigmas.size(), [&](std::size_t nidx) {
            const double sg = sigmas[nidx];
            std::vector<double> v(idx.size());
            for (std::size_t i = 0; i < idx.size(); ++i) {
                long double acc = 0.0L;
                for (std::size_t m2 = 1; m2 < mass[i].size(); ++m2) {
                    if (mass[i][m2] == 0.0) continue;
                    const double k2 = ku2 * m2;
                    const double w = sg * k2 * std::exp(-sg * k2);
                    acc += w * w * mass[i][m2];
                }
                v[i] = std::sqrt(static_cast<double>(acc));
            }
            inner[nidx] = detail::time_lp(times, v, spec.rho);
        });
    } else {
        // one (node, snapshot) task per transform set
        std::vector<std::vector<double>> w(sigmas.size(),
                                           std::vector<double>(idx.size(), 0.0));
        parallel_for(sigmas.size() * idx.size(), [&](std::size_t flat) {
            const std::size_t nidx = flat / idx.size();
            const std::size_t i = flat % idx.size();
            const VectorField qf = q_operator(traj.at(idx[i]), sigmas[nidx]);
            w[nidx][i] = lebesgue_norm_physical(to_physical(qf), spec.p);
        });
        for (std::size_t nidx = 0; nidx < sigmas.size(); ++nidx)
            inner[nidx] = detail::time_lp(times, w[nidx], spec.rho);
    }

    // outer scale integral, same weight convention as the static norm
    std::vector<double> integrand(sigmas.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        const double base = std::pow(sigmas[i], -0.5 * spec.s) * inner[i];
        integrand[i] = (spec.q == inf) ? base : std::pow(base, spec.q);
        peak = std::max(peak, integrand[i]);
    }
    if (peak == 0.0) return res;
    res.under_resolved =
        std::max(integrand.front(), integrand.back()) > 0.01 * peak;

    if (spec.q == inf) {
        res.value = peak;
        return res;
    }
    long double acc = 0.0L;
    for (std::size_t i = 0; i + 1 < sigmas.size(); ++i)
        acc += 0.5 * (integrand[i] + integrand[i + 1]) *
               std::log(sigmas[i + 1] / sigmas[i]);
    res.value = std::pow(static_cast<double>(acc), 1.0 / spec.q);
    return res;
}

inline double chemin_lerner_norm(const Trajectory& traj, const ChLSpec& spec,
                                 const QuadratureCfg& cfg) {
    return chemin_lerner_norm_detailed(traj, spec, cfg).value;
}

inline double chemin_lerner_norm(const Trajectory& traj, const ChLSpec& spec) {
    return chemin_lerner_norm(traj, spec, QuadratureCfg::for_grid(traj.grid()));
}

// ---------------------------------------------------------------------------
// Mixed time-space Lebesgue norm on the scaling line 2/p_t + 3/q_x = 1.
// ---------------------------------------------------------------------------

inline double serrin_norm(const Trajectory& traj, double p_t, double q_x) {
    if (!(q_x > 3.0))
        throw InvalidArgument("serrin_norm: need q_x > 3");
    if (std::abs(2.0 / p_t + 3.0 / q_x - 1.0) > 1e-9)
        throw InvalidArgument("serrin_norm: exponents off the line 2/p + 3/q = 1");
    if (traj.size() < 2)
        throw InvalidArgument("serrin_norm: need at least 2 snapshots");
    std::vector<double> v(traj.size());
    parallel_for(traj.size(), [&](std::size_t i) {
        v[i] = lebesgue_norm(traj.at(i), q_x);
    });
    return detail::time_lp(traj.times, v, p_t);
}

}  // namespace bns
