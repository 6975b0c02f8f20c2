#pragma once

#include <map>
#include <memory>
#include <mutex>

#include <fftw3.h>

#include "bns/field.hpp"

namespace bns {

// ---------------------------------------------------------------------------
// FFT engine. One cached plan pair per grid size, FFTW_ESTIMATE|FFTW_UNALIGNED
// so plans are reproducible across runs and execute on any caller buffer.
// Execution through the new-array interface is thread safe; plan creation is
// serialized. Large grids use FFTW's internal OpenMP threading.
// ---------------------------------------------------------------------------

namespace detail {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    ~PlanPair() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }
};

inline std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

inline const PlanPair& plans_for(int n) {
    static std::map<int, std::unique_ptr<PlanPair>> cache;
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;

    static bool threads_ready = [] {
        fftw_init_threads();
        return true;
    }();
    (void)threads_ready;
    fftw_plan_with_nthreads(n >= 96 ? max_threads() : 1);

    auto pp = std::make_unique<PlanPair>();
    const std::size_t count = static_cast<std::size_t>(n) * n * n;
    std::vector<cplx> a(count), b(count);
    auto* ap = reinterpret_cast<fftw_complex*>(a.data());
    auto* bp = reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    pp->fwd = fftw_plan_dft_3d(n, n, n, ap, bp, FFTW_FORWARD, flags);
    pp->bwd = fftw_plan_dft_3d(n, n, n, ap, bp, FFTW_BACKWARD, flags);
    if (!pp->fwd || !pp->bwd) throw Error("fftw plan creation failed");
    const PlanPair& ref = *pp;
    cache.emplace(n, std::move(pp));
    return ref;
}

}  // namespace detail

/// coefficients -> physical samples (out[j] = sum_k in[k] exp(+i k.x_j)).
inline void spectral_to_physical(const Grid3& g, const std::vector<cplx>& in,
                                 std::vector<cplx>& out) {
    out.resize(g.size());
    const auto& pp = detail::plans_for(g.n);
    fftw_execute_dft(pp.bwd,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

/// physical samples -> coefficients (divides by n^3).
inline void physical_to_spectral(const Grid3& g, const std::vector<cplx>& in,
                                 std::vector<cplx>& out) {
    out.resize(g.size());
    const auto& pp = detail::plans_for(g.n);
    fftw_execute_dft(pp.fwd,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / static_cast<double>(g.size());
    for (auto& v : out) v *= scale;
}

/// Physical samples of all three components of a vector field.
inline std::array<std::vector<cplx>, 3> to_physical(const VectorField& f) {
    std::array<std::vector<cplx>, 3> out;
    for (int d = 0; d < 3; ++d) spectral_to_physical(f.grid, f.c[d], out[d]);
    return out;
}

/// Build a spectral vector field from real physical samples.
inline VectorField from_physical(const Grid3& g,
                                 const std::array<std::vector<cplx>, 3>& phys) {
    VectorField f(g);
    for (int d = 0; d < 3; ++d) physical_to_spectral(g, phys[d], f.c[d]);
    clear_zero_mode(f);
    return f;
}

}  // namespace bns
