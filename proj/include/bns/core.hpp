#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include <omp.h>

namespace bns {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Errors. The CLI maps these onto its exit codes, so every failure mode that
// can cross the process boundary gets its own type.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument or violated precondition of a library call.
struct InvalidArgument : Error {
    using Error::Error;
};

/// Experiment configuration failed to parse or validate.
struct ConfigError : Error {
    using Error::Error;
};

/// Spectral-tail guard tripped: the grid cannot represent the data or the
/// evolving solution without significant aliasing.
struct ResolutionExceeded : Error {
    using Error::Error;
};

/// One time step grew the solution norm by more than the instability factor.
struct StepUnstable : Error {
    using Error::Error;
};

/// Two trajectories were combined that do not share a time mesh.
struct MeshMismatch : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Threading. BESOVNS_THREADS caps intra-experiment parallelism.
// ---------------------------------------------------------------------------

inline int max_threads() {
    static const int cap = [] {
        int t = omp_get_max_threads();
        if (const char* env = std::getenv("BESOVNS_THREADS")) {
            const int c = std::atoi(env);
            if (c >= 1 && c < t) t = c;
        }
        return t;
    }();
    return cap;
}

/// Parallel loop over [0, count). Each item must write only its own slots so
/// the result is identical for any thread count.
template <class F>
void parallel_for(std::size_t count, F&& body) {
    const int threads = max_threads();
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
        body(static_cast<std::size_t>(i));
}

/// Fixed-order compensated sum; independent of thread count by construction.
inline double stable_sum(const std::vector<double>& xs) {
    long double acc = 0.0L;
    for (double x : xs) acc += x;
    return static_cast<double>(acc);
}

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

/// Periodic cubic grid with n points per axis on [0,L)^3. Wavenumbers are
/// k = (2*pi/L) * m with integer m per axis in FFT frequency order.
struct Grid3 {
    int n = 0;
    double L = 2.0 * pi;

    Grid3() = default;
    Grid3(int n_, double L_) : n(n_), L(L_) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw InvalidArgument("Grid3: n must be a power of two >= 8");
        if (!(L > 0.0)) throw InvalidArgument("Grid3: L must be positive");
    }

    bool operator==(const Grid3& o) const { return n == o.n && L == o.L; }
    bool operator!=(const Grid3& o) const { return !(*this == o); }

    std::size_t size() const {
        return static_cast<std::size_t>(n) * n * n;
    }

    /// Integer frequency of axis index i in [0,n): 0,1,...,n/2,-(n/2-1),...,-1.
    int mode(int idx) const { return idx <= n / 2 ? idx : idx - n; }

    bool is_nyquist(int idx) const { return idx == n / 2; }

    /// Physical wavenumber of one integer frequency.
    double k_unit() const { return 2.0 * pi / L; }

    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n + iy) * n + iz;
    }

    /// Largest integer frequency kept by the 2/3-rule dealias mask.
    int dealias_limit() const { return n / 3; }

    /// Squared maximum resolved wavenumber after dealiasing.
    double kmax_sq() const {
        const double km = k_unit() * dealias_limit();
        return 3.0 * km * km;
    }

    /// Resolvable dyadic range for frequency-localized analysis: block j
    /// covers integer frequencies of magnitude roughly [2^j, 2^{j+2}].
    int lp_jmin() const { return 0; }
    int lp_jmax() const {
        return static_cast<int>(std::floor(std::log2(n / 3.0))) - 1;
    }

    /// Band of integer-frequency magnitudes exactly reproduced by the sum of
    /// resolvable dyadic blocks: [2^{jmin+1}, 2^{jmax+1}].
    double lp_band_lo() const { return std::ldexp(1.0, lp_jmin() + 1); }
    double lp_band_hi() const { return std::ldexp(1.0, lp_jmax() + 1); }
};

// ---------------------------------------------------------------------------
// Deterministic counter-based RNG. Field generators draw per-mode values
// keyed by (seed, mode), which makes fields independent of traversal order
// and nested under grid refinement.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mode_key(std::uint64_t seed, int mx, int my, int mz) {
    auto enc = [](int m) {
        return static_cast<std::uint64_t>(static_cast<std::uint32_t>(m) & 0x1fffffu);
    };
    std::uint64_t h = splitmix64(seed ^ 0x6d5f9c3b2a190807ULL);
    h = splitmix64(h ^ (enc(mx) | (enc(my) << 21) | (enc(mz) << 42)));
    return h;
}

/// Uniform double in [0,1) from a 64-bit hash state; advances the state.
inline double u01(std::uint64_t& state) {
    state = splitmix64(state);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller on counter-based uniforms.
inline double normal01(std::uint64_t& state) {
    double u1 = u01(state);
    double u2 = u01(state);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
}

}  // namespace bns
