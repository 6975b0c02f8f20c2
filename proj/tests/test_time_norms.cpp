#include <catch2/catch_amalgamated.hpp>

#include "bns/time_norms.hpp"
#include "helpers.hpp"

using namespace bns;
using namespace testutil;

namespace {

Trajectory constant_trajectory(const VectorField& f, double t_end, int count) {
    Trajectory traj;
    for (int i = 0; i < count; ++i) {
        VectorField copy = f;
        traj.push(t_end * i / (count - 1.0), std::move(copy));
    }
    return traj;
}

Trajectory heat_trajectory(const VectorField& u0, double t_end, int count) {
    Trajectory traj;
    for (int i = 0; i < count; ++i) {
        const double t = t_end * i / (count - 1.0);
        traj.push(t, heat_semigroup(u0, t));
    }
    return traj;
}

}  // namespace

TEST_CASE("constant trajectory with rho=inf reduces to the static norm") {
    Grid3 g(16, 2.0 * pi);
    VectorField f = random_field(g, 10, 4, 2);
    Trajectory traj = constant_trajectory(f, 1.0, 9);
    const QuadratureCfg cfg = QuadratureCfg::for_grid(g);
    const ChLSpec spec(inf, -0.25, 4.0, 4.0, 0.0, 1.0);
    const double chl = chemin_lerner_norm(traj, spec, cfg);
    const double stat = besov_norm_heat(f, BesovSpec(-0.25, 4.0, 4.0), cfg);
    CHECK(rel_err(chl, stat) < 1e-12);
}

TEST_CASE("zero trajectory has zero time-space norm") {
    Grid3 g(16, 2.0 * pi);
    Trajectory traj = constant_trajectory(VectorField(g), 1.0, 9);
    CHECK(chemin_lerner_norm(traj, ChLSpec(inf, -0.25, 4.0, 4.0, 0.0, 1.0)) == 0.0);
    CHECK(serrin_norm(traj, 8.0, 4.0) == 0.0);
}

TEST_CASE("heat flow of a single mode against a dense quadrature oracle") {
    Grid3 g(16, 2.0 * pi);
    const int m = 2;
    const double k2 = double(m) * m;
    VectorField u0 = cosine_mode(g, 0, m, 0, 0);
    const double T = 1.0;
    Trajectory traj = heat_trajectory(u0, T, 129);

    // rho = 1 on the scaling line: s = 1 + 3/p
    const double p = 4.0;
    const ChLSpec spec = ChLSpec::scaled(1.0, p, 0.0, T);
    const QuadratureCfg cfg = QuadratureCfg::for_grid(g);
    const double got = chemin_lerner_norm(traj, spec, cfg);

    // Independent dense oracle: the time integral is analytic for one mode,
    // the scale integral is done on a 20x denser log grid.
    const double cosp = lebesgue_norm(u0, p);
    const double time_int = (1.0 - std::exp(-k2 * T)) / k2;
    const int N = 4000;
    const double llo = std::log(cfg.sigma_min), lhi = std::log(cfg.sigma_max);
    double peak = 0.0;
    for (int i = 0; i < N; ++i) {
        const double sg = std::exp(llo + (lhi - llo) * i / (N - 1.0));
        const double inner = sg * k2 * std::exp(-sg * k2) * cosp * time_int;
        peak = std::max(peak, std::pow(sg, -0.5 * spec.s) * inner);
    }
    CHECK(rel_err(got, peak) < 0.01);
}

TEST_CASE("finite-q scale integral on a heat-flow trajectory") {
    Grid3 g(16, 2.0 * pi);
    const int m = 3;
    const double k2 = 9.0;
    VectorField u0 = cosine_mode(g, m, 0, 0, 1);
    const double T = 0.5;
    Trajectory traj = heat_trajectory(u0, T, 129);
    const ChLSpec spec(1.0, 0.5, 2.0, 4.0, 0.0, T);
    const QuadratureCfg cfg = QuadratureCfg::for_grid(g);
    const double got = chemin_lerner_norm(traj, spec, cfg);

    const double cosp = lebesgue_norm(u0, 2.0);
    const double time_int = (1.0 - std::exp(-k2 * T)) / k2;
    const int N = 4000;
    const double llo = std::log(cfg.sigma_min), lhi = std::log(cfg.sigma_max);
    long double acc = 0.0L;
    double prev_x = llo, prev_f = 0.0;
    for (int i = 0; i < N; ++i) {
        const double x = llo + (lhi - llo) * i / (N - 1.0);
        const double sg = std::exp(x);
        const double inner = sg * k2 * std::exp(-sg * k2) * cosp * time_int;
        const double f = std::pow(std::pow(sg, -0.5 * spec.s) * inner, spec.q);
        if (i > 0) acc += 0.5 * (prev_f + f) * (x - prev_x);
        prev_x = x;
        prev_f = f;
    }
    const double oracle = std::pow(double(acc), 1.0 / spec.q);
    CHECK(rel_err(got, oracle) < 0.01);
}

TEST_CASE("mixed time-space norm on the scaling line") {
    Grid3 g(16, 2.0 * pi);

    SECTION("constant trajectory: A * T^{1/p_t}") {
        VectorField f = random_field(g, 20, 4, 2);
        const double T = 2.0;
        Trajectory traj = constant_trajectory(f, T, 17);
        const double a = lebesgue_norm(f, 4.0);
        CHECK(rel_err(serrin_norm(traj, 8.0, 4.0), a * std::pow(T, 0.125)) < 1e-12);
    }
    SECTION("heat flow matches a refined-mesh quadrature to 1%") {
        VectorField u0 = random_divfree(g, 21, 4, 2);
        const double T = 0.5;
        const double coarse = serrin_norm(heat_trajectory(u0, T, 65), 8.0, 4.0);
        const double fine = serrin_norm(heat_trajectory(u0, T, 257), 8.0, 4.0);
        CHECK(rel_err(coarse, fine) < 0.01);
    }
    SECTION("rejects exponents off the scaling line or q_x <= 3") {
        Trajectory traj = constant_trajectory(random_field(g, 22, 4, 2), 1.0, 9);
        CHECK_THROWS_AS(serrin_norm(traj, 8.0, 5.0), InvalidArgument);
        CHECK_THROWS_AS(serrin_norm(traj, inf, 3.0), InvalidArgument);
    }
}

TEST_CASE("sparse time meshes are flagged") {
    Grid3 g(16, 2.0 * pi);
    VectorField f = random_field(g, 30, 4, 2);
    Trajectory traj = constant_trajectory(f, 1.0, 5);
    const auto res = chemin_lerner_norm_detailed(
        traj, ChLSpec(inf, -0.25, 4.0, 4.0, 0.0, 1.0), QuadratureCfg::for_grid(g));
    CHECK(res.sparse_time);
    CHECK(res.value > 0.0);
}

TEST_CASE("trajectory must cover the requested interval") {
    Grid3 g(16, 2.0 * pi);
    Trajectory traj = constant_trajectory(random_field(g, 31, 4, 2), 0.5, 9);
    CHECK_THROWS_AS(
        chemin_lerner_norm(traj, ChLSpec(inf, -0.25, 4.0, 4.0, 0.9, 1.0)),
        InvalidArgument);
}

TEST_CASE("trajectory bookkeeping") {
    Grid3 g(16, 2.0 * pi);
    Trajectory traj;
    traj.push(0.0, VectorField(g));
    CHECK_THROWS_AS(traj.push(0.0, VectorField(g)), InvalidArgument);
    traj.push(0.5, VectorField(g));
    CHECK(traj.index_of(0.5) == 1);
    CHECK_THROWS_AS(traj.index_of(0.25), MeshMismatch);
    CHECK(traj.index_at_or_before(0.3) == 0);
    CHECK(traj.uniform_mesh());

    SECTION("snapshot policies") {
        auto every = SnapshotPolicy::every_step().select(10);
        CHECK(every.size() == 11);
        auto uni = SnapshotPolicy::uniform_stride(4).select(10);
        CHECK(uni.back() == 10);
        auto quad = SnapshotPolicy::quadratic(8).select(100);
        CHECK(quad.front() == 0);
        CHECK(quad.back() == 100);
        for (std::size_t i = 1; i < quad.size(); ++i) REQUIRE(quad[i] > quad[i - 1]);
    }
}
