#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace bns;
using testutil::cosine_mode;
using testutil::random_field;

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(Grid3(7, 1.0), InvalidArgument);
    CHECK_THROWS_AS(Grid3(24, 1.0), InvalidArgument);
    CHECK_THROWS_AS(Grid3(32, -1.0), InvalidArgument);
    Grid3 g(32, 2.0 * pi);
    CHECK(g.mode(0) == 0);
    CHECK(g.mode(1) == 1);
    CHECK(g.mode(31) == -1);
    CHECK(g.mode(16) == 16);
    CHECK(g.is_nyquist(16));
    CHECK(g.dealias_limit() == 10);
    CHECK(g.lp_jmax() == 2);
    Grid3 g64(64, 2.0 * pi);
    CHECK(g64.lp_jmax() == 3);
    CHECK(Grid3(128, 2.0 * pi).lp_jmax() == 4);
}

TEST_CASE("single cosine mode round trip") {
    Grid3 g(16, 2.0 * pi);
    VectorField f = cosine_mode(g, 3, 0, 0, 0);
    std::vector<cplx> phys;
    spectral_to_physical(g, f.c[0], phys);
    // physical values should be cos(3x), purely real
    for (int ix = 0; ix < g.n; ++ix) {
        const double x = g.L * ix / g.n;
        const cplx v = phys[g.index(ix, 5, 7)];
        CHECK(std::abs(v.real() - std::cos(3.0 * x)) < 1e-12);
        CHECK(std::abs(v.imag()) < 1e-12);
    }
    std::vector<cplx> back;
    physical_to_spectral(g, phys, back);
    for (std::size_t i = 0; i < back.size(); ++i)
        CHECK(std::abs(back[i] - f.c[0][i]) < 1e-13);
}

TEST_CASE("Parseval under normalized measure") {
    Grid3 g(32, 4.0);
    VectorField f = random_field(g, 11, 9);
    const auto phys = to_physical(f);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < phys[0].size(); ++i)
        for (int d = 0; d < 3; ++d) acc += std::norm(phys[d][i]);
    const double phys_l2 = std::sqrt(static_cast<double>(acc) / g.size());
    const double spec_l2 = l2_norm(f);
    CHECK(phys_l2 == Catch::Approx(spec_l2).epsilon(1e-12));
}

TEST_CASE("hermitian symmetry detection and real physical fields") {
    Grid3 g(16, 2.0 * pi);
    VectorField f = random_field(g, 5, 5);
    CHECK(hermitian_error(f) < 1e-15);
    const auto phys = to_physical(f);
    double imag_max = 0.0;
    for (const auto& v : phys[0]) imag_max = std::max(imag_max, std::abs(v.imag()));
    CHECK(imag_max < 1e-12 * std::max(1.0, l2_norm(f)));

    VectorField broken = f;
    broken.c[1][g.index(1, 2, 3)] += cplx(0.1, 0.2);
    CHECK(hermitian_error(broken) > 0.01);
}

TEST_CASE("norm of cosine mode matches closed forms") {
    Grid3 g(32, 2.0 * pi);
    VectorField f = cosine_mode(g, 0, 4, 0, 1);
    CHECK(l2_norm(f) == Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(lebesgue_norm(f, inf) == Catch::Approx(1.0).epsilon(1e-12));
    // ||cos||_4^4 = 3/8 under the normalized measure
    CHECK(lebesgue_norm(f, 4.0) ==
          Catch::Approx(std::pow(3.0 / 8.0, 0.25)).epsilon(1e-12));
    // amplitude scaling is exact
    VectorField f7 = 7.0 * f;
    CHECK(lebesgue_norm(f7, 4.0) ==
          Catch::Approx(7.0 * lebesgue_norm(f, 4.0)).epsilon(1e-12));
}

TEST_CASE("zero field norms") {
    Grid3 g(16, 1.0);
    VectorField z(g);
    CHECK(l2_norm(z) == 0.0);
    CHECK(lebesgue_norm(z, 3.0) == 0.0);
    CHECK(lebesgue_norm(z, inf) == 0.0);
}
