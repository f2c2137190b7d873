// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"
#include "risim/channels.hpp"
#include "risim/geometry.hpp"
#include "test_support.hpp"

using namespace risim;

TEST_SUITE("geometry") {

TEST_CASE("link distances match the default scene") {
    const SystemGeometry g;
    const LinkDistances d = link_distances(g);
    CHECK(d.d_bu == doctest::Approx(std::sqrt(100.0 * 100.0 + 5.0 * 5.0)).epsilon(1e-12));
    CHECK(d.d_br == doctest::Approx(std::sqrt(100.0 * 100.0 + 6.0 * 6.0)).epsilon(1e-12));
    CHECK(d.d_ru == doctest::Approx(std::sqrt(61.0)).epsilon(1e-12));
    CHECK(d.d_ru == doctest::Approx(7.8102496759).epsilon(1e-9));

    const LinkDistances p = link_distances(g, true);
    CHECK(p.d_bu == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(p.d_ru == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("coincident nodes are rejected") {
    SystemGeometry g;
    g.ue = g.bs;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("path loss matches hand-computed values") {
    const PathLossModel m;
    CHECK(path_loss(1.0, 2.4, m) == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(path_loss(1.0, 3.5, m) == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(path_loss(100.0, 3.5, m) == doctest::Approx(1.0e-9).epsilon(1e-12));
    CHECK(path_loss(std::sqrt(61.0), 2.5, m) ==
          doctest::Approx(0.01 * std::pow(61.0, -1.25)).epsilon(1e-12));
    // Decreasing in distance beyond d0, decreasing in the exponent there too.
    CHECK(path_loss(50.0, 2.5, m) > path_loss(51.0, 2.5, m));
    CHECK(path_loss(50.0, 2.4, m) > path_loss(50.0, 2.5, m));
}

TEST_CASE("default scene angles agree with direct trigonometry") {
    const SystemGeometry g;
    const AngleSet a = angles_from_geometry(g);

    // UE lies on the x axis at the BS height offset: broadside arrival.
    CHECK(std::abs(a.phi_d_a) < 1e-12);

    // BS seen from the RIS: direction (-100, -6, 0); row axis (z) component 0,
    // column axis (x) component -100/sqrt(10036).
    CHECK(a.alpha_g_a == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(a.gamma_g_a ==
          doctest::Approx(-std::asin(100.0 / std::sqrt(10036.0))).epsilon(1e-12));

    // UE seen from the RIS: direction (0, -6, -5); column component 0, row
    // component -5/sqrt(61).
    CHECK(a.alpha_r_a == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
    CHECK(a.gamma_r_a == doctest::Approx(-std::asin(5.0 / std::sqrt(61.0))).epsilon(1e-12));
    CHECK(a.gamma_r_a == doctest::Approx(-0.6947382762).epsilon(1e-8));
}

TEST_CASE("angles are invariant under scene translation") {
    SystemGeometry g;
    const AngleSet a = angles_from_geometry(g);
    const Vec3 shift{13.0, -4.0, 2.5};
    g.bs = {g.bs.x + shift.x, g.bs.y + shift.y, g.bs.z + shift.z};
    g.ris = {g.ris.x + shift.x, g.ris.y + shift.y, g.ris.z + shift.z};
    g.ue = {g.ue.x + shift.x, g.ue.y + shift.y, g.ue.z + shift.z};
    const AngleSet b = angles_from_geometry(g);
    CHECK(a.phi_d_a == doctest::Approx(b.phi_d_a).epsilon(1e-12));
    CHECK(a.phi_g_d == doctest::Approx(b.phi_g_d).epsilon(1e-12));
    CHECK(a.alpha_g_a == doctest::Approx(b.alpha_g_a).epsilon(1e-12));
    CHECK(a.gamma_g_a == doctest::Approx(b.gamma_g_a).epsilon(1e-12));
    CHECK(a.alpha_r_a == doctest::Approx(b.alpha_r_a).epsilon(1e-12));
    CHECK(a.gamma_r_a == doctest::Approx(b.gamma_r_a).epsilon(1e-12));
}

TEST_CASE("ULA steering fixtures") {
    const cvec broadside = ula_steering(4, 0.5, 0.0);
    for (const cd& v : broadside) CHECK(std::abs(v - cd{1.0, 0.0}) < 1e-14);

    // Half-wavelength spacing, endfire: alternating signs.
    const cvec endfire = ula_steering(2, 0.5, M_PI / 2.0);
    CHECK(std::abs(endfire[0] - cd{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(endfire[1] - cd{-1.0, 0.0}) < 1e-12);

    const cvec single = ula_steering(1, 0.5, 1.234);
    CHECK(single.size() == 1);
    CHECK(std::abs(single[0] - cd{1.0, 0.0}) < 1e-14);
}

TEST_CASE("UPA steering fixtures") {
    // Zero elevation: every element in phase.
    const cvec flat = upa_steering(100, 10, 0.125, 0.7, 0.0);
    for (const cd& v : flat) CHECK(std::abs(v - cd{1.0, 0.0}) < 1e-13);

    // 2x2 array, azimuth 0, elevation pi/2: phase pi/4 per column step.
    const cvec quad = upa_steering(4, 2, 0.125, 0.0, M_PI / 2.0);
    CHECK(std::abs(quad[0] - cd{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(quad[1] - std::polar(1.0, M_PI / 4.0)) < 1e-12);

    for (const cd& v : quad) CHECK(std::abs(std::abs(v) - 1.0) < 1e-14);

    CHECK_THROWS_AS(upa_steering(10, 3, 0.125, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("BS-RIS line-of-sight matrix is rank one") {
    const SystemGeometry g;
    const AngleSet a = angles_from_geometry(g);
    const LosComponents los = los_from_angles(a, g, 4, 20);
    REQUIRE(los.g.rows == 20);
    REQUIRE(los.g.cols == 4);
    // Every 2x2 minor vanishes for an outer product.
    for (std::size_t i = 1; i < los.g.rows; ++i)
        for (std::size_t j = 1; j < los.g.cols; ++j) {
            const cd det = los.g(0, 0) * los.g(i, j) - los.g(0, j) * los.g(i, 0);
            CHECK(std::abs(det) < 1e-12);
        }
    for (const cd& v : los.g.a) CHECK(std::abs(std::abs(v) - 1.0) < 1e-13);
    for (const cd& v : los.h_d) CHECK(std::abs(std::abs(v) - 1.0) < 1e-13);
    for (const cd& v : los.h_r) CHECK(std::abs(std::abs(v) - 1.0) < 1e-13);
}

}  // TEST_SUITE
