// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "risim/linalg.hpp"

#include <cstddef>

namespace risim {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Node placement and array layout. The BS is a uniform linear array along the
// y axis; the RIS is a uniform planar array in the x-z plane with n_x elements
// per row, indexed row-major. Element spacings are in wavelengths.
struct SystemGeometry {
    Vec3 bs{0.0, 0.0, 5.0};
    Vec3 ris{100.0, 6.0, 5.0};
    Vec3 ue{100.0, 0.0, 0.0};
    double bs_spacing = 0.5;
    double ris_spacing = 0.125;
    std::size_t n_x = 10;

    void validate() const;  // throws std::invalid_argument on degenerate input
};

// Distance-based large-scale power gain: c0 * (d / d0)^(-alpha).
struct PathLossModel {
    double c0 = 0.01;
    double d0 = 1.0;
    double alpha_g = 2.4;  // BS-RIS link
    double alpha_r = 2.5;  // RIS-UE link
    double alpha_d = 3.5;  // BS-UE link

    void validate() const;
};

struct LinkDistances {
    double d_bu = 0.0;  // BS-UE
    double d_br = 0.0;  // BS-RIS
    double d_ru = 0.0;  // RIS-UE
};

// Arrival/departure angles for the three links, in radians.
//   phi_*: BS array angle measured from broadside (arcsin of the y component
//          of the unit direction).
//   alpha/gamma: RIS azimuth in [0, pi) and elevation in [-pi/2, pi/2] for the
//          in-plane direction (x-z components); the sign of the out-of-row
//          component is folded into gamma so the pair stays in range.
struct AngleSet {
    double phi_d_a = 0.0;    // UE -> BS arrival
    double phi_g_d = 0.0;    // BS -> RIS departure (at the BS)
    double alpha_g_a = 0.0;  // BS -> RIS arrival azimuth (at the RIS)
    double gamma_g_a = 0.0;  // BS -> RIS arrival elevation
    double alpha_r_a = 0.0;  // UE -> RIS arrival azimuth
    double gamma_r_a = 0.0;  // UE -> RIS arrival elevation
};

// Euclidean node separations; planar = true drops the z components (ground
// projections), the convention some scene descriptions quote distances in.
LinkDistances link_distances(const SystemGeometry& g, bool planar = false);

double path_loss(double distance, double alpha, const PathLossModel& model);

AngleSet angles_from_geometry(const SystemGeometry& g);

// ULA response, entry m (0-based): exp(j 2 pi m spacing sin(phi)).
cvec ula_steering(std::size_t m_antennas, double spacing, double phi);

// UPA response in row-major order, entry n (0-based), row = n / n_x,
// col = n % n_x: exp(j 2 pi spacing sin(gamma) (row sin(alpha) + col cos(alpha))).
cvec upa_steering(std::size_t n_elements, std::size_t n_x, double spacing, double azimuth,
                  double elevation);

}  // namespace risim
