// SPDX-License-Identifier: Apache-2.0
#include "risim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace risim {

namespace {

constexpr double pi = std::numbers::pi;

double dist3(const Vec3& a, const Vec3& b, bool planar) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    if (planar) return std::hypot(dx, dy);
    return std::hypot(dx, dy, a.z - b.z);
}

Vec3 unit_direction(const Vec3& from, const Vec3& to) {
    Vec3 u{to.x - from.x, to.y - from.y, to.z - from.z};
    const double n = std::hypot(u.x, u.y, u.z);
    if (n <= 0.0) throw std::invalid_argument("geometry: coincident nodes");
    u.x /= n;
    u.y /= n;
    u.z /= n;
    return u;
}

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

// BS array angle from broadside for a propagation direction at the BS.
double bs_angle(const Vec3& u) { return std::asin(clamp_unit(u.y)); }

// RIS (azimuth, elevation) for a propagation direction at the RIS. The array
// lies in the x-z plane; only the in-plane components enter the phase profile.
// Azimuth is wrapped into [0, pi) by flipping the sign of the in-plane radius,
// which the elevation then absorbs.
void ris_angles(const Vec3& u, double& azimuth, double& elevation) {
    double r = std::hypot(u.x, u.z);
    double th = std::atan2(u.z, u.x);
    if (th < 0.0) {
        th += pi;
        r = -r;
    }
    if (th >= pi) {
        th -= pi;
        r = -r;
    }
    azimuth = th;
    elevation = std::asin(clamp_unit(r));
}

}  // namespace

void SystemGeometry::validate() const {
    if (bs_spacing <= 0.0 || ris_spacing <= 0.0)
        throw std::invalid_argument("geometry: element spacing must be positive");
    if (n_x == 0) throw std::invalid_argument("geometry: n_x must be positive");
    const bool same = [](const Vec3& a, const Vec3& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }(bs, ris);
    if (same || dist3(bs, ue, false) == 0.0 || dist3(ris, ue, false) == 0.0 ||
        dist3(bs, ris, false) == 0.0)
        throw std::invalid_argument("geometry: coincident nodes");
}

void PathLossModel::validate() const {
    if (c0 <= 0.0 || d0 <= 0.0) throw std::invalid_argument("path loss: c0 and d0 must be positive");
    if (alpha_g <= 0.0 || alpha_r <= 0.0 || alpha_d <= 0.0)
        throw std::invalid_argument("path loss: exponents must be positive");
}

LinkDistances link_distances(const SystemGeometry& g, bool planar) {
    g.validate();
    LinkDistances d;
    d.d_bu = dist3(g.bs, g.ue, planar);
    d.d_br = dist3(g.bs, g.ris, planar);
    d.d_ru = dist3(g.ris, g.ue, planar);
    if (d.d_bu <= 0.0 || d.d_br <= 0.0 || d.d_ru <= 0.0)
        throw std::invalid_argument("geometry: zero link distance");
    return d;
}

double path_loss(double distance, double alpha, const PathLossModel& model) {
    model.validate();
    if (distance <= 0.0) throw std::invalid_argument("path loss: distance must be positive");
    return model.c0 * std::pow(distance / model.d0, -alpha);
}

AngleSet angles_from_geometry(const SystemGeometry& g) {
    g.validate();
    AngleSet a;
    a.phi_d_a = bs_angle(unit_direction(g.bs, g.ue));
    a.phi_g_d = bs_angle(unit_direction(g.bs, g.ris));
    ris_angles(unit_direction(g.ris, g.bs), a.alpha_g_a, a.gamma_g_a);
    ris_angles(unit_direction(g.ris, g.ue), a.alpha_r_a, a.gamma_r_a);
    return a;
}

cvec ula_steering(std::size_t m_antennas, double spacing, double phi) {
    if (m_antennas == 0) throw std::invalid_argument("ula_steering: empty array");
    if (spacing <= 0.0) throw std::invalid_argument("ula_steering: spacing must be positive");
    cvec v(m_antennas);
    const double step = 2.0 * pi * spacing * std::sin(phi);
    for (std::size_t m = 0; m < m_antennas; ++m) v[m] = std::polar(1.0, step * static_cast<double>(m));
    return v;
}

cvec upa_steering(std::size_t n_elements, std::size_t n_x, double spacing, double azimuth,
                  double elevation) {
    if (n_elements == 0) throw std::invalid_argument("upa_steering: empty array");
    if (n_x == 0 || n_elements % n_x != 0)
        throw std::invalid_argument("upa_steering: n_x must divide the element count");
    if (spacing <= 0.0) throw std::invalid_argument("upa_steering: spacing must be positive");
    cvec v(n_elements);
    const double k = 2.0 * pi * spacing * std::sin(elevation);
    const double ks = k * std::sin(azimuth);
    const double kc = k * std::cos(azimuth);
    for (std::size_t n = 0; n < n_elements; ++n) {
        const double row = static_cast<double>(n / n_x);
        const double col = static_cast<double>(n % n_x);
        v[n] = std::polar(1.0, row * ks + col * kc);
    }
    return v;
}

}  // namespace risim
