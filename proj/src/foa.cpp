//
//  foa.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/foa.hpp"

#include <cmath>
#include <numbers>

#include "panobin/errors.hpp"

namespace panobin {

namespace {
constexpr double kPi = std::numbers::pi;
}

void FoaClip::validate() const {
    const std::size_t n = w.size();
    if (n == 0)
        throw InvalidArgumentError("FOA clip is empty");
    if (y.size() != n || z.size() != n || x.size() != n)
        throw InvalidArgumentError("FOA channels have unequal lengths");
    if (!(sample_rate > 0.0))
        throw InvalidArgumentError("FOA sample rate must be positive");
}

double sh_basis(int l, int m, double azimuth, double elevation) {
    if (l == 0 && m == 0)
        return 1.0;
    if (l == 1) {
        switch (m) {
        case -1: return std::sin(azimuth) * std::cos(elevation);
        case 0:  return std::sin(elevation);
        case 1:  return std::cos(azimuth) * std::cos(elevation);
        default: break;
        }
    }
    throw InvalidArgumentError("unsupported spherical harmonic order (l=" +
                               std::to_string(l) + ", m=" + std::to_string(m) + ")");
}

EnergyMap energy_map(const FoaClip& clip, double resolution_deg) {
    clip.validate();
    if (!(resolution_deg > 0.0))
        throw InvalidArgumentError("energy map resolution must be positive");

    const double n_az_f = 360.0 / resolution_deg;
    const double n_el_f = 180.0 / resolution_deg;
    const auto n_az = static_cast<std::size_t>(std::llround(n_az_f));
    const auto n_el = static_cast<std::size_t>(std::llround(n_el_f));
    if (std::abs(n_az_f - static_cast<double>(n_az)) > 1e-9 ||
        std::abs(n_el_f - static_cast<double>(n_el)) > 1e-9)
        throw InvalidArgumentError("resolution must divide the 360/180 degree spans evenly");

    // The per-cell energy is a quadratic form in the basis vector
    // b = [1, sin(az)cos(el), sin(el), cos(az)cos(el)], so one pass over the
    // samples accumulating the time-averaged Gram matrix of [W, Y, Z, X] is
    // algebraically identical to the per-sample coherent sum.
    const std::size_t n = clip.size();
    double g[4][4] = {};
    for (std::size_t t = 0; t < n; ++t) {
        const double a[4] = {clip.w[t], clip.y[t], clip.z[t], clip.x[t]};
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j)
                g[i][j] += a[i] * a[j];
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            g[i][j] *= inv_n;
            g[j][i] = g[i][j];
        }

    const double step = resolution_deg * kPi / 180.0;
    EnergyMap map;
    map.resolution_deg = resolution_deg;
    map.azimuth_axis.resize(n_az);
    map.elevation_axis.resize(n_el);
    for (std::size_t i = 0; i < n_az; ++i)
        map.azimuth_axis[i] = -kPi + (static_cast<double>(i) + 0.5) * step;
    for (std::size_t j = 0; j < n_el; ++j)
        map.elevation_axis[j] = -kPi / 2.0 + (static_cast<double>(j) + 0.5) * step;

    map.values.resize(n_az * n_el);
    for (std::size_t j = 0; j < n_el; ++j) {
        const double el = map.elevation_axis[j];
        const double sin_el = std::sin(el);
        const double cos_el = std::cos(el);
        for (std::size_t i = 0; i < n_az; ++i) {
            const double az = map.azimuth_axis[i];
            const double b[4] = {1.0, std::sin(az) * cos_el, sin_el, std::cos(az) * cos_el};
            double e = 0.0;
            for (int p = 0; p < 4; ++p)
                for (int q = 0; q < 4; ++q)
                    e += g[p][q] * b[p] * b[q];
            // |sum|^2 is nonnegative; the quadratic form can dip a hair
            // below zero in fp, clamp so the map invariant holds.
            map.values[j * n_az + i] = e < 0.0 ? 0.0 : e;
        }
    }
    return map;
}

SourceDirection localize(const EnergyMap& map) {
    if (map.values.empty() || map.n_azimuth() == 0 || map.n_elevation() == 0)
        throw InvalidArgumentError("energy map is empty");

    std::size_t best_i = 0;
    std::size_t best_j = 0;
    double best = map.values[0];
    for (std::size_t j = 0; j < map.n_elevation(); ++j)
        for (std::size_t i = 0; i < map.n_azimuth(); ++i) {
            const double v = map.at(j, i);
            if (v > best) {
                best = v;
                best_i = i;
                best_j = j;
            }
        }
    return {map.azimuth_axis[best_i], map.elevation_axis[best_j]};
}

} // namespace panobin
