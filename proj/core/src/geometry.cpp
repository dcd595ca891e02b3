// SPDX-License-Identifier: Apache-2.0
//
// mmwave-adhoc: analytical bounds and Monte Carlo validation for mmWave ad hoc networks
// Copyright (C) 2026 The mmwave-adhoc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mmwave/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace mmwave {

namespace {

double sample_mark(const MarkLaw &law, Rng &rng) {
    return law.kind == MarkLaw::Kind::fixed ? law.low : rng.uniform(law.low, law.high);
}

double canonical_orientation(double angle) {
    double o = std::fmod(angle, std::numbers::pi);
    if (o < 0.0)
        o += std::numbers::pi;
    if (o >= std::numbers::pi)
        o = 0.0;
    return o;
}

Point2D uniform_in_disc(double radius, Rng &rng) {
    const double rad = radius * std::sqrt(rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    return {rad * std::cos(phi), rad * std::sin(phi)};
}

// Liang-Barsky clip of a segment already expressed in the rectangle frame.
bool clip_segment(double px, double py, double dx, double dy, double hx, double hy) {
    double t0 = 0.0;
    double t1 = 1.0;
    auto axis = [&](double p, double d, double h) {
        const double lo = -h - kContactTolerance;
        const double hi = h + kContactTolerance;
        if (d == 0.0)
            return p >= lo && p <= hi;
        double ta = (lo - p) / d;
        double tb = (hi - p) / d;
        if (ta > tb)
            std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        return t0 <= t1;
    };
    return axis(px, dx, hx) && axis(py, dy, hy);
}

void require_inside(Point2D q, double half_extent) {
    if (!(std::abs(q.x) <= half_extent && std::abs(q.y) <= half_extent))
        throw std::out_of_range("BuildingField: query point outside the generated extent");
}

} // namespace

Building make_building(Point2D center, double width, double length, double orientation) {
    if (!(std::isfinite(center.x) && std::isfinite(center.y)))
        throw ValidationError("building.center", "must be finite");
    if (!(width > 0.0) || !(length > 0.0) || !std::isfinite(width) || !std::isfinite(length))
        throw ValidationError("building.extent", "width and length must be > 0");
    return {center, width, length, canonical_orientation(orientation)};
}

double SimWindow::area() const { return std::numbers::pi * radius * radius; }

void validate(const SimWindow &window) {
    if (!(window.radius > 0.0) || !std::isfinite(window.radius))
        throw ValidationError("window.radius", "must be > 0");
}

std::vector<Point2D> sample_ppp(double intensity, const SimWindow &window, std::uint64_t seed) {
    validate(window);
    if (!(intensity >= 0.0))
        throw ValidationError("intensity", "must be >= 0");
    Rng rng(seed);
    const auto count = sample_poisson(intensity * window.area(), rng);
    std::vector<Point2D> points;
    points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        points.push_back(uniform_in_disc(window.radius, rng));
    return points;
}

std::vector<Building> sample_buildings(double building_density, const MarkLaw &width_law, const MarkLaw &length_law,
                                       const SimWindow &window, std::uint64_t seed) {
    validate(window);
    if (!(building_density >= 0.0))
        throw ValidationError("building_density", "must be >= 0");
    validate(width_law, "width_law");
    validate(length_law, "length_law");
    Rng rng(seed);
    const auto count = sample_poisson(building_density * window.area(), rng);
    std::vector<Building> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const Point2D c = uniform_in_disc(window.radius, rng);
        const double w = sample_mark(width_law, rng);
        const double l = sample_mark(length_law, rng);
        const double o = std::numbers::pi * rng.uniform();
        out.push_back(make_building(c, w, l, o));
    }
    return out;
}

bool contains(const Building &b, Point2D p) {
    const double c = std::cos(b.orientation);
    const double s = std::sin(b.orientation);
    const double rx = p.x - b.center.x;
    const double ry = p.y - b.center.y;
    const double u = c * rx + s * ry;
    const double v = -s * rx + c * ry;
    return std::abs(u) <= 0.5 * b.width + kContactTolerance && std::abs(v) <= 0.5 * b.length + kContactTolerance;
}

bool segment_intersects(const Building &b, Point2D a, Point2D e) {
    const double c = std::cos(b.orientation);
    const double s = std::sin(b.orientation);
    const double rx = a.x - b.center.x;
    const double ry = a.y - b.center.y;
    const double dx = e.x - a.x;
    const double dy = e.y - a.y;
    return clip_segment(c * rx + s * ry, -s * rx + c * ry, c * dx + s * dy, -s * dx + c * dy, 0.5 * b.width,
                        0.5 * b.length);
}

bool is_los(Point2D a, Point2D b, std::span<const Building> buildings) {
    if (a == b)
        return true;
    return std::none_of(buildings.begin(), buildings.end(),
                        [&](const Building &bd) { return segment_intersects(bd, a, b); });
}

// ---------------------------------------------------------------------------
// BuildingField

BuildingField::BuildingField(const BuildingLaw &law, double half_extent, std::uint64_t seed)
    : law_(law), half_extent_(half_extent), seed_(seed) {
    if (!(law.density >= 0.0) || !std::isfinite(law.density))
        throw ValidationError("buildings.density", "must be >= 0");
    validate(law.width, "buildings.width");
    validate(law.length, "buildings.length");
    if (!(half_extent > 0.0) || !std::isfinite(half_extent))
        throw ValidationError("half_extent", "must be > 0");
    const double reach = 0.5 * std::hypot(law.width.max(), law.length.max());
    cell_size_ = std::max(2.0 * reach, 16.0) * (1.0 + 1e-9);
    const long n = static_cast<long>(std::ceil(half_extent / cell_size_));
    lo_ = -n - 1;
    hi_ = n + 1; // cells [-n, n] cover [-half, half]; one margin cell each side
    span_ = hi_ - lo_ + 1;
    cells_.resize(static_cast<std::size_t>(span_ * span_));
    cell_mean_ = law.density * cell_size_ * cell_size_;
    cell_exp_neg_ = std::exp(-cell_mean_);
}

void BuildingField::reset(std::uint64_t seed) {
    seed_ = seed;
    placed_.clear();
    ray_stamp_.clear();
    candidates_.clear();
    if (++epoch_ == 0) {
        std::fill(cells_.begin(), cells_.end(), Cell{});
        epoch_ = 1;
    }
}

bool BuildingField::in_grid(long ix, long iy) const noexcept {
    return ix >= lo_ && ix <= hi_ && iy >= lo_ && iy <= hi_;
}

BuildingField::Cell &BuildingField::cell(long ix, long iy) {
    return cells_[static_cast<std::size_t>((iy - lo_) * span_ + (ix - lo_))];
}

void BuildingField::generate_own(long ix, long iy) {
    Cell &c = cell(ix, iy);
    if (c.own_epoch == epoch_)
        return;
    const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
                              static_cast<std::uint32_t>(iy);
    Rng rng(derive_seed(seed_, key));
    std::uint64_t count = 0;
    if (cell_mean_ < 30.0) {
        double prod = rng.uniform();
        while (prod > cell_exp_neg_) {
            prod *= rng.uniform();
            ++count;
        }
    } else {
        count = sample_poisson(cell_mean_, rng);
    }
    c.own_begin = static_cast<std::uint32_t>(placed_.size());
    c.own_count = static_cast<std::uint32_t>(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        Placed p;
        p.shape.center = {(static_cast<double>(ix) + rng.uniform()) * cell_size_,
                          (static_cast<double>(iy) + rng.uniform()) * cell_size_};
        p.shape.width = sample_mark(law_.width, rng);
        p.shape.length = sample_mark(law_.length, rng);
        // uniform direction on the upper half circle, by rejection
        double ux, uy, s2;
        do {
            ux = rng.uniform(-1.0, 1.0);
            uy = rng.uniform();
            s2 = ux * ux + uy * uy;
        } while (s2 > 1.0 || s2 == 0.0);
        const double inv = 1.0 / std::sqrt(s2);
        p.cos_o = ux * inv;
        p.sin_o = uy * inv;
        p.shape.orientation = 0.0; // filled in on export
        p.half_w = 0.5 * p.shape.width;
        p.half_l = 0.5 * p.shape.length;
        p.box_hx = std::abs(p.cos_o) * p.half_w + std::abs(p.sin_o) * p.half_l;
        p.box_hy = std::abs(p.sin_o) * p.half_w + std::abs(p.cos_o) * p.half_l;
        p.reach = std::hypot(p.half_w, p.half_l) + 2.0 * kContactTolerance;
        placed_.push_back(p);
        ray_stamp_.push_back(0);
    }
    c.own_epoch = epoch_;
}

void BuildingField::gather_candidates(long ix, long iy) {
    if (cell(ix, iy).cand_epoch == epoch_)
        return;
    const double x0 = static_cast<double>(ix) * cell_size_ - kContactTolerance;
    const double y0 = static_cast<double>(iy) * cell_size_ - kContactTolerance;
    const double x1 = x0 + cell_size_ + 2.0 * kContactTolerance;
    const double y1 = y0 + cell_size_ + 2.0 * kContactTolerance;
    const auto begin = static_cast<std::uint32_t>(candidates_.size());
    for (long jy = iy - 1; jy <= iy + 1; ++jy) {
        for (long jx = ix - 1; jx <= ix + 1; ++jx) {
            if (!in_grid(jx, jy))
                continue;
            generate_own(jx, jy);
            const Cell &n = cell(jx, jy);
            for (std::uint32_t k = n.own_begin; k < n.own_begin + n.own_count; ++k) {
                const Placed &p = placed_[k];
                if (p.shape.center.x + p.box_hx < x0 || p.shape.center.x - p.box_hx > x1 ||
                    p.shape.center.y + p.box_hy < y0 || p.shape.center.y - p.box_hy > y1)
                    continue;
                candidates_.push_back(k);
            }
        }
    }
    Cell &c = cell(ix, iy);
    c.cand_begin = begin;
    c.cand_count = static_cast<std::uint32_t>(candidates_.size()) - begin;
    c.cand_epoch = epoch_;
}

bool BuildingField::hits(const Placed &p, Point2D a, Point2D b) const {
    const double rx = a.x - p.shape.center.x;
    const double ry = a.y - p.shape.center.y;
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    return clip_segment(p.cos_o * rx + p.sin_o * ry, -p.sin_o * rx + p.cos_o * ry, p.cos_o * dx + p.sin_o * dy,
                        -p.sin_o * dx + p.cos_o * dy, p.half_w, p.half_l);
}

bool BuildingField::holds(const Placed &p, Point2D q) const {
    const double rx = q.x - p.shape.center.x;
    const double ry = q.y - p.shape.center.y;
    return std::abs(p.cos_o * rx + p.sin_o * ry) <= p.half_w + kContactTolerance &&
           std::abs(-p.sin_o * rx + p.cos_o * ry) <= p.half_l + kContactTolerance;
}

bool BuildingField::blocked(Point2D a, Point2D b, bool skip_endpoint_buildings, std::uint32_t *blocker) {
    require_inside(a, half_extent_);
    require_inside(b, half_extent_);
    if (++ray_ == 0) {
        std::fill(ray_stamp_.begin(), ray_stamp_.end(), 0u);
        ray_ = 1;
    }
    const double sx = a.x / cell_size_;
    const double sy = a.y / cell_size_;
    const double dx = b.x / cell_size_ - sx;
    const double dy = b.y / cell_size_ - sy;
    long ix = static_cast<long>(std::floor(sx));
    long iy = static_cast<long>(std::floor(sy));
    const long ex = static_cast<long>(std::floor(b.x / cell_size_));
    const long ey = static_cast<long>(std::floor(b.y / cell_size_));
    const long step_x = dx > 0.0 ? 1 : -1;
    const long step_y = dy > 0.0 ? 1 : -1;
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double delta_x = dx != 0.0 ? std::abs(1.0 / dx) : inf;
    const double delta_y = dy != 0.0 ? std::abs(1.0 / dy) : inf;
    double t_x = dx != 0.0 ? ((static_cast<double>(ix) + (dx > 0.0 ? 1.0 : 0.0)) - sx) / dx : inf;
    double t_y = dy != 0.0 ? ((static_cast<double>(iy) + (dy > 0.0 ? 1.0 : 0.0)) - sy) / dy : inf;
    long steps = std::abs(ex - ix) + std::abs(ey - iy) + 2;
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const double nx = -(b.y - a.y) / len;
    const double ny = (b.x - a.x) / len;

    while (steps-- > 0 && in_grid(ix, iy)) {
        gather_candidates(ix, iy);
        const Cell &c = cell(ix, iy);
        for (std::uint32_t k = c.cand_begin; k < c.cand_begin + c.cand_count; ++k) {
            const std::uint32_t id = candidates_[k];
            if (ray_stamp_[id] == ray_)
                continue;
            ray_stamp_[id] = ray_;
            const Placed &p = placed_[id];
            // cheap rejection: circumcircle clear of the supporting line
            if (std::abs(nx * (p.shape.center.x - a.x) + ny * (p.shape.center.y - a.y)) > p.reach)
                continue;
            if (!hits(p, a, b))
                continue;
            if (skip_endpoint_buildings && (holds(p, a) || holds(p, b)))
                continue;
            if (blocker)
                *blocker = id + 1;
            return true;
        }
        if (ix == ex && iy == ey)
            break;
        if (t_x < t_y) {
            if (t_x > 1.0)
                break;
            ix += step_x;
            t_x += delta_x;
        } else {
            if (t_y > 1.0)
                break;
            iy += step_y;
            t_y += delta_y;
        }
    }
    return false;
}

bool BuildingField::is_los(Point2D a, Point2D b) {
    if (a == b)
        return true;
    return !blocked(a, b, false);
}

bool BuildingField::is_outdoor_los(Point2D a, Point2D b) {
    if (a == b)
        return true;
    return !blocked(a, b, true);
}

bool BuildingField::is_outdoor_los(Point2D a, Point2D b, std::uint32_t &hint) {
    if (a == b)
        return true;
    require_inside(a, half_extent_);
    require_inside(b, half_extent_);
    if (hint != 0 && hint <= placed_.size()) {
        const Placed &p = placed_[hint - 1];
        if (hits(p, a, b) && !holds(p, a) && !holds(p, b))
            return false;
    }
    return !blocked(a, b, true, &hint);
}

bool BuildingField::is_indoor(Point2D p) {
    require_inside(p, half_extent_);
    const long ix = static_cast<long>(std::floor(p.x / cell_size_));
    const long iy = static_cast<long>(std::floor(p.y / cell_size_));
    gather_candidates(ix, iy);
    const Cell &c = cell(ix, iy);
    for (std::uint32_t k = c.cand_begin; k < c.cand_begin + c.cand_count; ++k) {
        if (holds(placed_[candidates_[k]], p))
            return true;
    }
    return false;
}

std::vector<Building> BuildingField::buildings_within(double radius) {
    const long n = static_cast<long>(std::ceil(radius / cell_size_));
    std::vector<Building> out;
    for (long iy = -n - 1; iy <= n; ++iy) {
        for (long ix = -n - 1; ix <= n; ++ix) {
            if (!in_grid(ix, iy))
                continue;
            generate_own(ix, iy);
            const Cell &c = cell(ix, iy);
            for (std::uint32_t k = c.own_begin; k < c.own_begin + c.own_count; ++k) {
                Building b = placed_[k].shape;
                b.orientation = canonical_orientation(std::atan2(placed_[k].sin_o, placed_[k].cos_o));
                if (std::hypot(b.center.x, b.center.y) <= radius)
                    out.push_back(b);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// RadialBuildingField

RadialBuildingField::RadialBuildingField(const BuildingLaw &law, double radius, std::uint64_t seed)
    : law_(law), radius_(radius), seed_(seed) {
    if (!(law.density >= 0.0) || !std::isfinite(law.density))
        throw ValidationError("buildings.density", "must be >= 0");
    validate(law.width, "buildings.width");
    validate(law.length, "buildings.length");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw ValidationError("radius", "must be > 0");
    const double reach = 0.5 * std::hypot(law.width.max(), law.length.max()) + 2.0 * kContactTolerance;
    max_reach_ = reach;
    shell_width_ = std::max(2.0 * reach, 32.0);
    const double arc = std::max(2.0 * reach, 8.0);
    // rays reach radius_, buildings touching them lie within one reach more
    const auto count = static_cast<std::uint32_t>(std::ceil((radius + reach) / shell_width_)) + 1;
    std::uint32_t cells = 0;
    for (std::uint32_t j = 0; j < count; ++j) {
        Shell sh;
        sh.first_cell = cells;
        sh.bins = j == 0 ? 1u
                         : std::max<std::uint32_t>(
                               3u, static_cast<std::uint32_t>(2.0 * std::numbers::pi * j * shell_width_ / arc));
        cells += sh.bins;
        shells_.push_back(sh);
    }
    cells_.resize(cells);
}

void RadialBuildingField::reset(std::uint64_t seed) {
    seed_ = seed;
    placed_.clear();
    if (++epoch_ == 0) {
        std::fill(cells_.begin(), cells_.end(), Cell{});
        epoch_ = 1;
    }
}

const RadialBuildingField::Cell &RadialBuildingField::generate(std::uint32_t shell, std::uint32_t bin) {
    Cell &c = cells_[shells_[shell].first_cell + bin];
    if (c.epoch == epoch_)
        return c;
    const double r0 = shell * shell_width_;
    const double r1 = r0 + shell_width_;
    const double span = 2.0 * std::numbers::pi / shells_[shell].bins;
    const double phi0 = bin * span;
    Rng rng(derive_seed(seed_, (static_cast<std::uint64_t>(shell) << 32) | bin));
    const auto n = sample_poisson(law_.density * 0.5 * (r1 * r1 - r0 * r0) * span, rng);
    c.begin = static_cast<std::uint32_t>(placed_.size());
    c.count = static_cast<std::uint32_t>(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        const double rho = std::sqrt(r0 * r0 + rng.uniform() * (r1 * r1 - r0 * r0));
        const double phi = phi0 + rng.uniform() * span;
        Placed p;
        p.cx = rho * std::cos(phi);
        p.cy = rho * std::sin(phi);
        p.half_w = 0.5 * sample_mark(law_.width, rng);
        p.half_l = 0.5 * sample_mark(law_.length, rng);
        double ux, uy, s2;
        do {
            ux = rng.uniform(-1.0, 1.0);
            uy = rng.uniform();
            s2 = ux * ux + uy * uy;
        } while (s2 > 1.0 || s2 == 0.0);
        const double inv = 1.0 / std::sqrt(s2);
        p.cos_o = ux * inv;
        p.sin_o = uy * inv;
        p.reach = std::hypot(p.half_w, p.half_l) + 2.0 * kContactTolerance;
        placed_.push_back(p);
    }
    c.epoch = epoch_;
    return c;
}

// Segment origin -> p against one building, honouring the outdoor rule.
bool RadialBuildingField::blocks(const Placed &b, Point2D p, double nx, double ny) const {
    if (std::abs(nx * b.cx + ny * b.cy) > b.reach)
        return false;
    auto inside = [&](double qx, double qy) {
        const double rx = qx - b.cx;
        const double ry = qy - b.cy;
        return std::abs(b.cos_o * rx + b.sin_o * ry) <= b.half_w + kContactTolerance &&
               std::abs(-b.sin_o * rx + b.cos_o * ry) <= b.half_l + kContactTolerance;
    };
    const double rx = -b.cx;
    const double ry = -b.cy;
    if (!clip_segment(b.cos_o * rx + b.sin_o * ry, -b.sin_o * rx + b.cos_o * ry, b.cos_o * p.x + b.sin_o * p.y,
                      -b.sin_o * p.x + b.cos_o * p.y, b.half_w, b.half_l))
        return false;
    return !inside(0.0, 0.0) && !inside(p.x, p.y);
}

bool RadialBuildingField::is_outdoor_los(Point2D p) {
    std::uint32_t hint = 0;
    return is_outdoor_los(p, hint);
}

bool RadialBuildingField::is_outdoor_los(Point2D p, std::uint32_t &hint) {
    const double d = std::sqrt(p.x * p.x + p.y * p.y);
    if (d == 0.0)
        return true;
    if (!(d <= radius_))
        throw std::out_of_range("RadialBuildingField: query point outside the generated radius");
    const double nx = -p.y / d;
    const double ny = p.x / d;
    if (hint != 0 && hint <= placed_.size() && blocks(placed_[hint - 1], p, nx, ny))
        return false;

    double phi = std::atan2(p.y, p.x);
    if (phi < 0.0)
        phi += 2.0 * std::numbers::pi;
    const double turns = phi * (0.5 * std::numbers::inv_pi);
    const double slack = max_reach_ * (1.0 + 1e-12) + 1e-9;
    // sin x >= x - x^3/6 for x >= 0: a cheap, conservative edge distance.
    auto lower_sin = [](double x) { return x * (1.0 - x * x * (1.0 / 6.0)); };
    const auto last = std::min(static_cast<std::uint32_t>(shells_.size() - 1),
                               static_cast<std::uint32_t>((d + max_reach_) / shell_width_));
    auto scan = [&](std::uint32_t j, std::uint32_t bin) {
        const Cell &c = generate(j, bin);
        for (std::uint32_t k = c.begin; k < c.begin + c.count; ++k) {
            if (blocks(placed_[k], p, nx, ny)) {
                hint = k + 1;
                return true;
            }
        }
        return false;
    };
    if (scan(0, 0))
        return false;
    for (std::uint32_t j = 1; j <= last; ++j) {
        const std::uint32_t bins = shells_[j].bins;
        const double pos = turns * bins; // bin coordinate of the ray
        const auto centre = std::min(bins - 1, static_cast<std::uint32_t>(pos));
        if (scan(j, centre))
            return false;
        // A neighbour bin matters only if the ray passes within one reach of
        // the shared edge: its centres sit at least r0 sin(gap) off the ray
        // line (monotone while gap + span <= pi/2, hence bins >= 8).
        bool need_lo = true, need_hi = true;
        if (bins >= 8) {
            const double r0 = j * shell_width_;
            const double span = 2.0 * std::numbers::pi / bins;
            need_lo = r0 * lower_sin((pos - centre) * span) <= slack;
            need_hi = r0 * lower_sin((centre + 1 - pos) * span) <= slack;
        }
        if (need_lo && scan(j, centre == 0 ? bins - 1 : centre - 1))
            return false;
        if (need_hi && bins > 2 && scan(j, centre + 1 == bins ? 0 : centre + 1))
            return false;
    }
    return true;
}

std::vector<Building> RadialBuildingField::buildings_within(double radius) {
    std::vector<Building> out;
    const auto last = std::min(static_cast<std::uint32_t>(shells_.size() - 1),
                               static_cast<std::uint32_t>(radius / shell_width_));
    for (std::uint32_t j = 0; j <= last; ++j) {
        for (std::uint32_t bin = 0; bin < shells_[j].bins; ++bin) {
            const Cell &c = generate(j, bin);
            for (std::uint32_t k = c.begin; k < c.begin + c.count; ++k) {
                const Placed &p = placed_[k];
                if (std::hypot(p.cx, p.cy) > radius)
                    continue;
                out.push_back({{p.cx, p.cy}, 2.0 * p.half_w, 2.0 * p.half_l,
                               canonical_orientation(std::atan2(p.sin_o, p.cos_o))});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

LosEstimate empirical_los_probability(double d, const BuildingLaw &law, std::int64_t trials, std::uint64_t seed) {
    if (!(d >= 0.0) || !std::isfinite(d))
        throw ValidationError("distance", "must be >= 0");
    if (trials < 1)
        throw ValidationError("trials", "must be >= 1");
    LosEstimate est;
    est.distance = d;
    est.trials = trials;
    if (d == 0.0) {
        est.probability = 1.0;
        return est;
    }
    constexpr double box = 50.0;
    BuildingField field(law, d + box + 1.0, seed);
    std::int64_t los = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        field.reset(derive_seed(seed, static_cast<std::uint64_t>(t)));
        Rng rng(derive_seed(~seed, static_cast<std::uint64_t>(t)));
        Point2D a, b;
        do {
            a = {rng.uniform(-box, box), rng.uniform(-box, box)};
            const double phi = 2.0 * std::numbers::pi * rng.uniform();
            b = {a.x + d * std::cos(phi), a.y + d * std::sin(phi)};
        } while (field.is_indoor(a) || field.is_indoor(b));
        if (field.is_los(a, b))
            ++los;
    }
    const double p = static_cast<double>(los) / static_cast<double>(trials);
    est.probability = p;
    est.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return est;
}

void write_realization_csv(std::ostream &out, std::span<const Point2D> receivers, std::span<const Point2D> interferers,
                           std::span<const Building> buildings) {
    out << "kind,x,y,width,length,orientation\n";
    for (const auto &p : receivers)
        out << "user," << p.x << ',' << p.y << ",,,\n";
    for (const auto &p : interferers)
        out << "interferer," << p.x << ',' << p.y << ",,,\n";
    for (const auto &b : buildings)
        out << "building," << b.center.x << ',' << b.center.y << ',' << b.width << ',' << b.length << ','
            << b.orientation << '\n';
}

} // namespace mmwave
