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

#pragma once

#include "mmwave/params.hpp"
#include "mmwave/rng.hpp"

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace mmwave {

struct Point2D {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2D &, const Point2D &) = default;
};

inline double distance(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Closed rectangle. `width` runs along the direction `orientation` (radians,
// canonical range [0, pi)), `length` along its normal.
struct Building {
    Point2D center;
    double width = 0.0;
    double length = 0.0;
    double orientation = 0.0;
};

Building make_building(Point2D center, double width, double length, double orientation);

// Disc window centred on the typical receiver.
struct SimWindow {
    double radius = 1128.3791670955126; // area 4 km^2

    double area() const;
};

void validate(const SimWindow &window);

// Tolerance for boundary contact, in metres.
inline constexpr double kContactTolerance = 1e-9;

std::vector<Point2D> sample_ppp(double intensity, const SimWindow &window, std::uint64_t seed);

std::vector<Building> sample_buildings(double building_density, const MarkLaw &width_law, const MarkLaw &length_law,
                                       const SimWindow &window, std::uint64_t seed);

bool contains(const Building &building, Point2D p);

// Exact segment-vs-closed-rectangle test in the rectangle frame.
bool segment_intersects(const Building &building, Point2D a, Point2D b);

// True iff segment [a, b] touches no building. a == b is always LOS.
bool is_los(Point2D a, Point2D b, std::span<const Building> buildings);

// Boolean building process over the plane, generated lazily per grid cell.
// Each cell owns an RNG stream keyed by its global cell coordinates, so the
// realization does not depend on query order or on the covered extent.
// Queries must stay inside [-half_extent, half_extent]^2.
class BuildingField {
public:
    BuildingField(const BuildingLaw &law, double half_extent, std::uint64_t seed);

    // Regenerates the field under a new seed, keeping allocations.
    void reset(std::uint64_t seed);

    const BuildingLaw &law() const noexcept { return law_; }
    double cell_size() const noexcept { return cell_size_; }
    double half_extent() const noexcept { return half_extent_; }

    bool is_los(Point2D a, Point2D b);

    // LOS between two outdoor users: buildings containing either endpoint
    // are disregarded, which conditions the Poisson field on both endpoints
    // being outdoors.
    bool is_outdoor_los(Point2D a, Point2D b);

    // As above, but first tries the building remembered in `hint` (0 when
    // empty) and remembers the blocker found. The answer never depends on
    // the hint; rays in similar directions often share a blocker.
    bool is_outdoor_los(Point2D a, Point2D b, std::uint32_t &hint);

    bool is_indoor(Point2D p);

    // All buildings whose centre lies in the disc of the given radius.
    std::vector<Building> buildings_within(double radius);

private:
    struct Placed {
        Building shape;
        double cos_o, sin_o;
        double half_w, half_l;
        double box_hx, box_hy;
        double reach; // circumradius plus contact tolerance
    };
    struct Cell {
        std::uint32_t own_epoch = 0;
        std::uint32_t cand_epoch = 0;
        std::uint32_t own_begin = 0, own_count = 0;
        std::uint32_t cand_begin = 0, cand_count = 0;
    };

    bool blocked(Point2D a, Point2D b, bool skip_endpoint_buildings, std::uint32_t *blocker = nullptr);
    bool in_grid(long ix, long iy) const noexcept;
    Cell &cell(long ix, long iy);
    void generate_own(long ix, long iy);
    void gather_candidates(long ix, long iy);
    bool hits(const Placed &p, Point2D a, Point2D b) const;
    bool holds(const Placed &p, Point2D q) const;

    BuildingLaw law_;
    double half_extent_;
    double cell_size_;
    long lo_, hi_; // inclusive cell index range (with a one-cell margin)
    long span_;
    std::uint64_t seed_;
    double cell_mean_;     // expected buildings per cell
    double cell_exp_neg_;  // exp(-cell_mean_)
    std::uint32_t epoch_ = 1;
    std::uint32_t ray_ = 0;
    std::vector<Cell> cells_;
    std::vector<Placed> placed_;
    std::vector<std::uint32_t> ray_stamp_;
    std::vector<std::uint32_t> candidates_;
};

// The same boolean building process generated lazily on a polar grid
// centred at the origin. Answers LOS only for segments from the origin,
// which is all the dipole simulation asks: a radial ray stays in one angular
// bin per shell, and any building that can touch it has its centre in that
// bin or one of its two neighbours.
class RadialBuildingField {
public:
    RadialBuildingField(const BuildingLaw &law, double radius, std::uint64_t seed);

    void reset(std::uint64_t seed);

    const BuildingLaw &law() const noexcept { return law_; }
    double radius() const noexcept { return radius_; }

    // LOS from the origin to p between outdoor users; buildings containing
    // either endpoint are disregarded.
    bool is_outdoor_los(Point2D p);
    // With a blocker hint, as BuildingField::is_outdoor_los.
    bool is_outdoor_los(Point2D p, std::uint32_t &hint);

    std::vector<Building> buildings_within(double radius);

private:
    struct Placed {
        double cx, cy;
        double cos_o, sin_o;
        double half_w, half_l;
        double reach;
    };
    struct Shell {
        std::uint32_t first_cell = 0;
        std::uint32_t bins = 1;
    };
    struct Cell {
        std::uint32_t epoch = 0;
        std::uint32_t begin = 0, count = 0;
    };

    const Cell &generate(std::uint32_t shell, std::uint32_t bin);
    bool blocks(const Placed &b, Point2D p, double nx, double ny) const;

    BuildingLaw law_;
    double radius_;
    double shell_width_;
    double max_reach_;
    std::uint64_t seed_;
    std::uint32_t epoch_ = 1;
    std::vector<Shell> shells_;
    std::vector<Cell> cells_;
    std::vector<Placed> placed_;
};

struct LosEstimate {
    double distance = 0.0;
    double probability = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
};

// Fraction of random length-d segments with outdoor endpoints that are LOS.
// Every trial draws a fresh field; an endpoint that falls inside a building
// triggers a fresh segment position and direction.
LosEstimate empirical_los_probability(double d, const BuildingLaw &law, std::int64_t trials, std::uint64_t seed);

// Debug dump: kind,x,y,width,length,orientation
void write_realization_csv(std::ostream &out, std::span<const Point2D> receivers, std::span<const Point2D> interferers,
                           std::span<const Building> buildings);

} // namespace mmwave
