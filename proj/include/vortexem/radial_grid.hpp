#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vortexem {

/// Uniformly spaced dimensionless radii xi = r / R0 in [xi_min, 1].  The axis itself is
/// excluded; the radial solvers start from the small-xi series at xi_min.
class RadialGrid {
public:
    static constexpr std::size_t default_count = 2048;
    static constexpr double default_xi_min = 1e-6;
    static constexpr std::size_t min_count = 64;

    static RadialGrid uniform(std::size_t count = default_count, double xi_min = default_xi_min);

    /// Adopts externally supplied points (e.g. read back from CSV).  Throws
    /// std::invalid_argument unless the points form a valid uniform grid.
    static RadialGrid from_points(std::vector<double> points);

    std::span<const double> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    double xi_min() const { return points_.front(); }
    double spacing() const { return spacing_; }

    /// Index i such that points[i] <= xi < points[i+1], clamped to [0, size-2].
    std::size_t cell_of(double xi) const;

private:
    RadialGrid(std::vector<double> points, double spacing)
        : points_(std::move(points)), spacing_(spacing) {}

    std::vector<double> points_;
    double spacing_;
};

}  // namespace vortexem
