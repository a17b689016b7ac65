#include "vortexem/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vortexem {

namespace {

void check(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("invalid radial grid: " + what);
}

}  // namespace

RadialGrid RadialGrid::uniform(std::size_t count, double xi_min) {
    check(count >= min_count, "needs at least 64 points");
    check(xi_min >= 1e-8 && xi_min <= 1e-3, "xi_min must lie in [1e-8, 1e-3]");
    const double h = (1.0 - xi_min) / static_cast<double>(count - 1);
    std::vector<double> pts(count);
    for (std::size_t i = 0; i + 1 < count; ++i) pts[i] = xi_min + static_cast<double>(i) * h;
    pts.back() = 1.0;
    return RadialGrid(std::move(pts), h);
}

RadialGrid RadialGrid::from_points(std::vector<double> points) {
    check(points.size() >= min_count, "needs at least 64 points");
    check(points.back() == 1.0, "last point must be exactly 1");
    check(points.front() >= 1e-8 && points.front() <= 1e-3, "xi_min must lie in [1e-8, 1e-3]");
    const double h = (1.0 - points.front()) / static_cast<double>(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        check(points[i] > points[i - 1], "points must be strictly increasing");
        check(std::abs(points[i] - points[i - 1] - h) <= 1e-6 * h, "points must be uniformly spaced");
    }
    return RadialGrid(std::move(points), h);
}

std::size_t RadialGrid::cell_of(double xi) const {
    const double t = (xi - points_.front()) / spacing_;
    if (!(t > 0.0)) return 0;
    const auto last = points_.size() - 2;
    return std::min(static_cast<std::size_t>(t), last);
}

}  // namespace vortexem
