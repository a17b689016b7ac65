#include "vortexem/finite_difference.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cassert>
#include <stdexcept>

namespace vortexem::fd {

std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int order) {
    const std::size_t n = nodes.size();
    if (order < 0 || static_cast<std::size_t>(order) >= n)
        throw std::invalid_argument("fornberg_weights: need more nodes than the derivative order");
    const std::size_t m = static_cast<std::size_t>(order);
    // c[j][k]: weight of node j for derivative k.
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k)
                    c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = c[j][m];
    return w;
}

namespace {

Stencil make_stencil(std::size_t i, std::size_t count, int order, std::size_t width) {
    if (count < width) throw std::invalid_argument("finite difference: grid too small for stencil");
    const std::size_t half = width / 2;
    std::size_t first = i >= half ? i - half : 0;
    first = std::min(first, count - width);
    std::vector<double> offsets(width);
    for (std::size_t j = 0; j < width; ++j)
        offsets[j] = static_cast<double>(first + j) - static_cast<double>(i);
    return Stencil{static_cast<std::ptrdiff_t>(first), fornberg_weights(0.0, offsets, order)};
}

}  // namespace

Stencil first_derivative_stencil(std::size_t i, std::size_t count) {
    return make_stencil(i, count, 1, 5);
}

Stencil second_derivative_stencil(std::size_t i, std::size_t count) {
    const bool interior = i >= 2 && i + 2 < count;
    return make_stencil(i, count, 2, interior ? 5 : 6);
}

namespace {

constexpr std::size_t kDerivativeWidth = 7;   // sixth order
constexpr std::size_t kQuadratureWidth = 6;   // sixth order per cell

// Weights w_j with int_0^1 f(t) dt ~ sum_j w_j f(offsets[j]) (exact for degree < size).
std::vector<double> cell_weights(const std::vector<double>& offsets) {
    const auto m = static_cast<Eigen::Index>(offsets.size());
    Eigen::MatrixXd V(m, m);
    Eigen::VectorXd moments(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index j = 0; j < m; ++j) V(k, j) = std::pow(offsets[static_cast<std::size_t>(j)], k);
        moments[k] = 1.0 / static_cast<double>(k + 1);
    }
    const Eigen::VectorXd w = V.fullPivLu().solve(moments);
    return {w.data(), w.data() + m};
}

}  // namespace

std::vector<double> derivative(std::span<const double> values, double h) {
    const std::size_t n = values.size();
    if (n < kDerivativeWidth) throw std::invalid_argument("derivative: grid too small");
    std::vector<double> out(n);
    const std::size_t half = kDerivativeWidth / 2;
    // One stencil per distinct position relative to the ends; the interior one is shared.
    std::vector<Stencil> edge(2 * half + 1);
    for (std::size_t k = 0; k <= 2 * half; ++k) {
        const std::size_t i = k <= half ? k : n - 1 - (2 * half - k);
        edge[k] = make_stencil(i, n, 1, kDerivativeWidth);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Stencil* s;
        if (i < half)
            s = &edge[i];
        else if (i + half >= n)
            s = &edge[2 * half - (n - 1 - i)];
        else
            s = &edge[half];
        const std::size_t first = i < half || i + half >= n ? static_cast<std::size_t>(s->first) : i - half;
        double acc = 0.0;
        for (std::size_t j = 0; j < s->weights.size(); ++j)
            acc += s->weights[j] * (values[first + j] - values[i]);
        out[i] = acc / h;
    }
    return out;
}

std::vector<double> cumulative_integral(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    const std::size_t w = kQuadratureWidth;
    if (n < w) throw std::invalid_argument("cumulative_integral: grid too small");
    // Cell [i, i+1] uses nodes first..first+w-1, centred on the cell where possible.
    auto first_node = [&](std::size_t i) {
        const std::size_t back = w / 2 - 1;
        std::size_t first = i >= back ? i - back : 0;
        return std::min(first, n - w);
    };
    std::vector<std::vector<double>> weights;  // cached by offset of the cell within its stencil
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t first = first_node(i);
        const std::size_t shift = i - first;
        if (weights.size() <= shift) weights.resize(shift + 1);
        if (weights[shift].empty()) {
            std::vector<double> offsets(w);
            for (std::size_t j = 0; j < w; ++j) offsets[j] = static_cast<double>(j) - static_cast<double>(shift);
            weights[shift] = cell_weights(offsets);
        }
        double cell = 0.0;
        for (std::size_t j = 0; j < w; ++j) cell += weights[shift][j] * f[first + j];
        out[i + 1] = out[i] + h * cell;
    }
    return out;
}

double trapezoid(std::span<const double> x, std::span<const double> values) {
    assert(x.size() == values.size());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        sum += 0.5 * (x[i + 1] - x[i]) * (values[i] + values[i + 1]);
    return sum;
}

}  // namespace vortexem::fd
