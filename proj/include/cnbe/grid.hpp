#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>

namespace cnbe {

struct Extent {
    double x_min = 0.0, x_max = 16.0, y_min = 0.0, y_max = 16.0;

    [[nodiscard]] bool degenerate() const { return !(x_max > x_min) || !(y_max > y_min); }
    bool operator==(const Extent&) const = default;
};

// Regular G x G lattice, corners inclusive, spacing extent/(G-1) per axis.
// Site k = iy*G + ix sits at (x_min + ix*dx, y_min + iy*dy): row-major with
// x varying fastest.
struct Grid {
    int g = 0;
    Extent extent;
    Eigen::MatrixXd sites;  // d x 2, d = g*g

    [[nodiscard]] int d() const { return g * g; }
};

struct AnisotropyParams {
    double stretch = 1.0;   // A > 0
    double rotation = 0.0;  // omega in [-pi/2, 0]
};

inline Grid build_grid(int g, const Extent& extent) {
    if (g < 2) throw std::invalid_argument("build_grid: side length must be >= 2");
    if (extent.degenerate()) throw std::invalid_argument("build_grid: degenerate extent");
    Grid grid;
    grid.g = g;
    grid.extent = extent;
    grid.sites.resize(g * g, 2);
    const double dx = (extent.x_max - extent.x_min) / (g - 1);
    const double dy = (extent.y_max - extent.y_min) / (g - 1);
    for (int iy = 0; iy < g; ++iy) {
        for (int ix = 0; ix < g; ++ix) {
            grid.sites(iy * g + ix, 0) = extent.x_min + ix * dx;
            grid.sites(iy * g + ix, 1) = extent.y_min + iy * dy;
        }
    }
    return grid;
}

// s* = diag(1, 1/A) R(omega) s.
inline Eigen::Vector2d anisotropy_transform(const Eigen::Vector2d& s, const AnisotropyParams& p) {
    if (!(p.stretch > 0.0)) throw std::invalid_argument("anisotropy_transform: stretch must be > 0");
    const double c = std::cos(p.rotation);
    const double sn = std::sin(p.rotation);
    const double rx = c * s(0) - sn * s(1);
    const double ry = sn * s(0) + c * s(1);
    return {rx, ry / p.stretch};
}

inline Eigen::MatrixXd pairwise_distances(const Grid& grid,
                                          const std::optional<AnisotropyParams>& aniso = std::nullopt) {
    const int d = grid.d();
    Eigen::MatrixXd pts = grid.sites;
    if (aniso) {
        for (int i = 0; i < d; ++i) {
            pts.row(i) = anisotropy_transform(grid.sites.row(i).transpose(), *aniso).transpose();
        }
    }
    Eigen::MatrixXd dist(d, d);
    for (int i = 0; i < d; ++i) {
        dist(i, i) = 0.0;
        for (int j = i + 1; j < d; ++j) {
            const double h = (pts.row(i) - pts.row(j)).norm();
            dist(i, j) = h;
            dist(j, i) = h;
        }
    }
    return dist;
}

}  // namespace cnbe
