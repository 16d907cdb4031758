#pragma once

#include <array>
#include <cmath>

namespace sfstokes {

// Polynomial reference flow on the unit square: divergence-free velocity that
// vanishes on the whole boundary, with closed-form pressure, body force, and
// boundary stresses along y = 1. Derived for unit viscosity.
struct ManufacturedCase {
    double nu = 1.0;

    std::array<double, 2> velocity(double x, double y) const {
        const double u1 = 20.0 * x * x * (1 - x) * (1 - x) * y * (1 - y) * (1 - 2 * y);
        const double u2 = -20.0 * x * (1 - x) * (1 - 2 * x) * y * y * (1 - y) * (1 - y);
        return {u1, u2};
    }

    // row-major [du1/dx, du1/dy; du2/dx, du2/dy]
    std::array<double, 4> velocity_grad(double x, double y) const {
        const double qx = x * x * (1 - x) * (1 - x);
        const double dqx = 2 * x * (1 - x) * (1 - 2 * x);
        const double sx = x * (1 - x) * (1 - 2 * x);
        const double dsx = 1 - 6 * x + 6 * x * x;
        const double qy = y * (1 - y) * (1 - 2 * y);
        const double dqy = 1 - 6 * y + 6 * y * y;
        const double ry = y * y * (1 - y) * (1 - y);
        const double dry = 2 * y * (1 - y) * (1 - 2 * y);
        return {20 * dqx * qy, 20 * qx * dqy, -20 * dsx * ry, -20 * sx * dry};
    }

    double pressure(double x, double y) const {
        const double sx = x * (1 - x) * (1 - 2 * x);
        const double qy = y * (1 - y) * (1 - 2 * y);
        const double p5 = 6 * std::pow(x, 5) - 15 * std::pow(x, 4) + 10 * std::pow(x, 3);
        return 40 * sx * qy + 4 * p5 * (2 * y - 1) - 2;
    }

    std::array<double, 2> body_force(double x, double y) const {
        const double f2 = 120 * (2 * x - 1) * y * y * (1 - y) * (1 - y) +
                          80 * x * (1 - x) * (1 - 2 * x) * (6 * y * y - 6 * y + 1) +
                          8 * (6 * std::pow(x, 5) - 15 * std::pow(x, 4) + 10 * std::pow(x, 3));
        return {0.0, f2};
    }

    // tangential stress along y = 1 (maximum 1.25 at x = 1/2)
    double sigma_tau(double x) const {
        return 20.0 * nu * x * x * (1 - x) * (1 - x);
    }

    // normal stress along y = 1 (range [-2, 2], zero at x = 1/2)
    double sigma_n(double x) const {
        const double p5 = 6 * std::pow(x, 5) - 15 * std::pow(x, 4) + 10 * std::pow(x, 3);
        return 2.0 - 4.0 * p5;
    }
};

} // namespace sfstokes
