#pragma once

#include <array>
#include <vector>

namespace sfstokes {

// Quadrature point on the reference triangle (0,0)-(1,0)-(0,1).
struct TrianglePoint {
    double xi;
    double eta;
    double weight; // scaled so that integral over reference triangle = sum w_i f_i
};

// 25-point conical product of two 5-point Gauss rules, exact to machine
// precision for polynomials of total degree <= 8.
const std::vector<TrianglePoint>& triangle_rule_deg8();

// Gauss-Legendre rule with n points on [0,1]; exact for degree <= 2n-1.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre_01(int n);

// P2 shape functions on the reference triangle.
// Local node order: vertices (0,0),(1,0),(0,1), then edge midpoints
// (1/2,0),(1/2,1/2),(0,1/2).
void p2_values(double xi, double eta, double out[6]);
void p2_grads(double xi, double eta, double out[6][2]);

// P1 shape functions, node order (0,0),(1,0),(0,1).
void p1_values(double xi, double eta, double out[3]);
void p1_grads(double out[3][2]);

// 1D quadratic shape functions on [0,1] with nodes 0, 1/2, 1
// (used for traces of P2 fields along boundary edges).
void p2_line_values(double t, double out[3]);

} // namespace sfstokes
