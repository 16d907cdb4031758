#include "core/quadrature.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace sfstokes {

namespace {

// Conical product rule: collapse the triangle onto the unit square with
// eta = v (1 - xi), which turns the integral into
//   int_0^1 int_0^1 f(u, v (1 - u)) (1 - u) du dv.
// For f of total degree <= 8 the u-integrand has degree <= 9 and the
// v-integrand degree <= 8, so two 5-point Gauss factors (exact through
// degree 9) integrate it to machine precision.  Tabulated symmetric rules
// would use fewer points but their published coefficients carry only ~10
// digits, which is visible next to the 1e-12-level checks downstream.
std::vector<TrianglePoint> make_deg8_rule() {
    const GaussRule gu = gauss_legendre_01(5);
    const GaussRule gv = gauss_legendre_01(5);
    std::vector<TrianglePoint> pts;
    pts.reserve(gu.nodes.size() * gv.nodes.size());
    for (std::size_t i = 0; i < gu.nodes.size(); ++i)
        for (std::size_t j = 0; j < gv.nodes.size(); ++j) {
            const double u = gu.nodes[i];
            TrianglePoint p;
            p.xi = u;
            p.eta = gv.nodes[j] * (1.0 - u);
            p.weight = gu.weights[i] * gv.weights[j] * (1.0 - u);
            pts.push_back(p);
        }
    return pts;
}

} // namespace

const std::vector<TrianglePoint>& triangle_rule_deg8() {
    static const std::vector<TrianglePoint> rule = make_deg8_rule();
    return rule;
}

GaussRule gauss_legendre_01(int n) {
    if (n < 1) throw InvalidArgumentError("gauss_legendre_01: n must be >= 1");
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    // Newton iteration on Legendre polynomials over [-1,1], then map to [0,1].
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = 0.5 * (1.0 - x); // descending x -> ascending node
        r.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

void p2_values(double xi, double eta, double out[6]) {
    const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
    out[0] = l0 * (2.0 * l0 - 1.0);
    out[1] = l1 * (2.0 * l1 - 1.0);
    out[2] = l2 * (2.0 * l2 - 1.0);
    out[3] = 4.0 * l0 * l1;
    out[4] = 4.0 * l1 * l2;
    out[5] = 4.0 * l2 * l0;
}

void p2_grads(double xi, double eta, double out[6][2]) {
    const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
    out[0][0] = -(4.0 * l0 - 1.0);
    out[0][1] = -(4.0 * l0 - 1.0);
    out[1][0] = 4.0 * l1 - 1.0;
    out[1][1] = 0.0;
    out[2][0] = 0.0;
    out[2][1] = 4.0 * l2 - 1.0;
    out[3][0] = 4.0 * (l0 - l1);
    out[3][1] = -4.0 * l1;
    out[4][0] = 4.0 * l2;
    out[4][1] = 4.0 * l1;
    out[5][0] = -4.0 * l2;
    out[5][1] = 4.0 * (l0 - l2);
}

void p1_values(double xi, double eta, double out[3]) {
    out[0] = 1.0 - xi - eta;
    out[1] = xi;
    out[2] = eta;
}

void p1_grads(double out[3][2]) {
    out[0][0] = -1.0;
    out[0][1] = -1.0;
    out[1][0] = 1.0;
    out[1][1] = 0.0;
    out[2][0] = 0.0;
    out[2][1] = 1.0;
}

void p2_line_values(double t, double out[3]) {
    out[0] = (1.0 - t) * (1.0 - 2.0 * t);
    out[1] = 4.0 * t * (1.0 - t);
    out[2] = t * (2.0 * t - 1.0);
}

} // namespace sfstokes
