#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sphns {

double RadialGrid::min_dr() const {
    return *std::min_element(dr.begin(), dr.end());
}

RadialGrid make_grid(double a, double r_max, int n, double stretch) {
    if (!(a > 0.0))
        throw std::invalid_argument("make_grid: a must be positive");
    if (!(r_max > a))
        throw std::invalid_argument("make_grid: r_max must exceed a");
    if (n < 4)
        throw std::invalid_argument("make_grid: need at least 4 cells");
    if (!(stretch >= 1.0))
        throw std::invalid_argument("make_grid: stretch must be >= 1");

    RadialGrid g;
    g.a = a;
    g.r_max = r_max;
    g.n = n;
    g.faces.resize(n + 1);
    g.nodes.resize(n);
    g.dr.resize(n);

    const double length = r_max - a;
    if (stretch == 1.0) {
        for (int i = 0; i <= n; ++i)
            g.faces[i] = a + length * static_cast<double>(i) / n;
    } else {
        // widths w_i = w0 * q^i with q = stretch^(1/n)
        const double q = std::pow(stretch, 1.0 / n);
        const double w0 = length * (q - 1.0) / (std::pow(q, n) - 1.0);
        g.faces[0] = a;
        double w = w0;
        for (int i = 0; i < n; ++i) {
            g.faces[i + 1] = g.faces[i] + w;
            w *= q;
        }
    }
    g.faces[n] = r_max;  // pin the outer face against accumulation drift

    for (int i = 0; i < n; ++i) {
        g.nodes[i] = 0.5 * (g.faces[i] + g.faces[i + 1]);
        g.dr[i] = g.faces[i + 1] - g.faces[i];
        if (!(g.dr[i] > 0.0))
            throw std::invalid_argument("make_grid: degenerate cell width");
    }
    return g;
}

double weighted_lp_norm(const RadialGrid& grid, std::span<const double> field,
                        std::span<const double> rho, double p, double r_pow,
                        double rho_pow) {
    if (!(p >= 1.0))
        throw std::invalid_argument("weighted_lp_norm: p must be >= 1");
    if (field.size() != static_cast<size_t>(grid.n))
        throw std::invalid_argument("weighted_lp_norm: field size mismatch");
    if (rho_pow != 0.0 && rho.size() != static_cast<size_t>(grid.n))
        throw std::invalid_argument("weighted_lp_norm: rho size mismatch");

    double sum = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        double term = std::pow(std::fabs(field[i]), p) * grid.dr[i];
        if (r_pow != 0.0)
            term *= std::pow(grid.nodes[i], p * r_pow);
        if (rho_pow != 0.0)
            term *= std::pow(rho[i], p * rho_pow);
        sum += term;
    }
    return p == 1.0 ? sum : std::pow(sum, 1.0 / p);
}

double sup_norm(std::span<const double> field) {
    if (field.empty())
        throw std::invalid_argument("sup_norm: empty field");
    double m = 0.0;
    for (double x : field)
        m = std::max(m, std::fabs(x));
    return m;
}

namespace {

// Derivative at x of the quadratic through (xa,fa), (xb,fb), (xc,fc).
// Written in difference form against fb: the three Lagrange weights sum to
// zero, so the fb term drops out exactly and constant fields differentiate
// to exactly zero.
double lagrange3_deriv(double x, double xa, double xb, double xc, double fa,
                       double fb, double fc) {
    const double wa = (2.0 * x - xb - xc) / ((xa - xb) * (xa - xc));
    const double wc = (2.0 * x - xa - xb) / ((xc - xa) * (xc - xb));
    return wa * (fa - fb) + wc * (fc - fb);
}

}  // namespace

std::vector<double> radial_derivative(const RadialGrid& grid,
                                      std::span<const double> field) {
    if (grid.n < 3)
        throw std::invalid_argument("radial_derivative: need at least 3 nodes");
    if (field.size() != static_cast<size_t>(grid.n))
        throw std::invalid_argument("radial_derivative: field size mismatch");

    const auto& x = grid.nodes;
    const int n = grid.n;
    std::vector<double> d(n);
    d[0] = lagrange3_deriv(x[0], x[0], x[1], x[2], field[0], field[1], field[2]);
    for (int i = 1; i < n - 1; ++i)
        d[i] = lagrange3_deriv(x[i], x[i - 1], x[i], x[i + 1], field[i - 1],
                               field[i], field[i + 1]);
    d[n - 1] = lagrange3_deriv(x[n - 1], x[n - 3], x[n - 2], x[n - 1],
                               field[n - 3], field[n - 2], field[n - 1]);
    return d;
}

}  // namespace sphns
