#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "cavityq/errors.hpp"

namespace cavityq {

// Gauss-Legendre rule on [-1, 1].  Nodes are found by Newton iteration on
// the Legendre polynomial from the Chebyshev initial guess; weights follow
// from the derivative at the node.  Exact for polynomials of degree
// 2n - 1, spectrally accurate for the smooth Gaussians integrated here.
class GaussLegendre {
public:
    explicit GaussLegendre(int n) {
        if (n < 1)
            throw MalformedInput("quadrature order must be at least 1");
        nodes_.resize(n);
        weights_.resize(n);
        const double pi = std::numbers::pi;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                // Legendre recurrence for P_n(x) and P_n'(x)
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15)
                    break;
            }
            nodes_[i] = -x;
            nodes_[n - 1 - i] = x;
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights_[i] = w;
            weights_[n - 1 - i] = w;
        }
    }

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            sum += weights_[i] * f(mid + half * nodes_[i]);
        return half * sum;
    }

    template <class F>
    double integrate_2d(F&& f, double ax, double bx, double ay, double by) const {
        const double midx = 0.5 * (ax + bx), halfx = 0.5 * (bx - ax);
        const double midy = 0.5 * (ay + by), halfy = 0.5 * (by - ay);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const double x = midx + halfx * nodes_[i];
            double row = 0.0;
            for (std::size_t j = 0; j < nodes_.size(); ++j)
                row += weights_[j] * f(x, midy + halfy * nodes_[j]);
            sum += weights_[i] * row;
        }
        return halfx * halfy * sum;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

// Plain Riemann sum over a uniform count x count grid on [lo, hi]^2 with
// cell-area weighting, matching the sampling used for CSV-exported Q-function
// grids.  Adequate for rapidly decaying integrands away from the boundary.
template <class F>
double grid_sum_2d(F&& f, double lo, double hi, int count) {
    if (count < 2 || !(hi > lo))
        throw MalformedInput("grid requires count >= 2 and hi > lo");
    const double step = (hi - lo) / (count - 1);
    double sum = 0.0;
    for (int i = 0; i < count; ++i) {
        const double x = (i == count - 1) ? hi : lo + i * step;
        for (int j = 0; j < count; ++j) {
            const double y = (j == count - 1) ? hi : lo + j * step;
            sum += f(x, y);
        }
    }
    return sum * step * step;
}

}  // namespace cavityq
