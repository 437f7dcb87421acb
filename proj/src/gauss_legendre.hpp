#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace weylscatter::detail {

// Nodes and weights of the N-point Gauss-Legendre rule on [-1, 1], found by
// Newton iteration on the three-term recurrence.
template <int N>
struct GaussLegendre {
    std::array<double, N> nodes{};
    std::array<double, N> weights{};

    GaussLegendre() {
        for (int i = 0; i < (N + 1) / 2; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= N; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[N - 1 - i] = x;
            weights[i] = w;
            weights[N - 1 - i] = w;
        }
    }
};

}  // namespace weylscatter::detail
