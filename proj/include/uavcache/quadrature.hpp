// SPDX-License-Identifier: Apache-2.0
//
// uavcache: cache-enabled cooperative UAV network analysis
// Copyright (C) 2026 The uavcache authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef UAVCACHE_QUADRATURE_HPP
#define UAVCACHE_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace uavcache
{
    /// Gauss-Hermite rule for weight exp(-x^2) on the real line.
    struct HermiteRule
    {
        std::vector<double> nodes;   // ascending
        std::vector<double> weights; // sum to sqrt(pi)

        std::size_t size() const { return nodes.size(); }
    };

    inline constexpr int max_hermite_nodes = 180;
    inline constexpr int default_hermite_nodes = 40;

    /// Nodes and weights of the n-point rule, exact for polynomials of degree 2n-1.
    /// n must lie in [1, max_hermite_nodes]; otherwise config_error.
    HermiteRule gauss_hermite_nodes(int n);

    /// Adaptive Gauss-Kronrod (15 point) integration of f over [a, b].
    /// Throws convergence_error when the error estimate exceeds rel_tol * |I| + abs_tol.
    double integrate_adaptive(const std::function<double(double)> &f, double a, double b,
                              double rel_tol, double abs_tol = 0.0);

    /// Composite 8-point Gauss-Legendre nodes on [a, b] split into equal panels.
    struct LegendreGrid
    {
        std::vector<double> nodes;
        std::vector<double> weights;
    };
    LegendreGrid composite_legendre(double a, double b, int panels);
}

#endif
