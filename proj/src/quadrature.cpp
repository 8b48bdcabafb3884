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

#include "uavcache/quadrature.hpp"

#include "uavcache/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace uavcache
{
    HermiteRule gauss_hermite_nodes(int n)
    {
        if (n < 1 || n > max_hermite_nodes)
            throw config_error("gauss_hermite_nodes: n must lie in [1, " + std::to_string(max_hermite_nodes) +
                               "], got " + std::to_string(n));

        // Newton iteration on the orthonormal Hermite recurrence; roots are symmetric,
        // so only the positive half is searched. Initial guesses follow the usual
        // asymptotic placements of the largest roots.
        const double pim4 = std::pow(std::numbers::pi, -0.25);
        const int half = (n + 1) / 2;
        std::vector<double> x(n), w(n);
        double z = 0.0;
        for (int i = 0; i < half; ++i)
        {
            if (i == 0)
                z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
            else if (i == 1)
                z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
            else if (i == 2)
                z = 1.86 * z - 0.86 * x[0];
            else if (i == 3)
                z = 1.91 * z - 0.91 * x[1];
            else
                z = 2.0 * z - x[i - 2];

            double pp = 0.0;
            int it = 0;
            for (; it < 100; ++it)
            {
                double p1 = pim4, p2 = 0.0;
                for (int j = 0; j < n; ++j)
                {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
                }
                pp = std::sqrt(2.0 * n) * p2;
                const double z1 = z;
                z = z1 - p1 / pp;
                if (std::abs(z - z1) <= 3e-15 * std::max(1.0, std::abs(z)))
                    break;
            }
            if (it == 100 || !std::isfinite(z))
                throw config_error("gauss_hermite_nodes: Newton iteration failed for n = " + std::to_string(n));
            x[i] = z;
            x[n - 1 - i] = -z;
            w[i] = 2.0 / (pp * pp);
            w[n - 1 - i] = w[i];
        }
        if (n % 2 == 1)
            x[half - 1] = 0.0;

        double total = 0.0;
        for (double wi : w)
            total += wi;
        if (std::abs(total - std::sqrt(std::numbers::pi)) > 1e-12)
            throw config_error("gauss_hermite_nodes: unstable rule for n = " + std::to_string(n));

        HermiteRule rule;
        rule.nodes.assign(x.rbegin(), x.rend());
        rule.weights.assign(w.rbegin(), w.rend());
        return rule;
    }

    double integrate_adaptive(const std::function<double(double)> &f, double a, double b, double rel_tol, double abs_tol)
    {
        if (a == b)
            return 0.0;
        // ask for a tenth of the tolerance, reject only if the estimate misses it outright
        double err = 0.0, l1 = 0.0;
        const double value =
            boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 25, 0.1 * rel_tol, &err, &l1);
        if (!std::isfinite(value) || err > rel_tol * std::abs(value) + abs_tol)
            throw convergence_error("adaptive quadrature on [" + std::to_string(a) + ", " + std::to_string(b) +
                                    "] stopped at error " + std::to_string(err) + " for value " +
                                    std::to_string(value));
        return value;
    }

    LegendreGrid composite_legendre(double a, double b, int panels)
    {
        using rule = boost::math::quadrature::gauss<double, 8>;
        const auto &abscissa = rule::abscissa();
        const auto &weight = rule::weights();

        LegendreGrid grid;
        grid.nodes.reserve(static_cast<std::size_t>(panels) * 8);
        grid.weights.reserve(grid.nodes.capacity());
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p)
        {
            const double mid = a + (p + 0.5) * h;
            const double half = 0.5 * h;
            // boost stores the non-negative half of the symmetric rule
            for (std::size_t k = 0; k < abscissa.size(); ++k)
            {
                if (abscissa[k] == 0.0)
                {
                    grid.nodes.push_back(mid);
                    grid.weights.push_back(half * weight[k]);
                    continue;
                }
                grid.nodes.push_back(mid - half * abscissa[k]);
                grid.weights.push_back(half * weight[k]);
                grid.nodes.push_back(mid + half * abscissa[k]);
                grid.weights.push_back(half * weight[k]);
            }
        }
        return grid;
    }
}
