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

#include "uavcache/caching.hpp"

#include "uavcache/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>

namespace uavcache
{
    namespace
    {
        void check_popularity(std::span<const double> a, int cache_size, const char *who)
        {
            if (a.empty())
                detail::fail_argument(std::string(who) + ": empty popularity vector");
            for (double x : a)
                if (!(x > 0.0) || !std::isfinite(x))
                    detail::fail_argument(std::string(who) + ": popularity entries must be positive and finite");
            if (cache_size < 1 || cache_size > static_cast<int>(a.size()))
                detail::fail_argument(std::string(who) + ": cache size must lie in [1, F], got S = " +
                                      std::to_string(cache_size) + " with F = " + std::to_string(a.size()));
        }

        PlacementPolicy saturated(PolicyKind kind, std::size_t n)
        {
            return {kind, static_cast<int>(n), std::vector<double>(n, 1.0)};
        }
    }

    std::string to_string(PolicyKind k)
    {
        switch (k)
        {
        case PolicyKind::rcp:
            return "rcp";
        case PolicyKind::mpc:
            return "mpc";
        case PolicyKind::lru_che:
            return "lru_che";
        case PolicyKind::lru_empirical:
            return "lru_empirical";
        }
        return "?";
    }

    PolicyKind policy_kind_from_string(std::string_view s)
    {
        for (PolicyKind k : {PolicyKind::rcp, PolicyKind::mpc, PolicyKind::lru_che, PolicyKind::lru_empirical})
            if (s == to_string(k))
                return k;
        detail::fail_argument("unknown policy '" + std::string(s) + "' (expected rcp, mpc, lru_che or lru_empirical)");
    }

    void PlacementPolicy::validate(double tol) const
    {
        double sum = 0.0;
        for (double p : probability)
        {
            if (!(p >= 0.0 && p <= 1.0))
                detail::fail_argument("placement: probabilities must lie in [0, 1]");
            sum += p;
        }
        if (std::abs(sum - cache_size) > tol)
            detail::fail_argument("placement: probabilities sum to " + std::to_string(sum) + ", expected S = " +
                                  std::to_string(cache_size));
    }

    ContentLibrary ContentLibrary::zipf(int library_size, double kappa)
    {
        return {kappa, zipf_popularity(library_size, kappa)};
    }

    std::vector<double> zipf_popularity(int library_size, double kappa)
    {
        if (library_size < 1)
            detail::fail_argument("zipf_popularity: library size must be >= 1");
        if (!(kappa >= 0.0 && kappa <= 2.0))
            detail::fail_argument("zipf_popularity: kappa must lie in [0, 2], got " + std::to_string(kappa));
        std::vector<double> a(library_size);
        for (int m = 0; m < library_size; ++m)
            a[m] = std::pow(m + 1.0, -kappa);
        // sum smallest terms first
        const double norm = std::accumulate(a.rbegin(), a.rend(), 0.0);
        for (double &x : a)
            x /= norm;
        return a;
    }

    double hit_probability(double p, double lambda_per_km2, double x_cop_km)
    {
        if (!(p >= 0.0 && p <= 1.0) || !(lambda_per_km2 >= 0.0) || !(x_cop_km >= 0.0) ||
            !std::isfinite(lambda_per_km2) || !std::isfinite(x_cop_km))
            detail::fail_argument("hit_probability: need p in [0, 1], lambda >= 0, X_cop >= 0");
        return -std::expm1(-std::numbers::pi * lambda_per_km2 * x_cop_km * x_cop_km * p);
    }

    double rcp_objective(std::span<const double> popularity, std::span<const double> p, double beta)
    {
        if (popularity.size() != p.size())
            detail::fail_argument("rcp_objective: size mismatch");
        double total = 0.0;
        for (std::size_t c = 0; c < p.size(); ++c)
            total += popularity[c] * -std::expm1(-beta * p[c]);
        return total;
    }

    PlacementPolicy solve_rcp(std::span<const double> popularity, int cache_size, double beta, double tol)
    {
        check_popularity(popularity, cache_size, "solve_rcp");
        if (!(beta > 0.0) || !std::isfinite(beta))
            detail::fail_argument("solve_rcp: beta = pi lambda X_cop^2 must be positive");
        const std::size_t n = popularity.size();
        if (cache_size == static_cast<int>(n))
            return saturated(PolicyKind::rcp, n);

        // Stationarity: a_c beta exp(-beta p_c) = nu on interior coordinates, so
        // p_c(nu) = clip((log(a_c beta) - log nu) / beta). Bisect on log nu.
        std::vector<double> log_gain(n);
        for (std::size_t c = 0; c < n; ++c)
            log_gain[c] = std::log(popularity[c] * beta);

        std::vector<double> p(n);
        auto fill = [&](double log_nu) {
            double sum = 0.0;
            for (std::size_t c = 0; c < n; ++c)
            {
                p[c] = std::clamp((log_gain[c] - log_nu) / beta, 0.0, 1.0);
                sum += p[c];
            }
            return sum - cache_size;
        };

        double lo = *std::min_element(log_gain.begin(), log_gain.end()) - beta; // every p_c = 1
        double hi = *std::max_element(log_gain.begin(), log_gain.end());        // every p_c = 0
        if (!(fill(lo) >= 0.0) || !(fill(hi) <= 0.0))
            throw internal_error("solve_rcp: multiplier bracket does not straddle the budget");

        double residual = 0.0;
        for (int it = 0; it < 400; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            residual = fill(mid);
            if (std::abs(residual) < tol || mid == lo || mid == hi)
                break;
            (residual > 0.0 ? lo : hi) = mid;
        }

        // With tiny beta the residual is steep in log nu and bisection bottoms out at
        // double resolution; spread what is left evenly over the interior coordinates.
        for (int pass = 0; pass < 4 && std::abs(residual) >= tol; ++pass)
        {
            std::size_t interior = 0;
            for (double x : p)
                interior += (x > 0.0 && x < 1.0);
            if (interior == 0)
                break;
            const double shift = -residual / static_cast<double>(interior);
            residual = -static_cast<double>(cache_size);
            for (double &x : p)
            {
                if (x > 0.0 && x < 1.0)
                    x = std::clamp(x + shift, 0.0, 1.0);
                residual += x;
            }
        }
        if (std::abs(residual) >= tol)
            throw internal_error("solve_rcp: budget residual " + std::to_string(residual) + " above tolerance");
        return {PolicyKind::rcp, cache_size, std::move(p)};
    }

    PlacementPolicy mpc_policy(std::span<const double> popularity, int cache_size)
    {
        check_popularity(popularity, cache_size, "mpc_policy");
        std::vector<std::size_t> order(popularity.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t i, std::size_t j) { return popularity[i] > popularity[j]; });
        std::vector<double> p(popularity.size(), 0.0);
        for (int k = 0; k < cache_size; ++k)
            p[order[k]] = 1.0;
        return {PolicyKind::mpc, cache_size, std::move(p)};
    }

    PlacementPolicy lru_che(std::span<const double> popularity, int cache_size, double tol)
    {
        check_popularity(popularity, cache_size, "lru_che");
        const std::size_t n = popularity.size();
        if (cache_size == static_cast<int>(n))
            return saturated(PolicyKind::lru_che, n);

        std::vector<double> q(n);
        auto fill = [&](double t) {
            double sum = 0.0;
            for (std::size_t c = 0; c < n; ++c)
            {
                q[c] = -std::expm1(-popularity[c] * t);
                sum += q[c];
            }
            return sum - cache_size;
        };

        double lo = 0.0, hi = 1.0;
        while (fill(hi) < 0.0)
        {
            lo = hi;
            hi *= 2.0;
            if (!std::isfinite(hi))
                throw internal_error("lru_che: characteristic time diverged");
        }
        double residual = fill(hi);
        for (int it = 0; it < 400 && std::abs(residual) >= tol; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            residual = fill(mid);
            if (mid == lo || mid == hi)
                break;
            (residual < 0.0 ? lo : hi) = mid;
        }
        if (std::abs(residual) >= tol)
            throw internal_error("lru_che: budget residual " + std::to_string(residual) + " above tolerance");
        return {PolicyKind::lru_che, cache_size, std::move(q)};
    }

    std::vector<double> lru_simulate(std::span<const double> popularity, int cache_size, std::int64_t n_requests,
                                     std::int64_t warmup, Rng &rng)
    {
        check_popularity(popularity, cache_size, "lru_simulate");
        if (!(warmup >= 0 && n_requests > warmup))
            detail::fail_argument("lru_simulate: need n_requests > warmup >= 0");

        const int n = static_cast<int>(popularity.size());
        std::discrete_distribution<int> request(popularity.begin(), popularity.end());

        // intrusive recency list: head is most recent
        constexpr int none = -1;
        std::vector<int> prev(n, none), next(n, none);
        std::vector<char> cached(n, 0);
        int head = none, tail = none, resident = 0;

        auto unlink = [&](int c) {
            (prev[c] != none ? next[prev[c]] : head) = next[c];
            (next[c] != none ? prev[next[c]] : tail) = prev[c];
            prev[c] = next[c] = none;
        };
        auto push_front = [&](int c) {
            next[c] = head;
            prev[c] = none;
            if (head != none)
                prev[head] = c;
            head = c;
            if (tail == none)
                tail = c;
        };

        // occupancy_k = share of counted steps t (state after request t) with k resident
        std::vector<double> time_in_cache(n, 0.0);
        std::vector<std::int64_t> since(n, 0);
        std::int64_t start = -1;

        for (std::int64_t t = 0; t < n_requests; ++t)
        {
            const int c = request(rng);
            int evicted = none;
            const bool inserted = !cached[c];
            if (!inserted)
                unlink(c);
            else
            {
                if (resident == cache_size)
                {
                    evicted = tail;
                    unlink(evicted);
                    cached[evicted] = 0;
                    --resident;
                }
                cached[c] = 1;
                ++resident;
            }
            push_front(c);

            if (start < 0)
            {
                if (t >= warmup && resident == cache_size)
                {
                    start = t;
                    std::fill(since.begin(), since.end(), t);
                }
                continue;
            }
            if (evicted != none)
                time_in_cache[evicted] += static_cast<double>(t - since[evicted]);
            if (inserted)
                since[c] = t;
        }

        std::vector<double> occupancy(n, 0.0);
        if (start < 0)
            return occupancy;
        const double counted = static_cast<double>(n_requests - start);
        for (int k = 0; k < n; ++k)
        {
            if (cached[k])
                time_in_cache[k] += static_cast<double>(n_requests - since[k]);
            occupancy[k] = time_in_cache[k] / counted;
        }
        return occupancy;
    }

    void write_policy_csv(const PlacementPolicy &policy, std::ostream &os)
    {
        os << "content,probability\n";
        const auto old = os.precision(12);
        for (int c = 0; c < policy.size(); ++c)
            os << (c + 1) << ',' << policy.probability[c] << '\n';
        os.precision(old);
    }
}
