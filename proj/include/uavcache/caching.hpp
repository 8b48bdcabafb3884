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

#ifndef UAVCACHE_CACHING_HPP
#define UAVCACHE_CACHING_HPP

#include "uavcache/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uavcache
{
    /// Zipf request law over F equal-size files, most popular first.
    struct ContentLibrary
    {
        double kappa = 0.0;
        std::vector<double> popularity;

        int size() const { return static_cast<int>(popularity.size()); }

        static ContentLibrary zipf(int library_size, double kappa);
    };

    enum class PolicyKind
    {
        rcp,
        mpc,
        lru_che,
        lru_empirical
    };

    std::string to_string(PolicyKind k);
    PolicyKind policy_kind_from_string(std::string_view s);

    /// Per-content caching probabilities with sum equal to the cache size.
    struct PlacementPolicy
    {
        PolicyKind kind = PolicyKind::rcp;
        int cache_size = 0;
        std::vector<double> probability;

        int size() const { return static_cast<int>(probability.size()); }

        /// Throws invalid_argument if any p_c leaves [0, 1] or the budget is off by more than tol.
        void validate(double tol = 1e-9) const;
    };

    /// a_m = m^-kappa / sum_c c^-kappa, kappa in [0, 2].
    std::vector<double> zipf_popularity(int library_size, double kappa);

    /// Probability that at least one UAV in the cooperation disc holds the file.
    double hit_probability(double p, double lambda_per_km2, double x_cop_km);

    /// sum_c a_c (1 - exp(-beta p_c)).
    double rcp_objective(std::span<const double> popularity, std::span<const double> p, double beta);

    /// Optimal randomized placement for the hit objective with budget sum p = S,
    /// where beta = pi * lambda * X_cop^2.
    PlacementPolicy solve_rcp(std::span<const double> popularity, int cache_size, double beta, double tol = 1e-10);

    /// Indicator of the S most popular contents (lowest index wins ties).
    PlacementPolicy mpc_policy(std::span<const double> popularity, int cache_size);

    /// Che characteristic-time approximation of steady-state LRU occupancy.
    PlacementPolicy lru_che(std::span<const double> popularity, int cache_size, double tol = 1e-10);

    /// Event-driven single-cache LRU under independent requests. Returns the fraction of
    /// post-warmup requests during which each content was resident, counted once the
    /// cache is full (so the occupancies sum to S whenever the cache fills).
    std::vector<double> lru_simulate(std::span<const double> popularity, int cache_size, std::int64_t n_requests,
                                     std::int64_t warmup, Rng &rng);

    /// Writes "content,probability" rows, content index starting at 1.
    void write_policy_csv(const PlacementPolicy &policy, std::ostream &os);
}

#endif
