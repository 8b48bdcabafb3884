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

#ifndef UAVCACHE_SIMULATOR_HPP
#define UAVCACHE_SIMULATOR_HPP

#include "uavcache/analytics.hpp"
#include "uavcache/caching.hpp"
#include "uavcache/channel.hpp"
#include "uavcache/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uavcache
{
    struct UavRecord
    {
        double x_km = 0.0;
        double y_km = 0.0;
        LinkMode mode = LinkMode::los;
        double fading = 1.0;
        double shadowing = 1.0;
        int subchannel = 0;
        std::vector<int> cache; // sorted content indices

        double radius() const;
        bool caches(int c) const;
    };

    /// One draw of the UAV layer inside the sampling disc around the typical user.
    struct NetworkRealization
    {
        std::vector<UavRecord> uavs;
        double window_km = 0.0;
        std::uint64_t seed = 0;
    };

    /// Monte Carlo mean with its standard error.
    struct SimEstimate
    {
        double mean = 0.0;
        double std_error = 0.0;
        std::int64_t n_trials = 0;

        /// 95% normal half-width.
        double half_width() const { return 1.96 * std_error; }
    };

    enum class CacheMode
    {
        independent, // each content an independent coin with probability p_c
        exact_s      // exactly S files per UAV, marginals p_c (systematic sampling)
    };

    std::string to_string(CacheMode m);
    CacheMode cache_mode_from_string(std::string_view s);

    struct SimConfig
    {
        std::int64_t trials = 100000;
        std::uint64_t seed = 1;
        double r_max_km = 0.0;       // 0 selects 30 * max(X_cop, H)
        double sir_cap = 1e6;
        CacheMode cache_mode = CacheMode::independent;
        bool conditioned = true;     // draw the cooperator count from the zero-truncated Poisson law
        bool far_field = true;       // interference from beyond r_max
        double far_field_threshold = 1e-7; // received power above which far UAVs are drawn one by one
        int threads = 1;

        double window_km(const ScenarioConfig &cfg) const;

        void validate() const;

        bool operator==(const SimConfig &) const = default;
    };

    NetworkRealization sample_network(double lambda, double r_max_km, std::uint64_t seed);
    NetworkRealization sample_network(double lambda, double r_max_km, Rng &rng);

    /// Requires sum p_c = S (within 1e-9) in exact_s mode.
    void assign_caches(NetworkRealization &net, const PlacementPolicy &policy, CacheMode mode, Rng &rng);

    void assign_subchannels(NetworkRealization &net, int subchannels, Rng &rng);

    /// Draws mode, fading and shadowing for every UAV-to-user link.
    void draw_links(NetworkRealization &net, const Environment &env, const ChannelConfig &channel, Rng &rng);

    /// Received powers at the typical user when it requests content c.
    struct LinkBudget
    {
        int cooperators = 0;
        double signal = 0.0;
        double interference_other = 0.0; // same-channel UAVs without c
        double interference_same = 0.0;  // same-channel UAVs with c, outside the cooperation disc

        double interference() const { return interference_other + interference_same; }
    };

    /// Cooperators are UAVs caching c within x_cop; they all serve on sub-channel `serving`.
    /// Every other UAV interferes only if it uses the serving sub-channel.
    LinkBudget link_budget(const NetworkRealization &net, int c, double x_cop_km, const ChannelConfig &channel,
                           int serving = 0);

    /// Signal over interference, capped at sir_cap; empty without cooperators.
    std::optional<double> realize_sir(const LinkBudget &budget, double sir_cap);
    std::optional<double> realize_sir(const NetworkRealization &net, int c, double x_cop_km,
                                      const ChannelConfig &channel, double sir_cap);

    /// Aggregate same-channel interference from UAVs beyond r_near.
    ///
    /// Links whose mean-free received power L V exceeds `threshold` are drawn one by one
    /// from their exact radial intensity (truncated shadowing included); the remaining
    /// power, a sum of a very large number of small terms, enters through its mean.
    class FarFieldInterference
    {
    public:
        FarFieldInterference(const Environment &env, const ChannelConfig &channel, double density_per_km2,
                             double r_near_km, double threshold);

        struct Draw
        {
            double caching = 0.0;     // from UAVs that cache the requested content
            double non_caching = 0.0;
            double total() const { return caching + non_caching; }
        };

        /// p_c is the probability that a far UAV holds the requested content.
        Draw sample(Rng &rng, double p_c) const;

        double expected_count() const;
        double residual_mean() const { return residual_; }

    private:
        struct ModeTable
        {
            LinkMode mode;
            std::vector<double> log_z;
            std::vector<double> cumulative;
        };

        Environment env_;
        ChannelConfig channel_;
        double threshold_;
        double log_slope_;
        std::vector<ModeTable> tables_;
        double residual_ = 0.0;
    };

    /// Zero-truncated Poisson draw (mean > 0).
    int sample_zero_truncated_poisson(double mean, Rng &rng);

    /// E[1{cooperators} log(1 + SIR_c)] in nats, zero-based content index.
    SimEstimate estimate_capacity(const ScenarioConfig &cfg, int c, const SimConfig &sim);

    /// sum_c a_c R_c with standard errors combined in quadrature.
    SimEstimate estimate_system_capacity(const ScenarioConfig &cfg, const SimConfig &sim);

    /// Per-content estimates (zero for contents never cached).
    std::vector<SimEstimate> estimate_content_capacities(const ScenarioConfig &cfg, const SimConfig &sim);

    /// Draws the cooperator count per content and averages
    /// sum_c a_c R_c / (k (P + S P_p + P_s) + zeta R_c) over k >= 1.
    /// EeForm::approximate divides the k term by 1 - e^-m_c.
    SimEstimate estimate_ee(const ScenarioConfig &cfg, std::span<const double> capacity, const SimConfig &sim,
                            EeForm form = EeForm::exact);

    /// Per-trial Laplace transform samples exp(-v I) of the interference, split by class.
    struct InterferenceLaplace
    {
        SimEstimate other;  // E[exp(-v I_other)]
        SimEstimate same;   // E[exp(-v I_same)]
        SimEstimate total;  // E[exp(-v I)]
    };
    InterferenceLaplace estimate_interference_laplace(const ScenarioConfig &cfg, int c, double v,
                                                      const SimConfig &sim);

    /// positions, modes, gains, sub-channels and caches, one row per UAV
    void write_realization_csv(const NetworkRealization &net, std::ostream &os);
}

#endif
