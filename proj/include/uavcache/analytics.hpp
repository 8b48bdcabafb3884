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

#ifndef UAVCACHE_ANALYTICS_HPP
#define UAVCACHE_ANALYTICS_HPP

#include "uavcache/caching.hpp"
#include "uavcache/channel.hpp"

#include <optional>
#include <vector>

namespace uavcache
{
    struct PowerModel
    {
        double transmit_w = 1.0;  // P
        double caching_w = 0.1;   // P_p, per cached file
        double static_w = 1.0;    // P_s
        double zeta = 1.0;        // dynamic power per unit rate

        /// P + S * P_p + P_s
        double per_uav(int cache_size) const { return transmit_w + cache_size * caching_w + static_w; }

        void validate() const;

        bool operator==(const PowerModel &) const = default;
    };

    struct QuadratureConfig
    {
        int hermite_nodes = default_hermite_nodes;
        double rel_tol = 1e-6;
        double v_min = 1e-8;      // below: T3 is linear in v and the piece is added in closed form
        double v_max = 1e14;      // checked by integrating on to 2 v_max
        double z_max = 1e12;      // km; linear-response tail beyond
        double k_max_tail = 1e-16;
        int panels_per_unit = 2;  // Gauss-Legendre panels per unit of log v

        void validate() const;

        bool operator==(const QuadratureConfig &) const = default;
    };

    /// Cooperative-signal factor of the rate integrand.
    ///   exact:       1 - exp(-2 pi p lambda int_0^Xcop z k dz)
    ///   approximate: the same, multiplied once more by P(at least one cooperator)
    enum class CooperationTerm
    {
        exact,
        approximate
    };

    std::string to_string(CooperationTerm t);
    CooperationTerm cooperation_term_from_string(std::string_view s);

    /// Energy-efficiency denominator: k A / (1 - e^-m) + zeta R (approximate) or k A + zeta R (exact).
    enum class EeForm
    {
        approximate,
        exact
    };

    std::string to_string(EeForm f);
    EeForm ee_form_from_string(std::string_view s);

    struct ScenarioConfig
    {
        double lambda = 1e-3;   // UAVs per km^2
        double x_cop = 3.0;     // km
        int subchannels = 64;
        ContentLibrary library = ContentLibrary::zipf(20, 0.8);
        PlacementPolicy policy;
        Environment env;
        ChannelConfig channel;
        PowerModel power;
        QuadratureConfig quadrature;
        CooperationTerm cooperation = CooperationTerm::exact;

        void validate() const;

        /// Same-channel density lambda / B seen by interference terms.
        double interference_density() const { return lambda / subchannels; }

        /// pi lambda X_cop^2 p_c, zero-based content index.
        double cooperation_mean(int c) const;
    };

    /// Per-content rates in nats per channel use; system_rate = sum_c a_c rate_c.
    struct CapacityReport
    {
        std::vector<double> rate;
        std::vector<double> cooperation_mean;
        double system_rate = 0.0;

        CapacityReport in_bits() const;
    };

    /// Radial integrals of z * kernel(z, v) over the cooperation disc and its complement.
    class LaplaceIntegrals
    {
    public:
        LaplaceIntegrals(const Environment &env, const ChannelConfig &channel, double x_cop_km,
                         const QuadratureConfig &quad);

        /// int_0^Xcop z k(z, v) dz
        double inner(double v) const;

        /// int_Xcop^inf z k(z, v) dz, closed-form linear-response tail past z_max
        double outer(double v) const;

        /// int_a^b z k(z, v) dz, b finite.
        double radial(double v, double a, double b) const;

        const LaplaceKernel &kernel() const { return kernel_; }

    private:
        double tail(double v) const;

        LaplaceKernel kernel_;
        double x_cop_;
        QuadratureConfig quad_;
    };

    /// Laplace transform of the interference from same-channel UAVs not caching c.
    double t1(double v, const ScenarioConfig &cfg, double p_c);

    /// Laplace transform of the interference from caching UAVs outside the cooperation disc.
    double t2(double v, const ScenarioConfig &cfg, double p_c);

    /// Cooperative-signal factor (see CooperationTerm).
    double t3(double v, const ScenarioConfig &cfg, double p_c);
    double t3(double v, const ScenarioConfig &cfg, double p_c, CooperationTerm term);

    /// Tabulates the radial integrals on the log-v grid once, so that per-content rates
    /// for any density, sub-channel count and caching probability are cheap.
    /// Depends only on environment, channel, X_cop and quadrature settings.
    class CapacityEvaluator
    {
    public:
        CapacityEvaluator(const Environment &env, const ChannelConfig &channel, double x_cop_km,
                          const QuadratureConfig &quad);
        explicit CapacityEvaluator(const ScenarioConfig &cfg)
            : CapacityEvaluator(cfg.env, cfg.channel, cfg.x_cop, cfg.quadrature)
        {
        }

        /// E[1{cooperators} log(1 + SIR)] in nats. Throws convergence_error when the
        /// piece between v_max and 2 v_max exceeds rel_tol of the result.
        double rate(double lambda, int subchannels, double p_c, CooperationTerm term) const;

        double x_cop() const { return x_cop_; }

    private:
        double x_cop_;
        double rel_tol_;
        std::vector<double> weight_, inner_, outer_;   // main grid
        std::vector<double> weight_ext_, inner_ext_, outer_ext_;
        double inner_min_ = 0.0, outer_min_ = 0.0;     // at v_min
    };

    /// Average rate of content c (zero-based), nats per channel use.
    double content_capacity(const ScenarioConfig &cfg, int c);

    CapacityReport system_capacity(const ScenarioConfig &cfg);
    CapacityReport system_capacity(const ScenarioConfig &cfg, const CapacityEvaluator &evaluator);

    /// Energy efficiency with the cooperator-count power normalised by P(cooperators).
    /// Rates are taken in whatever unit the report carries.
    double energy_efficiency(const ScenarioConfig &cfg, const CapacityReport &capacity,
                             std::optional<int> k_max = std::nullopt);

    /// Same sum without the normalisation: denominator k (P + S P_p + P_s) + zeta R_c.
    double energy_efficiency_exact(const ScenarioConfig &cfg, const CapacityReport &capacity,
                                   std::optional<int> k_max = std::nullopt);

    /// Smallest k with P(Poisson(m) > k) < tail.
    int poisson_truncation(double mean, double tail);
}

#endif
