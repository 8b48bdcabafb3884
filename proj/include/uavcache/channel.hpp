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

#ifndef UAVCACHE_CHANNEL_HPP
#define UAVCACHE_CHANNEL_HPP

#include "uavcache/quadrature.hpp"
#include "uavcache/rng.hpp"

#include <array>
#include <string>
#include <string_view>

namespace uavcache
{
    enum class LinkMode
    {
        los,
        nlos
    };

    inline constexpr std::array<LinkMode, 2> link_modes{LinkMode::los, LinkMode::nlos};

    /// How the normal shadowing variate U (dB) maps to the power gain V.
    ///   db_loss: V = 10^(-U/10), U is an excess loss in dB (default)
    ///   literal: V = 10^U
    enum class ShadowingConvention
    {
        db_loss,
        literal
    };

    /// Air-to-ground propagation parameters of one environment.
    /// Angles enter in degrees; mu/a are in dB, c in 1/degree.
    struct Environment
    {
        std::string name = "sub_urban";
        double phi = 4.88;
        double psi = 0.43;
        double mu_los = 0.0;
        double mu_nlos = 18.0;
        double a_los = 11.25;
        double a_nlos = 32.17;
        double c_los = 0.06;
        double c_nlos = 0.03;

        double mu(LinkMode m) const { return m == LinkMode::los ? mu_los : mu_nlos; }
        double a(LinkMode m) const { return m == LinkMode::los ? a_los : a_nlos; }
        double c(LinkMode m) const { return m == LinkMode::los ? c_los : c_nlos; }

        void validate() const;

        bool operator==(const Environment &) const = default;

        /// high_rise, dense_urban, urban or sub_urban. Unknown names throw invalid_argument.
        static Environment preset(std::string_view name);
    };

    inline constexpr std::array<std::string_view, 4> environment_presets{"high_rise", "dense_urban", "urban",
                                                                         "sub_urban"};

    struct ChannelConfig
    {
        double alpha_los = 2.09;
        double alpha_nlos = 4.0;
        double k_los = 1.0;
        double k_nlos = 1.0;
        double nakagami_los = 10.0;
        double nakagami_nlos = 2.0;
        double altitude_km = 1.0;
        ShadowingConvention shadowing = ShadowingConvention::db_loss;

        double alpha(LinkMode m) const { return m == LinkMode::los ? alpha_los : alpha_nlos; }
        double intercept(LinkMode m) const { return m == LinkMode::los ? k_los : k_nlos; }
        double nakagami(LinkMode m) const { return m == LinkMode::los ? nakagami_los : nakagami_nlos; }

        void validate() const;

        bool operator==(const ChannelConfig &) const = default;
    };

    std::string to_string(LinkMode m);
    std::string to_string(ShadowingConvention c);
    ShadowingConvention shadowing_convention_from_string(std::string_view s);

    /// Elevation angle in degrees seen from the ground user; 90 at r = 0.
    double elevation_deg(double r_km, double h_km);

    double los_probability(double r_km, double h_km, const Environment &env);

    /// K_n * (H^2 + r^2)^(-alpha_n / 2).
    double path_loss(double r_km, double h_km, LinkMode mode, const ChannelConfig &cfg);

    /// a_n * exp(-c_n * elevation), in dB.
    double shadowing_sigma(double r_km, double h_km, LinkMode mode, const Environment &env);

    /// Natural-log slope of the shadowing gain: V = exp(slope * U).
    double shadowing_log_slope(ShadowingConvention c);

    /// Unit-mean Gamma(W, 1/W) power gain.
    double sample_fading(LinkMode mode, const ChannelConfig &cfg, Rng &rng);

    /// Log-normal shadowing power gain at horizontal distance r.
    double sample_shadowing(double r_km, double h_km, LinkMode mode, const Environment &env,
                            const ChannelConfig &cfg, Rng &rng);

    /// Per-link Laplace kernel
    ///   sum_n p_n(z) * E_u[1 - (1 + v L_n(z) g(u) / W_n)^(-W_n)].
    /// The shadowing expectation uses Gauss-Hermite quadrature while the log-gain spread
    /// is at most 1. Wider spreads turn the integrand into a near step that Hermite nodes
    /// cannot resolve; there composite Gauss-Legendre panels are used, refined where the
    /// fading term switches on and scaled by 40 / hermite_nodes.
    /// The altitude comes from ChannelConfig::altitude_km.
    class LaplaceKernel
    {
    public:
        LaplaceKernel(Environment env, ChannelConfig cfg, int hermite_nodes);

        double operator()(double z_km, double v) const;

        /// Small-v slope: d/dv of the kernel at v = 0 is sum_n p_n L_n E[g_n]. Only
        /// meaningful where that mean is finite.
        double linear_coefficient(double z_km) const;

        const Environment &environment() const { return env_; }
        const ChannelConfig &channel() const { return cfg_; }
        int hermite_nodes() const { return static_cast<int>(rule_.size()); }

    private:
        Environment env_;
        ChannelConfig cfg_;
        double expectation(double base, double spread, double w) const;

        HermiteRule rule_;
        std::vector<double> panel_nodes_, panel_weights_; // 8-point Gauss-Legendre on [0, 1]
        double panel_scale_;
        double slope_;
    };

    /// Convenience wrapper around LaplaceKernel; hermite_nodes < 2 throws config_error.
    double laplace_kernel(double z_km, double v, const Environment &env, const ChannelConfig &cfg,
                          int hermite_nodes = default_hermite_nodes);
}

#endif
