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

#include "uavcache/channel.hpp"

#include "uavcache/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace uavcache
{
    namespace
    {
        constexpr double rad_to_deg = 180.0 / std::numbers::pi;

        void check_geometry(double r_km, double h_km, const char *who)
        {
            if (!std::isfinite(r_km) || !std::isfinite(h_km) || r_km < 0.0 || h_km <= 0.0)
                detail::fail_argument(std::string(who) + ": need finite r >= 0 and H > 0 (got r = " +
                                      std::to_string(r_km) + ", H = " + std::to_string(h_km) + ")");
        }
    }

    void Environment::validate() const
    {
        auto finite = [](double x) { return std::isfinite(x); };
        if (!(finite(phi) && phi > 0.0) || !(finite(psi) && psi > 0.0))
            detail::fail_argument("environment '" + name + "': phi and psi must be positive");
        if (!finite(mu_los) || !finite(mu_nlos))
            detail::fail_argument("environment '" + name + "': mean excess losses must be finite");
        if (!(finite(a_los) && a_los >= 0.0) || !(finite(a_nlos) && a_nlos >= 0.0))
            detail::fail_argument("environment '" + name + "': shadowing amplitudes must be >= 0");
        if (!(finite(c_los) && c_los >= 0.0) || !(finite(c_nlos) && c_nlos >= 0.0))
            detail::fail_argument("environment '" + name + "': shadowing decays must be >= 0");
    }

    Environment Environment::preset(std::string_view name)
    {
        // Al-Hourani et al. air-to-ground fits
        if (name == "high_rise")
            return {"high_rise", 27.23, 0.08, 1.5, 29.0, 7.37, 37.08, 0.03, 0.03};
        if (name == "dense_urban")
            return {"dense_urban", 12.08, 0.11, 1.0, 20.0, 8.96, 35.97, 0.04, 0.04};
        if (name == "urban")
            return {"urban", 9.61, 0.16, 0.6, 17.0, 10.39, 29.6, 0.05, 0.03};
        if (name == "sub_urban")
            return {"sub_urban", 4.88, 0.43, 0.0, 18.0, 11.25, 32.17, 0.06, 0.03};
        detail::fail_argument("unknown environment preset '" + std::string(name) +
                              "' (expected high_rise, dense_urban, urban or sub_urban)");
    }

    void ChannelConfig::validate() const
    {
        if (!(alpha_los > 2.0) || !(alpha_nlos > 2.0) || !std::isfinite(alpha_los) || !std::isfinite(alpha_nlos))
            detail::fail_argument("channel: path-loss exponents must exceed 2");
        if (!(k_los > 0.0) || !(k_nlos > 0.0) || !std::isfinite(k_los) || !std::isfinite(k_nlos))
            detail::fail_argument("channel: intercepts must be positive");
        if (!(nakagami_nlos > 0.0) || !(nakagami_los >= nakagami_nlos) || !std::isfinite(nakagami_los))
            detail::fail_argument("channel: need nakagami_los >= nakagami_nlos > 0");
        if (!(altitude_km > 0.0) || !std::isfinite(altitude_km))
            detail::fail_argument("channel: altitude must be positive");
    }

    std::string to_string(LinkMode m) { return m == LinkMode::los ? "LOS" : "NLOS"; }

    std::string to_string(ShadowingConvention c) { return c == ShadowingConvention::db_loss ? "db_loss" : "literal"; }

    ShadowingConvention shadowing_convention_from_string(std::string_view s)
    {
        if (s == "db_loss")
            return ShadowingConvention::db_loss;
        if (s == "literal")
            return ShadowingConvention::literal;
        detail::fail_argument("unknown shadowing convention '" + std::string(s) + "' (expected db_loss or literal)");
    }

    double elevation_deg(double r_km, double h_km)
    {
        // atan2 gives exactly 90 degrees at r = 0
        return rad_to_deg * std::atan2(h_km, r_km);
    }

    double los_probability(double r_km, double h_km, const Environment &env)
    {
        check_geometry(r_km, h_km, "los_probability");
        const double theta = elevation_deg(r_km, h_km);
        return 1.0 / (1.0 + env.phi * std::exp(-env.psi * (theta - env.phi)));
    }

    double path_loss(double r_km, double h_km, LinkMode mode, const ChannelConfig &cfg)
    {
        if (!std::isfinite(r_km) || !std::isfinite(h_km) || r_km < 0.0 || h_km < 0.0)
            detail::fail_argument("path_loss: need finite r >= 0 and H >= 0");
        const double d2 = h_km * h_km + r_km * r_km;
        if (d2 == 0.0)
            detail::fail_argument("path_loss: zero link distance");
        return cfg.intercept(mode) * std::pow(d2, -0.5 * cfg.alpha(mode));
    }

    double shadowing_sigma(double r_km, double h_km, LinkMode mode, const Environment &env)
    {
        check_geometry(r_km, h_km, "shadowing_sigma");
        return env.a(mode) * std::exp(-env.c(mode) * elevation_deg(r_km, h_km));
    }

    double shadowing_log_slope(ShadowingConvention c)
    {
        return c == ShadowingConvention::db_loss ? -std::numbers::ln10 / 10.0 : std::numbers::ln10;
    }

    double sample_fading(LinkMode mode, const ChannelConfig &cfg, Rng &rng)
    {
        const double w = cfg.nakagami(mode);
        std::gamma_distribution<double> gamma(w, 1.0 / w);
        return gamma(rng);
    }

    double sample_shadowing(double r_km, double h_km, LinkMode mode, const Environment &env,
                            const ChannelConfig &cfg, Rng &rng)
    {
        const double sigma = shadowing_sigma(r_km, h_km, mode, env);
        double u = env.mu(mode);
        if (sigma > 0.0)
            u += sigma * std::normal_distribution<double>(0.0, 1.0)(rng);
        return std::exp(shadowing_log_slope(cfg.shadowing) * u);
    }

    LaplaceKernel::LaplaceKernel(Environment env, ChannelConfig cfg, int hermite_nodes)
        : env_(std::move(env)), cfg_(cfg), slope_(shadowing_log_slope(cfg.shadowing))
    {
        if (hermite_nodes < 2)
            throw config_error("laplace kernel: need at least 2 Gauss-Hermite nodes, got " +
                               std::to_string(hermite_nodes));
        env_.validate();
        cfg_.validate();
        rule_ = gauss_hermite_nodes(hermite_nodes);
        // fold the 1/sqrt(pi) normalisation into the weights
        for (auto &w : rule_.weights)
            w /= std::sqrt(std::numbers::pi);
        const auto panel = composite_legendre(0.0, 1.0, 1);
        panel_nodes_ = panel.nodes;
        panel_weights_ = panel.weights;
        panel_scale_ = 28.0 / hermite_nodes;
    }

    // E[1 - exp(-w softplus(base + spread t))] for t standard normal.
    double LaplaceKernel::expectation(double base, double spread, double w) const
    {
        auto term = [w](double y) {
            const double l1p = y > 0.0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y));
            return -std::expm1(-w * l1p);
        };
        if (spread <= 1.0)
        {
            double e = 0.0;
            for (std::size_t i = 0; i < rule_.size(); ++i)
                e += rule_.weights[i] * term(base + std::numbers::sqrt2 * spread * rule_.nodes[i]);
            return e;
        }
        // The term rises from w e^y to 1 around y = -ln w. Fine panels cover
        // y in [-ln w - 10, -ln w + 4]; the upper limit leaves room for the tilted
        // Gaussian e^(spread t) phi(t) that carries the mean when base is very negative.
        const double lo = -9.0, hi = 9.0 + spread;
        const double y_star = -std::log(w);
        const double fine_lo = (y_star - 10.0 - base) / spread, fine_hi = (y_star + 4.0 - base) / spread;
        const double wide = 2.0 * panel_scale_, fine = std::min(wide, panel_scale_ / spread);
        const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
        double e = 0.0;
        for (double t = lo; t < hi;)
        {
            const bool in_fine = t >= fine_lo && t < fine_hi;
            double next = t + (in_fine ? fine : wide);
            if (!in_fine && t < fine_lo)
                next = std::min(next, fine_lo);
            if (in_fine)
                next = std::min(next, fine_hi);
            next = std::min(next, hi);
            const double width = next - t;
            for (std::size_t i = 0; i < panel_nodes_.size(); ++i)
            {
                const double x = t + width * panel_nodes_[i];
                e += width * panel_weights_[i] * norm * std::exp(-0.5 * x * x) * term(base + spread * x);
            }
            t = next;
        }
        return e;
    }

    double LaplaceKernel::operator()(double z_km, double v) const
    {
        if (!(v >= 0.0) || !(z_km >= 0.0))
            detail::fail_argument("laplace kernel: need z >= 0 and v >= 0");
        if (v == 0.0)
            return 0.0;
        const double h = cfg_.altitude_km;
        const double theta = elevation_deg(z_km, h);
        const double p_los = 1.0 / (1.0 + env_.phi * std::exp(-env_.psi * (theta - env_.phi)));
        const double log_d2 = std::log(h * h + z_km * z_km);

        double total = 0.0;
        for (LinkMode mode : link_modes)
        {
            const double p = mode == LinkMode::los ? p_los : 1.0 - p_los;
            if (p == 0.0)
                continue;
            const double w = cfg_.nakagami(mode);
            const double sigma = env_.a(mode) * std::exp(-env_.c(mode) * theta);
            // log(v L / W) + slope * mu; the shadowing spread enters per node
            const double base = std::log(v * cfg_.intercept(mode) / w) - 0.5 * cfg_.alpha(mode) * log_d2 +
                                slope_ * env_.mu(mode);
            total += p * expectation(base, std::abs(slope_) * sigma, w);
        }
        return total;
    }

    double LaplaceKernel::linear_coefficient(double z_km) const
    {
        const double h = cfg_.altitude_km;
        const double theta = elevation_deg(z_km, h);
        const double p_los = 1.0 / (1.0 + env_.phi * std::exp(-env_.psi * (theta - env_.phi)));
        double total = 0.0;
        for (LinkMode mode : link_modes)
        {
            const double p = mode == LinkMode::los ? p_los : 1.0 - p_los;
            const double sigma = env_.a(mode) * std::exp(-env_.c(mode) * theta);
            const double log_mean = slope_ * env_.mu(mode) + 0.5 * slope_ * slope_ * sigma * sigma;
            total += p * cfg_.intercept(mode) * std::pow(h * h + z_km * z_km, -0.5 * cfg_.alpha(mode)) *
                     std::exp(log_mean);
        }
        return total;
    }

    double laplace_kernel(double z_km, double v, const Environment &env, const ChannelConfig &cfg, int hermite_nodes)
    {
        return LaplaceKernel(env, cfg, hermite_nodes)(z_km, v);
    }
}
