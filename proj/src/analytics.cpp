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

#include "uavcache/analytics.hpp"

#include "uavcache/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uavcache
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
    }

    void PowerModel::validate() const
    {
        for (double x : {transmit_w, caching_w, static_w, zeta})
            if (!(x >= 0.0) || !std::isfinite(x))
                detail::fail_argument("power model: all entries must be finite and >= 0");
    }

    void QuadratureConfig::validate() const
    {
        if (hermite_nodes < 2 || hermite_nodes > max_hermite_nodes)
            throw config_error("quadrature: hermite_nodes must lie in [2, " + std::to_string(max_hermite_nodes) + "]");
        if (!(rel_tol > 0.0) || rel_tol >= 1.0)
            throw config_error("quadrature: rel_tol must lie in (0, 1)");
        if (!(v_min > 0.0) || !(v_max > v_min) || !std::isfinite(v_max))
            throw config_error("quadrature: need 0 < v_min < v_max < inf");
        if (!(z_max > 0.0) || !std::isfinite(z_max))
            throw config_error("quadrature: z_max must be positive and finite");
        if (!(k_max_tail > 0.0) || k_max_tail >= 1.0)
            throw config_error("quadrature: k_max_tail must lie in (0, 1)");
        if (panels_per_unit < 1)
            throw config_error("quadrature: panels_per_unit must be >= 1");
    }

    std::string to_string(CooperationTerm t) { return t == CooperationTerm::exact ? "exact" : "approximate"; }

    CooperationTerm cooperation_term_from_string(std::string_view s)
    {
        if (s == "exact")
            return CooperationTerm::exact;
        if (s == "approximate")
            return CooperationTerm::approximate;
        detail::fail_argument("unknown cooperation term '" + std::string(s) + "' (expected exact or approximate)");
    }

    std::string to_string(EeForm f) { return f == EeForm::exact ? "exact" : "approximate"; }

    EeForm ee_form_from_string(std::string_view s)
    {
        if (s == "exact")
            return EeForm::exact;
        if (s == "approximate")
            return EeForm::approximate;
        detail::fail_argument("unknown energy-efficiency form '" + std::string(s) + "' (expected exact or approximate)");
    }

    void ScenarioConfig::validate() const
    {
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            detail::fail_argument("scenario: lambda must be finite and >= 0");
        if (!(x_cop >= 0.0) || !std::isfinite(x_cop))
            detail::fail_argument("scenario: x_cop must be finite and >= 0");
        if (subchannels < 1)
            detail::fail_argument("scenario: need at least one sub-channel");
        if (policy.size() != library.size())
            detail::fail_argument("scenario: policy length " + std::to_string(policy.size()) +
                                  " does not match library size " + std::to_string(library.size()));
        policy.validate();
        env.validate();
        channel.validate();
        power.validate();
        quadrature.validate();
    }

    double ScenarioConfig::cooperation_mean(int c) const
    {
        return std::numbers::pi * lambda * x_cop * x_cop * policy.probability.at(c);
    }

    CapacityReport CapacityReport::in_bits() const
    {
        CapacityReport out = *this;
        for (double &r : out.rate)
            r /= std::numbers::ln2;
        out.system_rate /= std::numbers::ln2;
        return out;
    }

    LaplaceIntegrals::LaplaceIntegrals(const Environment &env, const ChannelConfig &channel, double x_cop_km,
                                       const QuadratureConfig &quad)
        : kernel_(env, channel, quad.hermite_nodes), x_cop_(x_cop_km), quad_(quad)
    {
        quad_.validate();
        if (!(x_cop_km >= 0.0))
            detail::fail_argument("laplace integrals: X_cop must be >= 0");
    }

    double LaplaceIntegrals::radial(double v, double a, double b) const
    {
        if (!(b > a) || v == 0.0)
            return 0.0;
        const double tol = quad_.rel_tol;
        // linear in z up to the altitude, where the elevation angle changes fastest;
        // logarithmic beyond, where the far field spans many decades
        const double knee = kernel_.channel().altitude_km;
        double total = 0.0;
        if (a < knee)
        {
            const double hi = std::min(b, knee);
            total += integrate_adaptive([&](double z) { return z * kernel_(z, v); }, a, hi, tol, 1e-300);
            a = hi;
        }
        if (b > a)
            total += integrate_adaptive(
                [&](double t) {
                    const double z = std::exp(t);
                    return z * z * kernel_(z, v);
                },
                std::log(a), std::log(b), tol, 1e-300);
        return total;
    }

    double LaplaceIntegrals::inner(double v) const { return radial(v, 0.0, x_cop_); }

    double LaplaceIntegrals::outer(double v) const
    {
        const double z_max = std::max(quad_.z_max, x_cop_);
        return radial(v, x_cop_, z_max) + tail(v);
    }

    double LaplaceIntegrals::tail(double v) const
    {
        // Past z_max the per-link response is linear in v and p_n, sigma_n have reached
        // their grazing-angle limits, so int_Z^inf z k dz has a closed form per mode.
        const double z = std::max(quad_.z_max, x_cop_);
        const auto &env = kernel_.environment();
        const auto &ch = kernel_.channel();
        const double h = ch.altitude_km;
        const double slope = shadowing_log_slope(ch.shadowing);
        const double p_los = los_probability(z, h, env);
        double total = 0.0;
        for (LinkMode mode : link_modes)
        {
            const double p = mode == LinkMode::los ? p_los : 1.0 - p_los;
            const double sigma = shadowing_sigma(z, h, mode, env);
            const double alpha = ch.alpha(mode);
            const double log_term = std::log(ch.intercept(mode)) + slope * env.mu(mode) +
                                    0.5 * slope * slope * sigma * sigma +
                                    (1.0 - 0.5 * alpha) * std::log(h * h + z * z) - std::log(alpha - 2.0);
            total += p * std::exp(log_term);
        }
        return v * total;
    }

    double t1(double v, const ScenarioConfig &cfg, double p_c)
    {
        const double density = (1.0 - p_c) * cfg.interference_density();
        if (density == 0.0 || v == 0.0)
            return 1.0;
        const LaplaceIntegrals li(cfg.env, cfg.channel, cfg.x_cop, cfg.quadrature);
        return std::exp(-two_pi * density * (li.inner(v) + li.outer(v)));
    }

    double t2(double v, const ScenarioConfig &cfg, double p_c)
    {
        const double density = p_c * cfg.interference_density();
        if (density == 0.0 || v == 0.0 || cfg.x_cop >= cfg.quadrature.z_max)
            return 1.0;
        const LaplaceIntegrals li(cfg.env, cfg.channel, cfg.x_cop, cfg.quadrature);
        return std::exp(-two_pi * density * li.outer(v));
    }

    double t3(double v, const ScenarioConfig &cfg, double p_c) { return t3(v, cfg, p_c, cfg.cooperation); }

    double t3(double v, const ScenarioConfig &cfg, double p_c, CooperationTerm term)
    {
        const double density = p_c * cfg.lambda;
        if (density == 0.0 || v == 0.0 || cfg.x_cop == 0.0)
            return 0.0;
        const LaplaceIntegrals li(cfg.env, cfg.channel, cfg.x_cop, cfg.quadrature);
        double value = -std::expm1(-two_pi * density * li.inner(v));
        if (term == CooperationTerm::approximate)
            value *= -std::expm1(-std::numbers::pi * density * cfg.x_cop * cfg.x_cop);
        return value;
    }

    CapacityEvaluator::CapacityEvaluator(const Environment &env, const ChannelConfig &channel, double x_cop_km,
                                         const QuadratureConfig &quad)
        : x_cop_(x_cop_km), rel_tol_(quad.rel_tol)
    {
        const LaplaceIntegrals li(env, channel, x_cop_km, quad);
        const double lo = std::log(quad.v_min);
        const double hi = std::log(quad.v_max);
        const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) * quad.panels_per_unit)));
        const auto main = composite_legendre(lo, hi, panels);
        const auto ext = composite_legendre(hi, hi + std::numbers::ln2, 1);

        auto tabulate = [&](const LegendreGrid &g, std::vector<double> &w, std::vector<double> &in,
                            std::vector<double> &out) {
            w = g.weights;
            in.resize(g.nodes.size());
            out.resize(g.nodes.size());
            for (std::size_t i = 0; i < g.nodes.size(); ++i)
            {
                const double v = std::exp(g.nodes[i]);
                in[i] = li.inner(v);
                out[i] = li.outer(v);
            }
        };
        tabulate(main, weight_, inner_, outer_);
        tabulate(ext, weight_ext_, inner_ext_, outer_ext_);
        inner_min_ = li.inner(quad.v_min);
        outer_min_ = li.outer(quad.v_min);
    }

    double CapacityEvaluator::rate(double lambda, int subchannels, double p_c, CooperationTerm term) const
    {
        if (!(p_c >= 0.0 && p_c <= 1.0) || !(lambda >= 0.0) || subchannels < 1)
            detail::fail_argument("capacity: need p in [0, 1], lambda >= 0, B >= 1");
        if (p_c == 0.0 || lambda == 0.0 || x_cop_ == 0.0)
            return 0.0;

        const double a1 = two_pi * (1.0 - p_c) * lambda / subchannels;
        const double a2 = two_pi * p_c * lambda / subchannels;
        const double a3 = two_pi * p_c * lambda;
        const double presence =
            term == CooperationTerm::approximate ? -std::expm1(-std::numbers::pi * lambda * x_cop_ * x_cop_ * p_c) : 1.0;
        auto integrand = [&](double in, double out) {
            return std::exp(-a1 * (in + out) - a2 * out) * -std::expm1(-a3 * in) * presence;
        };

        // integrand is in d(log v); below v_min it is linear in v, so int_0^vmin f dv/v = f(v_min)
        double body = integrand(inner_min_, outer_min_);
        for (std::size_t i = 0; i < weight_.size(); ++i)
            body += weight_[i] * integrand(inner_[i], outer_[i]);
        double extension = 0.0;
        for (std::size_t i = 0; i < weight_ext_.size(); ++i)
            extension += weight_ext_[i] * integrand(inner_ext_[i], outer_ext_[i]);

        if (extension > rel_tol_ * body)
            throw convergence_error("capacity: doubling v_max changes the rate by " +
                                    std::to_string(extension / body) + " (relative), above rel_tol");
        return body + extension;
    }

    double content_capacity(const ScenarioConfig &cfg, int c)
    {
        cfg.validate();
        if (c < 0 || c >= cfg.library.size())
            detail::fail_argument("content_capacity: content index out of range");
        const double p = cfg.policy.probability[c];
        if (p == 0.0 || cfg.lambda == 0.0)
            return 0.0;
        return CapacityEvaluator(cfg).rate(cfg.lambda, cfg.subchannels, p, cfg.cooperation);
    }

    CapacityReport system_capacity(const ScenarioConfig &cfg)
    {
        cfg.validate();
        const bool any = cfg.lambda > 0.0 && std::any_of(cfg.policy.probability.begin(), cfg.policy.probability.end(),
                                                         [](double p) { return p > 0.0; });
        if (!any)
        {
            CapacityReport report;
            report.rate.assign(cfg.library.size(), 0.0);
            for (int c = 0; c < cfg.library.size(); ++c)
                report.cooperation_mean.push_back(cfg.cooperation_mean(c));
            return report;
        }
        return system_capacity(cfg, CapacityEvaluator(cfg));
    }

    CapacityReport system_capacity(const ScenarioConfig &cfg, const CapacityEvaluator &evaluator)
    {
        cfg.validate();
        if (evaluator.x_cop() != cfg.x_cop)
            detail::fail_argument("system_capacity: evaluator was built for a different X_cop");
        CapacityReport report;
        const int n = cfg.library.size();
        report.rate.resize(n);
        report.cooperation_mean.resize(n);
        for (int c = 0; c < n; ++c)
        {
            report.cooperation_mean[c] = cfg.cooperation_mean(c);
            report.rate[c] = evaluator.rate(cfg.lambda, cfg.subchannels, cfg.policy.probability[c], cfg.cooperation);
            report.system_rate += cfg.library.popularity[c] * report.rate[c];
        }
        return report;
    }

    int poisson_truncation(double mean, double tail)
    {
        if (!(mean >= 0.0) || !std::isfinite(mean))
            detail::fail_argument("poisson_truncation: mean must be finite and >= 0");
        // P(K > k) = 1 - cdf(k); accumulate the pmf until the remainder drops below tail
        double pmf = std::exp(-mean);
        double cdf = pmf;
        int k = 0;
        while (1.0 - cdf >= tail && k < 100000)
        {
            ++k;
            pmf *= mean / k;
            cdf += pmf;
            if (pmf == 0.0 && k > mean)
                break;
        }
        return std::max(k, 1);
    }

    namespace
    {
        double efficiency_sum(const ScenarioConfig &cfg, const CapacityReport &capacity, std::optional<int> k_max,
                              bool normalise)
        {
            cfg.validate();
            const int n = cfg.library.size();
            if (static_cast<int>(capacity.rate.size()) != n || static_cast<int>(capacity.cooperation_mean.size()) != n)
                detail::fail_argument("energy_efficiency: capacity report does not match the library");
            if (k_max && *k_max < 1)
                detail::fail_argument("energy_efficiency: k_max must be >= 1");
            const double power = cfg.power.per_uav(cfg.policy.cache_size);
            const double zeta = cfg.power.zeta;
            if (power == 0.0 && zeta == 0.0)
                detail::fail_argument("energy_efficiency: zero total power");

            double eta = 0.0;
            for (int c = 0; c < n; ++c)
            {
                const double m = capacity.cooperation_mean[c];
                const double r = capacity.rate[c];
                if (m == 0.0 || r == 0.0)
                    continue;
                const double presence = -std::expm1(-m);
                const double per_k = normalise ? power / presence : power;
                const int kmax = k_max ? *k_max : poisson_truncation(m, cfg.quadrature.k_max_tail);
                double log_pmf = -m; // log P(K = 0)
                double inner = 0.0;
                for (int k = 1; k <= kmax; ++k)
                {
                    log_pmf += std::log(m) - std::log(static_cast<double>(k));
                    const double pmf = std::exp(log_pmf);
                    if (pmf == 0.0 && k > m)
                        break;
                    inner += pmf * r / (k * per_k + zeta * r);
                }
                eta += cfg.library.popularity[c] * inner;
            }
            return eta;
        }
    }

    double energy_efficiency(const ScenarioConfig &cfg, const CapacityReport &capacity, std::optional<int> k_max)
    {
        return efficiency_sum(cfg, capacity, k_max, true);
    }

    double energy_efficiency_exact(const ScenarioConfig &cfg, const CapacityReport &capacity,
                                   std::optional<int> k_max)
    {
        return efficiency_sum(cfg, capacity, k_max, false);
    }
}
