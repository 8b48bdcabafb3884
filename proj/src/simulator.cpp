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

#include "uavcache/simulator.hpp"
#include "uavcache/error.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <iterator>
#include <ostream>
#include <random>
#include <thread>

namespace uavcache
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        constexpr std::int64_t block_trials = 1024;
        constexpr std::uint64_t ee_stream = 0x45454545ULL << 20;
        constexpr std::uint64_t laplace_stream = 0x4c4c4c4cULL << 20;

        double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }
        double log_normal_cdf(double x) { return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2)); }

        // Standard normal conditioned on Z > a.
        double truncated_normal_above(double a, Rng &rng)
        {
            if (a < 0.5)
            {
                std::normal_distribution<double> n01(0.0, 1.0);
                for (;;)
                {
                    const double z = n01(rng);
                    if (z > a)
                        return z;
                }
            }
            // exponential proposal, Robert (1995)
            const double rate = 0.5 * (a + std::sqrt(a * a + 4.0));
            for (;;)
            {
                const double z = a - std::log(rng.uniform()) / rate;
                const double d = z - rate;
                if (rng.uniform() <= std::exp(-0.5 * d * d))
                    return z;
            }
        }

        template <std::size_t K>
        struct BlockSums
        {
            std::array<double, K> sum{};
            std::array<double, K> sum_sq{};
        };

        // Runs fn(trial) -> std::array<double, K> over fixed blocks and reduces in block order,
        // so the result does not depend on the thread count.
        template <std::size_t K, class Fn>
        std::array<SimEstimate, K> run_trials(std::int64_t trials, int threads, Fn &&fn)
        {
            const std::int64_t n_blocks = (trials + block_trials - 1) / block_trials;
            std::vector<BlockSums<K>> blocks(static_cast<std::size_t>(n_blocks));
            std::atomic<std::int64_t> next{0};
            auto worker = [&]() {
                for (;;)
                {
                    const std::int64_t b = next.fetch_add(1);
                    if (b >= n_blocks)
                        return;
                    BlockSums<K> acc;
                    const std::int64_t end = std::min(trials, (b + 1) * block_trials);
                    for (std::int64_t t = b * block_trials; t < end; ++t)
                    {
                        const std::array<double, K> x = fn(t);
                        for (std::size_t k = 0; k < K; ++k)
                        {
                            acc.sum[k] += x[k];
                            acc.sum_sq[k] += x[k] * x[k];
                        }
                    }
                    blocks[static_cast<std::size_t>(b)] = acc;
                }
            };
            const int n_threads = static_cast<int>(std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(1, n_blocks)));
            if (n_threads == 1)
                worker();
            else
            {
                std::vector<std::thread> pool;
                for (int i = 0; i < n_threads; ++i)
                    pool.emplace_back(worker);
                for (auto &th : pool)
                    th.join();
            }

            std::array<SimEstimate, K> out;
            for (std::size_t k = 0; k < K; ++k)
            {
                double s = 0.0, s2 = 0.0;
                for (const auto &b : blocks)
                {
                    s += b.sum[k];
                    s2 += b.sum_sq[k];
                }
                const double n = static_cast<double>(trials);
                const double mean = s / n;
                const double var = trials > 1 ? std::max(0.0, (s2 - n * mean * mean) / (n - 1.0)) : 0.0;
                out[k] = {mean, std::sqrt(var / n), trials};
            }
            return out;
        }

        void check_scenario_for_sim(const ScenarioConfig &cfg, const SimConfig &sim)
        {
            cfg.validate();
            sim.validate();
            if (cfg.policy.size() != cfg.library.size())
                throw invalid_argument("simulator: placement policy size " + std::to_string(cfg.policy.size()) +
                                       " does not match library size " + std::to_string(cfg.library.size()));
            if (sim.window_km(cfg) <= cfg.x_cop)
                throw invalid_argument("simulator: r_max must exceed X_cop");
        }

        // Uniform points in the annulus r_in < r <= r_out.
        void add_annulus(NetworkRealization &net, double lambda, double r_in, double r_out, Rng &rng)
        {
            if (!(r_out > r_in) || lambda == 0.0)
                return;
            std::poisson_distribution<long long> count(lambda * std::numbers::pi * (r_out * r_out - r_in * r_in));
            const long long n = count(rng);
            for (long long i = 0; i < n; ++i)
            {
                UavRecord u;
                const double r = std::sqrt(r_in * r_in + rng.uniform() * (r_out * r_out - r_in * r_in));
                const double a = two_pi * rng.uniform();
                u.x_km = r * std::cos(a);
                u.y_km = r * std::sin(a);
                net.uavs.push_back(std::move(u));
            }
        }

        // One trial for content c. The default window and the annulus beyond it use separate
        // streams, so enlarging r_max leaves the inner network of every trial unchanged.
        LinkBudget simulate_budget(const ScenarioConfig &cfg, int c, const SimConfig &sim, double window,
                                   const FarFieldInterference *far, Rng &rng)
        {
            Rng inner_rng(rng());
            Rng outer_rng(rng());
            Rng coop_rng(rng());
            Rng far_rng(rng());
            const double r_in = std::min(window, 30.0 * std::max(cfg.x_cop, cfg.channel.altitude_km));

            NetworkRealization net = sample_network(cfg.lambda, r_in, inner_rng);
            assign_caches(net, cfg.policy, sim.cache_mode, inner_rng);
            if (sim.conditioned)
            {
                const double x2 = cfg.x_cop * cfg.x_cop;
                std::erase_if(net.uavs, [&](const UavRecord &u) {
                    return u.x_km * u.x_km + u.y_km * u.y_km <= x2 && u.caches(c);
                });
            }
            assign_subchannels(net, cfg.subchannels, inner_rng);
            draw_links(net, cfg.env, cfg.channel, inner_rng);

            if (window > r_in)
            {
                NetworkRealization outer;
                add_annulus(outer, cfg.lambda, r_in, window, outer_rng);
                assign_caches(outer, cfg.policy, sim.cache_mode, outer_rng);
                assign_subchannels(outer, cfg.subchannels, outer_rng);
                draw_links(outer, cfg.env, cfg.channel, outer_rng);
                std::move(outer.uavs.begin(), outer.uavs.end(), std::back_inserter(net.uavs));
            }

            if (sim.conditioned)
            {
                NetworkRealization coop;
                const int k = sample_zero_truncated_poisson(cfg.cooperation_mean(c), coop_rng);
                for (int i = 0; i < k; ++i)
                {
                    UavRecord u;
                    const double r = cfg.x_cop * std::sqrt(coop_rng.uniform());
                    const double a = two_pi * coop_rng.uniform();
                    u.x_km = r * std::cos(a);
                    u.y_km = r * std::sin(a);
                    u.cache = {c};
                    coop.uavs.push_back(std::move(u));
                }
                draw_links(coop, cfg.env, cfg.channel, coop_rng);
                std::move(coop.uavs.begin(), coop.uavs.end(), std::back_inserter(net.uavs));
            }

            LinkBudget budget = link_budget(net, c, cfg.x_cop, cfg.channel);
            if (far)
            {
                const auto d = far->sample(far_rng, cfg.policy.probability[static_cast<std::size_t>(c)]);
                budget.interference_same += d.caching;
                budget.interference_other += d.non_caching;
            }
            return budget;
        }
    }

    double UavRecord::radius() const { return std::hypot(x_km, y_km); }

    bool UavRecord::caches(int c) const { return std::binary_search(cache.begin(), cache.end(), c); }

    std::string to_string(CacheMode m) { return m == CacheMode::independent ? "independent" : "exact_s"; }

    CacheMode cache_mode_from_string(std::string_view s)
    {
        if (s == "independent")
            return CacheMode::independent;
        if (s == "exact_s")
            return CacheMode::exact_s;
        throw config_error("unknown cache mode '" + std::string(s) + "' (expected independent or exact_s)");
    }

    double SimConfig::window_km(const ScenarioConfig &cfg) const
    {
        return r_max_km > 0.0 ? r_max_km : 30.0 * std::max(cfg.x_cop, cfg.channel.altitude_km);
    }

    void SimConfig::validate() const
    {
        if (trials < 1)
            throw config_error("simulation.trials must be >= 1");
        if (!(r_max_km >= 0.0) || !std::isfinite(r_max_km))
            throw config_error("simulation.r_max_km must be finite and >= 0");
        if (!(sir_cap > 0.0))
            throw config_error("simulation.sir_cap must be > 0");
        if (!(far_field_threshold > 0.0) || !std::isfinite(far_field_threshold))
            throw config_error("simulation.far_field_threshold must be finite and > 0");
        if (threads < 1)
            throw config_error("simulation.threads must be >= 1");
    }

    NetworkRealization sample_network(double lambda, double r_max_km, std::uint64_t seed)
    {
        Rng rng(seed);
        NetworkRealization net = sample_network(lambda, r_max_km, rng);
        net.seed = seed;
        return net;
    }

    NetworkRealization sample_network(double lambda, double r_max_km, Rng &rng)
    {
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            throw invalid_argument("sample_network: lambda must be finite and >= 0");
        if (!(r_max_km > 0.0) || !std::isfinite(r_max_km))
            throw invalid_argument("sample_network: r_max must be finite and > 0");
        NetworkRealization net;
        net.window_km = r_max_km;
        if (lambda == 0.0)
            return net;
        std::poisson_distribution<long long> count(lambda * std::numbers::pi * r_max_km * r_max_km);
        const long long n = count(rng);
        net.uavs.resize(static_cast<std::size_t>(n));
        for (auto &u : net.uavs)
        {
            const double r = r_max_km * std::sqrt(rng.uniform());
            const double a = two_pi * rng.uniform();
            u.x_km = r * std::cos(a);
            u.y_km = r * std::sin(a);
        }
        return net;
    }

    void assign_caches(NetworkRealization &net, const PlacementPolicy &policy, CacheMode mode, Rng &rng)
    {
        const auto &p = policy.probability;
        if (mode == CacheMode::exact_s)
        {
            double total = 0.0;
            for (double x : p)
                total += x;
            if (std::abs(total - policy.cache_size) > 1e-9)
                throw invalid_argument("assign_caches: exact_s needs sum p_c = S, got " + std::to_string(total));
        }
        for (auto &u : net.uavs)
        {
            u.cache.clear();
            if (mode == CacheMode::independent)
            {
                for (std::size_t c = 0; c < p.size(); ++c)
                    if (rng.uniform() < p[c])
                        u.cache.push_back(static_cast<int>(c));
            }
            else
            {
                // systematic sampling: [0, S) split into intervals of length p_c, hit at offsets j + shift
                const double shift = rng.uniform();
                double lo = 0.0;
                for (std::size_t c = 0; c < p.size(); ++c)
                {
                    const double hi = lo + p[c];
                    if (std::ceil(lo - shift) + shift < hi)
                        u.cache.push_back(static_cast<int>(c));
                    lo = hi;
                }
            }
        }
    }

    void assign_subchannels(NetworkRealization &net, int subchannels, Rng &rng)
    {
        if (subchannels < 1)
            throw invalid_argument("assign_subchannels: need at least one sub-channel");
        std::uniform_int_distribution<int> pick(0, subchannels - 1);
        for (auto &u : net.uavs)
            u.subchannel = pick(rng);
    }

    void draw_links(NetworkRealization &net, const Environment &env, const ChannelConfig &channel, Rng &rng)
    {
        const double h = channel.altitude_km;
        for (auto &u : net.uavs)
        {
            const double r = u.radius();
            u.mode = rng.uniform() < los_probability(r, h, env) ? LinkMode::los : LinkMode::nlos;
            u.fading = sample_fading(u.mode, channel, rng);
            u.shadowing = sample_shadowing(r, h, u.mode, env, channel, rng);
        }
    }

    LinkBudget link_budget(const NetworkRealization &net, int c, double x_cop_km, const ChannelConfig &channel,
                           int serving)
    {
        LinkBudget b;
        const double h = channel.altitude_km;
        for (const auto &u : net.uavs)
        {
            const double r = u.radius();
            const bool has = u.caches(c);
            const bool cooperates = has && r <= x_cop_km;
            if (!cooperates && u.subchannel != serving)
                continue;
            const double power = path_loss(r, h, u.mode, channel) * u.shadowing * u.fading;
            if (cooperates)
            {
                ++b.cooperators;
                b.signal += power;
            }
            else if (has)
                b.interference_same += power;
            else
                b.interference_other += power;
        }
        return b;
    }

    std::optional<double> realize_sir(const LinkBudget &budget, double sir_cap)
    {
        if (budget.cooperators == 0)
            return std::nullopt;
        const double i = budget.interference();
        if (!(i > 0.0))
            return sir_cap;
        return std::min(sir_cap, budget.signal / i);
    }

    std::optional<double> realize_sir(const NetworkRealization &net, int c, double x_cop_km,
                                      const ChannelConfig &channel, double sir_cap)
    {
        return realize_sir(link_budget(net, c, x_cop_km, channel), sir_cap);
    }

    FarFieldInterference::FarFieldInterference(const Environment &env, const ChannelConfig &channel,
                                               double density_per_km2, double r_near_km, double threshold)
        : env_(env), channel_(channel), threshold_(threshold), log_slope_(shadowing_log_slope(channel.shadowing))
    {
        if (!(density_per_km2 > 0.0) || !(r_near_km > 0.0) || !(threshold > 0.0))
            throw invalid_argument("far field: density, radius and threshold must be > 0");

        const double h = channel.altitude_km;
        const double g = log_slope_;
        const double ag = std::abs(g);
        const double log_eps = std::log(threshold);
        constexpr double steps_per_unit = 64.0;

        for (LinkMode mode : link_modes)
        {
            const double mu = env.mu(mode);
            // per unit ln z: significant intensity and mean of the sub-threshold power
            auto densities = [&](double t) {
                const double z = std::exp(t);
                const double pn = mode == LinkMode::los ? los_probability(z, h, env) : 1.0 - los_probability(z, h, env);
                const double sigma = shadowing_sigma(z, h, mode, env);
                const double log_l = std::log(path_loss(z, h, mode, channel));
                const double base = two_pi * density_per_km2 * z * z * pn;
                if (sigma <= 0.0)
                {
                    const bool sig = g * mu + log_l > log_eps;
                    return std::array<double, 3>{sig ? base : 0.0,
                                                 sig ? 0.0 : base * std::exp(log_l + g * mu), 1.0};
                }
                const double z0 = (log_eps - log_l - g * mu) / (ag * sigma);
                const double tail_cdf = std::exp(log_normal_cdf(z0 - ag * sigma));
                const double residual =
                    base * std::exp(log_l + g * mu + 0.5 * ag * ag * sigma * sigma + log_normal_cdf(z0 - ag * sigma));
                return std::array<double, 3>{base * normal_sf(z0), residual, tail_cdf};
            };

            ModeTable table{mode, {}, {}};
            const double t0 = std::log(r_near_km);
            double t = t0;
            double cum = 0.0;
            double res = 0.0;
            auto prev = densities(t);
            table.log_z.push_back(t);
            table.cumulative.push_back(0.0);
            const double dt = 1.0 / steps_per_unit;
            const double t_min_end = std::log(std::max(1e6, 100.0 * r_near_km));
            const double t_cap = std::log(1e30);
            for (;;)
            {
                const double tn = t + dt;
                const auto cur = densities(tn);
                cum += 0.5 * dt * (prev[0] + cur[0]);
                res += 0.5 * dt * (prev[1] + cur[1]);
                table.log_z.push_back(tn);
                table.cumulative.push_back(cum);
                t = tn;
                prev = cur;
                const bool settled = cur[0] <= 1e-14 * std::max(cum, 1e-300) && cur[2] > 1.0 - 1e-9;
                if ((t >= t_min_end && settled) || t >= t_cap)
                    break;
            }
            if (!std::isfinite(cum))
                throw config_error("far field: significant intensity is not finite for " + to_string(mode) +
                                   " links; raise simulation.far_field_threshold");

            // power-law tail of the mean beyond the table
            const double z_top = std::exp(t);
            const double pn = mode == LinkMode::los ? los_probability(z_top, h, env) : 1.0 - los_probability(z_top, h, env);
            const double sigma = shadowing_sigma(z_top, h, mode, env);
            const double alpha = channel.alpha(mode);
            res += two_pi * density_per_km2 * pn * channel.intercept(mode) *
                   std::exp(g * mu + 0.5 * g * g * sigma * sigma) * std::pow(h * h + z_top * z_top, 1.0 - 0.5 * alpha) /
                   (alpha - 2.0);
            residual_ += res;
            tables_.push_back(std::move(table));
        }
        if (!std::isfinite(residual_))
            residual_ = std::numeric_limits<double>::infinity();
        if (expected_count() > 1e7)
            throw config_error("far field: " + std::to_string(expected_count()) +
                               " significant interferers per trial; raise simulation.far_field_threshold");
    }

    double FarFieldInterference::expected_count() const
    {
        double n = 0.0;
        for (const auto &t : tables_)
            n += t.cumulative.back();
        return n;
    }

    FarFieldInterference::Draw FarFieldInterference::sample(Rng &rng, double p_c) const
    {
        Draw d;
        d.caching = p_c * residual_;
        d.non_caching = (1.0 - p_c) * residual_;
        const double h = channel_.altitude_km;
        const double ag = std::abs(log_slope_);
        const double log_eps = std::log(threshold_);
        for (const auto &table : tables_)
        {
            const double total = table.cumulative.back();
            if (!(total > 0.0))
                continue;
            std::poisson_distribution<long long> count(total);
            const long long n = count(rng);
            const double mu = env_.mu(table.mode);
            for (long long i = 0; i < n; ++i)
            {
                const double y = rng.uniform() * total;
                auto it = std::upper_bound(table.cumulative.begin(), table.cumulative.end(), y);
                std::size_t j = static_cast<std::size_t>(it - table.cumulative.begin());
                j = std::clamp<std::size_t>(j, 1, table.cumulative.size() - 1) - 1;
                const double c0 = table.cumulative[j], c1 = table.cumulative[j + 1];
                const double frac = c1 > c0 ? (y - c0) / (c1 - c0) : 0.5;
                const double z = std::exp(table.log_z[j] + frac * (table.log_z[j + 1] - table.log_z[j]));

                const double l = path_loss(z, h, table.mode, channel_);
                const double sigma = shadowing_sigma(z, h, table.mode, env_);
                double log_v = log_slope_ * mu;
                if (sigma > 0.0)
                {
                    const double z0 = (log_eps - std::log(l) - log_slope_ * mu) / (ag * sigma);
                    log_v += ag * sigma * truncated_normal_above(z0, rng);
                }
                const double power = l * std::exp(log_v) * sample_fading(table.mode, channel_, rng);
                if (rng.uniform() < p_c)
                    d.caching += power;
                else
                    d.non_caching += power;
            }
        }
        return d;
    }

    int sample_zero_truncated_poisson(double mean, Rng &rng)
    {
        if (!(mean > 0.0) || !std::isfinite(mean))
            throw invalid_argument("zero-truncated poisson: mean must be finite and > 0");
        if (mean > 20.0)
        {
            std::poisson_distribution<int> pois(mean);
            for (;;)
            {
                const int k = pois(rng);
                if (k > 0)
                    return k;
            }
        }
        const double u = rng.uniform();
        double pk = mean / std::expm1(mean);
        double cum = pk;
        int k = 1;
        while (u > cum && k < 1000)
        {
            ++k;
            pk *= mean / k;
            cum += pk;
        }
        return k;
    }

    SimEstimate estimate_capacity(const ScenarioConfig &cfg, int c, const SimConfig &sim)
    {
        check_scenario_for_sim(cfg, sim);
        if (c < 0 || c >= cfg.library.size())
            throw invalid_argument("estimate_capacity: content index out of range");
        const double m = cfg.cooperation_mean(c);
        if (m <= 0.0)
            return {0.0, 0.0, sim.trials};

        const double window = sim.window_km(cfg);
        std::optional<FarFieldInterference> far;
        if (sim.far_field)
            far.emplace(cfg.env, cfg.channel, cfg.interference_density(), window, sim.far_field_threshold);
        const double scale = sim.conditioned ? -std::expm1(-m) : 1.0;

        auto trial = [&](std::int64_t t) {
            Rng rng = Rng::substream(sim.seed, static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(t));
            const LinkBudget b = simulate_budget(cfg, c, sim, window, far ? &*far : nullptr, rng);
            const auto sir = realize_sir(b, sim.sir_cap);
            return std::array<double, 1>{sir ? scale * std::log1p(*sir) : 0.0};
        };
        return run_trials<1>(sim.trials, sim.threads, trial)[0];
    }

    std::vector<SimEstimate> estimate_content_capacities(const ScenarioConfig &cfg, const SimConfig &sim)
    {
        std::vector<SimEstimate> out;
        for (int c = 0; c < cfg.library.size(); ++c)
            out.push_back(estimate_capacity(cfg, c, sim));
        return out;
    }

    SimEstimate estimate_system_capacity(const ScenarioConfig &cfg, const SimConfig &sim)
    {
        const auto per = estimate_content_capacities(cfg, sim);
        SimEstimate out{0.0, 0.0, sim.trials};
        double var = 0.0;
        for (std::size_t c = 0; c < per.size(); ++c)
        {
            const double a = cfg.library.popularity[c];
            out.mean += a * per[c].mean;
            var += a * a * per[c].std_error * per[c].std_error;
        }
        out.std_error = std::sqrt(var);
        return out;
    }

    SimEstimate estimate_ee(const ScenarioConfig &cfg, std::span<const double> capacity, const SimConfig &sim,
                            EeForm form)
    {
        cfg.validate();
        sim.validate();
        if (static_cast<int>(capacity.size()) != cfg.library.size())
            throw invalid_argument("estimate_ee: capacity size does not match library size");
        const double per_uav = cfg.power.per_uav(cfg.policy.cache_size);
        const double zeta = cfg.power.zeta;
        if (per_uav <= 0.0 && zeta <= 0.0)
            throw invalid_argument("estimate_ee: power model is identically zero");
        std::vector<double> means;
        std::vector<double> unit_power;
        for (int c = 0; c < cfg.library.size(); ++c)
        {
            means.push_back(cfg.cooperation_mean(c));
            const double occupied = -std::expm1(-means.back());
            unit_power.push_back(form == EeForm::exact || occupied <= 0.0 ? per_uav : per_uav / occupied);
        }

        auto trial = [&](std::int64_t t) {
            Rng rng = Rng::substream(sim.seed, ee_stream, static_cast<std::uint64_t>(t));
            double acc = 0.0;
            for (std::size_t c = 0; c < means.size(); ++c)
            {
                if (means[c] <= 0.0 || capacity[c] <= 0.0)
                    continue;
                std::poisson_distribution<long long> pois(means[c]);
                const long long k = pois(rng);
                if (k >= 1)
                    acc += cfg.library.popularity[c] * capacity[c] /
                           (static_cast<double>(k) * unit_power[c] + zeta * capacity[c]);
            }
            return std::array<double, 1>{acc};
        };
        return run_trials<1>(sim.trials, sim.threads, trial)[0];
    }

    InterferenceLaplace estimate_interference_laplace(const ScenarioConfig &cfg, int c, double v, const SimConfig &sim)
    {
        check_scenario_for_sim(cfg, sim);
        if (c < 0 || c >= cfg.library.size())
            throw invalid_argument("estimate_interference_laplace: content index out of range");
        if (!(v >= 0.0))
            throw invalid_argument("estimate_interference_laplace: v must be >= 0");
        SimConfig plain = sim;
        plain.conditioned = false;
        const double window = sim.window_km(cfg);
        std::optional<FarFieldInterference> far;
        if (sim.far_field)
            far.emplace(cfg.env, cfg.channel, cfg.interference_density(), window, sim.far_field_threshold);

        auto trial = [&](std::int64_t t) {
            Rng rng = Rng::substream(sim.seed, laplace_stream + static_cast<std::uint64_t>(c),
                                     static_cast<std::uint64_t>(t));
            const LinkBudget b = simulate_budget(cfg, c, plain, window, far ? &*far : nullptr, rng);
            return std::array<double, 3>{std::exp(-v * b.interference_other), std::exp(-v * b.interference_same),
                                         std::exp(-v * b.interference())};
        };
        const auto r = run_trials<3>(sim.trials, sim.threads, trial);
        return {r[0], r[1], r[2]};
    }

    void write_realization_csv(const NetworkRealization &net, std::ostream &os)
    {
        const auto flags = os.flags();
        const auto prec = os.precision(12);
        os << "uav,x_km,y_km,r_km,mode,fading,shadowing,subchannel,cache\n";
        for (std::size_t i = 0; i < net.uavs.size(); ++i)
        {
            const auto &u = net.uavs[i];
            os << i << ',' << u.x_km << ',' << u.y_km << ',' << u.radius() << ',' << to_string(u.mode) << ','
               << u.fading << ',' << u.shadowing << ',' << u.subchannel << ',';
            for (std::size_t k = 0; k < u.cache.size(); ++k)
                os << (k ? ";" : "") << u.cache[k] + 1;
            os << '\n';
        }
        os.precision(prec);
        os.flags(flags);
    }
}
