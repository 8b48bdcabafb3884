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

// Acceptance report: one PASS/FAIL line per criterion.
//
//   uavcache_acceptance [--only 1,2,...] [--expect-fail 4,6]
//
// Exit status is 0 when every criterion outside --expect-fail passes and every listed one
// fails, 1 otherwise.

#include "uavcache/analytics.hpp"
#include "uavcache/caching.hpp"
#include "uavcache/channel.hpp"
#include "uavcache/harness.hpp"
#include "uavcache/simulator.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace uavcache;

namespace
{
    constexpr double pi = 3.14159265358979323846;

    struct Outcome
    {
        bool pass = true;
        std::string detail;

        void require(bool ok, const std::string &what)
        {
            if (!ok)
            {
                pass = false;
                if (!detail.empty())
                    detail += "; ";
                detail += what;
            }
        }
    };

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    const std::vector<std::string> environments = {"high_rise", "dense_urban", "urban", "sub_urban"};

    // Operating point shared by the trend criteria.
    ScenarioConfig scenario(const std::string &env, double x_cop, double kappa, double altitude = 1.0,
                            int library_size = 20, PolicyKind kind = PolicyKind::rcp)
    {
        RunConfig run;
        run.scenario.x_cop = x_cop;
        run.scenario.kappa = kappa;
        run.scenario.library_size = library_size;
        run.scenario.cache_size = 5;
        run.scenario.policy = kind;
        run.channel.altitude_km = altitude;
        return make_scenario(run, run.scenario, Environment::preset(env), 0);
    }

    // Criterion 1 ------------------------------------------------------------

    // Best objective on the grid p_c = k_c / n, sum k_c = n S. The objective is separable,
    // so a knapsack recursion over contents visits every grid point.
    double grid_optimum(const std::vector<double> &a, int s, double beta, int n)
    {
        const int total = n * s;
        const double none = -1e300;
        std::vector<double> best(total + 1, none), next(total + 1);
        best[0] = 0.0;
        std::vector<double> gain(n + 1);
        for (double ac : a)
        {
            for (int k = 0; k <= n; ++k)
                gain[k] = ac * -std::expm1(-beta * k / static_cast<double>(n));
            std::fill(next.begin(), next.end(), none);
            for (int used = 0; used <= total; ++used)
            {
                if (best[used] == none)
                    continue;
                const int top = std::min(n, total - used);
                for (int k = 0; k <= top; ++k)
                    next[used + k] = std::max(next[used + k], best[used] + gain[k]);
            }
            best.swap(next);
        }
        return best[total];
    }

    Outcome placement_optimality()
    {
        Outcome out;
        std::mt19937_64 gen(20240601);
        std::uniform_int_distribution<int> size(2, 5);
        std::gamma_distribution<double> weight(1.0, 1.0);
        std::uniform_real_distribution<double> log_beta(std::log(1e-3), std::log(50.0));
        double worst_gap = 0.0, worst_kkt = 0.0;
        for (int inst = 0; inst < 50; ++inst)
        {
            const int f = size(gen);
            std::uniform_int_distribution<int> cache(1, f - 1);
            const int s = cache(gen);
            std::vector<double> a(f);
            double sum = 0.0;
            for (auto &x : a)
                sum += (x = weight(gen) + 1e-6);
            for (auto &x : a)
                x /= sum;
            const double beta = std::exp(log_beta(gen));

            const auto pol = solve_rcp(a, s, beta);
            const double value = rcp_objective(a, pol.probability, beta);
            const double brute = grid_optimum(a, s, beta, 1000);
            worst_gap = std::max(worst_gap, brute - value);

            double lo = 1e300, hi = -1e300;
            for (int c = 0; c < f; ++c)
            {
                const double p = pol.probability[c];
                if (p > 1e-12 && p < 1.0 - 1e-12)
                {
                    const double marginal = a[c] * beta * std::exp(-beta * p);
                    lo = std::min(lo, marginal);
                    hi = std::max(hi, marginal);
                }
            }
            if (hi >= lo)
                worst_kkt = std::max(worst_kkt, (hi - lo) / hi);
        }
        out.require(worst_gap <= 1e-6, fmt("grid optimum exceeds solver by %.3g", worst_gap));
        out.require(worst_kkt < 1e-6, fmt("KKT residual %.3g", worst_kkt));
        out.detail = fmt("50 instances, max(grid - solver) = %.3g (tol 1e-6), max KKT residual = %.3g (tol 1e-6)",
                         worst_gap, worst_kkt) +
                     (out.detail.empty() ? "" : "; " + out.detail);
        return out;
    }

    // Criterion 2 ------------------------------------------------------------

    Outcome capacity_agreement()
    {
        Outcome out;
        SimConfig sim;
        sim.trials = 100000;
        sim.seed = 7;
        std::string notes;
        for (const char *env : {"sub_urban", "high_rise"})
            for (double x : {1.0, 3.0})
            {
                const auto cfg = scenario(env, x, 0.8);
                const double an = content_capacity(cfg, 0);
                const auto mc = estimate_capacity(cfg, 0, sim);
                const double tol = std::max(0.1 * an, 3.0 * mc.std_error);
                const bool ok = std::abs(an - mc.mean) <= tol;
                out.require(ok, fmt("%s X=%g off", env, x));
                notes += fmt(" %s X=%g analytic %.5g MC %.5g +- %.2g (tol %.3g);", env, x, an, mc.mean,
                             mc.std_error, tol);
            }
        out.detail = "c=1, 1e5 conditioned trials:" + notes + (out.pass ? "" : " " + out.detail);
        return out;
    }

    // Criterion 3 ------------------------------------------------------------

    Outcome capacity_trends(EvaluatorCache &cache)
    {
        Outcome out;
        const std::vector<double> xs = {0.5, 1.0, 2.0, 3.0, 4.0};
        const std::vector<double> kappas = {0.2, 0.8, 1.4};
        int checks = 0;
        for (const auto &env : environments)
        {
            std::vector<std::vector<double>> r(xs.size(), std::vector<double>(kappas.size()));
            for (std::size_t i = 0; i < xs.size(); ++i)
                for (std::size_t j = 0; j < kappas.size(); ++j)
                {
                    const auto cfg = scenario(env, xs[i], kappas[j]);
                    r[i][j] = system_capacity(cfg, cache.get(cfg)).system_rate;
                }
            for (std::size_t i = 0; i < xs.size(); ++i)
                for (std::size_t j = 0; j < kappas.size(); ++j)
                {
                    if (i > 0)
                    {
                        ++checks;
                        out.require(r[i][j] >= r[i - 1][j],
                                    fmt("%s kappa=%g: R(X=%g)=%.6g < R(X=%g)=%.6g", env.c_str(), kappas[j], xs[i],
                                        r[i][j], xs[i - 1], r[i - 1][j]));
                    }
                    if (j > 0)
                    {
                        ++checks;
                        out.require(r[i][j] >= r[i][j - 1],
                                    fmt("%s X=%g: R(kappa=%g)=%.6g < R(kappa=%g)=%.6g", env.c_str(), xs[i], kappas[j],
                                        r[i][j], kappas[j - 1], r[i][j - 1]));
                    }
                }
        }
        out.detail = fmt("%d adjacent pairs over X in {0.5,1,2,3,4} and kappa in {0.2,0.8,1.4}, 4 environments", checks) +
                     (out.pass ? "" : ": " + out.detail);
        return out;
    }

    // Criterion 4 ------------------------------------------------------------

    Outcome environment_ordering(EvaluatorCache &cache)
    {
        Outcome out;
        std::map<std::string, double> r;
        for (const auto &env : environments)
        {
            const auto cfg = scenario(env, 3.0, 0.8);
            r[env] = system_capacity(cfg, cache.get(cfg)).in_bits().system_rate;
        }
        std::string notes = fmt("kappa=0.8 X=3: R[bits] high_rise %.5g dense_urban %.5g urban %.5g sub_urban %.5g;",
                                r["high_rise"], r["dense_urban"], r["urban"], r["sub_urban"]);
        for (const auto &env : environments)
        {
            if (env == "high_rise")
                continue;
            const double ratio = r["high_rise"] / r[env];
            out.require(ratio > 1.0, "high_rise below " + env);
            notes += fmt(" ratio vs %s %.3g%s;", env.c_str(), ratio,
                         ratio >= 1.3 && ratio <= 3.0 ? "" : " (outside [1.3, 3.0])");
        }
        out.detail = notes + (out.pass ? "" : " " + out.detail);
        return out;
    }

    // Criterion 5 ------------------------------------------------------------

    Outcome policy_comparison(EvaluatorCache &cache)
    {
        Outcome out;
        int checks = 0;
        double min_lru_margin = 1e300, min_mpc_margin = 1e300;
        for (double kappa : {0.4, 0.8, 1.2})
            for (int f : {10, 15, 20, 30, 40})
            {
                auto rate = [&](PolicyKind kind) {
                    const auto cfg = scenario("sub_urban", 1.0, kappa, 1.0, f, kind);
                    return system_capacity(cfg, cache.get(cfg)).system_rate;
                };
                const double rcp = rate(PolicyKind::rcp);
                const double lru = rate(PolicyKind::lru_che);
                const double mpc = rate(PolicyKind::mpc);
                // 1e-6 relative: the quadrature tolerance
                ++checks;
                min_lru_margin = std::min(min_lru_margin, rcp / lru - 1.0);
                out.require(rcp >= lru * (1.0 - 1e-6), fmt("kappa=%g F=%d: RCP %.6g < LRU %.6g", kappa, f, rcp, lru));
                if (f >= 20)
                {
                    ++checks;
                    min_mpc_margin = std::min(min_mpc_margin, rcp / mpc - 1.0);
                    out.require(rcp >= mpc * (1.0 - 1e-6),
                                fmt("kappa=%g F=%d: RCP %.6g < MPC %.6g", kappa, f, rcp, mpc));
                }
            }
        out.detail = fmt("%d comparisons at S=5 X=1 sub_urban; min RCP/LRU - 1 = %.3g, min RCP/MPC - 1 = %.3g "
                         "(tol -1e-6)",
                         checks, min_lru_margin, min_mpc_margin) +
                     (out.pass ? "" : ": " + out.detail);
        return out;
    }

    // Criterion 6 ------------------------------------------------------------

    double analytic_ee(const ScenarioConfig &cfg, EvaluatorCache &cache)
    {
        const auto cap = system_capacity(cfg, cache.get(cfg)).in_bits();
        return energy_efficiency(cfg, cap);
    }

    Outcome ee_trends(EvaluatorCache &cache)
    {
        Outcome out;
        const std::vector<double> grid = {0.5, 1.0, 2.0, 3.0};
        std::string notes;
        for (const auto &env : environments)
        {
            std::vector<double> by_x, by_h;
            for (double x : grid)
                by_x.push_back(analytic_ee(scenario(env, x, 0.8), cache));
            for (double h : grid)
                by_h.push_back(analytic_ee(scenario(env, 3.0, 0.8, h), cache));
            bool x_ok = true, h_ok = true;
            for (std::size_t i = 1; i < grid.size(); ++i)
            {
                x_ok = x_ok && by_x[i] >= by_x[i - 1];
                h_ok = h_ok && by_h[i] <= by_h[i - 1];
            }
            out.require(x_ok, env + " not nondecreasing in X");
            out.require(h_ok, env + " not nonincreasing in H");
            notes += fmt(" %s eta(X) %.3g %.3g %.3g %.3g, eta(H) %.3g %.3g %.3g %.3g;", env.c_str(), by_x[0], by_x[1],
                         by_x[2], by_x[3], by_h[0], by_h[1], by_h[2], by_h[3]);
        }
        out.detail = "bits/J, grid {0.5,1,2,3}:" + notes + (out.pass ? "" : " " + out.detail);
        return out;
    }

    // Criterion 7 ------------------------------------------------------------

    Outcome ee_closed_form(EvaluatorCache &cache)
    {
        Outcome out;
        double worst = 0.0, worst_trunc = 0.0;
        for (const auto &env : {std::string("sub_urban"), std::string("high_rise")})
        {
            auto cfg = scenario(env, 3.0, 0.8);
            const auto cap = system_capacity(cfg, cache.get(cfg));
            cfg.power = PowerModel{0.0, 0.0, 0.0, 2.0};
            double expected = 0.0;
            for (int c = 0; c < cfg.library.size(); ++c)
                expected += cfg.library.popularity[c] * -std::expm1(-cfg.cooperation_mean(c));
            expected /= cfg.power.zeta;
            worst = std::max(worst, std::abs(energy_efficiency(cfg, cap) - expected));

            auto powered = scenario(env, 3.0, 0.8);
            worst_trunc = std::max(worst_trunc,
                                   std::abs(energy_efficiency(powered, cap, 50) - energy_efficiency(powered, cap, 200)));
        }
        out.require(worst <= 1e-10, "closed form mismatch");
        out.require(worst_trunc <= 1e-12, "k truncation unstable");
        out.detail = fmt("|eta - sum a_c(1-e^-m_c)/zeta| = %.3g (tol 1e-10); |eta(k<=50) - eta(k<=200)| = %.3g (tol 1e-12)",
                         worst, worst_trunc);
        return out;
    }

    // Criterion 8 ------------------------------------------------------------

    // Independent estimate of 1 - E[exp(-v L V W)] from direct draws.
    std::pair<double, double> kernel_oracle(double z, double v, const Environment &env, const ChannelConfig &ch,
                                            int n, std::mt19937_64 &gen)
    {
        const double h = ch.altitude_km;
        const double theta = 180.0 / pi * std::atan2(h, z);
        const double p_los = 1.0 / (1.0 + env.phi * std::exp(-env.psi * (theta - env.phi)));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double sum = 0.0, sum2 = 0.0;
        for (int i = 0; i < n; ++i)
        {
            const bool los = unif(gen) < p_los;
            const double alpha = los ? ch.alpha_los : ch.alpha_nlos;
            const double k = los ? ch.k_los : ch.k_nlos;
            const double w = los ? ch.nakagami_los : ch.nakagami_nlos;
            const double mu = los ? env.mu_los : env.mu_nlos;
            const double sigma = (los ? env.a_los : env.a_nlos) * std::exp(-(los ? env.c_los : env.c_nlos) * theta);
            const double path = k * std::pow(h * h + z * z, -alpha / 2.0);
            std::normal_distribution<double> u(mu, sigma);
            std::gamma_distribution<double> fade(w, 1.0 / w);
            const double x = -std::expm1(-v * path * std::pow(10.0, -u(gen) / 10.0) * fade(gen));
            sum += x;
            sum2 += x * x;
        }
        const double mean = sum / n;
        return {mean, std::sqrt(std::max(sum2 / n - mean * mean, 0.0) / n)};
    }

    Outcome channel_statistics()
    {
        Outcome out;
        const ChannelConfig ch;
        Rng rng(4242);
        std::string notes;

        // LOS fraction over a realized network, Bernoulli variance per link
        {
            const auto env = Environment::preset("urban");
            double los = 0.0, expected = 0.0, var = 0.0;
            std::size_t links = 0;
            while (links < 200000)
            {
                auto net = sample_network(0.05, 50.0, rng);
                draw_links(net, env, ch, rng);
                for (const auto &u : net.uavs)
                {
                    const double p = los_probability(u.radius(), ch.altitude_km, env);
                    los += u.mode == LinkMode::los;
                    expected += p;
                    var += p * (1.0 - p);
                    ++links;
                }
            }
            const double z = (los - expected) / std::sqrt(var);
            out.require(std::abs(z) <= 3.0, "LOS fraction");
            notes += fmt("LOS fraction z=%.2f over %zu links;", z, links);
        }

        // Gamma moments
        for (auto mode : {LinkMode::los, LinkMode::nlos})
        {
            const double w = ch.nakagami(mode);
            const int n = 1000000;
            double s1 = 0.0, s2 = 0.0;
            for (int i = 0; i < n; ++i)
            {
                const double g = sample_fading(mode, ch, rng);
                s1 += g;
                s2 += g * g;
            }
            const double mean = s1 / n;
            const double var = (s2 - n * mean * mean) / (n - 1);
            const double z_mean = (mean - 1.0) / std::sqrt(1.0 / w / n);
            // variance of the sample variance: (mu4 - sigma^4) / n, mu4 = 3 (W + 2) / W^3
            const double z_var = (var - 1.0 / w) / std::sqrt((3.0 * (w + 2.0) / (w * w * w) - 1.0 / (w * w)) / n);
            out.require(std::abs(z_mean) <= 3.0 && std::abs(z_var) <= 3.0, "Gamma moments W=" + std::to_string(w));
            notes += fmt(" Gamma W=%g z(mean)=%.2f z(var)=%.2f;", w, z_mean, z_var);
        }

        // Log-normal moments: high_rise NLOS at 45 degrees
        {
            const auto env = Environment::preset("high_rise");
            const double h = ch.altitude_km;
            const double sigma = shadowing_sigma(h, h, LinkMode::nlos, env);
            const double s = sigma * std::log(10.0) / 10.0;
            const double log_median = -env.mu_nlos * std::log(10.0) / 10.0;
            const int n = 1000000;
            double l1 = 0.0, v1 = 0.0, v2 = 0.0;
            for (int i = 0; i < n; ++i)
            {
                const double v = sample_shadowing(h, h, LinkMode::nlos, env, ch, rng);
                l1 += std::log(v);
                v1 += v;
                v2 += v * v;
            }
            const double z_log = (l1 / n - log_median) / (s / std::sqrt(n));
            const double mean_v = v1 / n;
            const double se_v = std::sqrt((v2 / n - mean_v * mean_v) / n);
            const double z_v = (mean_v - std::exp(log_median + s * s / 2.0)) / se_v;
            out.require(std::abs(z_log) <= 3.0 && std::abs(z_v) <= 3.0, "log-normal moments");
            notes += fmt(" log-normal sigma=%.3g dB z(ln V)=%.2f z(V)=%.2f;", sigma, z_log, z_v);
        }

        // Kernel against direct draws
        {
            std::mt19937_64 gen(777);
            double worst = 0.0;
            for (const char *name : {"sub_urban", "high_rise"})
            {
                const auto env = Environment::preset(name);
                const LaplaceKernel kernel(env, ch, default_hermite_nodes);
                for (double z : {0.5, 1.0, 2.0})
                    for (double v : {0.1, 1.0, 10.0})
                    {
                        const auto [mean, se] = kernel_oracle(z, v, env, ch, 200000, gen);
                        const double zscore = (kernel(z, v) - mean) / std::max(se, 1e-15);
                        worst = std::max(worst, std::abs(zscore));
                        out.require(std::abs(zscore) <= 3.0, fmt("kernel %s z=%g v=%g", name, z, v));
                    }
            }
            notes += fmt(" kernel vs direct draws at 9 points x 2 environments, max |z| = %.2f", worst);
        }
        out.detail = notes + (out.pass ? "" : "; " + out.detail);
        return out;
    }

    // Criterion 9 ------------------------------------------------------------

    Outcome numerical_robustness()
    {
        Outcome out;
        std::string notes;
        for (const char *env : {"sub_urban", "high_rise"})
        {
            const auto base = scenario(env, 3.0, 0.8);
            const double r0 = system_capacity(base).system_rate;
            const double tol = base.quadrature.rel_tol;
            auto check = [&](const char *what, auto mutate) {
                auto cfg = base;
                mutate(cfg.quadrature);
                const double rel = std::abs(system_capacity(cfg).system_rate - r0) / r0;
                out.require(rel < tol, fmt("%s %s", env, what));
                notes += fmt(" %s %s %.2g;", env, what, rel);
            };
            check("2 v_max", [](QuadratureConfig &q) { q.v_max *= 2.0; });
            check("2 z_max", [](QuadratureConfig &q) { q.z_max *= 2.0; });
            check("2 nodes", [](QuadratureConfig &q) { q.hermite_nodes *= 2; });
        }
        notes = "analytic relative change (tol 1e-6):" + notes;

        const auto cfg = scenario("sub_urban", 1.0, 0.8);
        SimConfig sim;
        sim.trials = 40000;
        sim.seed = 11;
        const auto a = estimate_capacity(cfg, 0, sim);
        sim.r_max_km = 2.0 * sim.window_km(cfg);
        const auto b = estimate_capacity(cfg, 0, sim);
        out.require(std::abs(a.mean - b.mean) < a.half_width(), "MC R_max doubling");
        notes += fmt(" MC 2 R_max: |%.6g - %.6g| = %.2g (half-width %.2g)", a.mean, b.mean, std::abs(a.mean - b.mean),
                     a.half_width());
        out.detail = notes + (out.pass ? "" : "; " + out.detail);
        return out;
    }

    // Criterion 10 -----------------------------------------------------------

    Outcome determinism()
    {
        Outcome out;
        const std::string text = "scenario: {library_size: 10}\n"
                                 "simulation: {seed: 99}\n"
                                 "lru: {requests: 20000, warmup: 2000}\n"
                                 "sweeps:\n"
                                 "  - {id: det, variable: x_cop, grid: [1, 2], policies: [rcp, lru_empirical],\n"
                                 "     environments: [urban, high_rise], method: both, trials: 3000}\n";
        auto csv_of = [&](int threads) {
            auto cfg = parse_config(text);
            cfg.simulation.threads = threads;
            std::ostringstream os;
            emit_csv(run_sweeps(cfg), os);
            return os.str();
        };
        const std::string first = csv_of(1);
        const std::string again = csv_of(1);
        const std::string threaded = csv_of(4);
        out.require(first == again, "rerun differs");
        out.require(first == threaded, "4 threads differ");
        const auto rows = std::count(first.begin(), first.end(), '\n') - 1;
        out.detail = fmt("%zu-byte CSV with %ld rows, rerun and 4 threads byte-identical", first.size(), long(rows)) +
                     (out.pass ? "" : ": " + out.detail);
        return out;
    }

    std::set<int> parse_list(const std::string &s)
    {
        std::set<int> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                out.insert(std::stoi(item));
        return out;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Acceptance report"};
    std::string only, expect_fail;
    app.add_option("--only", only, "comma-separated criteria to run (default: all)");
    app.add_option("--expect-fail", expect_fail, "comma-separated criteria known to fail");
    CLI11_PARSE(app, argc, argv);

    std::set<int> selected, expected;
    try
    {
        selected = parse_list(only);
        expected = parse_list(expect_fail);
    }
    catch (const std::exception &)
    {
        std::cerr << "criterion lists must be comma-separated integers\n";
        return 2;
    }

    EvaluatorCache cache;
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, placement_optimality},
        {2, capacity_agreement},
        {3, [&] { return capacity_trends(cache); }},
        {4, [&] { return environment_ordering(cache); }},
        {5, [&] { return policy_comparison(cache); }},
        {6, [&] { return ee_trends(cache); }},
        {7, [&] { return ee_closed_form(cache); }},
        {8, channel_statistics},
        {9, numerical_robustness},
        {10, determinism},
    };

    bool ok = true;
    for (const auto &[id, run] : criteria)
    {
        if (!selected.empty() && !selected.count(id))
            continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome res;
        try
        {
            res = run();
        }
        catch (const std::exception &e)
        {
            res = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool known = expected.count(id) > 0;
        std::string tag;
        if (known)
            tag = res.pass ? " [listed as expected failure but passed]" : " [expected failure]";
        ok = ok && (res.pass != known);
        std::cout << "criterion " << id << ": " << (res.pass ? "PASS" : "FAIL") << tag << " (" << fmt("%.1f", secs)
                  << " s) " << res.detail << std::endl;
    }
    return ok ? 0 : 1;
}
