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

// uavcache run | sweep | validate

#include "uavcache/error.hpp"
#include "uavcache/harness.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

using namespace uavcache;

namespace
{
    struct Options
    {
        std::string config;
        std::string preset;
        std::string out;
        std::optional<std::uint64_t> seed;
        std::optional<std::int64_t> trials;
        std::string method;
        bool detail = false;
        bool print = false;
    };

    RunConfig load(const Options &o)
    {
        if (!o.config.empty() && !o.preset.empty())
            throw config_error("--config and --preset are mutually exclusive");
        RunConfig cfg = !o.preset.empty() ? preset_config(o.preset)
                        : !o.config.empty() ? load_config(o.config)
                                            : parse_config("");
        if (o.seed)
            cfg.simulation.seed = *o.seed;
        if (o.trials)
        {
            cfg.simulation.trials = *o.trials;
            for (auto &sw : cfg.sweeps)
                sw.trials.reset();
        }
        if (o.seed)
            for (auto &sw : cfg.sweeps)
                sw.seed.reset();
        if (!o.method.empty())
        {
            const Method m = method_from_string(o.method);
            for (auto &sw : cfg.sweeps)
                sw.method = m;
        }
        cfg.validate();
        return cfg;
    }

    int write(const ResultTable &table, const std::string &out)
    {
        if (out.empty() || out == "-")
            emit_csv(table, std::cout);
        else
            emit_csv(table, out);
        int failed = 0;
        for (const auto &r : table.rows)
            if (r.method == "failed")
            {
                ++failed;
                std::cerr << "row failed (" << r.scenario_id << ", " << r.env << ", " << r.policy
                          << "): " << r.error << '\n';
            }
        return failed ? 1 : 0;
    }

    // per-content breakdown of the analytic evaluation
    void print_detail(const RunConfig &cfg)
    {
        const ScenarioConfig sc = make_scenario(cfg, cfg.scenario, cfg.environment, cfg.simulation.seed);
        const CapacityReport bits = system_capacity(sc).in_bits();
        std::fprintf(stderr, "%7s %12s %12s %12s %14s %14s %14s\n", "content", "popularity", "p_c", "m_c",
                     "capacity_bits", "ee_approx", "ee_exact");
        for (int c = 0; c < sc.library.size(); ++c)
        {
            CapacityReport one = bits;
            for (int k = 0; k < sc.library.size(); ++k)
                if (k != c)
                    one.rate[static_cast<std::size_t>(k)] = 0.0;
            std::fprintf(stderr, "%7d %12.6g %12.6g %12.6g %14.6g %14.6g %14.6g\n", c + 1,
                         sc.library.popularity[static_cast<std::size_t>(c)],
                         sc.policy.probability[static_cast<std::size_t>(c)], sc.cooperation_mean(c),
                         bits.rate[static_cast<std::size_t>(c)], energy_efficiency(sc, one),
                         energy_efficiency_exact(sc, one));
        }
        std::fprintf(stderr, "system capacity %.12g bits, ee %.12g (approx) %.12g (exact) bits/J\n", bits.system_rate,
                     energy_efficiency(sc, bits), energy_efficiency_exact(sc, bits));
    }

    void add_common(CLI::App *app, Options &o, bool with_preset)
    {
        app->add_option("--config", o.config, "YAML scenario file")->check(CLI::ExistingFile);
        if (with_preset)
            app->add_option("--preset", o.preset, "built-in sweep (fig1, fig2, fig3, fig4)");
        app->add_option("--seed", o.seed, "master seed");
        app->add_option("--trials", o.trials, "Monte Carlo trials per content");
        app->add_option("--method", o.method, "analytic, monte_carlo or both");
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Cache-enabled cooperative UAV network analysis"};
    app.require_subcommand(1);
    Options o;

    auto *run = app.add_subcommand("run", "evaluate the configured scenario");
    add_common(run, o, false);
    run->add_option("--out", o.out, "CSV output path (default stdout)");
    run->add_flag("--detail", o.detail, "per-content table on stderr");

    auto *sweep = app.add_subcommand("sweep", "run the sweeps of a config or preset");
    add_common(sweep, o, true);
    sweep->add_option("--out", o.out, "CSV output path (default stdout)");

    auto *validate = app.add_subcommand("validate", "check a config and exit");
    add_common(validate, o, true);
    validate->add_flag("--print", o.print, "print the normalised config");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (run->parsed())
        {
            RunConfig cfg = load(o);
            if (o.detail)
                print_detail(cfg);
            const Method m = o.method.empty() ? Method::analytic : method_from_string(o.method);
            return write(run_single(cfg, m), o.out);
        }
        if (sweep->parsed())
        {
            const RunConfig cfg = load(o);
            if (cfg.sweeps.empty())
                throw config_error("no sweeps in config; use `run` or add a sweeps list");
            return write(run_sweeps(cfg), o.out);
        }
        const RunConfig cfg = load(o);
        if (o.print)
            std::cout << dump_config(cfg);
        else
            std::cout << "ok\n";
        return 0;
    }
    catch (const config_error &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
