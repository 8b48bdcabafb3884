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

#include "uavcache/error.hpp"
#include "uavcache/harness.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace uavcache;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace
{
    std::string csv(const ResultTable &t)
    {
        std::ostringstream os;
        emit_csv(t, os);
        return os.str();
    }

    std::size_t lines(const std::string &s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }
}

TEST_CASE("empty config gives the model defaults", "[harness]")
{
    const RunConfig cfg = parse_config("");
    CHECK(cfg.channel.alpha_los == 2.09);
    CHECK(cfg.channel.alpha_nlos == 4.0);
    CHECK(cfg.channel.nakagami_los == 10.0);
    CHECK(cfg.channel.nakagami_nlos == 2.0);
    CHECK(cfg.scenario.subchannels == 64);
    CHECK(cfg.scenario.lambda == 1e-3);
    CHECK(cfg.scenario.cache_size == 5);
    CHECK(cfg.scenario.library_size == 20);
    CHECK(cfg.channel.altitude_km == 1.0);
    CHECK(cfg.power.transmit_w == 1.0);
    CHECK(cfg.power.caching_w == 0.1);
    CHECK(cfg.power.static_w == 1.0);
    CHECK(cfg.power.zeta == 1.0);
    CHECK(cfg.channel.k_los == 1.0);
    CHECK(cfg.channel.k_nlos == 1.0);
    CHECK(cfg.sweeps.empty());
    CHECK(cfg == RunConfig{});
}

TEST_CASE("config errors name the key", "[harness]")
{
    CHECK_THROWS_WITH(parse_config("scenario:\n  kappa: 3\n"), ContainsSubstring("scenario.kappa"));
    CHECK_THROWS_AS(parse_config("scenario:\n  kappa: 3\n"), config_error);
    CHECK_THROWS_WITH(parse_config("channel:\n  alpah_los: 2.5\n"), ContainsSubstring("channel.alpah_los"));
    CHECK_THROWS_WITH(parse_config("colour: red\n"), ContainsSubstring("colour"));
    CHECK_THROWS_WITH(parse_config("scenario:\n  lambda_per_km2: lots\n"), ContainsSubstring("scenario.lambda_per_km2"));
    CHECK_THROWS_WITH(parse_config("environment: swamp\n"), ContainsSubstring("environment"));
    CHECK_THROWS_WITH(parse_config("channel:\n  alpha_nlos: 1.5\n"), ContainsSubstring("channel"));
    CHECK_THROWS_WITH(parse_config("scenario: {cache_size: 30}\n"), ContainsSubstring("scenario.cache_size"));
    CHECK_THROWS_WITH(parse_config("sweeps:\n  - {variable: x_cop, grid: [2, 1]}\n"),
                      ContainsSubstring("sweeps[0].grid"));
    CHECK_THROWS_WITH(parse_config("sweeps:\n  - {variable: x_cop, grid: []}\n"), ContainsSubstring("sweeps[0].grid"));
    CHECK_THROWS_WITH(parse_config("sweeps:\n  - {variable: kappa, grid: [1, 2.5]}\n"), ContainsSubstring("kappa"));
    CHECK_THROWS_WITH(parse_config("sweeps:\n  - {variable: x_cop, grid: [1], environments: [mars]}\n"),
                      ContainsSubstring("mars"));
    CHECK_THROWS_WITH(parse_config("sweeps:\n  - {variable: x_cop, grid: [1], colour: 2}\n"),
                      ContainsSubstring("sweeps[0].colour"));
    CHECK_THROWS_WITH(parse_config("simulation: {trials: 0}\n"), ContainsSubstring("simulation"));
    CHECK_THROWS_AS(parse_config("scenario: [1, 2]\n"), config_error);
    CHECK_THROWS_AS(parse_config("a: [\n"), config_error);
}

TEST_CASE("custom environment round-trips", "[harness]")
{
    const std::string text = "environment: {name: my_city, base: urban, psi: 0.2, a_nlos: 25.5}\n"
                             "scenario: {id: rt, kappa: 1.1, x_cop_km: 2.5}\n"
                             "channel: {altitude_km: 0.3, shadowing: literal}\n"
                             "simulation: {seed: 18446744073709551615, cache_mode: exact_s}\n"
                             "sweeps:\n"
                             "  - {id: s1, variable: altitude, grid: [0.1, 0.7], scenario: {kappa: 0.1},\n"
                             "     environments: [my_city, high_rise], policies: [mpc, lru_empirical],\n"
                             "     method: both, trials: 10, seed: 3}\n";
    const RunConfig cfg = parse_config(text);
    CHECK(cfg.custom_environment);
    CHECK(cfg.environment.name == "my_city");
    CHECK(cfg.environment.psi == 0.2);
    CHECK(cfg.environment.a_nlos == 25.5);
    CHECK(cfg.environment.phi == Environment::preset("urban").phi);
    CHECK(cfg.simulation.seed == 18446744073709551615ULL);

    const std::string dumped = dump_config(cfg);
    const RunConfig again = parse_config(dumped);
    CHECK(again == cfg);
    CHECK(dump_config(again) == dumped);
    CHECK(parse_config(dump_config(RunConfig{})) == RunConfig{});
}

TEST_CASE("presets parse and match the shipped files", "[harness]")
{
    CHECK(preset_names() == std::vector<std::string>{"fig1", "fig2", "fig3", "fig4"});
    for (const auto &name : preset_names())
    {
        const RunConfig cfg = preset_config(name);
        CHECK_FALSE(cfg.sweeps.empty());
        std::ifstream in(std::string(UAVCACHE_SOURCE_DIR) + "/configs/" + name + ".yaml");
        std::stringstream text;
        text << in.rdbuf();
        CHECK(text.str() == preset_text(name));
    }
    const RunConfig fig1 = preset_config("fig1");
    REQUIRE(fig1.sweeps.size() == 3);
    CHECK(fig1.sweeps[0].overrides.kappa == 0.2);
    CHECK(fig1.sweeps[2].overrides.kappa == 1.4);
    CHECK(fig1.sweeps[0].environments.size() == 4);
    CHECK(fig1.sweeps[0].method == Method::analytic);
    const RunConfig fig2 = preset_config("fig2");
    CHECK(fig2.scenario.x_cop == 1.0);
    CHECK(fig2.environment.name == "sub_urban");
    CHECK(fig2.sweeps[0].policies ==
          std::vector<PolicyKind>{PolicyKind::rcp, PolicyKind::mpc, PolicyKind::lru_che});
    CHECK(preset_config("fig4").sweeps[0].variable == SweepVariable::altitude);
    CHECK_THROWS_AS(preset_config("fig9"), config_error);
    CHECK_NOTHROW(load_config(std::string(UAVCACHE_SOURCE_DIR) + "/configs/example.yaml"));
    CHECK(load_config(std::string(UAVCACHE_SOURCE_DIR) + "/configs/example.yaml") == RunConfig{});
    CHECK_THROWS_AS(load_config("/nonexistent/cfg.yaml"), config_error);
}

TEST_CASE("policies are built per kind", "[harness]")
{
    const auto lib = ContentLibrary::zipf(10, 0.8);
    const LruSettings lru{50000, 1000};
    for (auto kind : {PolicyKind::rcp, PolicyKind::mpc, PolicyKind::lru_che, PolicyKind::lru_empirical})
    {
        const auto p = build_policy(kind, lib, 3, 1e-3, 2.0, lru, 5);
        CHECK(p.kind == kind);
        CHECK_NOTHROW(p.validate());
    }
    CHECK(build_policy(PolicyKind::lru_empirical, lib, 3, 1e-3, 2.0, lru, 5).probability ==
          build_policy(PolicyKind::lru_empirical, lib, 3, 1e-3, 2.0, lru, 5).probability);
}

TEST_CASE("sweep rows and csv", "[harness]")
{
    RunConfig cfg = parse_config("sweeps:\n"
                                 "  - {id: grid, variable: kappa, grid: [0.4, 1.2], policies: [rcp, mpc],\n"
                                 "     environments: [urban, sub_urban, high_rise], method: analytic}\n");
    EvaluatorCache cache;
    const ResultTable t = run_sweep(cfg, cfg.sweeps[0], cache);
    CHECK(t.rows.size() == 2 * 2 * 3);
    CHECK(cache.size() == 3);
    CHECK_FALSE(t.any_failed());
    CHECK(t.rows[0].kappa == 0.4);
    CHECK(t.rows[0].policy == "rcp");
    CHECK(t.rows[0].env == "urban");
    CHECK(t.rows[1].env == "sub_urban");
    CHECK(t.rows[3].policy == "mpc");
    CHECK(t.rows[6].kappa == 1.2);
    for (const auto &r : t.rows)
    {
        CHECK(r.capacity_bits.value() > 0.0);
        CHECK(r.ee_bits_per_joule.value() > 0.0);
        CHECK_FALSE(r.n_trials.has_value());
    }

    const std::string text = csv(t);
    CHECK(text.rfind(std::string(csv_header) + "\n", 0) == 0);
    CHECK(lines(text) == 13);

    ResultTable one;
    one.rows.push_back(t.rows[0]);
    CHECK(lines(csv(one)) == 2);
    CHECK(csv(one).find("grid,urban,rcp,analytic,0.001,1,3,64,20,5,0.4,") != std::string::npos);

    // analytic capacity in bits matches the library call
    ScenarioSpec spec = cfg.scenario;
    spec.kappa = 0.4;
    const auto sc = make_scenario(cfg, spec, Environment::preset("urban"), 0);
    CHECK_THAT(t.rows[0].capacity_bits.value(), WithinRel(system_capacity(sc).in_bits().system_rate, 1e-12));
}

TEST_CASE("failed rows stay in the table", "[harness]")
{
    RunConfig cfg = parse_config("channel: {shadowing: literal}\n"
                                 "sweeps:\n"
                                 "  - {id: lit, variable: x_cop, grid: [1.0], method: monte_carlo, trials: 10}\n");
    const ResultTable t = run_sweeps(cfg);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.any_failed());
    CHECK(t.rows[0].method == "failed");
    CHECK_FALSE(t.rows[0].error.empty());
    const std::string text = csv(t);
    CHECK(text.find("lit,sub_urban,rcp,failed,0.001,1,1,64,20,5,0.8,,,,,") != std::string::npos);
}

TEST_CASE("both methods agree and reruns are byte-identical", "[harness]")
{
    const std::string text = "scenario: {x_cop_km: 3}\n"
                             "sweeps:\n"
                             "  - {id: pt, variable: x_cop, grid: [3.0], method: both, trials: 4000, seed: 42}\n";
    RunConfig cfg = parse_config(text);
    const ResultTable a = run_sweeps(cfg);
    REQUIRE(a.rows.size() == 2);
    CHECK(a.rows[0].method == "analytic");
    CHECK(a.rows[1].method == "monte_carlo");
    CHECK(a.rows[0].seed == a.rows[1].seed);
    const double hw = 1.96 * a.rows[1].std_error_bits.value();
    CHECK(std::abs(a.rows[0].capacity_bits.value() - a.rows[1].capacity_bits.value()) <=
          std::max(hw, 0.1 * a.rows[0].capacity_bits.value()));

    const ResultTable b = run_sweeps(cfg);
    CHECK(csv(a) == csv(b));
    cfg.simulation.threads = 3;
    CHECK(csv(run_sweeps(cfg)) == csv(a));

    const auto path = std::filesystem::temp_directory_path() / "uavcache_harness_test.csv";
    emit_csv(a, path.string());
    std::ifstream in(path);
    std::stringstream file;
    file << in.rdbuf();
    CHECK(file.str() == csv(a));
    std::filesystem::remove(path);
    CHECK_THROWS(emit_csv(a, "/nonexistent/dir/out.csv"));
}

TEST_CASE("single run uses the scenario", "[harness]")
{
    RunConfig cfg = parse_config("scenario: {id: one, x_cop_km: 2}\nenvironment: dense_urban\n");
    const ResultTable t = run_single(cfg, Method::analytic);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].scenario_id == "one");
    CHECK(t.rows[0].env == "dense_urban");
    CHECK(t.rows[0].x_cop == 2.0);
}
