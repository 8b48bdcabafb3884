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

#ifndef UAVCACHE_HARNESS_HPP
#define UAVCACHE_HARNESS_HPP

#include "uavcache/analytics.hpp"
#include "uavcache/caching.hpp"
#include "uavcache/channel.hpp"
#include "uavcache/simulator.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uavcache
{
    enum class SweepVariable
    {
        x_cop,
        kappa,
        library_size,
        altitude,
        density
    };

    enum class Method
    {
        analytic,
        monte_carlo,
        both
    };

    std::string to_string(SweepVariable v);
    SweepVariable sweep_variable_from_string(std::string_view s);
    std::string to_string(Method m);
    Method method_from_string(std::string_view s);

    /// Scenario knobs before the library and placement are derived.
    struct ScenarioSpec
    {
        std::string id = "default";
        double lambda = 1e-3;  // per km^2
        double x_cop = 3.0;    // km
        int subchannels = 64;
        int library_size = 20;
        double kappa = 0.8;
        int cache_size = 5;
        PolicyKind policy = PolicyKind::rcp;
        CooperationTerm cooperation = CooperationTerm::exact;

        bool operator==(const ScenarioSpec &) const = default;
    };

    /// Per-sweep replacements for scenario values.
    struct ScenarioOverrides
    {
        std::optional<double> lambda;
        std::optional<double> x_cop;
        std::optional<int> library_size;
        std::optional<double> kappa;
        std::optional<int> cache_size;
        std::optional<double> altitude;

        bool operator==(const ScenarioOverrides &) const = default;
    };

    struct LruSettings
    {
        std::int64_t requests = 200000;
        std::int64_t warmup = 20000;

        bool operator==(const LruSettings &) const = default;
    };

    struct SweepSpec
    {
        std::string id;
        SweepVariable variable = SweepVariable::x_cop;
        std::vector<double> grid;
        ScenarioOverrides overrides;
        std::vector<PolicyKind> policies;       // empty: the scenario policy
        std::vector<std::string> environments;  // empty: the configured environment
        Method method = Method::analytic;
        std::optional<std::int64_t> trials;
        std::optional<std::uint64_t> seed;

        bool operator==(const SweepSpec &) const = default;
    };

    struct RunConfig
    {
        ScenarioSpec scenario;
        Environment environment = Environment::preset("sub_urban");
        bool custom_environment = false;
        ChannelConfig channel;
        PowerModel power;
        QuadratureConfig quadrature;
        SimConfig simulation;
        LruSettings lru;
        EeForm ee_form = EeForm::approximate;
        std::vector<SweepSpec> sweeps;

        /// Throws config_error naming the offending key.
        void validate() const;

        bool operator==(const RunConfig &) const = default;
    };

    RunConfig parse_config(std::string_view yaml_text);
    RunConfig load_config(const std::string &path);
    std::string dump_config(const RunConfig &cfg);

    /// fig1 .. fig4
    std::vector<std::string> preset_names();
    RunConfig preset_config(std::string_view name);
    std::string preset_text(std::string_view name);

    /// Placement for a library. lru_empirical draws `lru.requests` requests seeded by `seed`.
    PlacementPolicy build_policy(PolicyKind kind, const ContentLibrary &library, int cache_size, double lambda,
                                 double x_cop_km, const LruSettings &lru, std::uint64_t seed);

    /// Fully derived scenario (library and placement included).
    ScenarioConfig make_scenario(const RunConfig &cfg, const ScenarioSpec &spec, const Environment &env,
                                 std::uint64_t seed);

    struct ResultRow
    {
        std::string scenario_id;
        std::string env;
        std::string policy;
        std::string method; // analytic, monte_carlo or failed
        double lambda = 0.0;
        double altitude = 0.0;
        double x_cop = 0.0;
        int subchannels = 0;
        int library_size = 0;
        int cache_size = 0;
        double kappa = 0.0;
        std::optional<double> capacity_bits;
        std::optional<double> ee_bits_per_joule;
        std::optional<double> std_error_bits;
        std::optional<std::int64_t> n_trials;
        std::uint64_t seed = 0;
        std::string error;
    };

    struct ResultTable
    {
        std::vector<ResultRow> rows;

        bool any_failed() const;
    };

    /// Keeps one CapacityEvaluator per geometry across rows.
    class EvaluatorCache
    {
    public:
        const CapacityEvaluator &get(const ScenarioConfig &cfg);
        std::size_t size() const { return cache_.size(); }

    private:
        std::map<std::string, std::unique_ptr<CapacityEvaluator>> cache_;
    };

    /// One row per grid point x policy x environment x method, in that nesting order.
    ResultTable run_sweep(const RunConfig &cfg, const SweepSpec &sweep, EvaluatorCache &cache);

    /// All configured sweeps, appended in order.
    ResultTable run_sweeps(const RunConfig &cfg);

    /// The scenario itself as a single-point sweep.
    ResultTable run_single(const RunConfig &cfg, Method method);

    void emit_csv(const ResultTable &table, std::ostream &os);
    void emit_csv(const ResultTable &table, const std::string &path);

    inline constexpr std::string_view csv_header = "scenario_id,env,policy,method,lambda_per_km2,H_km,X_cop_km,B,F,S,"
                                                   "kappa,capacity_bits,ee_bits_per_joule,stderr,n_trials,seed";
}

#endif
