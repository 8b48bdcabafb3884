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

#include "uavcache/harness.hpp"
#include "uavcache/error.hpp"
#include "uavcache/rng.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

namespace uavcache
{
    namespace detail
    {
        extern const std::array<std::pair<std::string_view, std::string_view>, 4> preset_files;
    }

    namespace
    {
        constexpr std::uint64_t row_stream = 0x726f7773ULL;

        // Reads keys of one mapping and rejects the ones nobody asked for.
        class Section
        {
        public:
            Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path))
            {
                if (node_ && !node_.IsNull() && !node_.IsMap())
                    throw config_error(path_ + ": expected a mapping");
            }

            bool present() const { return node_ && node_.IsMap(); }

            YAML::Node child(const std::string &key)
            {
                seen_.insert(key);
                if (!present())
                    return YAML::Node();
                return node_[key];
            }

            template <class T>
            void read(const std::string &key, T &out)
            {
                const YAML::Node n = child(key);
                if (!n || n.IsNull())
                    return;
                try
                {
                    out = n.as<T>();
                }
                catch (const YAML::Exception &)
                {
                    throw config_error(key_path(key) + ": cannot read '" + scalar_text(n) + "'");
                }
            }

            template <class T>
            void read(const std::string &key, std::optional<T> &out)
            {
                const YAML::Node n = child(key);
                if (!n || n.IsNull())
                    return;
                T value{};
                read(key, value);
                out = value;
            }

            template <class T, class Parse>
            void read_enum(const std::string &key, T &out, Parse parse)
            {
                std::string text;
                read(key, text);
                if (text.empty())
                    return;
                try
                {
                    out = parse(text);
                }
                catch (const std::exception &e)
                {
                    throw config_error(key_path(key) + ": " + e.what());
                }
            }

            void finish() const
            {
                if (!present())
                    return;
                for (const auto &kv : node_)
                {
                    const std::string key = kv.first.as<std::string>();
                    if (!seen_.count(key))
                        throw config_error("unknown key '" + key_path(key) + "'");
                }
            }

            std::string key_path(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

        private:
            static std::string scalar_text(const YAML::Node &n) { return n.IsScalar() ? n.Scalar() : "<non-scalar>"; }

            YAML::Node node_;
            std::string path_;
            std::set<std::string> seen_;
        };

        void parse_scenario(Section s, ScenarioSpec &sc)
        {
            s.read("id", sc.id);
            s.read("lambda_per_km2", sc.lambda);
            s.read("x_cop_km", sc.x_cop);
            s.read("subchannels", sc.subchannels);
            s.read("library_size", sc.library_size);
            s.read("kappa", sc.kappa);
            s.read("cache_size", sc.cache_size);
            s.read_enum("policy", sc.policy, policy_kind_from_string);
            s.read_enum("cooperation", sc.cooperation, cooperation_term_from_string);
            s.finish();
        }

        void parse_overrides(Section s, ScenarioOverrides &o)
        {
            s.read("lambda_per_km2", o.lambda);
            s.read("x_cop_km", o.x_cop);
            s.read("library_size", o.library_size);
            s.read("kappa", o.kappa);
            s.read("cache_size", o.cache_size);
            s.read("altitude_km", o.altitude);
            s.finish();
        }

        void parse_environment(const YAML::Node &node, RunConfig &cfg)
        {
            if (!node || node.IsNull())
                return;
            if (node.IsScalar())
            {
                try
                {
                    cfg.environment = Environment::preset(node.Scalar());
                }
                catch (const std::exception &e)
                {
                    throw config_error(std::string("environment: ") + e.what());
                }
                cfg.custom_environment = false;
                return;
            }
            Section s(node, "environment");
            std::string base = "sub_urban";
            s.read("base", base);
            try
            {
                cfg.environment = Environment::preset(base);
            }
            catch (const std::exception &e)
            {
                throw config_error(std::string("environment.base: ") + e.what());
            }
            Environment &env = cfg.environment;
            env.name = "custom";
            s.read("name", env.name);
            s.read("phi", env.phi);
            s.read("psi", env.psi);
            s.read("mu_los", env.mu_los);
            s.read("mu_nlos", env.mu_nlos);
            s.read("a_los", env.a_los);
            s.read("a_nlos", env.a_nlos);
            s.read("c_los", env.c_los);
            s.read("c_nlos", env.c_nlos);
            s.finish();
            cfg.custom_environment = true;
        }

        void parse_channel(Section s, ChannelConfig &ch)
        {
            s.read("alpha_los", ch.alpha_los);
            s.read("alpha_nlos", ch.alpha_nlos);
            s.read("k_los", ch.k_los);
            s.read("k_nlos", ch.k_nlos);
            s.read("nakagami_los", ch.nakagami_los);
            s.read("nakagami_nlos", ch.nakagami_nlos);
            s.read("altitude_km", ch.altitude_km);
            s.read_enum("shadowing", ch.shadowing, shadowing_convention_from_string);
            s.finish();
        }

        void parse_power(Section s, PowerModel &p)
        {
            s.read("transmit_w", p.transmit_w);
            s.read("caching_w", p.caching_w);
            s.read("static_w", p.static_w);
            s.read("zeta", p.zeta);
            s.finish();
        }

        void parse_quadrature(Section s, QuadratureConfig &q)
        {
            s.read("hermite_nodes", q.hermite_nodes);
            s.read("rel_tol", q.rel_tol);
            s.read("v_min", q.v_min);
            s.read("v_max", q.v_max);
            s.read("z_max_km", q.z_max);
            s.read("k_max_tail", q.k_max_tail);
            s.read("panels_per_unit", q.panels_per_unit);
            s.finish();
        }

        void parse_simulation(Section s, SimConfig &sim)
        {
            s.read("trials", sim.trials);
            s.read("seed", sim.seed);
            s.read("r_max_km", sim.r_max_km);
            s.read("sir_cap", sim.sir_cap);
            s.read_enum("cache_mode", sim.cache_mode, cache_mode_from_string);
            s.read("conditioned", sim.conditioned);
            s.read("far_field", sim.far_field);
            s.read("far_field_threshold", sim.far_field_threshold);
            s.read("threads", sim.threads);
            s.finish();
        }

        SweepSpec parse_sweep(const YAML::Node &node, std::size_t index)
        {
            const std::string path = "sweeps[" + std::to_string(index) + "]";
            Section s(node, path);
            if (!s.present())
                throw config_error(path + ": expected a mapping");
            SweepSpec sw;
            sw.id = "sweep" + std::to_string(index + 1);
            s.read("id", sw.id);
            s.read_enum("variable", sw.variable, sweep_variable_from_string);
            const YAML::Node grid = s.child("grid");
            if (!grid || !grid.IsSequence())
                throw config_error(s.key_path("grid") + ": expected a list of values");
            for (std::size_t i = 0; i < grid.size(); ++i)
            {
                try
                {
                    sw.grid.push_back(grid[i].as<double>());
                }
                catch (const YAML::Exception &)
                {
                    throw config_error(s.key_path("grid") + "[" + std::to_string(i) + "]: expected a number");
                }
            }
            parse_overrides(Section(s.child("scenario"), s.key_path("scenario")), sw.overrides);
            std::vector<std::string> names;
            s.read("policies", names);
            for (const auto &n : names)
            {
                try
                {
                    sw.policies.push_back(policy_kind_from_string(n));
                }
                catch (const std::exception &e)
                {
                    throw config_error(s.key_path("policies") + ": " + e.what());
                }
            }
            s.read("environments", sw.environments);
            s.read_enum("method", sw.method, method_from_string);
            s.read("trials", sw.trials);
            s.read("seed", sw.seed);
            s.finish();
            return sw;
        }

        bool is_plain_id(const std::string &s)
        {
            return !s.empty() && s.find_first_of(",\"\n\r") == std::string::npos;
        }

        template <class Fn>
        void wrap(const std::string &section, Fn &&fn)
        {
            try
            {
                fn();
            }
            catch (const config_error &e)
            {
                throw config_error(section + ": " + e.what());
            }
            catch (const std::exception &e)
            {
                throw config_error(section + ": " + e.what());
            }
        }

        void check_scenario_values(const std::string &path, double lambda, double x_cop, int library_size, double kappa,
                                   int cache_size)
        {
            if (!(lambda > 0.0) || !std::isfinite(lambda))
                throw config_error(path + ".lambda_per_km2: must be finite and > 0, got " + std::to_string(lambda));
            if (!(x_cop > 0.0) || !std::isfinite(x_cop))
                throw config_error(path + ".x_cop_km: must be finite and > 0, got " + std::to_string(x_cop));
            if (library_size < 1)
                throw config_error(path + ".library_size: must be >= 1, got " + std::to_string(library_size));
            if (!(kappa >= 0.0 && kappa <= 2.0))
                throw config_error(path + ".kappa: must lie in [0, 2], got " + std::to_string(kappa));
            if (cache_size < 1 || cache_size > library_size)
                throw config_error(path + ".cache_size: must lie in [1, library_size = " +
                                   std::to_string(library_size) + "], got " + std::to_string(cache_size));
        }

        ScenarioSpec apply(const ScenarioSpec &base, const ScenarioOverrides &o, ChannelConfig &channel)
        {
            ScenarioSpec s = base;
            if (o.lambda)
                s.lambda = *o.lambda;
            if (o.x_cop)
                s.x_cop = *o.x_cop;
            if (o.library_size)
                s.library_size = *o.library_size;
            if (o.kappa)
                s.kappa = *o.kappa;
            if (o.cache_size)
                s.cache_size = *o.cache_size;
            if (o.altitude)
                channel.altitude_km = *o.altitude;
            return s;
        }

        void apply(SweepVariable v, double value, ScenarioSpec &s, ChannelConfig &channel)
        {
            switch (v)
            {
            case SweepVariable::x_cop:
                s.x_cop = value;
                break;
            case SweepVariable::kappa:
                s.kappa = value;
                break;
            case SweepVariable::library_size:
                s.library_size = static_cast<int>(std::lround(value));
                break;
            case SweepVariable::altitude:
                channel.altitude_km = value;
                break;
            case SweepVariable::density:
                s.lambda = value;
                break;
            }
        }

        Environment resolve_environment(const RunConfig &cfg, const std::string &name)
        {
            if (name == cfg.environment.name)
                return cfg.environment;
            return Environment::preset(name);
        }

        std::string fmt(double x)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12g", x);
            return buf;
        }

        std::string key_number(double x)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g|", x);
            return buf;
        }

        void emit_environment(YAML::Emitter &out, const RunConfig &cfg)
        {
            out << YAML::Key << "environment" << YAML::Value;
            if (!cfg.custom_environment)
            {
                out << cfg.environment.name;
                return;
            }
            const Environment &e = cfg.environment;
            out << YAML::BeginMap;
            out << YAML::Key << "name" << YAML::Value << e.name;
            out << YAML::Key << "phi" << YAML::Value << e.phi;
            out << YAML::Key << "psi" << YAML::Value << e.psi;
            out << YAML::Key << "mu_los" << YAML::Value << e.mu_los;
            out << YAML::Key << "mu_nlos" << YAML::Value << e.mu_nlos;
            out << YAML::Key << "a_los" << YAML::Value << e.a_los;
            out << YAML::Key << "a_nlos" << YAML::Value << e.a_nlos;
            out << YAML::Key << "c_los" << YAML::Value << e.c_los;
            out << YAML::Key << "c_nlos" << YAML::Value << e.c_nlos;
            out << YAML::EndMap;
        }
    }

    std::string to_string(SweepVariable v)
    {
        switch (v)
        {
        case SweepVariable::x_cop:
            return "x_cop";
        case SweepVariable::kappa:
            return "kappa";
        case SweepVariable::library_size:
            return "library_size";
        case SweepVariable::altitude:
            return "altitude";
        case SweepVariable::density:
            return "density";
        }
        return "x_cop";
    }

    SweepVariable sweep_variable_from_string(std::string_view s)
    {
        for (auto v : {SweepVariable::x_cop, SweepVariable::kappa, SweepVariable::library_size,
                       SweepVariable::altitude, SweepVariable::density})
            if (s == to_string(v))
                return v;
        throw config_error("unknown sweep variable '" + std::string(s) +
                           "' (expected x_cop, kappa, library_size, altitude or density)");
    }

    std::string to_string(Method m)
    {
        switch (m)
        {
        case Method::analytic:
            return "analytic";
        case Method::monte_carlo:
            return "monte_carlo";
        case Method::both:
            return "both";
        }
        return "analytic";
    }

    Method method_from_string(std::string_view s)
    {
        for (auto m : {Method::analytic, Method::monte_carlo, Method::both})
            if (s == to_string(m))
                return m;
        throw config_error("unknown method '" + std::string(s) + "' (expected analytic, monte_carlo or both)");
    }

    void RunConfig::validate() const
    {
        const ScenarioSpec &s = scenario;
        if (!is_plain_id(s.id))
            throw config_error("scenario.id: must be nonempty without commas, quotes or newlines");
        check_scenario_values("scenario", s.lambda, s.x_cop, s.library_size, s.kappa, s.cache_size);
        if (s.subchannels < 1)
            throw config_error("scenario.subchannels: must be >= 1, got " + std::to_string(s.subchannels));
        if (!is_plain_id(environment.name))
            throw config_error("environment.name: must be nonempty without commas, quotes or newlines");
        wrap("environment", [&] { environment.validate(); });
        wrap("channel", [&] { channel.validate(); });
        wrap("power", [&] { power.validate(); });
        wrap("quadrature", [&] { quadrature.validate(); });
        wrap("simulation", [&] { simulation.validate(); });
        if (lru.requests < 1)
            throw config_error("lru.requests: must be >= 1");
        if (lru.warmup < 0)
            throw config_error("lru.warmup: must be >= 0");

        for (std::size_t i = 0; i < sweeps.size(); ++i)
        {
            const SweepSpec &sw = sweeps[i];
            const std::string path = "sweeps[" + std::to_string(i) + "]";
            if (!is_plain_id(sw.id))
                throw config_error(path + ".id: must be nonempty without commas, quotes or newlines");
            if (sw.grid.empty())
                throw config_error(path + ".grid: must not be empty");
            for (std::size_t k = 0; k < sw.grid.size(); ++k)
            {
                if (!std::isfinite(sw.grid[k]))
                    throw config_error(path + ".grid: values must be finite");
                if (k > 0 && !(sw.grid[k] > sw.grid[k - 1]))
                    throw config_error(path + ".grid: values must be strictly increasing");
                if (sw.variable == SweepVariable::library_size && sw.grid[k] != std::round(sw.grid[k]))
                    throw config_error(path + ".grid: library_size values must be integers");
            }
            for (const auto &e : sw.environments)
                if (e != environment.name &&
                    std::find(environment_presets.begin(), environment_presets.end(), e) == environment_presets.end())
                    throw config_error(path + ".environments: unknown environment '" + e + "'");
            if (sw.trials && *sw.trials < 1)
                throw config_error(path + ".trials: must be >= 1");
            if (sw.overrides.altitude && !(*sw.overrides.altitude > 0.0))
                throw config_error(path + ".scenario.altitude_km: must be > 0");
            for (double value : sw.grid)
            {
                ChannelConfig ch = channel;
                ScenarioSpec point = apply(scenario, sw.overrides, ch);
                apply(sw.variable, value, point, ch);
                check_scenario_values(path, point.lambda, point.x_cop, point.library_size, point.kappa,
                                      point.cache_size);
                if (!(ch.altitude_km > 0.0))
                    throw config_error(path + ".grid: altitude must be > 0");
            }
        }
    }

    RunConfig parse_config(std::string_view yaml_text)
    {
        YAML::Node root;
        try
        {
            root = YAML::Load(std::string(yaml_text));
        }
        catch (const YAML::Exception &e)
        {
            throw config_error(std::string("config is not valid YAML: ") + e.what());
        }
        RunConfig cfg;
        Section top(root, "");
        parse_scenario(Section(top.child("scenario"), "scenario"), cfg.scenario);
        parse_environment(top.child("environment"), cfg);
        parse_channel(Section(top.child("channel"), "channel"), cfg.channel);
        parse_power(Section(top.child("power"), "power"), cfg.power);
        parse_quadrature(Section(top.child("quadrature"), "quadrature"), cfg.quadrature);
        parse_simulation(Section(top.child("simulation"), "simulation"), cfg.simulation);
        {
            Section lru(top.child("lru"), "lru");
            lru.read("requests", cfg.lru.requests);
            lru.read("warmup", cfg.lru.warmup);
            lru.finish();
        }
        {
            Section out(top.child("output"), "output");
            out.read_enum("ee_form", cfg.ee_form, ee_form_from_string);
            out.finish();
        }
        const YAML::Node sweeps = top.child("sweeps");
        if (sweeps && !sweeps.IsNull())
        {
            if (!sweeps.IsSequence())
                throw config_error("sweeps: expected a list");
            for (std::size_t i = 0; i < sweeps.size(); ++i)
                cfg.sweeps.push_back(parse_sweep(sweeps[i], i));
        }
        top.finish();
        cfg.validate();
        return cfg;
    }

    RunConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw config_error("cannot open config file '" + path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        return parse_config(text.str());
    }

    std::string dump_config(const RunConfig &cfg)
    {
        YAML::Emitter out;
        out.SetDoublePrecision(17);
        out << YAML::BeginMap;

        const ScenarioSpec &s = cfg.scenario;
        out << YAML::Key << "scenario" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "id" << YAML::Value << s.id;
        out << YAML::Key << "lambda_per_km2" << YAML::Value << s.lambda;
        out << YAML::Key << "x_cop_km" << YAML::Value << s.x_cop;
        out << YAML::Key << "subchannels" << YAML::Value << s.subchannels;
        out << YAML::Key << "library_size" << YAML::Value << s.library_size;
        out << YAML::Key << "kappa" << YAML::Value << s.kappa;
        out << YAML::Key << "cache_size" << YAML::Value << s.cache_size;
        out << YAML::Key << "policy" << YAML::Value << to_string(s.policy);
        out << YAML::Key << "cooperation" << YAML::Value << to_string(s.cooperation);
        out << YAML::EndMap;

        emit_environment(out, cfg);

        const ChannelConfig &ch = cfg.channel;
        out << YAML::Key << "channel" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "alpha_los" << YAML::Value << ch.alpha_los;
        out << YAML::Key << "alpha_nlos" << YAML::Value << ch.alpha_nlos;
        out << YAML::Key << "k_los" << YAML::Value << ch.k_los;
        out << YAML::Key << "k_nlos" << YAML::Value << ch.k_nlos;
        out << YAML::Key << "nakagami_los" << YAML::Value << ch.nakagami_los;
        out << YAML::Key << "nakagami_nlos" << YAML::Value << ch.nakagami_nlos;
        out << YAML::Key << "altitude_km" << YAML::Value << ch.altitude_km;
        out << YAML::Key << "shadowing" << YAML::Value << to_string(ch.shadowing);
        out << YAML::EndMap;

        const PowerModel &p = cfg.power;
        out << YAML::Key << "power" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "transmit_w" << YAML::Value << p.transmit_w;
        out << YAML::Key << "caching_w" << YAML::Value << p.caching_w;
        out << YAML::Key << "static_w" << YAML::Value << p.static_w;
        out << YAML::Key << "zeta" << YAML::Value << p.zeta;
        out << YAML::EndMap;

        const QuadratureConfig &q = cfg.quadrature;
        out << YAML::Key << "quadrature" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "hermite_nodes" << YAML::Value << q.hermite_nodes;
        out << YAML::Key << "rel_tol" << YAML::Value << q.rel_tol;
        out << YAML::Key << "v_min" << YAML::Value << q.v_min;
        out << YAML::Key << "v_max" << YAML::Value << q.v_max;
        out << YAML::Key << "z_max_km" << YAML::Value << q.z_max;
        out << YAML::Key << "k_max_tail" << YAML::Value << q.k_max_tail;
        out << YAML::Key << "panels_per_unit" << YAML::Value << q.panels_per_unit;
        out << YAML::EndMap;

        const SimConfig &sim = cfg.simulation;
        out << YAML::Key << "simulation" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "trials" << YAML::Value << sim.trials;
        out << YAML::Key << "seed" << YAML::Value << sim.seed;
        out << YAML::Key << "r_max_km" << YAML::Value << sim.r_max_km;
        out << YAML::Key << "sir_cap" << YAML::Value << sim.sir_cap;
        out << YAML::Key << "cache_mode" << YAML::Value << to_string(sim.cache_mode);
        out << YAML::Key << "conditioned" << YAML::Value << sim.conditioned;
        out << YAML::Key << "far_field" << YAML::Value << sim.far_field;
        out << YAML::Key << "far_field_threshold" << YAML::Value << sim.far_field_threshold;
        out << YAML::Key << "threads" << YAML::Value << sim.threads;
        out << YAML::EndMap;

        out << YAML::Key << "lru" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "requests" << YAML::Value << cfg.lru.requests;
        out << YAML::Key << "warmup" << YAML::Value << cfg.lru.warmup;
        out << YAML::EndMap;

        out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "ee_form" << YAML::Value << to_string(cfg.ee_form);
        out << YAML::EndMap;

        if (!cfg.sweeps.empty())
        {
            out << YAML::Key << "sweeps" << YAML::Value << YAML::BeginSeq;
            for (const auto &sw : cfg.sweeps)
            {
                out << YAML::BeginMap;
                out << YAML::Key << "id" << YAML::Value << sw.id;
                out << YAML::Key << "variable" << YAML::Value << to_string(sw.variable);
                out << YAML::Key << "grid" << YAML::Value << YAML::Flow << sw.grid;
                const ScenarioOverrides &o = sw.overrides;
                if (o != ScenarioOverrides{})
                {
                    out << YAML::Key << "scenario" << YAML::Value << YAML::BeginMap;
                    if (o.lambda)
                        out << YAML::Key << "lambda_per_km2" << YAML::Value << *o.lambda;
                    if (o.x_cop)
                        out << YAML::Key << "x_cop_km" << YAML::Value << *o.x_cop;
                    if (o.library_size)
                        out << YAML::Key << "library_size" << YAML::Value << *o.library_size;
                    if (o.kappa)
                        out << YAML::Key << "kappa" << YAML::Value << *o.kappa;
                    if (o.cache_size)
                        out << YAML::Key << "cache_size" << YAML::Value << *o.cache_size;
                    if (o.altitude)
                        out << YAML::Key << "altitude_km" << YAML::Value << *o.altitude;
                    out << YAML::EndMap;
                }
                if (!sw.policies.empty())
                {
                    std::vector<std::string> names;
                    for (auto k : sw.policies)
                        names.push_back(to_string(k));
                    out << YAML::Key << "policies" << YAML::Value << YAML::Flow << names;
                }
                if (!sw.environments.empty())
                    out << YAML::Key << "environments" << YAML::Value << YAML::Flow << sw.environments;
                out << YAML::Key << "method" << YAML::Value << to_string(sw.method);
                if (sw.trials)
                    out << YAML::Key << "trials" << YAML::Value << *sw.trials;
                if (sw.seed)
                    out << YAML::Key << "seed" << YAML::Value << *sw.seed;
                out << YAML::EndMap;
            }
            out << YAML::EndSeq;
        }
        out << YAML::EndMap;
        return std::string(out.c_str()) + "\n";
    }

    std::vector<std::string> preset_names()
    {
        std::vector<std::string> names;
        for (const auto &[name, text] : detail::preset_files)
            names.emplace_back(name);
        return names;
    }

    std::string preset_text(std::string_view name)
    {
        for (const auto &[n, text] : detail::preset_files)
            if (n == name)
                return std::string(text);
        std::string known;
        for (const auto &n : preset_names())
            known += (known.empty() ? "" : ", ") + n;
        throw config_error("unknown preset '" + std::string(name) + "' (expected one of " + known + ")");
    }

    RunConfig preset_config(std::string_view name) { return parse_config(preset_text(name)); }

    PlacementPolicy build_policy(PolicyKind kind, const ContentLibrary &library, int cache_size, double lambda,
                                 double x_cop_km, const LruSettings &lru, std::uint64_t seed)
    {
        const auto &a = library.popularity;
        switch (kind)
        {
        case PolicyKind::rcp:
            return solve_rcp(a, cache_size, std::numbers::pi * lambda * x_cop_km * x_cop_km);
        case PolicyKind::mpc:
            return mpc_policy(a, cache_size);
        case PolicyKind::lru_che:
            return lru_che(a, cache_size);
        case PolicyKind::lru_empirical:
        {
            Rng rng(seed);
            return PlacementPolicy{PolicyKind::lru_empirical, cache_size,
                                   lru_simulate(a, cache_size, lru.requests, lru.warmup, rng)};
        }
        }
        throw internal_error("build_policy: unhandled policy kind");
    }

    ScenarioConfig make_scenario(const RunConfig &cfg, const ScenarioSpec &spec, const Environment &env,
                                 std::uint64_t seed)
    {
        ScenarioConfig sc;
        sc.lambda = spec.lambda;
        sc.x_cop = spec.x_cop;
        sc.subchannels = spec.subchannels;
        sc.library = ContentLibrary::zipf(spec.library_size, spec.kappa);
        sc.policy = build_policy(spec.policy, sc.library, spec.cache_size, spec.lambda, spec.x_cop, cfg.lru, seed);
        sc.env = env;
        sc.channel = cfg.channel;
        sc.power = cfg.power;
        sc.quadrature = cfg.quadrature;
        sc.cooperation = spec.cooperation;
        sc.validate();
        return sc;
    }

    bool ResultTable::any_failed() const
    {
        return std::any_of(rows.begin(), rows.end(), [](const ResultRow &r) { return r.method == "failed"; });
    }

    const CapacityEvaluator &EvaluatorCache::get(const ScenarioConfig &cfg)
    {
        const Environment &e = cfg.env;
        const ChannelConfig &c = cfg.channel;
        const QuadratureConfig &q = cfg.quadrature;
        std::string key = e.name + "|";
        for (double x : {e.phi, e.psi, e.mu_los, e.mu_nlos, e.a_los, e.a_nlos, e.c_los, e.c_nlos, c.alpha_los,
                         c.alpha_nlos, c.k_los, c.k_nlos, c.nakagami_los, c.nakagami_nlos, c.altitude_km,
                         static_cast<double>(c.shadowing), cfg.x_cop, static_cast<double>(q.hermite_nodes), q.rel_tol,
                         q.v_min, q.v_max, q.z_max, q.k_max_tail, static_cast<double>(q.panels_per_unit)})
            key += key_number(x);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, std::make_unique<CapacityEvaluator>(cfg)).first;
        return *it->second;
    }

    ResultTable run_sweep(const RunConfig &cfg, const SweepSpec &sweep, EvaluatorCache &cache)
    {
        ResultTable table;
        const std::uint64_t master = sweep.seed.value_or(cfg.simulation.seed);
        const std::vector<PolicyKind> policies =
            sweep.policies.empty() ? std::vector<PolicyKind>{cfg.scenario.policy} : sweep.policies;
        const std::vector<std::string> envs =
            sweep.environments.empty() ? std::vector<std::string>{cfg.environment.name} : sweep.environments;
        std::vector<Method> methods;
        if (sweep.method == Method::both)
            methods = {Method::analytic, Method::monte_carlo};
        else
            methods = {sweep.method};

        std::uint64_t point = 0;
        for (double value : sweep.grid)
        {
            ChannelConfig channel = cfg.channel;
            ScenarioSpec spec = apply(cfg.scenario, sweep.overrides, channel);
            apply(sweep.variable, value, spec, channel);
            RunConfig local = cfg;
            local.channel = channel;

            for (PolicyKind policy : policies)
            {
                spec.policy = policy;
                for (const auto &env_name : envs)
                {
                    const std::uint64_t seed = Rng::substream(master, row_stream, point++)();
                    for (Method method : methods)
                    {
                        ResultRow row;
                        row.scenario_id = sweep.id;
                        row.env = env_name;
                        row.policy = to_string(policy);
                        row.method = to_string(method);
                        row.lambda = spec.lambda;
                        row.altitude = channel.altitude_km;
                        row.x_cop = spec.x_cop;
                        row.subchannels = spec.subchannels;
                        row.library_size = spec.library_size;
                        row.cache_size = spec.cache_size;
                        row.kappa = spec.kappa;
                        row.seed = seed;
                        try
                        {
                            const ScenarioConfig sc =
                                make_scenario(local, spec, resolve_environment(cfg, env_name), seed);
                            if (method == Method::analytic)
                            {
                                const CapacityReport bits = system_capacity(sc, cache.get(sc)).in_bits();
                                row.capacity_bits = bits.system_rate;
                                row.ee_bits_per_joule = cfg.ee_form == EeForm::approximate
                                                            ? energy_efficiency(sc, bits)
                                                            : energy_efficiency_exact(sc, bits);
                            }
                            else
                            {
                                SimConfig sim = cfg.simulation;
                                sim.seed = seed;
                                sim.trials = sweep.trials.value_or(sim.trials);
                                const auto per = estimate_content_capacities(sc, sim);
                                std::vector<double> bits;
                                double mean = 0.0, var = 0.0;
                                for (std::size_t c = 0; c < per.size(); ++c)
                                {
                                    const double a = sc.library.popularity[c];
                                    bits.push_back(per[c].mean / std::numbers::ln2);
                                    mean += a * bits.back();
                                    const double se = per[c].std_error / std::numbers::ln2;
                                    var += a * a * se * se;
                                }
                                row.capacity_bits = mean;
                                row.std_error_bits = std::sqrt(var);
                                row.n_trials = sim.trials;
                                row.ee_bits_per_joule = estimate_ee(sc, bits, sim, cfg.ee_form).mean;
                            }
                        }
                        catch (const std::exception &e)
                        {
                            row.method = "failed";
                            row.capacity_bits.reset();
                            row.ee_bits_per_joule.reset();
                            row.std_error_bits.reset();
                            row.n_trials.reset();
                            row.error = e.what();
                        }
                        table.rows.push_back(std::move(row));
                    }
                }
            }
        }
        return table;
    }

    ResultTable run_sweeps(const RunConfig &cfg)
    {
        EvaluatorCache cache;
        ResultTable all;
        for (const auto &sw : cfg.sweeps)
        {
            ResultTable t = run_sweep(cfg, sw, cache);
            std::move(t.rows.begin(), t.rows.end(), std::back_inserter(all.rows));
        }
        return all;
    }

    ResultTable run_single(const RunConfig &cfg, Method method)
    {
        SweepSpec sw;
        sw.id = cfg.scenario.id;
        sw.variable = SweepVariable::x_cop;
        sw.grid = {cfg.scenario.x_cop};
        sw.method = method;
        EvaluatorCache cache;
        return run_sweep(cfg, sw, cache);
    }

    void emit_csv(const ResultTable &table, std::ostream &os)
    {
        os << csv_header << '\n';
        for (const auto &r : table.rows)
        {
            os << r.scenario_id << ',' << r.env << ',' << r.policy << ',' << r.method << ',' << fmt(r.lambda) << ','
               << fmt(r.altitude) << ',' << fmt(r.x_cop) << ',' << r.subchannels << ',' << r.library_size << ','
               << r.cache_size << ',' << fmt(r.kappa) << ',' << (r.capacity_bits ? fmt(*r.capacity_bits) : "") << ','
               << (r.ee_bits_per_joule ? fmt(*r.ee_bits_per_joule) : "") << ','
               << (r.std_error_bits ? fmt(*r.std_error_bits) : "") << ','
               << (r.n_trials ? std::to_string(*r.n_trials) : "") << ',' << r.seed << '\n';
        }
    }

    void emit_csv(const ResultTable &table, const std::string &path)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        emit_csv(table, out);
        out.flush();
        if (!out)
            throw std::runtime_error("failed writing '" + path + "'");
    }
}
