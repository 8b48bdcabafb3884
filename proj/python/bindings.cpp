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
#include "uavcache/caching.hpp"
#include "uavcache/channel.hpp"
#include "uavcache/error.hpp"
#include "uavcache/harness.hpp"
#include "uavcache/simulator.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace uavcache;

namespace
{
    py::dict row_dict(const ResultRow &r)
    {
        py::dict d;
        d["scenario_id"] = r.scenario_id;
        d["env"] = r.env;
        d["policy"] = r.policy;
        d["method"] = r.method;
        d["lambda_per_km2"] = r.lambda;
        d["H_km"] = r.altitude;
        d["X_cop_km"] = r.x_cop;
        d["B"] = r.subchannels;
        d["F"] = r.library_size;
        d["S"] = r.cache_size;
        d["kappa"] = r.kappa;
        d["capacity_bits"] = r.capacity_bits;
        d["ee_bits_per_joule"] = r.ee_bits_per_joule;
        d["stderr"] = r.std_error_bits;
        d["n_trials"] = r.n_trials;
        d["seed"] = r.seed;
        d["error"] = r.error;
        return d;
    }

    py::list rows(const ResultTable &t)
    {
        py::list out;
        for (const auto &r : t.rows)
            out.append(row_dict(r));
        return out;
    }

    std::string csv_text(const ResultTable &t)
    {
        std::ostringstream os;
        emit_csv(t, os);
        return os.str();
    }

    ResultTable single(const RunConfig &cfg, const std::string &method)
    {
        const Method m = method_from_string(method);
        py::gil_scoped_release release;
        return run_single(cfg, m);
    }

    ResultTable sweeps(const RunConfig &cfg)
    {
        py::gil_scoped_release release;
        return run_sweeps(cfg);
    }

    ScenarioConfig scenario_of(const RunConfig &cfg)
    {
        return make_scenario(cfg, cfg.scenario, cfg.environment, cfg.simulation.seed);
    }
}

PYBIND11_MODULE(_uavcache, m)
{
    m.doc() = "Cache-enabled cooperative UAV network analysis";

    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);

    py::enum_<LinkMode>(m, "LinkMode").value("los", LinkMode::los).value("nlos", LinkMode::nlos);

    py::class_<Environment>(m, "Environment")
        .def_static("preset", [](const std::string &name) { return Environment::preset(name); })
        .def_readwrite("name", &Environment::name)
        .def_readwrite("phi", &Environment::phi)
        .def_readwrite("psi", &Environment::psi)
        .def_readwrite("mu_los", &Environment::mu_los)
        .def_readwrite("mu_nlos", &Environment::mu_nlos)
        .def_readwrite("a_los", &Environment::a_los)
        .def_readwrite("a_nlos", &Environment::a_nlos)
        .def_readwrite("c_los", &Environment::c_los)
        .def_readwrite("c_nlos", &Environment::c_nlos);

    py::class_<ChannelConfig>(m, "ChannelConfig")
        .def(py::init<>())
        .def_readwrite("alpha_los", &ChannelConfig::alpha_los)
        .def_readwrite("alpha_nlos", &ChannelConfig::alpha_nlos)
        .def_readwrite("k_los", &ChannelConfig::k_los)
        .def_readwrite("k_nlos", &ChannelConfig::k_nlos)
        .def_readwrite("nakagami_los", &ChannelConfig::nakagami_los)
        .def_readwrite("nakagami_nlos", &ChannelConfig::nakagami_nlos)
        .def_readwrite("altitude_km", &ChannelConfig::altitude_km);

    m.def("los_probability", &los_probability, py::arg("r_km"), py::arg("h_km"), py::arg("env"));
    m.def("path_loss", &path_loss, py::arg("r_km"), py::arg("h_km"), py::arg("mode"), py::arg("channel"));
    m.def("shadowing_sigma", &shadowing_sigma, py::arg("r_km"), py::arg("h_km"), py::arg("mode"), py::arg("env"));
    m.def(
        "laplace_kernel",
        [](double z, double v, const Environment &env, const ChannelConfig &ch, int nodes) {
            return laplace_kernel(z, v, env, ch, nodes);
        },
        py::arg("z_km"), py::arg("v"), py::arg("env"), py::arg("channel"),
        py::arg("hermite_nodes") = default_hermite_nodes);

    m.def("zipf_popularity", &zipf_popularity, py::arg("library_size"), py::arg("kappa"));
    m.def("hit_probability", &hit_probability, py::arg("p"), py::arg("lambda_per_km2"), py::arg("x_cop_km"));
    m.def(
        "solve_rcp",
        [](const std::vector<double> &a, int s, double beta) { return solve_rcp(a, s, beta).probability; },
        py::arg("popularity"), py::arg("cache_size"), py::arg("beta"));
    m.def(
        "mpc_policy", [](const std::vector<double> &a, int s) { return mpc_policy(a, s).probability; },
        py::arg("popularity"), py::arg("cache_size"));
    m.def(
        "lru_che", [](const std::vector<double> &a, int s) { return lru_che(a, s).probability; },
        py::arg("popularity"), py::arg("cache_size"));

    py::class_<RunConfig>(m, "Config")
        .def(py::init<>())
        .def_static("from_yaml", &parse_config, py::arg("text"))
        .def_static("load", &load_config, py::arg("path"))
        .def_static("preset", [](const std::string &name) { return preset_config(name); }, py::arg("name"))
        .def_static("preset_names", &preset_names)
        .def("to_yaml", &dump_config)
        .def("validate", &RunConfig::validate)
        .def_property_readonly("environment", [](const RunConfig &c) { return c.environment.name; })
        .def_property_readonly("sweep_ids",
                               [](const RunConfig &c) {
                                   std::vector<std::string> ids;
                                   for (const auto &s : c.sweeps)
                                       ids.push_back(s.id);
                                   return ids;
                               })
        .def(
            "run", [](const RunConfig &c, const std::string &method) { return rows(single(c, method)); },
            py::arg("method") = "analytic", "The configured scenario as a list of result rows.")
        .def(
            "run_csv", [](const RunConfig &c, const std::string &method) { return csv_text(single(c, method)); },
            py::arg("method") = "analytic")
        .def("sweep", [](const RunConfig &c) { return rows(sweeps(c)); }, "All configured sweeps as result rows.")
        .def("sweep_csv", [](const RunConfig &c) { return csv_text(sweeps(c)); })
        .def(
            "content_capacities",
            [](const RunConfig &c) {
                const auto sc = scenario_of(c);
                py::gil_scoped_release release;
                return system_capacity(sc).in_bits().rate;
            },
            "Per-content analytic rates in bits per channel use.")
        .def(
            "placement", [](const RunConfig &c) { return scenario_of(c).policy.probability; },
            "Caching probabilities of the configured policy.");

    m.attr("csv_header") = std::string(csv_header);
}
