# SPDX-License-Identifier: Apache-2.0
#
# uavcache: cache-enabled cooperative UAV network analysis
# Copyright (C) 2026 The uavcache authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""Cache-enabled cooperative UAV network analysis."""

from ._uavcache import (
    ChannelConfig,
    Config,
    ConfigError,
    Environment,
    LinkMode,
    csv_header,
    hit_probability,
    laplace_kernel,
    los_probability,
    lru_che,
    mpc_policy,
    path_loss,
    shadowing_sigma,
    solve_rcp,
    zipf_popularity,
)

__all__ = [
    "ChannelConfig",
    "Config",
    "ConfigError",
    "Environment",
    "LinkMode",
    "csv_header",
    "hit_probability",
    "laplace_kernel",
    "los_probability",
    "lru_che",
    "mpc_policy",
    "path_loss",
    "shadowing_sigma",
    "solve_rcp",
    "zipf_popularity",
]
