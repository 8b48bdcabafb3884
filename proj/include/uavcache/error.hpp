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

#ifndef UAVCACHE_ERROR_HPP
#define UAVCACHE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace uavcache
{
    // Bad argument to a numerical routine (negative distance, kappa out of range, ...).
    class invalid_argument : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Configuration that cannot be honoured (unknown key, node count out of range, ...).
    class config_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // An integral or series did not reach the requested tolerance.
    class convergence_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Broken internal invariant; never raised for valid inputs.
    class internal_error : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };

    namespace detail
    {
        [[noreturn]] inline void fail_argument(const std::string &what) { throw invalid_argument(what); }

        inline void require(bool ok, const std::string &what)
        {
            if (!ok)
                throw invalid_argument(what);
        }
    }
}

#endif
