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

#ifndef UAVCACHE_RNG_HPP
#define UAVCACHE_RNG_HPP

#include <cstdint>
#include <limits>

namespace uavcache
{
    inline constexpr std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// xoshiro256++ engine. Satisfies UniformRandomBitGenerator.
    ///
    /// Streams are addressed by (master seed, stream id, index): every Monte Carlo
    /// trial owns the stream derived from its own counter, so results do not depend
    /// on the order in which trials are executed.
    class Rng
    {
    public:
        using result_type = std::uint64_t;

        explicit Rng(std::uint64_t seed = 0) { reseed(seed); }

        static Rng substream(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0)
        {
            std::uint64_t h = splitmix64(master);
            h = splitmix64(h ^ (stream * 0xd1342543de82ef95ULL));
            h = splitmix64(h ^ (index * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
            return Rng(h);
        }

        void reseed(std::uint64_t seed)
        {
            std::uint64_t x = seed;
            for (auto &w : s_)
            {
                x += 0x9e3779b97f4a7c15ULL;
                w = splitmix64(x);
            }
        }

        static constexpr result_type min() { return 0; }
        static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

        result_type operator()()
        {
            const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
            const std::uint64_t t = s_[1] << 17;
            s_[2] ^= s_[0];
            s_[3] ^= s_[1];
            s_[1] ^= s_[2];
            s_[0] ^= s_[3];
            s_[2] ^= t;
            s_[3] = rotl(s_[3], 45);
            return result;
        }

        // Uniform on the open interval (0, 1), 53-bit resolution.
        double uniform()
        {
            return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
        }

    private:
        static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

        std::uint64_t s_[4]{};
    };
}

#endif
