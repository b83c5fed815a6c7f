/**
 * Copyright 2026 The hashlink Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hashlink {

/// Automatically selected hashtag words.
using HashtagSet = std::set<std::string>;

enum class Platform : std::uint8_t { A, B };

inline char platform_code(Platform p) { return p == Platform::A ? 'A' : 'B'; }

Platform parse_platform(std::string_view s);

/// Bad input data: unreadable files, malformed artifacts, infeasible inputs.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// NaN, overflow or other arithmetic breakdown inside an iterative solver.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A prerequisite artifact is missing; names the producing subcommand.
class MissingArtifactError : public DataError {
public:
    MissingArtifactError(const std::string& path, const std::string& producer)
        : DataError("missing artifact '" + path + "'; run `" + producer + "` first"),
          producer_(producer) {}
    const std::string& producer() const { return producer_; }

private:
    std::string producer_;
};

using Rng = std::mt19937_64;

// Portable draws: the std distributions are implementation-defined, and
// every artifact must be byte-identical across toolchains for a given seed.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    return n == 0 ? 0 : static_cast<std::size_t>(rng() % n);
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

/// Deterministic per-stage seed derived from the global seed.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view stage);

}  // namespace hashlink
