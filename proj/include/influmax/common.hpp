// Copyright 2026 The Influmax Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INFLUMAX_COMMON_HPP_
#define INFLUMAX_COMMON_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace influmax {

using NodeId = std::uint32_t;

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kValidation,
  kOutOfRange,
  kTooLarge,
  kIo,
  kUnsupported,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// All randomness flows through explicitly passed generators.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits of one draw. Unlike
// std::uniform_real_distribution this is bit-identical across standard
// libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Independent stream for (master seed, phase, chunk). Every parallel unit of
// work derives its generator this way, so results do not depend on how work
// is spread over threads.
inline Rng derive_stream(std::uint64_t master_seed, std::uint64_t phase,
                         std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(phase),
                    static_cast<std::uint32_t>(phase >> 32),
                    static_cast<std::uint32_t>(chunk),
                    static_cast<std::uint32_t>(chunk >> 32)};
  return Rng(seq);
}

}  // namespace influmax

#endif  // INFLUMAX_COMMON_HPP_
