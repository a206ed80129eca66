// Copyright 2026 The beew Authors
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

#ifndef BEEW_RNG_HPP_
#define BEEW_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace beew {

// Seedable random stream with a pinned uniform mapping.
//
// The engine is std::mt19937_64, whose output sequence is fully specified
// by the C++ standard, and uniforms are derived from the top 53 bits as
// ((word >> 11) + 0.5) * 2^-53, which lies strictly inside (0, 1).
// Together these make every sampler in this library bit-reproducible
// across platforms for a given (seed, rng_version).
class Rng {
 public:
  static constexpr std::string_view kVersion = "mt19937_64/u53-v1";

  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_word() { return gen_(); }

  // Uniform draw in the open interval (0, 1).
  double uniform01() {
    const std::uint64_t top = gen_() >> 11;
    return (static_cast<double>(top) + 0.5) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace beew

#endif  // BEEW_RNG_HPP_
