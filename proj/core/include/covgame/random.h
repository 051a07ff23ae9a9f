// Copyright 2026 The Authors.
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

#ifndef COVGAME_RANDOM_H_
#define COVGAME_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace covgame {

using Rng = std::mt19937_64;

// Stream roles. A substream is addressed by (trial, entity, role, slot).
enum class StreamRole : std::uint32_t {
  kWorld = 1,
  kAction = 2,
  kNeighborSlot = 3,
  kAttacker = 4,
  kChecker = 5,
};

// Entity index used for the attacker's streams; agents use their own index.
inline constexpr std::uint64_t kAttackerEntity = 0xFFFF'FFFFull;

// Derives a 64-bit seed from a master seed and a path of tags via
// std::seed_seq, which has a fully specified mixing algorithm.
std::uint64_t DeriveSeed(std::uint64_t master,
                         std::initializer_list<std::uint64_t> path);

inline Rng MakeStream(std::uint64_t master, std::uint64_t trial,
                      std::uint64_t entity, StreamRole role,
                      std::uint64_t slot = 0) {
  return Rng(DeriveSeed(master, {trial, entity,
                                 static_cast<std::uint64_t>(role), slot}));
}

}  // namespace covgame

#endif  // COVGAME_RANDOM_H_
