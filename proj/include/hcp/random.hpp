// Copyright 2026 The hcplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace hcp {

// Deterministic random stream handed to every sampling routine.
using Stream = std::mt19937_64;

// SplitMix64 finalizer (Steele, Lea & Flood). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of the substream for (seed, replication, lane). A lane is a
// researcher index in population runs and a publication index in corpus
// generation.
//
//   s = mix64(seed)
//   s = mix64(s ^ (replication * 0xd1b54a32d192ed03))
//   s = mix64(s ^ (lane * 0x8cb92ba72f3d8dd7 + 0x632be59bd9b4e019))
//
// Every (replication, lane) cell gets its own stream, so results depend only
// on the seed and the cell coordinates, never on which worker ran the cell.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t replication,
                                       std::uint64_t lane) {
  std::uint64_t s = mix64(seed);
  s = mix64(s ^ (replication * 0xd1b54a32d192ed03ULL));
  s = mix64(s ^ (lane * 0x8cb92ba72f3d8dd7ULL + 0x632be59bd9b4e019ULL));
  return s;
}

inline Stream substream(std::uint64_t seed, std::uint64_t replication, std::uint64_t lane) {
  return Stream(substream_seed(seed, replication, lane));
}

}  // namespace hcp
