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

#ifndef REVBOUND_RNG_HPP_
#define REVBOUND_RNG_HPP_

#include <cstdint>
#include <random>

namespace revbound {

// splitmix64: cheap, well-mixed seed expander.  Used to derive independent
// per-stream seeds from (root_seed, stream_index) so that Monte Carlo results
// are reproducible regardless of thread count or evaluation order.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Combines a root seed with a stream index into a fresh generator seed.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  return splitmix64(root ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Uniform double in [0, 1) with exactly 53 random bits.  We avoid
// std::uniform_real_distribution because its output sequence is
// implementation-defined; this mapping is pinned by the standard-specified
// mt19937_64 stream and therefore bit-reproducible everywhere.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace revbound

#endif  // REVBOUND_RNG_HPP_
