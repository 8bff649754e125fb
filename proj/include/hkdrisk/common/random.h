/*
 * Copyright 2026 The hkdrisk Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HKDRISK_COMMON_RANDOM_H_
#define HKDRISK_COMMON_RANDOM_H_

#include <cstdint>
#include <random>

namespace hkdrisk {

using Rng = std::mt19937_64;

// Derives an independent stream seed from a master seed and a stream index
// (splitmix64 finalizer). Used for per-tree, per-fold and per-chain streams so
// results do not depend on scheduling order.
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t stream);

// Uniform on [0, 1).
double Uniform01(Rng& rng);
double StandardNormal(Rng& rng);
// Uniform integer in [0, n).
std::size_t UniformIndex(Rng& rng, std::size_t n);

}  // namespace hkdrisk

#endif  // HKDRISK_COMMON_RANDOM_H_
