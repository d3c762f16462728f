//
// Copyright 2026 The Blowfish Privacy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef BLOWFISH_NOISE_H_
#define BLOWFISH_NOISE_H_

#include <cstdint>
#include <initializer_list>

#include "absl/status/statusor.h"

namespace blowfish {

// SplitMix64 finalizer.
uint64_t Mix64(uint64_t x);

// Order-sensitive hash of a short tuple of integers; used to name streams.
uint64_t StreamKey(std::initializer_list<uint64_t> parts);

// Counter-based generator: draw c of stream (seed, key) is a pure function
// of (seed, key, c), so draws do not depend on evaluation order.
class NoiseStream {
 public:
  NoiseStream(uint64_t seed, uint64_t key);

  uint64_t NextBits();
  // Uniform on the open interval (0, 1).
  double NextUniform();

 private:
  uint64_t base_;
  uint64_t counter_ = 0;
};

// Zero-mean Laplace variate by inverse CDF from one uniform draw.
absl::StatusOr<double> SampleLaplace(double scale, NoiseStream& stream);

// Source of per-node Laplace noise. Mechanisms validate scales before
// calling Laplace().
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  virtual double Laplace(double scale, uint64_t key) const = 0;
};

class SeededNoise : public NoiseSource {
 public:
  explicit SeededNoise(uint64_t seed) : seed_(seed) {}
  double Laplace(double scale, uint64_t key) const override;
  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
};

// Test hook: every draw is exactly zero.
class ZeroNoise : public NoiseSource {
 public:
  double Laplace(double, uint64_t) const override { return 0; }
};

// Stream names shared by the mechanisms.
enum class StreamTag : uint64_t {
  kLaplace = 1,
  kSNode = 2,
  kHNode = 3,
  kKmeansSize = 4,
  kKmeansSum = 5,
  kKmeansInit = 6,
};

inline uint64_t TaggedKey(StreamTag tag, uint64_t a, uint64_t b = 0,
                          uint64_t c = 0) {
  return StreamKey({static_cast<uint64_t>(tag), a, b, c});
}

}  // namespace blowfish

#endif  // BLOWFISH_NOISE_H_
