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

#include "blowfish/noise.h"

#include <cmath>

#include "absl/status/status.h"

namespace blowfish {

namespace {

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

uint64_t Mix64(uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t StreamKey(std::initializer_list<uint64_t> parts) {
  uint64_t h = 0x6a09e667f3bcc908ULL;
  for (uint64_t part : parts) h = Mix64(h ^ Mix64(part));
  return h;
}

NoiseStream::NoiseStream(uint64_t seed, uint64_t key)
    : base_(Mix64(Mix64(seed) ^ key)) {}

uint64_t NoiseStream::NextBits() {
  return Mix64(base_ + kGolden * ++counter_);
}

double NoiseStream::NextUniform() {
  // 53 random bits, shifted by half an ulp to stay off 0 and 1.
  return (static_cast<double>(NextBits() >> 11) + 0.5) * 0x1.0p-53;
}

absl::StatusOr<double> SampleLaplace(double scale, NoiseStream& stream) {
  if (!(scale >= 0) || std::isinf(scale)) {
    return absl::InvalidArgumentError("Laplace scale must be finite and >= 0");
  }
  const double u = stream.NextUniform() - 0.5;
  if (scale == 0) return 0.0;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0 ? -magnitude : magnitude;
}

double SeededNoise::Laplace(double scale, uint64_t key) const {
  NoiseStream stream(seed_, key);
  return SampleLaplace(scale, stream).value_or(0.0);
}

}  // namespace blowfish
