// Copyright 2026 The ringpir Authors
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

#include "ringpir/random.h"

#include <stdexcept>

namespace ringpir {

BigInt RandomSource::uniform_below(const BigInt& bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  if (bound == 1) return 0;
  const BigInt top = bound - 1;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(top)) + 1;
  const unsigned words = (bits + 63) / 64;
  const BigInt mask = (BigInt(1) << bits) - 1;
  for (;;) {
    BigInt candidate = 0;
    for (unsigned w = 0; w < words; ++w) {
      candidate |= BigInt(next_u64()) << (64 * w);
    }
    candidate &= mask;
    if (candidate < bound) return candidate;
  }
}

std::uint64_t SystemRandom::next_u64() {
  static_assert(sizeof(std::random_device::result_type) == 4);
  const std::uint64_t hi = device_();
  const std::uint64_t lo = device_();
  return (hi << 32) | lo;
}

std::uint64_t ScriptedRandom::next_u64() {
  if (next_ >= words_.size()) throw std::out_of_range("scripted random tape exhausted");
  return words_[next_++];
}

}  // namespace ringpir
