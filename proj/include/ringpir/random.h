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

#ifndef RINGPIR_RANDOM_H_
#define RINGPIR_RANDOM_H_

#include <cstdint>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ringpir {

using BigInt = boost::multiprecision::cpp_int;

// Source of uniform 64-bit words. Every randomized operation in the library
// draws through this interface so runs can be replayed from a seed.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  virtual std::uint64_t next_u64() = 0;

  // Uniform integer in [0, bound) by masked rejection sampling. Consumes
  // ceil(bits(bound - 1) / 64) words per attempt, lowest word first.
  BigInt uniform_below(const BigInt& bound);
};

// Deterministic stream (mt19937_64). Used for tests, benches and `--seed`.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() override { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Operating-system entropy.
class SystemRandom final : public RandomSource {
 public:
  std::uint64_t next_u64() override;

 private:
  std::random_device device_;
};

// Replays a fixed list of words; throws std::out_of_range when exhausted.
// Used to enumerate every random tape of a small randomized algorithm.
class ScriptedRandom final : public RandomSource {
 public:
  explicit ScriptedRandom(std::vector<std::uint64_t> words) : words_(std::move(words)) {}

  std::uint64_t next_u64() override;
  std::size_t consumed() const { return next_; }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t next_ = 0;
};

}  // namespace ringpir

#endif  // RINGPIR_RANDOM_H_
