#pragma once

#include <cstdint>
#include <random>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

namespace alcove {

using Engine = std::mt19937_64;

// splitmix64 finalizer applied to (master, index); used to derive per-path streams.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) noexcept;

Engine substream(std::uint64_t master, std::uint64_t index);

// Unit-rate exponential draws from an engine; the samplers accept any callable
// returning a double, so tests can substitute a constant source.
class UnitExponential {
 public:
  explicit UnitExponential(Engine& eng) : eng_(&eng) {}
  double operator()() { return dist_(*eng_); }

 private:
  Engine* eng_;
  boost::random::exponential_distribution<double> dist_{1.0};
};

class StandardNormal {
 public:
  explicit StandardNormal(Engine& eng) : eng_(&eng) {}
  double operator()() { return dist_(*eng_); }

 private:
  Engine* eng_;
  boost::random::normal_distribution<double> dist_{0.0, 1.0};
};

}  // namespace alcove
