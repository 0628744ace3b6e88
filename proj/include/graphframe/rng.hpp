#pragma once

#include <cstdint>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace graphframe {

/// Seedable random stream with platform-independent output.
///
/// The engine is the 64-bit Mersenne Twister; the distributions come from
/// Boost.Random, whose algorithms are fixed across standard libraries (unlike
/// std::normal_distribution). Independent substreams are derived from a master
/// seed and a stream id through SplitMix64, so parallel trials can each own a
/// stream without sharing state:
///
///     Rng trial_rng(master_seed, 1 + trial_index);
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    double uniform();                  ///< uniform on [0, 1)
    double normal(double stddev = 1.0); ///< N(0, stddev^2)

    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

private:
    boost::random::mt19937_64 engine_;
    boost::random::uniform_01<double> uniform_;
    boost::random::normal_distribution<double> normal_;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace graphframe
