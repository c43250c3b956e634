#pragma once

#include <cstdint>
#include <random>

namespace affcurve {

/// Deterministic random stream identified by (seed, stream).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard, seeded through std::seed_seq (also fully specified) with the
/// 32-bit halves of seed and stream. The transforms below are written out
/// here rather than taken from <random> distributions, whose algorithms
/// differ between standard libraries. Same (seed, stream) gives the same
/// integer and uniform draws on every conforming platform; variates that go
/// through log/exp/sin/cos can differ in the last ulp between libms.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1).
    double uniform_open();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double log_uniform(double lo, double hi);
    /// Standard normal by the Box-Muller transform (second variate cached).
    double normal();
    double exponential(double mean);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace affcurve
