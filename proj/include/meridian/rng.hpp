/// @file rng.hpp
/// Seeded randomness for sample families.  The generator is pinned: the
/// mt19937_64 engine (output sequence fixed by the C++ standard) mapped to
/// doubles through an explicit 53-bit mantissa scaling, and normals through
/// Box-Muller on those uniforms.  Standard-library distributions are avoided
/// because their streams vary across implementations.
#pragma once

#include <cstdint>
#include <random>

namespace meridian {

inline constexpr const char* rng_algorithm = "mt19937_64/53bit-boxmuller";

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller; draws exactly two uniforms.
    double normal();

  private:
    std::mt19937_64 gen_;
};

} // namespace meridian
