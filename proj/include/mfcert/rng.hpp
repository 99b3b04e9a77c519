#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace mfcert {

// Deterministic random stream. Uniform and gaussian draws are derived from
// raw mt19937_64 output so results do not depend on the standard library's
// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::complex<double> complex_gaussian() {
        // variance 1 per complex entry
        const double s = 0.7071067811865475244;
        const double re = gaussian();
        const double im = gaussian();
        return {s * re, s * im};
    }

    // unit-modulus complex number
    std::complex<double> unit_phase() {
        const double a = uniform(0.0, 6.283185307179586476925286766559);
        return {std::cos(a), std::sin(a)};
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Default seed used by the CLI and report pipeline when none is given.
inline constexpr std::uint64_t kDefaultSeed = 1729;

} // namespace mfcert
