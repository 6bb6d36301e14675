#include "pmimo/rng.hpp"

#include <cmath>

#include "pmimo/units.hpp"

namespace pmimo {

RunRng::RunRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t run) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      static_cast<std::uint32_t>(run), static_cast<std::uint32_t>(run >> 32)};
    engine_.seed(seq);
}

std::complex<double> RunRng::cgauss() {
    // u1 in (0, 1] keeps log() finite; u2 in [0, 1). 53-bit mantissas.
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-std::log(u1));
    return std::polar(r, 2.0 * kPi * u2);
}

}  // namespace pmimo
