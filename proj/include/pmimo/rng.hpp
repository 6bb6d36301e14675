// Deterministic per-run random streams for the Monte-Carlo machinery.
#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace pmimo {

// One stream per (seed, stream, run) key. Runs can therefore execute in any
// order, or concurrently, and still reproduce bit-identical draws; `stream`
// separates sweep points so SNR grid changes never alias run streams.
class RunRng {
  public:
    RunRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t run);

    // Circular complex Gaussian, E|z|^2 = 1. Implemented as a polar-form
    // Box-Muller over raw mt19937_64 words: std::normal_distribution is
    // implementation-defined, which would break the byte-stability contract
    // of emitted results.
    std::complex<double> cgauss();

  private:
    std::mt19937_64 engine_;
};

}  // namespace pmimo
