#pragma once

#include "svi/poly.hpp"

#include <cstdint>
#include <vector>

namespace svi {

// Deterministic splitmix64 stream. Identical (seed, stream) gives an
// identical sequence on every platform; no standard-library distributions
// are used anywhere (their outputs are implementation-defined).
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next();
    // Uniform on [lo, hi] via rejection sampling (exact, unbiased).
    long long uniformInt(long long lo, long long hi);

private:
    std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t a, std::uint64_t b);

// Sum a_i * forms[i] with a_i drawn uniformly from [-9999, 9999], redrawn as a
// whole until some a_i is nonzero.
Poly randomLinearCombination(const std::vector<Poly>& forms, std::uint64_t seed,
                             std::uint64_t streamIndex);

// Invertible linear change of coordinates with integer entries in [-99, 99].
// forward[i] is the image of variable i; inverse undoes it exactly.
struct CoordinateChange {
    std::vector<Poly> forward;
    std::vector<Poly> inverse;
};
CoordinateChange randomCoordinateChange(const RingPtr& ring, std::uint64_t seed,
                                        std::uint64_t streamIndex);

} // namespace svi
