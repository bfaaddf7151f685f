#pragma once

#include "svi/ideal.hpp"
#include "svi/point.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace svi {

// Pure-dimensional effective cycle piece: an unmixed homogeneous ideal whose
// scheme structure carries multiplicities, times a positive coefficient.
struct Chunk {
    RingPtr ring;
    Ideal ideal;     // canonical generators, ideal == its equidimensional hull
    long long coeff = 1;
    int dim = -1;    // projective dimension
    long long hdeg = 0;

    long long degree() const { return coeff * hdeg; }
    bool operator==(const Chunk& o) const {
        return coeff == o.coeff && dim == o.dim && hdeg == o.hdeg &&
               sameRing(ring, o.ring) && ideal.gens() == o.ideal.gens();
    }
};

// Trusted entry: the caller guarantees unmixedness (hulled, or principal /
// prime by construction). Returns nothing for projectively empty ideals.
std::optional<Chunk> chunkFromUnmixed(const Ideal& I, long long coeff);

// Validating entry for file input: recomputes the hull and rejects ideals
// that are not already equal to it.
std::optional<Chunk> makeChunkValidated(const Ideal& I, long long coeff);

struct Cycle {
    RingPtr ring;
    std::vector<Chunk> chunks; // merged, sorted; empty = zero cycle

    bool isZero() const { return chunks.empty(); }
    bool operator==(const Cycle& o) const {
        return sameRing(ring, o.ring) && chunks == o.chunks;
    }
};

// Merge chunks with equal ideals, drop nothing else; sort by (dim, printed
// ideal). All cycle-producing code funnels through here.
Cycle makeCycle(const RingPtr& ring, std::vector<Chunk> chunks);

// Builders. Coefficients must be positive; forms must be independent linear.
Cycle makeHypersurface(const Poly& F, long long coeff);
Cycle makeLinearSpace(const RingPtr& ring, const std::vector<Poly>& forms);
Cycle makePoint(const RingPtr& ring, const ProjPoint& p);
Cycle makeFullSpace(const RingPtr& ring);

// Hilbert-Samuel multiplicity of the chunk's scheme at x (coefficient not
// applied); 0 if x is off the support. Colength sampling H(s) with d-th
// finite differences, stabilization window 3, cap s <= 40.
long long chunkMultiplicityAt(const Chunk& c, const ProjPoint& x);
// Sum over chunks of coefficient * chunkMultiplicityAt.
long long multiplicityAt(const Cycle& c, const ProjPoint& x);

// Split against a center: inside = part supported in V(Z), outside = the
// components meeting V(Z) properly. Degree additivity is asserted.
std::pair<std::optional<Chunk>, std::optional<Chunk>> splitBy(const Chunk& c, const Ideal& Z);

// Proper intersection with a hypersurface h (any positive degree): requires
// is_nzd, drops dim by 1, multiplies degree by deg h.
Chunk cutWithHypersurface(const Chunk& c, const Poly& h);
// The divisor cut used by the SV loop: h linear, degree preserved.
Chunk cutWithDivisor(const Chunk& c, const Poly& h);

bool pointOnSupport(const Ideal& I, const ProjPoint& p);
bool pointOnSupport(const Cycle& c, const ProjPoint& p);
// Ideal whose zero set is the union of the chunk supports (unit if zero cycle).
Ideal supportIdeal(const Cycle& c);

// Per-dimension degree sums.
std::map<int, long long> cycleDegree(const Cycle& c);
long long cycleTotalDegree(const Cycle& c);

// Text format: optional `ambient n` header, `component coeff=<k>` blocks of
// generator lines, builder statements (point / hypersurface / linear / full),
// `#` comments. forcedAmbient overrides/validates the header.
Cycle parseCycleText(const std::string& text, std::optional<int> forcedAmbient = std::nullopt);
std::string cycleToText(const Cycle& c);

// Largest x<k> index mentioned by builder statements / generators / points in
// the text, for ambient inference across several command-line inputs.
std::optional<int> scanAmbient(const std::string& text);

} // namespace svi
