#pragma once

#include "svi/cycle.hpp"
#include "svi/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace svi {

struct LinearSystem {
    RingPtr ring;
    std::vector<Poly> forms; // independent or not; only linearity is required

    Ideal center() const { return Ideal(ring, forms); }
};

// Forms x_i^{j+1} - x_i^j, j = 1..r-1 outer, i = 0..n inner, cutting out the
// join diagonal inside the join ring.
LinearSystem diagonalSystem(int n, int r, const RingPtr& joinRing);

// Join ambient ring for r blocks over P^n plus the renaming of block j;
// block j = 1..r occupies variable indices [(j-1)(n+1), j(n+1)).
RingPtr joinRing(int n, int r);

// Direct r-factor ruled join: per choice of one chunk per factor, the ideal
// generated by the block-renamed generators. dim = sum + r - 1 and
// degree = product are asserted.
Cycle ruledJoin(const std::vector<Cycle>& factors);

// Inverse of x -> (x, ..., x) on chunks supported inside the join diagonal,
// as a pushforward of cycles. Multiplicity carried by scheme structure
// transverse to the diagonal would be truncated by plain substitution, so the
// chunk is first peeled into cyclic layers along the diagonal forms; each
// layer lies scheme-theoretically inside the diagonal and substitutes
// exactly. Dimension and total degree are asserted preserved; the result may
// hold several chunks (distinct layer ideals). The base-ring overload serves
// factors whose ambient ring carries custom variable names.
std::vector<Chunk> diagonalPullback(const Chunk& c, int n, int r);
std::vector<Chunk> diagonalPullback(const Chunk& c, const RingPtr& base, int r);

struct SvOutput {
    std::vector<std::vector<Chunk>> v; // v[k] = inside parts at step k, k = 0..dim
    std::vector<Chunk> residual;       // final outside parts, 0-dimensional or absent
    std::vector<Poly> sampled;         // divisors h_1..h_K actually used
    std::uint64_t seed = 0;

    long long insideTotal() const;
    long long residualTotal() const;
};

// The SV loop: v_0 = part of c inside V(forms); then repeatedly cut the
// outside part with a fresh generic combination of the forms and peel off
// what lands back in the center. Pure function of (c, sys, seed).
SvOutput sv(const Cycle& c, const LinearSystem& sys, std::uint64_t seed);

struct MassCheck {
    long long inputDegree = 0;
    long long insideSum = 0;
    long long deficit = 0; // inputDegree - insideSum, equals the residual mass
};
// Exact accounting: deficit >= 0, equal to the residual degree, and zero
// whenever the system has at most dim(c) forms.
MassCheck svMassCheck(const SvOutput& out, long long inputDegree, int formCount, int inputDim);

struct MovingComponent {
    int dim = -1;
    long long degree = 0;                          // equal across runs
    std::vector<Ideal> witnesses;                  // combined ideal, one per run
    std::vector<std::vector<Chunk>> witnessChunks; // per run, for multiplicities
};

struct BulletReport {
    RingPtr ring;
    std::vector<Cycle> inputs;
    // null when some input is mixed-dimensional (multilinear expansion)
    std::optional<long long> rho, d;
    std::vector<Chunk> fixed;
    std::vector<MovingComponent> moving;
    long long totalDegree = 0;
    long long residualDegree = 0;
    long long bezoutProduct = 0;
    long long fultonDegree = 0;
    std::uint64_t seed = 0;
    int runs = 0;
    std::vector<std::uint64_t> runSeeds;
};

// The bullet product: direct r-factor join, SV along the diagonal system,
// pullback, fixed/moving classification over `runs` independent runs.
BulletReport bullet(const std::vector<Cycle>& inputs, std::uint64_t seed, int runs = 2);

// Same product when the first factor is a linear space: SV directly in P^n
// with the space's defining forms as the system.
BulletReport bulletDirectLinear(const Cycle& A, const Cycle& c, std::uint64_t seed, int runs = 2);

struct EpsilonTable {
    ProjPoint point;
    std::vector<long long> values; // values[l] = eps_l, l = 0..dim of the common support
};

// Local intersection numbers at x: per dimension, multiplicities of the fixed
// part plus the generic-run multiplicity of the moving part (one retry run on
// disagreement).
EpsilonTable epsilon(const std::vector<Cycle>& inputs, const ProjPoint& x, std::uint64_t seed,
                     bool directLinear = false);

struct PolarOracle {
    int curveDegree = 0;
    long long total = 0; // dF * (dF - 1), asserted
    std::vector<long long> pointMultiplicities;
    long long singularMass = 0;
    long long movingMass = 0; // total - singularMass
    Poly polar;
};

// Independent oracle: cut a reduced plane curve with a random polar and
// report the colength split over candidate points.
PolarOracle polarOracle(const Cycle& curve, const std::vector<ProjPoint>& candidates,
                        std::uint64_t seed);

// Per-run seed derivation, also surfaced in reports.
std::uint64_t runSeed(std::uint64_t seed, int runIndex);

// JSON text of a BulletReport in the documented schema (compact, ordered,
// byte-deterministic); command is included as metadata.
std::string bulletReportJson(const BulletReport& rep, const std::string& command);

} // namespace svi
