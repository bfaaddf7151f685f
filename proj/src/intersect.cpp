#include "svi/intersect.hpp"
#include "svi/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace svi {

std::uint64_t runSeed(std::uint64_t seed, int runIndex) {
    return mix64(seed, static_cast<std::uint64_t>(runIndex));
}

RingPtr joinRing(int n, int r) { return PolyRing::join(n, r); }

LinearSystem diagonalSystem(int n, int r, const RingPtr& jr) {
    if (r < 2) throw UsageError("diagonal system needs at least two blocks");
    if (jr->nvars() != r * (n + 1)) throw UsageError("diagonal system: ring size mismatch");
    LinearSystem sys;
    sys.ring = jr;
    for (int j = 1; j < r; ++j)
        for (int i = 0; i <= n; ++i)
            sys.forms.push_back(Poly::variable(jr, j * (n + 1) + i) -
                                Poly::variable(jr, (j - 1) * (n + 1) + i));
    return sys;
}

Cycle ruledJoin(const std::vector<Cycle>& factors) {
    const int r = static_cast<int>(factors.size());
    if (r < 2) throw UsageError("join needs at least two factors");
    const RingPtr& base = factors[0].ring;
    for (const auto& f : factors)
        if (!sameRing(f.ring, base)) throw UsageError("join: ambient mismatch");
    const int n = base->nvars() - 1;
    RingPtr jr = joinRing(n, r);
    for (const auto& f : factors)
        if (f.isZero()) return makeCycle(jr, {});
    std::vector<std::vector<Poly>> images(r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i <= n; ++i)
            images[j].push_back(Poly::variable(jr, j * (n + 1) + i));
    std::vector<Chunk> chunks;
    std::vector<size_t> idx(r, 0);
    while (true) {
        std::vector<Poly> gens;
        long long coeff = 1;
        int dimSum = 0;
        long long degProd = 1;
        for (int j = 0; j < r; ++j) {
            const Chunk& ch = factors[j].chunks[idx[j]];
            for (const auto& g : ch.ideal.gens()) gens.push_back(g.substitute(jr, images[j]));
            coeff *= ch.coeff;
            dimSum += ch.dim;
            degProd *= ch.hdeg;
        }
        auto jc = chunkFromUnmixed(Ideal(jr, std::move(gens)), coeff);
        if (!jc) throw AuditError("join: empty join of nonempty chunks");
        if (jc->dim != dimSum + r - 1) throw AuditError("join: dimension is not sum + r - 1");
        if (jc->hdeg != degProd) throw AuditError("join: degree is not the product");
        chunks.push_back(std::move(*jc));
        int pos = r - 1;
        while (pos >= 0 && ++idx[pos] == factors[pos].chunks.size()) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return makeCycle(jr, std::move(chunks));
}

std::vector<Chunk> diagonalPullback(const Chunk& c, int n, int r) {
    return diagonalPullback(c, PolyRing::projective(n), r);
}

std::vector<Chunk> diagonalPullback(const Chunk& c, const RingPtr& base, int r) {
    const int n = base->nvars() - 1;
    if (c.ring->nvars() != r * (n + 1)) throw UsageError("diagonal pullback: ring size mismatch");
    LinearSystem sys = diagonalSystem(n, r, c.ring);
    for (const auto& f : sys.forms)
        if (!radicalContains(c.ideal, f))
            throw UsageError("diagonal pullback: chunk is not supported inside the diagonal");

    // Peel the chunk into cyclic layers along the diagonal forms. Every
    // diagonal form z is nilpotent on M = R/I, the graded pieces of the
    // z-power filtration of a cyclic module are cyclic again,
    //   z^j M / z^{j+1} M  =  R / ((I : z^j) + (z)),
    // and lengths at the top-dimensional generic points add up along the
    // filtration. Leaves contain every diagonal form, so collapsing the
    // blocks below is the exact isomorphism of the diagonal onto the base;
    // substitution without the peel truncates any multiplicity structure
    // transverse to the diagonal.
    std::vector<Ideal> layers{c.ideal};
    for (const auto& z : sys.forms) {
        std::vector<Ideal> next;
        for (const auto& L : layers) {
            if (idealContains(L, z)) {
                next.push_back(L);
                continue;
            }
            Ideal q = L;
            long long guard = 0;
            while (!idealIsUnit(q)) {
                next.push_back(canonicalIdeal(idealSum(q, Ideal(c.ring, {z}))));
                q = quotientSingle(q, z);
                if (++guard > 4 * c.hdeg + 4)
                    throw AuditError("diagonal pullback: layer peel does not terminate");
            }
        }
        layers = std::move(next);
    }

    std::vector<Poly> images;
    images.reserve(c.ring->nvars());
    for (int j = 0; j < r; ++j)
        for (int i = 0; i <= n; ++i) images.push_back(Poly::variable(base, i));
    std::vector<Chunk> out;
    long long degSum = 0;
    for (const auto& leaf : layers) {
        Ideal pre = idealApplyMap(leaf, base, images);
        Ideal satd = saturate(pre, irrelevantIdeal(base));
        if (idealIsUnit(satd)) continue;
        Ideal hull = satd.isZero() ? satd : equidimHull(satd);
        auto ch = chunkFromUnmixed(hull, c.coeff);
        if (!ch) continue;
        if (ch->dim > c.dim) throw AuditError("diagonal pullback raised the dimension");
        if (ch->dim < c.dim) continue; // carries no mass at the top dimension
        degSum += ch->hdeg;
        out.push_back(std::move(*ch));
    }
    if (out.empty()) throw AuditError("diagonal pullback: empty image of a nonempty chunk");
    if (degSum != c.hdeg) throw AuditError("diagonal pullback changed the degree");
    return out;
}

long long SvOutput::insideTotal() const {
    long long t = 0;
    for (const auto& level : v)
        for (const auto& ch : level) t += ch.degree();
    return t;
}

long long SvOutput::residualTotal() const {
    long long t = 0;
    for (const auto& ch : residual) t += ch.degree();
    return t;
}

SvOutput sv(const Cycle& c, const LinearSystem& sys, std::uint64_t seed) {
    if (!sameRing(c.ring, sys.ring)) throw UsageError("sv: ring mismatch");
    for (const auto& f : sys.forms)
        if (f.isZero() || f.totalDegree() != 1 || !f.isHomogeneous())
            throw UsageError("sv: system form is not linear: " + f.str());
    SvOutput out;
    out.seed = seed;
    if (c.isZero()) return out;
    Ideal Z = sys.center();
    int dim = c.chunks[0].dim;
    std::vector<Chunk> current;
    std::vector<Chunk> v0;
    for (const auto& ch : c.chunks) {
        if (ch.dim != dim) throw UsageError("sv: input cycle must be pure-dimensional");
        auto [in, outp] = splitBy(ch, Z);
        if (in) v0.push_back(*in);
        if (outp) current.push_back(*outp);
    }
    out.v.push_back(std::move(v0));
    for (int k = 1; k <= dim && !current.empty(); ++k) {
        Poly h;
        bool ok = false;
        for (int attempt = 0; attempt <= 10 && !ok; ++attempt) {
            // stream k first, then far-offset resample streams
            h = randomLinearCombination(sys.forms, seed, k + 1009ull * attempt);
            ok = true;
            for (const auto& ch : current)
                if (!isNzd(ch.ideal, h)) {
                    ok = false;
                    break;
                }
        }
        if (!ok)
            throw GenericityError("sv: no proper divisor after 10 resamples at step " +
                                  std::to_string(k));
        out.sampled.push_back(h);
        std::vector<Chunk> vk;
        std::vector<Chunk> next;
        for (const auto& ch : current) {
            Chunk cutc = cutWithDivisor(ch, h);
            auto [in, outp] = splitBy(cutc, Z);
            if (in) vk.push_back(*in);
            if (outp) next.push_back(*outp);
        }
        out.v.push_back(std::move(vk));
        current = std::move(next);
    }
    out.residual = std::move(current);
    while (static_cast<int>(out.v.size()) <= dim) out.v.push_back({});
    return out;
}

MassCheck svMassCheck(const SvOutput& out, long long inputDegree, int formCount, int inputDim) {
    MassCheck m;
    m.inputDegree = inputDegree;
    m.insideSum = out.insideTotal();
    m.deficit = inputDegree - m.insideSum;
    if (m.deficit < 0) throw AuditError("mass: inside degrees exceed the input degree");
    if (m.deficit != out.residualTotal())
        throw AuditError("mass: deficit differs from the residual degree");
    if (formCount <= inputDim && m.deficit != 0)
        throw AuditError("mass: deficit must vanish when the system has at most dim forms");
    return m;
}

namespace {

std::string chunkKey(const Chunk& c) {
    std::string k;
    for (const auto& g : c.ideal.gens()) {
        k += g.str();
        k += ';';
    }
    return k;
}

std::string idealKeyOf(const Ideal& I) {
    std::string k;
    for (const auto& g : I.gens()) {
        k += g.str();
        k += ';';
    }
    return k;
}

struct TermResult {
    std::vector<Chunk> fixed;
    std::vector<MovingComponent> moving;
};

// One classification pass over the runs currently available; nullopt signals
// cross-run disagreement (caller arbitrates with an extra run).
std::optional<TermResult> classifyRuns(const RingPtr& ring, const std::vector<Cycle>& runCycles) {
    const int runs = static_cast<int>(runCycles.size());
    std::set<int> dims;
    for (const auto& rc : runCycles)
        for (const auto& ch : rc.chunks) dims.insert(ch.dim);
    TermResult out;
    for (int ell : dims) {
        std::vector<std::vector<Chunk>> parts(runs);
        for (int ri = 0; ri < runs; ++ri)
            for (const auto& ch : runCycles[ri].chunks)
                if (ch.dim == ell) parts[ri].push_back(ch);
        Ideal C = supportIdeal(makeCycle(ring, parts[0]));
        for (int ri = 1; ri < runs; ++ri)
            C = idealSum(C, supportIdeal(makeCycle(ring, parts[ri])));
        std::vector<std::vector<Chunk>> fixedParts(runs), movingParts(runs);
        for (int ri = 0; ri < runs; ++ri)
            for (const auto& ch : parts[ri]) {
                auto [in, outp] = splitBy(ch, C);
                if (in) fixedParts[ri].push_back(*in);
                if (outp) movingParts[ri].push_back(*outp);
            }
        auto totalDeg = [](const std::vector<Chunk>& v) {
            long long t = 0;
            for (const auto& ch : v) t += ch.degree();
            return t;
        };
        const long long fd = totalDeg(fixedParts[0]);
        const long long md = totalDeg(movingParts[0]);
        Ideal fixedSupp0 = supportIdeal(makeCycle(ring, fixedParts[0]));
        for (int ri = 1; ri < runs; ++ri) {
            if (totalDeg(fixedParts[ri]) != fd || totalDeg(movingParts[ri]) != md)
                return std::nullopt;
            if (!supportsEqualIdeal(fixedSupp0, supportIdeal(makeCycle(ring, fixedParts[ri]))))
                return std::nullopt;
        }
        for (auto& ch : fixedParts[0]) out.fixed.push_back(std::move(ch));
        if (md > 0) {
            MovingComponent mc;
            mc.dim = ell;
            mc.degree = md;
            for (int ri = 0; ri < runs; ++ri) {
                Ideal w = movingParts[ri][0].ideal;
                for (size_t i = 1; i < movingParts[ri].size(); ++i)
                    w = intersectIdeals(w, movingParts[ri][i].ideal);
                mc.witnesses.push_back(std::move(w));
                mc.witnessChunks.push_back(movingParts[ri]);
            }
            out.moving.push_back(std::move(mc));
        }
    }
    return out;
}

TermResult classifyWithArbitration(const RingPtr& ring,
                                   const std::function<Cycle(int)>& makeRun, int runs) {
    std::vector<Cycle> rc;
    rc.reserve(runs + 1);
    for (int ri = 0; ri < runs; ++ri) rc.push_back(makeRun(ri));
    auto res = classifyRuns(ring, rc);
    if (!res) {
        rc.push_back(makeRun(runs));
        res = classifyRuns(ring, rc);
    }
    if (!res)
        throw InstabilityError("fixed/moving classification disagrees across runs even after "
                               "an arbitration run");
    for (auto& mc : res->moving)
        if (static_cast<int>(mc.witnesses.size()) > runs) {
            mc.witnesses.resize(runs);
            mc.witnessChunks.resize(runs);
        }
    return *res;
}

// Theorem-level containment: every reported component lies inside every
// input's support.
void auditSupportContainment(const TermResult& res, const std::vector<Cycle>& termInputs) {
    std::vector<Ideal> supports;
    for (const auto& in : termInputs) supports.push_back(supportIdeal(in));
    auto check = [&](const Ideal& component) {
        for (const auto& s : supports)
            if (!supportContained(component, s))
                throw AuditError("component escapes an input support");
    };
    for (const auto& ch : res.fixed) check(ch.ideal);
    for (const auto& mc : res.moving)
        for (const auto& w : mc.witnesses) check(w);
}

std::vector<Cycle> pureParts(const Cycle& c) {
    std::map<int, std::vector<Chunk>> bydim;
    for (const auto& ch : c.chunks) bydim[ch.dim].push_back(ch);
    std::vector<Cycle> parts;
    parts.reserve(bydim.size());
    for (auto& [d, chs] : bydim) parts.push_back(makeCycle(c.ring, chs));
    return parts;
}

void sortMoving(std::vector<MovingComponent>& moving) {
    std::sort(moving.begin(), moving.end(), [](const MovingComponent& a, const MovingComponent& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return idealKeyOf(a.witnesses[0]) < idealKeyOf(b.witnesses[0]);
    });
}

void finalizeReport(BulletReport& rep) {
    rep.fixed = makeCycle(rep.ring, rep.fixed).chunks;
    sortMoving(rep.moving);
    long long total = 0;
    for (const auto& ch : rep.fixed) total += ch.degree();
    for (const auto& mc : rep.moving) total += mc.degree;
    rep.totalDegree = total;
    rep.fultonDegree = total;
    rep.residualDegree = rep.bezoutProduct - total;
    if (rep.residualDegree < 0) throw AuditError("report: components exceed the Bezout bound");
    if (rep.rho && *rep.rho >= 0 && rep.residualDegree != 0)
        throw AuditError("report: nonzero deficit with nonnegative expected dimension");
}

} // namespace

BulletReport bullet(const std::vector<Cycle>& inputs, std::uint64_t seed, int runs) {
    const int r = static_cast<int>(inputs.size());
    if (r < 2) throw UsageError("bullet needs at least two factors");
    if (runs < 2) throw UsageError("bullet needs at least two runs");
    const RingPtr& ring = inputs[0].ring;
    for (const auto& c : inputs)
        if (!sameRing(c.ring, ring)) throw UsageError("bullet: ambient mismatch");
    const int n = ring->nvars() - 1;

    BulletReport rep;
    rep.ring = ring;
    rep.inputs = inputs;
    rep.seed = seed;
    rep.runs = runs;
    for (int ri = 0; ri < runs; ++ri) rep.runSeeds.push_back(runSeed(seed, ri));
    bool pure = true;
    long long dimSum = 0;
    for (const auto& c : inputs) {
        if (c.isZero() || cycleDegree(c).size() != 1) {
            pure = false;
            break;
        }
        dimSum += c.chunks[0].dim;
    }
    if (pure) {
        rep.rho = dimSum - static_cast<long long>(r - 1) * n;
        rep.d = dimSum + r - 1;
    }
    rep.bezoutProduct = 1;
    for (const auto& c : inputs) rep.bezoutProduct *= cycleTotalDegree(c);

    std::vector<std::vector<Cycle>> partsPer;
    for (const auto& c : inputs) partsPer.push_back(pureParts(c));
    bool anyZero = false;
    for (const auto& p : partsPer)
        if (p.empty()) anyZero = true;
    if (!anyZero) {
        std::vector<size_t> idx(r, 0);
        while (true) {
            std::vector<Cycle> term;
            for (int j = 0; j < r; ++j) term.push_back(partsPer[j][idx[j]]);
            Cycle join = ruledJoin(term);
            LinearSystem sys = diagonalSystem(n, r, join.ring);
            const long long joinDeg = cycleTotalDegree(join);
            const int joinDim = join.chunks[0].dim;
            auto makeRun = [&](int ri) {
                SvOutput o = sv(join, sys, runSeed(seed, ri));
                svMassCheck(o, joinDeg, static_cast<int>(sys.forms.size()), joinDim);
                std::vector<Chunk> pulled;
                for (const auto& level : o.v)
                    for (const auto& ch : level)
                        for (auto& p : diagonalPullback(ch, ring, r)) pulled.push_back(std::move(p));
                return makeCycle(ring, std::move(pulled));
            };
            TermResult res = classifyWithArbitration(ring, makeRun, runs);
            auditSupportContainment(res, term);
            for (auto& ch : res.fixed) rep.fixed.push_back(std::move(ch));
            for (auto& mc : res.moving) rep.moving.push_back(std::move(mc));
            int pos = r - 1;
            while (pos >= 0 && ++idx[pos] == partsPer[pos].size()) idx[pos--] = 0;
            if (pos < 0) break;
        }
    }
    finalizeReport(rep);
    return rep;
}

BulletReport bulletDirectLinear(const Cycle& A, const Cycle& c, std::uint64_t seed, int runs) {
    if (!sameRing(A.ring, c.ring)) throw UsageError("bullet: ambient mismatch");
    if (runs < 2) throw UsageError("bullet needs at least two runs");
    if (A.chunks.size() != 1 || A.chunks[0].coeff != 1 || A.chunks[0].hdeg != 1)
        throw UsageError("direct path: first factor must be a linear space");
    for (const auto& g : A.chunks[0].ideal.gens())
        if (g.totalDegree() != 1)
            throw UsageError("direct path: first factor must be a linear space");
    const RingPtr& ring = A.ring;
    const int n = ring->nvars() - 1;
    const std::vector<Poly>& sigma = A.chunks[0].ideal.gens();

    BulletReport rep;
    rep.ring = ring;
    rep.inputs = {A, c};
    rep.seed = seed;
    rep.runs = runs;
    for (int ri = 0; ri < runs; ++ri) rep.runSeeds.push_back(runSeed(seed, ri));
    if (!c.isZero() && cycleDegree(c).size() == 1) {
        rep.rho = A.chunks[0].dim + c.chunks[0].dim - n;
        rep.d = A.chunks[0].dim + c.chunks[0].dim + 1;
    }
    rep.bezoutProduct = cycleTotalDegree(A) * cycleTotalDegree(c);

    LinearSystem sys{ring, sigma};
    for (const auto& part : pureParts(c)) {
        const long long partDeg = cycleTotalDegree(part);
        const int partDim = part.chunks[0].dim;
        auto makeRun = [&](int ri) {
            SvOutput o = sv(part, sys, runSeed(seed, ri));
            svMassCheck(o, partDeg, static_cast<int>(sys.forms.size()), partDim);
            std::vector<Chunk> inside;
            for (const auto& level : o.v)
                for (const auto& ch : level) inside.push_back(ch);
            return makeCycle(ring, std::move(inside));
        };
        TermResult res = classifyWithArbitration(ring, makeRun, runs);
        auditSupportContainment(res, {A, part});
        for (auto& ch : res.fixed) rep.fixed.push_back(std::move(ch));
        for (auto& mc : res.moving) rep.moving.push_back(std::move(mc));
    }
    finalizeReport(rep);
    return rep;
}

EpsilonTable epsilon(const std::vector<Cycle>& inputs, const ProjPoint& x, std::uint64_t seed,
                     bool directLinear) {
    if (inputs.size() < 2) throw UsageError("epsilon needs at least two factors");
    auto runBullet = [&](int runs) {
        return directLinear ? bulletDirectLinear(inputs[0], inputs[1], seed, runs)
                            : bullet(inputs, seed, runs);
    };
    BulletReport rep = runBullet(2);
    Ideal common = supportIdeal(inputs[0]);
    for (size_t i = 1; i < inputs.size(); ++i) common = idealSum(common, supportIdeal(inputs[i]));
    const int dimV = hilbert(canonicalIdeal(common)).dim;
    EpsilonTable table{x, {}};
    if (dimV < 0) return table;
    table.values.assign(dimV + 1, 0);

    auto movingValue = [&](const MovingComponent& mc) -> long long {
        std::vector<long long> vals;
        for (const auto& chunks : mc.witnessChunks) {
            long long v = 0;
            for (const auto& ch : chunks) v += ch.coeff * chunkMultiplicityAt(ch, x);
            vals.push_back(v);
        }
        for (size_t i = 1; i < vals.size(); ++i)
            if (vals[i] != vals[0]) return -1;
        return vals.empty() ? 0 : vals[0];
    };

    bool disagree = false;
    for (const auto& mc : rep.moving)
        if (movingValue(mc) < 0) {
            disagree = true;
            break;
        }
    if (disagree) rep = runBullet(3);
    for (const auto& ch : rep.fixed) {
        if (ch.dim > dimV) throw AuditError("fixed component above the common support dimension");
        table.values[ch.dim] += ch.coeff * chunkMultiplicityAt(ch, x);
    }
    for (const auto& mc : rep.moving) {
        long long v = movingValue(mc);
        if (v < 0) {
            // majority over the three runs
            std::map<long long, int> count;
            for (const auto& chunks : mc.witnessChunks) {
                long long val = 0;
                for (const auto& ch : chunks) val += ch.coeff * chunkMultiplicityAt(ch, x);
                ++count[val];
            }
            v = -1;
            for (const auto& [val, n2] : count)
                if (n2 >= 2) v = val;
            if (v < 0) throw InstabilityError("moving multiplicities disagree across runs");
        }
        if (mc.dim > dimV) throw AuditError("moving component above the common support dimension");
        table.values[mc.dim] += v;
    }
    return table;
}

PolarOracle polarOracle(const Cycle& curve, const std::vector<ProjPoint>& candidates,
                        std::uint64_t seed) {
    const RingPtr& ring = curve.ring;
    if (ring->nvars() != 3) throw UsageError("polar oracle works on plane curves");
    if (curve.chunks.size() != 1 || curve.chunks[0].coeff != 1)
        throw UsageError("polar oracle needs a single reduced curve");
    const Chunk& ch = curve.chunks[0];
    if (ch.dim != 1 || ch.ideal.gens().size() != 1)
        throw UsageError("polar oracle needs a principal curve ideal");
    const Poly& F = ch.ideal.gens()[0];
    const int dF = F.totalDegree();
    if (dF < 2) throw UsageError("polar oracle needs degree at least 2");

    std::vector<Poly> partials;
    for (int i = 0; i < 3; ++i) partials.push_back(F.derivative(i));

    PolarOracle out;
    out.curveDegree = dF;
    std::optional<Chunk> cut;
    for (int attempt = 0; attempt <= 10 && !cut; ++attempt) {
        Rng rng(seed, static_cast<std::uint64_t>(attempt));
        Poly G = Poly::zero(ring);
        for (int i = 0; i < 3; ++i)
            G = G + partials[i].scaled(Rational(static_cast<long>(rng.uniformInt(-9999, 9999))));
        if (G.isZero() || !isNzd(ch.ideal, G)) continue;
        cut = cutWithHypersurface(ch, G);
        out.polar = G;
    }
    if (!cut) throw GenericityError("polar oracle: improper polar after 10 resamples");
    out.total = cut->degree();
    if (out.total != static_cast<long long>(dF) * (dF - 1))
        throw AuditError("polar oracle: total is not d(d-1)");
    for (const auto& p : candidates) {
        long long m = chunkMultiplicityAt(*cut, p);
        out.pointMultiplicities.push_back(m);
        out.singularMass += m;
    }
    out.movingMass = out.total - out.singularMass;
    return out;
}

} // namespace svi
