#include "svi/errors.hpp"
#include "svi/ideal.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace svi {

namespace {

using Expv = std::vector<int>;
// Numerator of a Hilbert series over (1-t)^nvars, coefficient of t^i at [i].
using ZPoly = std::vector<Integer>;

int degOf(const Expv& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool dividesExp(const Expv& a, const Expv& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

void minimalize(std::vector<Expv>& gens) {
    std::sort(gens.begin(), gens.end(),
              [](const Expv& a, const Expv& b) { return degOf(a) < degOf(b); });
    std::vector<Expv> keep;
    for (const auto& g : gens) {
        bool redundant = false;
        for (const auto& k : keep)
            if (dividesExp(k, g)) {
                redundant = true;
                break;
            }
        if (!redundant) keep.push_back(g);
    }
    gens = std::move(keep);
}

ZPoly zAdd(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

ZPoly zMul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

ZPoly zShift(const ZPoly& a) {
    if (a.empty()) return {};
    ZPoly r(a.size() + 1, Integer(0));
    for (size_t i = 0; i < a.size(); ++i) r[i + 1] = a[i];
    return r;
}

Integer zAtOne(const ZPoly& a) {
    Integer s(0);
    for (const auto& c : a) s += c;
    return s;
}

// Quotient by (1 - t); precondition a(1) == 0.
ZPoly zDivOneMinusT(const ZPoly& a) {
    if (a.empty()) return {};
    ZPoly q(a.size() - 1, Integer(0));
    Integer run(0);
    for (size_t i = 0; i + 1 < a.size(); ++i) {
        run += a[i];
        q[i] = run;
    }
    if (run + a.back() != 0) throw AuditError("hilbert: series not divisible by 1-t");
    return q;
}

bool pairwiseCoprime(const std::vector<Expv>& gens) {
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
            for (size_t v = 0; v < gens[i].size(); ++v)
                if (gens[i][v] > 0 && gens[j][v] > 0) return false;
    return true;
}

// Numerator of the Hilbert series of S/(gens) over (1-t)^nvars.
// Recursion on a pivot variable: N(I) = N(I + (x_v)) + t * N(I : x_v).
ZPoly hilbNum(std::vector<Expv> gens, int nvars) {
    minimalize(gens);
    if (gens.empty()) return {Integer(1)};
    if (degOf(gens.front()) == 0) return {};
    if (pairwiseCoprime(gens)) {
        ZPoly r{Integer(1)};
        for (const auto& g : gens) {
            ZPoly f(degOf(g) + 1, Integer(0));
            f[0] = 1;
            f[degOf(g)] = -1;
            r = zMul(r, f);
        }
        return r;
    }
    // Pivot: the variable occurring most often among the non-pure-power
    // generators, so both branches shrink quickly.
    std::vector<int> freq(nvars, 0);
    for (const auto& g : gens) {
        int support = 0;
        for (int v = 0; v < nvars; ++v)
            if (g[v] > 0) ++support;
        if (support >= 2)
            for (int v = 0; v < nvars; ++v)
                if (g[v] > 0) ++freq[v];
    }
    int pivot = static_cast<int>(std::max_element(freq.begin(), freq.end()) - freq.begin());
    std::vector<Expv> plus;
    for (const auto& g : gens)
        if (g[pivot] == 0) plus.push_back(g);
    Expv xv(nvars, 0);
    xv[pivot] = 1;
    plus.push_back(xv);
    std::vector<Expv> colon = gens;
    for (auto& g : colon)
        if (g[pivot] > 0) --g[pivot];
    return zAdd(hilbNum(std::move(plus), nvars), zShift(hilbNum(std::move(colon), nvars)));
}

long long toLL(const Integer& z) {
    if (!z.fits_slong_p()) throw AuditError("hilbert: degree exceeds machine range");
    return static_cast<long long>(z.get_si());
}

} // namespace

HilbertSummary hilbert(const Ideal& I) {
    const int nvars = I.ring()->nvars();
    for (const auto& g : I.gens())
        if (!g.isHomogeneous()) throw UsageError("hilbert: inhomogeneous generator " + g.str());
    if (I.isZero()) return HilbertSummary{nvars - 1, 1};
    auto gb = groebner(I, MonomialOrder::grevlexOrder());
    if (gb->isUnit()) return HilbertSummary{-1, 0};
    std::vector<Expv> leads;
    for (const auto& p : gb->polys) leads.push_back(p.leadTerm().m.exps());
    ZPoly num = hilbNum(std::move(leads), nvars);
    int strips = 0;
    while (!num.empty() && zAtOne(num) == 0) {
        num = zDivOneMinusT(num);
        ++strips;
    }
    if (num.empty()) throw AuditError("hilbert: vanishing numerator for proper ideal");
    const int krull = nvars - strips;
    if (krull < 0) throw AuditError("hilbert: negative Krull dimension");
    if (krull == 0) return HilbertSummary{-1, 0};
    return HilbertSummary{krull - 1, toLL(zAtOne(num))};
}

long long countStandardMonomialsUpTo(const std::vector<Monomial>& leads, int nvars,
                                     int degBound) {
    if (degBound <= 0) return 0;
    std::vector<Expv> gens;
    for (const auto& m : leads) gens.push_back(m.exps());
    minimalize(gens);
    if (!gens.empty() && degOf(gens.front()) == 0) return 0;
    // Bucket generators by their largest support variable: while filling
    // exponents from variable 0 upward, a generator can first divide the
    // partial monomial once every variable in its support is fixed.
    std::vector<std::vector<Expv>> byLast(nvars);
    for (const auto& g : gens) {
        int last = 0;
        for (int v = 0; v < nvars; ++v)
            if (g[v] > 0) last = v;
        byLast[last].push_back(g);
    }
    long long count = 0;
    Expv cur(nvars, 0);
    // DFS over exponent vectors of total degree < degBound, pruning any
    // branch whose prefix is already divisible by a generator.
    auto rec = [&](auto&& self, int var, int degLeft) -> void {
        if (var == nvars) {
            ++count;
            return;
        }
        for (int e = 0; e <= degLeft; ++e) {
            cur[var] = e;
            bool blocked = false;
            for (const auto& g : byLast[var])
                if (dividesExp(g, cur)) {
                    blocked = true;
                    break;
                }
            if (!blocked) self(self, var + 1, degLeft - e);
            if (blocked && e < degLeft) {
                // larger exponents stay divisible by the same generator
                break;
            }
        }
        cur[var] = 0;
    };
    rec(rec, 0, degBound - 1);
    return count;
}

} // namespace svi
