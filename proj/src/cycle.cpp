#include "svi/cycle.hpp"
#include "svi/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace svi {

namespace {

std::string idealKey(const Ideal& I) {
    std::string k;
    for (const auto& g : I.gens()) {
        k += g.str();
        k += ';';
    }
    return k;
}

// Rank of the coefficient matrix of linear forms, by exact elimination.
int linearRank(const std::vector<Poly>& forms, int ncols) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& f : forms) {
        std::vector<Rational> row(ncols, Rational(0));
        for (const auto& t : f.terms())
            for (int i = 0; i < ncols; ++i)
                if (t.m[i] == 1) row[i] = t.c;
        rows.push_back(std::move(row));
    }
    int rank = 0;
    for (int col = 0; col < ncols && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Rational f = rows[r][col] / rows[rank][col];
            for (int j = col; j < ncols; ++j) rows[r][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace

std::optional<Chunk> chunkFromUnmixed(const Ideal& I, long long coeff) {
    if (coeff <= 0) throw UsageError("chunk coefficient must be positive");
    Ideal canon = canonicalIdeal(I);
    HilbertSummary hs = hilbert(canon);
    if (hs.dim < 0) return std::nullopt;
    Chunk c;
    c.ring = canon.ring();
    c.ideal = std::move(canon);
    c.coeff = coeff;
    c.dim = hs.dim;
    c.hdeg = hs.degree;
    return c;
}

std::optional<Chunk> makeChunkValidated(const Ideal& I, long long coeff) {
    if (coeff <= 0) throw UsageError("component coefficient must be positive");
    Ideal canon = canonicalIdeal(I);
    if (!canon.isZero()) {
        if (idealIsUnit(canon)) throw UsageError("component ideal defines the empty scheme");
        Ideal hull = equidimHull(canon);
        if (hull.gens() != canon.gens())
            throw UsageError("component ideal is not unmixed (differs from its hull)");
    }
    return chunkFromUnmixed(canon, coeff);
}

Cycle makeCycle(const RingPtr& ring, std::vector<Chunk> chunks) {
    std::vector<Chunk> merged;
    for (auto& c : chunks) {
        if (!sameRing(c.ring, ring)) throw UsageError("cycle chunk from a different ring");
        bool found = false;
        for (auto& m : merged)
            if (m.ideal.gens() == c.ideal.gens()) {
                m.coeff += c.coeff;
                found = true;
                break;
            }
        if (!found) merged.push_back(std::move(c));
    }
    std::sort(merged.begin(), merged.end(), [](const Chunk& a, const Chunk& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return idealKey(a.ideal) < idealKey(b.ideal);
    });
    Cycle out;
    out.ring = ring;
    out.chunks = std::move(merged);
    return out;
}

Cycle makeHypersurface(const Poly& F, long long coeff) {
    if (F.isZero()) throw UsageError("hypersurface: zero polynomial");
    if (F.isConstant()) throw UsageError("hypersurface: constant polynomial");
    if (!F.isHomogeneous()) throw UsageError("hypersurface: inhomogeneous polynomial " + F.str());
    auto c = chunkFromUnmixed(Ideal(F.ring(), {F}), coeff);
    if (!c || c->dim != F.ring()->nvars() - 2)
        throw AuditError("hypersurface chunk has wrong dimension");
    return makeCycle(F.ring(), {*c});
}

Cycle makeLinearSpace(const RingPtr& ring, const std::vector<Poly>& forms) {
    if (forms.empty()) return makeFullSpace(ring);
    for (const auto& f : forms) {
        if (!sameRing(f.ring(), ring)) throw UsageError("linear space: ring mismatch");
        if (f.isZero() || f.totalDegree() != 1 || !f.isHomogeneous())
            throw UsageError("linear space: form is not linear: " + f.str());
    }
    const int k = static_cast<int>(forms.size());
    if (linearRank(forms, ring->nvars()) < k) throw UsageError("linear space: dependent forms");
    if (k >= ring->nvars()) throw UsageError("linear space: forms cut out the empty set");
    auto c = chunkFromUnmixed(Ideal(ring, forms), 1);
    if (!c || c->dim != ring->nvars() - 1 - k || c->hdeg != 1)
        throw AuditError("linear space chunk has wrong invariants");
    return makeCycle(ring, {*c});
}

Cycle makePoint(const RingPtr& ring, const ProjPoint& p) {
    if (p.ambient() != ring->nvars() - 1) throw UsageError("point: ambient mismatch");
    const int piv = p.pivot();
    std::vector<Poly> gens;
    for (int i = 0; i < ring->nvars(); ++i) {
        if (i == piv) continue;
        gens.push_back(Poly::variable(ring, i) -
                       Poly::variable(ring, piv).scaled(p.coords()[i]));
    }
    auto c = chunkFromUnmixed(Ideal(ring, std::move(gens)), 1);
    if (!c || c->dim != 0 || c->hdeg != 1) throw AuditError("point chunk has wrong invariants");
    return makeCycle(ring, {*c});
}

Cycle makeFullSpace(const RingPtr& ring) {
    auto c = chunkFromUnmixed(Ideal::zero(ring), 1);
    if (!c || c->dim != ring->nvars() - 1 || c->hdeg != 1)
        throw AuditError("full space chunk has wrong invariants");
    return makeCycle(ring, {*c});
}

bool pointOnSupport(const Ideal& I, const ProjPoint& p) {
    if (p.ambient() != I.ring()->nvars() - 1) throw UsageError("point: ambient mismatch");
    for (const auto& g : I.gens())
        if (g.evaluate(p.coords()) != 0) return false;
    return true;
}

bool pointOnSupport(const Cycle& c, const ProjPoint& p) {
    for (const auto& ch : c.chunks)
        if (pointOnSupport(ch.ideal, p)) return true;
    return false;
}

Ideal supportIdeal(const Cycle& c) {
    if (c.isZero()) return Ideal::unit(c.ring);
    Ideal acc = c.chunks[0].ideal;
    for (size_t i = 1; i < c.chunks.size(); ++i) acc = intersectIdeals(acc, c.chunks[i].ideal);
    return acc;
}

long long chunkMultiplicityAt(const Chunk& c, const ProjPoint& x) {
    if (!pointOnSupport(c.ideal, x)) return 0;
    const int piv = x.pivot();
    RingPtr aff = chartRing(c.ring, piv);
    const int n = aff->nvars();
    std::vector<Poly> images;
    for (int j = 0; j < n; ++j) {
        int projVar = j < piv ? j : j + 1;
        images.push_back(Poly::variable(aff, j) + Poly::constant(aff, x.coords()[projVar]));
    }
    std::vector<Poly> base;
    for (const auto& g : c.ideal.gens())
        base.push_back(dehomogenize(g, piv, aff).substitute(aff, images));
    const int d = c.dim;
    std::vector<long long> H;
    for (int s = 1; s <= 40; ++s) {
        std::vector<Poly> gens = base;
        // all monomials of total degree s: the s-th power of the origin's
        // maximal ideal, making the colength finite and local
        std::vector<int> e(n, 0);
        auto emit = [&](auto&& self, int var, int left) -> void {
            if (var == n - 1) {
                e[var] = left;
                gens.push_back(Poly::fromTerms(aff, {Term{Monomial(e), Rational(1)}}));
                e[var] = 0;
                return;
            }
            for (int v = 0; v <= left; ++v) {
                e[var] = v;
                self(self, var + 1, left - v);
            }
            e[var] = 0;
        };
        if (n == 0) throw UsageError("multiplicity in a point ambient");
        emit(emit, 0, s);
        auto gb = groebner(Ideal(aff, std::move(gens)), MonomialOrder::grevlexOrder());
        std::vector<Monomial> leads;
        for (const auto& p : gb->polys) leads.push_back(p.leadTerm().m);
        H.push_back(countStandardMonomialsUpTo(leads, n, s));
        if (static_cast<int>(H.size()) >= d + 3) {
            std::vector<long long> diff = H;
            for (int r = 0; r < d; ++r)
                for (size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
            diff.resize(H.size() - d);
            size_t m = diff.size();
            if (m >= 3 && diff[m - 1] == diff[m - 2] && diff[m - 2] == diff[m - 3]) {
                if (diff[m - 1] <= 0)
                    throw AuditError("multiplicity stabilized to a nonpositive value");
                return diff[m - 1];
            }
        }
    }
    throw StabilizationError("multiplicity did not stabilize by s = 40");
}

long long multiplicityAt(const Cycle& c, const ProjPoint& x) {
    long long total = 0;
    for (const auto& ch : c.chunks) total += ch.coeff * chunkMultiplicityAt(ch, x);
    return total;
}

std::pair<std::optional<Chunk>, std::optional<Chunk>> splitBy(const Chunk& c, const Ideal& Z) {
    if (!sameRing(c.ring, Z.ring())) throw UsageError("split: ring mismatch");
    Ideal outIdeal = saturate(c.ideal, Z);
    if (idealIsUnit(outIdeal)) return {c, std::nullopt};
    if (outIdeal.gens() == c.ideal.gens()) return {std::nullopt, c};
    // A quotient of an unmixed ideal is unmixed (its primary components are a
    // subset of reworked components of the same dimension), so no hull here.
    Ideal insideRaw = quotient(c.ideal, outIdeal);
    if (idealIsUnit(insideRaw)) return {std::nullopt, c};
    auto inside = chunkFromUnmixed(insideRaw, c.coeff);
    auto outside = chunkFromUnmixed(outIdeal, c.coeff);
    if (!inside || !outside) throw AuditError("split: empty part in a proper split");
    if (inside->dim != c.dim || outside->dim != c.dim)
        throw AuditError("split: part dimension differs from input");
    if (inside->hdeg + outside->hdeg != c.hdeg)
        throw AuditError("split: degree additivity violated");
    return {inside, outside};
}

Chunk cutWithHypersurface(const Chunk& c, const Poly& h) {
    if (!sameRing(c.ring, h.ring())) throw UsageError("cut: ring mismatch");
    if (h.isZero() || h.isConstant() || !h.isHomogeneous())
        throw UsageError("cut: divisor must be a nonconstant homogeneous form");
    if (c.dim < 1) throw UsageError("cut: chunk must have positive dimension");
    if (!isNzd(c.ideal, h)) throw GenericityError("improper cut: divisor vanishes on a component");
    Ideal sum = idealSum(c.ideal, Ideal(c.ring, {h}));
    auto out = chunkFromUnmixed(equidimHull(sum), c.coeff);
    if (!out) throw AuditError("cut: empty result from a proper cut");
    if (out->dim != c.dim - 1) throw AuditError("cut: dimension did not drop by 1");
    if (out->hdeg != c.hdeg * h.totalDegree()) throw AuditError("cut: degree not multiplied by deg h");
    return *out;
}

Chunk cutWithDivisor(const Chunk& c, const Poly& h) {
    if (!h.isZero() && h.totalDegree() != 1)
        throw UsageError("divisor cut: form must be linear");
    return cutWithHypersurface(c, h);
}

std::map<int, long long> cycleDegree(const Cycle& c) {
    std::map<int, long long> out;
    for (const auto& ch : c.chunks) out[ch.dim] += ch.degree();
    return out;
}

long long cycleTotalDegree(const Cycle& c) {
    long long t = 0;
    for (const auto& ch : c.chunks) t += ch.degree();
    return t;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct SrcLine {
    int no;
    std::string text;
};

std::vector<SrcLine> meaningfulLines(const std::string& text) {
    std::vector<SrcLine> out;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        size_t b = raw.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = raw.find_last_not_of(" \t\r");
        out.push_back({no, raw.substr(b, e - b + 1)});
    }
    return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

std::string firstWord(const std::string& s) {
    size_t e = s.find_first_of(" \t");
    return e == std::string::npos ? s : s.substr(0, e);
}

std::string restAfterWord(const std::string& s) {
    size_t e = s.find_first_of(" \t");
    if (e == std::string::npos) return "";
    size_t b = s.find_first_not_of(" \t", e);
    return b == std::string::npos ? "" : s.substr(b);
}

bool isKeyword(const std::string& w) {
    return w == "ambient" || w == "component" || w == "point" || w == "hypersurface" ||
           w == "linear" || w == "full";
}

// Largest x<k> index with k a bare integer suffix (x3 yes, x3_1 no, ax3 no).
std::optional<int> maxVarIndex(const std::string& s) {
    std::optional<int> best;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] != 'x') continue;
        if (i > 0 && (std::isalnum(static_cast<unsigned char>(s[i - 1])) || s[i - 1] == '_'))
            continue;
        size_t j = i + 1;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i + 1) continue;
        if (j < s.size() && (std::isalpha(static_cast<unsigned char>(s[j])) || s[j] == '_'))
            continue;
        int v = std::stoi(s.substr(i + 1, j - i - 1));
        if (!best || v > *best) best = v;
        i = j - 1;
    }
    return best;
}

long long parseCoeffToken(const std::string& tok, int line) {
    if (tok.rfind("coeff=", 0) != 0) fail(line, "expected coeff=<k>, got '" + tok + "'");
    const std::string num = tok.substr(6);
    if (num.empty() || num.find_first_not_of("0123456789-") != std::string::npos)
        fail(line, "bad coefficient '" + num + "'");
    long long k = 0;
    try {
        k = std::stoll(num);
    } catch (const std::exception&) {
        fail(line, "bad coefficient '" + num + "'");
    }
    if (k <= 0) fail(line, "coefficient must be positive");
    return k;
}

std::vector<std::string> splitForms(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ';' || ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

Poly parsePolyAt(const RingPtr& ring, const std::string& text, int line) {
    try {
        return Poly::parse(ring, text);
    } catch (const ParseError& e) {
        fail(line, e.what());
    }
}

} // namespace

std::optional<int> scanAmbient(const std::string& text) {
    std::optional<int> result;
    for (const auto& ln : meaningfulLines(text)) {
        std::string w = firstWord(ln.text);
        if (w == "ambient") {
            const std::string rest = restAfterWord(ln.text);
            try {
                return std::stoi(rest); // header is authoritative
            } catch (const std::exception&) {
                fail(ln.no, "bad ambient '" + rest + "'");
            }
        }
        std::optional<int> cand;
        if (w == "point") {
            try {
                cand = ProjPoint::parse(restAfterWord(ln.text)).ambient();
            } catch (const ParseError&) {
                cand = std::nullopt; // reported properly during the real parse
            }
        } else if (w != "full") {
            cand = maxVarIndex(w == "hypersurface" || w == "linear" ? restAfterWord(ln.text)
                                                                    : ln.text);
        }
        if (cand && (!result || *cand > *result)) result = cand;
    }
    return result;
}

Cycle parseCycleText(const std::string& text, std::optional<int> forcedAmbient) {
    const std::vector<SrcLine> lines = meaningfulLines(text);
    std::optional<int> ambient = forcedAmbient;
    for (const auto& ln : lines) {
        if (firstWord(ln.text) != "ambient") continue;
        const std::string rest = restAfterWord(ln.text);
        int n = -1;
        try {
            n = std::stoi(rest);
        } catch (const std::exception&) {
            fail(ln.no, "bad ambient '" + rest + "'");
        }
        if (n < 0) fail(ln.no, "ambient must be nonnegative");
        if (ambient && *ambient != n)
            fail(ln.no, "ambient " + std::to_string(n) + " conflicts with ambient " +
                            std::to_string(*ambient));
        ambient = n;
    }
    if (!ambient) ambient = scanAmbient(text);
    if (!ambient) throw ParseError("cannot determine the ambient dimension");
    RingPtr ring = PolyRing::projective(*ambient);

    std::vector<Chunk> chunks;
    auto addChunk = [&](std::optional<Chunk> c) {
        if (c) chunks.push_back(std::move(*c));
    };
    size_t i = 0;
    while (i < lines.size()) {
        const SrcLine& ln = lines[i];
        const std::string w = firstWord(ln.text);
        const std::string rest = restAfterWord(ln.text);
        if (!isKeyword(w)) fail(ln.no, "expected a statement, got '" + ln.text + "'");
        try {
            if (w == "ambient") {
                ++i;
            } else if (w == "point") {
                Cycle p = makePoint(ring, ProjPoint::parse(rest));
                addChunk(p.chunks[0]);
                ++i;
            } else if (w == "full") {
                if (!rest.empty()) fail(ln.no, "unexpected text after 'full'");
                addChunk(makeFullSpace(ring).chunks[0]);
                ++i;
            } else if (w == "hypersurface") {
                std::string body = rest;
                long long coeff = 1;
                if (body.rfind("coeff=", 0) == 0) {
                    const std::string tok = firstWord(body);
                    coeff = parseCoeffToken(tok, ln.no);
                    body = restAfterWord(body);
                }
                if (body.empty()) fail(ln.no, "hypersurface needs a polynomial");
                addChunk(makeHypersurface(parsePolyAt(ring, body, ln.no), coeff).chunks[0]);
                ++i;
            } else if (w == "linear") {
                std::vector<Poly> forms;
                for (const auto& part : splitForms(rest)) forms.push_back(parsePolyAt(ring, part, ln.no));
                addChunk(makeLinearSpace(ring, forms).chunks[0]);
                ++i;
            } else { // component
                long long coeff = 1;
                if (!rest.empty()) coeff = parseCoeffToken(firstWord(rest), ln.no);
                std::vector<Poly> gens;
                ++i;
                while (i < lines.size() && !isKeyword(firstWord(lines[i].text))) {
                    Poly g = parsePolyAt(ring, lines[i].text, lines[i].no);
                    if (!g.isZero() && !g.isHomogeneous())
                        fail(lines[i].no, "inhomogeneous generator " + g.str());
                    gens.push_back(std::move(g));
                    ++i;
                }
                addChunk(makeChunkValidated(Ideal(ring, std::move(gens)), coeff));
            }
        } catch (const ParseError&) {
            throw;
        } catch (const UsageError& e) {
            fail(ln.no, e.what());
        }
    }
    return makeCycle(ring, std::move(chunks));
}

std::string cycleToText(const Cycle& c) {
    std::string out = "ambient " + std::to_string(c.ring->nvars() - 1) + "\n";
    for (const auto& ch : c.chunks) {
        out += "component coeff=" + std::to_string(ch.coeff) + "\n";
        for (const auto& g : ch.ideal.gens()) out += g.str() + "\n";
    }
    return out;
}

} // namespace svi
