#include "svi/errors.hpp"
#include "svi/ideal.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace svi {

Ideal::Ideal(RingPtr ring, std::vector<Poly> gens) : ring_(std::move(ring)) {
    for (auto& g : gens) {
        if (g.isZero()) continue;
        if (!sameRing(g.ring(), ring_)) throw UsageError("ideal generator ring mismatch");
        gens_.push_back(std::move(g));
    }
}

Ideal Ideal::unit(const RingPtr& ring) {
    return Ideal(ring, {Poly::constant(ring, Rational(1))});
}

bool GroebnerBasis::isUnit() const {
    return polys.size() == 1 && polys[0].isConstant() && !polys[0].isZero();
}

namespace {

using Terms = std::vector<Term>;

struct GItem {
    Terms t; // descending under the active order, primitive integer form
    bool single = false;
    const Monomial& lead() const { return t.front().m; }
    const Rational& lc() const { return t.front().c; }
};

Terms toTerms(const Poly& p, const MonomialOrder& ord) {
    Terms ts = p.terms();
    std::sort(ts.begin(), ts.end(),
              [&](const Term& a, const Term& b) { return ord.greater(a.m, b.m); });
    return ts;
}

struct MonoGreater {
    MonomialOrder ord;
    bool operator()(const Monomial& a, const Monomial& b) const {
        return ord.compare(a, b) > 0;
    }
};

// Full division: every term of the remainder is irreducible modulo the leads
// of G. Reducer choice: first basis element (in list order) whose lead
// divides the current head; G is kept in a deterministic order throughout.
//
// Arithmetic runs over the integers (reducers are primitive integer form);
// instead of dividing by reducer leads, the whole work polynomial is scaled
// up, and the accumulated scale is divided back out at the end, so the
// returned remainder is the exact rational one.
Terms reduceFull(const Terms& curIn, const std::vector<GItem>& G, const MonomialOrder& ord) {
    Integer den = 1;
    for (const auto& t : curIn) den = lcm(den, t.c.get_den());
    Rational scale(den); // (acc, rem) = scale * true value
    std::map<Monomial, Integer, MonoGreater> acc{MonoGreater{ord}};
    for (const auto& t : curIn) {
        Integer v = t.c.get_num() * (den / t.c.get_den());
        if (v != 0) acc.emplace(t.m, std::move(v));
    }
    std::vector<std::pair<Monomial, Integer>> rem;
    int compressCountdown = 64;
    while (!acc.empty()) {
        auto headIt = acc.begin();
        const GItem* red = nullptr;
        for (const auto& g : G)
            if (g.lead().divides(headIt->first)) {
                red = &g;
                break;
            }
        if (!red) {
            rem.emplace_back(headIt->first, std::move(headIt->second));
            acc.erase(headIt);
            continue;
        }
        const Monomial headM = headIt->first;
        Integer headC = std::move(headIt->second);
        acc.erase(headIt);
        const Integer rl = red->lc().get_num(); // primitive integer, positive
        Integer g0 = gcd(headC, rl);
        Integer mult = rl / g0; // positive: no sign flips enter the scale
        Integer quot = headC / g0;
        if (mult != 1) {
            for (auto& [m, v] : acc) v *= mult;
            for (auto& [m, v] : rem) v *= mult;
            scale *= Rational(mult);
        }
        const Monomial shift = headM.dividedBy(red->lead());
        auto it = red->t.begin();
        for (++it; it != red->t.end(); ++it) { // lead cancels by construction
            Integer delta = quot * it->c.get_num();
            auto [pos, inserted] = acc.try_emplace(it->m.times(shift), 0);
            pos->second -= delta;
            if (pos->second == 0) acc.erase(pos);
        }
        if (--compressCountdown == 0) {
            compressCountdown = 64;
            Integer content = 0;
            for (const auto& [m, v] : acc) content = gcd(content, v);
            for (const auto& [m, v] : rem) content = gcd(content, v);
            if (content > 1) {
                for (auto& [m, v] : acc) v /= content;
                for (auto& [m, v] : rem) v /= content;
                scale /= Rational(content);
            }
        }
    }
    Terms out;
    out.reserve(rem.size());
    for (auto& [m, v] : rem) out.push_back(Term{m, Rational(v) / scale});
    return out;
}

Terms spoly(const GItem& f, const GItem& g, const MonomialOrder& ord) {
    Monomial l = Monomial::lcm(f.lead(), g.lead());
    Integer lf = f.lc().get_num(), lg = g.lc().get_num();
    Integer g0 = gcd(lf, lg);
    Terms a = terms::scale(f.t, Rational(Integer(lg / g0)), l.dividedBy(f.lead()));
    Terms b = terms::scale(g.t, Rational(Integer(-(lf / g0))), l.dividedBy(g.lead()));
    return terms::add(a, b, ord);
}

struct Pair {
    int i, j;
    Monomial l;
};

struct Engine {
    const MonomialOrder ord;
    std::vector<GItem> G;
    std::vector<Pair> P;

    explicit Engine(MonomialOrder o) : ord(o) {}

    // Gebauer-Moeller update for a freshly appended basis element.
    void update(int t) {
        const Monomial& lt = G[t].lead();
        struct Cand {
            int i;
            Monomial l;
            bool alive = true;
        };
        std::vector<Cand> cands;
        cands.reserve(t);
        for (int i = 0; i < t; ++i) {
            if (G[i].single && G[t].single) continue; // S-polynomial is identically zero
            cands.push_back({i, Monomial::lcm(G[i].lead(), lt)});
        }
        // Chain discard among the new pairs: drop a candidate whose lcm is a
        // proper multiple of another candidate's lcm.
        for (auto& a : cands) {
            for (const auto& b : cands) {
                if (a.i == b.i || !b.alive) continue;
                if (b.l != a.l && b.l.divides(a.l)) {
                    a.alive = false;
                    break;
                }
            }
        }
        // Equal-lcm classes: keep a single representative, or none when some
        // member has coprime leads (its S-polynomial reduces trivially).
        for (size_t x = 0; x < cands.size(); ++x) {
            if (!cands[x].alive) continue;
            bool coprimeInClass = Monomial::coprime(G[cands[x].i].lead(), lt);
            for (size_t y = x + 1; y < cands.size(); ++y) {
                if (!cands[y].alive || cands[y].l != cands[x].l) continue;
                cands[y].alive = false;
                coprimeInClass = coprimeInClass || Monomial::coprime(G[cands[y].i].lead(), lt);
            }
            if (coprimeInClass) cands[x].alive = false;
        }
        // Chain discard against the old pair set.
        std::vector<Pair> kept;
        kept.reserve(P.size());
        for (auto& p : P) {
            bool drop = lt.divides(p.l) && Monomial::lcm(G[p.i].lead(), lt) != p.l &&
                        Monomial::lcm(G[p.j].lead(), lt) != p.l;
            if (!drop) kept.push_back(std::move(p));
        }
        P = std::move(kept);
        for (auto& c : cands)
            if (c.alive) P.push_back(Pair{c.i, t, std::move(c.l)});
    }

    void add(Terms h) {
        if (h.empty()) return;
        terms::makePrimitive(h);
        GItem item;
        item.single = h.size() == 1;
        item.t = std::move(h);
        G.push_back(std::move(item));
        update(static_cast<int>(G.size()) - 1);
    }

    size_t selectPair() const {
        size_t best = 0;
        for (size_t k = 1; k < P.size(); ++k) {
            const Monomial &a = P[k].l, &b = P[best].l;
            int c = ord.compare(a, b);
            bool better = c < 0 || (c == 0 && (P[k].i < P[best].i ||
                                               (P[k].i == P[best].i && P[k].j < P[best].j)));
            if (better) best = k;
        }
        return best;
    }

    void run() {
        while (!P.empty()) {
            size_t k = selectPair();
            Pair p = std::move(P[k]);
            P.erase(P.begin() + static_cast<long>(k));
            Terms r = reduceFull(spoly(G[p.i], G[p.j], ord), G, ord);
            add(std::move(r));
        }
    }

    std::vector<Poly> reducedBasis(const RingPtr& ring) {
        // Minimalize: among leads sorted ascending, keep only those not
        // divisible by an earlier kept lead.
        std::vector<int> idx(G.size());
        for (size_t i = 0; i < G.size(); ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            int c = ord.compare(G[a].lead(), G[b].lead());
            if (c != 0) return c < 0;
            return a < b;
        });
        std::vector<int> kept;
        for (int i : idx) {
            bool dominated = false;
            for (int j : kept) {
                if (G[j].lead().divides(G[i].lead())) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) kept.push_back(i);
        }
        // Tail-reduce each kept element against the others; leads are
        // pairwise indivisible so full reduction below only rewrites tails.
        std::vector<GItem> minimal;
        minimal.reserve(kept.size());
        for (int i : kept) minimal.push_back(G[i]);
        std::vector<Poly> out;
        out.reserve(minimal.size());
        for (size_t i = 0; i < minimal.size(); ++i) {
            std::vector<GItem> others;
            others.reserve(minimal.size() - 1);
            for (size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            Terms r = reduceFull(minimal[i].t, others, ord);
            if (r.empty()) throw AuditError("minimal basis element reduced to zero");
            Rational lc = r.front().c;
            for (auto& t : r) t.c /= lc;
            out.push_back(Poly::fromTerms(ring, std::move(r)));
        }
        return out;
    }
};

std::string cacheKey(const Ideal& I, const MonomialOrder& ord) {
    std::ostringstream os;
    os << ord.tag() << '|';
    for (const auto& n : I.ring()->names()) os << n << ',';
    os << '|';
    std::vector<std::string> gs;
    gs.reserve(I.gens().size());
    for (const auto& g : I.gens()) gs.push_back(g.str());
    std::sort(gs.begin(), gs.end());
    gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
    for (const auto& s : gs) os << s << ';';
    return os.str();
}

std::mutex g_cacheMutex;
std::map<std::string, std::shared_ptr<const GroebnerBasis>> g_cache;

} // namespace

std::size_t gbCacheSize() {
    std::lock_guard<std::mutex> lock(g_cacheMutex);
    return g_cache.size();
}

std::shared_ptr<const GroebnerBasis> groebner(const Ideal& I, const MonomialOrder& ord) {
    const std::string key = cacheKey(I, ord);
    {
        std::lock_guard<std::mutex> lock(g_cacheMutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) return it->second;
    }
    Engine eng(ord);
    // Deterministic seeding order: by lead ascending, then by printed form.
    std::vector<Poly> gens = I.gens();
    std::vector<std::pair<std::string, size_t>> keyed(gens.size());
    std::vector<Terms> tss(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        tss[i] = toTerms(gens[i], ord);
        keyed[i] = {gens[i].str(), i};
    }
    std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
        int c = ord.compare(tss[a.second].front().m, tss[b.second].front().m);
        if (c != 0) return c < 0;
        return a.first < b.first;
    });
    for (const auto& [s, i] : keyed) eng.add(reduceFull(tss[i], eng.G, ord));
    eng.run();

    auto gb = std::make_shared<GroebnerBasis>();
    gb->ring = I.ring();
    gb->order = ord;
    gb->polys = eng.reducedBasis(I.ring());
    std::lock_guard<std::mutex> lock(g_cacheMutex);
    auto [it, inserted] = g_cache.emplace(key, gb);
    return it->second;
}

Poly normalForm(const Poly& f, const GroebnerBasis& gb) {
    if (!sameRing(f.ring(), gb.ring)) throw UsageError("normalForm: ring mismatch");
    std::vector<GItem> G;
    G.reserve(gb.polys.size());
    for (const auto& p : gb.polys) {
        GItem it;
        it.t = toTerms(p, gb.order);
        terms::makePrimitive(it.t); // remainder is invariant under reducer scaling
        it.single = it.t.size() == 1;
        G.push_back(std::move(it));
    }
    Terms r = reduceFull(toTerms(f, gb.order), G, gb.order);
    return Poly::fromTerms(f.ring(), std::move(r));
}

bool certifyGroebner(const GroebnerBasis& gb) {
    std::vector<GItem> G;
    for (const auto& p : gb.polys) {
        GItem it;
        it.t = toTerms(p, gb.order);
        terms::makePrimitive(it.t);
        it.single = it.t.size() == 1;
        G.push_back(std::move(it));
    }
    for (size_t i = 0; i < G.size(); ++i)
        for (size_t j = i + 1; j < G.size(); ++j)
            if (!reduceFull(spoly(G[i], G[j], gb.order), G, gb.order).empty()) return false;
    return true;
}

Poly divideExact(const Poly& f, const Poly& g) {
    if (g.isZero()) throw AuditError("division by zero polynomial");
    const MonomialOrder ord = MonomialOrder::grevlexOrder();
    GItem item;
    item.t = toTerms(g, ord);
    item.single = item.t.size() == 1;
    Terms cur = toTerms(f, ord);
    Terms q;
    while (!cur.empty()) {
        const Term& head = cur.front();
        if (!item.lead().divides(head.m))
            throw AuditError("inexact polynomial division");
        Term factor{head.m.dividedBy(item.lead()), head.c / item.lc()};
        q.push_back(factor);
        cur = terms::add(cur, terms::scale(item.t, -factor.c, factor.m), ord);
    }
    return Poly::fromTerms(f.ring(), std::move(q));
}

} // namespace svi
