#include "svi/ring.hpp"

#include "svi/errors.hpp"

#include <algorithm>
#include <numeric>

namespace svi {

PolyRing::PolyRing(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw UsageError("ring needs at least one variable");
}

RingPtr PolyRing::make(std::vector<std::string> names) {
    return std::make_shared<PolyRing>(std::move(names));
}

RingPtr PolyRing::projective(int n) {
    if (n < 0) throw UsageError("projective ring needs n >= 0");
    std::vector<std::string> names;
    names.reserve(n + 1);
    for (int i = 0; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return make(std::move(names));
}

RingPtr PolyRing::join(int n, int r) {
    if (n < 0 || r < 1) throw UsageError("join ring needs n >= 0, r >= 1");
    std::vector<std::string> names;
    names.reserve((n + 1) * r);
    for (int j = 1; j <= r; ++j)
        for (int i = 0; i <= n; ++i)
            names.push_back("x" + std::to_string(i) + "_" + std::to_string(j));
    return make(std::move(names));
}

int PolyRing::indexOf(const std::string& nm) const {
    for (int i = 0; i < nvars(); ++i)
        if (names_[i] == nm) return i;
    return -1;
}

bool sameRing(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->sameAs(*b);
}

Monomial::Monomial(std::vector<int> exps) : e_(std::move(exps)) {
    for (int x : e_) {
        if (x < 0) throw AuditError("negative exponent in monomial");
        deg_ += x;
    }
}

Monomial Monomial::one(int nvars) { return Monomial(std::vector<int>(nvars, 0)); }

Monomial Monomial::variable(int nvars, int i, int power) {
    std::vector<int> e(nvars, 0);
    e[i] = power;
    return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
    if (deg_ > other.deg_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > other.e_[i]) return false;
    return true;
}

Monomial Monomial::times(const Monomial& other) const {
    std::vector<int> e(e_.size());
    for (size_t i = 0; i < e_.size(); ++i) e[i] = e_[i] + other.e_[i];
    return Monomial(std::move(e));
}

Monomial Monomial::dividedBy(const Monomial& other) const {
    std::vector<int> e(e_.size());
    for (size_t i = 0; i < e_.size(); ++i) {
        e[i] = e_[i] - other.e_[i];
        if (e[i] < 0) throw AuditError("inexact monomial division");
    }
    return Monomial(std::move(e));
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    std::vector<int> e(a.e_.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = std::max(a.e_[i], b.e_[i]);
    return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.e_.size(); ++i)
        if (a.e_[i] > 0 && b.e_[i] > 0) return false;
    return true;
}

namespace {

// grevlex on the index range [lo, hi): higher total degree wins; on ties the
// monomial with the smaller exponent in the last differing position wins.
int cmpGrevlexRange(const Monomial& a, const Monomial& b, int lo, int hi) {
    long da = 0, db = 0;
    for (int i = lo; i < hi; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (int i = hi - 1; i >= lo; --i) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

} // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    const int n = a.nvars();
    if (n != b.nvars()) throw AuditError("monomial order: mixed variable counts");
    switch (kind) {
    case Kind::grevlex:
        return cmpGrevlexRange(a, b, 0, n);
    case Kind::lex:
        for (int i = 0; i < n; ++i)
            if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
    case Kind::block: {
        if (front <= 0 || front >= n) throw AuditError("block order: bad front size");
        int c = cmpGrevlexRange(a, b, 0, front);
        if (c != 0) return c;
        return cmpGrevlexRange(a, b, front, n);
    }
    }
    return 0;
}

std::string MonomialOrder::tag() const {
    switch (kind) {
    case Kind::grevlex: return "grevlex";
    case Kind::lex: return "lex";
    case Kind::block: return "block" + std::to_string(front);
    }
    return "?";
}

} // namespace svi
