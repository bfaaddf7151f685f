#pragma once

#include "svi/rational.hpp"
#include "svi/ring.hpp"

#include <string>
#include <vector>

namespace svi {

struct Term {
    Monomial m;
    Rational c;
};

namespace terms {
// Shared term-vector algebra. Vectors are kept strictly descending under the
// given order with no zero coefficients.
std::vector<Term> normalize(std::vector<Term> ts, const MonomialOrder& ord);
std::vector<Term> add(const std::vector<Term>& a, const std::vector<Term>& b,
                      const MonomialOrder& ord);
std::vector<Term> scale(const std::vector<Term>& a, const Rational& c, const Monomial& m);
std::vector<Term> mul(const std::vector<Term>& a, const std::vector<Term>& b,
                      const MonomialOrder& ord);
// Integer coefficients, content 1, positive leading coefficient.
void makePrimitive(std::vector<Term>& ts);
} // namespace terms

// Sparse polynomial; terms stored descending under grevlex (the canonical
// storage and printing order, independent of any computation order).
class Poly {
public:
    Poly() = default; // zero with no ring; only for containers

    static Poly zero(const RingPtr& ring);
    static Poly constant(const RingPtr& ring, const Rational& c);
    static Poly variable(const RingPtr& ring, int i);
    static Poly fromTerms(const RingPtr& ring, std::vector<Term> ts);

    const RingPtr& ring() const { return ring_; }
    bool isZero() const { return t_.empty(); }
    bool isConstant() const;
    const std::vector<Term>& terms() const { return t_; }
    const Term& leadTerm() const; // grevlex leading term
    int totalDegree() const;      // -1 for the zero polynomial
    bool isHomogeneous() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rational& c) const;
    Poly pow(unsigned e) const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Rational evaluate(const std::vector<Rational>& coords) const;
    // Image under the ring map sending variable i to images[i].
    Poly substitute(const RingPtr& target, const std::vector<Poly>& images) const;
    Poly derivative(int var) const;

    std::string str() const;
    static Poly parse(const RingPtr& ring, const std::string& text);

private:
    RingPtr ring_;
    std::vector<Term> t_;
};

// Homogenization into proj (one extra variable at index chartVar, all other
// variables keeping their relative order).
Poly homogenize(const Poly& affine, const RingPtr& proj, int chartVar);
// Set variable chartVar to 1 and drop it; result lives in affineRing.
Poly dehomogenize(const Poly& hom, int chartVar, const RingPtr& affineRing);
// The affine coordinate ring of the chart {x_chartVar != 0}.
RingPtr chartRing(const RingPtr& proj, int chartVar);

} // namespace svi
