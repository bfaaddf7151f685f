#pragma once

#include <memory>
#include <string>
#include <vector>

namespace svi {

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

// A named list of variables. Rings compare by variable names, so two
// independently built rings over the same names are interchangeable.
class PolyRing {
public:
    explicit PolyRing(std::vector<std::string> names);

    // x0..xn, coordinates of P^n.
    static RingPtr projective(int n);
    // Blocked coordinates x0_1..xn_1, ..., x0_r..xn_r of the join ambient
    // P^{r(n+1)-1}. Block j occupies variable indices [(j-1)(n+1), j(n+1)).
    static RingPtr join(int n, int r);
    static RingPtr make(std::vector<std::string> names);

    int nvars() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    int indexOf(const std::string& nm) const; // -1 when absent
    bool sameAs(const PolyRing& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
};

bool sameRing(const RingPtr& a, const RingPtr& b);

// Exponent vector with cached total degree.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exps);
    static Monomial one(int nvars);
    static Monomial variable(int nvars, int i, int power = 1);

    int nvars() const { return static_cast<int>(e_.size()); }
    int deg() const { return deg_; }
    int operator[](int i) const { return e_[i]; }
    bool isOne() const { return deg_ == 0; }

    bool divides(const Monomial& other) const;
    Monomial times(const Monomial& other) const;
    Monomial dividedBy(const Monomial& other) const; // exact, caller checks
    static Monomial lcm(const Monomial& a, const Monomial& b);
    static bool coprime(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
    const std::vector<int>& exps() const { return e_; }

private:
    std::vector<int> e_;
    int deg_ = 0;
};

// grevlex: canonical order everywhere; lex: kept for completeness;
// block: eliminates exactly the front block (grevlex inside each block).
struct MonomialOrder {
    enum class Kind { grevlex, lex, block };
    Kind kind = Kind::grevlex;
    int front = 0; // size of the front block for Kind::block

    static MonomialOrder grevlexOrder() { return {Kind::grevlex, 0}; }
    static MonomialOrder lexOrder() { return {Kind::lex, 0}; }
    static MonomialOrder blockOrder(int frontSize) { return {Kind::block, frontSize}; }

    // +1 when a > b, 0 when equal, -1 when a < b.
    int compare(const Monomial& a, const Monomial& b) const;
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
    std::string tag() const; // stable cache-key fragment
};

} // namespace svi
