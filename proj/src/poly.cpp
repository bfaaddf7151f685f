#include "svi/poly.hpp"

#include "svi/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace svi {

namespace terms {

std::vector<Term> normalize(std::vector<Term> ts, const MonomialOrder& ord) {
    std::sort(ts.begin(), ts.end(),
              [&](const Term& a, const Term& b) { return ord.greater(a.m, b.m); });
    std::vector<Term> out;
    out.reserve(ts.size());
    for (auto& t : ts) {
        if (t.c == 0) continue;
        if (!out.empty() && out.back().m == t.m) {
            out.back().c += t.c;
            if (out.back().c == 0) out.pop_back();
        } else {
            out.push_back(std::move(t));
        }
    }
    return out;
}

std::vector<Term> add(const std::vector<Term>& a, const std::vector<Term>& b,
                      const MonomialOrder& ord) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = ord.compare(a[i].m, b[j].m);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
        } else {
            Rational s = a[i].c + b[j].c;
            if (s != 0) out.push_back(Term{a[i].m, s});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    return out;
}

std::vector<Term> scale(const std::vector<Term>& a, const Rational& c, const Monomial& m) {
    std::vector<Term> out;
    if (c == 0) return out;
    out.reserve(a.size());
    for (const auto& t : a) out.push_back(Term{t.m.times(m), t.c * c});
    return out;
}

std::vector<Term> mul(const std::vector<Term>& a, const std::vector<Term>& b,
                      const MonomialOrder& ord) {
    std::vector<Term> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& ta : a)
        for (const auto& tb : b) acc.push_back(Term{ta.m.times(tb.m), ta.c * tb.c});
    return normalize(std::move(acc), ord);
}

void makePrimitive(std::vector<Term>& ts) {
    if (ts.empty()) return;
    Integer denLcm = 1;
    for (const auto& t : ts) {
        Integer d = t.c.get_den();
        mpz_lcm(denLcm.get_mpz_t(), denLcm.get_mpz_t(), d.get_mpz_t());
    }
    Integer g = 0;
    std::vector<Integer> nums;
    nums.reserve(ts.size());
    for (const auto& t : ts) {
        Integer n = t.c.get_num() * (denLcm / t.c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        nums.push_back(std::move(n));
    }
    if (sgn(nums.front()) < 0) g = -g;
    for (size_t i = 0; i < ts.size(); ++i) ts[i].c = Rational(nums[i] / g);
}

} // namespace terms

namespace {
const MonomialOrder kGrevlex = MonomialOrder::grevlexOrder();
}

Poly Poly::zero(const RingPtr& ring) {
    Poly p;
    p.ring_ = ring;
    return p;
}

Poly Poly::constant(const RingPtr& ring, const Rational& c) {
    Poly p;
    p.ring_ = ring;
    if (c != 0) p.t_.push_back(Term{Monomial::one(ring->nvars()), c});
    return p;
}

Poly Poly::variable(const RingPtr& ring, int i) {
    if (i < 0 || i >= ring->nvars()) throw UsageError("variable index out of range");
    Poly p;
    p.ring_ = ring;
    p.t_.push_back(Term{Monomial::variable(ring->nvars(), i), Rational(1)});
    return p;
}

Poly Poly::fromTerms(const RingPtr& ring, std::vector<Term> ts) {
    Poly p;
    p.ring_ = ring;
    p.t_ = terms::normalize(std::move(ts), kGrevlex);
    for (const auto& t : p.t_)
        if (t.m.nvars() != ring->nvars()) throw AuditError("term arity mismatch");
    return p;
}

bool Poly::isConstant() const {
    return t_.empty() || (t_.size() == 1 && t_[0].m.isOne());
}

const Term& Poly::leadTerm() const {
    if (t_.empty()) throw AuditError("leading term of zero polynomial");
    return t_.front();
}

int Poly::totalDegree() const {
    int d = -1;
    for (const auto& t : t_) d = std::max(d, t.m.deg());
    return d;
}

bool Poly::isHomogeneous() const {
    for (const auto& t : t_)
        if (t.m.deg() != t_.front().m.deg()) return false;
    return true;
}

namespace {
void requireSameRing(const Poly& a, const Poly& b) {
    if (!sameRing(a.ring(), b.ring())) throw UsageError("polynomial ring mismatch");
}
} // namespace

Poly Poly::operator+(const Poly& o) const {
    requireSameRing(*this, o);
    Poly p;
    p.ring_ = ring_;
    p.t_ = terms::add(t_, o.t_, kGrevlex);
    return p;
}

Poly Poly::operator-() const {
    Poly p;
    p.ring_ = ring_;
    p.t_ = terms::scale(t_, Rational(-1), Monomial::one(ring_ ? ring_->nvars() : 0));
    return p;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    requireSameRing(*this, o);
    Poly p;
    p.ring_ = ring_;
    p.t_ = terms::mul(t_, o.t_, kGrevlex);
    return p;
}

Poly Poly::scaled(const Rational& c) const {
    Poly p;
    p.ring_ = ring_;
    if (c != 0 && ring_) p.t_ = terms::scale(t_, c, Monomial::one(ring_->nvars()));
    return p;
}

Poly Poly::pow(unsigned e) const {
    Poly out = Poly::constant(ring_, 1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1u) out = out * base;
        base = (e >>= 1) ? base * base : base;
    }
    return out;
}

bool Poly::operator==(const Poly& o) const {
    if (!sameRing(ring_, o.ring_)) return false;
    if (t_.size() != o.t_.size()) return false;
    for (size_t i = 0; i < t_.size(); ++i)
        if (t_[i].m != o.t_[i].m || t_[i].c != o.t_[i].c) return false;
    return true;
}

Rational Poly::evaluate(const std::vector<Rational>& coords) const {
    if (static_cast<int>(coords.size()) != ring_->nvars())
        throw UsageError("evaluate: coordinate count mismatch");
    Rational acc(0);
    for (const auto& t : t_) {
        Rational v = t.c;
        for (int i = 0; i < t.m.nvars(); ++i)
            if (t.m[i] > 0) v *= ratPow(coords[i], static_cast<unsigned>(t.m[i]));
        acc += v;
    }
    return acc;
}

Poly Poly::substitute(const RingPtr& target, const std::vector<Poly>& images) const {
    if (static_cast<int>(images.size()) != ring_->nvars())
        throw UsageError("substitute: image count mismatch");
    for (const auto& im : images)
        if (!sameRing(im.ring(), target)) throw UsageError("substitute: image ring mismatch");
    // Cache powers per variable; exponents at desk scale are small.
    std::vector<std::map<int, Poly>> powers(images.size());
    auto powerOf = [&](int var, int e) -> const Poly& {
        auto it = powers[var].find(e);
        if (it == powers[var].end())
            it = powers[var].emplace(e, images[var].pow(static_cast<unsigned>(e))).first;
        return it->second;
    };
    Poly acc = Poly::zero(target);
    for (const auto& t : t_) {
        Poly v = Poly::constant(target, t.c);
        for (int i = 0; i < t.m.nvars(); ++i)
            if (t.m[i] > 0) v = v * powerOf(i, t.m[i]);
        acc = acc + v;
    }
    return acc;
}

Poly Poly::derivative(int var) const {
    if (var < 0 || var >= ring_->nvars()) throw UsageError("derivative: bad variable");
    std::vector<Term> out;
    for (const auto& t : t_) {
        int e = t.m[var];
        if (e == 0) continue;
        std::vector<int> exps = t.m.exps();
        exps[var] -= 1;
        out.push_back(Term{Monomial(std::move(exps)), t.c * e});
    }
    return Poly::fromTerms(ring_, std::move(out));
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string monoStr(const RingPtr& ring, const Monomial& m) {
    std::string s;
    for (int i = 0; i < m.nvars(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += ring->name(i);
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

} // namespace

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : t_) {
        Rational a = abs(t.c);
        bool neg = sgn(t.c) < 0;
        if (first) {
            if (neg) s += "-";
            first = false;
        } else {
            s += neg ? " - " : " + ";
        }
        std::string mono = monoStr(ring_, t.m);
        if (mono.empty()) {
            s += ratStr(a);
        } else if (a == 1) {
            s += mono;
        } else {
            s += ratStr(a) + "*" + mono;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Token {
    enum class Kind { number, name, plus, minus, star, caret, slash, lparen, rparen, end };
    Kind kind;
    std::string text;
    size_t pos;
};

class Lexer {
public:
    Lexer(const std::string& s) : s_(s) {}
    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        size_t start = i_;
        if (i_ >= s_.size()) return {Token::Kind::end, "", start};
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            Token t{Token::Kind::number, s_.substr(i_, j - i_), start};
            i_ = j;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                ++j;
            Token t{Token::Kind::name, s_.substr(i_, j - i_), start};
            i_ = j;
            return t;
        }
        ++i_;
        switch (c) {
        case '+': return {Token::Kind::plus, "+", start};
        case '-': return {Token::Kind::minus, "-", start};
        case '*': return {Token::Kind::star, "*", start};
        case '^': return {Token::Kind::caret, "^", start};
        case '/': return {Token::Kind::slash, "/", start};
        case '(': return {Token::Kind::lparen, "(", start};
        case ')': return {Token::Kind::rparen, ")", start};
        default:
            throw ParseError("unexpected character '" + std::string(1, c) + "' at position " +
                             std::to_string(start));
        }
    }

private:
    const std::string& s_;
    size_t i_ = 0;
};

class Parser {
public:
    Parser(const RingPtr& ring, const std::string& text) : ring_(ring), lex_(text) { advance(); }

    Poly parseExpr() {
        Poly acc = Poly::zero(ring_);
        bool negate = false;
        if (cur_.kind == Token::Kind::minus) {
            negate = true;
            advance();
        } else if (cur_.kind == Token::Kind::plus) {
            advance();
        }
        acc = acc + signedTerm(negate);
        while (cur_.kind == Token::Kind::plus || cur_.kind == Token::Kind::minus) {
            bool neg = cur_.kind == Token::Kind::minus;
            advance();
            acc = acc + signedTerm(neg);
        }
        return acc;
    }

    void expectEnd() {
        if (cur_.kind != Token::Kind::end)
            throw ParseError("trailing input at position " + std::to_string(cur_.pos));
    }

private:
    void advance() { cur_ = lex_.next(); }

    Poly signedTerm(bool negate) {
        Poly t = parseTerm();
        return negate ? -t : t;
    }

    Poly parseTerm() {
        Poly acc = parseFactor();
        while (cur_.kind == Token::Kind::star) {
            advance();
            acc = acc * parseFactor();
        }
        return acc;
    }

    Poly parseFactor() {
        Poly base = parseBase();
        if (cur_.kind == Token::Kind::caret) {
            advance();
            if (cur_.kind != Token::Kind::number)
                throw ParseError("expected exponent at position " + std::to_string(cur_.pos));
            long e = std::stol(cur_.text);
            advance();
            if (e < 0) throw ParseError("negative exponent");
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Poly parseBase() {
        switch (cur_.kind) {
        case Token::Kind::number: {
            Integer num(cur_.text);
            advance();
            if (cur_.kind == Token::Kind::slash) {
                advance();
                if (cur_.kind != Token::Kind::number)
                    throw ParseError("expected denominator at position " +
                                     std::to_string(cur_.pos));
                Integer den(cur_.text);
                advance();
                if (den == 0) throw ParseError("zero denominator");
                Rational r(num, den);
                r.canonicalize();
                return Poly::constant(ring_, r);
            }
            return Poly::constant(ring_, Rational(num));
        }
        case Token::Kind::name: {
            int idx = ring_->indexOf(cur_.text);
            if (idx < 0)
                throw ParseError("unknown variable '" + cur_.text + "' at position " +
                                 std::to_string(cur_.pos));
            advance();
            return Poly::variable(ring_, idx);
        }
        case Token::Kind::lparen: {
            advance();
            Poly inner = parseExpr();
            if (cur_.kind != Token::Kind::rparen)
                throw ParseError("expected ')' at position " + std::to_string(cur_.pos));
            advance();
            return inner;
        }
        default:
            throw ParseError("unexpected token at position " + std::to_string(cur_.pos));
        }
    }

    RingPtr ring_;
    Lexer lex_;
    Token cur_{Token::Kind::end, "", 0};
};

} // namespace

Poly Poly::parse(const RingPtr& ring, const std::string& text) {
    Parser p(ring, text);
    Poly out = p.parseExpr();
    p.expectEnd();
    return out;
}

// ---------------------------------------------------------------------------
// chart maps

RingPtr chartRing(const RingPtr& proj, int chartVar) {
    if (chartVar < 0 || chartVar >= proj->nvars()) throw UsageError("bad chart variable");
    std::vector<std::string> names;
    for (int i = 0; i < proj->nvars(); ++i)
        if (i != chartVar) names.push_back(proj->name(i));
    return PolyRing::make(std::move(names));
}

Poly homogenize(const Poly& affine, const RingPtr& proj, int chartVar) {
    if (proj->nvars() != affine.ring()->nvars() + 1)
        throw UsageError("homogenize: ring sizes incompatible");
    int d = affine.totalDegree();
    if (d < 0) return Poly::zero(proj);
    std::vector<Term> out;
    for (const auto& t : affine.terms()) {
        std::vector<int> e(proj->nvars(), 0);
        for (int i = 0; i < t.m.nvars(); ++i) e[i < chartVar ? i : i + 1] = t.m[i];
        e[chartVar] = d - t.m.deg();
        out.push_back(Term{Monomial(std::move(e)), t.c});
    }
    return Poly::fromTerms(proj, std::move(out));
}

Poly dehomogenize(const Poly& hom, int chartVar, const RingPtr& affineRing) {
    if (affineRing->nvars() != hom.ring()->nvars() - 1)
        throw UsageError("dehomogenize: ring sizes incompatible");
    std::vector<Term> out;
    for (const auto& t : hom.terms()) {
        std::vector<int> e(affineRing->nvars(), 0);
        for (int i = 0; i < t.m.nvars(); ++i) {
            if (i == chartVar) continue;
            e[i < chartVar ? i : i - 1] = t.m[i];
        }
        out.push_back(Term{Monomial(std::move(e)), t.c});
    }
    return Poly::fromTerms(affineRing, std::move(out));
}

} // namespace svi
