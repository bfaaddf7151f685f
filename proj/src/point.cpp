#include "svi/point.hpp"

#include "svi/errors.hpp"

#include <cctype>

namespace svi {

ProjPoint::ProjPoint(std::vector<Rational> coords) : c_(std::move(coords)) {
    if (c_.size() < 2) throw UsageError("projective point needs at least two coordinates");
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != 0) {
            pivot_ = static_cast<int>(i);
            break;
        }
    }
    if (pivot_ < 0) throw UsageError("projective point must have a nonzero coordinate");
    Rational scale = c_[pivot_];
    for (auto& x : c_) x /= scale;
}

std::string ProjPoint::str() const {
    std::string s = "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += ratStr(c_[i]);
    }
    return s + "]";
}

ProjPoint ProjPoint::parse(const std::string& text) {
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (i >= text.size() || text[i] != '[') throw ParseError("point must start with '['");
    ++i;
    std::vector<Rational> coords;
    while (true) {
        skip();
        size_t start = i;
        bool neg = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
            neg = text[i] == '-';
            ++i;
        }
        skip();
        size_t numStart = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == numStart) throw ParseError("expected number in point at position " +
                                            std::to_string(start));
        Integer num(text.substr(numStart, i - numStart));
        Integer den = 1;
        skip();
        if (i < text.size() && text[i] == '/') {
            ++i;
            skip();
            size_t denStart = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == denStart) throw ParseError("expected denominator in point");
            den = Integer(text.substr(denStart, i - denStart));
            if (den == 0) throw ParseError("zero denominator in point");
        }
        Rational r(num, den);
        r.canonicalize();
        coords.push_back(neg ? Rational(-r) : r);
        skip();
        if (i < text.size() && text[i] == ',') {
            ++i;
            continue;
        }
        if (i < text.size() && text[i] == ']') {
            ++i;
            break;
        }
        throw ParseError("expected ',' or ']' in point");
    }
    skip();
    if (i != text.size()) throw ParseError("trailing input after point");
    return ProjPoint(std::move(coords));
}

} // namespace svi
