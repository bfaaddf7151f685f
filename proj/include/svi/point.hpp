#pragma once

#include "svi/rational.hpp"

#include <string>
#include <vector>

namespace svi {

// Projective point with exact rational coordinates, stored in canonical form:
// the first nonzero coordinate is scaled to 1.
class ProjPoint {
public:
    explicit ProjPoint(std::vector<Rational> coords);

    int ambient() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coords() const { return c_; }
    int pivot() const { return pivot_; } // index of the first nonzero coordinate

    bool operator==(const ProjPoint& o) const { return c_ == o.c_; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }

    std::string str() const;
    // "[1, 0, 2/3]" with optional whitespace.
    static ProjPoint parse(const std::string& text);

private:
    std::vector<Rational> c_;
    int pivot_ = -1;
};

} // namespace svi
