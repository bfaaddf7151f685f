#include "svi/rng.hpp"

#include "svi/errors.hpp"

namespace svi {

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (0x9E3779B97F4A7C15ull * (b + 1));
    return splitmix(s);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : state_(mix64(seed, stream)) {}

std::uint64_t Rng::next() { return splitmix(state_); }

long long Rng::uniformInt(long long lo, long long hi) {
    if (lo > hi) throw UsageError("uniformInt: empty range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t limit = (~0ull / span) * span; // rejection threshold
    std::uint64_t u;
    do {
        u = next();
    } while (u >= limit);
    return lo + static_cast<long long>(u % span);
}

Poly randomLinearCombination(const std::vector<Poly>& forms, std::uint64_t seed,
                             std::uint64_t streamIndex) {
    if (forms.empty()) throw UsageError("random combination of an empty system");
    const RingPtr& ring = forms.front().ring();
    Rng rng(seed, streamIndex);
    while (true) {
        std::vector<long long> a(forms.size());
        bool nonzero = false;
        for (auto& x : a) {
            x = rng.uniformInt(-9999, 9999);
            nonzero = nonzero || x != 0;
        }
        if (!nonzero) continue;
        Poly h = Poly::zero(ring);
        for (size_t i = 0; i < forms.size(); ++i)
            if (a[i] != 0) h = h + forms[i].scaled(Rational(static_cast<long>(a[i])));
        return h;
    }
}

CoordinateChange randomCoordinateChange(const RingPtr& ring, std::uint64_t seed,
                                        std::uint64_t streamIndex) {
    const int n = ring->nvars();
    Rng rng(seed, streamIndex);
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
        for (auto& row : m)
            for (auto& x : row) x = Rational(static_cast<long>(rng.uniformInt(-99, 99)));
        // Gauss-Jordan inversion over the rationals.
        std::vector<std::vector<Rational>> a = m;
        std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
        for (int i = 0; i < n; ++i) inv[i][i] = 1;
        bool singular = false;
        for (int col = 0; col < n && !singular; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (a[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) {
                singular = true;
                break;
            }
            std::swap(a[piv], a[col]);
            std::swap(inv[piv], inv[col]);
            Rational d = a[col][col];
            for (int j = 0; j < n; ++j) {
                a[col][j] /= d;
                inv[col][j] /= d;
            }
            for (int r = 0; r < n; ++r) {
                if (r == col || a[r][col] == 0) continue;
                Rational f = a[r][col];
                for (int j = 0; j < n; ++j) {
                    a[r][j] -= f * a[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
        if (singular) continue;
        CoordinateChange out;
        auto rowPoly = [&](const std::vector<Rational>& row) {
            Poly p = Poly::zero(ring);
            for (int j = 0; j < n; ++j)
                if (row[j] != 0) p = p + Poly::variable(ring, j).scaled(row[j]);
            return p;
        };
        for (int i = 0; i < n; ++i) out.forward.push_back(rowPoly(m[i]));
        for (int i = 0; i < n; ++i) out.inverse.push_back(rowPoly(inv[i]));
        return out;
    }
    throw GenericityError("could not draw an invertible coordinate change");
}

} // namespace svi
