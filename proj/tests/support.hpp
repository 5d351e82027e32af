#pragma once

// Shared fixtures for the test binaries: the 2-event example family, model
// paths, random generators, and small independent reference computations.

#include <cstdint>
#include <random>
#include <string>

#include "sldi/matrix.hpp"
#include "sldi/ncp.hpp"
#include "sldi/pteg.hpp"
#include "sldi/sldi.hpp"

namespace testing {

using sldi::Matrix;
using sldi::Pteg;
using sldi::Rational;
using sldi::Sldi;
using sldi::Tropical;

using Q = Tropical<Rational>;
using QM = Matrix<Rational>;

inline Q q(std::int64_t v) { return Q::integer(v); }
inline Q q(std::int64_t num, std::int64_t den) { return Q(Rational(num, den)); }
inline const Q eps = Q::epsilon();
inline const Q top = Q::top();

inline std::string model_path(const std::string& name) { return std::string(SLDI_MODEL_DIR) + "/" + name; }

// Two transitions t1 -> t2 (no token, [0, +inf)), each with a self-loop of one
// token and a fixed sojourn time: alpha for t1, beta for t2. Written out as
// matrices rather than compiled from a net, so it can check compile().
template <class T = Rational>
Pteg<T> two_station(std::int64_t alpha, std::int64_t beta) {
    using S = Tropical<T>;
    const S e = S::epsilon();
    const S t = S::top();
    Pteg<T> g;
    g.A0 = Matrix<T>{{e, e}, {S::integer(0), e}};
    g.A1 = Matrix<T>{{S::integer(alpha), e}, {e, S::integer(beta)}};
    g.B0 = Matrix<T>::top(2);
    g.B1 = Matrix<T>{{S::integer(alpha), t}, {t, S::integer(beta)}};
    return g;
}

/// Modes a = (2, 1), b = (1, 2), c = (1, 1).
template <class T = Rational>
Sldi<T> two_station_sldi() {
    return Sldi<T>{{"a", "b", "c"}, {two_station<T>(2, 1), two_station<T>(1, 2), two_station<T>(1, 1)}};
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
    }
    bool chance(double p) { return std::bernoulli_distribution(p)(gen_); }
    template <class C>
    const auto& pick(const C& c) {
        return c[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(c.size()) - 1))];
    }

private:
    std::mt19937_64 gen_;
};

/// Integer entries in [lo, hi], each present with probability `density`.
template <class T = Rational>
Matrix<T> random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double density, std::int64_t lo = -5,
                        std::int64_t hi = 5) {
    Matrix<T> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (rng.chance(density)) m(i, j) = Tropical<T>::integer(rng.uniform(lo, hi));
        }
    }
    return m;
}

/// Like random_matrix but every entry may also be -inf or +inf.
template <class T = Rational>
Matrix<T> random_extended(Rng& rng, std::size_t rows, std::size_t cols) {
    Matrix<T> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const auto r = rng.uniform(0, 9);
            m(i, j) = r == 0 ? Tropical<T>::epsilon() : r == 1 ? Tropical<T>::top()
                                                               : Tropical<T>::integer(rng.uniform(-5, 5));
        }
    }
    return m;
}

template <class T = Rational>
sldi::PicInstance<T> random_pic(Rng& rng, std::size_t n, double density) {
    return {random_matrix<T>(rng, n, n, density), random_matrix<T>(rng, n, n, density),
            random_matrix<T>(rng, n, n, density)};
}

/// A random P-TEG on n transitions: each ordered pair carries a place with
/// the given probability; windows are [lo, lo + width] or [lo, +inf).
template <class T = Rational>
Pteg<T> random_pteg(Rng& rng, std::size_t n, double density) {
    auto g = Pteg<T>::free(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (int tokens = 0; tokens < 2; ++tokens) {
                if (!rng.chance(density)) continue;
                auto& a = tokens == 0 ? g.A0 : g.A1;
                auto& b = tokens == 0 ? g.B0 : g.B1;
                const auto lo = rng.uniform(0, 4);
                a(i, j) = Tropical<T>::integer(lo);
                b(i, j) = rng.chance(0.4) ? Tropical<T>::top() : Tropical<T>::integer(lo + rng.uniform(0, 6));
            }
        }
    }
    return g;
}

/// Maximum circuit mean by the power formula max_k tr(A^k) / k.
template <class T>
Tropical<T> mcm_by_powers(const Matrix<T>& a) {
    auto best = Tropical<T>::epsilon();
    auto p = a;
    for (std::size_t k = 1; k <= a.rows(); ++k) {
        best = sldi::oplus(best, sldi::root(sldi::trace(p), static_cast<std::int64_t>(k)));
        p = sldi::otimes(p, a);
    }
    return best;
}

/// Star by summing powers up to n - 1 (valid when no positive circuit exists).
template <class T>
Matrix<T> star_by_powers(const Matrix<T>& a) {
    auto sum = Matrix<T>::identity(a.rows());
    auto p = Matrix<T>::identity(a.rows());
    for (std::size_t k = 1; k < a.rows(); ++k) {
        p = sldi::otimes(p, a);
        sum = sldi::oplus(sum, p);
    }
    return sum;
}

}  // namespace testing
