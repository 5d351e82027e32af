#pragma once

// Dense matrices over the extended reals with max-plus and min-plus products,
// Kleene star, trace, maximum circuit mean and the Kronecker (tensor) product.
//
// Precedence-graph convention: entry (i, j) != -inf is an arc i -> j with
// weight A(i, j).

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "sldi/errors.hpp"
#include "sldi/scalar.hpp"

namespace sldi {

enum class CircuitClass { NoPositiveCircuit, HasPositiveCircuit };

template <class T>
using Vector = std::vector<Tropical<T>>;

template <class T>
class Matrix {
public:
    using Scalar = Tropical<T>;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, Scalar fill = Scalar::epsilon())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    /// Row-major literal; every row must have the same length.
    Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) {
                throw Error(Errc::dimension_mismatch, "ragged matrix literal");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    /// The all -inf matrix (neutral for oplus).
    static Matrix epsilon(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix epsilon(std::size_t n) { return Matrix(n, n); }

    /// The all +inf matrix (neutral for dual_oplus).
    static Matrix top(std::size_t rows, std::size_t cols) { return Matrix(rows, cols, Scalar::top()); }
    static Matrix top(std::size_t n) { return top(n, n); }

    /// Max-plus identity: 0 on the diagonal, -inf elsewhere.
    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::unit();
        return m;
    }

    /// Min-plus identity: 0 on the diagonal, +inf elsewhere.
    static Matrix dual_identity(std::size_t n) {
        Matrix m(n, n, Scalar::top());
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::unit();
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<const Scalar> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    [[nodiscard]] std::span<const Scalar> data() const noexcept { return data_; }

    /// Copy of the block of size (nr x nc) whose top-left corner is (r0, c0).
    [[nodiscard]] Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) {
            throw Error(Errc::dimension_mismatch, "block out of range");
        }
        Matrix out(nr, nc);
        for (std::size_t i = 0; i < nr; ++i) {
            for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
        }
        return out;
    }

    /// Overwrites the block at (r0, c0) with `src`.
    void set_block(std::size_t r0, std::size_t c0, const Matrix& src) {
        if (r0 + src.rows() > rows_ || c0 + src.cols() > cols_) {
            throw Error(Errc::dimension_mismatch, "block out of range");
        }
        for (std::size_t i = 0; i < src.rows(); ++i) {
            for (std::size_t j = 0; j < src.cols(); ++j) (*this)(r0 + i, c0 + j) = src(i, j);
        }
    }

    [[nodiscard]] bool contains_top() const {
        for (const auto& a : data_) {
            if (a.is_pos_inf()) return true;
        }
        return false;
    }

    [[nodiscard]] bool contains_epsilon() const {
        for (const auto& a : data_) {
            if (a.is_neg_inf()) return true;
        }
        return false;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

using RealMatrix = Matrix<double>;
using ExactMatrix = Matrix<Rational>;

namespace detail {

template <class T>
void require_same_shape(const Matrix<T>& a, const Matrix<T>& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(Errc::dimension_mismatch,
                    std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

template <class T>
void require_inner(const Matrix<T>& a, const Matrix<T>& b, const char* op) {
    if (a.cols() != b.rows()) {
        throw Error(Errc::dimension_mismatch,
                    std::string(op) + ": inner dimensions " + std::to_string(a.cols()) + " and " +
                        std::to_string(b.rows()));
    }
}

template <class T>
void require_square(const Matrix<T>& a, const char* op) {
    if (!a.is_square()) {
        throw Error(Errc::dimension_mismatch, std::string(op) + " needs a square matrix");
    }
}

}  // namespace detail

template <class T>
Matrix<T> oplus(const Matrix<T>& a, const Matrix<T>& b) {
    detail::require_same_shape(a, b, "oplus");
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = oplus(a(i, j), b(i, j));
    }
    return out;
}

template <class T>
Matrix<T> dual_oplus(const Matrix<T>& a, const Matrix<T>& b) {
    detail::require_same_shape(a, b, "dual_oplus");
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = dual_oplus(a(i, j), b(i, j));
    }
    return out;
}

/// Max-plus product: (A ⊗ B)(i, j) = max_k A(i, k) + B(k, j).
template <class T>
Matrix<T> otimes(const Matrix<T>& a, const Matrix<T>& b) {
    detail::require_inner(a, b, "otimes");
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& aik = a(i, k);
            if (aik.is_neg_inf()) continue;  // absorbing: contributes nothing
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const auto& bkj = b(k, j);
                if (bkj.is_neg_inf()) continue;
                auto& cij = out(i, j);
                auto term = otimes(aik, bkj);
                if (cij < term) cij = term;
            }
        }
    }
    return out;
}

/// Min-plus product with +inf absorbing: (A ⊠ B)(i, j) = min_k A(i, k) ⊠ B(k, j).
template <class T>
Matrix<T> dual_otimes(const Matrix<T>& a, const Matrix<T>& b) {
    detail::require_inner(a, b, "dual_otimes");
    Matrix<T> out(a.rows(), b.cols(), Tropical<T>::top());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& aik = a(i, k);
            if (aik.is_pos_inf()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                auto term = dual_otimes(aik, b(k, j));
                auto& cij = out(i, j);
                if (term < cij) cij = term;
            }
        }
    }
    return out;
}

template <class T>
Matrix<T> otimes(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& c) {
    return otimes(otimes(a, b), c);
}

/// Matrix-vector max-plus product.
template <class T>
Vector<T> otimes(const Matrix<T>& a, const Vector<T>& x) {
    if (a.cols() != x.size()) throw Error(Errc::dimension_mismatch, "otimes: matrix-vector");
    Vector<T> out(a.rows(), Tropical<T>::epsilon());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] = oplus(out[i], otimes(a(i, j), x[j]));
    }
    return out;
}

/// Matrix-vector min-plus product.
template <class T>
Vector<T> dual_otimes(const Matrix<T>& a, const Vector<T>& x) {
    if (a.cols() != x.size()) throw Error(Errc::dimension_mismatch, "dual_otimes: matrix-vector");
    Vector<T> out(a.rows(), Tropical<T>::top());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[i] = dual_oplus(out[i], dual_otimes(a(i, j), x[j]));
        }
    }
    return out;
}

/// λ ⊗ A, entrywise.
template <class T>
Matrix<T> scalar_mul(const Tropical<T>& lambda, const Matrix<T>& a) {
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = otimes(lambda, a(i, j));
    }
    return out;
}

/// A♯ = -Aᵀ; swaps -inf and +inf.
template <class T>
Matrix<T> sharp(const Matrix<T>& a) {
    Matrix<T> out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = negate(a(i, j));
    }
    return out;
}

/// A^k with A^0 = identity.
template <class T>
Matrix<T> power(const Matrix<T>& a, std::size_t k) {
    detail::require_square(a, "power");
    Matrix<T> out = Matrix<T>::identity(a.rows());
    for (std::size_t i = 0; i < k; ++i) out = otimes(out, a);
    return out;
}

/// Max of the diagonal.
template <class T>
Tropical<T> trace(const Matrix<T>& a) {
    detail::require_square(a, "trace");
    auto t = Tropical<T>::epsilon();
    for (std::size_t i = 0; i < a.rows(); ++i) t = oplus(t, a(i, i));
    return t;
}

struct StarDiagnostics {
    bool input_contains_top = false;
};

/// A* = E ⊕ A ⊕ A² ⊕ ..., i.e. all-pairs longest path weights.
///
/// Closure is done node by node (Floyd-Warshall order). A node whose current
/// diagonal entry is positive has star +inf, so every path routed through it
/// saturates to +inf instead of growing. Entries that are +inf on input
/// propagate by absorption (-inf still wins) and are reported in `diag`.
template <class T>
Matrix<T> kleene_star(const Matrix<T>& a, StarDiagnostics* diag = nullptr) {
    detail::require_square(a, "kleene_star");
    if (diag != nullptr) diag->input_contains_top = a.contains_top();
    const std::size_t n = a.rows();
    Matrix<T> s = a;
    for (std::size_t k = 0; k < n; ++k) {
        const auto skk = s(k, k);
        const auto loop_star = skk > Tropical<T>::unit() ? Tropical<T>::top() : Tropical<T>::unit();
        for (std::size_t i = 0; i < n; ++i) {
            const auto sik = s(i, k);
            if (sik.is_neg_inf()) continue;
            const auto through = otimes(sik, loop_star);
            for (std::size_t j = 0; j < n; ++j) {
                const auto& skj = s(k, j);
                if (skj.is_neg_inf()) continue;
                auto cand = otimes(through, skj);
                if (s(i, j) < cand) s(i, j) = cand;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) s(i, i) = oplus(s(i, i), Tropical<T>::unit());
    return s;
}

/// Decides whether G(A) has a circuit of positive weight.
///
/// Bellman-Ford longest-path relaxation from a virtual source joined to every
/// node: it settles within n passes iff no positive circuit exists. Inputs
/// containing +inf fall back to the trace of the star.
template <class T>
CircuitClass has_positive_circuit(const Matrix<T>& a) {
    detail::require_square(a, "has_positive_circuit");
    if (a.contains_top()) {
        return trace(kleene_star(a)) == Tropical<T>::unit() ? CircuitClass::NoPositiveCircuit
                                                             : CircuitClass::HasPositiveCircuit;
    }
    const std::size_t n = a.rows();
    std::vector<T> dist(n, T(0));
    for (std::size_t pass = 0; pass <= n; ++pass) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const auto& w = a(i, j);
                if (w.is_neg_inf()) continue;
                T cand = dist[i] + w.value();
                if (dist[j] < cand) {
                    dist[j] = cand;
                    changed = true;
                }
            }
        }
        if (!changed) return CircuitClass::NoPositiveCircuit;
    }
    return CircuitClass::HasPositiveCircuit;
}

/// Maximum circuit mean of G(A); -inf when G(A) is acyclic.
///
/// Karp's algorithm with every node as a start node: D_0 = 0 and
/// D_{k+1}(j) = max_i D_k(i) + A(i, j); then
/// mcm = max_j min_{0<=k<n} (D_n(j) - D_k(j)) / (n - k).
template <class T>
Tropical<T> mcm(const Matrix<T>& a) {
    detail::require_square(a, "mcm");
    if (a.contains_top()) throw Error(Errc::invalid_argument, "mcm: +inf entry");
    const std::size_t n = a.rows();
    if (n == 0) return Tropical<T>::epsilon();
    std::vector<Vector<T>> d(n + 1, Vector<T>(n, Tropical<T>::epsilon()));
    for (std::size_t j = 0; j < n; ++j) d[0][j] = Tropical<T>::unit();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (d[k][i].is_neg_inf()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (a(i, j).is_neg_inf()) continue;
                d[k + 1][j] = oplus(d[k + 1][j], otimes(d[k][i], a(i, j)));
            }
        }
    }
    auto best = Tropical<T>::epsilon();
    for (std::size_t j = 0; j < n; ++j) {
        if (d[n][j].is_neg_inf()) continue;
        auto worst = Tropical<T>::top();
        for (std::size_t k = 0; k < n; ++k) {
            if (d[k][j].is_neg_inf()) continue;
            Tropical<T> mean(
                (d[n][j].value() - d[k][j].value()) / ScalarTraits<T>::from_int(static_cast<std::int64_t>(n - k)));
            worst = dual_oplus(worst, mean);
        }
        best = oplus(best, worst);
    }
    return best;
}

/// Kronecker product: block (i, j) is A(i, j) ⊗ B.
template <class T>
Matrix<T> tensor(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const auto& aij = a(i, j);
            for (std::size_t p = 0; p < b.rows(); ++p) {
                for (std::size_t q = 0; q < b.cols(); ++q) {
                    out(i * b.rows() + p, j * b.cols() + q) = otimes(aij, b(p, q));
                }
            }
        }
    }
    return out;
}

/// Selector Y_{i,j} (zero-based): 0 at (i, j), -inf elsewhere.
template <class T>
Matrix<T> selector(std::size_t size, std::size_t i, std::size_t j) {
    Matrix<T> y(size, size);
    y(i, j) = Tropical<T>::unit();
    return y;
}

template <class T>
std::string to_string(const Matrix<T>& a) {
    std::string out = "[";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        out += i == 0 ? "[" : ", [";
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j > 0) out += ", ";
            out += to_string(a(i, j));
        }
        out += "]";
    }
    return out + "]";
}

}  // namespace sldi
