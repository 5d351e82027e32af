#pragma once

// Non-positive circuit weight problem for parametric matrices
//     A(λ) = λP ⊕ λ⁻¹I ⊕ C
// over R_max: the set of real λ for which G(A(λ)) has no positive circuit is
// an interval, computed in O(n^4) by solve_ncp.

#include <cstddef>
#include <string>

#include "sldi/errors.hpp"
#include "sldi/matrix.hpp"
#include "sldi/scalar.hpp"

namespace sldi {

template <class T>
struct PicInstance {
    Matrix<T> P;  ///< proportional part (weight grows with λ)
    Matrix<T> I;  ///< inverse part (weight shrinks with λ)
    Matrix<T> C;  ///< constant part

    [[nodiscard]] std::size_t size() const noexcept { return C.rows(); }

    /// Throws unless P, I, C are square, of equal size, and free of +inf.
    void validate() const {
        const std::size_t n = C.rows();
        for (const Matrix<T>* m : {&P, &I, &C}) {
            if (m->rows() != n || m->cols() != n) {
                throw Error(Errc::dimension_mismatch, "PIC instance: P, I, C must be square and equally sized");
            }
            if (m->contains_top()) {
                throw Error(Errc::invalid_instance, "PIC instance: +inf entry (inputs must be over R_max)");
            }
        }
    }
};

/// Answer type for all cycle-time computations: empty, or a closed interval
/// whose infinite endpoints are open ("[lo, hi] ∩ R").
template <class T>
class CycleTimeSet {
public:
    using Scalar = Tropical<T>;

    static CycleTimeSet empty() { return CycleTimeSet(); }

    /// Returns empty() when lo > hi.
    static CycleTimeSet interval(Scalar lo, Scalar hi) {
        if (hi < lo) return empty();
        CycleTimeSet s;
        s.empty_ = false;
        s.lo_ = std::move(lo);
        s.hi_ = std::move(hi);
        return s;
    }

    [[nodiscard]] bool is_empty() const noexcept { return empty_; }
    [[nodiscard]] const Scalar& lo() const { return lo_; }
    [[nodiscard]] const Scalar& hi() const { return hi_; }

    [[nodiscard]] bool contains(const Scalar& lambda) const {
        return !empty_ && lambda.is_finite() && lo_ <= lambda && lambda <= hi_;
    }

    /// Intersection with [0, +inf).
    [[nodiscard]] CycleTimeSet clamp_nonnegative() const {
        if (empty_) return empty();
        return interval(oplus(lo_, Scalar::unit()), hi_);
    }

    friend bool operator==(const CycleTimeSet& a, const CycleTimeSet& b) {
        if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    CycleTimeSet() = default;

    bool empty_ = true;
    Scalar lo_ = Scalar::epsilon();
    Scalar hi_ = Scalar::top();
};

template <class T>
std::string to_string(const CycleTimeSet<T>& s) {
    if (s.is_empty()) return "empty";
    std::string out = s.lo().is_finite() ? "[" : "(";
    out += to_string(s.lo()) + ", " + to_string(s.hi());
    out += s.hi().is_finite() ? "]" : ")";
    return out;
}

/// λP ⊕ λ⁻¹I ⊕ C for a finite λ.
template <class T>
Matrix<T> parametric_matrix(const PicInstance<T>& inst, const Tropical<T>& lambda) {
    const auto inv = inverse(lambda);
    return oplus(oplus(scalar_mul(lambda, inst.P), scalar_mul(inv, inst.I)), inst.C);
}

/// Direct membership test: G(λP ⊕ λ⁻¹I ⊕ C) has no positive circuit.
template <class T>
bool admits(const PicInstance<T>& inst, const Tropical<T>& lambda) {
    return has_positive_circuit(parametric_matrix(inst, lambda)) == CircuitClass::NoPositiveCircuit;
}

/// Strongly polynomial O(n^4) solver for the PIC non-positive circuit problem.
///
///   1. G(C) has a positive circuit           -> empty
///   2. P <- C*PC*,  I <- C*IC*,  S <- E
///   3. repeat floor(n/2) times: S <- P S² I ⊕ I S² P ⊕ E
///   4. G(S) has a positive circuit           -> empty
///   5. return [mcm(I S*), -mcm(P S*)] ∩ R
///
/// S is nondecreasing over step 3, so the loop stops as soon as S repeats (the
/// remaining iterations would reproduce it) or G(S) already has a positive
/// circuit (which the final S would then inherit). Both exits return what the
/// full loop returns. The result is not clamped to [0, inf).
template <class T>
CycleTimeSet<T> solve_ncp(const PicInstance<T>& inst) {
    inst.validate();
    const std::size_t n = inst.size();
    if (has_positive_circuit(inst.C) == CircuitClass::HasPositiveCircuit) {
        return CycleTimeSet<T>::empty();
    }
    const auto cstar = kleene_star(inst.C);
    const auto p = otimes(cstar, inst.P, cstar);
    const auto i = otimes(cstar, inst.I, cstar);
    const auto id = Matrix<T>::identity(n);
    auto s = id;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const auto s2 = otimes(s, s);
        auto next = oplus(oplus(otimes(p, s2, i), otimes(i, s2, p)), id);
        if (next == s) break;
        s = std::move(next);
        if (has_positive_circuit(s) == CircuitClass::HasPositiveCircuit) {
            return CycleTimeSet<T>::empty();
        }
    }
    if (has_positive_circuit(s) == CircuitClass::HasPositiveCircuit) {
        return CycleTimeSet<T>::empty();
    }
    const auto sstar = kleene_star(s);
    const auto lo = mcm(otimes(i, sstar));
    const auto hi = negate(mcm(otimes(p, sstar)));
    return CycleTimeSet<T>::interval(lo, hi);
}

/// Canonical witness for λ: x = (λP ⊕ λ⁻¹I ⊕ C)* ⊗ 0, the row maxima of the
/// star. It is finite and satisfies A(λ) ⊗ x ⪯ x whenever λ is admissible.
template <class T>
Vector<T> periodic_witness(const PicInstance<T>& inst, const Tropical<T>& lambda) {
    inst.validate();
    if (!lambda.is_finite()) throw Error(Errc::infeasible_lambda, "cycle time must be finite");
    const auto m = parametric_matrix(inst, lambda);
    if (has_positive_circuit(m) == CircuitClass::HasPositiveCircuit) {
        throw Error(Errc::infeasible_lambda, "lambda = " + to_string(lambda) + " admits no periodic trajectory");
    }
    const auto star = kleene_star(m);
    return otimes(star, Vector<T>(m.cols(), Tropical<T>::unit()));
}

}  // namespace sldi
