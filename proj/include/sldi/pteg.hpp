#pragma once

// P-time event graphs and their max-plus linear-dual inequality (LDI) form:
//
//   A0 ⊗ x(k) <= x(k)   <= B0 ⊠ x(k)
//   A1 ⊗ x(k) <= x(k+1) <= B1 ⊠ x(k)
//
// A place with marking μ, upstream transition t_j, downstream transition t_i
// and sojourn window [lo, hi] contributes A^μ(i, j) = lo and B^μ(i, j) = hi.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "sldi/errors.hpp"
#include "sldi/matrix.hpp"
#include "sldi/ncp.hpp"
#include "sldi/trajectory.hpp"

namespace sldi {

template <class T>
struct Place {
    std::string from;  ///< upstream transition
    std::string to;    ///< downstream transition
    int tokens = 0;    ///< initial marking, 0 or 1
    Tropical<T> lower = Tropical<T>::unit();
    Tropical<T> upper = Tropical<T>::top();
};

template <class T>
struct PtegNet {
    std::vector<std::string> transitions;
    std::vector<Place<T>> places;
};

/// Characteristic matrices of one LDI. A0/A1 live in R_max, B0/B1 in R_min.
template <class T>
struct Pteg {
    Matrix<T> A0, A1, B0, B1;

    [[nodiscard]] std::size_t size() const noexcept { return A0.rows(); }

    /// The unconstrained LDI on n events (A all -inf, B all +inf).
    static Pteg free(std::size_t n) {
        return {Matrix<T>::epsilon(n), Matrix<T>::epsilon(n), Matrix<T>::top(n), Matrix<T>::top(n)};
    }

    void validate() const {
        const std::size_t n = A0.rows();
        for (const Matrix<T>* m : {&A0, &A1, &B0, &B1}) {
            if (m->rows() != n || m->cols() != n) {
                throw Error(Errc::dimension_mismatch, "characteristic matrices must be square and equally sized");
            }
        }
        auto check = [n](const Matrix<T>& a, const Matrix<T>& b, const char* name) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (a(i, j).is_pos_inf()) {
                        throw Error(Errc::validation_error, std::string("A") + name + " has a +inf entry");
                    }
                    if (b(i, j).is_neg_inf()) {
                        throw Error(Errc::validation_error, std::string("B") + name + " has a -inf entry");
                    }
                    if (a(i, j).is_finite() && b(i, j) < a(i, j)) {
                        throw Error(Errc::validation_error, std::string("A") + name + "(" + std::to_string(i) + "," +
                                                                std::to_string(j) + ") exceeds B" + name);
                    }
                }
            }
        };
        check(A0, B0, "0");
        check(A1, B1, "1");
    }

    friend bool operator==(const Pteg&, const Pteg&) = default;
};

/// Builds the characteristic matrices of `net` over the event list `events`
/// (a superset of the net's transitions, defaulting to them). Parallel places
/// with the same marking keep the tightest window.
template <class T>
Pteg<T> compile(const PtegNet<T>& net, const std::vector<std::string>& events) {
    auto index_of = [&events](const std::string& name) {
        auto it = std::find(events.begin(), events.end(), name);
        if (it == events.end()) throw Error(Errc::validation_error, "unknown transition '" + name + "'");
        return static_cast<std::size_t>(it - events.begin());
    };
    for (const auto& t : net.transitions) index_of(t);
    auto g = Pteg<T>::free(events.size());
    for (const auto& p : net.places) {
        if (std::find(net.transitions.begin(), net.transitions.end(), p.from) == net.transitions.end() ||
            std::find(net.transitions.begin(), net.transitions.end(), p.to) == net.transitions.end()) {
            throw Error(Errc::validation_error, "place " + p.from + " -> " + p.to + " references an unknown transition");
        }
        if (p.tokens < 0 || p.tokens > 1) {
            throw Error(Errc::validation_error, "place " + p.from + " -> " + p.to + ": marking must be 0 or 1");
        }
        if (!p.lower.is_finite() || p.lower < Tropical<T>::unit()) {
            throw Error(Errc::validation_error,
                        "place " + p.from + " -> " + p.to + ": lower bound must be finite and non-negative");
        }
        if (p.upper < p.lower) {
            throw Error(Errc::validation_error, "place " + p.from + " -> " + p.to + ": lower bound exceeds upper bound");
        }
        const std::size_t i = index_of(p.to);
        const std::size_t j = index_of(p.from);
        auto& a = p.tokens == 0 ? g.A0 : g.A1;
        auto& b = p.tokens == 0 ? g.B0 : g.B1;
        a(i, j) = oplus(a(i, j), p.lower);
        b(i, j) = dual_oplus(b(i, j), p.upper);
        if (b(i, j) < a(i, j)) {
            throw Error(Errc::inconsistent_parallel_places,
                        "parallel places " + p.from + " -> " + p.to + " have disjoint windows");
        }
    }
    return g;
}

template <class T>
Pteg<T> compile(const PtegNet<T>& net) {
    return compile(net, net.transitions);
}

/// The PIC instance whose admissible λ are the periods of 1-periodic
/// trajectories: P = B1♯, I = A1, C = A0 ⊕ B0♯.
template <class T>
PicInstance<T> pic_of(const Pteg<T>& g) {
    return {sharp(g.B1), g.A1, oplus(g.A0, sharp(g.B0))};
}

/// Cycle times of the P-TEG: the NCP interval intersected with [0, inf).
/// Non-empty iff the P-TEG is boundedly consistent.
template <class T>
CycleTimeSet<T> cycle_time_set(const Pteg<T>& g) {
    g.validate();
    return solve_ncp(pic_of(g)).clamp_nonnegative();
}

/// x(0) of a consistent 1-periodic trajectory {x(0) + kλ}.
template <class T>
Vector<T> synthesize_periodic(const Pteg<T>& g, const Tropical<T>& lambda) {
    g.validate();
    if (!lambda.is_finite() || lambda < Tropical<T>::unit()) {
        throw Error(Errc::infeasible_lambda, "cycle time must be finite and non-negative");
    }
    return periodic_witness(pic_of(g), lambda);
}

/// Checks the LDI and non-decreasingness on x(0..K).
template <class T>
TrajectoryReport<T> check_ldi_trajectory(const Pteg<T>& g, std::span<const Vector<T>> daters) {
    return check_daters<T>(daters, 1, [&g](std::size_t) -> const Pteg<T>& { return g; });
}

template <class T>
TrajectoryReport<T> check_ldi_trajectory(const Pteg<T>& g, const std::vector<Vector<T>>& daters) {
    return check_ldi_trajectory(g, std::span<const Vector<T>>(daters));
}

}  // namespace sldi
