#pragma once

// Exhaustive reference solver for the PIC non-positive circuit problem.
//
// Every elementary circuit of the parametric graph contributes, for each way
// of picking one of the (up to three) parallel P/I/C arcs per step, a linear
// constraint c + (p - q)·λ <= 0. The answer is the intersection of all of
// them. Exponential, meant for small n only.

#include <cstddef>
#include <map>
#include <span>

#include "sldi/circuits.hpp"
#include "sldi/ncp.hpp"

namespace sldi {

template <class T>
CycleTimeSet<T> oracle_ncp(const PicInstance<T>& inst, std::size_t max_n = 8) {
    inst.validate();
    const std::size_t n = inst.size();
    if (n > max_n) {
        throw Error(Errc::too_large, "oracle_ncp: n = " + std::to_string(n) + " exceeds " + std::to_string(max_n));
    }
    using S = Tropical<T>;

    Adjacency adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!inst.P(i, j).is_neg_inf() || !inst.I(i, j).is_neg_inf() || !inst.C(i, j).is_neg_inf()) {
                adj[i].push_back(j);
            }
        }
    }

    bool infeasible = false;
    S lo = S::epsilon();
    S hi = S::top();
    for_each_elementary_circuit(adj, [&](std::span<const std::size_t> nodes) {
        // net λ-degree (p - q) -> heaviest constant part over all arc-class picks
        std::map<long, T> best{{0, T(0)}};
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const std::size_t u = nodes[k];
            const std::size_t v = nodes[(k + 1) % nodes.size()];
            std::map<long, T> next;
            auto relax = [&next](long d, const T& c) {
                auto [it, inserted] = next.try_emplace(d, c);
                if (!inserted && it->second < c) it->second = c;
            };
            for (const auto& [d, c] : best) {
                if (!inst.P(u, v).is_neg_inf()) relax(d + 1, c + inst.P(u, v).value());
                if (!inst.I(u, v).is_neg_inf()) relax(d - 1, c + inst.I(u, v).value());
                if (!inst.C(u, v).is_neg_inf()) relax(d, c + inst.C(u, v).value());
            }
            best = std::move(next);
        }
        for (const auto& [d, c] : best) {
            if (d == 0) {
                if (T(0) < c) infeasible = true;
            } else if (d > 0) {
                hi = dual_oplus(hi, S(-c / ScalarTraits<T>::from_int(d)));
            } else {
                lo = oplus(lo, S(c / ScalarTraits<T>::from_int(-d)));
            }
        }
    });
    if (infeasible) return CycleTimeSet<T>::empty();
    return CycleTimeSet<T>::interval(lo, hi);
}

}  // namespace sldi
