#pragma once

// Switched LDIs under periodic schedules w = v^ω.
//
// Step m of the schedule runs mode v[m mod |v|]; its LDI couples x(m) with
// itself (A0/B0) and with x(m+1) (A1/B1). A v-periodic trajectory advances by
// λ per repetition of v, so λ is a time per full subschedule.

#include <cstddef>
#include <string>
#include <vector>

#include "sldi/errors.hpp"
#include "sldi/matrix.hpp"
#include "sldi/ncp.hpp"
#include "sldi/pteg.hpp"
#include "sldi/trajectory.hpp"

namespace sldi {

template <class T>
struct Sldi {
    std::vector<std::string> alphabet;
    std::vector<Pteg<T>> modes;  ///< modes[i] belongs to alphabet[i]

    [[nodiscard]] std::size_t size() const { return modes.empty() ? 0 : modes.front().size(); }

    void validate() const {
        if (alphabet.empty()) throw Error(Errc::validation_error, "SLDI: empty alphabet");
        if (alphabet.size() != modes.size()) {
            throw Error(Errc::validation_error, "SLDI: alphabet and mode list differ in length");
        }
        for (std::size_t i = 0; i < alphabet.size(); ++i) {
            if (alphabet[i].empty()) throw Error(Errc::validation_error, "SLDI: empty mode name");
            for (std::size_t j = 0; j < i; ++j) {
                if (alphabet[i] == alphabet[j]) {
                    throw Error(Errc::validation_error, "SLDI: duplicate mode '" + alphabet[i] + "'");
                }
            }
            modes[i].validate();
            if (modes[i].size() != size()) {
                throw Error(Errc::dimension_mismatch, "SLDI: mode '" + alphabet[i] + "' has a different dimension");
            }
        }
    }

    [[nodiscard]] std::size_t index_of(const std::string& mode) const {
        for (std::size_t i = 0; i < alphabet.size(); ++i) {
            if (alphabet[i] == mode) return i;
        }
        throw Error(Errc::unknown_mode, "unknown mode '" + mode + "'");
    }

    [[nodiscard]] const Pteg<T>& mode(const std::string& name) const { return modes[index_of(name)]; }
};

/// Subschedule v, the word repeated forever.
using Schedule = std::vector<std::string>;

/// Splits "ab" into {"a", "b"} when every mode name is one character,
/// otherwise expects comma-separated names ("load,unload").
inline Schedule parse_schedule(const std::string& text) {
    Schedule v;
    if (text.find(',') != std::string::npos) {
        std::size_t start = 0;
        while (true) {
            auto comma = text.find(',', start);
            v.push_back(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    } else {
        for (char c : text) v.emplace_back(1, c);
    }
    if (v.empty()) throw Error(Errc::invalid_argument, "empty schedule");
    return v;
}

inline std::string to_string(const Schedule& v) {
    bool single = true;
    for (const auto& z : v) single = single && z.size() == 1;
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!single && i) out += ',';
        out += v[i];
    }
    return out;
}

inline Schedule repeat(const Schedule& v, std::size_t times) {
    Schedule out;
    for (std::size_t k = 0; k < times; ++k) out.insert(out.end(), v.begin(), v.end());
    return out;
}

/// Mode indices of v, validated against the SLDI.
template <class T>
std::vector<std::size_t> resolve(const Sldi<T>& s, const Schedule& v) {
    if (v.empty()) throw Error(Errc::invalid_argument, "schedule must contain at least one mode");
    std::vector<std::size_t> idx;
    idx.reserve(v.size());
    for (const auto& z : v) idx.push_back(s.index_of(z));
    return idx;
}

/// The 1-periodic LDI equivalent to the SLDI under v^ω, in PIC form, on the
/// stacked dater [x(v^k); x(v^k v1); ...; x(v^k v1..v_{|v|-1})].
template <class T>
PicInstance<T> lift_direct(const Sldi<T>& s, const Schedule& v) {
    s.validate();
    const auto idx = resolve(s, v);
    const std::size_t n = s.size();
    const std::size_t L = idx.size();
    PicInstance<T> out{Matrix<T>::epsilon(L * n), Matrix<T>::epsilon(L * n), Matrix<T>::epsilon(L * n)};
    for (std::size_t r = 0; r < L; ++r) {
        const auto pic = pic_of(s.modes[idx[r]]);
        out.C.set_block(r * n, r * n, pic.C);
        if (r + 1 < L) {
            out.C.set_block(r * n, (r + 1) * n, pic.P);
            out.C.set_block((r + 1) * n, r * n, pic.I);
        } else {
            out.P.set_block(r * n, 0, pic.P);
            out.I.set_block(0, r * n, pic.I);
        }
    }
    return out;
}

template <class T>
CycleTimeSet<T> cycle_times_direct(const Sldi<T>& s, const Schedule& v) {
    return solve_ncp(lift_direct(s, v)).clamp_nonnegative();
}

/// Cycle times without building the |v|n-sized lifted instance: the block
/// path structure is folded mode by mode into n×n matrices, O(|v|n³ + n⁴).
template <class T>
CycleTimeSet<T> cycle_times_improved(const Sldi<T>& s, const Schedule& v) {
    s.validate();
    const auto idx = resolve(s, v);
    const std::size_t L = idx.size();

    // per-mode PIC data and C*, computed once per distinct mode
    std::vector<PicInstance<T>> pic(s.modes.size());
    std::vector<Matrix<T>> cstar(s.modes.size());
    std::vector<bool> ready(s.modes.size(), false);
    for (std::size_t z : idx) {
        if (ready[z]) continue;
        pic[z] = pic_of(s.modes[z]);
        if (has_positive_circuit(pic[z].C) == CircuitClass::HasPositiveCircuit) return CycleTimeSet<T>::empty();
        cstar[z] = kleene_star(pic[z].C);
        ready[z] = true;
    }

    std::vector<Matrix<T>> p(L), i(L);
    for (std::size_t r = 0; r < L; ++r) {
        const std::size_t cur = idx[r];
        const std::size_t nxt = idx[(r + 1) % L];
        p[r] = otimes(cstar[cur], pic[cur].P, cstar[nxt]);
        i[r] = otimes(cstar[nxt], pic[cur].I, cstar[cur]);
    }

    const auto id = Matrix<T>::identity(s.size());
    Matrix<T> lcp = id;
    Matrix<T> lci = id;
    Matrix<T> lp = p[L - 1];
    Matrix<T> li = i[0];
    for (std::size_t r = 2; r <= L; ++r) {
        const auto& pa = p[L - r];
        const auto& ia = i[L - r];
        const auto& ib = i[r - 1];
        const auto& pb = p[r - 1];
        auto cp = otimes(pa, lcp, ia);
        auto ci = otimes(ib, lci, pb);
        if (has_positive_circuit(cp) == CircuitClass::HasPositiveCircuit ||
            has_positive_circuit(ci) == CircuitClass::HasPositiveCircuit) {
            return CycleTimeSet<T>::empty();
        }
        lp = otimes(pa, lcp, lp);
        li = otimes(ib, lci, li);
        lcp = kleene_star(cp);
        lci = kleene_star(ci);
    }
    return solve_ncp(PicInstance<T>{lp, li, oplus(oplus(lcp, lci), pic[idx[0]].C)}).clamp_nonnegative();
}

/// Daters x(v^0 v1..v_h), h = 0..|v|-1, of a v-periodic trajectory with
/// period λ (the canonical witness of the lifted LDI, unstacked).
template <class T>
std::vector<Vector<T>> synthesize_v_periodic(const Sldi<T>& s, const Schedule& v, const Tropical<T>& lambda) {
    if (!lambda.is_finite() || lambda < Tropical<T>::unit()) {
        throw Error(Errc::infeasible_lambda, "cycle time must be finite and non-negative");
    }
    const auto stacked = periodic_witness(lift_direct(s, v), lambda);
    const std::size_t n = s.size();
    std::vector<Vector<T>> out;
    for (std::size_t h = 0; h < v.size(); ++h) {
        out.emplace_back(stacked.begin() + static_cast<std::ptrdiff_t>(h * n),
                         stacked.begin() + static_cast<std::ptrdiff_t>((h + 1) * n));
    }
    return out;
}

/// Unrolls x(v^k v1..v_h) = x(v^0 v1..v_h) + kλ for k = 0..K.
template <class T>
Trajectory<T> unroll(const Sldi<T>& s, const Schedule& v, const std::vector<Vector<T>>& x0, const Tropical<T>& lambda,
                     std::size_t K, std::vector<std::string> events = {}) {
    resolve(s, v);
    if (x0.size() != v.size()) throw Error(Errc::dimension_mismatch, "unroll: one dater per schedule position expected");
    std::vector<Tropical<T>> stacked;
    for (const auto& x : x0) {
        if (x.size() != s.size()) throw Error(Errc::dimension_mismatch, "unroll: dater dimension differs from the SLDI");
        stacked.insert(stacked.end(), x.begin(), x.end());
    }
    return unroll_periodic<T>(v.size(), stacked, lambda, K, std::move(events));
}

/// Checks the switched dynamics and non-decreasingness on a recorded
/// trajectory whose period must equal |v|.
template <class T>
TrajectoryReport<T> check_sldi_trajectory(const Sldi<T>& s, const Schedule& v, const Trajectory<T>& traj) {
    s.validate();
    const auto idx = resolve(s, v);
    if (traj.period != v.size()) {
        throw Error(Errc::missing_prefix, "trajectory period " + std::to_string(traj.period) +
                                              " does not match schedule length " + std::to_string(v.size()));
    }
    if (traj.daters.size() % v.size() != 0) {
        throw Error(Errc::missing_prefix, "trajectory stops in the middle of a subschedule repetition");
    }
    return check_daters<T>(std::span<const Vector<T>>(traj.daters), v.size(),
                           [&](std::size_t m) -> const Pteg<T>& { return s.modes[idx[m % idx.size()]]; });
}

}  // namespace sldi
