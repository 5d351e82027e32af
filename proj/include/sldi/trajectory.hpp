#pragma once

// Dater trajectories: storage, periodic unrolling, constraint checking and
// text rendering (CSV / aligned table).
//
// A trajectory of a switched system under schedule v^ω is stored flat:
// daters[m] is x(w_m]), the event vector of step m, whose mode is
// v[m % period]. Rendering groups one subschedule repetition per row.

#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sldi/errors.hpp"
#include "sldi/matrix.hpp"

namespace sldi {

enum class Constraint { A0, B0, A1, B1, nondecreasing };

inline std::string_view to_string(Constraint c) {
    switch (c) {
        case Constraint::A0: return "A0";
        case Constraint::B0: return "B0";
        case Constraint::A1: return "A1";
        case Constraint::B1: return "B1";
        case Constraint::nondecreasing: return "nondecreasing";
    }
    return "?";
}

/// A violated inequality lhs <= rhs at `row` of step (repetition, position).
template <class T>
struct Violation {
    std::size_t repetition = 0;  ///< k in v^k v_1..v_h
    std::size_t position = 0;    ///< h
    Constraint constraint = Constraint::A0;
    std::size_t row = 0;
    Tropical<T> lhs;
    Tropical<T> rhs;
};

template <class T>
struct TrajectoryReport {
    std::optional<Violation<T>> violation;

    [[nodiscard]] bool passed() const noexcept { return !violation.has_value(); }
};

template <class T>
struct Trajectory {
    std::size_t period = 1;           ///< |v|
    std::vector<std::string> events;  ///< n event names (may be empty: "x1".."xn")
    std::vector<Vector<T>> daters;    ///< flat, index = k * period + h

    [[nodiscard]] std::size_t repetitions() const noexcept {
        return period == 0 ? 0 : daters.size() / period;
    }
};

/// Checks every step of a (switched) LDI trajectory:
///   A0 x(m) <= x(m) <= B0 ⊠ x(m)
///   A1 x(m) <= x(m+1) <= B1 ⊠ x(m)      (when step m+1 is present)
///   x(m) <= x(m + period)               (when step m+period is present)
/// `mode_at(m)` returns an object exposing A0, A1, B0, B1 for step m.
/// Reports the first violation in step order, then in the order listed above.
template <class T, class ModeAt>
TrajectoryReport<T> check_daters(std::span<const Vector<T>> daters, std::size_t period, ModeAt&& mode_at) {
    TrajectoryReport<T> report;
    if (period == 0) throw Error(Errc::invalid_argument, "period must be positive");
    auto fail = [&](std::size_t m, Constraint c, std::size_t row, const Tropical<T>& lhs, const Tropical<T>& rhs) {
        report.violation = Violation<T>{m / period, m % period, c, row, lhs, rhs};
        return report;
    };
    for (std::size_t m = 0; m < daters.size(); ++m) {
        const auto& g = mode_at(m);
        const auto& x = daters[m];
        const std::size_t n = g.A0.rows();
        if (x.size() != n) {
            throw Error(Errc::dimension_mismatch, "dater of step " + std::to_string(m) + " has " +
                                                      std::to_string(x.size()) + " entries, expected " +
                                                      std::to_string(n));
        }
        const auto a0 = otimes(g.A0, x);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] < a0[i]) return fail(m, Constraint::A0, i, a0[i], x[i]);
        }
        const auto b0 = dual_otimes(g.B0, x);
        for (std::size_t i = 0; i < n; ++i) {
            if (b0[i] < x[i]) return fail(m, Constraint::B0, i, x[i], b0[i]);
        }
        if (m + 1 < daters.size()) {
            const auto& next = daters[m + 1];
            if (next.size() != n) throw Error(Errc::dimension_mismatch, "dater size changes between steps");
            const auto a1 = otimes(g.A1, x);
            for (std::size_t i = 0; i < n; ++i) {
                if (next[i] < a1[i]) return fail(m, Constraint::A1, i, a1[i], next[i]);
            }
            const auto b1 = dual_otimes(g.B1, x);
            for (std::size_t i = 0; i < n; ++i) {
                if (b1[i] < next[i]) return fail(m, Constraint::B1, i, next[i], b1[i]);
            }
        }
        if (m + period < daters.size()) {
            const auto& later = daters[m + period];
            for (std::size_t i = 0; i < n; ++i) {
                if (later[i] < x[i]) return fail(m, Constraint::nondecreasing, i, x[i], later[i]);
            }
        }
    }
    return report;
}

/// Periodic continuation: step (k, h) gets x0 block h shifted by k·λ, k = 0..K.
template <class T>
Trajectory<T> unroll_periodic(std::size_t period, std::span<const Tropical<T>> stacked, const Tropical<T>& lambda,
                              std::size_t repetitions_K, std::vector<std::string> events = {}) {
    if (period == 0 || stacked.size() % period != 0) {
        throw Error(Errc::dimension_mismatch, "stacked dater length is not a multiple of the period");
    }
    if (!lambda.is_finite()) throw Error(Errc::invalid_argument, "unroll: period must be finite");
    const std::size_t n = stacked.size() / period;
    Trajectory<T> traj;
    traj.period = period;
    traj.events = std::move(events);
    for (std::size_t k = 0; k <= repetitions_K; ++k) {
        const auto shift = Tropical<T>(lambda.value() * ScalarTraits<T>::from_int(static_cast<std::int64_t>(k)));
        for (std::size_t h = 0; h < period; ++h) {
            Vector<T> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = otimes(stacked[h * n + i], shift);
            traj.daters.push_back(std::move(x));
        }
    }
    return traj;
}

enum class RenderFormat { csv, table };

inline RenderFormat parse_render_format(std::string_view name) {
    if (name == "csv") return RenderFormat::csv;
    if (name == "table") return RenderFormat::table;
    throw Error(Errc::unsupported_format, "unsupported trajectory format '" + std::string(name) + "'");
}

namespace detail {

template <class T>
std::vector<std::string> column_names(const Trajectory<T>& traj, std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t h = 0; h < traj.period; ++h) {
        for (std::size_t i = 0; i < n; ++i) {
            std::string base = i < traj.events.size() ? traj.events[i] : "x" + std::to_string(i + 1);
            names.push_back(traj.period == 1 ? base : base + "@" + std::to_string(h));
        }
    }
    return names;
}

}  // namespace detail

/// One row per repetition k (label "k"), one column per (position, event).
/// Events are named "<event>" when the period is 1 and "<event>@<h>" otherwise.
template <class T>
std::string render(const Trajectory<T>& traj, RenderFormat format) {
    if (traj.period == 0 || traj.daters.size() % traj.period != 0) {
        throw Error(Errc::invalid_argument, "trajectory does not cover whole repetitions");
    }
    const std::size_t n = traj.daters.empty() ? traj.events.size() : traj.daters.front().size();
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header{"prefix"};
    for (auto& c : detail::column_names(traj, n)) header.push_back(std::move(c));
    cells.push_back(std::move(header));
    for (std::size_t k = 0; k < traj.repetitions(); ++k) {
        std::vector<std::string> row{std::to_string(k)};
        for (std::size_t h = 0; h < traj.period; ++h) {
            for (const auto& v : traj.daters[k * traj.period + h]) row.push_back(to_string(v));
        }
        cells.push_back(std::move(row));
    }

    std::ostringstream out;
    if (format == RenderFormat::csv) {
        for (const auto& row : cells) {
            for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
            out << '\n';
        }
        return out.str();
    }
    std::vector<std::size_t> width(cells.front().size(), 0);
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << "  ";
            out << std::string(width[c] - row[c].size(), ' ') << row[c];
        }
        out << '\n';
    }
    return out.str();
}

/// Inverse of render(…, csv). The period is recovered from "@h" column
/// suffixes; repetition labels must run 0, 1, 2, … without gaps.
template <class T>
Trajectory<T> parse_csv(std::string_view text) {
    auto split = [](std::string_view line) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (true) {
            auto comma = line.find(',', start);
            out.emplace_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return out;
    };
    std::vector<std::string_view> lines;
    for (std::size_t start = 0; start < text.size();) {
        auto nl = text.find('\n', start);
        auto line = text.substr(start, nl == std::string_view::npos ? text.npos : nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) lines.push_back(line);
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    if (lines.empty()) throw Error(Errc::parse_error, "trajectory CSV: missing header");
    auto header = split(lines.front());
    if (header.empty() || header.front() != "prefix") {
        throw Error(Errc::parse_error, "trajectory CSV: header must start with 'prefix'");
    }
    Trajectory<T> traj;
    std::size_t period = 1;
    std::vector<std::string> names;
    for (std::size_t c = 1; c < header.size(); ++c) {
        const auto& col = header[c];
        auto at = col.rfind('@');
        std::string name = col.substr(0, at);
        if (at != std::string::npos) {
            std::size_t h = std::stoul(col.substr(at + 1));
            period = std::max(period, h + 1);
            if (h == 0) names.push_back(name);
        } else {
            names.push_back(name);
        }
    }
    const std::size_t columns = header.size() - 1;
    if (columns % period != 0) throw Error(Errc::parse_error, "trajectory CSV: ragged stacked columns");
    const std::size_t n = columns / period;
    traj.period = period;
    traj.events = std::move(names);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        auto row = split(lines[r]);
        if (row.size() != header.size()) {
            throw Error(Errc::parse_error, "trajectory CSV line " + std::to_string(r + 1) + ": expected " +
                                               std::to_string(header.size()) + " fields");
        }
        if (row.front() != std::to_string(r - 1)) {
            throw Error(Errc::missing_prefix, "trajectory CSV line " + std::to_string(r + 1) + ": expected prefix " +
                                                  std::to_string(r - 1) + ", found '" + row.front() + "'");
        }
        for (std::size_t h = 0; h < period; ++h) {
            Vector<T> x(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = parse_scalar<T>(row[1 + h * n + i]);
                if (!x[i].is_finite()) {
                    throw Error(Errc::parse_error, "trajectory CSV line " + std::to_string(r + 1) +
                                                       ": daters must be finite");
                }
            }
            traj.daters.push_back(std::move(x));
        }
    }
    return traj;
}

}  // namespace sldi
