#pragma once

// .model files (JSON) and machine-readable result output.
//
// {
//   "version": 1,
//   "events": ["t1", "t2"],                       optional
//   "modes": {
//     "a": {"net": {"transitions": [...],
//                   "places": [{"from": "t1", "to": "t2", "tokens": 0, "window": [0, "+inf"]}]}},
//     "b": {"matrices": {"A0": [[...]], "A1": ..., "B0": ..., "B1": ...},
//           "base": {"A0": ...}}                 optional, matrices before augmentation
//   },
//   "carry_over": {"a": ["t2"]},                   optional, A1(i,i) = B1(i,i) = 0
//   "overrides": {"a": [{"matrix": "A1", "row": "t2", "col": "t1", "value": 1}]},
//   "schedules": {"ab": ["a", "b"]}                optional
// }
//
// Scalars are JSON numbers or the strings "-inf", "+inf", "e", "p/q".
// Omitted matrices default to the unconstrained ones (A = -inf, B = +inf).
// carry_over is applied first, then overrides.

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sldi/ncp.hpp"
#include "sldi/pteg.hpp"
#include "sldi/sldi.hpp"
#include "sldi/trajectory.hpp"

namespace sldi {

template <class T>
struct Model {
    std::vector<std::string> events;
    Sldi<T> sldi;                 ///< the switched system, augmentation applied
    std::vector<Pteg<T>> base;    ///< per mode, as declared before augmentation
    std::vector<std::pair<std::string, Schedule>> schedules;

    [[nodiscard]] const Schedule& schedule(const std::string& name) const;
    [[nodiscard]] const Pteg<T>& base_mode(const std::string& name) const { return base[sldi.index_of(name)]; }
};

template <class T>
Model<T> parse_model(std::string_view text);

template <class T>
Model<T> load_model(const std::filesystem::path& path);

/// Matrix-form rendering: "matrices" holds the augmented system and "base"
/// is written only where it differs. parse_model(emit_model(m)) == m.
template <class T>
std::string emit_model(const Model<T>& model);

/// {"empty":true}, {"lo":77,"hi":192}, {"lo":73,"hi":"+inf"}
template <class T>
std::string emit_result(const CycleTimeSet<T>& set);

/// {"status":"pass"} or {"status":"fail","violation":{...}}
template <class T>
std::string emit_report(const TrajectoryReport<T>& report, const std::vector<std::string>& events = {});

template <class T>
bool operator==(const Model<T>& a, const Model<T>& b) {
    return a.events == b.events && a.sldi.alphabet == b.sldi.alphabet && a.sldi.modes == b.sldi.modes &&
           a.base == b.base && a.schedules == b.schedules;
}

}  // namespace sldi
