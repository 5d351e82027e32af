#include "sldi/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace sldi {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
    throw Error(Errc::validation_error, where + ": " + what);
}

std::string line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

template <class T>
Tropical<T> read_scalar(const Json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Tropical<T>::integer(j.get<std::int64_t>());
        if (j.is_number_float()) return parse_scalar<T>(j.dump());
        if (j.is_string()) return parse_scalar<T>(j.get<std::string>());
    } catch (const Error& e) {
        invalid(where, e.what());
    }
    invalid(where, "expected a number or one of \"-inf\", \"+inf\", \"e\", \"p/q\"");
}

template <class T>
Json write_scalar(const Tropical<T>& a) {
    if (!a.is_finite()) return to_string(a);
    const T& v = a.value();
    if constexpr (std::is_same_v<T, Rational>) {
        if (v.denominator() == 1) return v.numerator();
        return to_string(a);
    } else {
        if (v == static_cast<double>(static_cast<std::int64_t>(v)) && std::abs(v) < 9e15) {
            return static_cast<std::int64_t>(v);
        }
        return v;
    }
}

std::vector<std::string> read_names(const Json& j, const std::string& where) {
    if (!j.is_array()) invalid(where, "expected an array of names");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string() || e.get<std::string>().empty()) invalid(where, "names must be non-empty strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::size_t event_index(const Json& j, const std::vector<std::string>& events, const std::string& where) {
    if (j.is_number_unsigned()) {
        auto k = j.get<std::size_t>();
        if (k >= events.size()) invalid(where, "event index " + std::to_string(k) + " out of range");
        return k;
    }
    if (j.is_string()) {
        auto it = std::find(events.begin(), events.end(), j.get<std::string>());
        if (it == events.end()) invalid(where, "unknown event '" + j.get<std::string>() + "'");
        return static_cast<std::size_t>(it - events.begin());
    }
    invalid(where, "expected an event name or index");
}

template <class T>
Matrix<T> read_matrix(const Json& j, std::size_t n, const std::string& where) {
    if (!j.is_array() || j.size() != n) invalid(where, "expected " + std::to_string(n) + " rows");
    Matrix<T> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = j[i];
        const std::string rw = where + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != n) invalid(rw, "expected " + std::to_string(n) + " entries");
        for (std::size_t c = 0; c < n; ++c) m(i, c) = read_scalar<T>(row[c], rw + "[" + std::to_string(c) + "]");
    }
    return m;
}

template <class T>
Pteg<T> read_matrices(const Json& j, std::size_t n, const std::string& where) {
    if (!j.is_object()) invalid(where, "expected an object with A0, A1, B0, B1");
    auto g = Pteg<T>::free(n);
    for (const auto& [key, value] : j.items()) {
        const std::string w = where + "." + key;
        if (key == "A0") g.A0 = read_matrix<T>(value, n, w);
        else if (key == "A1") g.A1 = read_matrix<T>(value, n, w);
        else if (key == "B0") g.B0 = read_matrix<T>(value, n, w);
        else if (key == "B1") g.B1 = read_matrix<T>(value, n, w);
        else invalid(w, "unknown matrix (expected A0, A1, B0 or B1)");
    }
    try {
        g.validate();
    } catch (const Error& e) {
        invalid(where, e.what());
    }
    return g;
}

template <class T>
PtegNet<T> read_net(const Json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("transitions") || !j.contains("places")) {
        invalid(where, "a net needs \"transitions\" and \"places\"");
    }
    PtegNet<T> net;
    net.transitions = read_names(j["transitions"], where + ".transitions");
    const auto& places = j["places"];
    if (!places.is_array()) invalid(where + ".places", "expected an array");
    for (std::size_t k = 0; k < places.size(); ++k) {
        const auto& p = places[k];
        const std::string w = where + ".places[" + std::to_string(k) + "]";
        if (!p.is_object() || !p.contains("from") || !p.contains("to") || !p.contains("window")) {
            invalid(w, "a place needs \"from\", \"to\" and \"window\"");
        }
        if (!p["from"].is_string() || !p["to"].is_string()) invalid(w, "from/to must be transition names");
        Place<T> place;
        place.from = p["from"].get<std::string>();
        place.to = p["to"].get<std::string>();
        if (p.contains("tokens")) {
            if (!p["tokens"].is_number_integer()) invalid(w, "tokens must be 0 or 1");
            place.tokens = p["tokens"].get<int>();
        }
        const auto& win = p["window"];
        if (!win.is_array() || win.size() != 2) invalid(w, "window must be [lower, upper]");
        place.lower = read_scalar<T>(win[0], w + ".window[0]");
        place.upper = read_scalar<T>(win[1], w + ".window[1]");
        net.places.push_back(std::move(place));
    }
    return net;
}

template <class T>
void apply_carry_over(Pteg<T>& g, const Json& j, const std::vector<std::string>& events, const std::string& where) {
    if (!j.is_array()) invalid(where, "expected an array of events");
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::size_t i = event_index(j[k], events, where + "[" + std::to_string(k) + "]");
        g.A1(i, i) = Tropical<T>::unit();
        g.B1(i, i) = Tropical<T>::unit();
    }
}

template <class T>
void apply_overrides(Pteg<T>& g, const Json& j, const std::vector<std::string>& events, const std::string& where) {
    if (!j.is_array()) invalid(where, "expected an array of overrides");
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto& o = j[k];
        const std::string w = where + "[" + std::to_string(k) + "]";
        if (!o.is_object() || !o.contains("matrix") || !o.contains("row") || !o.contains("col") ||
            !o.contains("value")) {
            invalid(w, "an override needs \"matrix\", \"row\", \"col\" and \"value\"");
        }
        const std::string name = o["matrix"].is_string() ? o["matrix"].get<std::string>() : "";
        Matrix<T>* m = name == "A0" ? &g.A0 : name == "A1" ? &g.A1 : name == "B0" ? &g.B0 : name == "B1" ? &g.B1 : nullptr;
        if (m == nullptr) invalid(w + ".matrix", "expected A0, A1, B0 or B1");
        const std::size_t r = event_index(o["row"], events, w + ".row");
        const std::size_t c = event_index(o["col"], events, w + ".col");
        (*m)(r, c) = read_scalar<T>(o["value"], w + ".value");
    }
}

template <class T>
Json write_matrix(const Matrix<T>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(write_scalar(m(i, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class T>
Json write_matrices(const Pteg<T>& g) {
    Json j = Json::object();
    const auto free = Pteg<T>::free(g.size());
    if (g.A0 != free.A0) j["A0"] = write_matrix(g.A0);
    if (g.A1 != free.A1) j["A1"] = write_matrix(g.A1);
    if (g.B0 != free.B0) j["B0"] = write_matrix(g.B0);
    if (g.B1 != free.B1) j["B1"] = write_matrix(g.B1);
    return j;
}

// Pretty-prints with every innermost array (matrix row, name list) on one line.
void dump_compact_rows(const Json& j, std::ostringstream& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    auto flat = [](const Json& a) {
        return a.is_array() && std::none_of(a.begin(), a.end(), [](const Json& e) { return e.is_structured(); });
    };
    if (j.is_object()) {
        if (j.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        std::size_t k = 0;
        for (const auto& [key, value] : j.items()) {
            out << inner << Json(key).dump() << ": ";
            dump_compact_rows(value, out, indent + 1);
            out << (++k < j.size() ? ",\n" : "\n");
        }
        out << pad << "}";
    } else if (j.is_array() && !flat(j)) {
        out << "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            out << inner;
            dump_compact_rows(j[k], out, indent + 1);
            out << (k + 1 < j.size() ? ",\n" : "\n");
        }
        out << pad << "]";
    } else if (j.is_array()) {
        out << "[";
        for (std::size_t k = 0; k < j.size(); ++k) out << (k ? ", " : "") << j[k].dump();
        out << "]";
    } else {
        out << j.dump();
    }
}

}  // namespace

template <class T>
const Schedule& Model<T>::schedule(const std::string& name) const {
    for (const auto& [key, v] : schedules) {
        if (key == name) return v;
    }
    throw Error(Errc::unknown_mode, "unknown schedule '" + name + "'");
}

template <class T>
Model<T> parse_model(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
        throw Error(Errc::parse_error, "model: malformed JSON at " + line_col(text, byte));
    }
    if (!root.is_object()) invalid("model", "top level must be an object");
    for (const auto& [key, value] : root.items()) {
        static const char* known[] = {"version", "events", "modes", "carry_over", "overrides", "schedules"};
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            invalid("model", "unknown key '" + key + "'");
        }
    }
    if (!root.contains("version") || root["version"] != 1) invalid("version", "only version 1 is supported");
    if (!root.contains("modes") || !root["modes"].is_object() || root["modes"].empty()) {
        invalid("modes", "expected a non-empty object of modes");
    }
    const auto& modes = root["modes"];

    Model<T> model;
    if (root.contains("events")) {
        model.events = read_names(root["events"], "events");
    } else {
        // first appearance over all nets, in declaration order
        for (const auto& [name, mode] : modes.items()) {
            if (!mode.contains("net") || !mode["net"].contains("transitions")) {
                invalid("events", "required when a mode is given in matrix form");
            }
            for (const auto& t : read_names(mode["net"]["transitions"], "modes." + name + ".net.transitions")) {
                if (std::find(model.events.begin(), model.events.end(), t) == model.events.end()) {
                    model.events.push_back(t);
                }
            }
        }
    }
    for (std::size_t i = 0; i < model.events.size(); ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            if (model.events[i] == model.events[k]) invalid("events", "duplicate event '" + model.events[i] + "'");
        }
    }
    const std::size_t n = model.events.size();
    if (n == 0) invalid("events", "at least one event is required");

    for (const auto& [name, mode] : modes.items()) {
        const std::string w = "modes." + name;
        if (!mode.is_object()) invalid(w, "expected an object");
        const bool has_net = mode.contains("net");
        const bool has_matrices = mode.contains("matrices");
        if (has_net == has_matrices) invalid(w, "give exactly one of \"net\" or \"matrices\"");
        Pteg<T> g;
        if (has_net) {
            try {
                g = compile(read_net<T>(mode["net"], w + ".net"), model.events);
            } catch (const Error& e) {
                throw Error(e.code(), w + ".net: " + e.what());
            }
        } else {
            g = read_matrices<T>(mode["matrices"], n, w + ".matrices");
        }
        Pteg<T> base = mode.contains("base") ? read_matrices<T>(mode["base"], n, w + ".base") : g;
        model.sldi.alphabet.push_back(name);
        model.sldi.modes.push_back(std::move(g));
        model.base.push_back(std::move(base));
    }

    auto mode_of = [&model](const std::string& name, const std::string& where) -> Pteg<T>& {
        for (std::size_t k = 0; k < model.sldi.alphabet.size(); ++k) {
            if (model.sldi.alphabet[k] == name) return model.sldi.modes[k];
        }
        throw Error(Errc::unknown_mode, where + ": unknown mode '" + name + "'");
    };
    if (root.contains("carry_over")) {
        if (!root["carry_over"].is_object()) invalid("carry_over", "expected an object keyed by mode");
        for (const auto& [name, list] : root["carry_over"].items()) {
            apply_carry_over(mode_of(name, "carry_over"), list, model.events, "carry_over." + name);
        }
    }
    if (root.contains("overrides")) {
        if (!root["overrides"].is_object()) invalid("overrides", "expected an object keyed by mode");
        for (const auto& [name, list] : root["overrides"].items()) {
            apply_overrides(mode_of(name, "overrides"), list, model.events, "overrides." + name);
        }
    }
    if (root.contains("schedules")) {
        if (!root["schedules"].is_object()) invalid("schedules", "expected an object of named schedules");
        for (const auto& [name, word] : root["schedules"].items()) {
            Schedule v = read_names(word, "schedules." + name);
            if (v.empty()) invalid("schedules." + name, "a schedule needs at least one mode");
            for (const auto& z : v) mode_of(z, "schedules." + name);
            model.schedules.emplace_back(name, std::move(v));
        }
    }
    for (std::size_t k = 0; k < model.sldi.modes.size(); ++k) {
        try {
            model.sldi.modes[k].validate();
        } catch (const Error& e) {
            invalid("modes." + model.sldi.alphabet[k] + " (after augmentation)", e.what());
        }
    }
    model.sldi.validate();
    return model;
}

template <class T>
Model<T> load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::parse_error, "cannot open model file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_model<T>(buf.str());
    } catch (const Error& e) {
        throw Error(e.code(), path.filename().string() + ": " + e.what());
    }
}

template <class T>
std::string emit_model(const Model<T>& model) {
    Json root = Json::object();
    root["version"] = 1;
    root["events"] = model.events;
    Json modes = Json::object();
    for (std::size_t k = 0; k < model.sldi.alphabet.size(); ++k) {
        Json mode = Json::object();
        mode["matrices"] = write_matrices(model.sldi.modes[k]);
        if (!(model.base[k] == model.sldi.modes[k])) mode["base"] = write_matrices(model.base[k]);
        modes[model.sldi.alphabet[k]] = std::move(mode);
    }
    root["modes"] = std::move(modes);
    if (!model.schedules.empty()) {
        Json schedules = Json::object();
        for (const auto& [name, v] : model.schedules) schedules[name] = v;
        root["schedules"] = std::move(schedules);
    }
    std::ostringstream out;
    dump_compact_rows(root, out, 0);
    out << '\n';
    return out.str();
}

template <class T>
std::string emit_result(const CycleTimeSet<T>& set) {
    Json j = Json::object();
    if (set.is_empty()) {
        j["empty"] = true;
    } else {
        j["lo"] = write_scalar(set.lo());
        j["hi"] = write_scalar(set.hi());
    }
    return j.dump();
}

template <class T>
std::string emit_report(const TrajectoryReport<T>& report, const std::vector<std::string>& events) {
    Json j = Json::object();
    if (report.passed()) {
        j["status"] = "pass";
        return j.dump();
    }
    const auto& v = *report.violation;
    j["status"] = "fail";
    Json viol = Json::object();
    viol["repetition"] = v.repetition;
    viol["position"] = v.position;
    viol["constraint"] = std::string(to_string(v.constraint));
    viol["row"] = v.row;
    if (v.row < events.size()) viol["event"] = events[v.row];
    viol["lhs"] = write_scalar(v.lhs);
    viol["rhs"] = write_scalar(v.rhs);
    j["violation"] = std::move(viol);
    return j.dump();
}

#define SLDI_INSTANTIATE(T)                                                                   \
    template struct Model<T>;                                                                 \
    template Model<T> parse_model<T>(std::string_view);                                       \
    template Model<T> load_model<T>(const std::filesystem::path&);                            \
    template std::string emit_model<T>(const Model<T>&);                                      \
    template std::string emit_result<T>(const CycleTimeSet<T>&);                              \
    template std::string emit_report<T>(const TrajectoryReport<T>&, const std::vector<std::string>&);

SLDI_INSTANTIATE(double)
SLDI_INSTANTIATE(Rational)

#undef SLDI_INSTANTIATE

}  // namespace sldi
