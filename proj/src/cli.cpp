#include "sldi/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sldi/bench.hpp"
#include "sldi/model_io.hpp"

namespace sldi::cli {

namespace {

struct Options {
    bool use_float = false;

    std::string model;
    std::string schedule;
    std::string method = "improved";
    std::string mode;
    bool augmented = false;
    std::string lambda;
    std::size_t reps = 10;
    std::string format = "csv";
    std::string trajectory;
    std::size_t max_reps = 8;
    std::vector<std::string> methods{"improved", "direct"};
};

// A schedule argument is the name of a schedule declared in the model, or a
// literal mode word ("ab", or "load,unload" for longer mode names).
template <class T>
Schedule schedule_of(const Model<T>& model, const std::string& text) {
    for (const auto& [name, v] : model.schedules) {
        if (name == text) return v;
    }
    auto v = parse_schedule(text);
    resolve(model.sldi, v);
    return v;
}

template <class T>
int analyze(const Options& o, std::ostream& out, std::ostream& err) {
    const auto model = load_model<T>(o.model);
    const auto v = schedule_of(model, o.schedule);
    if (o.method == "direct") {
        out << emit_result(cycle_times_direct(model.sldi, v)) << '\n';
        return ok;
    }
    const auto improved = cycle_times_improved(model.sldi, v);
    if (o.method == "both") {
        const auto direct = cycle_times_direct(model.sldi, v);
        if (!(direct == improved)) {
            err << "methods disagree: direct " << to_string(direct) << ", improved " << to_string(improved) << '\n';
            return method_disagreement;
        }
    }
    out << emit_result(improved) << '\n';
    return ok;
}

template <class T>
int pteg_analyze(const Options& o, std::ostream& out) {
    const auto model = load_model<T>(o.model);
    const auto& g = o.augmented ? model.sldi.mode(o.mode) : model.base_mode(o.mode);
    out << emit_result(cycle_time_set(g)) << '\n';
    return ok;
}

template <class T>
int synthesize(const Options& o, std::ostream& out) {
    const auto model = load_model<T>(o.model);
    const auto v = schedule_of(model, o.schedule);
    Tropical<T> lambda;
    try {
        lambda = parse_scalar<T>(o.lambda);
    } catch (const Error& e) {
        throw Error(Errc::invalid_argument, std::string("--lambda: ") + e.what());
    }
    const auto x0 = synthesize_v_periodic(model.sldi, v, lambda);
    const auto traj = unroll(model.sldi, v, x0, lambda, o.reps, model.events);
    out << render(traj, parse_render_format(o.format));
    return ok;
}

template <class T>
int check(const Options& o, std::ostream& out) {
    const auto model = load_model<T>(o.model);
    const auto v = schedule_of(model, o.schedule);
    std::ifstream in(o.trajectory, std::ios::binary);
    if (!in) throw Error(Errc::parse_error, "cannot open trajectory file '" + o.trajectory + "'");
    std::ostringstream text;
    text << in.rdbuf();
    const auto traj = parse_csv<T>(text.str());
    out << emit_report(check_sldi_trajectory(model.sldi, v, traj), model.events) << '\n';
    return ok;
}

template <class T>
int bench(const Options& o, std::ostream& out) {
    const auto model = load_model<T>(o.model);
    const auto v = schedule_of(model, o.schedule);
    for (const auto& m : o.methods) {
        if (m != "improved" && m != "direct") throw Error(Errc::invalid_argument, "unknown method '" + m + "'");
    }
    out << std::setw(6) << "reps" << std::setw(8) << "|v|";
    for (const auto& m : o.methods) out << std::setw(16) << (m + "_ms");
    out << '\n';
    for (std::size_t k = 1; k <= o.max_reps; ++k) {
        const auto word = repeat(v, k);
        out << std::setw(6) << k << std::setw(8) << word.size();
        for (const auto& m : o.methods) {
            const double s = median_seconds([&] {
                [[maybe_unused]] static volatile bool sink = false;
                auto r = m == "direct" ? cycle_times_direct(model.sldi, word) : cycle_times_improved(model.sldi, word);
                sink = r.is_empty();
            });
            out << std::setw(16) << std::fixed << std::setprecision(3) << s * 1e3;
        }
        out << '\n' << std::flush;
    }
    return ok;
}

template <class T>
int export_model(const Options& o, std::ostream& out) {
    out << emit_model(load_model<T>(o.model));
    return ok;
}

template <class T>
int dispatch(const std::string& command, const Options& o, std::ostream& out, std::ostream& err) {
    if (command == "analyze") return analyze<T>(o, out, err);
    if (command == "pteg-analyze") return pteg_analyze<T>(o, out);
    if (command == "synthesize") return synthesize<T>(o, out);
    if (command == "check") return check<T>(o, out);
    if (command == "bench") return bench<T>(o, out);
    return export_model<T>(o, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Cycle times of P-time event graphs and switched max-plus LDIs under periodic schedules", "sldi"};
    app.add_flag("--float", o.use_float, "Use floating-point arithmetic instead of exact rationals");
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "Cycle-time set of the switched system under a schedule");
    analyze->add_option("model", o.model, "Model file")->required();
    analyze->add_option("--schedule", o.schedule, "Schedule name or mode word")->required();
    analyze->add_option("--method", o.method, "direct, improved or both")
        ->check(CLI::IsMember({"direct", "improved", "both"}));

    auto* pteg = app.add_subcommand("pteg-analyze", "Cycle-time set of a single mode");
    pteg->add_option("model", o.model, "Model file")->required();
    pteg->add_option("--mode", o.mode, "Mode name")->required();
    pteg->add_flag("--augmented", o.augmented, "Analyze the mode after carry-over/override augmentation");

    auto* synth = app.add_subcommand("synthesize", "Print a periodic trajectory with the given cycle time");
    synth->add_option("model", o.model, "Model file")->required();
    synth->add_option("--schedule", o.schedule, "Schedule name or mode word")->required();
    synth->add_option("--lambda", o.lambda, "Cycle time per subschedule repetition")->required();
    synth->add_option("--reps", o.reps, "Last repetition index K (rows 0..K)");
    synth->add_option("--format", o.format, "csv or table")->check(CLI::IsMember({"csv", "table"}));

    auto* chk = app.add_subcommand("check", "Check a CSV trajectory against the switched system");
    chk->add_option("model", o.model, "Model file")->required();
    chk->add_option("--schedule", o.schedule, "Schedule name or mode word")->required();
    chk->add_option("trajectory", o.trajectory, "CSV trajectory file")->required();

    auto* bch = app.add_subcommand("bench", "Time the methods on v, v^2, ..., v^max-reps");
    bch->add_option("model", o.model, "Model file")->required();
    bch->add_option("--schedule", o.schedule, "Schedule name or mode word")->required();
    bch->add_option("--max-reps", o.max_reps, "Largest repetition count")->check(CLI::PositiveNumber);
    bch->add_option("--methods", o.methods, "Comma-separated list of improved, direct")->delimiter(',');

    auto* exp = app.add_subcommand("export", "Print the model in matrix form, augmentation applied");
    exp->add_option("model", o.model, "Model file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        return o.use_float ? dispatch<double>(command, o, out, err) : dispatch<Rational>(command, o, out, err);
    } catch (const Error& e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
        switch (e.code()) {
            case Errc::infeasible_lambda: return infeasible;
            case Errc::invalid_argument:
            case Errc::unsupported_format: return usage;
            default: return model_error;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return model_error;
    }
}

}  // namespace sldi::cli
