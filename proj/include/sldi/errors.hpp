#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sldi {

enum class Errc {
    invalid_argument,
    dimension_mismatch,
    invalid_instance,
    too_large,
    inconsistent_parallel_places,
    unknown_mode,
    infeasible_lambda,
    parse_error,
    validation_error,
    missing_prefix,
    unsupported_format,
};

std::string_view to_string(Errc code) noexcept;

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

inline std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_argument: return "invalid-argument";
        case Errc::dimension_mismatch: return "dimension-mismatch";
        case Errc::invalid_instance: return "invalid-instance";
        case Errc::too_large: return "too-large";
        case Errc::inconsistent_parallel_places: return "inconsistent-parallel-places";
        case Errc::unknown_mode: return "unknown-mode";
        case Errc::infeasible_lambda: return "infeasible-lambda";
        case Errc::parse_error: return "parse-error";
        case Errc::validation_error: return "validation-error";
        case Errc::missing_prefix: return "missing-prefix";
        case Errc::unsupported_format: return "unsupported-format";
    }
    return "unknown";
}

}  // namespace sldi
