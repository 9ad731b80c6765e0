#pragma once

#include <stdexcept>
#include <string>

namespace relshock {

// Machine-readable error kinds; the CLI maps kind() into error JSON.
enum class ErrorKind {
    config,
    eos_domain,
    hyperbolicity,
    out_of_range,
    invalid_state,
    degenerate_frame,
    non_degeneracy_failure,
    search_exhausted,
    at_singularity,
    out_of_certified_region,
    positive_g,
    multiple_crease_points,
    integration_failure,
    crease_degeneracy,
    not_in_image,
    cfl_violation,
    resolution_exhausted,
    non_monotone_ladder,
    not_timelike,
    stencil_out_of_bounds,
    missing_thermo_callback,
    io,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    const char* kind_name() const { return to_string(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace relshock
