#ifndef CYCLECUT_ERROR_HPP
#define CYCLECUT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cyclecut {

/// Machine-readable failure categories, mirrored in CLI reports.
enum class Errc {
    self_loop,
    endpoint_out_of_range,
    odd_degree,
    disconnected,
    not_four_regular,
    not_four_connected,
    too_large,
    parse_error,
    half_integrality_violation,
    degree_violation,
    subtour_violation,
    degenerate_instance,
    blueprint_invalid,
    metric_undefined,
    param_out_of_range,
    parity_violation,
    not_in_region,
    region_violation,
    degree_cut_present,
    not_cycle_cut,
    not_applicable,
    frame_mismatch,
    numeric_overflow,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

}  // namespace cyclecut

#endif
