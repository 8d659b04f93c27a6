#include "cyclecut/error.hpp"

namespace cyclecut {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::self_loop: return "SelfLoop";
    case Errc::endpoint_out_of_range: return "EndpointOutOfRange";
    case Errc::odd_degree: return "OddDegree";
    case Errc::disconnected: return "Disconnected";
    case Errc::not_four_regular: return "NotFourRegular";
    case Errc::not_four_connected: return "NotFourConnected";
    case Errc::too_large: return "TooLarge";
    case Errc::parse_error: return "ParseError";
    case Errc::half_integrality_violation: return "HalfIntegralityViolation";
    case Errc::degree_violation: return "DegreeViolation";
    case Errc::subtour_violation: return "SubtourViolation";
    case Errc::degenerate_instance: return "DegenerateInstance";
    case Errc::blueprint_invalid: return "BlueprintInvalid";
    case Errc::metric_undefined: return "MetricUndefined";
    case Errc::param_out_of_range: return "ParamOutOfRange";
    case Errc::parity_violation: return "ParityViolation";
    case Errc::not_in_region: return "NotInRegion";
    case Errc::region_violation: return "RegionViolation";
    case Errc::degree_cut_present: return "DegreeCutPresent";
    case Errc::not_cycle_cut: return "NotCycleCut";
    case Errc::not_applicable: return "NotApplicable";
    case Errc::frame_mismatch: return "FrameMismatch";
    case Errc::numeric_overflow: return "NumericOverflow";
    }
    return "UnknownError";
}

}  // namespace cyclecut
