#ifndef HARDY_MANIFEST_HPP
#define HARDY_MANIFEST_HPP

#include <cstdint>
#include <string>

namespace hardy {

inline constexpr const char* kToolVersion = "0.1.0";

// Everything needed to reproduce a run bit-for-bit with the same build.
// The timestamp is taken from the HARDY_TIMESTAMP environment variable and
// left empty otherwise, so identical invocations produce identical bytes.
struct RunManifest {
    std::string command;
    double p = 0.0;
    double q = 0.0;
    double interval_a = 0.0;
    double interval_b = 0.0;
    std::string u_expr;
    std::string v_expr;
    int grid_level = 0;
    double tol = 0.0;
    std::uint64_t rng_seed = 0;
    int starts = 0;
    std::string mode;
    std::string tool_version = kToolVersion;
    std::string timestamp;
};

std::string format_sig17(double x);

} // namespace hardy

#endif
