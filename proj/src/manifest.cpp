#include "hardy/manifest.hpp"

#include <cstdio>

namespace hardy {

std::string format_sig17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace hardy
