// Bit-exact textual form for doubles and intervals: hexadecimal floats with
// a full 13-digit mantissa, so logs and certificates audit reproducibly.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

#include "tbp/interval.hpp"

namespace tbp {

inline std::string hexDouble(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.13a", v);
    return buf;
}

inline std::string hexInterval(const Interval& i) {
    return "[" + hexDouble(i.lo()) + "," + hexDouble(i.hi()) + "]";
}

inline double parseHexDouble(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw Fault("unparseable float: " + s);
    return v;
}

}  // namespace tbp
