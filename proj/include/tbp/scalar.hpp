// Uniform scalar surface over Interval (certified) and double (fast path).
//
// The geometric kernels are written once against these helpers; the double
// instantiation backs the floating-point screening pass, the Interval one
// carries the proof.

#pragma once

#include <algorithm>
#include <cmath>

#include "tbp/interval.hpp"

namespace tbp {

// ---- double overloads mirroring the Interval operations ----------------

inline double sqrt(double x) { return std::sqrt(x); }

inline double sqr(double x) { return x * x; }

inline double safeSqrt(double x) {
    if (x < kSigmaCut) return kSigmaValue;
    return std::sqrt(x);
}

inline double roundOut(double x) { return x; }

// ---- endpoint access ----------------------------------------------------

inline double lower(const Interval& i) { return i.lo(); }
inline double upper(const Interval& i) { return i.hi(); }
inline double lower(double x) { return x; }
inline double upper(double x) { return x; }

inline double midpoint(const Interval& i) { return i.mid(); }
inline double midpoint(double x) { return x; }

// ---- construction -------------------------------------------------------

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Interval> {
    static Interval fromInt(long long n) { return Interval::fromInt(n); }
    static Interval fromRatio(long long num, long long den) { return ratio(num, den); }
    static Interval fromExactDouble(double v) { return Interval::point(v); }
    static constexpr bool certified = true;
};

template <>
struct ScalarOps<double> {
    static double fromInt(long long n) { return static_cast<double>(n); }
    static double fromRatio(long long num, long long den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    static double fromExactDouble(double v) { return v; }
    static constexpr bool certified = false;
};

using std::max;
using std::min;

}  // namespace tbp
