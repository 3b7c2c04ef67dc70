// Outward-rounded interval arithmetic over IEEE-754 binary64.
//
// Every operation computes endpoint results in round-to-nearest and then
// widens each endpoint by one representable step, so the result interval
// contains the exact real result for any reals bounded by the operands.
// All values live in R0 = { x : |x| <= 2^30 }; the range audit and the
// division / square-root guards throw Fault, which poisons the run.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tbp {

// A proof-invalidating arithmetic condition (range, division, sqrt domain).
struct Fault : std::runtime_error {
    explicit Fault(const std::string& what) : std::runtime_error(what) {}
};

// A mathematically ill-posed request (e.g. energy of coincident points).
struct DomainFault : Fault {
    explicit DomainFault(const std::string& what) : Fault(what) {}
};

inline constexpr double kRangeLimit  = 1073741824.0;   // 2^30
inline constexpr double kDivGuard    = 0x1p-11;        // never divide closer to 0
inline constexpr double kSigmaCut    = 0x1p-10;        // safeSqrt threshold
inline constexpr double kSigmaValue  = 0x1p-5;         // safeSqrt fallback

namespace detail {

// Map a finite double to its rank in the lexicographic value ordering.
// Negative doubles order in reverse of their bit patterns.
inline std::int64_t ordinal(double x) {
    const auto b = std::bit_cast<std::uint64_t>(x);
    return (b >> 63) ? static_cast<std::int64_t>(0x8000000000000000ull - b)
                     : static_cast<std::int64_t>(b);
}

inline double fromOrdinal(std::int64_t k) {
    const auto u = static_cast<std::uint64_t>(k);
    return (k < 0) ? std::bit_cast<double>(0x8000000000000000ull - u)
                   : std::bit_cast<double>(u);
}

inline void auditRange(double x, const char* op) {
    if (!(x >= -kRangeLimit && x <= kRangeLimit))
        throw Fault(std::string("value outside R0 after ") + op);
}

}  // namespace detail

// Adjacent representable value toward +infinity.
inline double increment(double x) {
    double r = detail::fromOrdinal(detail::ordinal(x) + 1);
    detail::auditRange(r, "increment");
    return r;
}

// Adjacent representable value toward -infinity.
inline double decrement(double x) {
    double r = detail::fromOrdinal(detail::ordinal(x) - 1);
    detail::auditRange(r, "decrement");
    return r;
}

// Steps between two finite doubles in the value ordering (used by tests
// to assert width budgets).
inline std::int64_t ulpDistance(double lo, double hi) {
    return detail::ordinal(hi) - detail::ordinal(lo);
}

class Interval {
  public:
    Interval() : lo_(0.0), hi_(0.0) {}
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
#ifndef NDEBUG
        if (!(lo_ <= hi_)) throw Fault("interval endpoints out of order");
#endif
    }

    static Interval point(double v) { return Interval(v, v); }
    static Interval fromInt(long long n) { return point(static_cast<double>(n)); }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return 0.5 * (lo_ + hi_); }
    double width() const { return hi_ - lo_; }

    bool contains(double v) const { return lo_ <= v && v <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }

    // Certified directional comparisons.
    bool certainlyGreater(const Interval& o) const { return lo_ > o.hi_; }
    bool certainlyLess(const Interval& o) const { return hi_ < o.lo_; }

  private:
    double lo_, hi_;
};

inline Interval roundOut(const Interval& i) {
    return Interval(decrement(i.lo()), increment(i.hi()));
}

inline Interval operator+(const Interval& a, const Interval& b) {
    return roundOut(Interval(a.lo() + b.lo(), a.hi() + b.hi()));
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return roundOut(Interval(a.lo() - b.hi(), a.hi() - b.lo()));
}

inline Interval operator-(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

inline Interval operator*(const Interval& a, const Interval& b) {
    const double p1 = a.lo() * b.lo(), p2 = a.lo() * b.hi();
    const double p3 = a.hi() * b.lo(), p4 = a.hi() * b.hi();
    const double lo = std::fmin(std::fmin(p1, p2), std::fmin(p3, p4));
    const double hi = std::fmax(std::fmax(p1, p2), std::fmax(p3, p4));
    return roundOut(Interval(lo, hi));
}

inline Interval operator/(const Interval& a, const Interval& b) {
    if (!(b.lo() >= kDivGuard || b.hi() <= -kDivGuard))
        throw Fault("division guard: divisor within 2^-11 of zero");
    const double q1 = a.lo() / b.lo(), q2 = a.lo() / b.hi();
    const double q3 = a.hi() / b.lo(), q4 = a.hi() / b.hi();
    const double lo = std::fmin(std::fmin(q1, q2), std::fmin(q3, q4));
    const double hi = std::fmax(std::fmax(q1, q2), std::fmax(q3, q4));
    return roundOut(Interval(lo, hi));
}

inline Interval sqrt(const Interval& i) {
    if (i.lo() < 0.0) throw Fault("sqrt of interval with negative lower endpoint");
    return roundOut(Interval(std::sqrt(i.lo()), std::sqrt(i.hi())));
}

// The sigma function: guards the 4 - D^2 expressions whose value can sit on 0.
inline Interval safeSqrt(const Interval& i) {
    if (i.hi() < kSigmaCut) return Interval::point(kSigmaValue);
    if (i.lo() < 0.0) throw Fault("safeSqrt: interval straddles zero above the sigma cut");
    return sqrt(i);
}

// Square with the dependency between the two factors respected: the lower
// endpoint of x^2 over an interval containing 0 is exactly 0, so no widening
// is needed on that side.
inline Interval sqr(const Interval& a) {
    const double m1 = a.lo() * a.lo(), m2 = a.hi() * a.hi();
    if (a.lo() <= 0.0 && a.hi() >= 0.0)
        return Interval(0.0, increment(std::fmax(m1, m2)));
    return roundOut(Interval(std::fmin(m1, m2), std::fmax(m1, m2)));
}

inline Interval min(const Interval& a, const Interval& b) {
    return Interval(std::fmin(a.lo(), b.lo()), std::fmin(a.hi(), b.hi()));
}

inline Interval max(const Interval& a, const Interval& b) {
    return Interval(std::fmax(a.lo(), b.lo()), std::fmax(a.hi(), b.hi()));
}

// Intersection; endpoints cross only through a bug, so that faults.
inline Interval intersect(const Interval& a, const Interval& b) {
    const double lo = std::fmax(a.lo(), b.lo());
    const double hi = std::fmin(a.hi(), b.hi());
    if (!(lo <= hi)) throw Fault("empty interval intersection");
    return Interval(lo, hi);
}

inline Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::fmin(a.lo(), b.lo()), std::fmax(a.hi(), b.hi()));
}

// Tight enclosure of a rational num/den (den > 0), used for non-dyadic
// constants such as 7.98 or 1/10.
inline Interval ratio(long long num, long long den) {
    return Interval::fromInt(num) / Interval::fromInt(den);
}

}  // namespace tbp
