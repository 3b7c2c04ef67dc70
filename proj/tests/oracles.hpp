// Test-only oracles: exact rational checks of interval results, rational
// sampling inside intervals and patches, and random generators. Everything
// here is independent of the interval implementation it checks.

#pragma once

#include <random>

#include "tbp/geometry.hpp"
#include "tbp/rational.hpp"

namespace tbp::testing {

using Rng = std::mt19937_64;

inline bool containsRat(const Interval& i, const Rat& v) {
    return Rat(i.lo()) <= v && v <= Rat(i.hi());
}

// value = root of `square`: check lo <= sqrt(square) <= hi exactly via
// squared comparisons (the interval must sit in the nonnegative range for
// the upper side to be meaningful).
inline bool containsSqrtOf(const Interval& i, const Rat& square) {
    const Rat hi(i.hi());
    if (hi < 0 || hi * hi < square) return false;
    const Rat lo(i.lo());
    if (lo <= 0) return true;
    return lo * lo <= square;
}

// Exact rational point lo + t (hi - lo) with t = num/den in [0,1].
inline Rat ratPointIn(const Interval& i, unsigned num, unsigned den) {
    const Rat lo(i.lo()), hi(i.hi());
    return lo + (hi - lo) * Rat(num, den);
}

inline Rat randomRatIn(const Interval& i, Rng& rng) {
    std::uniform_int_distribution<unsigned> d(0, 1u << 20);
    return ratPointIn(i, d(rng), 1u << 20);
}

inline double randomDoubleIn(double lo, double hi, Rng& rng) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

// Exact squared chordal distance between two finite rational plane points.
inline Rat chordalDist2Rat(const Rat& x1, const Rat& y1, const Rat& x2, const Rat& y2) {
    const Rat num = 4 * ((x1 - x2) * (x1 - x2) + (y1 - y2) * (y1 - y2));
    const Rat den = (1 + x1 * x1 + y1 * y1) * (1 + x2 * x2 + y2 * y2);
    return num / den;
}

// ... and against the point at infinity.
inline Rat chordalDist2RatInf(const Rat& x, const Rat& y) {
    return Rat(4) / (1 + x * x + y * y);
}

// High-precision enclosure of sqrt(a) + carrying rational: helpers for the
// reference-energy oracle 1/2 + sqrt(3) + 3 sqrt(2).
inline std::pair<Rat, Rat> tbpCoulombEnergyOracle() {
    const auto s3 = sqrtEnclosure(Rat(3), 120);
    const auto s2 = sqrtEnclosure(Rat(2), 120);
    return {Rat(1, 2) + s3.first + 3 * s2.first, Rat(1, 2) + s3.second + 3 * s2.second};
}

// Random configuration in [0,4] x [-2,2]^6 (z4 = infinity) with pairwise
// chordal separation at least minSep, coordinates exact doubles.
inline IConfiguration randomOmegaConfig(Rng& rng, double minSep) {
    while (true) {
        double xs[7];
        xs[0] = randomDoubleIn(0.0, 4.0, rng);
        for (int i = 1; i < 7; ++i) xs[i] = randomDoubleIn(-2.0, 2.0, rng);
        const double pts[5][2] = {{xs[0], 0.0},
                                  {xs[1], xs[2]},
                                  {xs[3], xs[4]},
                                  {xs[5], xs[6]},
                                  {0.0, 0.0}};  // last row: infinity marker
        bool ok = true;
        for (int i = 0; i < 5 && ok; ++i)
            for (int j = i + 1; j < 5 && ok; ++j) {
                double d2;
                if (j == 4) {
                    d2 = 4.0 / (1.0 + pts[i][0] * pts[i][0] + pts[i][1] * pts[i][1]);
                } else {
                    const double dx = pts[i][0] - pts[j][0], dy = pts[i][1] - pts[j][1];
                    d2 = 4.0 * (dx * dx + dy * dy) /
                         ((1.0 + pts[i][0] * pts[i][0] + pts[i][1] * pts[i][1]) *
                          (1.0 + pts[j][0] * pts[j][0] + pts[j][1] * pts[j][1]));
                }
                if (d2 < minSep * minSep) ok = false;
            }
        if (!ok) continue;
        std::array<Interval, 7> coords;
        for (int i = 0; i < 7; ++i)
            coords[static_cast<std::size_t>(i)] = Interval::point(xs[i]);
        return IConfiguration::fromCoords(coords);
    }
}

// The five sphere points of a configuration (index 4 is the north pole).
inline std::array<SpherePoint<Interval>, 5> toSphere(const IConfiguration& c) {
    std::array<SpherePoint<Interval>, 5> out;
    for (int i = 0; i < 5; ++i) out[static_cast<std::size_t>(i)] = stereoInv(c.point(i));
    return out;
}

}  // namespace tbp::testing
