// The three non-energy elimination tests.
//
// Confinement: every factor lies inside the open square (interval for Q0)
// of side eps centered at the reference coordinates (1; -1/2 -+ i sqrt3/2;
// 0). Dyadic comparisons are exact on the 2^25 grid; the irrational
// ordinates use a certified enclosure and eliminate only when containment
// holds against its worst case.
//
// Tetrahedral: a box dies when some point's four pair energies, evaluated
// at the certified maximal separations, already exceed the reference-energy
// budget M_E - T_E that the four-point minimum leaves available.
//
// Redundancy: a box dies when every configuration in it is a non-canonical
// representative: some pair certifiably closer than (0,4), the whole
// segment left of 1, a broken y-ordering, or the mirrored half-plane case.

#pragma once

#include <optional>

#include "tbp/estimator.hpp"

namespace tbp {

// Comparison margins for the uncertified floating-point screen; both are 0
// in interval mode, where the endpoint tests are already one-sided.
struct TestSlack {
    double comparison = 0.0;  // added to confinement/redundancy compares
    double energy = 0.0;      // added to the energy threshold
};

inline constexpr double kFloatComparisonSlack = 0x1p-30;
inline constexpr double kFloatEnergyFudge = 0x1p-40;

namespace detail {

// certified (or slack-guarded) strict a < b
template <class S>
bool surelyLess(const S& a, const S& b, double margin) {
    return upper(a) < lower(b) - margin;
}

}  // namespace detail

// ---- confinement ---------------------------------------------------------

// eps = 2^-epsPow, epsPow in [2, 24]. The test is exact in both modes; the
// float screen passes a positive margin to stay conservative near the
// irrational ordinates.
inline bool isConfined(const DyadicBox& box, int epsPow, double margin = 0.0) {
    // Scaled half-width of the target window: eps/2 on the 2^25 grid.
    const std::int64_t halfEps = std::int64_t{1} << (kCenterScaleBits - 1 - epsPow);

    const auto insideDyadic = [&](const Patch& q, std::int64_t targetX,
                                  std::int64_t targetY) {
        const bool x = q.sxLo() > targetX - halfEps && q.sxHi() < targetX + halfEps;
        if (q.kind == PatchKind::segment) return x;
        return x && q.syLo() > targetY - halfEps && q.syHi() < targetY + halfEps;
    };

    const std::int64_t one = std::int64_t{1} << kCenterScaleBits;
    if (!insideDyadic(box.q0, one, 0)) return false;
    if (!insideDyadic(box.squares[1], 0, 0)) return false;

    // Factors 1 and 3: x against the exact -1/2, y against -+sqrt(3)/2.
    const std::int64_t targetX = -(one / 2);
    const double halfEpsD = std::ldexp(1.0, -epsPow - 1);
    const Interval s = sqrt3Over2();
    const auto insideIrrational = [&](const Patch& q, bool negative) {
        if (!(q.sxLo() > targetX - halfEps && q.sxHi() < targetX + halfEps)) return false;
        const Interval t = negative ? -s : s;
        const Interval lowEdge = t - Interval::point(halfEpsD);
        const Interval highEdge = t + Interval::point(halfEpsD);
        return q.yLo() > upper(lowEdge) + margin && q.yHi() < lower(highEdge) - margin;
    };
    return insideIrrational(box.squares[0], true) && insideIrrational(box.squares[2], false);
}

// ---- tetrahedral eliminator -----------------------------------------------

template <class S>
struct TetraResult {
    bool eliminated = false;
    int witness = -1;  // index whose energy sum certifies the violation
    S sum{};
};

// E evaluated at the upper separation endpoint, as a lower bound on every
// pair energy in the box.
template <class S>
S pairEnergyFloor(const S& psiMax, int e) {
    using Ops = ScalarOps<S>;
    const S d = Ops::fromExactDouble(upper(psiMax));
    const S one = Ops::fromInt(1);
    if (e == 2) return one / sqr(d);
    return one / d;
}

template <class S>
TetraResult<S> tetraEliminate(const DyadicBox& box, const PairTable<S>& pairs,
                              const S& budgetAbove, int e, double margin = 0.0) {
    requireExponent(e);
    using Ops = ScalarOps<S>;
    TetraResult<S> out;
    for (int i = 0; i < 5; ++i) {
        S sum = Ops::fromInt(0);
        for (int j = 0; j < 5; ++j) {
            if (j == i) continue;
            sum = sum + pairEnergyFloor<S>(pairs.pair(i, j).psiMax, e);
        }
        if (lower(sum) > upper(budgetAbove) + margin) {
            out.eliminated = true;
            out.witness = i;
            out.sum = sum;
            return out;
        }
    }
    return out;
}

// ---- redundancy eliminator -------------------------------------------------

struct RedundancyResult {
    bool eliminated = false;
    int property = 0;   // 1, 2, or 3
    int detail = -1;    // property 1: encoded pair 10*i+j, or -1 for the x0 rule
                        // property 2: which of the four cases fired (0..3)
};

template <class S>
std::optional<RedundancyResult> redundancyEliminate(const DyadicBox& box,
                                                    const PairTable<S>& pairs,
                                                    double margin = 0.0) {
    // Property 1: some pair other than (0,4) certifiably closer than (0,4).
    const auto& anchor = pairs.pair(0, 4);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            if (i == 0 && j == 4) continue;
            if (detail::surelyLess(pairs.pair(i, j).psiMax, anchor.psiMin, margin))
                return RedundancyResult{true, 1, 10 * i + j};
        }
    // ... or the whole segment lies left of 1.
    if (box.q0.sxHi() < std::int64_t{1} << kCenterScaleBits)
        return RedundancyResult{true, 1, -1};

    // Property 2: exact integer comparisons on the signed y-extents. The
    // quarter-open reading of square boundaries makes the weak inequalities
    // lossless.
    const Patch& q1 = box.squares[0];
    const Patch& q2 = box.squares[1];
    const Patch& q3 = box.squares[2];
    if (q1.syLo() >= q2.syHi()) return RedundancyResult{true, 2, 0};
    if (q2.syLo() >= q3.syHi()) return RedundancyResult{true, 2, 1};
    if (q2.syHi() <= 0) return RedundancyResult{true, 2, 2};
    if (q1.syLo() >= 0) return RedundancyResult{true, 2, 3};

    // Property 3: y1 < 0 < y3 across the box with x2 certifiably left of
    // 1 - sqrt(2).
    if (q1.syHi() < 0 && q3.syLo() > 0) {
        const Interval cut = oneMinusSqrt2();
        if (q2.xHi() < cut.lo() - margin) return RedundancyResult{true, 3, -1};
    }
    return std::nullopt;
}

}  // namespace tbp
