// Certified separation bounds between two dyadic spherical patches.
//
// The fine bound works for any pair: with D the chordal distance between
// the patch centers and delta = (delta1*tau1 + delta2*tau2)/4,
//
//   psi_min >= D(1 - delta^2/2) - sqrt(4 - D^2) * delta   (over convex hulls)
//   psi_max <= D + sqrt(4 - D^2) * delta
//
// The perfect bound applies when one patch is {infinity} and the other is a
// segment or a square not crossing the axes: the extrema are attained at
// vertices. PsiMin/PsiMax combine the best of the applicable bounds, clamped
// to the a-priori chordal range [0,2].

#pragma once

#include "tbp/dyadic.hpp"

namespace tbp {

template <class S>
struct SeparationBounds {
    S psiMin, psiMax;
};

template <class S>
struct CenterData {
    S dist;    // chordal distance between patch centers
    S spread;  // (delta1*tau1 + delta2*tau2) / 4
};

template <class S>
CenterData<S> centerData(const Patch& q1, const Patch& q2) {
    const S d = chordalDist(q1.center<S>(), q2.center<S>());
    const S spread = (patchDelta<S>(q1) * patchTau<S>(q1) +
                      patchDelta<S>(q2) * patchTau<S>(q2)) /
                     ScalarOps<S>::fromInt(4);
    return {d, spread};
}

template <class S>
SeparationBounds<S> fineBounds(const Patch& q1, const Patch& q2) {
    using Ops = ScalarOps<S>;
    const auto cd = centerData<S>(q1, q2);
    const S zero = Ops::fromInt(0);
    const S two = Ops::fromInt(2);
    const S wing = safeSqrt(Ops::fromInt(4) - sqr(cd.dist)) * cd.spread;
    const S lo = cd.dist * (Ops::fromInt(1) - sqr(cd.spread) / two) - wing;
    const S hi = cd.dist + wing;
    return {max(lo, zero), min(hi, two)};
}

inline bool perfectApplies(const Patch& q1, const Patch& q2) {
    return q2.isInfinity() && !q1.isInfinity() && q1.normal();
}

// Exact vertex extrema against the north pole (q2 = {infinity}).
template <class S>
SeparationBounds<S> perfectBounds(const Patch& q1) {
    if (!q1.normal() || q1.isInfinity())
        throw Fault("perfectBounds requires a normal finite patch");
    const auto pole = PlanePoint<S>::infinity();
    bool first = true;
    S lo{}, hi{};
    for (const auto& v : q1.vertices<S>()) {
        const S d = chordalDist(v, pole);
        if (first) {
            lo = hi = d;
            first = false;
        } else {
            lo = min(lo, d);
            hi = max(hi, d);
        }
    }
    return {lo, hi};
}

template <class S>
SeparationBounds<S> separationBounds(const Patch& q1, const Patch& q2) {
    if (q1.isInfinity() && q2.isInfinity())
        throw Fault("separation of two infinity patches");
    auto out = fineBounds<S>(q1, q2);
    const bool direct = perfectApplies(q1, q2);
    if (direct || perfectApplies(q2, q1)) {
        const auto perfect = perfectBounds<S>(direct ? q1 : q2);
        out.psiMin = max(out.psiMin, perfect.psiMin);
        out.psiMax = min(out.psiMax, perfect.psiMax);
    }
    return out;
}

template <class S>
S PsiMin(const Patch& q1, const Patch& q2) {
    return separationBounds<S>(q1, q2).psiMin;
}

template <class S>
S PsiMax(const Patch& q1, const Patch& q2) {
    return separationBounds<S>(q1, q2).psiMax;
}

}  // namespace tbp
