// Plane/sphere geometry for five-point configurations.
//
// Points live in C union {infinity}; the sphere is reached through inverse
// stereographic projection. Distances are chordal (straight-line in R^3,
// range [0,2]). Energies are the power laws 1/r^e for e in {1,2}; e=2 is
// computed entirely on squared distances, e=1 takes one square root per
// pair.

#pragma once

#include <array>
#include <cstdlib>

#include "tbp/scalar.hpp"

namespace tbp {

inline void requireExponent(int e) {
    if (e != 1 && e != 2) throw DomainFault("exponent must be 1 or 2");
}

template <class S>
struct PlanePoint {
    S x{}, y{};
    bool infinite = false;

    static PlanePoint finite(S px, S py) { return PlanePoint{px, py, false}; }
    static PlanePoint infinity() { return PlanePoint{S{}, S{}, true}; }
    static PlanePoint real(S px) { return PlanePoint{px, ScalarOps<S>::fromInt(0), false}; }
};

template <class S>
struct SpherePoint {
    S x{}, y{}, z{};
};

// Normalized five-point state: z4 = infinity, z0 on the nonnegative real
// axis; seven real coordinates in total.
template <class S>
struct Configuration {
    S x0{};
    PlanePoint<S> z1, z2, z3;

    PlanePoint<S> point(int i) const {
        switch (i) {
            case 0: return PlanePoint<S>::real(x0);
            case 1: return z1;
            case 2: return z2;
            case 3: return z3;
            case 4: return PlanePoint<S>::infinity();
        }
        std::abort();
    }

    std::array<S, 7> coords() const { return {x0, z1.x, z1.y, z2.x, z2.y, z3.x, z3.y}; }

    static Configuration fromCoords(const std::array<S, 7>& c) {
        return Configuration{c[0],
                             PlanePoint<S>::finite(c[1], c[2]),
                             PlanePoint<S>::finite(c[3], c[4]),
                             PlanePoint<S>::finite(c[5], c[6])};
    }
};

using IConfiguration = Configuration<Interval>;

template <class S>
SpherePoint<S> stereoInv(const PlanePoint<S>& p) {
    using Ops = ScalarOps<S>;
    if (p.infinite)
        return SpherePoint<S>{Ops::fromInt(0), Ops::fromInt(0), Ops::fromInt(1)};
    const S one = Ops::fromInt(1);
    const S n = one + sqr(p.x) + sqr(p.y);
    const S two = Ops::fromInt(2);
    return SpherePoint<S>{two * p.x / n, two * p.y / n, one - two / n};
}

// Squared chordal distance || Sigma^{-1}(z) - Sigma^{-1}(w) ||^2, clamped
// below at 0 (a nonnegative quantity; rounding may not push it negative).
template <class S>
S chordalDist2(const PlanePoint<S>& z, const PlanePoint<S>& w) {
    using Ops = ScalarOps<S>;
    const S zero = Ops::fromInt(0);
    const S one = Ops::fromInt(1);
    const S four = Ops::fromInt(4);
    if (z.infinite && w.infinite) return zero;
    if (z.infinite || w.infinite) {
        const PlanePoint<S>& f = z.infinite ? w : z;
        return four / (one + sqr(f.x) + sqr(f.y));
    }
    const S num = four * (sqr(z.x - w.x) + sqr(z.y - w.y));
    const S den = (one + sqr(z.x) + sqr(z.y)) * (one + sqr(w.x) + sqr(w.y));
    return max(num / den, zero);
}

template <class S>
S chordalDist(const PlanePoint<S>& z, const PlanePoint<S>& w) {
    return sqrt(chordalDist2(z, w));
}

// 1 / dist^e. Coincident points have no energy; enclosures that cannot be
// bounded away from zero trip the division guard instead.
template <class S>
S pairEnergy(const PlanePoint<S>& z, const PlanePoint<S>& w, int e) {
    requireExponent(e);
    using Ops = ScalarOps<S>;
    const S d2 = chordalDist2(z, w);
    if (upper(d2) <= 0.0) throw DomainFault("pair energy of coincident points");
    const S one = Ops::fromInt(1);
    if (e == 2) return one / d2;
    return one / sqrt(d2);
}

template <class S>
S configEnergy(const Configuration<S>& c, int e) {
    requireExponent(e);
    S total = ScalarOps<S>::fromInt(0);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            total = total + pairEnergy(c.point(i), c.point(j), e);
    return total;
}

// Energy of the reference TBP: one pair at distance 2, three at sqrt(3),
// six at sqrt(2).
inline Interval tbpEnergy(int e) {
    requireExponent(e);
    if (e == 2) return ratio(1, 4) + ratio(3, 3) + ratio(6, 2);
    const Interval one = Interval::fromInt(1);
    return ratio(1, 2) + Interval::fromInt(3) * (one / sqrt(Interval::fromInt(3))) +
           Interval::fromInt(6) * (one / sqrt(Interval::fromInt(2)));
}

// Energy of the regular tetrahedron: six pairs at distance sqrt(8/3).
inline Interval tetraEnergy(int e) {
    requireExponent(e);
    if (e == 2) return ratio(6, 1) / ratio(8, 3);
    return ratio(6, 1) / sqrt(ratio(8, 3));
}

inline Interval sqrt3() { return sqrt(Interval::fromInt(3)); }
inline Interval sqrt3Over2() { return sqrt3() / Interval::fromInt(2); }
inline Interval invSqrt3() { return Interval::fromInt(1) / sqrt3(); }
inline Interval oneMinusSqrt2() {
    return Interval::fromInt(1) - sqrt(Interval::fromInt(2));
}

enum class TbpKind { polar, equatorial };

// The two normalized TBP configurations: "polar" has the point at infinity
// at a pole (ring {1, exp(+-2pii/3)}, opposite pole at 0); "equatorial" has
// it on the ring (ring completed by +-i/sqrt(3), poles at +-1).
inline IConfiguration tbpReference(TbpKind kind) {
    const Interval zero = Interval::fromInt(0);
    const Interval one = Interval::fromInt(1);
    if (kind == TbpKind::polar) {
        const Interval h = -ratio(1, 2);
        const Interval s = sqrt3Over2();
        return IConfiguration{one,
                              PlanePoint<Interval>::finite(h, -s),
                              PlanePoint<Interval>::finite(zero, zero),
                              PlanePoint<Interval>::finite(h, s)};
    }
    const Interval r = invSqrt3();
    return IConfiguration{one,
                          PlanePoint<Interval>::finite(zero, -r),
                          PlanePoint<Interval>::finite(-one, zero),
                          PlanePoint<Interval>::finite(zero, r)};
}

namespace detail {

template <class S>
S dot(const SpherePoint<S>& a, const SpherePoint<S>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class S>
SpherePoint<S> cross(const SpherePoint<S>& a, const SpherePoint<S>& b) {
    return SpherePoint<S>{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
                          a.x * b.y - a.y * b.x};
}

}  // namespace detail

// Rotate so the second point of the closest pair sits at (0,0,1) and the
// first projects onto the positive real axis, then stereo-project the rest.
// Index selection runs on midpoints (any true closest pair is a valid
// normalization; the arithmetic afterwards is certified).
inline IConfiguration normalizeConfiguration(const std::array<SpherePoint<Interval>, 5>& p) {
    double best = 1e9;
    int bi = 0, bj = 4;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            const double dx = midpoint(p[i].x) - midpoint(p[j].x);
            const double dy = midpoint(p[i].y) - midpoint(p[j].y);
            const double dz = midpoint(p[i].z) - midpoint(p[j].z);
            const double d2 = dx * dx + dy * dy + dz * dz;
            if (d2 < best) { best = d2; bi = i; bj = j; }
        }

    using SP = SpherePoint<Interval>;
    const SP& anchor = p[bi];
    const SP& pole = p[bj];

    // Orthonormal frame (u, v, w): w is the new north pole, u the direction
    // that puts the anchor on the positive real axis.
    const SP w = pole;
    const Interval t = detail::dot(anchor, w);
    SP u{anchor.x - t * w.x, anchor.y - t * w.y, anchor.z - t * w.z};
    const Interval un = sqrt(max(sqr(u.x) + sqr(u.y) + sqr(u.z), Interval::fromInt(0)));
    u = SP{u.x / un, u.y / un, u.z / un};
    const SP v = detail::cross(w, u);

    std::array<PlanePoint<Interval>, 3> rest;
    int k = 0;
    Interval x0 = Interval::fromInt(0);
    for (int i = 0; i < 5; ++i) {
        if (i == bj) continue;
        const SP q{detail::dot(p[i], u), detail::dot(p[i], v), detail::dot(p[i], w)};
        const Interval denom = Interval::fromInt(1) - q.z;
        if (i == bi) {
            x0 = q.x / denom;            // q.y encloses 0 by construction
        } else {
            rest[k++] = PlanePoint<Interval>::finite(q.x / denom, q.y / denom);
        }
    }
    return IConfiguration{x0, rest[0], rest[1], rest[2]};
}

}  // namespace tbp
