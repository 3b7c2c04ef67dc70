// Local-rigidity certificate at the reference configuration.
//
// Two ingredients certify that the reference five-point state is a strict
// local minimum on a 2^-11 neighborhood:
//   1. an interval LDL^T factorization of H_e - I/10 with positive pivots
//      (least eigenvalue above 1/10), with the Hessian evaluated both by
//      hand-coded interval derivatives and by exact symbolic
//      differentiation over Q[sqrt3], intersected entrywise;
//   2. an explicit bound Upsilon(e) on the aggregated third-derivative
//      tensor, assembled from exact center values of the pair-energy
//      derivatives plus offsets validated by a descending bootstrap of
//      supremum bounds; Upsilon(e)/2^12 < 1/10 controls the Hessian drift
//      across the neighborhood.
//
// The energy splits as sum of phi(U_m), m = 1..10, with U the squared
// reciprocal pair distance (F against the point at infinity, G between two
// finite points) and phi(x) = x^(e/2).

#pragma once

#include <array>

#include "tbp/geometry.hpp"
#include "tbp/polynomial.hpp"

namespace tbp {

// ---- coordinate/region metadata -------------------------------------------

inline constexpr std::array<int, 7> kPointOfCoord = {0, 1, 1, 2, 2, 3, 3};
inline constexpr std::array<int, 7> kAxisOfCoord = {0, 0, 1, 0, 1, 0, 1};
// m = 0..3: F at point m; m = 4..9: G at these pairs.
inline constexpr std::array<std::array<int, 2>, 6> kPairOfRegion = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Coordinate index (0..6) of a point's axis, or -1 for the frozen imaginary
// part of z0.
inline int coordOf(int point, int axis) {
    if (point == 0) return axis == 0 ? 0 : -1;
    return 2 * point - 1 + axis;
}

// True when moving coordinate i moves a point feeding U_m.
inline bool related(int coord, int m) {
    const int p = kPointOfCoord[static_cast<std::size_t>(coord)];
    if (m < 4) return p == m;
    const auto& pr = kPairOfRegion[static_cast<std::size_t>(m - 4)];
    return p == pr[0] || p == pr[1];
}

// Exact coordinates of the reference configuration (x0; x1,y1; ...).
std::array<AlgebraicScalar, 7> tbpExactCoords();

// ---- symbolic layer --------------------------------------------------------

// G in the variables (x1, y1, x2, y2); the 1/4 scale is folded into the
// numerator, denominator is the squared planar distance, power 1.
const RationalFunctionExpr& gExpression();
// F in (x1, y1); polynomial (power 0).
const RationalFunctionExpr& fExpression();

// Exact mixed partial; `order` gives the derivative count per variable.
RationalFunctionExpr symbolicPartial(const RationalFunctionExpr& u, const Exponents& order);

// ---- matrices --------------------------------------------------------------

struct SymMatrix7 {
    std::array<std::array<Interval, 7>, 7> m{};

    const Interval& at(int i, int j) const {
        return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    void set(int i, int j, const Interval& v) {
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
        m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    }
};

struct LdltResult {
    bool positive = false;
    std::array<Interval, 7> pivots{};
};

// LDL^T of M - shift*I in interval arithmetic; positive iff every pivot is
// certifiably positive, which makes every enclosed real symmetric matrix
// positive definite with least eigenvalue above the shift.
LdltResult ldltCertify(const SymMatrix7& M, const Interval& shift);

// ---- analytic derivatives (hand-coded route) -------------------------------

template <class S>
using Grad7 = std::array<S, 7>;
template <class S>
using Hess7 = std::array<std::array<S, 7>, 7>;

template <class S>
Grad7<S> energyGradient(const Configuration<S>& c, int e);
template <class S>
Hess7<S> energyHessian(const Configuration<S>& c, int e);

// Hessian at the reference configuration: intersection of the hand-coded
// interval route and the exact symbolic route.
SymMatrix7 energyHessianAtTBP(int e);
Grad7<Interval> energyGradientAtTBP(int e);

// ---- variation-bound machinery ---------------------------------------------

struct SixthPartialAudit {
    Rat maxCoeffNorm;   // largest |P| over the canonical sixth partials
    int maxDegree = 0;  // largest numerator degree
    int maxPower = 0;   // largest denominator power (base = squared distance)
    Rat phi6;           // certified sup bound over the pair regions
    bool supBoundOk = false;  // max(|z1|,|z2|,1/dist) < 1+2^-8 over each region
};
SixthPartialAudit sixthPartialAudit();

struct CenterBoundsAudit {
    // Largest |D^k G| at the six pair-region centers, orders 1..5 (exact).
    std::array<AlgebraicScalar, 5> aMax{};
    bool withinStatedBounds = false;  // <= 1, 4, 18, 96, 600
};
CenterBoundsAudit centerBounds();

struct BootstrapResult {
    Rat phi6;
    std::array<AlgebraicScalar, 5> phiBound{};  // [k-1] bounds sup |D^k G|, k = 1..5
    bool chainOk = false;     // within 5483, 102, 18.1, 4.02 and |Phi1-a1| < 1/200
    bool offsetsOk = false;   // 2^-10 * Phi_{k+1} below the 1/200, 1/50, 1/10 offsets
};
BootstrapResult phiBootstrap();

struct UpsilonResult {
    // Quadratic-form coefficients of c1^2, c1c2, c2^2, c1c3, c2c3, c3^2.
    std::array<AlgebraicScalar, 6> exact{};
    std::array<long long, 6> ceiled{};
    bool coeffsWithinStated = false;  // <= 19336, 19036, 4922, 1474, 772, 31
    Rat radicand1, radicand2;         // ceiled form at c = (1,2,12) and (1,0,0)
    bool upsilon1Below345 = false;
    bool upsilon2Below140 = false;
};
UpsilonResult variationBound();

// Interval evaluation of U_m over its region lies inside [1/4, 1/2 + 2^-9].
bool umRangeContained(int m);

struct HessianCertificate {
    int e = 0;
    LdltResult ldlt;
    UpsilonResult upsilon;
    CenterBoundsAudit centers;
    BootstrapResult bootstrap;
    SixthPartialAudit sixth;
    bool gradientVanishes = false;  // every first partial encloses 0
    bool rangesContained = false;
    bool driftBelowShift = false;   // Upsilon(e)^2 < 409.6^2
    bool valid = false;
};

HessianCertificate certifyLocalMinimum(int e);
std::string certificateJson(const HessianCertificate& cert);

// ---- hand-coded derivative implementation ----------------------------------

namespace detail {

// First and second partials of G(z1,z2) = N1*N2 / (4 q) in the local
// variables (x1, y1, x2, y2), via the product form A * 1/q.
template <class S>
struct GDerivs {
    S value;
    std::array<S, 4> d1;
    std::array<std::array<S, 4>, 4> d2;
};

template <class S>
GDerivs<S> gDerivs(const S& x1, const S& y1, const S& x2, const S& y2) {
    using Ops = ScalarOps<S>;
    const S one = Ops::fromInt(1);
    const S half = Ops::fromRatio(1, 2);

    const S n1 = one + sqr(x1) + sqr(y1);
    const S n2 = one + sqr(x2) + sqr(y2);
    const S dx = x1 - x2, dy = y1 - y2;
    const S q = sqr(dx) + sqr(dy);

    const S a = n1 * n2 / Ops::fromInt(4);
    const std::array<S, 4> da = {x1 * n2 * half, y1 * n2 * half, x2 * n1 * half,
                                 y2 * n1 * half};
    std::array<std::array<S, 4>, 4> dda;
    const S zero = Ops::fromInt(0);
    for (auto& row : dda) row.fill(zero);
    dda[0][0] = n2 * half;
    dda[1][1] = n2 * half;
    dda[2][2] = n1 * half;
    dda[3][3] = n1 * half;
    dda[0][2] = dda[2][0] = x1 * x2;
    dda[0][3] = dda[3][0] = x1 * y2;
    dda[1][2] = dda[2][1] = y1 * x2;
    dda[1][3] = dda[3][1] = y1 * y2;

    const int sgn[4] = {1, 1, -1, -1};
    const int comp[4] = {0, 1, 0, 1};
    const S delta[2] = {dx, dy};

    const S b = one / q;
    const S q2 = sqr(q);
    const S q3 = q2 * q;
    std::array<S, 4> dq, db;
    for (int u = 0; u < 4; ++u) {
        dq[static_cast<std::size_t>(u)] =
            Ops::fromInt(2 * sgn[u]) * delta[comp[u]];
        db[static_cast<std::size_t>(u)] = -dq[static_cast<std::size_t>(u)] / q2;
    }

    GDerivs<S> out{a * b, {}, {}};
    for (int u = 0; u < 4; ++u)
        out.d1[static_cast<std::size_t>(u)] =
            da[static_cast<std::size_t>(u)] * b + a * db[static_cast<std::size_t>(u)];
    for (int u = 0; u < 4; ++u)
        for (int v = u; v < 4; ++v) {
            const S ddq = Ops::fromInt(comp[u] == comp[v] ? 2 * sgn[u] * sgn[v] : 0);
            const S ddb = -ddq / q2 + Ops::fromInt(2) * dq[static_cast<std::size_t>(u)] *
                                          dq[static_cast<std::size_t>(v)] / q3;
            const S val = dda[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] * b +
                          da[static_cast<std::size_t>(u)] * db[static_cast<std::size_t>(v)] +
                          da[static_cast<std::size_t>(v)] * db[static_cast<std::size_t>(u)] +
                          a * ddb;
            out.d2[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = val;
            out.d2[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = val;
        }
    return out;
}

// phi = x^(e/2): phi', phi'' at u (e = 1 needs one interval square root).
template <class S>
struct PhiDerivs {
    S d1, d2;
};

template <class S>
PhiDerivs<S> phiDerivs(const S& u, int e) {
    using Ops = ScalarOps<S>;
    if (e == 2) return {Ops::fromInt(1), Ops::fromInt(0)};
    const S root = sqrt(u);
    const S d1 = Ops::fromInt(1) / (Ops::fromInt(2) * root);
    const S d2 = -Ops::fromInt(1) / (Ops::fromInt(4) * u * root);
    return {d1, d2};
}

}  // namespace detail

// Gradient and Hessian of the total energy in the seven coordinates,
// assembled pairwise with the chain rule for phi(U).
template <class S>
Hess7<S> energyHessian(const Configuration<S>& c, int e) {
    requireExponent(e);
    using Ops = ScalarOps<S>;
    const S zero = Ops::fromInt(0);
    const S half = Ops::fromRatio(1, 2);
    Hess7<S> h;
    for (auto& row : h) row.fill(zero);

    const auto coords = c.coords();
    const auto pointXY = [&](int p) -> std::array<S, 2> {
        if (p == 0) return {coords[0], zero};
        return {coords[static_cast<std::size_t>(2 * p - 1)],
                coords[static_cast<std::size_t>(2 * p)]};
    };

    // F regions: U = (1 + x^2 + y^2)/4 at each finite point.
    for (int p = 0; p < 4; ++p) {
        const auto xy = pointXY(p);
        const S u = (Ops::fromInt(1) + sqr(xy[0]) + sqr(xy[1])) / Ops::fromInt(4);
        const auto phi = detail::phiDerivs(u, e);
        const S du[2] = {xy[0] * half, xy[1] * half};
        for (int ax1 = 0; ax1 < 2; ++ax1) {
            const int gi = coordOf(p, ax1);
            if (gi < 0) continue;
            for (int ax2 = ax1; ax2 < 2; ++ax2) {
                const int gj = coordOf(p, ax2);
                if (gj < 0) continue;
                const S dd = ax1 == ax2 ? half : zero;
                const S val = phi.d1 * dd + phi.d2 * du[ax1] * du[ax2];
                h[static_cast<std::size_t>(gi)][static_cast<std::size_t>(gj)] =
                    h[static_cast<std::size_t>(gi)][static_cast<std::size_t>(gj)] + val;
                if (gi != gj)
                    h[static_cast<std::size_t>(gj)][static_cast<std::size_t>(gi)] =
                        h[static_cast<std::size_t>(gj)][static_cast<std::size_t>(gi)] + val;
            }
        }
    }

    // G regions: one per finite pair.
    for (const auto& pr : kPairOfRegion) {
        const auto a = pointXY(pr[0]);
        const auto b = pointXY(pr[1]);
        const auto g = detail::gDerivs<S>(a[0], a[1], b[0], b[1]);
        const auto phi = detail::phiDerivs(g.value, e);
        const int localCoord[4] = {coordOf(pr[0], 0), coordOf(pr[0], 1),
                                   coordOf(pr[1], 0), coordOf(pr[1], 1)};
        for (int u = 0; u < 4; ++u) {
            const int gi = localCoord[u];
            if (gi < 0) continue;
            for (int v = u; v < 4; ++v) {
                const int gj = localCoord[v];
                if (gj < 0) continue;
                const S val = phi.d1 * g.d2[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] +
                              phi.d2 * g.d1[static_cast<std::size_t>(u)] *
                                  g.d1[static_cast<std::size_t>(v)];
                h[static_cast<std::size_t>(gi)][static_cast<std::size_t>(gj)] =
                    h[static_cast<std::size_t>(gi)][static_cast<std::size_t>(gj)] + val;
                if (gi != gj)
                    h[static_cast<std::size_t>(gj)][static_cast<std::size_t>(gi)] =
                        h[static_cast<std::size_t>(gj)][static_cast<std::size_t>(gi)] + val;
            }
        }
    }
    return h;
}

template <class S>
Grad7<S> energyGradient(const Configuration<S>& c, int e) {
    requireExponent(e);
    using Ops = ScalarOps<S>;
    const S zero = Ops::fromInt(0);
    const S half = Ops::fromRatio(1, 2);
    Grad7<S> g;
    g.fill(zero);

    const auto coords = c.coords();
    const auto pointXY = [&](int p) -> std::array<S, 2> {
        if (p == 0) return {coords[0], zero};
        return {coords[static_cast<std::size_t>(2 * p - 1)],
                coords[static_cast<std::size_t>(2 * p)]};
    };

    for (int p = 0; p < 4; ++p) {
        const auto xy = pointXY(p);
        const S u = (Ops::fromInt(1) + sqr(xy[0]) + sqr(xy[1])) / Ops::fromInt(4);
        const auto phi = detail::phiDerivs(u, e);
        for (int ax = 0; ax < 2; ++ax) {
            const int gi = coordOf(p, ax);
            if (gi < 0) continue;
            g[static_cast<std::size_t>(gi)] =
                g[static_cast<std::size_t>(gi)] + phi.d1 * xy[ax] * half;
        }
    }
    for (const auto& pr : kPairOfRegion) {
        const auto a = pointXY(pr[0]);
        const auto b = pointXY(pr[1]);
        const auto gd = detail::gDerivs<S>(a[0], a[1], b[0], b[1]);
        const auto phi = detail::phiDerivs(gd.value, e);
        const int localCoord[4] = {coordOf(pr[0], 0), coordOf(pr[0], 1),
                                   coordOf(pr[1], 0), coordOf(pr[1], 1)};
        for (int u = 0; u < 4; ++u) {
            const int gi = localCoord[u];
            if (gi < 0) continue;
            g[static_cast<std::size_t>(gi)] =
                g[static_cast<std::size_t>(gi)] + phi.d1 * gd.d1[static_cast<std::size_t>(u)];
        }
    }
    return g;
}

}  // namespace tbp
