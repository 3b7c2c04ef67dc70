// Dyadic segments, squares, and boxes with exact integer-scaled centers.
//
// A factor at depth k descends from [0,4] (segments) or [-2,2]^2 (squares)
// by k halvings; its center times 2^25 is an exact integer for k <= 24,
// so subdivision and the coordinate comparisons used by the eliminators are
// exact. Corner coordinates are dyadic rationals representable exactly in
// binary64.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tbp/geometry.hpp"

namespace tbp {

inline constexpr int kMaxDepth = 24;
inline constexpr int kCenterScaleBits = 25;

inline double descale(std::int64_t n) {
    return std::ldexp(static_cast<double>(n), -kCenterScaleBits);
}

enum class PatchKind { segment, square, point_at_infinity };

// One factor of a dyadic box (or the implicit {infinity} factor).
struct Patch {
    PatchKind kind = PatchKind::point_at_infinity;
    int depth = 0;
    std::int64_t nx = 0, ny = 0;  // center * 2^25; segments use nx only

    static Patch rootSegment() { return Patch{PatchKind::segment, 0, std::int64_t{2} << kCenterScaleBits, 0}; }
    static Patch rootSquare() { return Patch{PatchKind::square, 0, 0, 0}; }
    static Patch infinity() { return Patch{}; }

    bool isInfinity() const { return kind == PatchKind::point_at_infinity; }

    // Scaled half-extent: half-length 2^(1-depth) on the 2^25 grid.
    std::int64_t scaledHalf() const { return std::int64_t{1} << (kCenterScaleBits + 1 - depth); }

    std::int64_t sxLo() const { return nx - scaledHalf(); }
    std::int64_t sxHi() const { return nx + scaledHalf(); }
    std::int64_t syLo() const { return ny - scaledHalf(); }
    std::int64_t syHi() const { return ny + scaledHalf(); }

    double xLo() const { return descale(sxLo()); }
    double xHi() const { return descale(sxHi()); }
    double yLo() const { return descale(syLo()); }
    double yHi() const { return descale(syHi()); }

    // True iff the square does not cross a coordinate axis (touching is
    // allowed). Segments never cross; the root square does.
    bool normal() const {
        if (kind != PatchKind::square) return kind == PatchKind::segment;
        const bool xok = sxLo() >= 0 || sxHi() <= 0;
        const bool yok = syLo() >= 0 || syHi() <= 0;
        return xok && yok;
    }

    template <class S>
    PlanePoint<S> center() const {
        using Ops = ScalarOps<S>;
        if (isInfinity()) return PlanePoint<S>::infinity();
        return PlanePoint<S>::finite(Ops::fromExactDouble(descale(nx)),
                                     Ops::fromExactDouble(kind == PatchKind::segment
                                                              ? 0.0
                                                              : descale(ny)));
    }

    template <class S>
    std::vector<PlanePoint<S>> vertices() const {
        using Ops = ScalarOps<S>;
        std::vector<PlanePoint<S>> out;
        if (isInfinity()) {
            out.push_back(PlanePoint<S>::infinity());
            return out;
        }
        if (kind == PatchKind::segment) {
            out.push_back(PlanePoint<S>::real(Ops::fromExactDouble(xLo())));
            out.push_back(PlanePoint<S>::real(Ops::fromExactDouble(xHi())));
            return out;
        }
        // counterclockwise from the lower-left corner
        const double xs[4] = {xLo(), xHi(), xHi(), xLo()};
        const double ys[4] = {yLo(), yLo(), yHi(), yHi()};
        for (int i = 0; i < 4; ++i)
            out.push_back(PlanePoint<S>::finite(Ops::fromExactDouble(xs[i]),
                                                Ops::fromExactDouble(ys[i])));
        return out;
    }

    std::array<Patch, 2> halves() const {
        if (kind != PatchKind::segment || depth >= kMaxDepth)
            throw Fault("segment subdivision unavailable");
        const std::int64_t off = std::int64_t{1} << (kCenterScaleBits - depth);
        return {Patch{kind, depth + 1, nx - off, 0}, Patch{kind, depth + 1, nx + off, 0}};
    }

    std::array<Patch, 4> quarters() const {
        if (kind != PatchKind::square || depth >= kMaxDepth)
            throw Fault("square subdivision unavailable");
        const std::int64_t off = std::int64_t{1} << (kCenterScaleBits - depth);
        const int d = depth + 1;
        return {Patch{kind, d, nx - off, ny - off}, Patch{kind, d, nx + off, ny - off},
                Patch{kind, d, nx + off, ny + off}, Patch{kind, d, nx - off, ny + off}};
    }

    bool operator==(const Patch&) const = default;
};

// Min/max of |x| and |y| over the planar set, the patch size estimate
// delta = 2(xbar - xunder) / (1 + xunder^2 + yunder^2), and tau = sqrt(dim).
struct PatchQuantities {
    double absXMin = 0, absXMax = 0, absYMin = 0, absYMax = 0;
    Interval delta = Interval::fromInt(0);
    Interval tau = Interval::fromInt(0);
};

namespace detail {

inline void absRange(double lo, double hi, double& amin, double& amax) {
    if (lo <= 0.0 && hi >= 0.0) {
        amin = 0.0;
        amax = std::fmax(-lo, hi);
    } else {
        amin = std::fmin(std::fabs(lo), std::fabs(hi));
        amax = std::fmax(std::fabs(lo), std::fabs(hi));
    }
}

}  // namespace detail

template <class S>
S patchDelta(const Patch& q) {
    using Ops = ScalarOps<S>;
    if (q.isInfinity()) return Ops::fromInt(0);
    double axmin, axmax, aymin, aymax;
    detail::absRange(q.xLo(), q.xHi(), axmin, axmax);
    if (q.kind == PatchKind::segment) {
        aymin = aymax = 0.0;
    } else {
        detail::absRange(q.yLo(), q.yHi(), aymin, aymax);
    }
    const S side = Ops::fromExactDouble(axmax) - Ops::fromExactDouble(axmin);
    const S den = Ops::fromInt(1) + sqr(Ops::fromExactDouble(axmin)) +
                  sqr(Ops::fromExactDouble(aymin));
    return Ops::fromInt(2) * side / den;
}

template <class S>
S patchTau(const Patch& q) {
    using Ops = ScalarOps<S>;
    switch (q.kind) {
        case PatchKind::point_at_infinity: return Ops::fromInt(0);
        case PatchKind::segment: return Ops::fromInt(1);
        case PatchKind::square: return sqrt(Ops::fromInt(2));
    }
    std::abort();
}

inline PatchQuantities quantities(const Patch& q) {
    PatchQuantities out;
    if (q.isInfinity()) return out;
    detail::absRange(q.xLo(), q.xHi(), out.absXMin, out.absXMax);
    if (q.kind == PatchKind::square)
        detail::absRange(q.yLo(), q.yHi(), out.absYMin, out.absYMax);
    out.delta = patchDelta<Interval>(q);
    out.tau = patchTau<Interval>(q);
    return out;
}

// One node of the search tree: Q0 x Q1 x Q2 x Q3 (x {infinity}).
struct DyadicBox {
    Patch q0 = Patch::rootSegment();
    std::array<Patch, 3> squares{Patch::rootSquare(), Patch::rootSquare(),
                                 Patch::rootSquare()};

    static DyadicBox root() { return DyadicBox{}; }

    // i in 0..4; 4 is the point at infinity.
    Patch patch(int i) const {
        if (i == 0) return q0;
        if (i >= 1 && i <= 3) return squares[static_cast<std::size_t>(i - 1)];
        return Patch::infinity();
    }

    int maxFactorDepth() const {
        int d = q0.depth;
        for (const auto& s : squares) d = d > s.depth ? d : s.depth;
        return d;
    }

    std::vector<DyadicBox> subdivide(int k) const {
        std::vector<DyadicBox> out;
        if (k == 0) {
            for (const auto& h : q0.halves()) {
                DyadicBox b = *this;
                b.q0 = h;
                out.push_back(b);
            }
            return out;
        }
        if (k < 1 || k > 3) throw Fault("subdivision index out of range");
        for (const auto& quarter : squares[static_cast<std::size_t>(k - 1)].quarters()) {
            DyadicBox b = *this;
            b.squares[static_cast<std::size_t>(k - 1)] = quarter;
            out.push_back(b);
        }
        return out;
    }

    // Canonical textual key: per-factor depth and scaled-center integers.
    std::string key() const {
        std::string s = std::to_string(q0.depth) + ":" + std::to_string(q0.nx);
        for (const auto& sq : squares)
            s += "|" + std::to_string(sq.depth) + ":" + std::to_string(sq.nx) + ":" +
                 std::to_string(sq.ny);
        return s;
    }

    static DyadicBox fromKey(const std::string& key);

    bool operator==(const DyadicBox&) const = default;
};

}  // namespace tbp
