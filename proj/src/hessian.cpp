#include "tbp/hessian.hpp"

#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "tbp/hexfloat.hpp"

namespace tbp {

namespace {

using nlohmann::json;

const Rat kHalf(1, 2);

// ---- symbolic expressions --------------------------------------------------

RationalFunctionExpr makeG() {
    const Poly one = Poly::constant(1);
    const Poly n1 = one + Poly::variable(0, 2) + Poly::variable(1, 2);
    const Poly n2 = one + Poly::variable(2, 2) + Poly::variable(3, 2);
    const Poly dx = Poly::variable(0) - Poly::variable(2);
    const Poly dy = Poly::variable(1) - Poly::variable(3);
    const Poly q = dx * dx + dy * dy;
    return RationalFunctionExpr{(n1 * n2) * Rat(1, 4), q, 1};
}

RationalFunctionExpr makeF() {
    const Poly one = Poly::constant(1);
    const Poly n = one + Poly::variable(0, 2) + Poly::variable(1, 2);
    return RationalFunctionExpr{n * Rat(1, 4), Poly(), 0};
}

// Derivative cache keyed by packed multi-index; entries built from a parent
// one derivative below.
class DerivCache {
  public:
    explicit DerivCache(RationalFunctionExpr base) {
        cache_.emplace(pack({0, 0, 0, 0}), std::move(base));
    }

    const RationalFunctionExpr& get(const Exponents& order) {
        const auto key = pack(order);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        Exponents parent = order;
        int var = 0;
        while (parent[static_cast<std::size_t>(var)] == 0) ++var;
        --parent[static_cast<std::size_t>(var)];
        const auto& p = get(parent);
        auto [pos, inserted] = cache_.emplace(key, p.derivative(var));
        return pos->second;
    }

  private:
    static std::uint32_t pack(const Exponents& e) {
        return (static_cast<std::uint32_t>(e[0]) << 24) |
               (static_cast<std::uint32_t>(e[1]) << 16) |
               (static_cast<std::uint32_t>(e[2]) << 8) | static_cast<std::uint32_t>(e[3]);
    }

    std::map<std::uint32_t, RationalFunctionExpr> cache_;
};

DerivCache& gCache() {
    static DerivCache cache(makeG());
    return cache;
}

DerivCache& fCache() {
    static DerivCache cache(makeF());
    return cache;
}

// ---- regions ----------------------------------------------------------------

// Exact center of region m (0..9) in the four local variables.
std::array<AlgebraicScalar, 4> regionCenter(int m) {
    const auto c = tbpExactCoords();
    const auto pointXY = [&](int p) -> std::array<AlgebraicScalar, 2> {
        if (p == 0) return {c[0], AlgebraicScalar(0L)};
        return {c[static_cast<std::size_t>(2 * p - 1)], c[static_cast<std::size_t>(2 * p)]};
    };
    if (m < 4) {
        const auto xy = pointXY(m);
        return {xy[0], xy[1], AlgebraicScalar(0L), AlgebraicScalar(0L)};
    }
    const auto& pr = kPairOfRegion[static_cast<std::size_t>(m - 4)];
    const auto a = pointXY(pr[0]);
    const auto b = pointXY(pr[1]);
    return {a[0], a[1], b[0], b[1]};
}

// Local variable (0..3) of a related global coordinate.
int localVar(int coord, int m) {
    const int p = kPointOfCoord[static_cast<std::size_t>(coord)];
    const int ax = kAxisOfCoord[static_cast<std::size_t>(coord)];
    if (m < 4) return ax;
    const auto& pr = kPairOfRegion[static_cast<std::size_t>(m - 4)];
    return (p == pr[0] ? 0 : 2) + ax;
}

std::vector<int> relatedCoords(int m) {
    std::vector<int> out;
    for (int i = 0; i < 7; ++i)
        if (related(i, m)) out.push_back(i);
    return out;
}

// |D^order U_m (delta_m)|, exact.
AlgebraicScalar centerAbsPartial(int m, const Exponents& order) {
    auto& cache = m < 4 ? fCache() : gCache();
    return cache.get(order).evaluate<AlgebraicScalar>(regionCenter(m)).abs();
}

// All multi-indices of the given total order over the active variables.
std::vector<Exponents> multiIndices(int order, int vars) {
    std::vector<Exponents> out;
    Exponents e{0, 0, 0, 0};
    const auto rec = [&](auto&& self, int var, int left) -> void {
        if (var == vars - 1) {
            e[static_cast<std::size_t>(var)] = left;
            out.push_back(e);
            e[static_cast<std::size_t>(var)] = 0;
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[static_cast<std::size_t>(var)] = k;
            self(self, var + 1, left - k);
        }
        e[static_cast<std::size_t>(var)] = 0;
    };
    rec(rec, 0, order);
    return out;
}

// The region's interval box: center enclosure widened by 2^-12 per side.
std::array<Interval, 4> regionBox(int m) {
    const auto center = regionCenter(m);
    const Interval r(-0x1p-12, 0x1p-12);
    std::array<Interval, 4> out;
    for (int v = 0; v < 4; ++v)
        out[static_cast<std::size_t>(v)] =
            center[static_cast<std::size_t>(v)].enclosure() + r;
    return out;
}

// (257/256)^n, exact.
Rat supFactorPow(int n) {
    Rat f(257, 256);
    Rat out(1);
    for (int i = 0; i < n; ++i) out *= f;
    return out;
}

}  // namespace

// ---- public metadata ---------------------------------------------------------

std::array<AlgebraicScalar, 7> tbpExactCoords() {
    const AlgebraicScalar half(Rat(1, 2));
    const AlgebraicScalar rootHalf = AlgebraicScalar::sqrt3(Rat(1, 2));
    return {AlgebraicScalar(1L), -half, -rootHalf, AlgebraicScalar(0L),
            AlgebraicScalar(0L),  -half, rootHalf};
}

const RationalFunctionExpr& gExpression() {
    static const RationalFunctionExpr g = makeG();
    return g;
}

const RationalFunctionExpr& fExpression() {
    static const RationalFunctionExpr f = makeF();
    return f;
}

RationalFunctionExpr symbolicPartial(const RationalFunctionExpr& u, const Exponents& order) {
    RationalFunctionExpr out = u;
    for (int v = 0; v < kPolyVars; ++v)
        for (int k = 0; k < order[static_cast<std::size_t>(v)]; ++k)
            out = out.derivative(v);
    return out.reduced();
}

// ---- LDL^T -------------------------------------------------------------------

LdltResult ldltCertify(const SymMatrix7& M, const Interval& shift) {
    LdltResult out;
    std::array<std::array<Interval, 7>, 7> lower{};
    std::array<Interval, 7> diag{};
    for (int j = 0; j < 7; ++j) {
        Interval d = M.at(j, j) - shift;
        for (int k = 0; k < j; ++k)
            d = d - sqr(lower[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]) *
                        diag[static_cast<std::size_t>(k)];
        out.pivots[static_cast<std::size_t>(j)] = d;
        if (!(d.lo() > kDivGuard)) return out;  // cannot certify
        diag[static_cast<std::size_t>(j)] = d;
        for (int i = j + 1; i < 7; ++i) {
            Interval v = M.at(i, j);
            for (int k = 0; k < j; ++k)
                v = v - lower[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                            lower[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] *
                            diag[static_cast<std::size_t>(k)];
            lower[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v / d;
        }
    }
    out.positive = true;
    return out;
}

// ---- Hessian routes ----------------------------------------------------------

namespace {

IConfiguration tbpEnclosureConfig() {
    const auto c = tbpExactCoords();
    std::array<Interval, 7> enc;
    for (int i = 0; i < 7; ++i)
        enc[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)].enclosure();
    return IConfiguration::fromCoords(enc);
}

struct RegionDerivs {
    AlgebraicScalar u;
    std::array<AlgebraicScalar, 4> d1{};
    std::array<std::array<AlgebraicScalar, 4>, 4> d2{};
};

RegionDerivs evalRegionExact(int m) {
    RegionDerivs out;
    const auto center = regionCenter(m);
    auto& cache = m < 4 ? fCache() : gCache();
    const int vars = m < 4 ? 2 : 4;
    out.u = cache.get({0, 0, 0, 0}).evaluate<AlgebraicScalar>(center);
    for (int v = 0; v < vars; ++v) {
        Exponents e{0, 0, 0, 0};
        e[static_cast<std::size_t>(v)] = 1;
        out.d1[static_cast<std::size_t>(v)] = cache.get(e).evaluate<AlgebraicScalar>(center);
        for (int w = v; w < vars; ++w) {
            Exponents e2 = e;
            ++e2[static_cast<std::size_t>(w)];
            const auto val = cache.get(e2).evaluate<AlgebraicScalar>(center);
            out.d2[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] = val;
            out.d2[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)] = val;
        }
    }
    return out;
}

// phi'(u), phi''(u) enclosures at an exact u, phi = x^(e/2).
std::pair<Interval, Interval> phiEnclosures(const AlgebraicScalar& u, int e) {
    if (e == 2) return {Interval::fromInt(1), Interval::fromInt(0)};
    const Interval ue = u.enclosure();
    const Interval root = sqrt(ue);
    const Interval one = Interval::fromInt(1);
    return {one / (Interval::fromInt(2) * root),
            -(one / (Interval::fromInt(4) * ue * root))};
}

SymMatrix7 symbolicHessianAtTBP(int e) {
    SymMatrix7 out;
    if (e == 2) {
        std::array<std::array<AlgebraicScalar, 7>, 7> acc{};
        for (int m = 0; m < 10; ++m) {
            const auto r = evalRegionExact(m);
            for (const int i : relatedCoords(m))
                for (const int j : relatedCoords(m)) {
                    if (j < i) continue;
                    acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                        r.d2[static_cast<std::size_t>(localVar(i, m))]
                            [static_cast<std::size_t>(localVar(j, m))];
                }
        }
        for (int i = 0; i < 7; ++i)
            for (int j = i; j < 7; ++j)
                out.set(i, j, acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                  .enclosure());
        return out;
    }
    std::array<std::array<Interval, 7>, 7> acc{};
    for (auto& row : acc) row.fill(Interval::fromInt(0));
    for (int m = 0; m < 10; ++m) {
        const auto r = evalRegionExact(m);
        const auto [p1, p2] = phiEnclosures(r.u, e);
        for (const int i : relatedCoords(m))
            for (const int j : relatedCoords(m)) {
                if (j < i) continue;
                const int u = localVar(i, m), v = localVar(j, m);
                const Interval val =
                    p1 * r.d2[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]
                             .enclosure() +
                    p2 * r.d1[static_cast<std::size_t>(u)].enclosure() *
                        r.d1[static_cast<std::size_t>(v)].enclosure();
                acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] + val;
            }
    }
    for (int i = 0; i < 7; ++i)
        for (int j = i; j < 7; ++j)
            out.set(i, j, acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return out;
}

Grad7<Interval> symbolicGradientAtTBP(int e) {
    Grad7<Interval> acc;
    acc.fill(Interval::fromInt(0));
    if (e == 2) {
        std::array<AlgebraicScalar, 7> exact{};
        for (int m = 0; m < 10; ++m) {
            const auto r = evalRegionExact(m);
            for (const int i : relatedCoords(m))
                exact[static_cast<std::size_t>(i)] =
                    exact[static_cast<std::size_t>(i)] +
                    r.d1[static_cast<std::size_t>(localVar(i, m))];
        }
        for (int i = 0; i < 7; ++i)
            acc[static_cast<std::size_t>(i)] = exact[static_cast<std::size_t>(i)].enclosure();
        return acc;
    }
    for (int m = 0; m < 10; ++m) {
        const auto r = evalRegionExact(m);
        const auto [p1, p2] = phiEnclosures(r.u, e);
        for (const int i : relatedCoords(m))
            acc[static_cast<std::size_t>(i)] =
                acc[static_cast<std::size_t>(i)] +
                p1 * r.d1[static_cast<std::size_t>(localVar(i, m))].enclosure();
    }
    return acc;
}

}  // namespace

SymMatrix7 energyHessianAtTBP(int e) {
    requireExponent(e);
    const auto handRoute = energyHessian<Interval>(tbpEnclosureConfig(), e);
    const auto symbolic = symbolicHessianAtTBP(e);
    SymMatrix7 out;
    for (int i = 0; i < 7; ++i)
        for (int j = i; j < 7; ++j)
            out.set(i, j,
                    intersect(handRoute[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                              symbolic.at(i, j)));
    return out;
}

Grad7<Interval> energyGradientAtTBP(int e) {
    requireExponent(e);
    const auto hand = energyGradient<Interval>(tbpEnclosureConfig(), e);
    const auto symbolic = symbolicGradientAtTBP(e);
    Grad7<Interval> out;
    for (int i = 0; i < 7; ++i)
        out[static_cast<std::size_t>(i)] = intersect(hand[static_cast<std::size_t>(i)],
                                                     symbolic[static_cast<std::size_t>(i)]);
    return out;
}

// ---- sixth partials and the bootstrap ----------------------------------------

SixthPartialAudit sixthPartialAudit() {
    SixthPartialAudit out;
    out.maxCoeffNorm = 0;
    out.phi6 = 0;

    // Certified sup bound max(|z1|, |z2|, 1/dist) < 1 + 2^-8 on every pair
    // region, via interval evaluation over the region boxes.
    const double capSq = 1.0 + 0x1p-7 + 0x1p-16;  // (1 + 2^-8)^2, exact
    bool supOk = true;
    for (int m = 4; m < 10; ++m) {
        const auto box = regionBox(m);
        const Interval z1sq = sqr(box[0]) + sqr(box[1]);
        const Interval z2sq = sqr(box[2]) + sqr(box[3]);
        const Interval qv = sqr(box[0] - box[2]) + sqr(box[1] - box[3]);
        const Interval capSqI = Interval::point(1.0) + Interval::point(0x1p-7) +
                                Interval::point(0x1p-16);
        if (!(z1sq.hi() < capSq && z2sq.hi() < capSq)) supOk = false;
        if (!((qv * capSqI).lo() > 1.0)) supOk = false;
    }
    out.supBoundOk = supOk;

    for (const auto& idx : multiIndices(6, 4)) {
        const auto d = gCache().get(idx).reduced();
        const Rat norm = d.num.coeffNorm();
        const int deg = d.num.degree();
        if (norm > out.maxCoeffNorm) out.maxCoeffNorm = norm;
        if (deg > out.maxDegree) out.maxDegree = deg;
        if (d.power > out.maxPower) out.maxPower = d.power;
        const Rat bound = norm * supFactorPow(deg + 2 * d.power);
        if (bound > out.phi6) out.phi6 = bound;
    }
    return out;
}

CenterBoundsAudit centerBounds() {
    CenterBoundsAudit out;
    for (int k = 1; k <= 5; ++k) {
        AlgebraicScalar best(0L);
        for (int m = 4; m < 10; ++m)
            for (const auto& idx : multiIndices(k, 4)) {
                const auto v = centerAbsPartial(m, idx);
                if (v > best) best = v;
            }
        out.aMax[static_cast<std::size_t>(k - 1)] = best;
    }
    const long statedBounds[5] = {1, 4, 18, 96, 600};
    out.withinStatedBounds = true;
    for (int k = 0; k < 5; ++k)
        if (out.aMax[static_cast<std::size_t>(k)] > AlgebraicScalar(statedBounds[k]))
            out.withinStatedBounds = false;
    return out;
}

BootstrapResult phiBootstrap() {
    BootstrapResult out;
    const auto sixth = sixthPartialAudit();
    const auto centers = centerBounds();
    out.phi6 = sixth.phi6;

    const Rat step(1, 1024);  // 2^-10 = 4 path segments x 2^-12
    AlgebraicScalar next(out.phi6);
    // descending chain Phi_k <= a_k + 2^-10 * Phi_{k+1}
    for (int k = 5; k >= 1; --k) {
        const AlgebraicScalar bound =
            centers.aMax[static_cast<std::size_t>(k - 1)] + AlgebraicScalar(step) * next;
        out.phiBound[static_cast<std::size_t>(k - 1)] = bound;
        next = bound;
    }

    const auto below = [](const AlgebraicScalar& v, long num, long den) {
        return v < AlgebraicScalar(Rat(num, den));
    };
    out.chainOk = below(out.phiBound[4], 5483, 1) && below(out.phiBound[3], 102, 1) &&
                  below(out.phiBound[2], 181, 10) && below(out.phiBound[1], 402, 100);
    // |Phi_k - a_k| <= 2^-10 * Phi_{k+1}: the pair-region offsets (1/200,
    // 1/50, 1/10) must dominate the drift at orders 1..3, and the F-side
    // first-order drift 2^-13 must stay below 1/1000.
    const AlgebraicScalar stepA(step);
    out.offsetsOk = stepA * out.phiBound[1] < AlgebraicScalar(Rat(1, 200)) &&
                    stepA * out.phiBound[2] < AlgebraicScalar(Rat(1, 50)) &&
                    stepA * out.phiBound[3] < AlgebraicScalar(Rat(1, 10)) &&
                    Rat(1, 8192) < Rat(1, 1000);
    out.chainOk = out.chainOk && (stepA * out.phiBound[1] < AlgebraicScalar(Rat(1, 200)));
    return out;
}

// ---- the variation bound -------------------------------------------------------

UpsilonResult variationBound() {
    UpsilonResult out;

    // b caches per region: order-1/2/3 center magnitudes plus the offsets.
    std::array<std::array<AlgebraicScalar, 7>, 7> X{}, Y{}, Z{};

    for (int m = 0; m < 10; ++m) {
        const Rat v1 = m < 4 ? Rat(1, 1000) : Rat(1, 200);
        const Rat v2 = m < 4 ? Rat(0) : Rat(1, 50);
        const Rat v3 = m < 4 ? Rat(0) : Rat(1, 10);
        const auto rel = relatedCoords(m);

        std::map<std::uint32_t, AlgebraicScalar> memo;
        const auto b = [&](std::initializer_list<int> coords, const Rat& offset) {
            Exponents e{0, 0, 0, 0};
            for (const int c : coords) ++e[static_cast<std::size_t>(localVar(c, m))];
            const std::uint32_t key = (static_cast<std::uint32_t>(e[0]) << 24) |
                                      (static_cast<std::uint32_t>(e[1]) << 16) |
                                      (static_cast<std::uint32_t>(e[2]) << 8) |
                                      static_cast<std::uint32_t>(e[3]);
            auto it = memo.find(key);
            if (it == memo.end())
                it = memo.emplace(key, centerAbsPartial(m, e)).first;
            return it->second + AlgebraicScalar(offset);
        };

        for (const int i : rel)
            for (const int j : rel) {
                AlgebraicScalar xs(0L), ys(0L), zs(0L);
                for (const int k : rel) {
                    xs = xs + b({i, j, k}, v3);
                    ys = ys + b({i, j}, v2) * b({k}, v1) + b({j, k}, v2) * b({i}, v1) +
                         b({k, i}, v2) * b({j}, v1);
                    zs = zs + b({i}, v1) * b({j}, v1) * b({k}, v1);
                }
                X[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    X[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] + xs;
                Y[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    Y[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] + ys;
                Z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    Z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] + zs;
            }
    }

    AlgebraicScalar xx(0L), xy(0L), yy(0L), xz(0L), yz(0L), zz(0L);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            const auto& x = X[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const auto& y = Y[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const auto& z = Z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            xx = xx + x * x;
            xy = xy + x * y;
            yy = yy + y * y;
            xz = xz + x * z;
            yz = yz + y * z;
            zz = zz + z * z;
        }

    // ||M||_2^2 = xx c1^2 + 2xy c1c2 + yy c2^2 + 2xz c1c3 + 2yz c2c3 + zz c3^2
    out.exact = {xx, xy + xy, yy, xz + xz, yz + yz, zz};
    for (int t = 0; t < 6; ++t)
        out.ceiled[static_cast<std::size_t>(t)] =
            static_cast<long long>(out.exact[static_cast<std::size_t>(t)].ceil().get_si());

    const long long stated[6] = {19336, 19036, 4922, 1474, 772, 31};
    out.coeffsWithinStated = true;
    for (int t = 0; t < 6; ++t)
        if (out.ceiled[static_cast<std::size_t>(t)] > stated[t]) out.coeffsWithinStated = false;

    const auto radicand = [&](long c1, long c2, long c3) -> Rat {
        std::array<Rat, 6> c;
        for (int t = 0; t < 6; ++t)
            c[static_cast<std::size_t>(t)] =
                Rat(static_cast<long>(out.ceiled[static_cast<std::size_t>(t)]));
        return Rat(c[0] * c1 * c1 + c[1] * c1 * c2 + c[2] * c2 * c2 + c[3] * c1 * c3 +
                   c[4] * c2 * c3 + c[5] * c3 * c3);
    };
    out.radicand1 = radicand(1, 2, 12);
    out.radicand2 = radicand(1, 0, 0);
    out.upsilon1Below345 = out.radicand1 < Rat(345) * 345;
    out.upsilon2Below140 = out.radicand2 < Rat(140) * 140;
    return out;
}

// ---- range containment -----------------------------------------------------

bool umRangeContained(int m) {
    const Rat lo(1, 4);
    const Rat hi = Rat(1, 2) + Rat(1, 512);
    if (m < 4) {
        // F is monotone in |x|, |y|: exact rational range from the box
        // corner magnitudes.
        const auto box = regionBox(m);
        const auto absLo = [](const Interval& i) {
            if (i.lo() <= 0.0 && i.hi() >= 0.0) return Rat(0);
            const double v = std::fmin(std::fabs(i.lo()), std::fabs(i.hi()));
            return Rat(v);
        };
        const auto absHi = [](const Interval& i) {
            return Rat(std::fmax(std::fabs(i.lo()), std::fabs(i.hi())));
        };
        const Rat fLo = (Rat(1) + absLo(box[0]) * absLo(box[0]) +
                         absLo(box[1]) * absLo(box[1])) /
                        4;
        const Rat fHi = (Rat(1) + absHi(box[0]) * absHi(box[0]) +
                         absHi(box[1]) * absHi(box[1])) /
                        4;
        return fLo >= lo && fHi <= hi;
    }
    const auto box = regionBox(m);
    const Interval g = gExpression().evaluate<Interval>(box);
    return g.lo() >= ratEnclosure(lo).hi() && g.hi() <= ratEnclosure(hi).lo();
}

// ---- certificate ------------------------------------------------------------

HessianCertificate certifyLocalMinimum(int e) {
    requireExponent(e);
    HessianCertificate cert;
    cert.e = e;

    const auto hessian = energyHessianAtTBP(e);
    cert.ldlt = ldltCertify(hessian, ratio(1, 10));

    const auto grad = energyGradientAtTBP(e);
    cert.gradientVanishes = true;
    for (const auto& g : grad)
        if (!g.contains(0.0)) cert.gradientVanishes = false;

    cert.centers = centerBounds();
    cert.bootstrap = phiBootstrap();
    cert.sixth = sixthPartialAudit();
    cert.upsilon = variationBound();

    cert.rangesContained = true;
    for (int m = 0; m < 10; ++m)
        if (!umRangeContained(m)) cert.rangesContained = false;

    // Upsilon(e)/2^12 < 1/10  <=>  radicand < 409.6^2 = 4194304/25.
    const Rat driftCap(4194304, 25);
    const Rat& radicand = e == 1 ? cert.upsilon.radicand1 : cert.upsilon.radicand2;
    cert.driftBelowShift = radicand < driftCap;

    cert.valid = cert.ldlt.positive && cert.gradientVanishes && cert.rangesContained &&
                 cert.driftBelowShift && cert.bootstrap.chainOk && cert.bootstrap.offsetsOk &&
                 cert.sixth.supBoundOk && cert.sixth.phi6 < Rat(5000000) &&
                 (e == 1 ? cert.upsilon.upsilon1Below345 : cert.upsilon.upsilon2Below140);
    return cert;
}

std::string certificateJson(const HessianCertificate& cert) {
    json j;
    j["e"] = cert.e;
    j["shift"] = "1/10";
    j["valid"] = cert.valid;

    json pivots = json::array();
    for (const auto& p : cert.ldlt.pivots)
        pivots.push_back({{"lo", hexDouble(p.lo())}, {"hi", hexDouble(p.hi())}});
    j["ldlt"] = {{"positive", cert.ldlt.positive}, {"pivots", pivots}};

    json aTable = json::array();
    for (const auto& a : cert.centers.aMax) aTable.push_back(a.str());
    j["center_bounds"] = {{"a_max", aTable},
                          {"within_stated", cert.centers.withinStatedBounds}};

    json phis = json::array();
    for (const auto& p : cert.bootstrap.phiBound) phis.push_back(p.str());
    j["bootstrap"] = {{"phi6", cert.bootstrap.phi6.get_str()},
                      {"phi_bounds", phis},
                      {"chain_ok", cert.bootstrap.chainOk},
                      {"offsets_ok", cert.bootstrap.offsetsOk}};

    j["sixth_partials"] = {{"max_coeff_norm", cert.sixth.maxCoeffNorm.get_str()},
                           {"max_degree", cert.sixth.maxDegree},
                           {"max_denominator_power", cert.sixth.maxPower},
                           {"sup_bound_ok", cert.sixth.supBoundOk}};

    json coeffs = json::array();
    for (const auto& c : cert.upsilon.ceiled) coeffs.push_back(c);
    j["upsilon"] = {{"coefficients", coeffs},
                    {"within_stated", cert.upsilon.coeffsWithinStated},
                    {"radicand_e1", cert.upsilon.radicand1.get_str()},
                    {"radicand_e2", cert.upsilon.radicand2.get_str()},
                    {"below_345", cert.upsilon.upsilon1Below345},
                    {"below_140", cert.upsilon.upsilon2Below140}};

    j["gradient_vanishes"] = cert.gradientVanishes;
    j["ranges_contained"] = cert.rangesContained;
    j["drift_below_shift"] = cert.driftBelowShift;
    return j.dump(2);
}

}  // namespace tbp
