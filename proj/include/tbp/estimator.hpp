// Certified lower bound on the energy over a dyadic box.
//
// The bound is the minimum energy over the 128 vertex configurations minus
// an explicit error sum_{i=0..3} sum_{j != i} eps_ij * delta_i^2, where
// eps(Q, Qhat) = max(0, Lambda1) + Lambda2 is evaluated at R, the certified
// lower bound on the separation of the two patches. Lambda1/Lambda2 are the
// general convex-decreasing forms specialized by E'(R) = -e R^-(e+1),
// E''(R) = e(e+1) R^-(e+2); the printed power-law forms serve as
// cross-checks in the tests. Touching patches (R <= 0) make eps infinite
// and the box can only be subdivided.

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tbp/bounds.hpp"

namespace tbp {

// A nonnegative certified quantity or the +infinity sentinel. The sentinel
// is an explicit tag; no floating-point infinities are ever stored.
template <class S>
struct ErrorTerm {
    bool infinite = false;
    S value{};

    static ErrorTerm inf() { return {true, {}}; }
    static ErrorTerm of(S v) { return {false, v}; }
};

template <class S>
struct Lambdas {
    S lambda1, lambda2;
};

// Lambda1/Lambda2 for a patch of the given kind at separation R > 0.
template <class S>
Lambdas<S> lambdas(const Patch& q, const S& r, int e) {
    requireExponent(e);
    using Ops = ScalarOps<S>;
    if (q.isInfinity()) throw Fault("lambdas of the infinity patch");

    const S one = Ops::fromInt(1);
    S rPow = r;  // r^(e+1)
    for (int i = 0; i < e; ++i) rPow = rPow * r;
    const S ePrime = -Ops::fromInt(e) / rPow;
    const S eSecond = Ops::fromInt(e * (e + 1)) / (rPow * r);

    if (q.kind == PatchKind::segment) {
        const S l1 = r / Ops::fromInt(32) * ePrime +
                     (Ops::fromRatio(1, 8) - sqr(r) / Ops::fromInt(32)) * eSecond;
        const S l2 = -ePrime / Ops::fromInt(8);
        return {l1, l2};
    }
    const auto qn = quantities(q);
    const S rootX = safeSqrt(one + sqr(Ops::fromExactDouble(qn.absXMax)));
    const S rootY = safeSqrt(one + sqr(Ops::fromExactDouble(qn.absYMax)));
    const S l1 = r / Ops::fromInt(16) * ePrime +
                 (Ops::fromRatio(1, 4) - sqr(r) / Ops::fromInt(16)) * eSecond;
    const S l2 = -ePrime / Ops::fromRatio(798, 100) * (rootX + rootY);
    return {l1, l2};
}

// eps(Q_i, Q_j) from the certified lower endpoint of PsiMin; +infinity when
// the patches cannot be separated.
template <class S>
ErrorTerm<S> epsilonPair(const Patch& qi, const Patch& qj, const S& psiMin, int e) {
    using Ops = ScalarOps<S>;
    const double rLow = lower(psiMin);
    if (rLow <= 0.0) return ErrorTerm<S>::inf();
    const S r = Ops::fromExactDouble(rLow);
    const auto l = lambdas<S>(qi, r, e);
    return ErrorTerm<S>::of(max(l.lambda1, Ops::fromInt(0)) + l.lambda2);
}

template <class S>
struct ErrorBudget {
    std::array<ErrorTerm<S>, 4> perIndex{};
    ErrorTerm<S> total{};
};

// Symmetric table of separation bounds for the 10 unordered index pairs.
template <class S>
struct PairTable {
    std::array<std::array<SeparationBounds<S>, 5>, 5> at{};

    static PairTable build(const DyadicBox& box) {
        PairTable t;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) {
                const auto b = separationBounds<S>(box.patch(i), box.patch(j));
                t.at[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = b;
                t.at[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = b;
            }
        return t;
    }

    const SeparationBounds<S>& pair(int i, int j) const {
        return at[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
};

template <class S>
ErrorBudget<S> errorBudget(const DyadicBox& box, const PairTable<S>& pairs, int e) {
    using Ops = ScalarOps<S>;
    ErrorBudget<S> budget;
    S grand = Ops::fromInt(0);
    bool grandInf = false;
    for (int i = 0; i < 4; ++i) {
        const Patch qi = box.patch(i);
        const S d2 = sqr(patchDelta<S>(qi));
        S sum = Ops::fromInt(0);
        bool inf = false;
        for (int j = 0; j < 5 && !inf; ++j) {
            if (j == i) continue;
            const auto eps = epsilonPair<S>(qi, box.patch(j), pairs.pair(i, j).psiMin, e);
            if (eps.infinite) {
                inf = true;
                break;
            }
            sum = sum + eps.value;
        }
        if (inf) {
            budget.perIndex[static_cast<std::size_t>(i)] = ErrorTerm<S>::inf();
            grandInf = true;
        } else {
            const S err = sum * d2;
            budget.perIndex[static_cast<std::size_t>(i)] = ErrorTerm<S>::of(err);
            grand = grand + err;
        }
    }
    budget.total = grandInf ? ErrorTerm<S>::inf() : ErrorTerm<S>::of(grand);
    return budget;
}

// Index whose error share is largest (ties to the lowest index). Infinite
// shares dominate finite ones; among infinite shares the shallowest factor
// is split, since only shrinking the largest overlapping patch can separate
// the pair and make the shares finite.
template <class S>
int subdivisionIndex(const ErrorBudget<S>& budget, const DyadicBox& box) {
    int bestInfIdx = -1;
    int bestInfDepth = 0;
    int bestIdx = 0;
    double bestVal = -1.0;
    for (int i = 0; i < 4; ++i) {
        const auto& t = budget.perIndex[static_cast<std::size_t>(i)];
        if (t.infinite) {
            const int d = box.patch(i).depth;
            if (bestInfIdx < 0 || d < bestInfDepth) {
                bestInfIdx = i;
                bestInfDepth = d;
            }
        } else if (bestInfIdx < 0) {
            const double v = upper(t.value);
            if (v > bestVal) {
                bestIdx = i;
                bestVal = v;
            }
        }
    }
    return bestInfIdx >= 0 ? bestInfIdx : bestIdx;
}

// Minimum energy over the 2*4*4*4 vertex configurations, computed from
// per-pair energy tables so each pair energy is evaluated once.
template <class S>
S vertexEnergyMin(const DyadicBox& box, int e) {
    requireExponent(e);
    using Ops = ScalarOps<S>;

    std::array<std::vector<PlanePoint<S>>, 5> verts;
    for (int i = 0; i < 5; ++i) verts[static_cast<std::size_t>(i)] = box.patch(i).vertices<S>();

    std::array<std::array<std::vector<S>, 5>, 5> table;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            auto& cell = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const auto& vi = verts[static_cast<std::size_t>(i)];
            const auto& vj = verts[static_cast<std::size_t>(j)];
            cell.reserve(vi.size() * vj.size());
            for (const auto& a : vi)
                for (const auto& b : vj) cell.push_back(pairEnergy(a, b, e));
        }

    const std::size_t counts[5] = {verts[0].size(), verts[1].size(), verts[2].size(),
                                   verts[3].size(), verts[4].size()};
    S best{};
    bool first = true;
    std::size_t choice[5] = {0, 0, 0, 0, 0};
    while (true) {
        S sum = Ops::fromInt(0);
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) {
                const auto& cell = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                sum = sum + cell[choice[static_cast<std::size_t>(i)] *
                                     counts[static_cast<std::size_t>(j)] +
                                 choice[static_cast<std::size_t>(j)]];
            }
        if (first) {
            best = sum;
            first = false;
        } else {
            best = min(best, sum);
        }
        int k = 4;
        while (k >= 0) {
            const auto uk = static_cast<std::size_t>(k);
            if (++choice[uk] < counts[uk]) break;
            choice[uk] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return best;
}

// The Theorem-EE lower bound; unusable (tagged) when a needed eps is
// infinite. The vertex minimum is evaluated only when all patches are
// separated, which also keeps every vertex pair energy well defined.
template <class S>
struct EnergyBound {
    bool usable = false;
    S bound{};          // certified lower bound on the box energy when usable
    S vertexMin{};
    ErrorBudget<S> budget{};
};

template <class S>
EnergyBound<S> energyLowerBound(const DyadicBox& box, const PairTable<S>& pairs, int e) {
    EnergyBound<S> out;
    out.budget = errorBudget<S>(box, pairs, e);
    if (out.budget.total.infinite) return out;
    out.vertexMin = vertexEnergyMin<S>(box, e);
    out.bound = out.vertexMin - out.budget.total.value;
    out.usable = true;
    return out;
}

}  // namespace tbp
