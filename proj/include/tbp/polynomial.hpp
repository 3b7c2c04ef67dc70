// Exact multivariate polynomials over Q in the four variables
// (x1, y1, x2, y2), and rational functions of the shape P / base^k used for
// repeated quotient-rule differentiation with denominator-power
// cancellation.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "tbp/rational.hpp"

namespace tbp {

inline constexpr int kPolyVars = 4;

using Exponents = std::array<int, kPolyVars>;

namespace detail {

// Lexicographic key: x1 in the top byte, so map order is lex order.
inline std::uint32_t packExponents(const Exponents& e) {
    return (static_cast<std::uint32_t>(e[0]) << 24) |
           (static_cast<std::uint32_t>(e[1]) << 16) |
           (static_cast<std::uint32_t>(e[2]) << 8) | static_cast<std::uint32_t>(e[3]);
}

inline Exponents unpackExponents(std::uint32_t k) {
    return {static_cast<int>((k >> 24) & 0xff), static_cast<int>((k >> 16) & 0xff),
            static_cast<int>((k >> 8) & 0xff), static_cast<int>(k & 0xff)};
}

}  // namespace detail

class Poly {
  public:
    Poly() = default;
    static Poly constant(Rat c) {
        Poly p;
        if (c != 0) p.terms_[0] = std::move(c);
        return p;
    }
    static Poly variable(int v, int power = 1) {
        Poly p;
        Exponents e{0, 0, 0, 0};
        e[static_cast<std::size_t>(v)] = power;
        p.terms_[detail::packExponents(e)] = 1;
        return p;
    }

    bool isZero() const { return terms_.empty(); }
    std::size_t termCount() const { return terms_.size(); }

    Poly operator+(const Poly& o) const {
        Poly out = *this;
        for (const auto& [k, c] : o.terms_) out.add(k, c);
        return out;
    }
    Poly operator-(const Poly& o) const {
        Poly out = *this;
        for (const auto& [k, c] : o.terms_) out.add(k, -c);
        return out;
    }
    Poly operator*(const Poly& o) const {
        Poly out;
        for (const auto& [ka, ca] : terms_) {
            const auto ea = detail::unpackExponents(ka);
            for (const auto& [kb, cb] : o.terms_) {
                const auto eb = detail::unpackExponents(kb);
                Exponents e;
                for (int v = 0; v < kPolyVars; ++v)
                    e[static_cast<std::size_t>(v)] =
                        ea[static_cast<std::size_t>(v)] + eb[static_cast<std::size_t>(v)];
                out.add(detail::packExponents(e), ca * cb);
            }
        }
        return out;
    }
    Poly operator*(const Rat& c) const {
        if (c == 0) return {};
        Poly out = *this;
        for (auto& [k, v] : out.terms_) v *= c;
        return out;
    }

    Poly derivative(int var) const {
        Poly out;
        for (const auto& [k, c] : terms_) {
            auto e = detail::unpackExponents(k);
            const int p = e[static_cast<std::size_t>(var)];
            if (p == 0) continue;
            e[static_cast<std::size_t>(var)] = p - 1;
            out.add(detail::packExponents(e), c * p);
        }
        return out;
    }

    int degree() const {
        int d = 0;
        for (const auto& [k, c] : terms_) {
            const auto e = detail::unpackExponents(k);
            d = std::max(d, e[0] + e[1] + e[2] + e[3]);
        }
        return d;
    }

    // Sum of absolute coefficient values.
    Rat coeffNorm() const {
        Rat n = 0;
        for (const auto& [k, c] : terms_) n += abs(c);
        return n;
    }

    template <class V>
    V evaluate(const std::array<V, kPolyVars>& point) const {
        // power tables per variable
        std::array<std::vector<V>, kPolyVars> pows;
        for (int v = 0; v < kPolyVars; ++v)
            pows[static_cast<std::size_t>(v)].push_back(valueOf<V>(Rat(1)));
        V total = valueOf<V>(Rat(0));
        for (const auto& [k, c] : terms_) {
            const auto e = detail::unpackExponents(k);
            V term = valueOf<V>(c);
            for (int v = 0; v < kPolyVars; ++v) {
                auto& table = pows[static_cast<std::size_t>(v)];
                const int p = e[static_cast<std::size_t>(v)];
                while (static_cast<int>(table.size()) <= p)
                    table.push_back(table.back() * point[static_cast<std::size_t>(v)]);
                term = term * table[static_cast<std::size_t>(p)];
            }
            total = total + term;
        }
        return total;
    }

    // Exact division; returns false (and leaves quotient empty) when *this
    // is not a polynomial multiple of the divisor.
    bool divideExact(const Poly& divisor, Poly& quotient) const {
        quotient = Poly();
        if (divisor.isZero()) return false;
        const auto lead = *divisor.terms_.rbegin();
        const auto leadExp = detail::unpackExponents(lead.first);
        Poly rem = *this;
        while (!rem.isZero()) {
            const auto top = *rem.terms_.rbegin();
            const auto topExp = detail::unpackExponents(top.first);
            Exponents q;
            for (int v = 0; v < kPolyVars; ++v) {
                q[static_cast<std::size_t>(v)] = topExp[static_cast<std::size_t>(v)] -
                                                 leadExp[static_cast<std::size_t>(v)];
                if (q[static_cast<std::size_t>(v)] < 0) return false;
            }
            const Rat coeff = top.second / lead.second;
            Poly qTerm;
            qTerm.terms_[detail::packExponents(q)] = coeff;
            quotient = quotient + qTerm;
            rem = rem - qTerm * divisor;
        }
        return true;
    }

    const std::map<std::uint32_t, Rat>& terms() const { return terms_; }

  private:
    template <class V>
    static V valueOf(const Rat& c);

    void add(std::uint32_t key, const Rat& c) {
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(key, c);
            return;
        }
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    std::map<std::uint32_t, Rat> terms_;
};

template <>
inline AlgebraicScalar Poly::valueOf<AlgebraicScalar>(const Rat& c) {
    return AlgebraicScalar(c);
}
template <>
inline Interval Poly::valueOf<Interval>(const Rat& c) {
    return ratEnclosure(c);
}

// P / base^power with exact cancellation of one base factor per derivative:
//   d(P / base^k) = (P' * base - k * P * base') / base^(k+1).
struct RationalFunctionExpr {
    Poly num;
    Poly base;  // ignored when power == 0
    int power = 0;

    RationalFunctionExpr derivative(int var) const {
        if (power == 0) return {num.derivative(var), base, 0};
        Poly n = num.derivative(var) * base - num * base.derivative(var) * Rat(power);
        return {std::move(n), base, power + 1};
    }

    // Canonical reduced form: strip base factors that divide the numerator.
    RationalFunctionExpr reduced() const {
        RationalFunctionExpr out = *this;
        Poly q;
        while (out.power > 0 && out.num.divideExact(out.base, q)) {
            out.num = q;
            --out.power;
        }
        return out;
    }

    template <class V>
    V evaluate(const std::array<V, kPolyVars>& point) const {
        V n = num.evaluate<V>(point);
        if (power == 0) return n;
        const V b = base.evaluate<V>(point);
        V bp = b;
        for (int i = 1; i < power; ++i) bp = bp * b;
        return n / bp;
    }
};

}  // namespace tbp
