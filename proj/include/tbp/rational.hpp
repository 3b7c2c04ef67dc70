// Exact arithmetic: big rationals, rational sqrt enclosures, and the field
// Q[sqrt(3)] in which the reference configuration lives.

#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "tbp/interval.hpp"

namespace tbp {

using Rat = mpq_class;

// Minimal binary64 enclosure of an exact rational.
inline Interval ratEnclosure(const Rat& q) {
    const double d = q.get_d();  // truncated toward zero, within one ulp
    const int cmpd = cmp(Rat(d), q);
    if (cmpd == 0) return Interval::point(d);
    if (cmpd < 0) return Interval(d, increment(d));
    return Interval(decrement(d), d);
}

// Rational enclosure of sqrt(x) with denominator 2^precBits.
inline std::pair<Rat, Rat> sqrtEnclosure(const Rat& x, unsigned precBits) {
    if (x < 0) throw DomainFault("sqrt of negative rational");
    const mpz_class scale = mpz_class(1) << (2 * precBits);
    mpz_class n = (x.get_num() * scale) / x.get_den();  // floor(x * 4^prec)
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());  // floor(sqrt(n))
    const mpz_class den = mpz_class(1) << precBits;
    Rat lo(root, den), hi(root + 1, den);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

// a + b*sqrt(3) with exact rational a, b. Ring operations and comparisons
// are exact; sign analysis replaces any numeric sqrt.
class AlgebraicScalar {
  public:
    AlgebraicScalar() : a_(0), b_(0) {}
    AlgebraicScalar(Rat a) : a_(std::move(a)), b_(0) {}
    AlgebraicScalar(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {}
    AlgebraicScalar(long n) : a_(n), b_(0) {}

    static AlgebraicScalar sqrt3(const Rat& coeff = Rat(1)) {
        return AlgebraicScalar(Rat(0), coeff);
    }

    const Rat& rationalPart() const { return a_; }
    const Rat& radicalPart() const { return b_; }
    bool isRational() const { return b_ == 0; }

    AlgebraicScalar operator+(const AlgebraicScalar& o) const {
        return {a_ + o.a_, b_ + o.b_};
    }
    AlgebraicScalar operator-(const AlgebraicScalar& o) const {
        return {a_ - o.a_, b_ - o.b_};
    }
    AlgebraicScalar operator-() const { return {-a_, -b_}; }
    AlgebraicScalar operator*(const AlgebraicScalar& o) const {
        return {a_ * o.a_ + 3 * b_ * o.b_, a_ * o.b_ + b_ * o.a_};
    }

    AlgebraicScalar inverse() const {
        const Rat norm = a_ * a_ - 3 * b_ * b_;
        if (norm == 0) throw DomainFault("inverse of zero in Q[sqrt3]");
        return {a_ / norm, -b_ / norm};
    }
    AlgebraicScalar operator/(const AlgebraicScalar& o) const { return *this * o.inverse(); }

    // Exact sign of a + b*sqrt(3).
    int sign() const {
        const int sa = sgn(a_), sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        const int cmpSquares = cmp(a_ * a_, 3 * b_ * b_);
        if (cmpSquares == 0) return 0;
        return sa > 0 ? cmpSquares : -cmpSquares;
    }

    bool operator==(const AlgebraicScalar& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator<(const AlgebraicScalar& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const AlgebraicScalar& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const AlgebraicScalar& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const AlgebraicScalar& o) const { return (*this - o).sign() >= 0; }

    AlgebraicScalar abs() const { return sign() < 0 ? -*this : *this; }

    Interval enclosure() const {
        static const Interval sqrt3Enc = sqrt(Interval::fromInt(3));
        return ratEnclosure(a_) + ratEnclosure(b_) * sqrt3Enc;
    }

    // Smallest integer >= value.
    mpz_class ceil() const {
        const Interval enc = enclosure();
        mpz_class n(std::to_string(static_cast<long long>(std::floor(enc.lo()))));
        while (*this > AlgebraicScalar(Rat(n))) ++n;        // until n >= value
        while (*this <= AlgebraicScalar(Rat(n - 1))) --n;   // tighten
        return n;
    }

    std::string str() const {
        if (isRational()) return a_.get_str();
        return a_.get_str() + (sgn(b_) < 0 ? "-" : "+") + Rat(::abs(b_)).get_str() + "*sqrt3";
    }

  private:
    Rat a_, b_;
};

}  // namespace tbp
