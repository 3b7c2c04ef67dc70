#include <doctest.h>

#include <bit>

#include "oracles.hpp"
#include "tbp/interval.hpp"

using namespace tbp;
using namespace tbp::testing;

TEST_CASE("increment and decrement move one representable step") {
    CHECK(increment(1.0) == 1.0 + 0x1p-52);
    CHECK(decrement(1.0) == 1.0 - 0x1p-53);

    // crossing zero lands on the smallest-magnitude subnormal of the other sign
    CHECK(decrement(0.0) == -std::bit_cast<double>(std::uint64_t{1}));
    CHECK(increment(0.0) == std::bit_cast<double>(std::uint64_t{1}));
}

TEST_CASE("increment of a negative double follows the bit-pattern ordering") {
    // independent oracle: magnitude bits of -317 minus one
    const auto bits = std::bit_cast<std::uint64_t>(-317.0);
    const double expected = std::bit_cast<double>(bits - 1);
    CHECK(increment(-317.0) == expected);
    CHECK(increment(-317.0) > -317.0);
}

TEST_CASE("increment/decrement are mutually inverse") {
    Rng rng(7);
    std::uniform_real_distribution<double> d(-1024.0, 1024.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = d(rng);
        CHECK(decrement(increment(x)) == x);
        CHECK(increment(decrement(x)) == x);
    }
}

TEST_CASE("range audit rejects escapes from R0") {
    CHECK_THROWS_AS(increment(kRangeLimit), Fault);
    const Interval big(1.0e9, 1.0e9);
    CHECK_THROWS_AS(big * big, Fault);
}

TEST_CASE("roundOut strictly widens") {
    const Interval i(1.0, 2.0);
    const Interval o = roundOut(i);
    CHECK(o.lo() < i.lo());
    CHECK(o.hi() > i.hi());
    const Interval z = roundOut(Interval::point(0.0));
    CHECK(z.lo() < 0.0);
    CHECK(z.hi() > 0.0);
    CHECK(ulpDistance(z.lo(), z.hi()) == 2);
}

TEST_CASE("arithmetic examples") {
    const Interval r = Interval::fromInt(1) / Interval(2.0, 4.0);
    CHECK(containsRat(r, Rat(1, 4)));
    CHECK(containsRat(r, Rat(1, 2)));
    CHECK(r.lo() < 0.25);
    CHECK(r.hi() > 0.5);

    const Interval m = Interval(1.0, 2.0) * Interval(3.0, 4.0);
    CHECK(m.lo() < 3.0);
    CHECK(m.hi() > 8.0);
    CHECK(ulpDistance(m.lo(), 3.0) == 1);
    CHECK(ulpDistance(8.0, m.hi()) == 1);

    const Interval s = Interval(1.0, 2.0) + Interval(3.0, 4.0);
    CHECK(s.contains(4.0));
    CHECK(s.contains(6.0));
}

TEST_CASE("division guard") {
    CHECK_THROWS_AS(Interval::fromInt(1) / Interval(-1.0, 1.0), Fault);
    CHECK_THROWS_AS(Interval::fromInt(1) / Interval(0x1p-12, 1.0), Fault);
    CHECK_NOTHROW(Interval::fromInt(1) / Interval(0x1p-11, 1.0));
    CHECK_NOTHROW(Interval::fromInt(1) / Interval(-1.0, -0x1p-11));
}

TEST_CASE("sqrt examples") {
    const Interval r = sqrt(Interval(4.0, 9.0));
    CHECK(r.contains(2.0));
    CHECK(r.contains(3.0));

    const Interval s2 = sqrt(Interval::fromInt(2));
    CHECK(containsSqrtOf(s2, Rat(2)));
    CHECK(ulpDistance(s2.lo(), s2.hi()) <= 2);

    CHECK_THROWS_AS(sqrt(Interval(-1.0, 1.0)), Fault);
}

TEST_CASE("safeSqrt follows the sigma rule") {
    const Interval tiny = safeSqrt(Interval(-0x1p-30, 0x1p-12));
    CHECK(tiny.lo() == 0x1p-5);
    CHECK(tiny.hi() == 0x1p-5);

    const Interval one = safeSqrt(Interval::fromInt(1));
    CHECK(one.contains(1.0));

    // hi at/above the cut takes the sqrt path
    const Interval above = safeSqrt(Interval(0x1p-9, 0x1p-8));
    CHECK(containsSqrtOf(above, Rat(1, 512)));

    CHECK_THROWS_AS(safeSqrt(Interval(-1.0, 1.0)), Fault);
}

TEST_CASE("sqr is tight around zero") {
    const Interval s = sqr(Interval(-1.0, 2.0));
    CHECK(s.lo() == 0.0);
    CHECK(s.hi() > 4.0);
    const Interval p = sqr(Interval(3.0, 3.0));
    CHECK(containsRat(p, Rat(9)));
}

TEST_CASE("containment against the exact rational oracle") {
    Rng rng(2024);
    std::uniform_real_distribution<double> mag(-64.0, 64.0);
    int checked = 0;
    for (int iter = 0; iter < 4000; ++iter) {
        double a = mag(rng), b = mag(rng), c = mag(rng), d = mag(rng);
        if (a > b) std::swap(a, b);
        if (c > d) std::swap(c, d);
        const Interval I(a, b), J(c, d);
        const Rat x = randomRatIn(I, rng), y = randomRatIn(J, rng);

        const int op = static_cast<int>(rng() % 5);
        switch (op) {
            case 0: CHECK(containsRat(I + J, x + y)); break;
            case 1: CHECK(containsRat(I - J, x - y)); break;
            case 2: CHECK(containsRat(I * J, x * y)); break;
            case 3:
                if (c >= 0x1p-11 || d <= -0x1p-11) {
                    CHECK(containsRat(I / J, x / y));
                }
                break;
            case 4:
                if (a >= 0.0) {
                    CHECK(containsSqrtOf(sqrt(I), x));
                }
                break;
        }
        ++checked;
    }
    CHECK(checked == 4000);
}

TEST_CASE("width stays within two steps of the exact hull") {
    Rng rng(99);
    std::uniform_real_distribution<double> mag(0.5, 64.0);
    for (int iter = 0; iter < 2000; ++iter) {
        double a = mag(rng), b = mag(rng);
        if (a > b) std::swap(a, b);
        const Interval I(a, b);
        double c = mag(rng), d = mag(rng);
        if (c > d) std::swap(c, d);
        const Interval J(c, d);

        const Interval sum = I + J;
        // exact endpoints are a+c and b+d; each computed endpoint may round
        // one step beyond the nearest double
        CHECK(ulpDistance(sum.lo(), a + c) <= 2);
        CHECK(ulpDistance(b + d, sum.hi()) <= 2);

        const Interval prod = I * J;
        CHECK(ulpDistance(prod.lo(), a * c) <= 2);
        CHECK(ulpDistance(b * d, prod.hi()) <= 2);
    }
}
