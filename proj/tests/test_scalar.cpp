#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dgt/scalar.hpp"

using namespace dgt;

TEST_CASE("rational arithmetic is exact") {
    FieldSpec q = FieldSpec::rationals();
    Scalar a = Scalar::parse("1/3", q);
    Scalar b = Scalar::parse("1/6", q);
    CHECK((a + b) == Scalar::parse("1/2", q));
    CHECK((a - b) == b);
    CHECK((a * b) == Scalar::parse("1/18", q));
    CHECK((a / b) == Scalar(q, 2));
    // no floating drift: summing 1/3 three hundred times is exactly 100
    Scalar acc = Scalar::zero(q);
    for (int i = 0; i < 300; ++i) acc += a;
    CHECK(acc == Scalar(q, 100));
}

TEST_CASE("prime field arithmetic wraps correctly") {
    FieldSpec f5 = FieldSpec::prime(5);
    Scalar two(f5, 2), three(f5, 3);
    CHECK((two + three) == Scalar::zero(f5));
    CHECK((two * three) == Scalar::one(f5));
    CHECK((three / two) == Scalar(f5, 4));  // 3 * inv(2) = 3 * 3 = 9 = 4
    CHECK(-two == three);
    for (long x = 1; x < 5; ++x) CHECK((Scalar(f5, x) / Scalar(f5, x)) == Scalar::one(f5));
}

TEST_CASE("division by zero throws") {
    FieldSpec q = FieldSpec::rationals();
    CHECK_THROWS_AS(Scalar::one(q) / Scalar::zero(q), DivisionByZero);
    FieldSpec f2 = FieldSpec::prime(2);
    CHECK_THROWS_AS(Scalar::one(f2) / Scalar::zero(f2), DivisionByZero);
}

TEST_CASE("mixing fields is rejected") {
    Scalar a = Scalar::one(FieldSpec::rationals());
    Scalar b = Scalar::one(FieldSpec::prime(3));
    CHECK_THROWS_AS(a + b, FieldMismatch);
    CHECK_THROWS_AS(Scalar::one(FieldSpec::prime(3)) * Scalar::one(FieldSpec::prime(5)),
                    FieldMismatch);
}

TEST_CASE("coefficient text round-trips") {
    FieldSpec q = FieldSpec::rationals();
    for (const char* text : {"0", "1", "-1", "2/3", "-7/4", "12"}) {
        Scalar s = Scalar::parse(text, q);
        CHECK(Scalar::parse(s.str(), q) == s);
    }
    FieldSpec f7 = FieldSpec::prime(7);
    CHECK(Scalar::parse("-1", f7) == Scalar(f7, 6));
    CHECK(Scalar::parse("10", f7) == Scalar(f7, 3));
    CHECK_THROWS_AS(Scalar::parse("x", q), ParseError);
    CHECK_THROWS_AS(Scalar::parse("1/0", q), std::exception);
}
