#include <doctest.h>

#include "brkit/field.hpp"

using namespace brkit;

TEST_CASE("field construction") {
    const Field& f4 = Field::make(4);
    CHECK(f4.q() == 4);
    CHECK(f4.characteristic() == 2);
    CHECK(f4.degree() == 2);

    const Field& f3 = Field::make(3);
    CHECK(f3.q() == 3);
    CHECK(f3.characteristic() == 3);
    CHECK(f3.degree() == 1);

    CHECK_THROWS_AS(Field::make(6), UnsupportedCardinality);
    CHECK_THROWS_AS(Field::make(9), UnsupportedCardinality);
}

TEST_CASE("arithmetic examples") {
    const Field& f3 = Field::make(3);
    CHECK(f3.add(2, 2) == 1);

    // w * (w+1) = w^2 + w = 1
    const Field& f4 = Field::make(4);
    CHECK(f4.mul(2, 3) == 1);
    CHECK(f4.mul(2, 2) == 3); // w^2 = w+1

    const Field& f5 = Field::make(5);
    CHECK(f5.inv(2) == 3);

    CHECK_THROWS_AS(f5.inv(0), DivisionByZero);
}

TEST_CASE("field axioms hold exhaustively") {
    for (int q : {2, 3, 4, 5, 7}) {
        const Field& F = Field::make(q);
        for (int a = 0; a < q; ++a) {
            CHECK(F.add(static_cast<elem>(a), F.neg(static_cast<elem>(a))) ==
                  0);
            if (a != 0)
                CHECK(F.mul(static_cast<elem>(a),
                            F.inv(static_cast<elem>(a))) == 1);
            for (int b = 0; b < q; ++b) {
                elem ea = static_cast<elem>(a), eb = static_cast<elem>(b);
                CHECK(F.add(ea, eb) == F.add(eb, ea));
                CHECK(F.mul(ea, eb) == F.mul(eb, ea));
                for (int c = 0; c < q; ++c) {
                    elem ec = static_cast<elem>(c);
                    CHECK(F.add(F.add(ea, eb), ec) == F.add(ea, F.add(eb, ec)));
                    CHECK(F.mul(F.mul(ea, eb), ec) == F.mul(ea, F.mul(eb, ec)));
                    CHECK(F.mul(ea, F.add(eb, ec)) ==
                          F.add(F.mul(ea, eb), F.mul(ea, ec)));
                }
            }
        }
    }
}

TEST_CASE("square roots in characteristic 2 are a bijection") {
    for (int q : {2, 4}) {
        const Field& F = Field::make(q);
        for (int x = 0; x < q; ++x) {
            elem r = F.sqrt(static_cast<elem>(x));
            CHECK(F.mul(r, r) == static_cast<elem>(x));
            // uniqueness
            int count = 0;
            for (int y = 0; y < q; ++y)
                if (F.mul(static_cast<elem>(y), static_cast<elem>(y)) ==
                    static_cast<elem>(x))
                    ++count;
            CHECK(count == 1);
        }
    }
    CHECK_THROWS_AS(Field::make(3).sqrt(1), InvalidParams);
}
