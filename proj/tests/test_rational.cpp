#include <doctest.h>

#include "ibody/rational.hpp"

using namespace ibody;

TEST_CASE("parse_rat accepts integers and p/q strings") {
    CHECK(parse_rat("7") == Rat(7));
    CHECK(parse_rat("-7") == Rat(-7));
    CHECK(parse_rat("3/4") == Rat(3, 4));
    CHECK(parse_rat("-6/8") == Rat(-3, 4));
    CHECK(parse_rat("0") == Rat(0));
}

TEST_CASE("parse_rat rejects floats and malformed input") {
    CHECK_THROWS_AS(parse_rat("1.5"), ValidationError);
    CHECK_THROWS_AS(parse_rat("1e3"), ValidationError);
    CHECK_THROWS_AS(parse_rat(""), ValidationError);
    CHECK_THROWS_AS(parse_rat("2/0"), ValidationError);
    CHECK_THROWS_AS(parse_rat("a/b"), ValidationError);
    CHECK_THROWS_AS(parse_rat("1/2/3"), ValidationError);
}

TEST_CASE("rat_to_string round-trips through parse_rat") {
    for (const char* s : {"0", "7", "-7", "3/4", "-12345/67"}) {
        CHECK(rat_to_string(parse_rat(s)) == s);
    }
}

TEST_CASE("rat_to_decimal renders 12 significant digits") {
    CHECK(rat_to_decimal(Rat(0)) == "0");
    CHECK(rat_to_decimal(Rat(4)) == "4");
    CHECK(rat_to_decimal(Rat(-4)) == "-4");
    CHECK(rat_to_decimal(Rat(4, 3)) == "1.33333333333");
    CHECK(rat_to_decimal(Rat(1, 300)) == "0.00333333333333");
    CHECK(rat_to_decimal(Rat(-22, 7)) == "-3.14285714286");
    CHECK(rat_to_decimal(Rat(1, 2)) == "0.5");
    CHECK(rat_to_decimal(Rat(1000000)) == "1000000");
}
