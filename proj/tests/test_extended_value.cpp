#include <catch2/catch_amalgamated.hpp>

#include "pdiv/extended_value.hpp"

using pdiv::ExtendedValue;
using pdiv::Order;

TEST_CASE("construction validates the domain") {
    REQUIRE(ExtendedValue(0.0).raw() == 0.0);
    REQUIRE(ExtendedValue(3.5).raw() == 3.5);
    REQUIRE(ExtendedValue::infinity().is_infinite());
    REQUIRE_THROWS_AS(ExtendedValue(-1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(ExtendedValue(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
}

TEST_CASE("infinity absorbs addition, max and powers") {
    const ExtendedValue inf = ExtendedValue::infinity();
    REQUIRE((inf + 7.0).is_infinite());
    REQUIRE((ExtendedValue(7.0) + inf).is_infinite());
    REQUIRE((inf + inf).is_infinite());
    REQUIRE(pdiv::max(inf, 1e300) == inf);
    REQUIRE(pdiv::pow_p(inf, 1.0).is_infinite());
    REQUIRE(pdiv::pow_p(inf, 3.5).is_infinite());
    REQUIRE(pdiv::root_p(inf, 2.0).is_infinite());
}

TEST_CASE("finite arithmetic agrees with the reals") {
    REQUIRE((ExtendedValue(1.25) + 2.5).raw() == 3.75);
    REQUIRE(pdiv::pow_p(3.0, 2.0).raw() == 9.0);
    REQUIRE(pdiv::pow_p(3.0, 1.0).raw() == 3.0);
    REQUIRE(pdiv::root_p(9.0, 2.0).raw() == 3.0);
    REQUIRE(pdiv::root_p(8.0, 3.0).raw() == Catch::Approx(2.0).margin(1e-15));
    REQUIRE(pdiv::max(ExtendedValue(2.0), 5.0).raw() == 5.0);
    REQUIRE_THROWS_AS(pdiv::pow_p(2.0, 0.5), std::invalid_argument);
    REQUIRE_THROWS_AS(pdiv::root_p(2.0, 0.5), std::invalid_argument);
}

TEST_CASE("ordering is total with infinity largest") {
    REQUIRE(ExtendedValue(1.0) < ExtendedValue(2.0));
    REQUIRE(ExtendedValue(2.0) < ExtendedValue::infinity());
    REQUIRE(ExtendedValue::infinity() == ExtendedValue::infinity());
    REQUIRE(ExtendedValue(2.0) == ExtendedValue(2.0));
}

TEST_CASE("rendering uses the shortest round-trip form") {
    REQUIRE(pdiv::to_string(ExtendedValue(0.0)) == "0");
    REQUIRE(pdiv::to_string(ExtendedValue(std::sqrt(0.5))) == "0.7071067811865476");
    REQUIRE(pdiv::to_string(ExtendedValue::infinity()) == "inf");
}

TEST_CASE("order validates p >= 1") {
    REQUIRE(Order(1.0).value() == 1.0);
    REQUIRE(Order(2.5).value() == 2.5);
    REQUIRE(Order::infinity().is_infinite());
    REQUIRE_FALSE(Order(2.0).is_infinite());
    REQUIRE_THROWS_AS(Order(0.5), std::invalid_argument);
}
