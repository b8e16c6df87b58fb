#include <catch2/catch_amalgamated.hpp>

TEST_CASE("smoke") { REQUIRE(1 + 1 == 2); }
