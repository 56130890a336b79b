#include <catch2/catch_amalgamated.hpp>
#include "qheis/qheis.hpp"

TEST_CASE("placeholder test_fourier") { CHECK(true); }
