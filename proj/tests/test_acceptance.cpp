#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "igeo/acceptance.hpp"

// Runs every acceptance criterion at its pinned tolerance and prints one
// pass/fail line per criterion.
TEST_CASE("acceptance suite") {
    const auto results = igeo::acceptance::run_all();
    std::fputs(igeo::acceptance::to_table(results).c_str(), stdout);
    REQUIRE(results.size() == 11);
    for (const auto& r : results) {
        CAPTURE(r.id);
        CAPTURE(r.name);
        CAPTURE(r.details);
        CHECK(r.passed);
    }
}
