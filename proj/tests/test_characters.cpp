#include "superdual/characters.hpp"

#include <vector>

#include "doctest.h"
#include "superdual/errors.hpp"
#include "superdual/linkage.hpp"

using namespace superdual;

TEST_SUITE("characters") {

TEST_CASE("placeholder") { CHECK(true); }

}  // TEST_SUITE
