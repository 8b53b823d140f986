// Acceptance gate: one test case per criterion, each delegating to the
// library-level harness that `ge-sim validate` also runs.

#include <doctest.h>

#include <sstream>

#include "gesim/acceptance.hpp"

using gesim::acceptance::run_criterion;

namespace {

void require_criterion(int index) {
    const auto r = run_criterion(index);
    for (const auto& c : r.checks) {
        INFO(c.id << ": " << c.detail);
        CHECK(c.pass);
    }
}

}  // namespace

TEST_CASE("criterion-1 eigensystem suite") { require_criterion(1); }
TEST_CASE("criterion-2 excitation regimes") { require_criterion(2); }
TEST_CASE("criterion-3 growth laws") { require_criterion(3); }
TEST_CASE("criterion-4 visibility") { require_criterion(4); }
TEST_CASE("criterion-5 negativity") { require_criterion(5); }
TEST_CASE("criterion-6 mean-field discriminator") { require_criterion(6); }
TEST_CASE("criterion-7 grid oracle") { require_criterion(7); }
TEST_CASE("criterion-8 feasibility") { require_criterion(8); }
TEST_CASE("criterion-9 optomechanics") { require_criterion(9); }
TEST_CASE("criterion-10 determinism") { require_criterion(10); }
