#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "swipt/constellation.hpp"

using namespace swipt;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("constellation") {

TEST_CASE("arc placement pins the outermost phases at +/- delta") {
    const auto c = build_constellation(4, kPi / 3.0);
    REQUIRE(c.phases.size() == 4);
    CHECK(c.phases[0] == doctest::Approx(kPi / 3.0).epsilon(1e-15));
    CHECK(c.phases[1] == doctest::Approx(kPi / 9.0).epsilon(1e-14));
    CHECK(c.phases[2] == doctest::Approx(-kPi / 9.0).epsilon(1e-14));
    CHECK(c.phases[3] == doctest::Approx(-kPi / 3.0).epsilon(1e-15));
    CHECK_FALSE(is_symmetric(c));
    CHECK(phase_gap(c) == doctest::Approx(2.0 * kPi / 9.0).epsilon(1e-15));

    const auto pair = build_constellation(2, kPi / 4.0);
    CHECK(pair.phases[0] == doctest::Approx(kPi / 4.0));
    CHECK(pair.phases[1] == doctest::Approx(-kPi / 4.0));
}

TEST_CASE("full-circle placement reproduces evenly spread phases") {
    const auto c = build_constellation(4, kPi);
    CHECK(is_symmetric(c));
    CHECK(phase_gap(c) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
    CHECK(c.phases[0] == doctest::Approx(3.0 * kPi / 4.0).epsilon(1e-15));
    CHECK(c.phases[1] == doctest::Approx(kPi / 4.0).epsilon(1e-15));
    CHECK(c.phases[2] == doctest::Approx(-kPi / 4.0).epsilon(1e-15));
    CHECK(c.phases[3] == doctest::Approx(-3.0 * kPi / 4.0).epsilon(1e-15));
    // Gap between the extreme phases through the wrap equals the common gap.
    const double wrap_gap = (c.phases[3] + 2.0 * kPi) - c.phases[0];
    CHECK(wrap_gap == doctest::Approx(phase_gap(c)).epsilon(1e-14));
}

TEST_CASE("phases are descending, equally spaced, and mirror-symmetric") {
    for (int M : {2, 4, 8, 16}) {
        for (double delta : {0.3, kPi / 2.0, kPi - 1e-6, kPi}) {
            const auto c = build_constellation(M, delta);
            const double gap = phase_gap(c);
            for (int m = 0; m + 1 < M; ++m) {
                CHECK(c.phases[m] - c.phases[m + 1] == doctest::Approx(gap).epsilon(1e-12));
            }
            for (int m = 0; m < M; ++m) {
                CHECK(c.phases[m] == doctest::Approx(-c.phases[M - 1 - m]).epsilon(1e-12));
            }
            if (delta < kPi - 1e-9) {
                CHECK(c.phases.front() == doctest::Approx(delta));
                CHECK(c.phases.back() == doctest::Approx(-delta));
            }
        }
    }
}

TEST_CASE("near-pi apertures collapse onto the symmetric layout") {
    const auto c = build_constellation(8, kPi * (1.0 - 1e-14));
    CHECK(is_symmetric(c));
    CHECK(c.phases[0] == doctest::Approx(7.0 * kPi / 8.0).epsilon(1e-13));
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(build_constellation(3, kPi / 3.0), std::invalid_argument);
    CHECK_THROWS_AS(build_constellation(0, kPi / 3.0), std::invalid_argument);
    CHECK_THROWS_AS(build_constellation(-4, kPi / 3.0), std::invalid_argument);
    CHECK_THROWS_AS(build_constellation(4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_constellation(4, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_constellation(4, kPi + 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(build_constellation(4, kPi / 2.0, -1.0), std::invalid_argument);
    CHECK_NOTHROW(build_constellation(4, kPi));
    CHECK_NOTHROW(build_constellation(2, 1e-9));
}

TEST_CASE("pmf construction and validation") {
    const auto u = uniform_pmf(4);
    REQUIRE(u.size() == 4);
    CHECK(u[0] == doctest::Approx(0.25));

    const auto v = vertex_pmf(4, 2);
    CHECK(v[2] == 1.0);
    CHECK(v[0] == 0.0);

    CHECK_NOTHROW(make_pmf({0.4, 0.3, 0.2, 0.1}));
    CHECK_THROWS_AS(make_pmf({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(make_pmf({-0.1, 0.6, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(make_pmf({}), std::invalid_argument);
    CHECK_THROWS_AS(vertex_pmf(4, 7), std::invalid_argument);
    // Rounding-level slack around the unit sum is accepted.
    CHECK_NOTHROW(make_pmf({0.25 + 4e-13, 0.25, 0.25, 0.25}));
}

TEST_CASE("flipped reverses the index order") {
    const auto p = make_pmf({0.4, 0.3, 0.2, 0.1});
    const auto q = flipped(p);
    CHECK(q[0] == 0.1);
    CHECK(q[1] == 0.2);
    CHECK(q[2] == 0.3);
    CHECK(q[3] == 0.4);

    const auto r = flipped(q);
    for (int m = 0; m < 4; ++m) CHECK(r[m] == p[m]);

    const auto u = uniform_pmf(6);
    const auto fu = flipped(u);
    for (int m = 0; m < 6; ++m) CHECK(fu[m] == u[m]);

    const auto e0 = vertex_pmf(4, 0);
    CHECK(flipped(e0)[3] == 1.0);
}

TEST_CASE("json round trip preserves the design") {
    const auto c = build_constellation(4, kPi / 3.0, 2.5);
    const auto p = make_pmf({0.4, 0.3, 0.2, 0.1});
    const std::string text = to_json(c, p);

    Constellation c2;
    SymbolPmf p2;
    from_json(text, c2, p2);
    CHECK(c2.M == 4);
    CHECK(c2.delta == c.delta);
    CHECK(c2.amplitude == c.amplitude);
    for (int m = 0; m < 4; ++m) {
        CHECK(c2.phases[m] == c.phases[m]);
        CHECK(p2[m] == p[m]);
    }
}

TEST_CASE("json without probabilities defaults to the uniform pmf") {
    const auto c = build_constellation(6, 1.0);
    std::string text = to_json(c, uniform_pmf(6));
    // Strip the "probs" field by re-serializing without it.
    const auto pos = text.find("\"probs\"");
    REQUIRE(pos != std::string::npos);
    // Rebuild from a minimal document instead of string surgery.
    Constellation c2;
    SymbolPmf p2;
    from_json(R"({"M": 6, "delta": 1.0, "amplitude": 1.0})", c2, p2);
    CHECK(c2.M == 6);
    CHECK(p2.size() == 6);
    CHECK(p2[3] == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("json validation failures surface as invalid_argument") {
    Constellation c;
    SymbolPmf p;
    CHECK_THROWS_AS(from_json("not json at all", c, p), std::invalid_argument);
    CHECK_THROWS_AS(from_json(R"({"delta": 1.0})", c, p), std::invalid_argument);
    CHECK_THROWS_AS(from_json(R"({"M": 3, "delta": 1.0})", c, p), std::invalid_argument);
    CHECK_THROWS_AS(from_json(R"({"M": 4, "delta": 9.0})", c, p), std::invalid_argument);
    CHECK_THROWS_AS(from_json(R"({"M": 4, "delta": 1.0, "probs": [0.5, 0.5]})", c, p),
                    std::invalid_argument);
}

}  // TEST_SUITE
