#include "doctest.h"
#include "larsim/geometry.hpp"
#include "larsim/random.hpp"

using namespace larsim;

TEST_CASE("expected zone radius is speed times elapsed time") {
    CHECK(expected_zone({7, {500, 500}, 0.0, 10.0}, 0.0).radius == 0.0);
    const ExpectedZone ez = expected_zone({7, {500, 500}, 0.0, 20.0}, 5.0);
    CHECK(ez.radius == doctest::Approx(100.0));
    CHECK(ez.center.x == 500.0);
    CHECK(ez.center.y == 500.0);
    // Stationary destination stays put no matter how stale the record is.
    CHECK(expected_zone({7, {300, 600}, 2.0, 0.0}, 1000.0).radius == 0.0);
}

TEST_CASE("expected zone rejects a query older than the record") {
    CHECK_THROWS_AS(expected_zone({7, {0, 0}, 5.0, 1.0}, 4.0), std::invalid_argument);
}

TEST_CASE("request zone spans source and expected zone") {
    SUBCASE("source southwest of the destination") {
        const RequestZone z = request_zone({0, 0}, {{500, 500}, 100.0});
        CHECK(z.x_min == 0.0);
        CHECK(z.x_max == 600.0);
        CHECK(z.y_min == 0.0);
        CHECK(z.y_max == 600.0);
    }
    SUBCASE("source east of the destination") {
        const RequestZone z = request_zone({700, 200}, {{300, 600}, 50.0});
        CHECK(z.x_min == 250.0);
        CHECK(z.x_max == 700.0);
        CHECK(z.y_min == 200.0);
        CHECK(z.y_max == 650.0);
    }
    SUBCASE("source at destination with zero radius degenerates to a point") {
        const RequestZone z = request_zone({500, 500}, {{500, 500}, 0.0});
        CHECK(z.x_min == 500.0);
        CHECK(z.x_max == 500.0);
        CHECK(z.y_min == 500.0);
        CHECK(z.y_max == 500.0);
        CHECK(contains(z, {500, 500}));
    }
}

TEST_CASE("zone membership is boundary inclusive") {
    const RequestZone z{0, 600, 0, 600};
    CHECK(contains(z, {300, 300}));
    CHECK(contains(z, {600, 600}));
    CHECK(contains(z, {0, 0}));
    CHECK_FALSE(contains(z, {601, 0}));
    CHECK_FALSE(contains(z, {0, -0.001}));
}

TEST_CASE("distance basics") {
    CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK(distance({7, 7}, {7, 7}) == 0.0);
    CHECK(distance({0, 0}, {250, 0}) == 250.0);
}

TEST_CASE("zone geometry properties over random cases") {
    Rng rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const Position source{rng.uniform(0, 1000), rng.uniform(0, 1000)};
        const LocationRecord record{1, {rng.uniform(0, 1000), rng.uniform(0, 1000)},
                                    rng.uniform(0, 100), rng.uniform(0, 30)};
        const double now = record.timestamp + rng.uniform(0, 50);
        const ExpectedZone ez = expected_zone(record, now);
        CHECK(ez.radius == doctest::Approx(record.avg_speed * (now - record.timestamp))
                               .epsilon(1e-9));
        CHECK(ez.radius >= 0.0);
        // Radius grows with the query time.
        CHECK(expected_zone(record, now + 1.0).radius >= ez.radius);

        const RequestZone zone = request_zone(source, ez);
        CHECK(contains(zone, source));
        // The whole disk fits, probed on the rim.
        for (int k = 0; k < 16; ++k) {
            const double angle = 2.0 * 3.14159265358979323846 * k / 16;
            const Position rim{ez.center.x + ez.radius * std::cos(angle),
                               ez.center.y + ez.radius * std::sin(angle)};
            CHECK(contains(zone, {std::clamp(rim.x, zone.x_min, zone.x_max),
                                  std::clamp(rim.y, zone.y_min, zone.y_max)}));
            CHECK(contains(zone, rim));
        }
        // Minimality: every side touches either the source or the disk.
        const double lo_x = std::min(source.x, ez.center.x - ez.radius);
        const double hi_x = std::max(source.x, ez.center.x + ez.radius);
        const double lo_y = std::min(source.y, ez.center.y - ez.radius);
        const double hi_y = std::max(source.y, ez.center.y + ez.radius);
        CHECK(zone.x_min == lo_x);
        CHECK(zone.x_max == hi_x);
        CHECK(zone.y_min == lo_y);
        CHECK(zone.y_max == hi_y);
    }
}
