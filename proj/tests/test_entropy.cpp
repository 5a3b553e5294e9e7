#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "elg/entropy.hpp"
#include "elg/error.hpp"
#include "elg/quantum_stats.hpp"
#include "oracles.hpp"

using namespace elg;

namespace {

const double pi = std::numbers::pi;

JointProbTable identity_pair(const SpinValue& spin) { return rotor_pair_table(spin, RotationAngle(0.0)); }

std::vector<JointProbTable> rotor_chain(const SpinValue& spin, int n, double theta) {
    std::vector<JointProbTable> pairs(static_cast<std::size_t>(n - 1),
                                      rotor_pair_table(spin, RotationAngle(theta / (n - 1))));
    pairs.push_back(rotor_pair_table(spin, RotationAngle(theta)));
    return pairs;
}

// Independent of pair_entropy_theta: builds explicit tables and conditions.
double deficit_via_tables(const SpinValue& spin, int n, double theta) {
    const double step = conditional_entropy(rotor_pair_table(spin, RotationAngle(theta / (n - 1)))).bits;
    const double total = conditional_entropy(rotor_pair_table(spin, RotationAngle(theta))).bits;
    return ((n - 1) * step - total) / std::log2(spin.dim());
}

} // namespace

TEST_CASE("shannon entropy examples") {
    const SpinValue half(1);
    CHECK(shannon_entropy(JointProbTable::uniform(half, 2)).bits == doctest::Approx(2.0));
    CHECK(shannon_entropy(JointProbTable(half, 2, {1, 0, 0, 0})).bits == 0.0);
    CHECK(std::abs(shannon_entropy(rotor_pair_table(half, RotationAngle(pi / 2))).bits - 2.0) < 1e-14);
    CHECK(EntropyValue{2.0}.normalized(SpinValue(3)) == doctest::Approx(1.0));
}

TEST_CASE("zeros contribute nothing") {
    std::mt19937_64 rng(5);
    const SpinValue one(2);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = oracle::random_distribution(rng, 9, 0.4);
        double h = 0.0;
        for (double x : p) {
            if (x > 0) h -= x * std::log2(x);
        }
        const double lib = shannon_entropy(JointProbTable(one, 2, p)).bits;
        CHECK(std::isfinite(lib));
        CHECK(std::abs(lib - h) < 1e-13);
    }
}

TEST_CASE("conditional entropy examples") {
    const SpinValue half(1);
    CHECK(conditional_entropy(identity_pair(half)).bits == 0.0);
    CHECK(conditional_entropy(JointProbTable::uniform(half, 2)).bits == doctest::Approx(1.0));
    const double expected = oracle::h2(0.75);
    CHECK(expected == doctest::Approx(0.8112781245).epsilon(1e-9));
    CHECK(std::abs(conditional_entropy(rotor_pair_table(half, RotationAngle(pi / 3))).bits - expected) < 1e-12);
    CHECK_THROWS_AS(conditional_entropy(JointProbTable::uniform(half, 3)), Error);
}

TEST_CASE("pair entropy as a function of angle") {
    const SpinValue half(1);
    CHECK(pair_entropy_theta(half, RotationAngle(0.0)).bits == 0.0);
    CHECK(std::abs(pair_entropy_theta(half, RotationAngle(pi / 2)).bits - 1.0) < 1e-14);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    for (int two_s = 1; two_s <= 6; ++two_s) {
        const SpinValue spin(two_s);
        for (int trial = 0; trial < 20; ++trial) {
            const double theta = angle(rng);
            const auto pair = rotor_pair_table(spin, RotationAngle(theta));
            const double h = pair_entropy_theta(spin, RotationAngle(theta)).bits;
            CHECK(std::abs(h - conditional_entropy(pair).bits) < 1e-12);
            // Uniform marginals make the conditioning direction irrelevant.
            CHECK(std::abs(h - conditional_entropy(pair.transposed()).bits) < 1e-12);
            CHECK(std::abs(h - pair_entropy_theta(spin, RotationAngle(2 * pi - theta)).bits) < 1e-12);
            if (two_s == 1) {
                CHECK(std::abs(h - oracle::spin_half_pair_entropy(theta)) < 1e-12);
            }
        }
    }
}

TEST_CASE("removing a condition never decreases the information") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    for (int two_s = 1; two_s <= 6; ++two_s) {
        const SpinValue spin(two_s);
        for (int trial = 0; trial < 30; ++trial) {
            const auto pair = rotor_pair_table(spin, RotationAngle(angle(rng)));
            const double conditional = conditional_entropy(pair).bits;
            const double second = shannon_entropy(pair.marginal({1})).bits;
            const double joint = shannon_entropy(pair).bits;
            CHECK(conditional <= second + 1e-12);
            CHECK(second <= joint + 1e-12);
            CHECK(second <= std::log2(spin.dim()) + 1e-12);
        }
    }
}

TEST_CASE("information deficit examples") {
    const SpinValue half(1);
    CHECK(info_deficit(half, 3, RotationAngle(0.0)) == 0.0);
    CHECK(info_deficit(SpinValue(4), 5, RotationAngle(0.0)) == 0.0);

    const double at_pi = 2 * oracle::spin_half_pair_entropy(pi / 2) - oracle::spin_half_pair_entropy(pi);
    CHECK(at_pi == doctest::Approx(2.0));
    CHECK(std::abs(info_deficit(half, 3, RotationAngle(pi)) - 2.0) < 1e-12);

    const double oracle_value = 2 * oracle::h2(std::pow(std::cos(pi / 12), 2)) - oracle::h2(std::pow(std::cos(pi / 6), 2));
    CHECK(oracle_value == doctest::Approx(-0.102).epsilon(0.01));
    CHECK(std::abs(info_deficit(half, 3, RotationAngle(pi / 3)) - oracle_value) < 1e-12);

    CHECK_THROWS_AS(info_deficit(half, 1, RotationAngle(1.0)), Error);
}

TEST_CASE("n = 2 deficit vanishes identically") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int two_s = 1; two_s <= 8; ++two_s) {
        for (int trial = 0; trial < 10; ++trial) {
            CHECK(info_deficit(SpinValue(two_s), 2, RotationAngle(angle(rng))) == 0.0);
        }
    }
}

TEST_CASE("deficit agrees with explicit-table recomputation and chain slack") {
    for (int two_s = 1; two_s <= 4; ++two_s) {
        const SpinValue spin(two_s);
        for (int n = 3; n <= 6; ++n) {
            for (int k = 0; k <= 40; ++k) {
                const double theta = 2 * pi * k / 40;
                const double d = info_deficit(spin, n, RotationAngle(theta));
                CHECK(std::abs(d - deficit_via_tables(spin, n, theta)) < 1e-10);
                const double slack = chain_inequality_slack(rotor_chain(spin, n, theta));
                CHECK(std::abs(slack - std::log2(spin.dim()) * d) < 1e-10);
            }
        }
    }
}

TEST_CASE("chain inequality slack examples and errors") {
    const SpinValue half(1);
    CHECK(chain_inequality_slack(std::vector<JointProbTable>(3, identity_pair(half))) == 0.0);
    CHECK(std::abs(chain_inequality_slack(rotor_chain(half, 3, pi / 3)) - info_deficit(half, 3, RotationAngle(pi / 3))) <
          1e-12);
    CHECK(chain_inequality_slack(std::vector<JointProbTable>(3, JointProbTable::uniform(half, 2))) ==
          doctest::Approx(1.0));

    CHECK_THROWS_AS(chain_inequality_slack(std::vector<JointProbTable>{identity_pair(half)}), Error);
    CHECK_THROWS_AS(chain_inequality_slack(std::vector<JointProbTable>{identity_pair(half), identity_pair(SpinValue(2))}),
                    Error);
}

TEST_CASE("chain inequality holds for genuine marginals") {
    std::mt19937_64 rng(2718);
    int trials = 0;
    for (int two_s : {1, 2}) {
        const SpinValue spin(two_s);
        for (int n = 3; n <= (two_s == 1 ? 6 : 4); ++n) {
            const auto cells = static_cast<std::size_t>(std::pow(spin.dim(), n));
            for (int trial = 0; trial < 100; ++trial, ++trials) {
                const JointProbTable joint(spin, n, oracle::random_distribution(rng, cells, trial % 3 == 0 ? 0.5 : 0.0));
                std::vector<JointProbTable> pairs;
                for (int k = 0; k + 1 < n; ++k) {
                    pairs.push_back(joint.marginal({k, k + 1}));
                }
                pairs.push_back(joint.marginal({0, n - 1}));
                CHECK(chain_inequality_slack(pairs) >= -1e-10);
            }
        }
    }
    CHECK(trials == 600);
}

TEST_CASE("BC four-term slack") {
    const SpinValue half(1);
    const auto id = identity_pair(half);
    CHECK(bc_four_term(id, id, id, id) == 0.0);

    for (double theta : {0.3, 1.0, pi / 2, 2.0, pi, 4.5}) {
        const auto step = rotor_pair_table(half, RotationAngle(theta / 3));
        const auto total = rotor_pair_table(half, RotationAngle(theta));
        CHECK(std::abs(bc_four_term(step, step, step, total) - info_deficit(half, 4, RotationAngle(theta))) < 1e-12);
    }

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> angle(0.0, pi);
    for (int two_s = 1; two_s <= 4; ++two_s) {
        const SpinValue spin(two_s);
        for (int trial = 0; trial < 10; ++trial) {
            const double a = angle(rng), b = angle(rng), c = angle(rng);
            const std::vector<JointProbTable> temporal{rotor_pair_table(spin, RotationAngle(a)),
                                                       rotor_pair_table(spin, RotationAngle(b)),
                                                       rotor_pair_table(spin, RotationAngle(c)),
                                                       rotor_pair_table(spin, RotationAngle(a + b + c))};
            const double bc = bc_four_term(singlet_pair_table(spin, RotationAngle(a)),
                                           singlet_pair_table(spin, RotationAngle(b)),
                                           singlet_pair_table(spin, RotationAngle(c)),
                                           singlet_pair_table(spin, RotationAngle(a + b + c)));
            CHECK(std::abs(chain_inequality_slack(temporal) - bc) < 1e-12);
        }
    }
    CHECK_THROWS_AS(bc_four_term(id, id, id, identity_pair(SpinValue(2))), Error);
}

TEST_CASE("many-measurement limit") {
    const SpinValue half(1);
    CHECK(zeno_limit_gap(half, RotationAngle(pi / 2), 100) < zeno_limit_gap(half, RotationAngle(pi / 2), 10));
    for (int n : {2, 3, 10, 1000}) {
        CHECK(zeno_limit_gap(SpinValue(3), RotationAngle(0.0), n) == 0.0);
    }
    CHECK(zeno_limit_gap(SpinValue(2), RotationAngle(1.0), 10000) < 0.01);
    // The gap is exactly (n-1) H[theta/(n-1)] / log2(2s+1).
    const double direct = 99 * oracle::spin_half_pair_entropy(pi / 2 / 99);
    CHECK(std::abs(zeno_limit_gap(half, RotationAngle(pi / 2), 100) - direct) < 1e-12);
}

TEST_CASE("deficit curve") {
    const SpinValue half(1);
    const auto curve = deficit_curve(half, 3, 0.0, 2 * pi, 720);
    REQUIRE(curve.theta_grid.size() == 720);
    REQUIRE(curve.deficits.size() == 720);
    CHECK(curve.theta_grid.front() == 0.0);
    CHECK(curve.theta_grid.back() == 2 * pi);
    for (std::size_t i = 1; i < curve.theta_grid.size(); ++i) {
        CHECK(curve.theta_grid[i] > curve.theta_grid[i - 1]);
    }

    REQUIRE(!curve.violation_ranges.empty());
    const auto first = curve.violation_ranges.front();
    CHECK(first.lo < 0.01);
    CHECK(first.lo <= pi / 3);
    CHECK(first.hi >= pi / 3);
    // Refined boundary: D changes sign within the bisection tolerance.
    CHECK(info_deficit(half, 3, RotationAngle(first.hi - 2e-6)) < 0.0);
    CHECK(info_deficit(half, 3, RotationAngle(first.hi + 2e-6)) > 0.0);

    // Ranges are maximal: a sample is violated exactly when it lies in a range.
    for (std::size_t i = 0; i < curve.theta_grid.size(); ++i) {
        bool inside = false;
        for (const auto& r : curve.violation_ranges) {
            inside = inside || (curve.theta_grid[i] >= r.lo && curve.theta_grid[i] <= r.hi);
        }
        CHECK(inside == (curve.deficits[i] < -kViolationTolerance));
    }
    CHECK(curve.min_deficit.deficit < -0.1);

    const auto spin_two = deficit_curve(SpinValue(4), 3, 0.0, 2 * pi, 720);
    CHECK(std::abs(spin_two.min_deficit.deficit) < std::abs(curve.min_deficit.deficit));

    const auto six = deficit_curve(half, 6, 0.0, 2 * pi, 720);
    REQUIRE(!six.violation_ranges.empty());
    CHECK(six.violation_ranges.front().lo < 0.01);
    CHECK(six.violation_ranges.front().hi > first.hi);

    const auto flat = deficit_curve(half, 2, 0.0, 2 * pi, 50);
    CHECK(flat.violation_ranges.empty());

    const auto threaded = deficit_curve(SpinValue(3), 4, -1.0, 7.0, 301, 4);
    const auto serial = deficit_curve(SpinValue(3), 4, -1.0, 7.0, 301, 1);
    CHECK(threaded.deficits == serial.deficits);

    CHECK_THROWS_AS(deficit_curve(half, 3, 0.0, 1.0, 1), Error);
    CHECK_THROWS_AS(deficit_curve(half, 3, 1.0, 1.0, 10), Error);
    CHECK_THROWS_AS(deficit_curve(half, 1, 0.0, 1.0, 10), Error);
}

TEST_CASE("matching curve ranges") {
    CHECK(default_curve_range(3).lo == 0.0);
    CHECK(default_curve_range(3).hi == doctest::Approx(2 * pi));
    CHECK(default_curve_range(6).hi == doctest::Approx(5 * pi));
    CHECK_THROWS_AS(default_curve_range(1), Error);
}
