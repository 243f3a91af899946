// SPDX-License-Identifier: Apache-2.0
//
// masec - secrecy-rate optimization for movable-antenna linear arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace masec;
using masec::test::pi;

TEST(FdGradient, ZeroForBroadsideAngles)
{
    Scenario s;
    s.bob_angle = pi / 2;
    s.eve_angles = {pi / 2};
    std::mt19937_64 rng(1);
    const AntennaPositions x{0.0, 1.0, 2.5};
    EXPECT_LE(oracle::fd_gradient(x, Beamformer(oracle::random_beamformer(3, 1.0, rng)), s, 1e-6).norm(), 1e-9);
}

TEST(FdGradient, ErrorShrinksQuadraticallyWithStep)
{
    const Scenario s = test::two_eves_n4();
    std::mt19937_64 rng(2);
    const AntennaPositions x = oracle::random_positions(4, s, rng);
    const Beamformer w(oracle::random_beamformer(4, 1.0, rng));
    const RealVector g = gradient_psi(x, w, s);
    const double e3 = (oracle::fd_gradient(x, w, s, 1e-3) - g).norm();
    const double e4 = (oracle::fd_gradient(x, w, s, 1e-4) - g).norm();
    const double e6 = (oracle::fd_gradient(x, w, s, 1e-6) - g).norm();
    EXPECT_LT(e4, e3);
    EXPECT_LT(e6, e3);
    EXPECT_NEAR(e3 / e4, 100.0, 10.0); // O(h^2)
    EXPECT_LE(oracle::gradient_error(g, oracle::fd_gradient(x, w, s, 1e-6)), 1e-5);
}

TEST(SampleBeamformers, DeterministicAndBoundedByOptimum)
{
    const Scenario s = test::two_eves_n3();
    const QuadraticForms f = build_forms(AntennaPositions{0.0, 0.7, 1.4}, s);
    EXPECT_EQ(oracle::sample_beamformers(f, s, 1, 42), oracle::sample_beamformers(f, s, 1, 42));
    const double opt = optimal_beamformer(f, s).objective;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        EXPECT_LE(oracle::sample_beamformers(f, s, 500, seed), opt);
    EXPECT_THROW(oracle::sample_beamformers(f, s, 0, 1), validation_error);
}

TEST(GridSearch, SingleAntennaMatchesScalarFormula)
{
    Scenario s;
    s.eve_angles = {0.4, 2.0};
    s.power_budget = 3.0;
    oracle::GridSpec spec;
    spec.n_antennas = 1;
    spec.resolution = 0.5;
    const oracle::GridResult r = oracle::grid_search(s, spec);
    // One antenna: gains are P_A for every angle.
    EXPECT_NEAR(r.rate, std::max(0.0, std::log2(1 + 3.0) - std::log2(1 + 6.0)), 1e-12);
    EXPECT_EQ(r.x[0], 0.0); // lexicographic tie-break
}

TEST(GridSearch, CountsAndRefinement)
{
    Scenario s;
    s.aperture = 2.0;
    s.bob_angle = 1.0;
    s.eve_angles = {2.3};
    oracle::GridSpec coarse;
    coarse.resolution = 0.04;
    oracle::GridSpec fine = coarse;
    fine.resolution = 0.02;
    const oracle::GridResult a = oracle::grid_search(s, coarse);
    const oracle::GridResult b = oracle::grid_search(s, fine);
    EXPECT_EQ(a.evaluations, oracle::grid_evaluations(s, coarse));
    // 101 points, gap 25: pairs (i, j) with j - i >= 25 -> sum_{d=25}^{100} (101 - d) = 2926
    EXPECT_EQ(b.evaluations, 2926u);
    EXPECT_GE(b.rate, a.rate);
    EXPECT_TRUE(b.x.is_feasible(s));
}

TEST(GridSearch, GuardsSizeAndDimension)
{
    Scenario s;
    s.eve_angles = {0.3};
    oracle::GridSpec spec;
    spec.n_antennas = 4;
    EXPECT_THROW(oracle::grid_search(s, spec), validation_error);
    spec.n_antennas = 3;
    spec.resolution = 0.001;
    spec.max_evaluations = 1000;
    EXPECT_THROW(oracle::grid_search(s, spec), validation_error);
}

TEST(VerifySuite, ReferenceScenarioPassesAndNegativeControlFails)
{
    const Scenario s = test::two_eves_n4();
    oracle::VerifyOptions opt;
    opt.seed = 3;
    opt.beamformer_samples = 2000;
    for (const auto &c : oracle::verify_scenario(s, 4, {}, opt))
        EXPECT_TRUE(c.passed) << c.name << " measured " << c.measured;

    opt.flip_gradient_sign = true;
    bool fd_failed = false;
    for (const auto &c : oracle::verify_scenario(s, 4, {}, opt))
        if (c.name == "fd_gradient")
            fd_failed = !c.passed;
    EXPECT_TRUE(fd_failed);
}

TEST(VerifySuite, GridComparisonRunsForSmallArrays)
{
    Scenario s;
    s.aperture = 2.0;
    s.bob_angle = pi / 2;
    s.eve_angles = {pi / 4};
    oracle::VerifyOptions opt;
    opt.lift_draws = 10;
    opt.gradient_points = 5;
    opt.beamformer_points = 2;
    opt.beamformer_samples = 100;
    const auto checks = oracle::verify_scenario(s, 2, {}, opt);
    const auto it = std::find_if(checks.begin(), checks.end(), [](const auto &c)
                                 { return c.name == "grid_comparison"; });
    ASSERT_NE(it, checks.end());
    EXPECT_TRUE(it->passed);
    const auto n4 = oracle::verify_scenario(test::two_eves_n4(), 4, {}, opt);
    EXPECT_TRUE(std::none_of(n4.begin(), n4.end(), [](const auto &c)
                             { return c.name == "grid_comparison"; }));
}
