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

#include <masec/io.hpp>

#include <gtest/gtest.h>

using namespace masec;
using masec::test::pi;

TEST(ScenarioFile, PiFractionsAndDefaults)
{
    const io::ScenarioFile f = io::parse_scenario(R"({"bob_angle_pi": 0.5, "eve_angles": [0.75, 0.25], "n_antennas": 4})");
    EXPECT_DOUBLE_EQ(f.scenario.bob_angle, pi / 2);
    ASSERT_EQ(f.scenario.eve_angles.size(), 2u);
    EXPECT_DOUBLE_EQ(f.scenario.eve_angles[0], 0.75 * pi);
    EXPECT_EQ(f.scenario.aperture, 10.0);
    EXPECT_EQ(f.scenario.min_spacing, 0.5);
    EXPECT_EQ(f.scenario.noise_power, 1.0);
    EXPECT_EQ(f.solve.pga.step_size, 0.01);
    EXPECT_EQ(f.n_antennas, 4u);
}

TEST(ScenarioFile, RadiansScaleDefaultsWithWavelength)
{
    const io::ScenarioFile f = io::parse_scenario(
        R"({"wavelength": 0.1, "bob_angle_rad": 1.0, "eve_angles": [2.0], "seed": 12,
            "tolerances": {"inner_tol": 1e-7, "max_outer_iters": 9}})");
    EXPECT_EQ(f.scenario.bob_angle, 1.0);
    EXPECT_EQ(f.scenario.eve_angles[0], 2.0);
    EXPECT_DOUBLE_EQ(f.scenario.aperture, 1.0);
    EXPECT_DOUBLE_EQ(f.scenario.min_spacing, 0.05);
    EXPECT_EQ(f.solve.pga.inner_tol, 1e-7);
    EXPECT_EQ(f.solve.max_outer_iters, 9);
    EXPECT_EQ(f.seed, 12u);
    EXPECT_FALSE(f.n_antennas.has_value());
}

TEST(ScenarioFile, RejectsMalformedDocuments)
{
    const char *bad[] = {
        R"({"bob_angle_pi": 0.5, "eve_angles": [0.25], "colour": 1})",
        R"({"bob_angle_pi": 0.5, "bob_angle_rad": 1.5, "eve_angles": [0.25]})",
        R"({"eve_angles": [0.25]})",
        R"({"bob_angle_pi": 0.5})",
        R"({"bob_angle_pi": 0.5, "eve_angles": []})",
        R"({"bob_angle_pi": 1.0, "eve_angles": [0.25]})",
        R"({"bob_angle_pi": 0.5, "eve_angles": [0.25], "tolerances": {"foo": 1}})",
        R"({"bob_angle_pi": 0.5, "eve_angles": [0.25], "n_antennas": 2.5})",
        R"({"bob_angle_pi": 0.5, "eve_angles": [0.25], "step_size": "big"})",
        R"({"bob_angle_pi": 0.5, "eve_angles": [0.25], "seed": -1})",
        R"([1, 2])",
        R"({not json)",
    };
    for (const char *doc : bad)
        EXPECT_THROW(io::parse_scenario(doc), validation_error) << doc;
}

TEST(ScenarioFile, InfeasibleArrayIsReported)
{
    EXPECT_THROW(io::parse_scenario(R"({"bob_angle_pi": 0.5, "eve_angles": [0.25], "aperture": 1.0, "n_antennas": 4})"),
                 infeasible_error);
}

TEST(Csv, HeaderEscapingAndPrecision)
{
    io::CsvWriter csv({"a", "b"});
    csv.row({io::format_number(1.0 / 3.0), "x,\"y\""});
    EXPECT_EQ(csv.str(), "a,b\r\n0.333333333333,\"x,\"\"y\"\"\"\r\n");
    EXPECT_THROW(csv.row({"only one"}), std::logic_error);
}

TEST(Csv, BeampatternCoversClosedInterval)
{
    Scenario s;
    const AntennaPositions x{0.0, 0.5, 1.0, 1.5};
    const Beamformer w = test::mrt(x, pi / 2, s);
    const std::string text = io::beampattern_csv(x, w, s, 5);
    EXPECT_EQ(text.rfind("theta_rad,gain\r\n", 0), 0u);
    EXPECT_NE(text.find("\r\n3.14159265359,"), std::string::npos);
    EXPECT_NE(text.find("1.57079632679,4\r\n"), std::string::npos); // MRT peak N P_A
}

TEST(Solution, RoundTripReproducesRate)
{
    const Scenario s = test::two_eves_n3();
    const OptimizationTrace tr = solve(3, s);
    const io::Solution sol = io::parse_solution(io::solution_json(tr));
    EXPECT_EQ(sol.x.values(), tr.final_x.values());
    EXPECT_EQ(sol.w.values(), tr.final_w.values());
    EXPECT_NEAR(secrecy_rate(sol.x, sol.w, s), tr.final_rate, 1e-12);
    EXPECT_EQ(sol.rate, tr.final_rate);
}

TEST(Solution, RejectsMalformed)
{
    EXPECT_THROW(io::parse_solution(R"({"final_x": [0, 1]})"), validation_error);
    EXPECT_THROW(io::parse_solution(R"({"final_x": [0, 1], "final_w": [[1, 0]]})"), validation_error);
    EXPECT_THROW(io::parse_solution(R"({"final_x": [0], "final_w": [[1]]})"), validation_error);
}
