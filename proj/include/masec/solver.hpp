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

#ifndef MASEC_SOLVER_HPP
#define MASEC_SOLVER_HPP

#include "beamformer.hpp"
#include "positions.hpp"

#include <cstdint>
#include <random>

namespace masec
{
    struct SolveConfig
    {
        PgaConfig pga;
        int max_outer_iters = 50;
        double outer_tol = 1e-6; // bps/Hz

        void validate() const
        {
            pga.validate();
            detail::require(max_outer_iters > 0, "max_outer_iters must be > 0");
            detail::require(std::isfinite(outer_tol) && outer_tol > 0.0, "outer_tol must be > 0");
        }
    };

    struct OuterRecord
    {
        int iter = 0;              // 1-based
        double rate_after_w = 0.0; // clamped secrecy rate after the beamformer update
        double rate_after_x = 0.0; // clamped secrecy rate after the position update
        double psi_after_w = 0.0;  // unclamped objective, same points
        double psi_after_x = 0.0;
        bool degenerate_beamformer = false;
    };

    struct OptimizationTrace
    {
        std::vector<OuterRecord> outer;
        std::vector<std::vector<double>> inner; // Psi trace of each position update
        AntennaPositions final_x;
        Beamformer final_w;
        double final_psi = 0.0;
        double final_rate = 0.0;
        bool converged = false;
    };

    // x^I = [0, d_min, ..., (N-1) d_min]^T, which is also the fixed-position baseline layout.
    inline AntennaPositions initial_positions(std::size_t n, const Scenario &s)
    {
        s.validate_geometry();
        s.check_feasible(n);
        RealVector x(static_cast<Eigen::Index>(n));
        for (Eigen::Index j = 0; j < x.size(); ++j)
            x[j] = static_cast<double>(j) * s.min_spacing;
        return AntennaPositions(std::move(x));
    }

    // Alternating optimization from an explicit start point: beamformer update first, then
    // projected gradient ascent on the positions, until the unclamped objective changes by at
    // most outer_tol between consecutive rounds.
    inline OptimizationTrace solve_from(const AntennaPositions &start, const Scenario &s, const SolveConfig &cfg)
    {
        s.validate();
        cfg.validate();
        s.check_feasible(static_cast<std::size_t>(start.size()));
        detail::require(start.is_feasible(s), "start positions violate spacing or box constraints");

        OptimizationTrace tr;
        AntennaPositions x = start;
        double prev_psi = 0.0;
        for (int k = 1; k <= cfg.max_outer_iters; ++k)
        {
            const BeamformerSolution bf = optimal_beamformer(build_forms(x, s), s);
            const double psi_w = objective_psi(x, bf.w, s);

            PgaResult pga = optimize_positions(x, bf.w, s, cfg.pga);

            OuterRecord rec;
            rec.iter = k;
            rec.psi_after_w = psi_w;
            rec.psi_after_x = pga.psi;
            rec.rate_after_w = std::max(0.0, psi_w);
            rec.rate_after_x = std::max(0.0, pga.psi);
            rec.degenerate_beamformer = bf.degenerate_top;
            tr.outer.push_back(rec);
            tr.inner.push_back(std::move(pga.trace));

            x = pga.x;
            tr.final_x = std::move(pga.x);
            tr.final_w = std::move(pga.w);
            tr.final_psi = pga.psi;

            if (k > 1 && std::abs(pga.psi - prev_psi) <= cfg.outer_tol)
            {
                tr.converged = true;
                break;
            }
            prev_psi = pga.psi;
        }
        tr.final_rate = std::max(0.0, tr.final_psi);
        return tr;
    }

    inline OptimizationTrace solve(std::size_t n, const Scenario &s, const SolveConfig &cfg = {})
    {
        return solve_from(initial_positions(n, s), s, cfg);
    }

    // Runs solve() from x^I and from `restarts` extra starts, each x^I shifted per antenna by
    // U(0, L - (N-1) d_min) and projected. Keeps the best final rate; ties go to the earlier run.
    inline OptimizationTrace solve_multistart(std::size_t n, const Scenario &s, const SolveConfig &cfg,
                                              int restarts, std::uint64_t seed)
    {
        detail::require(restarts >= 0, "restarts must be >= 0");
        const AntennaPositions x_init = initial_positions(n, s);
        OptimizationTrace best = solve_from(x_init, s, cfg);

        std::mt19937_64 rng(seed);
        const double slack = std::max(0.0, s.aperture - static_cast<double>(n - 1) * s.min_spacing);
        std::uniform_real_distribution<double> shift(0.0, slack);
        for (int r = 0; r < restarts; ++r)
        {
            RealVector x = x_init.values();
            for (Eigen::Index j = 0; j < x.size(); ++j)
                x[j] += shift(rng);
            OptimizationTrace tr = solve_from(project_positions(std::move(x), s), s, cfg);
            if (tr.final_psi > best.final_psi)
                best = std::move(tr);
        }
        return best;
    }

    struct FpaResult
    {
        AntennaPositions x;
        Beamformer w;
        double rate = 0.0;
    };

    // Fixed-position baseline: uniform d_min spacing, only the beamformer is optimized.
    inline FpaResult solve_fpa(std::size_t n, const Scenario &s)
    {
        FpaResult r;
        r.x = initial_positions(n, s);
        r.w = optimal_beamformer(build_forms(r.x, s), s).w;
        r.rate = secrecy_rate(r.x, r.w, s);
        return r;
    }
}

#endif
