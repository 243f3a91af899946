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

#ifndef MASEC_ORACLE_HPP
#define MASEC_ORACLE_HPP

// Independent reference computations: finite differences, random beamformer sampling and
// exhaustive position grids. None of these go through the analytic gradient or the
// alternating solver, so they can be used to check both.

#include "solver.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <string>

namespace masec::oracle
{
    // Central differences of the unclamped objective. Positions are perturbed without projection.
    inline RealVector fd_gradient(const RealVector &x, const ComplexVector &w, const Scenario &s, double h)
    {
        masec::detail::require(std::isfinite(h) && h > 0.0, "finite-difference step must be > 0");
        RealVector grad(x.size());
        RealVector xp = x;
        for (Eigen::Index n = 0; n < x.size(); ++n)
        {
            xp[n] = x[n] + h;
            const double up = objective_psi(xp, w, s);
            xp[n] = x[n] - h;
            const double down = objective_psi(xp, w, s);
            xp[n] = x[n];
            grad[n] = (up - down) / (2.0 * h);
        }
        return grad;
    }

    inline RealVector fd_gradient(const AntennaPositions &x, const Beamformer &w, const Scenario &s, double h)
    {
        return fd_gradient(x.values(), w.values(), s, h);
    }

    // i.i.d. complex Gaussian direction scaled to ||w||^2 = power.
    template <typename Rng>
    ComplexVector random_beamformer(Eigen::Index n, double power, Rng &rng)
    {
        std::normal_distribution<double> normal(0.0, 1.0);
        ComplexVector w(n);
        for (Eigen::Index j = 0; j < n; ++j)
        {
            const double re = normal(rng);
            const double im = normal(rng);
            w[j] = cplx(re, im);
        }
        return w * (std::sqrt(power) / w.norm());
    }

    // Uniform draw in [0, L]^N pushed onto the feasible set.
    template <typename Rng>
    AntennaPositions random_positions(Eigen::Index n, const Scenario &s, Rng &rng)
    {
        std::uniform_real_distribution<double> uni(0.0, s.aperture);
        RealVector x(n);
        for (Eigen::Index j = 0; j < n; ++j)
            x[j] = uni(rng);
        return project_positions(std::move(x), s);
    }

    // Best objective (1 + w^H A w)/(1 + w^H B w) over `count` random beamformers with ||w||^2 = P_A.
    inline double sample_beamformers(const QuadraticForms &f, const Scenario &s, int count, std::uint64_t seed)
    {
        masec::detail::require(count >= 1, "sample count must be >= 1");
        std::mt19937_64 rng(seed);
        double best = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < count; ++c)
            best = std::max(best, rayleigh_objective(f, random_beamformer(f.A.rows(), s.power_budget, rng)));
        return best;
    }

    struct GridSpec
    {
        double resolution = 0.02;
        std::size_t n_antennas = 2;
        std::uint64_t max_evaluations = 10'000'000;
    };

    struct GridResult
    {
        AntennaPositions x;
        Beamformer w;
        double rate = 0.0;
        std::uint64_t evaluations = 0;
    };

    namespace detail
    {
        struct GridLayout
        {
            std::int64_t points = 0; // grid indices 0..points-1
            std::int64_t gap = 0;    // minimal index distance honoring d_min
        };

        inline GridLayout grid_layout(const Scenario &s, double resolution)
        {
            GridLayout g;
            g.points = static_cast<std::int64_t>(std::floor(s.aperture / resolution + 1e-9)) + 1;
            g.gap = static_cast<std::int64_t>(std::ceil(s.min_spacing / resolution - 1e-9));
            return g;
        }

        // Number of increasing index tuples of length n with consecutive gaps >= gap.
        inline std::uint64_t grid_count(const GridLayout &g, std::size_t n)
        {
            const std::int64_t free = g.points - 1 - static_cast<std::int64_t>(n - 1) * g.gap;
            if (free < 0)
                return 0;
            // choose(free + n, n)
            double c = 1.0;
            for (std::size_t j = 1; j <= n; ++j)
                c = c * static_cast<double>(free + static_cast<std::int64_t>(j)) / static_cast<double>(j);
            return static_cast<std::uint64_t>(std::llround(c));
        }
    }

    inline std::uint64_t grid_evaluations(const Scenario &s, const GridSpec &spec)
    {
        return detail::grid_count(detail::grid_layout(s, spec.resolution), spec.n_antennas);
    }

    // Exhaustive search over sorted position tuples on a uniform grid with the optimal beamformer
    // at every point. Ties resolve to the lexicographically smallest tuple.
    inline GridResult grid_search(const Scenario &s, const GridSpec &spec)
    {
        s.validate();
        masec::detail::require(spec.n_antennas >= 1 && spec.n_antennas <= 3, "grid search supports 1 <= N <= 3");
        masec::detail::require(std::isfinite(spec.resolution) && spec.resolution > 0.0, "grid resolution must be > 0");
        s.check_feasible(spec.n_antennas);

        const detail::GridLayout layout = detail::grid_layout(s, spec.resolution);
        const std::uint64_t total = detail::grid_count(layout, spec.n_antennas);
        if (total > spec.max_evaluations)
            throw validation_error("grid too large: " + std::to_string(total) + " evaluations exceed cap " +
                                   std::to_string(spec.max_evaluations));
        masec::detail::require(total > 0, "grid contains no feasible tuple; refine the resolution");

        const Eigen::Index n = static_cast<Eigen::Index>(spec.n_antennas);
        std::vector<std::int64_t> idx(spec.n_antennas);
        GridResult best;
        best.rate = -1.0;

        auto evaluate = [&]
        {
            RealVector x(n);
            for (Eigen::Index j = 0; j < n; ++j)
                x[j] = static_cast<double>(idx[static_cast<std::size_t>(j)]) * spec.resolution;
            AntennaPositions pos(std::move(x));
            BeamformerSolution bf = optimal_beamformer(build_forms(pos, s), s);
            const double rate = secrecy_rate(pos, bf.w, s);
            ++best.evaluations;
            if (rate > best.rate)
            {
                best.rate = rate;
                best.x = std::move(pos);
                best.w = std::move(bf.w);
            }
        };

        // Lexicographic enumeration with a recursive lambda over antenna slots.
        auto recurse = [&](auto &&self, std::size_t slot, std::int64_t lo) -> void
        {
            const std::int64_t remaining = static_cast<std::int64_t>(spec.n_antennas - 1 - slot);
            const std::int64_t hi = layout.points - 1 - remaining * layout.gap;
            for (std::int64_t k = lo; k <= hi; ++k)
            {
                idx[slot] = k;
                if (slot + 1 == spec.n_antennas)
                    evaluate();
                else
                    self(self, slot + 1, k + layout.gap);
            }
        };
        recurse(recurse, 0, 0);
        return best;
    }

    struct CheckResult
    {
        std::string name;
        double measured = 0.0;
        double threshold = 0.0;
        bool passed = false;
        std::string detail;
    };

    struct VerifyOptions
    {
        std::uint64_t seed = 0;
        int restarts = 0;
        int lift_draws = 1000;
        int gradient_points = 100;
        int beamformer_points = 20;
        int beamformer_samples = 10'000;
        double fd_step = 1e-6;        // in wavelengths
        double grid_resolution = 0.02; // in wavelengths, coarsened until under grid_cap
        std::uint64_t grid_cap = 1'000'000;
        bool flip_gradient_sign = false; // negative control: corrupts the analytic gradient
    };

    // Relative L2 error of the analytic gradient against central differences.
    inline double gradient_error(const RealVector &analytic, const RealVector &numeric)
    {
        return (analytic - numeric).norm() / std::max(numeric.norm(), 1e-8);
    }

    // Oracle checks for one scenario and array size; every entry reports its measured value.
    inline std::vector<CheckResult> verify_scenario(const Scenario &s, std::size_t n, const SolveConfig &cfg,
                                                    const VerifyOptions &opt = {})
    {
        s.validate();
        s.check_feasible(n);
        const Eigen::Index dim = static_cast<Eigen::Index>(n);
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
        std::vector<CheckResult> out;

        {
            double worst = 0.0;
            for (int d = 0; d < opt.lift_draws; ++d)
            {
                const AntennaPositions x = random_positions(dim, s, rng);
                const ComplexVector w = random_beamformer(dim, s.power_budget, rng);
                Scenario probe = s;
                probe.bob_angle = angle(rng);
                const double direct = beam_gain(x.values(), w, probe.bob_angle, s.wavelength);
                const double lifted = real_lift(x.values(), w, probe).quadratic(0);
                worst = std::max(worst, std::abs(lifted - direct) / std::max(1.0, direct));
            }
            out.push_back({"lift_identity", worst, 1e-9, worst <= 1e-9, std::to_string(opt.lift_draws) + " draws"});
        }

        {
            double worst = 0.0;
            const double h = opt.fd_step * s.wavelength;
            for (int p = 0; p < opt.gradient_points; ++p)
            {
                const AntennaPositions x = random_positions(dim, s, rng);
                const ComplexVector w = random_beamformer(dim, s.power_budget, rng);
                RealVector analytic = gradient_psi(x.values(), w, s);
                if (opt.flip_gradient_sign)
                    analytic = -analytic;
                const RealVector numeric = fd_gradient(x.values(), w, s, h);
                if (numeric.norm() < 1e-8 && analytic.norm() < 1e-8)
                    continue;
                worst = std::max(worst, gradient_error(analytic, numeric));
            }
            out.push_back({"fd_gradient", worst, 1e-5, worst <= 1e-5,
                           std::to_string(opt.gradient_points) + " points"});
        }

        {
            double worst_residual = 0.0;
            double worst_gap = -std::numeric_limits<double>::infinity();
            double worst_power = 0.0;
            for (int p = 0; p < opt.beamformer_points; ++p)
            {
                const AntennaPositions x = random_positions(dim, s, rng);
                const QuadraticForms f = build_forms(x, s);
                const BeamformerSolution sol = optimal_beamformer(f, s);
                worst_residual = std::max(worst_residual, stationarity_residual(f, sol, s));
                worst_power = std::max(worst_power, std::abs(sol.w.power() - s.power_budget) / s.power_budget);
                const double sampled = sample_beamformers(f, s, opt.beamformer_samples, rng());
                worst_gap = std::max(worst_gap, sampled - sol.objective);
            }
            out.push_back({"beamformer_stationarity", worst_residual, 1e-8, worst_residual <= 1e-8,
                           "scaled residual"});
            out.push_back({"beamformer_power", worst_power, 1e-10, worst_power <= 1e-10, "relative"});
            // A sampled objective above the solver's would contradict maximality.
            const double slack = 1e-12;
            out.push_back({"beamformer_vs_sampling", worst_gap, slack, worst_gap <= slack,
                           "max(sampled - solver) over " + std::to_string(opt.beamformer_samples) + " samples"});
        }

        if (n <= 3)
        {
            GridSpec spec;
            spec.n_antennas = n;
            spec.max_evaluations = opt.grid_cap;
            spec.resolution = opt.grid_resolution * s.wavelength;
            while (grid_evaluations(s, spec) > spec.max_evaluations)
                spec.resolution *= 2.0;
            const GridResult grid = grid_search(s, spec);
            const OptimizationTrace tr = solve_multistart(n, s, cfg, opt.restarts, opt.seed);
            const double ratio = grid.rate > 0.0 ? tr.final_rate / grid.rate : 1.0;
            out.push_back({"grid_comparison", ratio, 0.95, ratio >= 0.95,
                           "solver/grid rate ratio at resolution " + std::to_string(spec.resolution)});
        }
        return out;
    }
}

#endif
