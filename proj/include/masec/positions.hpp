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

#ifndef MASEC_POSITIONS_HPP
#define MASEC_POSITIONS_HPP

#include "array_core.hpp"

#include <limits>
#include <numeric>

namespace masec
{
    // Real-valued reparameterization of |a^H(x, theta_i) w|^2.
    //   g_{n,i} = cos(k x_n cos theta_i), q_{n,i} = sin(k x_n cos theta_i)
    //   C = u u^T + z z^T,  D = u z^T - z u^T,  w = u + j z
    // Column i of g/q belongs to angle i, with i = 0 being Bob.
    struct RealLift
    {
        RealMatrix g; // N x (M+1)
        RealMatrix q; // N x (M+1)
        RealMatrix C; // N x N, symmetric PSD
        RealMatrix D; // N x N, antisymmetric

        // f(g_i, q_i) = g_i^T C g_i + q_i^T C q_i + 2 g_i^T D q_i
        double quadratic(Eigen::Index i) const
        {
            const auto gi = g.col(i);
            const auto qi = q.col(i);
            return gi.dot(C * gi) + qi.dot(C * qi) + 2.0 * gi.dot(D * qi);
        }
    };

    inline RealLift real_lift(const RealVector &x, const ComplexVector &w, const Scenario &s)
    {
        detail::require(x.size() == w.size(), "positions and beamformer dimensions differ");
        const std::vector<double> angles = s.all_angles();
        const Eigen::Index n = x.size();
        const Eigen::Index m = static_cast<Eigen::Index>(angles.size());
        const double k = s.wavenumber();

        RealLift lift;
        lift.g.resize(n, m);
        lift.q.resize(n, m);
        for (Eigen::Index i = 0; i < m; ++i)
        {
            const double kc = k * std::cos(angles[static_cast<std::size_t>(i)]);
            for (Eigen::Index j = 0; j < n; ++j)
            {
                lift.g(j, i) = std::cos(kc * x[j]);
                lift.q(j, i) = std::sin(kc * x[j]);
            }
        }
        const RealVector u = w.real();
        const RealVector z = w.imag();
        lift.C = u * u.transpose() + z * z.transpose();
        lift.D = u * z.transpose() - z * u.transpose();
        return lift;
    }

    inline RealLift real_lift(const AntennaPositions &x, const Beamformer &w, const Scenario &s)
    {
        return real_lift(x.values(), w.values(), s);
    }

    // Unclamped secrecy objective Psi = log2(1 + f_0/sigma^2) - log2(1 + sum_{i>=1} f_i/sigma^2).
    // Evaluated through the lift; accepts any finite x (no feasibility check).
    inline double objective_psi(const RealVector &x, const ComplexVector &w, const Scenario &s)
    {
        const RealLift lift = real_lift(x, w, s);
        LinkGains g;
        g.bob = lift.quadratic(0);
        for (Eigen::Index i = 1; i < lift.g.cols(); ++i)
            g.eves += lift.quadratic(i);
        return rate_difference(g, s.noise_power);
    }

    inline double objective_psi(const AntennaPositions &x, const Beamformer &w, const Scenario &s)
    {
        return objective_psi(x.values(), w.values(), s);
    }

    // Analytic gradient of Psi with respect to the antenna positions.
    //
    //   grad f_i = -W_i (2 C g_i + 2 D q_i) + S_i (2 C q_i - 2 D g_i)
    //   W_i = diag(k cos theta_i * q_i),  S_i = diag(k cos theta_i * g_i)
    //   grad Psi = [ (grad f_0/sigma^2)/(1 + f_0/sigma^2) - (sum grad f_i/sigma^2)/(1 + sum f_i/sigma^2) ] / ln 2
    inline RealVector gradient_psi(const RealVector &x, const ComplexVector &w, const Scenario &s)
    {
        const RealLift lift = real_lift(x, w, s);
        const std::vector<double> angles = s.all_angles();
        const double k = s.wavenumber();
        const double sigma2 = s.noise_power;
        const Eigen::Index n = x.size();

        RealVector bob_grad(n);
        RealVector eve_grad = RealVector::Zero(n);
        double bob_f = 0.0;
        double eve_f = 0.0;
        for (Eigen::Index i = 0; i < lift.g.cols(); ++i)
        {
            const auto gi = lift.g.col(i);
            const auto qi = lift.q.col(i);
            const RealVector cg = lift.C * gi;
            const RealVector cq = lift.C * qi;
            const RealVector dg = lift.D * gi;
            const RealVector dq = lift.D * qi;
            const double kc = k * std::cos(angles[static_cast<std::size_t>(i)]);

            const RealVector df_dg = 2.0 * (cg + dq);
            const RealVector df_dq = 2.0 * (cq - dg);
            const RealVector grad_f = kc * (-qi.cwiseProduct(df_dg) + gi.cwiseProduct(df_dq));
            const double f = gi.dot(cg) + qi.dot(cq) + 2.0 * gi.dot(dq);

            if (i == 0)
            {
                bob_grad = grad_f;
                bob_f = f;
            }
            else
            {
                eve_grad += grad_f;
                eve_f += f;
            }
        }
        return ((bob_grad / sigma2) / (1.0 + bob_f / sigma2) - (eve_grad / sigma2) / (1.0 + eve_f / sigma2)) /
               std::numbers::ln2;
    }

    inline RealVector gradient_psi(const AntennaPositions &x, const Beamformer &w, const Scenario &s)
    {
        return gradient_psi(x.values(), w.values(), s);
    }

    // Sort ascending, then clamp sequentially:
    //   x_1 <- clamp(x_1, 0, L - (N-1) d_min)
    //   x_n <- clamp(x_n, x_{n-1} + d_min, L - (N-n) d_min)
    // Upper bounds are built from the right end and nudged down by ulps until hi_n + d_min <= hi_{n+1}
    // holds in floating point, so the output meets both constraints without slack.
    inline AntennaPositions project_positions(RealVector x_raw, const Scenario &s)
    {
        detail::require(x_raw.size() >= 1, "positions must contain at least one antenna");
        detail::require(detail::all_finite(x_raw), "positions must be finite");
        s.validate_geometry();
        const Eigen::Index n = x_raw.size();
        s.check_feasible(static_cast<std::size_t>(n));

        const double d = s.min_spacing;
        RealVector hi(n);
        hi[n - 1] = s.aperture;
        for (Eigen::Index j = n - 2; j >= 0; --j)
        {
            double h = hi[j + 1] - d;
            while (h + d > hi[j + 1])
                h = std::nextafter(h, -std::numeric_limits<double>::infinity());
            hi[j] = h;
        }

        std::sort(x_raw.data(), x_raw.data() + n);
        for (Eigen::Index j = 0; j < n; ++j)
        {
            const double lo = j == 0 ? 0.0 : x_raw[j - 1] + d;
            x_raw[j] = std::max(lo, std::min(hi[j], x_raw[j]));
        }
        return AntennaPositions(std::move(x_raw));
    }

    struct PgaConfig
    {
        double step_size = 0.01;
        int max_inner_iters = 500;
        double inner_tol = 1e-8;

        void validate() const
        {
            detail::require(std::isfinite(step_size) && step_size > 0.0, "step_size must be > 0");
            detail::require(max_inner_iters > 0, "max_inner_iters must be > 0");
            detail::require(std::isfinite(inner_tol) && inner_tol > 0.0, "inner_tol must be > 0");
        }
    };

    struct PgaResult
    {
        AntennaPositions x;        // best iterate
        Beamformer w;              // input beamformer, entries permuted to follow x's sort order
        double psi = 0.0;          // Psi at (x, w)
        std::vector<double> trace; // Psi at x^0, x^1, ..., x^T
        int iterations = 0;        // T, number of gradient steps taken
        bool converged = false;    // |dPsi| <= inner_tol reached before the cap
    };

    namespace detail
    {
        // Stable argsort, so ties keep their antenna index.
        inline std::vector<Eigen::Index> sort_permutation(const RealVector &v)
        {
            std::vector<Eigen::Index> idx(static_cast<std::size_t>(v.size()));
            std::iota(idx.begin(), idx.end(), Eigen::Index{0});
            std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b)
                             { return v[a] < v[b]; });
            return idx;
        }
    }

    // Projected gradient ascent on Psi for fixed w:
    //   x^{t+1} = project(x^t + step * grad Psi(x^t))
    // stops when |Psi^{t+1} - Psi^t| <= inner_tol or after max_inner_iters steps, and returns the
    // best iterate seen. Antennas keep their beamformer weight when a step reorders them.
    inline PgaResult optimize_positions(const AntennaPositions &x0, const Beamformer &w0, const Scenario &s,
                                        const PgaConfig &cfg)
    {
        s.validate();
        cfg.validate();
        detail::require(x0.size() == w0.size(), "positions and beamformer dimensions differ");
        s.check_feasible(static_cast<std::size_t>(x0.size()));
        detail::require(x0.is_feasible(s), "initial positions violate spacing or box constraints");

        RealVector x = x0.values();
        ComplexVector w = w0.values();
        double psi = objective_psi(x, w, s);

        PgaResult out{x0, w0, psi, {psi}, 0, false};
        for (int t = 0; t < cfg.max_inner_iters; ++t)
        {
            RealVector stepped = x + cfg.step_size * gradient_psi(x, w, s);
            const auto perm = detail::sort_permutation(stepped);
            RealVector sorted(stepped.size());
            ComplexVector w_sorted(w.size());
            for (std::size_t j = 0; j < perm.size(); ++j)
            {
                sorted[static_cast<Eigen::Index>(j)] = stepped[perm[j]];
                w_sorted[static_cast<Eigen::Index>(j)] = w[perm[j]];
            }
            AntennaPositions projected = project_positions(std::move(sorted), s);
            x = projected.values();
            w = std::move(w_sorted);

            const double next = objective_psi(x, w, s);
            out.trace.push_back(next);
            out.iterations = t + 1;
            if (next > out.psi)
            {
                out.psi = next;
                out.x = std::move(projected);
                out.w = Beamformer(w);
            }
            const double change = std::abs(next - psi);
            psi = next;
            if (change <= cfg.inner_tol)
            {
                out.converged = true;
                break;
            }
        }
        return out;
    }
}

#endif
