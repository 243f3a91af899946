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

#ifndef MASEC_BEAMFORMER_HPP
#define MASEC_BEAMFORMER_HPP

#include "array_core.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace masec
{
    // A = a0 a0^H / sigma^2 (Bob), B = sum_i a_i a_i^H / sigma^2 (colluding eavesdroppers)
    struct QuadraticForms
    {
        ComplexMatrix A;
        ComplexMatrix B;
    };

    inline QuadraticForms build_forms(const AntennaPositions &x, const Scenario &s)
    {
        s.validate();
        const Eigen::Index n = x.size();
        const double inv_noise = 1.0 / s.noise_power;

        QuadraticForms f;
        const ComplexVector a0 = steering_vector(x, s.bob_angle, s.wavelength);
        f.A = inv_noise * (a0 * a0.adjoint());
        f.B = ComplexMatrix::Zero(n, n);
        for (double th : s.eve_angles)
        {
            const ComplexVector ai = steering_vector(x, th, s.wavelength);
            f.B.noalias() += inv_noise * (ai * ai.adjoint());
        }
        return f;
    }

    // (1 + w^H A w) / (1 + w^H B w)
    inline double rayleigh_objective(const QuadraticForms &f, const ComplexVector &w)
    {
        const double num = 1.0 + w.dot(f.A * w).real();
        const double den = 1.0 + w.dot(f.B * w).real();
        return num / den;
    }

    struct BeamformerSolution
    {
        Beamformer w;
        double eigenvalue = 0.0;      // largest eigenvalue of (B + I/P)^{-1} (A + I/P)
        double objective = 0.0;       // (1 + w^H A w) / (1 + w^H B w) at w
        bool degenerate_top = false;  // top eigenvalue has multiplicity > 1
    };

    // Rotate the global phase so the first largest-modulus entry is real and positive.
    inline ComplexVector normalize_phase(ComplexVector w)
    {
        Eigen::Index best = 0;
        double best_mod = -1.0;
        for (Eigen::Index n = 0; n < w.size(); ++n)
        {
            const double m = std::abs(w[n]);
            if (m > best_mod)
            {
                best_mod = m;
                best = n;
            }
        }
        if (best_mod > 0.0)
            w *= std::conj(w[best]) / best_mod;
        w[best] = cplx(std::abs(w[best]), 0.0);
        return w;
    }

    // Maximizer of (1 + w^H A w)/(1 + w^H B w) subject to ||w||^2 = P_A.
    //
    // The generalized problem (A + I/P) o = mu (B + I/P) o is reduced to a standard Hermitian one
    // through the Cholesky factor of B + I/P = L L^H (positive definite for P > 0):
    //   K = L^{-1} (A + I/P) L^{-H},  K y = mu y,  o = L^{-H} y / ||L^{-H} y||.
    inline BeamformerSolution optimal_beamformer(const QuadraticForms &f, const Scenario &s)
    {
        detail::require(std::isfinite(s.power_budget) && s.power_budget > 0.0, "power_budget must be finite and > 0");
        const Eigen::Index n = f.A.rows();
        detail::require(n >= 1 && f.A.cols() == n && f.B.rows() == n && f.B.cols() == n,
                        "quadratic forms must be square and of equal size");

        const double shift = 1.0 / s.power_budget;
        const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
        const ComplexMatrix num = f.A + shift * eye;
        const ComplexMatrix den = f.B + shift * eye;

        Eigen::LLT<ComplexMatrix> llt(den);
        if (llt.info() != Eigen::Success)
            throw convergence_error("Cholesky factorization of B + I/P_A failed");

        const auto lower = llt.matrixL();
        ComplexMatrix k = lower.solve(num);
        k = lower.solve(k.adjoint().eval()).adjoint().eval();
        k = (0.5 * (k + k.adjoint())).eval();

        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(k);
        if (eig.info() != Eigen::Success)
            throw convergence_error("Hermitian eigensolver did not converge");

        // Eigenvalues come back in ascending order.
        const auto &mu = eig.eigenvalues();
        const ComplexVector y = eig.eigenvectors().col(n - 1);
        ComplexVector o = llt.matrixU().solve(y);
        o /= o.norm();

        BeamformerSolution out;
        out.w = Beamformer(normalize_phase(std::sqrt(s.power_budget) * o));
        out.eigenvalue = mu[n - 1];
        out.objective = rayleigh_objective(f, out.w.values());
        out.degenerate_top = n > 1 && (mu[n - 1] - mu[n - 2]) <= 1e-10 * std::max(1.0, std::abs(mu[n - 1]));
        return out;
    }

    // ||(A + I/P) w - mu (B + I/P) w|| / (||w|| ||A + I/P||)
    inline double stationarity_residual(const QuadraticForms &f, const BeamformerSolution &sol, const Scenario &s)
    {
        const Eigen::Index n = f.A.rows();
        const double shift = 1.0 / s.power_budget;
        const ComplexMatrix num = f.A + shift * ComplexMatrix::Identity(n, n);
        const ComplexMatrix den = f.B + shift * ComplexMatrix::Identity(n, n);
        const ComplexVector &w = sol.w.values();
        const ComplexVector r = num * w - sol.eigenvalue * (den * w);
        return r.norm() / (w.norm() * num.norm());
    }
}

#endif
