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

#ifndef MASEC_ARRAY_CORE_HPP
#define MASEC_ARRAY_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace masec
{
    using cplx = std::complex<double>;
    using RealVector = Eigen::VectorXd;
    using ComplexVector = Eigen::VectorXcd;
    using RealMatrix = Eigen::MatrixXd;
    using ComplexMatrix = Eigen::MatrixXcd;

    // Raised for malformed inputs (non-finite values, wrong dimensions, bad scenario fields)
    class validation_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Raised when L < (N-1) * d_min, i.e. no feasible placement of N antennas exists
    class infeasible_error : public validation_error
    {
    public:
        using validation_error::validation_error;
    };

    // Raised when an iterative numerical routine fails to produce a result
    class convergence_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    namespace detail
    {
        inline void require(bool cond, const std::string &msg)
        {
            if (!cond)
                throw validation_error(msg);
        }

        inline bool all_finite(const RealVector &v)
        {
            return v.array().isFinite().all();
        }

        inline bool all_finite(const ComplexVector &v)
        {
            return v.real().array().isFinite().all() && v.imag().array().isFinite().all();
        }
    }

    // Full problem instance. Lengths are in the same unit as `wavelength` (default 1, i.e. wavelengths).
    struct Scenario
    {
        double wavelength = 1.0;
        double bob_angle = std::numbers::pi / 2.0; // radians, [0, pi)
        std::vector<double> eve_angles;            // radians, [0, pi), at least one
        double noise_power = 1.0;                  // sigma^2
        double power_budget = 1.0;                 // P_A
        double aperture = 10.0;                    // L
        double min_spacing = 0.5;                  // d_min

        std::size_t eve_count() const { return eve_angles.size(); }

        // Angles in evaluation order: Bob first, then every eavesdropper.
        std::vector<double> all_angles() const
        {
            std::vector<double> out;
            out.reserve(eve_angles.size() + 1);
            out.push_back(bob_angle);
            out.insert(out.end(), eve_angles.begin(), eve_angles.end());
            return out;
        }

        // Checks lambda, d_min and L only.
        void validate_geometry() const
        {
            using detail::require;
            require(std::isfinite(wavelength) && wavelength > 0.0, "wavelength must be finite and > 0");
            require(std::isfinite(min_spacing) && min_spacing > 0.0, "min_spacing must be finite and > 0");
            require(std::isfinite(aperture) && aperture >= 0.0, "aperture must be finite and >= 0");
        }

        void validate() const
        {
            using detail::require;
            validate_geometry();
            auto angle_ok = [](double a)
            { return std::isfinite(a) && a >= 0.0 && a < std::numbers::pi; };

            require(std::isfinite(noise_power) && noise_power > 0.0, "noise_power must be finite and > 0");
            require(std::isfinite(power_budget) && power_budget > 0.0, "power_budget must be finite and > 0");
            require(angle_ok(bob_angle), "bob_angle must lie in [0, pi)");
            require(!eve_angles.empty(), "at least one eavesdropper angle is required");
            for (double a : eve_angles)
                require(angle_ok(a), "eavesdropper angles must lie in [0, pi)");
        }

        // Throws infeasible_error unless N antennas fit into [0, L] at spacing d_min.
        void check_feasible(std::size_t n) const
        {
            detail::require(n >= 1, "antenna count must be >= 1");
            if (aperture + feasibility_slack() < static_cast<double>(n - 1) * min_spacing)
                throw infeasible_error("aperture L = " + std::to_string(aperture) + " cannot hold " +
                                       std::to_string(n) + " antennas at spacing " + std::to_string(min_spacing));
        }

        // Absolute slack used when checking box and spacing constraints on computed positions.
        double feasibility_slack() const { return 1e-12 * std::max(1.0, aperture); }

        double wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }
    };

    // Sorted antenna coordinates. The constructor re-sorts its input and remembers whether it had to.
    class AntennaPositions
    {
    public:
        AntennaPositions() = default;

        explicit AntennaPositions(RealVector x) : x_(std::move(x))
        {
            detail::require(x_.size() >= 1, "positions must contain at least one antenna");
            detail::require(detail::all_finite(x_), "positions must be finite");
            if (!std::is_sorted(x_.data(), x_.data() + x_.size()))
            {
                std::sort(x_.data(), x_.data() + x_.size());
                reordered_ = true;
            }
        }

        AntennaPositions(std::initializer_list<double> xs)
            : AntennaPositions(RealVector(Eigen::Map<const RealVector>(xs.begin(), static_cast<Eigen::Index>(xs.size()))))
        {
        }

        const RealVector &values() const { return x_; }
        Eigen::Index size() const { return x_.size(); }
        double operator[](Eigen::Index n) const { return x_[n]; }

        // True if the input given at construction was not in ascending order.
        bool was_reordered() const { return reordered_; }

        // Spacing and box constraints: x_{n+1} >= x_n + d_min and 0 <= x_n <= L, up to floating-point slack.
        bool is_feasible(const Scenario &s) const
        {
            const double slack = s.feasibility_slack();
            for (Eigen::Index n = 0; n < x_.size(); ++n)
            {
                if (x_[n] < -slack || x_[n] > s.aperture + slack)
                    return false;
                if (n > 0 && x_[n] + slack < x_[n - 1] + s.min_spacing)
                    return false;
            }
            return true;
        }

    private:
        RealVector x_;
        bool reordered_ = false;
    };

    // Complex transmit beamformer w = u + j z.
    class Beamformer
    {
    public:
        Beamformer() = default;
        explicit Beamformer(ComplexVector w) : w_(std::move(w))
        {
            detail::require(w_.size() >= 1, "beamformer must have at least one entry");
            detail::require(detail::all_finite(w_), "beamformer must be finite");
        }

        const ComplexVector &values() const { return w_; }
        Eigen::Index size() const { return w_.size(); }
        RealVector real() const { return w_.real(); }
        RealVector imag() const { return w_.imag(); }
        double power() const { return w_.squaredNorm(); }

        // Scale to ||w||^2 = p; throws on the zero vector.
        Beamformer scaled_to_power(double p) const
        {
            const double nrm = w_.norm();
            detail::require(nrm > 0.0, "cannot scale a zero beamformer");
            return Beamformer(w_ * (std::sqrt(p) / nrm));
        }

        bool meets_budget(const Scenario &s, double rel_tol = 1e-10) const
        {
            return std::abs(power() - s.power_budget) <= rel_tol * s.power_budget;
        }

    private:
        ComplexVector w_;
    };

    // a_n = exp(j (2 pi / lambda) x_n cos(theta))
    inline ComplexVector steering_vector(const RealVector &x, double theta, double wavelength)
    {
        detail::require(std::isfinite(theta), "steering angle must be finite");
        detail::require(std::isfinite(wavelength) && wavelength > 0.0, "wavelength must be finite and > 0");
        detail::require(detail::all_finite(x), "positions must be finite");
        const double k = 2.0 * std::numbers::pi / wavelength * std::cos(theta);
        ComplexVector a(x.size());
        for (Eigen::Index n = 0; n < x.size(); ++n)
            a[n] = std::polar(1.0, k * x[n]);
        return a;
    }

    inline ComplexVector steering_vector(const AntennaPositions &x, double theta, double wavelength)
    {
        return steering_vector(x.values(), theta, wavelength);
    }

    // |a^H(x, theta) w|^2
    inline double beam_gain(const RealVector &x, const ComplexVector &w, double theta, double wavelength)
    {
        detail::require(x.size() == w.size(), "positions and beamformer dimensions differ");
        const ComplexVector a = steering_vector(x, theta, wavelength);
        return std::norm(a.dot(w)); // Eigen's dot conjugates the left operand
    }

    inline double beam_gain(const AntennaPositions &x, const Beamformer &w, double theta, const Scenario &s)
    {
        return beam_gain(x.values(), w.values(), theta, s.wavelength);
    }

    // Bob's gain and the summed (colluding) eavesdropper gain.
    struct LinkGains
    {
        double bob = 0.0;
        double eves = 0.0;
    };

    inline LinkGains link_gains(const RealVector &x, const ComplexVector &w, const Scenario &s)
    {
        LinkGains g;
        g.bob = beam_gain(x, w, s.bob_angle, s.wavelength);
        for (double th : s.eve_angles)
            g.eves += beam_gain(x, w, th, s.wavelength);
        return g;
    }

    // log2(1 + G0/sigma^2) - log2(1 + sum G_i / sigma^2), no clamp.
    inline double rate_difference(const LinkGains &g, double noise_power)
    {
        return std::log2(1.0 + g.bob / noise_power) - std::log2(1.0 + g.eves / noise_power);
    }

    // Achievable secrecy rate in bps/Hz, clamped at zero.
    inline double secrecy_rate(const AntennaPositions &x, const Beamformer &w, const Scenario &s)
    {
        detail::require(x.size() == w.size(), "positions and beamformer dimensions differ");
        return std::max(0.0, rate_difference(link_gains(x.values(), w.values(), s), s.noise_power));
    }
}

#endif
