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

#ifndef MASEC_IO_HPP
#define MASEC_IO_HPP

#include "solver.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace masec::io
{
    class io_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Parsed scenario document. Fields that the file omits keep the defaults below, which are
    // d_min = lambda/2, L = 10 lambda, step 0.01 and sigma^2 = P_A = 1.
    struct ScenarioFile
    {
        Scenario scenario;
        std::optional<std::size_t> n_antennas;
        SolveConfig solve;
        std::uint64_t seed = 0;
    };

    namespace detail
    {
        using nlohmann::json;

        inline double number(const json &j, const std::string &key)
        {
            if (!j.is_number())
                throw validation_error("key '" + key + "' must be a number");
            return j.get<double>();
        }

        inline std::int64_t integer(const json &j, const std::string &key)
        {
            if (!j.is_number_integer())
                throw validation_error("key '" + key + "' must be an integer");
            return j.get<std::int64_t>();
        }
    }

    inline ScenarioFile parse_scenario(const std::string &text)
    {
        using nlohmann::json;
        using detail::integer;
        using detail::number;

        json doc;
        try
        {
            doc = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw validation_error(std::string("scenario is not valid JSON: ") + e.what());
        }
        if (!doc.is_object())
            throw validation_error("scenario document must be a JSON object");

        static const std::set<std::string> known = {
            "wavelength", "bob_angle_rad", "bob_angle_pi", "eve_angles", "noise_power", "power_budget",
            "aperture", "min_spacing", "n_antennas", "step_size", "tolerances", "seed"};
        for (const auto &[key, value] : doc.items())
            if (!known.contains(key))
                throw validation_error("unknown scenario key '" + key + "'");

        ScenarioFile out;
        Scenario &s = out.scenario;
        if (doc.contains("wavelength"))
            s.wavelength = number(doc["wavelength"], "wavelength");
        s.aperture = 10.0 * s.wavelength;
        s.min_spacing = 0.5 * s.wavelength;

        const bool rad = doc.contains("bob_angle_rad");
        const bool pi_form = doc.contains("bob_angle_pi");
        if (rad == pi_form)
            throw validation_error("exactly one of 'bob_angle_rad' or 'bob_angle_pi' is required");
        const double unit = pi_form ? std::numbers::pi : 1.0;
        s.bob_angle = unit * number(doc[rad ? "bob_angle_rad" : "bob_angle_pi"], "bob_angle");

        if (!doc.contains("eve_angles") || !doc["eve_angles"].is_array())
            throw validation_error("'eve_angles' must be an array (same unit as the bob angle)");
        s.eve_angles.clear();
        for (const auto &a : doc["eve_angles"])
            s.eve_angles.push_back(unit * number(a, "eve_angles"));

        if (doc.contains("noise_power"))
            s.noise_power = number(doc["noise_power"], "noise_power");
        if (doc.contains("power_budget"))
            s.power_budget = number(doc["power_budget"], "power_budget");
        if (doc.contains("aperture"))
            s.aperture = number(doc["aperture"], "aperture");
        if (doc.contains("min_spacing"))
            s.min_spacing = number(doc["min_spacing"], "min_spacing");
        if (doc.contains("n_antennas"))
        {
            const auto n = integer(doc["n_antennas"], "n_antennas");
            if (n < 1)
                throw validation_error("'n_antennas' must be >= 1");
            out.n_antennas = static_cast<std::size_t>(n);
        }
        if (doc.contains("step_size"))
            out.solve.pga.step_size = number(doc["step_size"], "step_size");
        if (doc.contains("tolerances"))
        {
            const json &t = doc["tolerances"];
            if (!t.is_object())
                throw validation_error("'tolerances' must be an object");
            static const std::set<std::string> tol_keys = {"inner_tol", "outer_tol", "max_inner_iters",
                                                           "max_outer_iters"};
            for (const auto &[key, value] : t.items())
                if (!tol_keys.contains(key))
                    throw validation_error("unknown tolerances key '" + key + "'");
            if (t.contains("inner_tol"))
                out.solve.pga.inner_tol = number(t["inner_tol"], "inner_tol");
            if (t.contains("outer_tol"))
                out.solve.outer_tol = number(t["outer_tol"], "outer_tol");
            if (t.contains("max_inner_iters"))
                out.solve.pga.max_inner_iters = static_cast<int>(integer(t["max_inner_iters"], "max_inner_iters"));
            if (t.contains("max_outer_iters"))
                out.solve.max_outer_iters = static_cast<int>(integer(t["max_outer_iters"], "max_outer_iters"));
        }
        if (doc.contains("seed"))
        {
            const json &j = doc["seed"];
            if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
                throw validation_error("'seed' must be a non-negative integer");
            out.seed = j.get<std::uint64_t>();
        }

        s.validate();
        out.solve.validate();
        if (out.n_antennas)
            s.check_feasible(*out.n_antennas);
        return out;
    }

    inline std::string read_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw io_error("cannot open '" + path.string() + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    inline void write_file(const std::filesystem::path &path, const std::string &content)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw io_error("cannot write '" + path.string() + "'");
        out << content;
        if (!out)
            throw io_error("write failed for '" + path.string() + "'");
    }

    inline ScenarioFile load_scenario(const std::filesystem::path &path)
    {
        return parse_scenario(read_file(path));
    }

    // 12 significant digits.
    inline std::string format_number(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }

    // RFC 4180 writer: CRLF line ends, fields quoted only when they need it.
    class CsvWriter
    {
    public:
        explicit CsvWriter(const std::vector<std::string> &header) : columns_(header.size())
        {
            row(header);
        }

        void row(const std::vector<std::string> &fields)
        {
            if (fields.size() != columns_)
                throw std::logic_error("CSV row has the wrong number of fields");
            for (std::size_t c = 0; c < fields.size(); ++c)
            {
                if (c)
                    buf_ += ',';
                buf_ += escape(fields[c]);
            }
            buf_ += "\r\n";
        }

        const std::string &str() const { return buf_; }

        static std::string escape(const std::string &field)
        {
            if (field.find_first_of(",\"\r\n") == std::string::npos)
                return field;
            std::string out = "\"";
            for (char ch : field)
            {
                if (ch == '"')
                    out += '"';
                out += ch;
            }
            out += '"';
            return out;
        }

    private:
        std::size_t columns_;
        std::string buf_;
    };

    struct Solution
    {
        AntennaPositions x;
        Beamformer w;
        double rate = 0.0;
    };

    // {"n_antennas", "final_x": [...], "final_w": [[re, im], ...], "final_rate", ...}
    inline std::string solution_json(const OptimizationTrace &tr)
    {
        nlohmann::ordered_json j;
        j["n_antennas"] = tr.final_x.size();
        std::vector<double> xs(tr.final_x.values().data(), tr.final_x.values().data() + tr.final_x.size());
        j["final_x"] = xs;
        nlohmann::ordered_json w = nlohmann::ordered_json::array();
        for (Eigen::Index n = 0; n < tr.final_w.size(); ++n)
            w.push_back({tr.final_w.values()[n].real(), tr.final_w.values()[n].imag()});
        j["final_w"] = w;
        j["final_rate"] = tr.final_rate;
        j["outer_iterations"] = tr.outer.size();
        j["converged"] = tr.converged;
        return j.dump(2) + "\n";
    }

    inline Solution parse_solution(const std::string &text)
    {
        using nlohmann::json;
        json doc;
        try
        {
            doc = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw validation_error(std::string("solution is not valid JSON: ") + e.what());
        }
        if (!doc.is_object() || !doc.contains("final_x") || !doc.contains("final_w") || !doc["final_x"].is_array() ||
            !doc["final_w"].is_array())
            throw validation_error("solution must contain arrays 'final_x' and 'final_w'");

        const json &jx = doc["final_x"];
        const json &jw = doc["final_w"];
        if (jx.size() != jw.size() || jx.empty())
            throw validation_error("'final_x' and 'final_w' must be non-empty and of equal length");

        RealVector x(static_cast<Eigen::Index>(jx.size()));
        ComplexVector w(static_cast<Eigen::Index>(jw.size()));
        for (std::size_t n = 0; n < jx.size(); ++n)
        {
            const json &p = jw[n];
            if (!jx[n].is_number() || !p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                throw validation_error("malformed solution entry at index " + std::to_string(n));
            x[static_cast<Eigen::Index>(n)] = jx[n].get<double>();
            w[static_cast<Eigen::Index>(n)] = cplx(p[0].get<double>(), p[1].get<double>());
        }
        Solution sol{AntennaPositions(std::move(x)), Beamformer(std::move(w)), 0.0};
        if (doc.contains("final_rate") && doc["final_rate"].is_number())
            sol.rate = doc["final_rate"].get<double>();
        return sol;
    }

    inline std::string outer_trace_csv(const OptimizationTrace &tr)
    {
        CsvWriter csv({"iter", "rate_after_w", "rate_after_x"});
        for (const OuterRecord &r : tr.outer)
            csv.row({std::to_string(r.iter), format_number(r.rate_after_w), format_number(r.rate_after_x)});
        return csv.str();
    }

    inline std::string inner_trace_csv(const std::vector<double> &psi)
    {
        CsvWriter csv({"iter", "psi"});
        for (std::size_t t = 0; t < psi.size(); ++t)
            csv.row({std::to_string(t), format_number(psi[t])});
        return csv.str();
    }

    // `count` angles evenly spaced on [0, pi], both ends included.
    inline std::string beampattern_csv(const AntennaPositions &x, const Beamformer &w, const Scenario &s, int count)
    {
        masec::detail::require(count >= 2, "angle count must be >= 2");
        masec::detail::require(x.size() == w.size(), "positions and beamformer dimensions differ");
        CsvWriter csv({"theta_rad", "gain"});
        for (int k = 0; k < count; ++k)
        {
            const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(count - 1);
            csv.row({format_number(theta), format_number(beam_gain(x, w, theta, s))});
        }
        return csv.str();
    }
}

#endif
