// SPDX-License-Identifier: Apache-2.0
//
// fdiab - link-level simulator for full-duplex mmWave integrated access and backhaul
// Copyright (C) 2026 The fdiab Authors
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

#include "fdiab/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace fdiab
{
    namespace pt = boost::property_tree;

    std::string to_string(ExperimentId id)
    {
        switch (id)
        {
        case ExperimentId::e1:
            return "e1";
        case ExperimentId::e2:
            return "e2";
        case ExperimentId::e3:
            return "e3";
        }
        return "unknown";
    }

    ExperimentId experiment_from_string(const std::string &s)
    {
        if (s == "e1")
            return ExperimentId::e1;
        if (s == "e2")
            return ExperimentId::e2;
        if (s == "e3")
            return ExperimentId::e3;
        throw ConfigError("Unknown experiment id '" + s + "' (expected e1, e2 or e3).");
    }

    std::string to_string(Structure s)
    {
        switch (s)
        {
        case Structure::fully_connected:
            return "fully_connected";
        case Structure::subarray:
            return "subarray";
        case Structure::full_digital:
            return "full_digital";
        }
        return "unknown";
    }

    Structure structure_from_string(const std::string &s)
    {
        if (s == "fully_connected")
            return Structure::fully_connected;
        if (s == "subarray")
            return Structure::subarray;
        if (s == "full_digital")
            return Structure::full_digital;
        throw ConfigError("Unknown structure '" + s + "' (expected fully_connected, subarray or full_digital).");
    }

    const ExperimentSpec &ExperimentConfig::spec(ExperimentId id) const
    {
        return id == ExperimentId::e1 ? e1 : id == ExperimentId::e2 ? e2 : e3;
    }

    ExperimentSpec &ExperimentConfig::spec(ExperimentId id)
    {
        return id == ExperimentId::e1 ? e1 : id == ExperimentId::e2 ? e2 : e3;
    }

    ExperimentConfig default_experiment_config()
    {
        ExperimentConfig c;
        c.e1.snr_db = {-10, -5, 0, 5, 10, 15, 20};
        c.e1.structures = {Structure::fully_connected, Structure::subarray};
        c.e1.ps_kinds = {PsKind::ideal, PsKind::active, PsKind::passive};

        c.e2.snr_db = {15, 25};
        c.e2.sigma_e = {0, 0.01, 0.03, 0.1, 0.3, 1};
        c.e2.structures = {Structure::subarray, Structure::fully_connected};
        c.e2.ps_kinds = {PsKind::active, PsKind::passive};

        c.e3.snr_db = {-10, -5, 0, 5, 10, 15, 20};
        c.e3.rx_rf_per_subarray = {2, 4, 8};
        return c;
    }

    void ExperimentConfig::validate() const
    {
        auto fail = [](const std::string &rule) { throw ConfigError(rule); };
        if (schema_version != config_schema_version)
            fail("schema_version: expected " + std::to_string(config_schema_version) + ", got " +
                 std::to_string(schema_version));
        if (trials < 1)
            fail("run.trials: must be at least 1");
        if (threads < 1)
            fail("run.threads: must be at least 1");
        system.validate();
        if (!e1.enabled && !e2.enabled && !e3.enabled)
            fail("experiments: at least one of e1, e2, e3 must be enabled");

        for (auto id : {ExperimentId::e1, ExperimentId::e2, ExperimentId::e3})
        {
            const auto &s = spec(id);
            const std::string name = to_string(id);
            if (!s.enabled)
                continue;
            if (s.snr_db.empty())
                fail(name + ".snr_db: sweep must not be empty");
            for (double v : s.snr_db)
                if (!std::isfinite(v))
                    fail(name + ".snr_db: values must be finite");
            if (id != ExperimentId::e3)
            {
                if (s.structures.empty())
                    fail(name + ".structures: list must not be empty");
                for (auto st : s.structures)
                    if (st == Structure::full_digital)
                        fail(name + ".structures: full_digital has no RF stage to evaluate here");
                if (s.ps_kinds.empty())
                    fail(name + ".ps_kinds: list must not be empty");
            }
            if (id == ExperimentId::e2)
            {
                if (s.sigma_e.empty())
                    fail("e2.sigma_e: sweep must not be empty");
                for (double v : s.sigma_e)
                    if (!(v >= 0.0) || !std::isfinite(v))
                        fail("e2.sigma_e: values must be finite and non-negative");
            }
            if (id == ExperimentId::e3)
            {
                if (s.rx_rf_per_subarray.empty())
                    fail("e3.rx_rf_per_subarray: list must not be empty");
                for (int L : s.rx_rf_per_subarray)
                {
                    SystemConfig sys = system;
                    sys.rx_rf_per_subarray = L;
                    try
                    {
                        sys.validate();
                    }
                    catch (const ConfigError &e)
                    {
                        fail("e3.rx_rf_per_subarray = " + std::to_string(L) + ": " + e.what());
                    }
                }
            }
        }
    }

    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string> split_list(const std::string &s)
        {
            std::vector<std::string> out;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ','))
            {
                item = trim(item);
                if (!item.empty())
                    out.push_back(item);
            }
            return out;
        }

        double to_double(const std::string &key, const std::string &v)
        {
            double x = 0.0;
            const auto s = trim(v);
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
            if (ec != std::errc() || p != s.data() + s.size())
                throw ConfigError(key + ": '" + v + "' is not a number");
            return x;
        }

        template <class Int>
        Int to_integer(const std::string &key, const std::string &v)
        {
            Int x = 0;
            const auto s = trim(v);
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
            if (ec != std::errc() || p != s.data() + s.size())
                throw ConfigError(key + ": '" + v + "' is not an integer");
            return x;
        }

        bool to_bool(const std::string &key, const std::string &v)
        {
            const auto s = trim(v);
            if (s == "true" || s == "1")
                return true;
            if (s == "false" || s == "0")
                return false;
            throw ConfigError(key + ": '" + v + "' is not a boolean (true/false)");
        }

        ArrayGeometry to_array(const std::string &key, const std::string &v)
        {
            const auto s = trim(v);
            const auto x = s.find('x');
            if (x == std::string::npos)
                throw ConfigError(key + ": expected ROWSxCOLS, got '" + v + "'");
            ArrayGeometry g;
            g.rows = to_integer<int>(key, s.substr(0, x));
            g.cols = to_integer<int>(key, s.substr(x + 1));
            return g;
        }

        std::string fmt(double x)
        {
            char buf[64];
            const auto r = std::to_chars(buf, buf + sizeof(buf), x);
            return std::string(buf, r.ptr);
        }

        template <class T, class F>
        std::string join(const std::vector<T> &v, F f)
        {
            std::string out;
            for (std::size_t i = 0; i < v.size(); ++i)
                out += (i ? ", " : "") + f(v[i]);
            return out;
        }

        std::string array_str(const ArrayGeometry &g)
        {
            return std::to_string(g.rows) + "x" + std::to_string(g.cols);
        }

        using Setter = void (*)(ExperimentConfig &, const std::string &key, const std::string &value);

        const std::map<std::string, std::map<std::string, Setter>> &setters()
        {
            // clang-format off
            static const std::map<std::string, std::map<std::string, Setter>> table = {
                {"", {
                    {"schema_version", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.schema_version = to_integer<int>(k, v); }},
                }},
                {"run", {
                    {"trials", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.trials = to_integer<int>(k, v); }},
                    {"master_seed", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.master_seed = to_integer<std::uint64_t>(k, v); }},
                    {"threads", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.threads = to_integer<int>(k, v); }},
                }},
                {"system", {
                    {"subcarriers", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.num_subcarriers = to_integer<int>(k, v); }},
                    {"taps", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.num_taps = to_integer<int>(k, v); }},
                    {"users", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.num_users = to_integer<int>(k, v); }},
                    {"donor_array", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.donor_array = to_array(k, v); }},
                    {"iab_array", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.iab_array = to_array(k, v); }},
                    {"user_array", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.user_array = to_array(k, v); }},
                    {"tx_rf_chains", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.tx_rf_chains = to_integer<int>(k, v); }},
                    {"rx_rf_per_subarray", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.rx_rf_per_subarray = to_integer<int>(k, v); }},
                    {"carrier_hz", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.carrier_hz = to_double(k, v); }},
                    {"subcarrier_spacing_hz", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.subcarrier_spacing_hz = to_double(k, v); }},
                    {"clusters", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.num_clusters = to_integer<int>(k, v); }},
                    {"rays_per_cluster", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.rays_per_cluster = to_integer<int>(k, v); }},
                    {"angle_spread_deg", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.angle_spread_deg = to_double(k, v); }},
                    {"rolloff", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.rolloff = to_double(k, v); }},
                    {"si_rician_factor_db", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.si.rician_factor_db = to_double(k, v); }},
                    {"si_nlos_clusters", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.si.nlos_clusters = to_integer<int>(k, v); }},
                    {"si_nlos_rays", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.si.nlos_rays = to_integer<int>(k, v); }},
                    {"sic_db", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.si.pre_digital_sic_db = to_double(k, v); }},
                    {"si_power_db", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.si_power_db = to_double(k, v); }},
                    {"panel_separation_wavelengths", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.panel_separation_wavelengths = to_double(k, v); }},
                    {"noise_power", [](ExperimentConfig &c, const std::string &k, const std::string &v) { c.system.noise_power = to_double(k, v); }},
                }},
            };
            // clang-format on
            return table;
        }

        void set_experiment_key(ExperimentSpec &s, const std::string &key, const std::string &value)
        {
            const auto name = key.substr(key.find('.') + 1);
            if (name == "enabled")
                s.enabled = to_bool(key, value);
            else if (name == "snr_db")
            {
                s.snr_db.clear();
                for (const auto &x : split_list(value))
                    s.snr_db.push_back(to_double(key, x));
            }
            else if (name == "sigma_e")
            {
                s.sigma_e.clear();
                for (const auto &x : split_list(value))
                    s.sigma_e.push_back(to_double(key, x));
            }
            else if (name == "structures")
            {
                s.structures.clear();
                for (const auto &x : split_list(value))
                    s.structures.push_back(structure_from_string(x));
            }
            else if (name == "ps_kinds")
            {
                s.ps_kinds.clear();
                for (const auto &x : split_list(value))
                    s.ps_kinds.push_back(ps_kind_from_string(x));
            }
            else if (name == "rx_rf_per_subarray")
            {
                s.rx_rf_per_subarray.clear();
                for (const auto &x : split_list(value))
                    s.rx_rf_per_subarray.push_back(to_integer<int>(key, x));
            }
            else
                throw ConfigError("Unknown key '" + key + "'.");
        }
    }

    ExperimentConfig parse_config(std::istream &in)
    {
        pt::ptree tree;
        try
        {
            pt::ini_parser::read_ini(in, tree);
        }
        catch (const pt::ini_parser_error &e)
        {
            throw ConfigError(std::string("Malformed config: ") + e.what());
        }

        ExperimentConfig c = default_experiment_config();
        bool saw_version = false;
        for (const auto &[name, node] : tree)
        {
            if (node.empty())
            {
                // Top-level key
                const auto &top = setters().at("");
                if (!top.count(name))
                    throw ConfigError("Unknown key '" + name + "'.");
                top.at(name)(c, name, node.data());
                saw_version |= name == "schema_version";
                continue;
            }
            if (name == "e1" || name == "e2" || name == "e3")
            {
                auto &spec = c.spec(experiment_from_string(name));
                for (const auto &[key, leaf] : node)
                    set_experiment_key(spec, name + "." + key, leaf.data());
                continue;
            }
            const auto sec = setters().find(name);
            if (name.empty() || sec == setters().end())
                throw ConfigError("Unknown section [" + name + "].");
            for (const auto &[key, leaf] : node)
            {
                const auto it = sec->second.find(key);
                if (it == sec->second.end())
                    throw ConfigError("Unknown key '" + name + "." + key + "'.");
                it->second(c, name + "." + key, leaf.data());
            }
        }
        if (!saw_version)
            throw ConfigError("schema_version: missing (expected " + std::to_string(config_schema_version) + ")");
        // Keys of another schema may mean something else, so stop before interpreting them
        if (c.schema_version != config_schema_version)
            throw ConfigError("schema_version: expected " + std::to_string(config_schema_version) + ", got " +
                              std::to_string(c.schema_version));
        return c;
    }

    ExperimentConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("Cannot open config file '" + path + "'.");
        return parse_config(in);
    }

    std::string format_config(const ExperimentConfig &c)
    {
        const auto &s = c.system;
        std::ostringstream o;
        o << "schema_version = " << c.schema_version << "\n\n";
        o << "[run]\n";
        o << "trials = " << c.trials << "\n";
        o << "master_seed = " << c.master_seed << "\n";
        o << "threads = " << c.threads << "\n\n";
        o << "[system]\n";
        o << "subcarriers = " << s.num_subcarriers << "\n";
        o << "taps = " << s.num_taps << "\n";
        o << "users = " << s.num_users << "\n";
        o << "donor_array = " << array_str(s.donor_array) << "\n";
        o << "iab_array = " << array_str(s.iab_array) << "\n";
        o << "user_array = " << array_str(s.user_array) << "\n";
        o << "tx_rf_chains = " << s.tx_rf_chains << "\n";
        o << "rx_rf_per_subarray = " << s.rx_rf_per_subarray << "\n";
        o << "carrier_hz = " << fmt(s.carrier_hz) << "\n";
        o << "subcarrier_spacing_hz = " << fmt(s.subcarrier_spacing_hz) << "\n";
        o << "clusters = " << s.num_clusters << "\n";
        o << "rays_per_cluster = " << s.rays_per_cluster << "\n";
        o << "angle_spread_deg = " << fmt(s.angle_spread_deg) << "\n";
        o << "rolloff = " << fmt(s.rolloff) << "\n";
        o << "si_rician_factor_db = " << fmt(s.si.rician_factor_db) << "\n";
        o << "si_nlos_clusters = " << s.si.nlos_clusters << "\n";
        o << "si_nlos_rays = " << s.si.nlos_rays << "\n";
        o << "sic_db = " << fmt(s.si.pre_digital_sic_db) << "\n";
        o << "si_power_db = " << fmt(s.si_power_db) << "\n";
        o << "panel_separation_wavelengths = " << fmt(s.panel_separation_wavelengths) << "\n";
        o << "noise_power = " << fmt(s.noise_power) << "\n";

        auto structures = [](const std::vector<Structure> &v) { return join(v, [](Structure x) { return to_string(x); }); };
        auto kinds = [](const std::vector<PsKind> &v) { return join(v, [](PsKind x) { return to_string(x); }); };
        auto doubles = [](const std::vector<double> &v) { return join(v, fmt); };

        o << "\n[e1]\n";
        o << "enabled = " << (c.e1.enabled ? "true" : "false") << "\n";
        o << "snr_db = " << doubles(c.e1.snr_db) << "\n";
        o << "structures = " << structures(c.e1.structures) << "\n";
        o << "ps_kinds = " << kinds(c.e1.ps_kinds) << "\n";
        o << "\n[e2]\n";
        o << "enabled = " << (c.e2.enabled ? "true" : "false") << "\n";
        o << "snr_db = " << doubles(c.e2.snr_db) << "\n";
        o << "sigma_e = " << doubles(c.e2.sigma_e) << "\n";
        o << "structures = " << structures(c.e2.structures) << "\n";
        o << "ps_kinds = " << kinds(c.e2.ps_kinds) << "\n";
        o << "\n[e3]\n";
        o << "enabled = " << (c.e3.enabled ? "true" : "false") << "\n";
        o << "snr_db = " << doubles(c.e3.snr_db) << "\n";
        o << "rx_rf_per_subarray = " << join(c.e3.rx_rf_per_subarray, [](int x) { return std::to_string(x); }) << "\n";
        return o.str();
    }
}
