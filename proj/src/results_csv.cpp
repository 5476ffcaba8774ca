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

#include "fdiab/results_csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fdiab
{
    namespace
    {
        std::string g6(double x)
        {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6g", x);
            return buf;
        }

        std::vector<std::string> split(const std::string &line)
        {
            std::vector<std::string> out;
            std::stringstream ss(line);
            std::string f;
            while (std::getline(ss, f, ','))
                out.push_back(f);
            if (!line.empty() && line.back() == ',')
                out.emplace_back();
            return out;
        }

        template <class T>
        T number(const std::string &s, int line)
        {
            T x{};
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
            if (ec != std::errc() || p != s.data() + s.size())
                throw ConfigError("CSV line " + std::to_string(line) + ": '" + s + "' is not a number");
            return x;
        }
    }

    const std::string &csv_header()
    {
        static const std::string h = "experiment,scheme,link,duplex,snr_db,sigma_e,L,ps_kind,trial,se_bps_hz,rfil_db";
        return h;
    }

    void write_csv(const SweepResult &rows, std::ostream &out)
    {
        if (rows.empty())
            throw DimensionError("write_csv: empty result");
        SweepResult sorted = rows;
        sort_rows(sorted);
        out << csv_header() << "\n";
        for (const auto &r : sorted)
            out << to_string(r.experiment) << ',' << to_string(r.scheme) << ',' << to_string(r.link) << ','
                << to_string(r.duplex) << ',' << g6(r.snr_db) << ',' << g6(r.sigma_e) << ',' << r.L << ','
                << to_string(r.ps_kind) << ',' << r.trial << ',' << g6(r.se_bps_hz) << ',' << g6(r.rfil_db) << "\n";
    }

    void write_csv(const SweepResult &rows, const std::string &path)
    {
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw IoError("Cannot open '" + path + "' for writing.");
        write_csv(rows, f);
        if (!f)
            throw IoError("Write to '" + path + "' failed.");
    }

    SweepResult read_csv(std::istream &in)
    {
        std::string line;
        if (!std::getline(in, line) || line != csv_header())
            throw ConfigError("CSV header does not match '" + csv_header() + "'.");
        SweepResult rows;
        int n = 1;
        while (std::getline(in, line))
        {
            ++n;
            if (line.empty())
                continue;
            const auto f = split(line);
            if (f.size() != 11)
                throw ConfigError("CSV line " + std::to_string(n) + ": expected 11 fields");
            SweepRow r;
            r.experiment = experiment_from_string(f[0]);
            r.scheme = structure_from_string(f[1]);
            r.link = link_from_string(f[2]);
            r.duplex = duplex_from_string(f[3]);
            r.snr_db = number<double>(f[4], n);
            r.sigma_e = number<double>(f[5], n);
            r.L = number<int>(f[6], n);
            r.ps_kind = ps_kind_from_string(f[7]);
            r.trial = number<int>(f[8], n);
            r.se_bps_hz = number<double>(f[9], n);
            r.rfil_db = number<double>(f[10], n);
            rows.push_back(r);
        }
        return rows;
    }

    SweepResult read_csv(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw IoError("Cannot open '" + path + "'.");
        return read_csv(f);
    }

    void write_figure_csv(const std::vector<FigurePoint> &points, std::ostream &out)
    {
        out << "figure,scheme,link,duplex,ps_kind,snr_db,sigma_e,L,rfil_db,trials,mean_se,std_se\n";
        for (const auto &p : points)
            out << p.figure << ',' << to_string(p.scheme) << ',' << to_string(p.link) << ',' << to_string(p.duplex)
                << ',' << to_string(p.ps_kind) << ',' << g6(p.snr_db) << ',' << g6(p.sigma_e) << ',' << p.L << ','
                << g6(p.rfil_db) << ',' << p.trials << ',' << g6(p.mean) << ',' << g6(p.std) << "\n";
    }

    void write_rfil_budgets(const SystemConfig &cfg, std::ostream &out)
    {
        out << "side,structure,ps_kind,total_db\n";
        for (auto st : {Structure::fully_connected, Structure::subarray})
            for (auto kind : {PsKind::ideal, PsKind::active, PsKind::passive})
            {
                const auto b = rfil_budgets(cfg, st, cfg.rx_rf_per_subarray, kind);
                const std::pair<const char *, const RfilBudget *> nodes[] = {
                    {"donor_tx", &b.donor_tx}, {"iab_rx", &b.iab_rx}, {"iab_tx", &b.iab_tx}, {"user_rx", &b.user_rx}};
                for (const auto &[name, budget] : nodes)
                    out << name << ',' << to_string(st) << ',' << to_string(kind) << ',' << g6(budget->total_db)
                        << "\n";
            }
    }
}
