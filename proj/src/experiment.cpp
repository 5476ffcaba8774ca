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

#include "fdiab/experiment.hpp"
#include "fdiab/scenario.hpp"
#include "fdiab/seed.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <thread>
#include <tuple>

namespace fdiab
{
    bool row_less(const SweepRow &a, const SweepRow &b)
    {
        auto key = [](const SweepRow &r) {
            return std::make_tuple(to_string(r.experiment), to_string(r.scheme), r.snr_db, r.sigma_e, r.L, r.trial,
                                   to_string(r.link), to_string(r.duplex), to_string(r.ps_kind));
        };
        return key(a) < key(b);
    }

    void sort_rows(SweepResult &rows) { std::stable_sort(rows.begin(), rows.end(), row_less); }

    std::uint64_t trial_seed(std::uint64_t master_seed, ExperimentId id, std::uint64_t cell, int trial)
    {
        return derive_seed({master_seed, static_cast<std::uint64_t>(id) + 1, cell, static_cast<std::uint64_t>(trial)});
    }

    namespace
    {
        SweepRow row(ExperimentId id, Structure scheme, Link link, Duplex duplex, double snr_db, double sigma_e, int L,
                     PsKind kind, int trial, double se, double rfil_db)
        {
            return {id, scheme, link, duplex, snr_db, sigma_e, L, kind, trial, se, rfil_db};
        }

        SnrPoint snr_point(const SystemConfig &sys, double snr_db)
        {
            return SnrPoint::make(snr_db, sys.num_subcarriers, sys.num_users, sys.noise_power);
        }

        SweepResult trial_e1(const ExperimentConfig &cfg, int t)
        {
            const auto &sys = cfg.system;
            const auto &spec = cfg.e1;
            const int L = sys.rx_rf_per_subarray;
            const auto drop = generate_drop(sys, trial_seed(cfg.master_seed, ExperimentId::e1, 0, t));
            SweepResult out;
            for (auto st : spec.structures)
            {
                const auto design = design_transceivers(sys, drop, st, L);
                for (auto kind : spec.ps_kinds)
                {
                    const auto links = build_links(sys, drop, design, kind);
                    const double bh_db = links.budgets.backhaul_db();
                    const double ac_db = links.budgets.access_db();
                    for (double snr_db : spec.snr_db)
                    {
                        const auto snr = snr_point(sys, snr_db);
                        for (auto dx : {Duplex::fd, Duplex::hd, Duplex::fd_perfect_sic})
                            out.push_back(row(ExperimentId::e1, st, Link::backhaul, dx, snr_db, 0.0, L, kind, t,
                                              se_backhaul(links.backhaul, snr, dx).se_bps_hz, bh_db));
                        for (auto dx : {Duplex::fd, Duplex::hd})
                            out.push_back(row(ExperimentId::e1, st, Link::access, dx, snr_db, 0.0, L, kind, t,
                                              se_access(links.access, snr, dx).sum.se_bps_hz, ac_db));
                    }
                }
            }
            return out;
        }

        SweepResult trial_e2(const ExperimentConfig &cfg, int t)
        {
            const auto &sys = cfg.system;
            const auto &spec = cfg.e2;
            const int L = sys.rx_rf_per_subarray;
            const auto drop = generate_drop(sys, trial_seed(cfg.master_seed, ExperimentId::e2, 0, t));
            SweepResult out;
            std::uint64_t cell = 0;
            for (auto st : spec.structures)
            {
                const auto design = design_transceivers(sys, drop, st, L);
                for (auto kind : spec.ps_kinds)
                {
                    const auto links = build_links(sys, drop, design, kind);
                    const double db = links.budgets.backhaul_db();
                    std::vector<double> hd;
                    for (double snr_db : spec.snr_db)
                        hd.push_back(se_backhaul(links.backhaul, snr_point(sys, snr_db), Duplex::hd).se_bps_hz);
                    for (double sigma : spec.sigma_e)
                    {
                        // The estimate is drawn once per cell and shared by every SNR point
                        const auto seed = trial_seed(cfg.master_seed, ExperimentId::e2, ++cell, t);
                        const auto link = with_channel_estimation_error(links.backhaul, sigma, seed);
                        for (std::size_t i = 0; i < spec.snr_db.size(); ++i)
                        {
                            const double snr_db = spec.snr_db[i];
                            out.push_back(row(ExperimentId::e2, st, Link::backhaul, Duplex::fd, snr_db, sigma, L, kind,
                                              t, se_backhaul(link, snr_point(sys, snr_db), Duplex::fd).se_bps_hz,
                                              db));
                            out.push_back(row(ExperimentId::e2, st, Link::backhaul, Duplex::hd, snr_db, sigma, L, kind,
                                              t, hd[i], db));
                        }
                    }
                }
            }
            return out;
        }

        SweepResult trial_e3(const ExperimentConfig &cfg, int t)
        {
            const auto &sys = cfg.system;
            const auto &spec = cfg.e3;
            const auto drop = generate_drop(sys, trial_seed(cfg.master_seed, ExperimentId::e3, 0, t));
            const auto kind = PsKind::ideal;
            SweepResult out;

            auto add_hybrid = [&](Structure st, int L, std::initializer_list<Duplex> modes) {
                const auto links = build_links(sys, drop, design_transceivers(sys, drop, st, L), kind);
                for (double snr_db : spec.snr_db)
                {
                    const auto snr = snr_point(sys, snr_db);
                    for (auto dx : modes)
                        out.push_back(row(ExperimentId::e3, st, Link::backhaul, dx, snr_db, 0.0, L, kind, t,
                                          se_backhaul(links.backhaul, snr, dx).se_bps_hz, 0.0));
                }
            };

            for (int L : spec.rx_rf_per_subarray)
                add_hybrid(Structure::subarray, L, {Duplex::fd, Duplex::fd_no_dsic, Duplex::fd_perfect_sic});
            add_hybrid(Structure::fully_connected, sys.rx_rf_per_subarray, {Duplex::fd, Duplex::fd_perfect_sic});
            for (double snr_db : spec.snr_db)
                out.push_back(row(ExperimentId::e3, Structure::full_digital, Link::backhaul, Duplex::fd_perfect_sic,
                                  snr_db, 0.0, 0, kind, t,
                                  se_full_digital(drop.backhaul, drop.backhaul_gains, sys.backhaul_streams(),
                                                  snr_point(sys, snr_db)),
                                  0.0));
            return out;
        }
    }

    SweepResult run_trial(const ExperimentConfig &cfg, ExperimentId id, int trial)
    {
        switch (id)
        {
        case ExperimentId::e1:
            return trial_e1(cfg, trial);
        case ExperimentId::e2:
            return trial_e2(cfg, trial);
        case ExperimentId::e3:
            return trial_e3(cfg, trial);
        }
        return {};
    }

    SweepResult run_trials(int trials, int threads, const std::function<SweepResult(int)> &trial_fn,
                           const std::function<std::string(int)> &describe, std::ostream *log)
    {
        std::vector<SweepResult> results(trials);
        std::vector<std::optional<std::string>> errors(trials);
        std::atomic<int> next{0};

        auto worker = [&] {
            for (int t = next++; t < trials; t = next++)
            {
                try
                {
                    results[t] = trial_fn(t);
                }
                catch (const std::exception &e)
                {
                    errors[t] = e.what();
                }
            }
        };

        const int workers = std::max(1, std::min(threads, trials));
        std::vector<std::thread> pool;
        for (int w = 1; w < workers; ++w)
            pool.emplace_back(worker);
        worker();
        for (auto &th : pool)
            th.join();

        // Logged after the join so the message order does not depend on scheduling
        int failed = 0;
        SweepResult out;
        for (int t = 0; t < trials; ++t)
        {
            if (errors[t])
            {
                ++failed;
                if (log)
                    *log << "fdiab: " << describe(t) << " failed: " << *errors[t] << "\n";
                continue;
            }
            out.insert(out.end(), results[t].begin(), results[t].end());
        }
        if (10 * failed > trials)
            throw ExperimentAborted(std::to_string(failed) + " of " + std::to_string(trials) +
                                    " trials failed (limit 10%)");
        sort_rows(out);
        return out;
    }

    SweepResult run_experiment(const ExperimentConfig &cfg, ExperimentId id, std::ostream *log)
    {
        const auto describe = [&](int t) {
            return to_string(id) + " trial " + std::to_string(t) + " (seed " +
                   std::to_string(trial_seed(cfg.master_seed, id, 0, t)) + ")";
        };
        try
        {
            return run_trials(
                cfg.trials, cfg.threads, [&](int t) { return run_trial(cfg, id, t); }, describe, log);
        }
        catch (const ExperimentAborted &e)
        {
            throw ExperimentAborted(to_string(id) + ": " + e.what());
        }
    }

    SweepResult run_all(const ExperimentConfig &cfg, std::ostream *log)
    {
        cfg.validate();
        SweepResult out;
        for (auto id : {ExperimentId::e1, ExperimentId::e2, ExperimentId::e3})
        {
            if (!cfg.spec(id).enabled)
                continue;
            auto rows = run_experiment(cfg, id, log);
            out.insert(out.end(), rows.begin(), rows.end());
        }
        sort_rows(out);
        return out;
    }

    const std::vector<std::string> &figure_ids()
    {
        static const std::vector<std::string> ids = {"fig4a", "fig4b", "fig5a", "fig5b", "fig6"};
        return ids;
    }

    std::vector<FigurePoint> aggregate_figure(const SweepResult &rows, const std::string &figure)
    {
        std::function<bool(const SweepRow &)> keep;
        if (figure == "fig4a")
            keep = [](const SweepRow &r) { return r.experiment == ExperimentId::e1 && r.link == Link::backhaul; };
        else if (figure == "fig4b")
            keep = [](const SweepRow &r) { return r.experiment == ExperimentId::e1 && r.link == Link::access; };
        else if (figure == "fig5a")
            keep = [](const SweepRow &r) { return r.experiment == ExperimentId::e2 && r.ps_kind == PsKind::active; };
        else if (figure == "fig5b")
            keep = [](const SweepRow &r) { return r.experiment == ExperimentId::e2 && r.ps_kind == PsKind::passive; };
        else if (figure == "fig6")
            keep = [](const SweepRow &r) { return r.experiment == ExperimentId::e3; };
        else
            throw ConfigError("Unknown figure id '" + figure + "' (expected fig4a, fig4b, fig5a, fig5b or fig6).");

        using Key = std::tuple<std::string, std::string, std::string, std::string, double, double, int>;
        struct Acc
        {
            SweepRow first;
            double sum = 0.0, sum_sq = 0.0;
            int n = 0;
        };
        std::map<Key, Acc> cells;
        for (const auto &r : rows)
        {
            if (!keep(r))
                continue;
            const Key k{to_string(r.scheme), to_string(r.link), to_string(r.duplex), to_string(r.ps_kind),
                        r.snr_db, r.sigma_e, r.L};
            auto &a = cells[k];
            if (a.n == 0)
                a.first = r;
            a.sum += r.se_bps_hz;
            a.sum_sq += r.se_bps_hz * r.se_bps_hz;
            ++a.n;
        }

        std::vector<FigurePoint> out;
        for (const auto &[k, a] : cells)
        {
            FigurePoint p;
            p.figure = figure;
            p.scheme = a.first.scheme;
            p.link = a.first.link;
            p.duplex = a.first.duplex;
            p.ps_kind = a.first.ps_kind;
            p.snr_db = a.first.snr_db;
            p.sigma_e = a.first.sigma_e;
            p.L = a.first.L;
            p.rfil_db = a.first.rfil_db;
            p.trials = a.n;
            p.mean = a.sum / a.n;
            p.std = a.n > 1 ? std::sqrt(std::max(0.0, (a.sum_sq - a.n * p.mean * p.mean) / (a.n - 1))) : 0.0;
            out.push_back(p);
        }
        return out;
    }
}
