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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "fdiab/config.hpp"
#include "fdiab/experiment.hpp"
#include "fdiab/results_csv.hpp"
#include "fdiab/scenario.hpp"
#include "fdiab/seed.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

using namespace fdiab;

namespace
{
    struct Outcome
    {
        bool pass = true;
        std::vector<std::string> notes;

        void check(bool ok, const std::string &what)
        {
            pass = pass && ok;
            notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
        }
        void info(const std::string &what) { notes.push_back("     " + what); }
    };

    std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, f, a, b, c, d);
        return buf;
    }

    double mean_se(const SweepResult &rows, const std::function<bool(const SweepRow &)> &keep)
    {
        double s = 0.0;
        int n = 0;
        for (const auto &r : rows)
            if (keep(r))
            {
                s += r.se_bps_hz;
                ++n;
            }
        if (n == 0)
            throw std::logic_error("no rows for the requested cell");
        return s / n;
    }

    std::string csv_of(const SweepResult &rows)
    {
        std::ostringstream out;
        write_csv(rows, out);
        return out.str();
    }

    bool unit_modulus(const CMat &m)
    {
        for (Eigen::Index i = 0; i < m.size(); ++i)
            if (m(i) != cdouble(0.0) && std::abs(std::abs(m(i)) - 1.0) > 1e-12)
                return false;
        return true;
    }

    // Entries outside subarray u's rows in u's columns are exactly zero, entries inside are not
    bool block_diagonal(const CMat &rf, const SubarrayPartition &part, int per_block)
    {
        for (int u = 0; u < part.num_subarrays(); ++u)
            for (int j = u * per_block; j < (u + 1) * per_block; ++j)
                for (int i = 0; i < rf.rows(); ++i)
                {
                    const bool inside = i >= part.blocks[u].begin && i < part.blocks[u].end();
                    if ((rf(i, j) != cdouble(0.0)) != inside)
                        return false;
                }
        return true;
    }

    CMat random_cmat(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols)
    {
        std::normal_distribution<double> n(0.0, std::sqrt(0.5));
        CMat m(rows, cols);
        for (Eigen::Index i = 0; i < m.size(); ++i)
            m(i) = cdouble(n(rng), n(rng));
        return m;
    }

    Outcome property_suite(const ExperimentConfig &cfg)
    {
        Outcome o;
        const auto &sys = cfg.system;
        const auto drop = generate_drop(sys, trial_seed(cfg.master_seed, ExperimentId::e1, 0, 0));
        const int U = sys.num_users, L = sys.rx_rf_per_subarray;
        const auto sa = design_transceivers(sys, drop, Structure::subarray, L);
        const auto fc = design_transceivers(sys, drop, Structure::fully_connected, L);

        bool um = true;
        for (const auto *d : {&sa, &fc})
            um = um && unit_modulus(d->donor_tx.rf) && unit_modulus(d->iab_rx.rf) && unit_modulus(d->iab_tx.rf) &&
                 unit_modulus(d->user_rf);
        o.check(um, "unit-modulus RF entries (1e-12)");

        const auto part = partition_subarrays(sys.iab_array.size(), U);
        const int tx_per = sys.tx_rf_chains / U;
        o.check(block_diagonal(sa.iab_rx.rf, part, L) && block_diagonal(sa.iab_tx.rf, part, tx_per) &&
                    block_diagonal(sa.donor_tx.rf, partition_subarrays(sys.donor_array.size(), U), tx_per),
                "block-diagonal subarray RF (exact zeros)");

        double worst = 0.0;
        for (const auto *d : {&sa, &fc})
        {
            for (const auto &bb : d->donor_tx.bb)
                worst = std::max(worst, std::abs((d->donor_tx.rf * bb).squaredNorm() / sys.backhaul_streams() - 1.0));
            for (const auto &bb : d->iab_tx.bb)
                worst = std::max(worst, std::abs((d->iab_tx.rf * bb).squaredNorm() / U - 1.0));
        }
        o.check(worst <= 1e-12, fmt("per-subcarrier transmit power equality, worst rel. error %.2e", worst));

        double mui = 0.0;
        for (const auto *d : {&sa, &fc})
        {
            const auto links = build_links(sys, drop, *d, PsKind::ideal);
            for (std::size_t k = 0; k < links.access.effective.size(); ++k)
            {
                const CMat g = links.access.effective[k] * links.access.precoder[k];
                for (int u = 0; u < U; ++u)
                    for (int v = 0; v < U; ++v)
                        if (u != v)
                            mui = std::max(mui, std::abs(g(u, v)) / std::abs(g(u, u)));
            }
        }
        o.check(mui <= 1e-10, fmt("ZF residual MUI, worst relative amplitude %.2e", mui));

        const auto wb = drop.backhaul.materialize(sys.num_subcarriers);
        double e_t = 0.0, e_f = 0.0;
        for (const auto &t : wb.taps)
            e_t += t.squaredNorm();
        for (const auto &f : wb.freq)
            e_f += f.squaredNorm();
        const double parseval = std::abs(e_f / (sys.num_subcarriers * e_t) - 1.0);
        double dft = 0.0;
        for (int k : {0, 1, sys.num_subcarriers / 2, sys.num_subcarriers - 1})
        {
            CMat h = CMat::Zero(wb.rows(), wb.cols());
            for (int d = 0; d < wb.num_taps(); ++d)
                h += wb.taps[d] * std::polar(1.0, -2.0 * pi * k * d / sys.num_subcarriers);
            dft = std::max(dft, (h - wb.freq[k]).norm() / h.norm());
        }
        o.check(parseval <= 1e-9 && dft <= 1e-9, fmt("DFT %.2e and Parseval %.2e (1e-9)", dft, parseval));

        const auto links = build_links(sys, drop, sa, PsKind::ideal);
        auto quiet = links.backhaul;
        for (auto &m : quiet.rsi_true)
            m.setZero();
        quiet.rsi_estimate = quiet.rsi_true;
        const auto snr = SnrPoint::make(15.0, sys.num_subcarriers, U, sys.noise_power);
        const double fd = se_backhaul(quiet, snr, Duplex::fd).se_bps_hz;
        const double hd = se_backhaul(quiet, snr, Duplex::hd).se_bps_hz;
        o.check(fd == 2.0 * hd, fmt("FD = 2 x HD at zero RSI: %.17g vs 2 x %.17g", fd, hd));

        std::mt19937_64 rng(cfg.master_seed);
        int wins = 0;
        for (int inst = 0; inst < 100; ++inst)
        {
            const CMat h = random_cmat(rng, 8, 4), f = random_cmat(rng, 4, 4) * 0.5;
            const CMat hi = random_cmat(rng, 8, 4), fi = random_cmat(rng, 4, 4) * 0.5;
            const CMat w = mmse_bb_combiner(h, f, 1.0, hi, fi, 1.0, 0.1, CMat::Identity(8, 8));
            const CMat g = h * f, gi = hi * fi;
            const CMat sigma = g * g.adjoint() + gi * gi.adjoint() + 0.1 * CMat::Identity(8, 8);
            auto mse = [&](const CMat &c) {
                const CMat e = CMat::Identity(4, 4) - c.adjoint() * g - g.adjoint() * c + c.adjoint() * sigma * c;
                return RVec(e.diagonal().real());
            };
            const RVec best = mse(w);
            bool ok = true;
            for (int r = 0; r < 1000; ++r)
                ok = ok && (best.array() <= mse(random_cmat(rng, 8, 4)).array() + 1e-12).all();
            wins += ok;
        }
        o.check(wins == 100, fmt("MMSE per-stream MSE <= 1000 random combiners: %.0f/100 instances", wins));

        auto small = cfg;
        small.trials = 3;
        small.e3.rx_rf_per_subarray = {2};
        small.threads = 1;
        const auto a = csv_of(run_experiment(small, ExperimentId::e3));
        small.threads = 3;
        const auto b = csv_of(run_experiment(small, ExperimentId::e3));
        const auto c = csv_of(run_trial(small, ExperimentId::e1, 0));
        const auto d = csv_of(run_trial(small, ExperimentId::e1, 0));
        o.check(a == b && c == d, "deterministic rerun gives byte-identical CSV (1 and 3 threads)");
        return o;
    }

    Outcome rfil_closed_forms()
    {
        Outcome o;
        const auto passive = RfComponentLosses::of(PsKind::passive);
        const auto active = RfComponentLosses::of(PsKind::active);
        const double fc = loss_fully_connected(Side::tx, 256, 4, passive).total_db;
        const double sa = loss_subarray(SubarraySide::tx, 256, 4, 4, passive).total_db;
        o.check(std::abs(fc - 20.8) <= 1e-12, fmt("fully connected tx 256/4 passive = %.15g dB", fc));
        o.check(std::abs(sa - 12.4) <= 1e-12, fmt("subarray tx 256/4 passive = %.15g dB", sa));
        double worst = 0.0;
        for (int n : {16, 64, 256})
            for (int rf : {4, 8})
            {
                for (Side s : {Side::tx, Side::rx})
                    worst = std::max(worst, std::abs(loss_fully_connected(s, n, rf, active).total_db -
                                                     loss_fully_connected(s, n, rf, passive).total_db + 11.1));
                for (auto s : {SubarraySide::tx, SubarraySide::user_rx, SubarraySide::iab_rx})
                    worst = std::max(worst, std::abs(loss_subarray(s, n, rf, 4, active).total_db -
                                                     loss_subarray(s, n, rf, 4, passive).total_db + 11.1));
            }
        o.check(worst <= 1e-12, fmt("active - passive = -11.1 dB on every geometry, worst deviation %.2e", worst));
        return o;
    }

    Outcome fig4_trend(const SweepResult &e1, double seconds)
    {
        Outcome o;
        auto m = [&](Structure st, Link l, Duplex dx, PsKind k) {
            return mean_se(e1, [&](const SweepRow &r) {
                return r.scheme == st && r.link == l && r.duplex == dx && r.ps_kind == k && r.snr_db == 15.0;
            });
        };
        const auto FC = Structure::fully_connected, SA = Structure::subarray;
        struct Band
        {
            Link link;
            double lo, hi;
        };
        for (const auto &b : {Band{Link::backhaul, 14.0, 26.0}, Band{Link::access, 8.0, 16.0}})
        {
            const double fc_fd = m(FC, b.link, Duplex::fd, PsKind::ideal);
            const double sa_fd = m(SA, b.link, Duplex::fd, PsKind::ideal);
            const double gap = fc_fd - sa_fd;
            const double hd_gap = m(FC, b.link, Duplex::hd, PsKind::ideal) - m(SA, b.link, Duplex::hd, PsKind::ideal);
            const std::string name = to_string(b.link);
            o.check(gap >= b.lo && gap <= b.hi,
                    name + fmt(" FD gap FC - SA = %.2f - %.2f = %.2f b/s/Hz, band [%g, ", fc_fd, sa_fd, gap, b.lo) +
                        fmt("%g]", b.hi));
            const double ratio = hd_gap / gap;
            o.check(ratio >= 0.4 && ratio <= 0.6, name + fmt(" HD gap / FD gap = %.2f / %.2f = %.3f, band [0.4, 0.6]",
                                                             hd_gap, gap, ratio));
        }
        for (auto kind : {PsKind::active, PsKind::passive})
            for (auto link : {Link::backhaul, Link::access})
            {
                const double fc = m(FC, link, Duplex::fd, kind), sa = m(SA, link, Duplex::fd, kind);
                const double rel = std::abs(sa - fc) / fc;
                o.check(rel <= 0.15, to_string(kind) + " PS " + to_string(link) +
                                         fmt(" FD: SA %.2f vs FC %.2f, |SA - FC|/FC = %.1f%% (<= 15%%)", sa, fc,
                                             100.0 * rel));
            }
        o.check(seconds < 600.0, fmt("E1 runtime %.1f s (< 600 s)", seconds));
        return o;
    }

    // First sigma_e where mean FD drops below mean HD, interpolated on log(sigma_e)
    std::optional<double> crossing(const std::vector<double> &sigmas, const std::vector<double> &diff)
    {
        if (diff.empty() || diff.front() < 0.0)
            return std::nullopt;
        for (std::size_t i = 1; i < diff.size(); ++i)
            if (diff[i] < 0.0)
            {
                const double t = diff[i - 1] / (diff[i - 1] - diff[i]);
                if (sigmas[i - 1] <= 0.0)
                    return t * sigmas[i];
                return std::exp(std::log(sigmas[i - 1]) + t * (std::log(sigmas[i]) - std::log(sigmas[i - 1])));
            }
        return std::nullopt;
    }

    Outcome fig5_trend(const SweepResult &e2, const ExperimentSpec &spec)
    {
        Outcome o;
        const auto &sig = spec.sigma_e;
        const double lo = spec.snr_db.front(), hi = spec.snr_db.back();
        for (auto st : spec.structures)
        {
            std::optional<double> cross[2][2]; // [kind][snr]
            for (int ki = 0; ki < 2; ++ki)
                for (int si = 0; si < 2; ++si)
                {
                    const auto kind = ki == 0 ? PsKind::active : PsKind::passive;
                    const double snr = si == 0 ? lo : hi;
                    std::vector<double> diff;
                    std::string trace;
                    for (double s : sig)
                    {
                        auto cell = [&](Duplex dx) {
                            return mean_se(e2, [&](const SweepRow &r) {
                                return r.scheme == st && r.ps_kind == kind && r.snr_db == snr && r.sigma_e == s &&
                                       r.duplex == dx;
                            });
                        };
                        diff.push_back(cell(Duplex::fd) - cell(Duplex::hd));
                        trace += fmt(" %.2f", diff.back());
                    }
                    cross[ki][si] = crossing(sig, diff);
                    const std::string name = to_string(st) + " " + to_string(kind) + fmt(" SNR %g dB", snr);
                    o.check(cross[ki][si].has_value(),
                            name + (cross[ki][si] ? fmt(": crossing at sigma_e = %.4g", *cross[ki][si])
                                                  : std::string(": no FD/HD crossing")) +
                                "; FD - HD over sigma_e:" + trace);
                }
            for (int ki = 0; ki < 2; ++ki)
                if (cross[ki][0] && cross[ki][1])
                    o.check(*cross[ki][1] < *cross[ki][0],
                            to_string(st) + " " + (ki == 0 ? "active" : "passive") +
                                ": crossing moves left at the higher SNR");
                else
                    o.check(false, to_string(st) + " " + (ki == 0 ? "active" : "passive") +
                                       ": SNR ordering of crossings undefined (missing crossing)");
            for (int si = 0; si < 2; ++si)
                if (cross[0][si] && cross[1][si])
                    o.check(*cross[1][si] >= *cross[0][si],
                            to_string(st) + fmt(" SNR %g dB: passive crossing >= active crossing", si == 0 ? lo : hi));
                else
                    o.check(false, to_string(st) + fmt(" SNR %g dB: PS ordering undefined (missing crossing)",
                                                       si == 0 ? lo : hi));
        }
        return o;
    }

    Outcome fig6_trend(const SweepResult &e3, const std::vector<int> &Ls)
    {
        Outcome o;
        std::vector<double> imp, loss;
        for (int L : Ls)
        {
            auto m = [&](Duplex dx) {
                return mean_se(e3, [&](const SweepRow &r) {
                    return r.scheme == Structure::subarray && r.L == L && r.duplex == dx && r.snr_db == 15.0;
                });
            };
            const auto s = digital_sic_ability(m(Duplex::fd), m(Duplex::fd_no_dsic), m(Duplex::fd_perfect_sic));
            imp.push_back(s.improvement_pct);
            loss.push_back(s.rate_loss);
            o.info(fmt("L = %.0f: improvement %.1f%%, rate loss %.2f b/s/Hz", L, s.improvement_pct, s.rate_loss));
        }
        bool inc = true, dec = true;
        for (std::size_t i = 1; i < imp.size(); ++i)
        {
            inc = inc && imp[i] > imp[i - 1];
            dec = dec && loss[i] < loss[i - 1];
        }
        o.check(inc, "improvement strictly increasing in L");
        for (std::size_t i = 0; i < Ls.size(); ++i)
        {
            if (Ls[i] == 2)
                o.check(imp[i] >= 15.0 && imp[i] <= 31.0, fmt("L = 2 improvement %.1f%% in [15, 31]", imp[i]));
            if (Ls[i] == 4)
                o.check(imp[i] >= 25.0 && imp[i] <= 41.0, fmt("L = 4 improvement %.1f%% in [25, 41]", imp[i]));
            if (Ls[i] == 8)
                o.check(loss[i] <= 2.0, fmt("L = 8 rate loss %.2f <= 2 b/s/Hz", loss[i]));
        }
        o.check(dec, "rate loss strictly decreasing in L");
        return o;
    }

    Outcome fd_vs_perfect(const SweepResult &e1)
    {
        Outcome o;
        for (auto st : {Structure::subarray, Structure::fully_connected})
        {
            auto m = [&](Duplex dx) {
                return mean_se(e1, [&](const SweepRow &r) {
                    return r.scheme == st && r.link == Link::backhaul && r.duplex == dx && r.ps_kind == PsKind::ideal &&
                           r.snr_db == 15.0;
                });
            };
            const double fd = m(Duplex::fd), perfect = m(Duplex::fd_perfect_sic);
            const double gap = (perfect - fd) / perfect;
            o.check(gap < 0.05, to_string(st) + fmt(": FD %.2f vs perfect SIC %.2f b/s/Hz, gap %.2f%% (< 5%%)", fd,
                                                    perfect, 100.0 * gap));
        }
        return o;
    }

    Outcome statistical_oracles(std::uint64_t master)
    {
        Outcome o;
        const ClusterConfig base;

        const int drops = 2000;
        double power = 0.0;
        for (int s = 0; s < drops; ++s)
            for (const auto &cl : sample_cluster_geometry(base, derive_seed({master, 71, std::uint64_t(s)})))
                for (const auto &r : cl.rays)
                    power += std::norm(r.gain);
        power /= drops;
        o.check(std::abs(power - 1.0) <= 0.02, fmt("Rayleigh ray power sum %.4f over %g drops (1 +- 2%%)", power, drops));

        ClusterConfig c = base;
        c.num_clusters = 500;
        c.rays_per_cluster = 1;
        std::vector<int> counts(20, 0);
        int n = 0;
        for (int s = 0; s < 100; ++s)
            for (const auto &cl : sample_cluster_geometry(c, derive_seed({master, 72, std::uint64_t(s)})))
                for (double az : {cl.aoa_center.azimuth, cl.aod_center.azimuth})
                {
                    ++counts[std::min(19, static_cast<int>((az + pi) / (2.0 * pi) * 20))];
                    ++n;
                }
        double chi2 = 0.0;
        for (int k : counts)
            chi2 += (k - n / 20.0) * (k - n / 20.0) / (n / 20.0);
        o.check(chi2 < 36.191, fmt("azimuth chi-square %.2f over %g samples, 20 bins (< 36.191)", chi2, n));

        std::mt19937_64 rng(master);
        const MatSeq h = {random_cmat(rng, 8, 8)};
        double ratio = 0.0;
        for (int s = 0; s < 1000; ++s)
            ratio += (h[0] - perturb_effective_channel(h, 0.1, derive_seed({master, 73, std::uint64_t(s)}))[0])
                         .squaredNorm() /
                     h[0].squaredNorm();
        ratio /= 1000.0 * 0.01;
        o.check(std::abs(ratio - 1.0) <= 0.05, fmt("CEE variance ratio %.4f over 1000 draws (1 +- 5%%)", ratio));
        return o;
    }

    template <class F>
    auto timed(F &&f, double &seconds)
    {
        const auto t0 = std::chrono::steady_clock::now();
        auto r = f();
        seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"fdiab acceptance checks"};
    int trials = 200, subcarriers = 128;
    int threads = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t seed = 1;
    app.add_option("--trials", trials, "Monte Carlo trials per experiment")->check(CLI::PositiveNumber);
    app.add_option("--subcarriers", subcarriers, "Subcarriers K")->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Master seed");
    CLI11_PARSE(app, argc, argv);

    auto cfg = default_experiment_config();
    cfg.system.num_subcarriers = subcarriers;
    cfg.system.num_taps = std::min(cfg.system.num_taps, subcarriers);
    cfg.trials = trials;
    cfg.threads = threads;
    cfg.master_seed = seed;
    cfg.e1.snr_db = {15.0};
    cfg.e3.snr_db = {15.0};
    cfg.validate();

    std::cout << "fdiab acceptance: K = " << subcarriers << ", " << trials << " trials, " << threads
              << " thread(s), seed " << seed << ", SI power " << cfg.system.si_power_db << " dB\n";

    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
    SweepResult e1, e2, e3;
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    criteria.emplace_back("1 property suite", [&] { return property_suite(cfg); });
    criteria.emplace_back("2 RFIL closed forms", [] { return rfil_closed_forms(); });
    criteria.emplace_back("3 E1 structure gap and RFIL", [&] {
        e1 = timed([&] { return run_experiment(cfg, ExperimentId::e1, &std::cerr); }, t1);
        return fig4_trend(e1, t1);
    });
    criteria.emplace_back("4 E2 FD/HD crossing", [&] {
        e2 = timed([&] { return run_experiment(cfg, ExperimentId::e2, &std::cerr); }, t2);
        auto o = fig5_trend(e2, cfg.e2);
        o.info(fmt("E2 runtime %.1f s", t2));
        return o;
    });
    criteria.emplace_back("5 E3 digital SIC ability", [&] {
        e3 = timed([&] { return run_experiment(cfg, ExperimentId::e3, &std::cerr); }, t3);
        auto o = fig6_trend(e3, cfg.e3.rx_rf_per_subarray);
        o.info(fmt("E3 runtime %.1f s", t3));
        return o;
    });
    criteria.emplace_back("6 FD with digital SIC vs perfect SIC", [&] { return fd_vs_perfect(e1); });
    criteria.emplace_back("7 statistical channel oracles", [&] { return statistical_oracles(seed); });

    int failed = 0;
    for (const auto &[name, run] : criteria)
    {
        Outcome o;
        try
        {
            o = run();
        }
        catch (const std::exception &e)
        {
            o.check(false, std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::cout << "criterion " << name << ": " << (o.pass ? "PASS" : "FAIL") << "\n";
        for (const auto &n : o.notes)
            std::cout << "    " << n << "\n";
        std::cout.flush();
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion/criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
