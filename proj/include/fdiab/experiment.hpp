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

#ifndef FDIAB_EXPERIMENT_HPP
#define FDIAB_EXPERIMENT_HPP

#include "fdiab/config.hpp"
#include "fdiab/link_evaluation.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdiab
{
    // One Monte Carlo sample. `scheme` is the transceiver structure; L = 0 marks the fully
    // digital reference, which has no receive RF chains to count.
    struct SweepRow
    {
        ExperimentId experiment = ExperimentId::e1;
        Structure scheme = Structure::subarray;
        Link link = Link::backhaul;
        Duplex duplex = Duplex::fd;
        double snr_db = 0.0;
        double sigma_e = 0.0;
        int L = 0;
        PsKind ps_kind = PsKind::ideal;
        int trial = 0;
        double se_bps_hz = 0.0;
        double rfil_db = 0.0;
    };

    using SweepResult = std::vector<SweepRow>;

    // Strict weak ordering by (experiment, scheme, snr_db, sigma_e, L, trial, link, duplex, ps_kind)
    bool row_less(const SweepRow &a, const SweepRow &b);
    void sort_rows(SweepResult &rows);

    class ExperimentAborted : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Seed of the channel drop used by trial `trial` of experiment `id`. All grid cells of a
    // trial share the drop; CEE draws use their own cell index.
    std::uint64_t trial_seed(std::uint64_t master_seed, ExperimentId id, std::uint64_t cell, int trial);

    // Rows of a single trial, unsorted. Throws whatever the modules throw.
    SweepResult run_trial(const ExperimentConfig &cfg, ExperimentId id, int trial);

    // Runs trial_fn(0 .. trials-1) on `threads` workers and concatenates the rows in trial order
    // before sorting. A throwing trial is logged as "<describe(t)> failed: <what>" and skipped;
    // more than 10% failures throws ExperimentAborted.
    SweepResult run_trials(int trials, int threads, const std::function<SweepResult(int)> &trial_fn,
                           const std::function<std::string(int)> &describe, std::ostream *log);

    // Runs cfg.trials trials of one experiment on cfg.threads workers. Failed trials are
    // reported on `log` with their seed and skipped; more than 10% failures throws
    // ExperimentAborted. The result is sorted and independent of the thread count.
    SweepResult run_experiment(const ExperimentConfig &cfg, ExperimentId id, std::ostream *log = nullptr);

    // Every enabled experiment, concatenated and sorted. Validates the config first.
    SweepResult run_all(const ExperimentConfig &cfg, std::ostream *log = nullptr);

    // Aggregated curve point of a figure
    struct FigurePoint
    {
        std::string figure;
        Structure scheme = Structure::subarray;
        Link link = Link::backhaul;
        Duplex duplex = Duplex::fd;
        PsKind ps_kind = PsKind::ideal;
        double snr_db = 0.0;
        double sigma_e = 0.0;
        int L = 0;
        double rfil_db = 0.0;
        int trials = 0;
        double mean = 0.0;
        double std = 0.0; // Sample standard deviation, 0 for a single trial
    };

    // fig4a/fig4b: e1 backhaul/access; fig5a/fig5b: e2 active/passive; fig6: e3.
    const std::vector<std::string> &figure_ids();
    // Throws ConfigError for an unknown figure id.
    std::vector<FigurePoint> aggregate_figure(const SweepResult &rows, const std::string &figure);
}

#endif
