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

// Command-line front end: run sweeps, validate configs, aggregate figures.

#include "fdiab/config.hpp"
#include "fdiab/experiment.hpp"
#include "fdiab/results_csv.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace fdiab;

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_runtime = 1;
    constexpr int exit_config = 2;

    ExperimentConfig config_or_default(const std::string &path)
    {
        return path.empty() ? default_experiment_config() : load_config(path);
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"fdiab: full-duplex mmWave IAB link-level simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path, in_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials, threads;
    std::vector<std::string> figures;

    auto *run = app.add_subcommand("run", "Run every enabled experiment and write per-trial CSV rows");
    run->add_option("--config", config_path, "Config file (defaults are used when omitted)");
    run->add_option("--out", out_path, "Output CSV")->required();
    run->add_option("--seed", seed, "Master seed (overrides run.master_seed)");
    run->add_option("--trials", trials, "Monte Carlo trials (overrides run.trials)");
    run->add_option("--threads", threads, "Worker threads (overrides run.threads)");

    auto *validate = app.add_subcommand("validate", "Check a config file without running anything");
    validate->add_option("--config", config_path, "Config file (defaults are used when omitted)");

    auto *fig = app.add_subcommand("figures", "Aggregate a run CSV into mean and std per figure curve point");
    fig->add_option("--in", in_path, "CSV written by run")->required();
    fig->add_option("--out", out_path, "Aggregated CSV")->required();
    fig->add_option("--figure", figures, "Figure ids (fig4a fig4b fig5a fig5b fig6); all when omitted");

    auto *print = app.add_subcommand("print-config", "Print the effective config in file form");
    print->add_option("--config", config_path, "Config file (defaults are used when omitted)");

    auto *rfil = app.add_subcommand("rfil", "Print closed-form RF insertion loss budgets as CSV");
    rfil->add_option("--config", config_path, "Config file (defaults are used when omitted)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (*run)
        {
            auto cfg = config_or_default(config_path);
            if (seed)
                cfg.master_seed = *seed;
            if (trials)
                cfg.trials = *trials;
            if (threads)
                cfg.threads = *threads;
            const auto rows = run_all(cfg, &std::cerr);
            write_csv(rows, out_path);
        }
        else if (*validate)
        {
            config_or_default(config_path).validate();
            std::cout << "config OK\n";
        }
        else if (*fig)
        {
            const auto rows = read_csv(in_path);
            if (figures.empty())
                figures = figure_ids();
            std::vector<FigurePoint> points;
            for (const auto &id : figures)
            {
                const auto p = aggregate_figure(rows, id);
                points.insert(points.end(), p.begin(), p.end());
            }
            std::ofstream out(out_path, std::ios::binary);
            if (!out)
                throw IoError("Cannot open '" + out_path + "' for writing.");
            write_figure_csv(points, out);
        }
        else if (*print)
        {
            const auto cfg = config_or_default(config_path);
            cfg.validate();
            std::cout << format_config(cfg);
        }
        else if (*rfil)
        {
            const auto cfg = config_or_default(config_path);
            cfg.validate();
            write_rfil_budgets(cfg.system, std::cout);
        }
    }
    catch (const ConfigError &e)
    {
        std::cerr << "fdiab: configuration error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "fdiab: error: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_ok;
}
