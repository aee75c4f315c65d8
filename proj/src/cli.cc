// Copyright 2026 The twirlkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "twirlkit/errors.h"
#include "twirlkit/reports.h"

namespace twirlkit {

namespace {

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"twirl-verify", "Compare the enumerated twirl samplers with the analytic twirl, exactly."},
    {"bias-scan", "Rescaled bias of Trotter circuits versus system size and twirl mode."},
    {"gadget-scan", "Rescaled bias versus the noise rate on the inserted twirl gates."},
    {"overhead", "Sampling overheads of rescaling and probabilistic error cancellation."},
    {"wn-bound", "Bias of random Clifford circuits against the closed-form bound."},
    {"figs2", "Trace and total-variation distances of rescaled dense simulations."},
    {"budget", "Logical error budget of a fault-tolerant computation."},
};

struct Flags {
    std::string config;
    std::optional<uint64_t> seed;
    std::string out = ".";
    std::optional<size_t> threads;
};

std::string file_stem(const std::string &subcommand) {
    std::string s = subcommand;
    for (char &c : s) {
        if (c == '-') {
            c = '_';
        }
    }
    return s;
}

int execute(const std::string &subcommand, const Flags &flags, std::ostream &out) {
    auto start = std::chrono::steady_clock::now();
    std::ifstream in(flags.config);
    if (!in) {
        throw ConfigError("", "cannot read config file '" + flags.config + "'.");
    }
    Json raw;
    try {
        raw = Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    Json config = load_config(subcommand, raw);
    RunOptions opts;
    opts.seed = flags.seed ? *flags.seed : config.value("seed", uint64_t{1});
    opts.threads = flags.threads ? *flags.threads : config.value("threads", size_t{1});
    if (opts.threads == 0) {
        throw ConfigError("/threads", "must be at least 1.");
    }
    CsvTable table = run_subcommand(subcommand, config, opts);

    std::filesystem::create_directories(flags.out);
    std::string stem = file_stem(subcommand);
    auto csv_path = std::filesystem::path(flags.out) / (stem + ".csv");
    auto manifest_path = std::filesystem::path(flags.out) / (stem + ".manifest.json");
    {
        std::ofstream csv(csv_path);
        csv << table.str();
        if (!csv) {
            throw std::runtime_error("Failed to write " + csv_path.string());
        }
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    Json manifest = {
        {"subcommand", subcommand},
        {"seed", opts.seed},
        {"config_hash", run_config_hash(config, opts.seed)},
        {"version", twirlkit_version()},
        {"threads", opts.threads},
        {"wall_time_ms", ms},
        {"outputs", {csv_path.filename().string()}},
        {"config", config},
    };
    validate_json(manifest, embedded_schema("manifest"));
    {
        std::ofstream m(manifest_path);
        m << manifest.dump(2) << "\n";
        if (!m) {
            throw std::runtime_error("Failed to write " + manifest_path.string());
        }
    }
    if (subcommand == "twirl-verify" || subcommand == "budget") {
        out << table.str();
    }
    out << "wrote " << csv_path.string() << " (" << table.rows.size() << " rows)\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Symmetric Clifford twirling and rescaled error mitigation experiments."};
    app.set_version_flag("--version", std::string(twirlkit_version()));
    app.require_subcommand(1);
    Flags flags;
    std::string chosen;
    for (const auto &[name, help] : kSubcommands) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("--config", flags.config, "JSON config file")->required();
        sub->add_option("--seed", flags.seed, "Master seed (overrides the config)");
        sub->add_option("--out", flags.out, "Output directory")->capture_default_str();
        sub->add_option("--threads", flags.threads, "Worker threads")->check(CLI::PositiveNumber);
        sub->callback([&chosen, name = name] {
            chosen = name;
        });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return 2;
    }
    try {
        return execute(chosen, flags, out);
    } catch (const CapExceededError &e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError &e) {
        err << "config error at " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception &e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

const char *twirlkit_version() {
    return TWIRLKIT_VERSION;
}

}  // namespace twirlkit
