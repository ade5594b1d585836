// Copyright 2026 The qdm authors
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
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdm/analytic.hpp"
#include "qdm/experiments.hpp"
#include "qdm/machines.hpp"

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "min:max:step" (inclusive range) or a comma-separated list.
std::vector<double> parse_values(const std::string& text, const std::string& flag) {
    auto to_double = [&](const std::string& piece) {
        try {
            std::size_t used = 0;
            const double v = std::stod(piece, &used);
            if (used != piece.size()) throw std::invalid_argument(piece);
            return v;
        } catch (const std::exception&) {
            throw UsageError(flag + ": cannot parse number '" + piece + "'");
        }
    };
    std::vector<std::string> pieces;
    const char sep = text.find(':') != std::string::npos ? ':' : ',';
    std::size_t start = 0;
    while (true) {
        const std::size_t stop = text.find(sep, start);
        pieces.push_back(text.substr(start, stop - start));
        if (stop == std::string::npos) break;
        start = stop + 1;
    }
    if (sep == ':') {
        if (pieces.size() != 3) throw UsageError(flag + ": range must be min:max:step");
        return qdm::axis_values(to_double(pieces[0]), to_double(pieces[1]), to_double(pieces[2]));
    }
    std::vector<double> values;
    for (const auto& piece : pieces) values.push_back(to_double(piece));
    if (values.empty()) throw UsageError(flag + ": no values given");
    return values;
}

std::vector<qdm::MachineKind> parse_machines(const std::string& text) {
    if (text == "cdm") return {qdm::MachineKind::Classical};
    if (text == "qdm") return {qdm::MachineKind::Quantum};
    return {qdm::MachineKind::Classical, qdm::MachineKind::Quantum};
}

std::vector<qdm::SecretBits> parse_secrets(const std::string& text) {
    if (text == "all")
        return {qdm::SecretBits(0, 0), qdm::SecretBits(0, 1), qdm::SecretBits(1, 0),
                qdm::SecretBits(1, 1)};
    return {qdm::SecretBits(text[0] - '0', text[1] - '0')};
}

std::string default_out(const std::string& name) {
    const char* dir = std::getenv("QDM_OUT_DIR");
    if (dir == nullptr || *dir == '\0') return name;
    std::string path(dir);
    if (path.back() != '/') path += '/';
    return path + name;
}

std::uint64_t fresh_seed() {
    std::random_device rd;
    const auto now = static_cast<std::uint64_t>(
        std::chrono::steady_clock::now().time_since_epoch().count());
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^ now;
}

// Options shared by every sweep command.
struct RunOptions {
    long long games = 10000;
    std::optional<std::uint64_t> seed;
    std::string out;
    int threads = 0;
    int alpha = 0;
    double xi = 1.0;
    std::string machine = "both";
    std::string secrets = "all";
    std::string gammas = "0";
};

// CLI11's default help flag claims the short name "h", which collides with
// the --h hint option; every command uses a long-only help flag instead.
CLI::App* add_command(CLI::App& parent, const std::string& name, const std::string& desc) {
    CLI::App* cmd = parent.add_subcommand(name, desc);
    cmd->set_help_flag("--help", "print this help message and exit");
    return cmd;
}

void add_run_options(CLI::App* cmd, RunOptions& opts, bool analytic_only) {
    if (!analytic_only) {
        cmd->add_option("--games", opts.games, "games per sweep cell")->capture_default_str();
        cmd->add_option("--seed", opts.seed,
                        "64-bit master seed (generated and printed when omitted)");
        cmd->add_option("--threads", opts.threads, "worker thread cap, 0 = auto")
            ->capture_default_str();
    }
    cmd->add_option("--out", opts.out,
                    "output CSV path (default: <command>.csv in $QDM_OUT_DIR or cwd)");
    cmd->add_option("--alpha", opts.alpha, "ancilla fiducial bit")
        ->check(CLI::IsMember({0, 1}))
        ->capture_default_str();
    cmd->add_option("--xi", opts.xi, "score scale")->capture_default_str();
    cmd->add_option("--machine", opts.machine, "which machines to run")
        ->check(CLI::IsMember({"cdm", "qdm", "both"}))
        ->capture_default_str();
    cmd->add_option("--secrets", opts.secrets, "secret bits to play against")
        ->check(CLI::IsMember({"00", "01", "10", "11", "all"}))
        ->capture_default_str();
}

qdm::SweepSpec base_spec(const RunOptions& opts, bool analytic_only) {
    qdm::SweepSpec spec;
    spec.games_per_cell = opts.games;
    spec.threads = opts.threads;
    spec.alpha = opts.alpha;
    spec.xi = opts.xi;
    spec.machines = parse_machines(opts.machine);
    spec.secrets = parse_secrets(opts.secrets);
    spec.gamma_list = parse_values(opts.gammas, "--gammas");
    spec.analytic_only = analytic_only;
    if (analytic_only) {
        spec.master_seed = 0;
    } else {
        spec.master_seed = opts.seed ? *opts.seed : fresh_seed();
        std::cout << "master seed: " << spec.master_seed << "\n";
    }
    if (opts.machine == "cdm") {
        for (double g : spec.gamma_list)
            if (g != 0.0)
                throw UsageError("--machine cdm conflicts with --gammas: the classical "
                                 "machine has no dephasing rate");
    }
    return spec;
}

void finish_run(const std::vector<qdm::RunRecord>& records, const std::string& out_path) {
    qdm::write_csv(records, out_path);
    for (const auto& group : qdm::summarize(records)) {
        std::cout << group.experiment << ": " << group.cells << " cells, " << group.total_games
                  << " games, max |mean - analytic| = " << group.max_abs_dev_se << " SE\n";
    }
    std::cout << "wrote: " << out_path << "\n";
}

//-------------------------------------------------------------------------
// Commands
//-------------------------------------------------------------------------

void add_grid_command(CLI::App& app, bool analytic_only, const std::string& out_name) {
    auto opts = std::make_shared<RunOptions>();
    auto grid_min = std::make_shared<double>(-0.5);
    auto grid_max = std::make_shared<double>(0.5);
    auto step = std::make_shared<double>(0.01);
    CLI::App* cmd = add_command(
        app, "grid", analytic_only ? "closed-form score surface on the hint grid"
                                   : "Monte Carlo score surface on the hint grid");
    cmd->add_option("--min", *grid_min, "lower hint bound")->capture_default_str();
    cmd->add_option("--max", *grid_max, "upper hint bound")->capture_default_str();
    cmd->add_option("--step", *step, "grid increment")->capture_default_str();
    cmd->add_option("--gammas", opts->gammas, "dephasing rates for the quantum machine")
        ->capture_default_str();
    add_run_options(cmd, *opts, analytic_only);
    cmd->callback([=]() {
        qdm::SweepSpec spec = base_spec(*opts, analytic_only);
        spec.grid_min = *grid_min;
        spec.grid_max = *grid_max;
        spec.step = *step;
        finish_run(qdm::run_grid(spec),
                   opts->out.empty() ? default_out(out_name) : opts->out);
    });
}

void add_symmetric_command(CLI::App& app, bool analytic_only, const std::string& out_name) {
    auto opts = std::make_shared<RunOptions>();
    auto h_text = std::make_shared<std::string>("-0.5:0.5:0.01");
    auto quality = std::make_shared<std::string>("both");
    opts->secrets = "00";
    CLI::App* cmd = add_command(app, "symmetric",
                                "scores along the signed symmetric-hint line "
                                "(positive = good diagonal, negative = poor)");
    cmd->add_option("--h", *h_text, "signed symmetric hints, min:max:step or comma list")
        ->capture_default_str();
    cmd->add_option("--quality", *quality, "restrict to one side of the line")
        ->check(CLI::IsMember({"good", "poor", "both"}))
        ->capture_default_str();
    cmd->add_option("--gammas", opts->gammas, "dephasing rates for the quantum machine")
        ->capture_default_str();
    add_run_options(cmd, *opts, analytic_only);
    cmd->callback([=]() {
        qdm::SymmetricLineSpec line;
        line.base = base_spec(*opts, analytic_only);
        line.h_values = parse_values(*h_text, "--h");
        if (*quality == "good") {
            line.quality = qdm::SymmetricQuality::Good;
            for (double h : line.h_values)
                if (h < 0.0)
                    throw UsageError("--quality good conflicts with negative values in --h");
        } else if (*quality == "poor") {
            line.quality = qdm::SymmetricQuality::Poor;
            for (double h : line.h_values)
                if (h > 0.0)
                    throw UsageError("--quality poor conflicts with positive values in --h");
        }
        finish_run(qdm::run_symmetric(line),
                   opts->out.empty() ? default_out(out_name) : opts->out);
    });
}

void add_decoherence_command(CLI::App& app, bool analytic_only, const std::string& out_name) {
    auto opts = std::make_shared<RunOptions>();
    auto h_text = std::make_shared<std::string>("0.0:0.5:0.01");
    opts->gammas = "0,0.25,0.5,0.75,1.0";
    opts->secrets = "00";
    CLI::App* cmd = add_command(app, "decoherence",
                                "quantum scores under dephasing on good-quadrant "
                                "symmetric hints, next to the classical baseline");
    cmd->add_option("--h", *h_text, "good symmetric hints (h >= 0), min:max:step or comma list")
        ->capture_default_str();
    cmd->add_option("--gammas", opts->gammas, "dephasing rates to sweep")->capture_default_str();
    add_run_options(cmd, *opts, analytic_only);
    cmd->callback([=]() {
        qdm::SweepSpec spec = base_spec(*opts, analytic_only);
        const std::vector<double> h_values = parse_values(*h_text, "--h");
        for (double h : h_values)
            if (h < 0.0)
                throw UsageError("--h: decoherence sweep requires good-quadrant hints (h >= 0)");
        finish_run(qdm::run_decoherence(spec, h_values),
                   opts->out.empty() ? default_out(out_name) : opts->out);
    });
}

int run_verify(long long trials, std::uint64_t seed) {
    using qdm::MachineKind;
    qdm::RngStream rng(seed);
    auto random_hint = [&]() {
        return qdm::HintVector(rng.next_double() - 0.5, rng.next_double() - 0.5);
    };
    bool all_ok = true;
    auto report = [&](const char* name, long long count, double max_dev) {
        const bool ok = max_dev <= qdm::kMatTol;
        all_ok = all_ok && ok;
        std::cout << name << ": " << count << " samples, max deviation = " << max_dev
                  << (ok ? "  PASS" : "  FAIL") << "\n";
    };

    double max_dev = 0.0;
    for (long long t = 0; t < trials; ++t) {
        const MachineKind kind =
            (rng.next_u64() & 1) ? MachineKind::Quantum : MachineKind::Classical;
        const qdm::HintVector h = random_hint();
        const qdm::SecretBits x(static_cast<int>(rng.next_u64() & 1),
                                static_cast<int>(rng.next_u64() & 1));
        const double gamma = kind == MachineKind::Quantum ? rng.next_double() : 0.0;
        const double brute = qdm::brute_force_expected_score(kind, h, x, gamma);
        const double closed = qdm::expected_score(kind, h, x, gamma);
        max_dev = std::max(max_dev, std::abs(brute - closed));
    }
    report("oracle equivalence", trials, max_dev);

    max_dev = 0.0;
    for (int t = 0; t < 100; ++t) {
        const qdm::HintVector h = random_hint();
        const double gamma = rng.next_double();
        const qdm::MachineConfig config{h, 0, gamma, 1.0};
        const double pipeline = qdm::quantum_outcome_probs(config).m1_zero;
        const qdm::PhaseDifference delta = qdm::phase_rule(h.h0, h.h1);
        const double formula = 0.5 + 2.0 * h.h0 * h.h1 +
                               (1.0 - gamma) * qdm::interference_magnitude(h) *
                                   std::cos(delta.radians);
        max_dev = std::max(max_dev, std::abs(pipeline - formula));
    }
    report("pipeline identity", 100, max_dev);

    max_dev = 0.0;
    for (int t = 0; t < 100; ++t) {
        const qdm::HintVector h = random_hint();
        const double gamma = rng.next_double();
        max_dev = std::max(
            max_dev, std::abs(qdm::uniform_secrets_average(MachineKind::Classical, h, 0.0)));
        max_dev = std::max(
            max_dev, std::abs(qdm::uniform_secrets_average(MachineKind::Quantum, h, gamma)));
    }
    report("uniform-secrets null", 200, max_dev);

    std::cout << "verify: " << (all_ok ? "PASS" : "FAIL") << "\n";
    return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secret-bit guessing game: classical and quantum decision machines"};
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);
    int exit_code = 0;

    add_grid_command(app, false, "grid.csv");
    add_symmetric_command(app, false, "symmetric.csv");
    add_decoherence_command(app, false, "decoherence.csv");

    CLI::App* analytic = add_command(
        app, "analytic", "closed-form score surfaces in the same CSV schema (n_games = 0)");
    analytic->require_subcommand(1);
    add_grid_command(*analytic, true, "analytic_grid.csv");
    add_symmetric_command(*analytic, true, "analytic_symmetric.csv");
    add_decoherence_command(*analytic, true, "analytic_decoherence.csv");

    auto trials = std::make_shared<long long>(1000);
    auto verify_seed = std::make_shared<std::uint64_t>(1);
    CLI::App* verify = add_command(
        app, "verify", "cross-check the closed forms against the brute-force oracle");
    verify->add_option("--trials", *trials, "random (machine, hint, secrets, gamma) tuples")
        ->capture_default_str();
    verify->add_option("--seed", *verify_seed, "seed for the check tuples")
        ->capture_default_str();
    verify->callback([&exit_code, trials, verify_seed]() {
        exit_code = run_verify(*trials, *verify_seed);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
