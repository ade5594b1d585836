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

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "qdm/analytic.hpp"
#include "qdm/machines.hpp"
#include "qdm/rng.hpp"

namespace qdm {

enum class ExperimentKind { Grid, Symmetric, Decoherence };

inline const char* experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Grid: return "grid";
        case ExperimentKind::Symmetric: return "symmetric";
        default: return "decoherence";
    }
}

// One sweep cell's Monte Carlo estimate next to its closed-form reference.
struct RunRecord {
    ExperimentKind experiment = ExperimentKind::Grid;
    MachineKind machine = MachineKind::Classical;
    int x0 = 0;
    int x1 = 0;
    double h0 = 0.0;
    double h1 = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    long long n_games = 0;
    double mean_score = 0.0;
    double std_err = 0.0;
    double analytic_score = 0.0;
};

struct SweepSpec {
    double grid_min = -0.5;
    double grid_max = 0.5;
    double step = 0.01;
    long long games_per_cell = 10000;
    std::vector<MachineKind> machines = {MachineKind::Classical, MachineKind::Quantum};
    std::vector<SecretBits> secrets = {SecretBits(0, 0), SecretBits(0, 1),
                                       SecretBits(1, 0), SecretBits(1, 1)};
    std::vector<double> gamma_list = {0.0};
    std::uint64_t master_seed = 0;
    int threads = 0;  // worker cap; 0 = hardware concurrency
    int alpha = 0;
    double xi = 1.0;
    bool analytic_only = false;  // emit n_games = 0 rows holding the exact scores
};

enum class SymmetricQuality { Good, Poor, Both };

// Signed symmetric-hint line: positive values walk the good diagonal of the
// chosen secrets, negative values the poor one.
struct SymmetricLineSpec {
    SweepSpec base;
    std::vector<double> h_values;
    SymmetricQuality quality = SymmetricQuality::Both;
};

//=========================================================================
// Axis and hint construction
//=========================================================================

// lo, lo + step, ... up to hi inclusive. Values within a relative whisker of
// zero or of the hint bounds are snapped exactly there: the experiments put
// points exactly on the axes, where the phase rule tests h0*h1 == 0 exactly.
inline std::vector<double> axis_values(double lo, double hi, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw std::domain_error("step must be positive");
    if (!(lo <= hi)) throw std::domain_error("axis range is empty");
    const double snap = step * 1e-9;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> values;
    values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double v = lo + static_cast<double>(i) * step;
        if (std::abs(v) < snap) v = 0.0;
        if (std::abs(v - 0.5) < snap) v = 0.5;
        if (std::abs(v + 0.5) < snap) v = -0.5;
        values.push_back(v);
    }
    return values;
}

// Hint at signed coordinate h along the symmetric diagonals of the given
// secrets: toward the best corner for h > 0, toward the worst for h < 0.
inline HintVector symmetric_hint(double signed_h, const SecretBits& secrets) {
    const double magnitude = std::abs(signed_h);
    require_hint_component(magnitude, "|h|");
    const auto dir = signed_h >= 0.0 ? best_hint_signs(secrets) : worst_hint_signs(secrets);
    return HintVector(dir.first * magnitude, dir.second * magnitude);
}

//=========================================================================
// Cell evaluation
//=========================================================================

namespace detail {

struct SweepCell {
    ExperimentKind tag;
    MachineKind machine;
    SecretBits secrets;
    double gamma;  // always 0 for the classical machine
    HintVector hint;
    std::uint64_t seed;
};

inline std::uint64_t cell_seed(std::uint64_t master, ExperimentKind tag, MachineKind mk,
                               const SecretBits& x, std::size_t gamma_index,
                               std::size_t i0, std::size_t i1) {
    return SeedHasher(master)
        .absorb(static_cast<std::uint64_t>(tag) + 1)
        .absorb(mk == MachineKind::Classical ? 0 : 1)
        .absorb(static_cast<std::uint64_t>(x.x0))
        .absorb(static_cast<std::uint64_t>(x.x1))
        .absorb(gamma_index)
        .absorb(i0)
        .absorb(i1)
        .finish();
}

inline void validate_spec(const SweepSpec& spec) {
    if (!(spec.step > 0.0)) throw std::domain_error("step must be positive");
    if (!spec.analytic_only && spec.games_per_cell < 1)
        throw std::domain_error("games_per_cell must be at least 1");
    if (!(spec.grid_min >= -0.5 - kMatTol && spec.grid_max <= 0.5 + kMatTol))
        throw std::domain_error("grid bounds must lie within [-1/2, 1/2]");
    if (spec.threads < 0) throw std::domain_error("threads must be >= 0");
    if (spec.machines.empty()) throw std::domain_error("no machines selected");
    if (spec.secrets.empty()) throw std::domain_error("no secrets selected");
    if (spec.gamma_list.empty()) throw std::domain_error("no dephasing rates given");
    for (double g : spec.gamma_list) require_rate(g);
}

inline RunRecord evaluate_cell(const SweepCell& cell, const SweepSpec& spec) {
    RunRecord record;
    record.experiment = cell.tag;
    record.machine = cell.machine;
    record.x0 = cell.secrets.x0;
    record.x1 = cell.secrets.x1;
    record.h0 = cell.hint.h0;
    record.h1 = cell.hint.h1;
    record.gamma = cell.gamma;
    record.delta = phase_rule(cell.hint.h0, cell.hint.h1).radians;
    record.analytic_score =
        expected_score(cell.machine, cell.hint, cell.secrets, cell.gamma, spec.xi);
    if (spec.analytic_only) {
        record.mean_score = record.analytic_score;
        return record;
    }

    const MachineConfig config{cell.hint, spec.alpha, cell.gamma, spec.xi};
    RngStream rng(cell.seed);
    const long long games = spec.games_per_cell;
    double sum = 0.0;
    double sum_sq = 0.0;
    auto accumulate = [&](double s) {
        sum += s;
        sum_sq += s * s;
    };
    if (cell.machine == MachineKind::Classical) {
        const PreparedClassical machine = prepare_classical(config);
        for (long long g = 0; g < games; ++g) accumulate(sample_game(machine, cell.secrets, rng).score);
    } else {
        const PreparedQuantum machine = prepare_quantum(config);
        for (long long g = 0; g < games; ++g) accumulate(sample_game(machine, cell.secrets, rng).score);
    }
    const double n = static_cast<double>(games);
    record.n_games = games;
    record.mean_score = sum / n;
    double variance = 0.0;
    if (games > 1)
        variance = std::max(0.0, (sum_sq - n * record.mean_score * record.mean_score) / (n - 1.0));
    record.std_err = std::sqrt(variance / n);
    return record;
}

// Evaluates cells on a small worker pool. Records land in spec order no
// matter which worker finishes first, so output is reproducible under any
// thread count.
inline std::vector<RunRecord> run_cells(const std::vector<SweepCell>& cells,
                                        const SweepSpec& spec) {
    std::vector<RunRecord> records(cells.size());
    if (cells.empty()) return records;

    unsigned workers = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                        : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<std::size_t>(workers, cells.size());

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto work = [&]() {
        try {
            for (std::size_t i; (i = next.fetch_add(1)) < cells.size();)
                records[i] = evaluate_cell(cells[i], spec);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return records;
}

}  // namespace detail

//=========================================================================
// Experiments
//=========================================================================

// Full hint-grid sweep: one record per (machine, secrets, gamma, h0, h1).
// The classical machine is gamma-independent and is emitted once, at
// gamma = 0, regardless of the gamma list.
inline std::vector<RunRecord> run_grid(const SweepSpec& spec) {
    detail::validate_spec(spec);
    const std::vector<double> axis = axis_values(spec.grid_min, spec.grid_max, spec.step);
    std::vector<detail::SweepCell> cells;
    for (MachineKind mk : spec.machines) {
        const bool classical = mk == MachineKind::Classical;
        const std::size_t gamma_count = classical ? 1 : spec.gamma_list.size();
        for (const SecretBits& x : spec.secrets) {
            for (std::size_t gi = 0; gi < gamma_count; ++gi) {
                const double gamma = classical ? 0.0 : spec.gamma_list[gi];
                for (std::size_t i0 = 0; i0 < axis.size(); ++i0) {
                    for (std::size_t i1 = 0; i1 < axis.size(); ++i1) {
                        cells.push_back({ExperimentKind::Grid, mk, x, gamma,
                                         HintVector(axis[i0], axis[i1]),
                                         detail::cell_seed(spec.master_seed, ExperimentKind::Grid,
                                                           mk, x, gi, i0, i1)});
                    }
                }
            }
        }
    }
    return detail::run_cells(cells, spec);
}

// Symmetric-hint line: one record per (machine, secrets, gamma, signed h).
inline std::vector<RunRecord> run_symmetric(const SymmetricLineSpec& line) {
    detail::validate_spec(line.base);
    if (line.h_values.empty()) throw std::domain_error("no symmetric hint values given");
    std::vector<double> h_values;
    for (double h : line.h_values) {
        require_hint_component(h, "symmetric h");
        if (line.quality == SymmetricQuality::Good && h < 0.0) continue;
        if (line.quality == SymmetricQuality::Poor && h > 0.0) continue;
        h_values.push_back(h);
    }
    std::vector<detail::SweepCell> cells;
    for (MachineKind mk : line.base.machines) {
        const bool classical = mk == MachineKind::Classical;
        const std::size_t gamma_count = classical ? 1 : line.base.gamma_list.size();
        for (const SecretBits& x : line.base.secrets) {
            for (std::size_t gi = 0; gi < gamma_count; ++gi) {
                const double gamma = classical ? 0.0 : line.base.gamma_list[gi];
                for (std::size_t i = 0; i < h_values.size(); ++i) {
                    cells.push_back({ExperimentKind::Symmetric, mk, x, gamma,
                                     symmetric_hint(h_values[i], x),
                                     detail::cell_seed(line.base.master_seed,
                                                       ExperimentKind::Symmetric, mk, x, gi, i, 0)});
                }
            }
        }
    }
    return detail::run_cells(cells, line.base);
}

// Decoherence sweep over good-quadrant symmetric hints: quantum records per
// (gamma, h) next to the gamma-independent classical baseline.
inline std::vector<RunRecord> run_decoherence(const SweepSpec& spec,
                                              const std::vector<double>& h_values) {
    detail::validate_spec(spec);
    if (h_values.empty()) throw std::domain_error("no symmetric hint values given");
    for (double h : h_values) {
        require_hint_component(h, "symmetric h");
        if (h < 0.0)
            throw std::domain_error("decoherence sweep requires good-quadrant hints (h >= 0)");
    }
    const std::vector<double>& axis = h_values;
    std::vector<detail::SweepCell> cells;
    for (MachineKind mk : spec.machines) {
        const bool classical = mk == MachineKind::Classical;
        const std::size_t gamma_count = classical ? 1 : spec.gamma_list.size();
        for (const SecretBits& x : spec.secrets) {
            for (std::size_t gi = 0; gi < gamma_count; ++gi) {
                const double gamma = classical ? 0.0 : spec.gamma_list[gi];
                for (std::size_t i = 0; i < axis.size(); ++i) {
                    cells.push_back({ExperimentKind::Decoherence, mk, x, gamma,
                                     symmetric_hint(axis[i], x),
                                     detail::cell_seed(spec.master_seed,
                                                       ExperimentKind::Decoherence, mk, x, gi, i, 0)});
                }
            }
        }
    }
    return detail::run_cells(cells, spec);
}

// Hint axis taken from the spec's grid range.
inline std::vector<RunRecord> run_decoherence(const SweepSpec& spec) {
    return run_decoherence(spec, axis_values(spec.grid_min, spec.grid_max, spec.step));
}

//=========================================================================
// Summaries
//=========================================================================

struct ExperimentSummary {
    std::string experiment;
    std::size_t cells = 0;
    long long total_games = 0;
    // Largest |mean - analytic| in standard-error units across cells.
    // Deterministic cells (std_err = 0) count as 0 when exact and as
    // infinity when they somehow disagree.
    double max_abs_dev_se = 0.0;
};

inline std::vector<ExperimentSummary> summarize(const std::vector<RunRecord>& records) {
    if (records.empty()) throw std::domain_error("no records to summarize");
    std::vector<ExperimentSummary> groups;
    for (const RunRecord& r : records) {
        const std::string name = experiment_name(r.experiment);
        ExperimentSummary* group = nullptr;
        for (auto& g : groups)
            if (g.experiment == name) group = &g;
        if (!group) {
            groups.push_back({name, 0, 0, 0.0});
            group = &groups.back();
        }
        group->cells += 1;
        group->total_games += r.n_games;
        // the analytic reference itself is exact only to kMatTol
        const double dev =
            std::max(0.0, std::abs(r.mean_score - r.analytic_score) - kMatTol);
        double dev_se = 0.0;
        if (r.std_err > 0.0)
            dev_se = dev / r.std_err;
        else if (dev > 0.0)
            dev_se = std::numeric_limits<double>::infinity();
        group->max_abs_dev_se = std::max(group->max_abs_dev_se, dev_se);
    }
    return groups;
}

//=========================================================================
// CSV output
//=========================================================================

// 17 significant digits: enough for exact double round-trips.
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline constexpr const char* kCsvHeader =
    "experiment,machine,x0,x1,h0,h1,gamma,delta,n_games,mean_score,std_err,analytic_score";

inline std::string csv_string(const std::vector<RunRecord>& records) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const RunRecord& r : records) {
        out += experiment_name(r.experiment);
        out += ',';
        out += machine_name(r.machine);
        out += ',';
        out += std::to_string(r.x0);
        out += ',';
        out += std::to_string(r.x1);
        out += ',';
        out += fmt_g17(r.h0);
        out += ',';
        out += fmt_g17(r.h1);
        out += ',';
        out += fmt_g17(r.gamma);
        out += ',';
        out += fmt_g17(r.delta);
        out += ',';
        out += std::to_string(r.n_games);
        out += ',';
        out += fmt_g17(r.mean_score);
        out += ',';
        out += fmt_g17(r.std_err);
        out += ',';
        out += fmt_g17(r.analytic_score);
        out += '\n';
    }
    return out;
}

// Writes via a temporary file and rename, so a failed run leaves no partial
// output behind.
inline void write_csv(const std::vector<RunRecord>& records, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + path);
        out << csv_string(records);
        out.flush();
        if (!out) {
            out.close();
            std::remove(tmp.c_str());
            throw std::runtime_error("failed writing output file: " + path);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move results into place: " + path);
    }
}

}  // namespace qdm
