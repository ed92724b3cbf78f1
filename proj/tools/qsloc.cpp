// Copyright 2026 The qsloc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qsloc command-line front end.
//
//   qsloc generate   --n 21 --m 44 --area 450x450 --seed 7 --out data/
//   qsloc locate     --dataset data/ --sample 0 --method quantum --k 1024
//   qsloc evaluate   --dataset data/ --methods quantum,classical --sweep m --values 4,8,16
//   qsloc complexity --m 1024 --n 64 --k 16384
//
// Exit codes: 0 ok, 2 bad input, 3 I/O or parse failure, 4 internal error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qsloc/error.hpp"
#include "qsloc/harness/complexity.hpp"
#include "qsloc/harness/eval.hpp"
#include "qsloc/locate/locator.hpp"
#include "qsloc/testbed/dataset.hpp"
#include "qsloc/testbed/dataset_io.hpp"

namespace {

using namespace qsloc;

enum ExitCode : int { kOk = 0, kValidation = 2, kIo = 3, kInternal = 4 };

testbed::Area parse_area(const std::string &text) {
    const auto x = text.find_first_of("xX");
    if (x == std::string::npos) {
        throw ValidationError("area must look like WIDTHxHEIGHT, got '" + text + "'");
    }
    double w = 0.0;
    double h = 0.0;
    if (!testbed::detail::parse_number(std::string_view(text).substr(0, x), w) ||
        !testbed::detail::parse_number(std::string_view(text).substr(x + 1), h)) {
        throw ValidationError("area must look like WIDTHxHEIGHT, got '" + text + "'");
    }
    testbed::Area area{w, h};
    area.validate();
    return area;
}

std::vector<double> parse_values(const std::string &text) {
    std::vector<double> out;
    for (auto field : testbed::detail::split_fields(text)) {
        double v = 0.0;
        if (!testbed::detail::parse_number(field, v)) {
            throw ValidationError("bad sweep value '" + std::string(field) + "'");
        }
        out.push_back(v);
    }
    return out;
}

qsim::SamplingMode parse_mode(const std::string &name) {
    if (name == "exact") {
        return qsim::SamplingMode::Exact;
    }
    if (name == "per-shot") {
        return qsim::SamplingMode::PerShot;
    }
    throw ValidationError("unknown sampling mode '" + name + "' (expected exact or per-shot)");
}

std::optional<qsim::NoiseModel> noise_from(double depolarizing, double readout) {
    qsim::NoiseModel noise{depolarizing, readout};
    noise.validate();
    if (!noise.has_gate_noise() && !noise.has_readout_noise()) {
        return std::nullopt;
    }
    return noise;
}

struct GenerateArgs {
    std::size_t n = 21;
    std::size_t m = 44;
    std::size_t test = 100;
    std::string area = "450x450";
    std::uint64_t seed = 0;
    std::string out;
    testbed::PathLossParams path_loss;
    prep::NormalizationConfig normalization;
    std::string map = "floor_shift";
};

int run_generate(GenerateArgs &a) {
    a.normalization.map = prep::amplitude_map_from_string(a.map);
    const auto ds = testbed::generate_synthetic(parse_area(a.area), a.n, a.m, a.test, a.path_loss,
                                                a.seed, a.normalization);
    testbed::save_dataset(ds, a.out);

    std::size_t heard = 0;
    for (const auto &record : ds.fingerprint.records) {
        for (double v : record.rss) {
            heard += prep::is_missing(v, ds.fingerprint.normalization) ? 0 : 1;
        }
    }
    std::cout << "wrote " << a.out << ": " << ds.stations.size() << " stations, "
              << ds.fingerprint.size() << " fingerprint locations, " << ds.test_samples.size()
              << " test samples, "
              << static_cast<double>(heard) / static_cast<double>(ds.fingerprint.size())
              << " stations heard per location\n";
    return kOk;
}

struct LocateArgs {
    std::string dataset;
    std::optional<std::size_t> sample;
    std::string rss;
    std::string method = "quantum";
    std::uint64_t k = 1024;
    std::uint64_t seed = 0;
    double depolarizing = 0.0;
    double readout = 0.0;
    std::string mode = "exact";
    std::string rule = "joint";
};

int run_locate(const LocateArgs &a) {
    const auto ds = testbed::load_dataset(a.dataset);
    const auto &db = ds.fingerprint;
    std::vector<double> rss;
    if (!a.rss.empty()) {
        rss = testbed::parse_rss_list(a.rss, db.normalization.sentinel_dbm);
    } else {
        const std::size_t index = a.sample.value_or(0);
        if (index >= ds.test_samples.size()) {
            throw ValidationError("sample index " + std::to_string(index) + " out of range (" +
                                  std::to_string(ds.test_samples.size()) + " test samples)");
        }
        rss = ds.test_samples[index].rss;
    }

    locate::QuantumOptions opts;
    opts.shots = a.k;
    opts.seed = a.seed;
    opts.sampling.mode = parse_mode(a.mode);
    opts.sampling.noise = noise_from(a.depolarizing, a.readout);
    if (a.rule == "joint") {
        opts.rule = locate::SelectionRule::JointCount;
    } else if (a.rule == "conditional") {
        opts.rule = locate::SelectionRule::ConditionalEstimate;
    } else {
        throw ValidationError("unknown rule '" + a.rule + "' (expected joint or conditional)");
    }

    const auto rows = db.amplitude_rows();
    const auto psi = db.encode_sample(rss);
    const auto estimate = locate::locate(locate::method_from_string(a.method), db, rows, psi, opts);
    auto doc = locate::to_json(estimate);
    doc["location_id"] = db.records[estimate.winning_index].id;
    std::cout << doc.dump(2) << '\n';
    return kOk;
}

struct EvaluateArgs {
    std::string dataset;
    std::string methods = "quantum,classical";
    std::string sweep = "none";
    std::string values;
    std::uint64_t k = 1024;
    std::size_t seeds = 1;
    std::uint64_t seed = 0;
    double depolarizing = 0.0;
    double readout = 0.0;
    std::string mode = "exact";
    std::size_t threads = 0;
    std::string out;
};

int run_evaluate(const EvaluateArgs &a) {
    const auto ds = testbed::load_dataset(a.dataset);
    harness::EvalConfig cfg;
    cfg.methods.clear();
    for (auto name : testbed::detail::split_fields(a.methods)) {
        cfg.methods.push_back(locate::method_from_string(name));
    }
    cfg.sweep = harness::sweep_axis_from_string(a.sweep);
    cfg.sweep_values = parse_values(a.values);
    if (cfg.sweep == harness::SweepAxis::K && cfg.sweep_values.empty()) {
        for (int e = 8; e <= 16; ++e) {
            cfg.sweep_values.push_back(static_cast<double>(1U << e));
        }
    }
    cfg.shots = a.k;
    cfg.seeds = a.seeds;
    cfg.master_seed = a.seed;
    cfg.noise = {a.depolarizing, a.readout};
    cfg.sampling = parse_mode(a.mode);
    cfg.threads = a.threads;

    const auto report = harness::evaluate(ds, cfg);
    harness::check_report(report);
    if (!a.out.empty()) {
        harness::write_report(report, a.out);
    }
    for (const auto &id : report.skipped_queries) {
        std::cerr << "skipped " << id << ": no station above the floor\n";
    }
    std::cout << harness::summary_csv(report);
    return kOk;
}

int run_complexity(std::size_t m, std::size_t n, std::uint64_t k) {
    std::cout << harness::to_json(harness::complexity_report(m, n, k)).dump(2) << '\n';
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum cosine-similarity fingerprint positioning on a statevector simulator"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto *generate = app.add_subcommand("generate", "Synthesize a fingerprint dataset");
    generate->add_option("--n", gen.n, "Number of base stations");
    generate->add_option("--m", gen.m, "Number of fingerprint locations");
    generate->add_option("--test", gen.test, "Number of held-out test samples");
    generate->add_option("--area", gen.area, "Area as WIDTHxHEIGHT in metres");
    generate->add_option("--seed", gen.seed, "Master seed");
    generate->add_option("--out", gen.out, "Output directory")->required();
    generate->add_option("--tx-power", gen.path_loss.tx_power_dbm, "Transmit power (dBm)");
    generate->add_option("--exponent", gen.path_loss.path_loss_exponent, "Path loss exponent");
    generate->add_option("--d0", gen.path_loss.reference_distance_m, "Reference distance (m)");
    generate->add_option("--sigma", gen.path_loss.shadowing_sigma_db, "Shadowing sigma (dB)");
    generate->add_option("--noise-floor", gen.path_loss.noise_floor_dbm,
                         "Receiver sensitivity (dBm)");
    generate->add_option("--floor", gen.normalization.floor_dbm, "Normalization floor (dBm)");
    generate->add_option("--sentinel", gen.normalization.sentinel_dbm, "Missing-reading value");
    generate->add_option("--map", gen.map, "Amplitude map: floor_shift or linear_mw");

    LocateArgs loc;
    auto *locate_cmd = app.add_subcommand("locate", "Position one sample");
    locate_cmd->add_option("--dataset", loc.dataset, "Dataset directory")->required();
    auto *sample_opt = locate_cmd->add_option("--sample", loc.sample, "Test sample index");
    locate_cmd->add_option("--rss", loc.rss, "Inline RSS list, comma separated")
        ->excludes(sample_opt);
    locate_cmd->add_option("--method", loc.method, "quantum, quantum-analytic or classical");
    locate_cmd->add_option("--k", loc.k, "Shots");
    locate_cmd->add_option("--seed", loc.seed, "Seed");
    locate_cmd->add_option("--depolarizing", loc.depolarizing, "Per-gate depolarizing probability");
    locate_cmd->add_option("--readout", loc.readout, "Per-bit readout flip probability");
    locate_cmd->add_option("--mode", loc.mode, "Sampling: exact or per-shot");
    locate_cmd->add_option("--rule", loc.rule, "Sampled winner: joint or conditional");

    EvaluateArgs ev;
    auto *evaluate = app.add_subcommand("evaluate", "Evaluate methods over the test set");
    evaluate->add_option("--dataset", ev.dataset, "Dataset directory")->required();
    evaluate->add_option("--methods", ev.methods, "Comma-separated methods");
    evaluate->add_option("--sweep", ev.sweep, "none, m, n, k or noise");
    evaluate->add_option("--values", ev.values, "Comma-separated sweep values");
    evaluate->add_option("--k", ev.k, "Shots");
    evaluate->add_option("--seeds", ev.seeds, "Seeds per query");
    evaluate->add_option("--seed", ev.seed, "Master seed");
    evaluate->add_option("--depolarizing", ev.depolarizing, "Per-gate depolarizing probability");
    evaluate->add_option("--readout", ev.readout, "Per-bit readout flip probability");
    evaluate->add_option("--mode", ev.mode, "Sampling: exact or per-shot");
    evaluate->add_option("--threads", ev.threads, "Worker threads (0 = all cores)");
    evaluate->add_option("--out", ev.out, "Directory for rows.csv, summary.csv, cdf.csv");

    std::size_t cm = 0;
    std::size_t cn = 0;
    std::uint64_t ck = 1024;
    auto *complexity = app.add_subcommand("complexity", "Resource accounting for M x N");
    complexity->add_option("--m", cm, "Fingerprint locations")->required();
    complexity->add_option("--n", cn, "Base stations")->required();
    complexity->add_option("--k", ck, "Shots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kValidation;
    }

    try {
        if (*generate) {
            return run_generate(gen);
        }
        if (*locate_cmd) {
            return run_locate(loc);
        }
        if (*evaluate) {
            return run_evaluate(ev);
        }
        if (*complexity) {
            return run_complexity(cm, cn, ck);
        }
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const IndexNeverObservedError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}
