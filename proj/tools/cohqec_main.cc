// Command-line driver: sweeps, fits, self-checks and manifest replay.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cohqec/diagnostics.h"
#include "cohqec/harness.h"

namespace {

using namespace cohqec;

struct SweepFlags {
    std::string sizes;
    std::string p_grid = "0:1:0.1";
    std::size_t q = 0;
    std::string model;
    std::size_t realizations = 16;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    std::string out = "out";
    std::string diagnostics = "delta,qci,phi,cmi,qcmi";
    std::size_t separation = 0;
    std::size_t width = 1;
    std::size_t rcc_k = 0;
    std::size_t rcc_depth = 0;
    bool no_plot = false;
};

std::vector<std::size_t> parse_sizes(const std::string& list) {
    std::vector<std::size_t> out;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) {
            out.push_back(std::stoul(item));
        }
    }
    return out;
}

std::pair<double, double> parse_range(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("range must be lo:hi");
    }
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_summary(const std::vector<SweepRecord>& records) {
    if (records.empty()) {
        return;
    }
    std::printf("%6s %8s %6s %10s %10s %10s %10s %10s\n", "size", "p", "k", "delta/k", "p_rec", "qci/k", "varphi",
                "qcmi");
    for (const auto& a : aggregate(records)) {
        auto get = [&](const char* name) {
            auto it = a.stats.find(name);
            return it == a.stats.end() ? std::nan("") : it->second.mean;
        };
        std::printf("%6zu %8.4f %6.1f %10.4f %10.4f %10.4f %10.4f %10.4f\n", a.size, a.p, a.k, get("delta_per_k"),
                    get("p_rec"), get("per_logical_qci"), get("varphi"), get("qcmi"));
    }
    std::size_t failed = 0;
    for (const auto& r : records) {
        if (!r.error.empty()) {
            if (failed++ < 5) {
                std::fprintf(stderr, "realization %zu at size %zu, p %g failed: %s\n", r.realization, r.size, r.p,
                             r.error.c_str());
            }
        }
    }
    if (failed) {
        std::fprintf(stderr, "%zu realizations failed\n", failed);
    }
}

void add_sweep(CLI::App& app, const char* name, CodeFamily family, SweepFlags& f, std::string& command) {
    auto* sub = app.add_subcommand(name, std::string("sweep over ") + name + " codes");
    sub->add_option("--sizes", f.sizes, "comma-separated sizes (L, classical n, or N)")->required();
    sub->add_option("--p-grid", f.p_grid, "start:stop:step");
    sub->add_option("--q", f.q, "gate support size");
    sub->add_option("--model", f.model, "long|local|plaquette");
    sub->add_option("--realizations", f.realizations);
    sub->add_option("--seed", f.seed);
    sub->add_option("--threads", f.threads);
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--diagnostics", f.diagnostics, "subset of delta,qci,phi,cmi,qcmi");
    sub->add_option("--separation", f.separation, "toric strip separation (default L/2)");
    sub->add_option("--width", f.width, "toric strip width");
    sub->add_option("--rcc-k", f.rcc_k, "RCC logical qubits (default N/4)");
    sub->add_option("--rcc-depth", f.rcc_depth, "RCC encoder depth (default N)");
    sub->add_flag("--no-plot", f.no_plot, "skip the gnuplot script");
    sub->callback([&app, sub, family, &f, &command] {
        SweepConfig c;
        c.family = family;
        c.sizes = parse_sizes(f.sizes);
        c.p_grid = parse_p_grid(f.p_grid);
        bool toric = family == CodeFamily::toric;
        c.model = f.model.empty() ? (toric ? ErrorModel::toric_plaquette : ErrorModel::long_range)
                                  : error_model_from_string(f.model);
        c.q = f.q ? f.q : (c.model == ErrorModel::toric_plaquette ? 4 : 2);
        c.realizations = f.realizations;
        c.seed = f.seed;
        c.threads = f.threads;
        c.diagnostics = DiagnosticSet::parse(f.diagnostics);
        c.region_separation = f.separation;
        c.region_width = f.width;
        c.rcc_k = f.rcc_k;
        c.rcc_depth = f.rcc_depth;
        auto records = run_sweep(c);
        emit(c, records, {f.out, !f.no_plot}, command);
        print_summary(records);
        std::printf("wrote %s/records.csv (%zu records)\n", f.out.c_str(), records.size());
        (void)app;
        (void)sub;
    });
}

std::vector<std::map<std::string, std::string>> read_table(const std::string& path) {
    std::stringstream in(slurp(path));
    std::string line;
    std::getline(in, line);
    std::vector<std::string> header;
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) {
        header.push_back(cell);
    }
    std::vector<std::map<std::string, std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::stringstream ls(line);
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size() && std::getline(ls, cell, ','); ++i) {
            row[header[i]] = cell;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

int run_validate(std::size_t instances, std::uint64_t seed) {
    int failures = 0;
    auto report = [&](const char* name, bool ok, const std::string& detail) {
        std::printf("%s %s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
        failures += ok ? 0 : 1;
    };
    Rng rng(seed);
    std::size_t mismatches = 0, violations = 0;
    for (std::size_t t = 0; t < instances; ++t) {
        StabilizerCode code;
        ErrorRealization e;
        switch (t % 3) {
            case 0:
                code = build_toric(2 + rng.uniform_below(3));
                e = sample_toric_errors(code, rng.uniform(), rng);
                break;
            case 1:
                code = build_hgp(build_ldpc(8, rng), build_ldpc(8, rng));
                e = sample_long_range(code, rng.uniform(), 1 + rng.uniform_below(3), rng);
                break;
            default:
                code = build_rcc(16, 4, 16, rng);
                e = sample_local(code, rng.uniform(), 1 + rng.uniform_below(3), rng);
        }
        StabilizerState s = apply_realization(code_state(code), e);
        auto d = delta_logical(code, measure_commuting_set(s, code.checks, rng).post_state);
        mismatches += d.delta != d.delta_commutator;
        if (t % 10 == 0) {
            violations += !syndrome_independence_check(code, e, 4, rng.next());
        }
    }
    report("delta-routes", mismatches == 0, std::to_string(mismatches) + " mismatches");
    report("syndrome-independence", violations == 0, std::to_string(violations) + " violations");

    SweepConfig c;
    c.family = CodeFamily::toric;
    c.sizes = {4, 6};
    c.p_grid = {0.0};
    c.realizations = 4;
    c.seed = seed;
    auto clean = run_sweep(c);
    bool ok = true;
    for (const auto& r : clean) {
        ok = ok && r.delta == 0 && r.coherent_info == 2 && r.varphi == 1 && r.qcmi == 0 && r.error.empty();
    }
    report("clean-toric", ok, "delta 0, qci 2, varphi 1, qcmi 0");

    c.p_grid = {0.3, 0.9};
    std::string one = records_to_csv(run_sweep(c));
    c.threads = 4;
    report("determinism", one == records_to_csv(run_sweep(c)), "1 vs 4 threads");
    std::printf("dense-oracle suites: run ctest in the build directory\n");
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coherent Clifford errors on stabilizer codes"};
    app.require_subcommand(1);
    std::string command;
    for (int i = 0; i < argc; ++i) {
        command += (i ? " " : "") + std::string(argv[i]);
    }

    SweepFlags toric_flags, hgp_flags, rcc_flags;
    add_sweep(app, "toric", CodeFamily::toric, toric_flags, command);
    add_sweep(app, "hgp", CodeFamily::hgp, hgp_flags, command);
    add_sweep(app, "rcc", CodeFamily::rcc, rcc_flags, command);

    std::string collapse_input, stat = "delta_per_k", pc_range = "0:1", nu_range = "0.5:4", p_window;
    std::size_t bootstrap = 50;
    auto* collapse = app.add_subcommand("collapse", "finite-size-scaling collapse of an aggregates.csv column");
    collapse->add_option("--input", collapse_input, "aggregates.csv")->required();
    collapse->add_option("--stat", stat, "diagnostic column stem, e.g. delta_per_k, qcmi");
    collapse->add_option("--pc-range", pc_range, "lo:hi");
    collapse->add_option("--nu-range", nu_range, "lo:hi");
    collapse->add_option("--p-window", p_window, "only use lo <= p <= hi");
    collapse->add_option("--bootstrap", bootstrap);
    collapse->callback([&] {
        std::vector<CollapsePoint> data;
        std::pair<double, double> window{-1, 2};
        if (!p_window.empty()) {
            window = parse_range(p_window);
        }
        for (auto& row : read_table(collapse_input)) {
            double p = std::stod(row.at("p"));
            if (p < window.first || p > window.second) {
                continue;
            }
            data.push_back({std::stod(row.at("size")), p, std::stod(row.at(stat + "_mean")),
                            std::stod(row.at(stat + "_stderr"))});
        }
        CollapseRanges r;
        std::tie(r.pc_min, r.pc_max) = parse_range(pc_range);
        std::tie(r.nu_min, r.nu_max) = parse_range(nu_range);
        r.bootstrap = bootstrap;
        CollapseFit fit = collapse_fit(data, r);
        std::printf("p_c = %.4f +- %.4f\nnu = %.4f +- %.4f\ncost = %.4g%s\n", fit.p_c, fit.p_c_err, fit.nu,
                    fit.nu_err, fit.cost, fit.degenerate ? "\nwarning: degenerate fit" : "");
    });

    std::string expfit_input;
    auto* expfit = app.add_subcommand("expfit", "fit per-logical qCI to exp(-h/N) from an aggregates.csv");
    expfit->add_option("--input", expfit_input, "aggregates.csv")->required();
    expfit->callback([&] {
        std::vector<ExpFitPoint> data;
        for (auto& row : read_table(expfit_input)) {
            data.push_back({std::stod(row.at("n_qubits")), std::stod(row.at("p")),
                            std::stod(row.at("per_logical_qci_mean"))});
        }
        std::printf("%8s %12s %12s %12s\n", "p", "h", "h_err", "linearity");
        for (const auto& r : exp_fit_per_logical_qci(data)) {
            std::printf("%8.4f %12.5g %12.5g %12.6f\n", r.p, r.h, r.h_err, r.linearity);
        }
    });

    std::size_t instances = 300;
    std::uint64_t validate_seed = 1;
    auto* validate = app.add_subcommand("validate", "built-in consistency checks");
    validate->add_option("--instances", instances);
    validate->add_option("--seed", validate_seed);
    int validate_status = 0;
    validate->callback([&] { validate_status = run_validate(instances, validate_seed); });

    std::string manifest_path, replay_out;
    std::size_t replay_threads = 0;
    auto* rep = app.add_subcommand("replay", "rerun a sweep from its manifest and compare records.csv");
    rep->add_option("manifest", manifest_path)->required();
    rep->add_option("--threads", replay_threads, "override the recorded thread count");
    rep->add_option("--out", replay_out, "directory for the rerun (default: <manifest dir>/replay)");
    int replay_status = 0;
    rep->callback([&] {
        auto manifest = nlohmann::json::parse(slurp(manifest_path));
        std::filesystem::path dir = std::filesystem::path(manifest_path).parent_path();
        std::filesystem::path out = replay_out.empty() ? dir / "replay" : std::filesystem::path(replay_out);
        std::optional<std::size_t> threads;
        if (replay_threads) {
            threads = replay_threads;
        }
        SweepConfig c = config_from_json(manifest.at("config"));
        auto records = replay(manifest, threads);
        emit(c, records, {out, false}, manifest.value("command", std::string()));
        bool same = slurp((out / "records.csv").string()) == slurp((dir / "records.csv").string());
        std::printf("%s: rerun records.csv %s the original\n", same ? "identical" : "DIFFERENT",
                    same ? "matches" : "differs from");
        replay_status = same ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return validate_status | replay_status;
}
