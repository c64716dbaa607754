#pragma once

// Disorder-averaged sweeps, CSV/JSON emission, collapse and exponential fits.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cohqec/codes.h"
#include "cohqec/noise.h"

namespace cohqec {

inline constexpr const char* kVersion = "cohqec 0.1.0";
inline constexpr const char* kCsvHeader =
    "family,model,q,size,p,realization,seed,delta,p_rec,group_class,coherent_info,per_logical_qci,varphi,qcmi,"
    "classical_cmi";

struct DiagnosticSet {
    bool delta = true;
    bool qci = true;
    bool phi = true;
    bool cmi = true;
    bool qcmi = true;

    /// Comma-separated subset of delta,qci,phi,cmi,qcmi.
    static DiagnosticSet parse(const std::string& list);
    std::string to_string() const;
};

struct SweepConfig {
    CodeFamily family = CodeFamily::toric;
    /// Lattice size L (toric), classical length n (hgp) or qubit count N (rcc).
    std::vector<std::size_t> sizes;
    ErrorModel model = ErrorModel::toric_plaquette;
    std::size_t q = 4;
    std::vector<double> p_grid;
    std::size_t realizations = 1;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    DiagnosticSet diagnostics;
    /// Strip separation for the toric (q)CMI; 0 means L / 2.
    std::size_t region_separation = 0;
    std::size_t region_width = 1;
    /// RCC logical count and encoder depth; 0 means N / 4 and N.
    std::size_t rcc_k = 0;
    std::size_t rcc_depth = 0;

    /// Throws std::invalid_argument describing the first problem.
    void validate() const;
};

nlohmann::json config_to_json(const SweepConfig& config);
SweepConfig config_from_json(const nlohmann::json& doc);

/// "start:stop:step", inclusive of stop up to rounding.
std::vector<double> parse_p_grid(const std::string& spec);

struct SweepRecord {
    CodeFamily family = CodeFamily::toric;
    ErrorModel model = ErrorModel::toric_plaquette;
    std::size_t q = 0;
    std::size_t size = 0;
    double p = 0.0;
    std::size_t realization = 0;
    std::uint64_t seed = 0;
    /// Disabled or failed diagnostics are NaN (group_class "none").
    double delta = 0.0;
    double p_rec = 0.0;
    std::string group_class = "none";
    double coherent_info = 0.0;
    double per_logical_qci = 0.0;
    double varphi = 0.0;
    double qcmi = 0.0;
    double classical_cmi = 0.0;
    /// Not part of the CSV schema.
    std::size_t n_qubits = 0;
    std::size_t k = 0;
    std::string error;
};

/// Records ordered by (size, p, realization).
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

/// One realization, as run_sweep computes it.
SweepRecord run_realization(const SweepConfig& config, std::size_t size, double p, std::uint64_t stream_seed);

struct Statistic {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t count = 0;
};

struct PointAggregate {
    CodeFamily family = CodeFamily::toric;
    ErrorModel model = ErrorModel::toric_plaquette;
    std::size_t q = 0;
    std::size_t size = 0;
    double p = 0.0;
    std::size_t n_qubits = 0;
    /// Mean logical count over the realizations.
    double k = 0.0;
    std::map<std::string, Statistic> stats;
    /// Counts over the 15 toric classes (empty for other families).
    std::map<std::string, std::size_t> classes;
};

/// Per-point mean and standard error (sample std / sqrt(m)) of every
/// diagnostic, plus delta_per_k; NaN entries are skipped. Throws on empty input.
std::vector<PointAggregate> aggregate(const std::vector<SweepRecord>& records);

std::string records_to_csv(const std::vector<SweepRecord>& records);
/// Inverse of records_to_csv for the CSV columns; n_qubits and k are left 0.
std::vector<SweepRecord> records_from_csv(const std::string& text);
std::string aggregates_to_csv(const std::vector<PointAggregate>& aggregates);

struct EmitPaths {
    std::filesystem::path dir;
    bool plot_script = true;
};

/// Writes records.csv, aggregates.csv, manifest.json and (optionally)
/// plot.gp into paths.dir. Throws std::runtime_error on I/O failure.
void emit(const SweepConfig& config, const std::vector<SweepRecord>& records, const EmitPaths& paths,
          const std::string& command);

/// Reruns the sweep stored in a manifest, optionally with another thread count.
std::vector<SweepRecord> replay(const nlohmann::json& manifest, std::optional<std::size_t> threads = std::nullopt);

// ---------------------------------------------------------------- fits

struct CollapsePoint {
    double size = 0.0;
    double p = 0.0;
    double mean = 0.0;
    double stderr_ = 0.0;
};

struct CollapseRanges {
    double pc_min = 0.0;
    double pc_max = 1.0;
    double nu_min = 0.5;
    double nu_max = 4.0;
    std::size_t grid = 41;
    std::size_t bootstrap = 50;
    std::uint64_t seed = 1;
};

struct CollapseFit {
    double p_c = 0.0;
    double nu = 0.0;
    double cost = 0.0;
    double p_c_err = 0.0;
    double nu_err = 0.0;
    /// The cost barely depends on nu (e.g. size-independent data).
    bool degenerate = false;
};

/// Master-curve residual: each point is compared with the piecewise-linear
/// interpolation of every other size at the same scaled abscissa
/// x = (p - p_c) L^{1/nu}, weighted by the combined standard errors.
/// Returns +inf when no points overlap.
double collapse_cost(const std::vector<CollapsePoint>& data, double p_c, double nu);

/// Grid search followed by Nelder-Mead refinement; errors from a parametric
/// bootstrap that redraws every mean from N(mean, stderr).
CollapseFit collapse_fit(const std::vector<CollapsePoint>& data, const CollapseRanges& ranges);

struct ExpFitPoint {
    double n = 0.0;
    double p = 0.0;
    double mean = 0.0;
};

struct ExpFitResult {
    double p = 0.0;
    /// log mean = -h / N, fitted through the origin.
    double h = 0.0;
    double h_err = 0.0;
    double residual = 0.0;
    /// 1 - residual / sum (log mean)^2; 1 when every log mean vanishes.
    double linearity = 1.0;
};

/// One fit per distinct p, in ascending p. Throws std::invalid_argument for a
/// nonpositive mean or fewer than three sizes at some p.
std::vector<ExpFitResult> exp_fit_per_logical_qci(const std::vector<ExpFitPoint>& data);

}  // namespace cohqec
