#include "cohqec/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "cohqec/diagnostics.h"

namespace cohqec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad number '" + std::string(s) + "'");
    }
    return v;
}

std::uint64_t parse_uint(std::string_view s) {
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad integer '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t at = line.find(sep, start);
        out.push_back(line.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
        if (at == std::string_view::npos) {
            return out;
        }
        start = at + 1;
    }
}

StabilizerCode make_code(const SweepConfig& config, std::size_t size, Rng& rng) {
    switch (config.family) {
        case CodeFamily::toric:
            return build_toric(size);
        case CodeFamily::hgp: {
            ClassicalLdpcCode h1 = build_ldpc(size, rng);
            ClassicalLdpcCode h2 = build_ldpc(size, rng);
            return build_hgp(h1, h2);
        }
        case CodeFamily::rcc:
            return build_rcc(size, config.rcc_k ? config.rcc_k : size / 4, config.rcc_depth ? config.rcc_depth : size,
                             rng);
        case CodeFamily::custom:
            break;
    }
    throw std::invalid_argument("sweeps need a toric, hgp or rcc code family");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

const std::vector<std::string>& stat_names() {
    static const std::vector<std::string> names = {"delta",          "delta_per_k", "p_rec", "coherent_info",
                                                   "per_logical_qci", "varphi",      "qcmi",  "classical_cmi"};
    return names;
}

}  // namespace

// ---------------------------------------------------------------- config

DiagnosticSet DiagnosticSet::parse(const std::string& list) {
    DiagnosticSet d{false, false, false, false, false};
    for (auto item : split(list, ',')) {
        if (item == "delta") {
            d.delta = true;
        } else if (item == "qci") {
            d.qci = true;
        } else if (item == "phi") {
            d.phi = true;
        } else if (item == "cmi") {
            d.cmi = true;
        } else if (item == "qcmi") {
            d.qcmi = true;
        } else if (!item.empty()) {
            throw std::invalid_argument("unknown diagnostic '" + std::string(item) + "'");
        }
    }
    return d;
}

std::string DiagnosticSet::to_string() const {
    std::string s;
    auto add = [&](bool on, const char* name) {
        if (on) {
            s += s.empty() ? "" : ",";
            s += name;
        }
    };
    add(delta, "delta");
    add(qci, "qci");
    add(phi, "phi");
    add(cmi, "cmi");
    add(qcmi, "qcmi");
    return s;
}

void SweepConfig::validate() const {
    if (family == CodeFamily::custom) {
        throw std::invalid_argument("config: family must be toric, hgp or rcc");
    }
    if (sizes.empty() || p_grid.empty()) {
        throw std::invalid_argument("config: need at least one size and one p");
    }
    for (double p : p_grid) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("config: p grid must lie in [0, 1]");
        }
    }
    if (realizations == 0) {
        throw std::invalid_argument("config: realizations must be at least 1");
    }
    if (threads == 0) {
        throw std::invalid_argument("config: threads must be at least 1");
    }
    if (model == ErrorModel::toric_plaquette && family != CodeFamily::toric) {
        throw std::invalid_argument("config: plaquette errors need the toric code");
    }
    if (model == ErrorModel::local && family == CodeFamily::toric) {
        throw std::invalid_argument("config: local errors need an hgp or rcc qubit graph");
    }
    ErrorModelConfig{model, 0.0, q}.validate();
    for (auto s : sizes) {
        if (family == CodeFamily::toric && s < 2) {
            throw std::invalid_argument("config: toric sizes must be at least 2");
        }
        if (family == CodeFamily::toric && (region_width == 0 || 2 * region_width > s)) {
            throw std::invalid_argument("config: region strips do not fit the lattice");
        }
        if (family == CodeFamily::hgp && (s < 6 || s % 2)) {
            throw std::invalid_argument("config: hgp sizes must be even and at least 6");
        }
        if (family == CodeFamily::rcc && (s < 2 || q > s)) {
            throw std::invalid_argument("config: rcc sizes must be at least max(2, q)");
        }
    }
}

nlohmann::json config_to_json(const SweepConfig& c) {
    return {{"family", to_string(c.family)},
            {"sizes", c.sizes},
            {"model", to_string(c.model)},
            {"q", c.q},
            {"p_grid", c.p_grid},
            {"realizations", c.realizations},
            {"seed", c.seed},
            {"threads", c.threads},
            {"diagnostics", c.diagnostics.to_string()},
            {"region_separation", c.region_separation},
            {"region_width", c.region_width},
            {"rcc_k", c.rcc_k},
            {"rcc_depth", c.rcc_depth}};
}

SweepConfig config_from_json(const nlohmann::json& doc) {
    SweepConfig c;
    c.family = code_family_from_string(doc.at("family").get<std::string>());
    c.sizes = doc.at("sizes").get<std::vector<std::size_t>>();
    c.model = error_model_from_string(doc.at("model").get<std::string>());
    c.q = doc.at("q").get<std::size_t>();
    c.p_grid = doc.at("p_grid").get<std::vector<double>>();
    c.realizations = doc.at("realizations").get<std::size_t>();
    c.seed = doc.at("seed").get<std::uint64_t>();
    c.threads = doc.value("threads", std::size_t{1});
    c.diagnostics = DiagnosticSet::parse(doc.value("diagnostics", std::string("delta,qci,phi,cmi,qcmi")));
    c.region_separation = doc.value("region_separation", std::size_t{0});
    c.region_width = doc.value("region_width", std::size_t{1});
    c.rcc_k = doc.value("rcc_k", std::size_t{0});
    c.rcc_depth = doc.value("rcc_depth", std::size_t{0});
    return c;
}

std::vector<double> parse_p_grid(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.size() == 1) {
        return {parse_double(parts[0])};
    }
    if (parts.size() != 3) {
        throw std::invalid_argument("p grid must be start:stop:step");
    }
    double start = parse_double(parts[0]);
    double stop = parse_double(parts[1]);
    double step = parse_double(parts[2]);
    if (!(step > 0) || stop < start) {
        throw std::invalid_argument("p grid needs step > 0 and stop >= start");
    }
    std::vector<double> grid;
    auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
        grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return grid;
}

// ---------------------------------------------------------------- sweep

SweepRecord run_realization(const SweepConfig& config, std::size_t size, double p, std::uint64_t stream_seed) {
    SweepRecord rec;
    rec.family = config.family;
    rec.model = config.model;
    rec.q = config.q;
    rec.size = size;
    rec.p = p;
    rec.seed = stream_seed;
    rec.delta = rec.p_rec = rec.coherent_info = rec.per_logical_qci = rec.varphi = rec.qcmi = rec.classical_cmi =
        kNaN;
    const DiagnosticSet& want = config.diagnostics;
    try {
        Rng rng(stream_seed);
        StabilizerCode code = make_code(config, size, rng);
        rec.n_qubits = code.n;
        rec.k = code.k;
        ErrorRealization e = sample_errors(code, {config.model, p, config.q}, rng);
        StabilizerState state = apply_realization(code_state(code), e);
        const bool toric = code.family == CodeFamily::toric;
        const std::size_t separation = config.region_separation ? config.region_separation : size / 2;

        if (want.delta || want.phi || (want.cmi && toric)) {
            MeasurementOutcome out = measure_commuting_set(state, code.checks, rng);
            if (want.delta) {
                LogicalDiagnostic d = delta_logical(code, out.post_state);
                rec.delta = static_cast<double>(d.delta);
                rec.p_rec = d.p_rec;
                rec.group_class = d.group_class;
            }
            if (want.phi) {
                rec.varphi = syndrome_stats(out).varphi;
            }
            if (want.cmi && toric) {
                RegionSplit r = toric_check_regions(size, separation, config.region_width);
                rec.classical_cmi = static_cast<double>(classical_cmi(out.constraint_matrix, r.a, r.b, r.c));
            }
        }
        if (want.qci) {
            ChannelDiagnostic c = coherent_information(code, e);
            rec.coherent_info = c.coherent_info;
            rec.per_logical_qci = c.per_logical;
        }
        if (want.qcmi && toric) {
            RegionSplit r = toric_qubit_regions(size, separation, config.region_width);
            StabilizerState averaged = average_over_syndromes(state, code.checks);
            rec.qcmi = static_cast<double>(qcmi(averaged, r.a, r.b, r.c));
        }
    } catch (const std::exception& ex) {
        rec.error = ex.what();
    }
    return rec;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
    config.validate();
    const std::size_t np = config.p_grid.size();
    const std::size_t per_point = config.realizations;
    const std::size_t total = config.sizes.size() * np * per_point;
    std::vector<SweepRecord> records(total);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t task = next++; task < total; task = next++) {
            std::size_t point = task / per_point;
            std::size_t r = task % per_point;
            std::size_t size = config.sizes[point / np];
            double p = config.p_grid[point % np];
            records[task] = run_realization(config, size, p, Rng::derive(config.seed, point, r));
            records[task].realization = r;
        }
    };
    std::size_t nthreads = std::min(config.threads, std::max<std::size_t>(total, 1));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < nthreads; ++t) {
            pool.emplace_back(worker);
        }
    }
    return records;
}

// ---------------------------------------------------------------- aggregation

std::vector<PointAggregate> aggregate(const std::vector<SweepRecord>& records) {
    if (records.empty()) {
        throw std::invalid_argument("aggregate: no records");
    }
    using Key = std::tuple<int, int, std::size_t, std::size_t, double>;
    std::vector<Key> order;
    std::map<Key, std::vector<const SweepRecord*>> groups;
    for (const auto& r : records) {
        Key key{static_cast<int>(r.family), static_cast<int>(r.model), r.q, r.size, r.p};
        auto& g = groups[key];
        if (g.empty()) {
            order.push_back(key);
        }
        g.push_back(&r);
    }
    std::vector<PointAggregate> out;
    for (const auto& key : order) {
        const auto& g = groups[key];
        PointAggregate a;
        a.family = g[0]->family;
        a.model = g[0]->model;
        a.q = g[0]->q;
        a.size = g[0]->size;
        a.p = g[0]->p;
        a.n_qubits = g[0]->n_qubits;
        double k_sum = 0;
        std::map<std::string, std::vector<double>> values;
        for (const auto* r : g) {
            k_sum += static_cast<double>(r->k);
            double per_k = r->k ? r->delta / static_cast<double>(r->k) : kNaN;
            double v[] = {r->delta, per_k, r->p_rec, r->coherent_info, r->per_logical_qci, r->varphi, r->qcmi,
                          r->classical_cmi};
            for (std::size_t i = 0; i < stat_names().size(); ++i) {
                if (!std::isnan(v[i])) {
                    values[stat_names()[i]].push_back(v[i]);
                }
            }
            if (r->family == CodeFamily::toric && r->group_class != "none") {
                a.classes[r->group_class]++;
            }
        }
        a.k = k_sum / static_cast<double>(g.size());
        for (const auto& [name, vs] : values) {
            Statistic s;
            s.count = vs.size();
            double sum = 0;
            for (double v : vs) {
                sum += v;
            }
            s.mean = sum / static_cast<double>(vs.size());
            if (vs.size() > 1) {
                double ss = 0;
                for (double v : vs) {
                    ss += (v - s.mean) * (v - s.mean);
                }
                s.stderr_ = std::sqrt(ss / static_cast<double>(vs.size() - 1) / static_cast<double>(vs.size()));
            }
            a.stats[name] = s;
        }
        out.push_back(std::move(a));
    }
    return out;
}

// ---------------------------------------------------------------- CSV and files

std::string records_to_csv(const std::vector<SweepRecord>& records) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : records) {
        out += to_string(r.family) + ',' + to_string(r.model) + ',' + std::to_string(r.q) + ',' +
               std::to_string(r.size) + ',' + format_double(r.p) + ',' + std::to_string(r.realization) + ',' +
               std::to_string(r.seed) + ',' + format_double(r.delta) + ',' + format_double(r.p_rec) + ',' +
               r.group_class + ',' + format_double(r.coherent_info) + ',' + format_double(r.per_logical_qci) + ',' +
               format_double(r.varphi) + ',' + format_double(r.qcmi) + ',' + format_double(r.classical_cmi) + '\n';
    }
    return out;
}

std::vector<SweepRecord> records_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::invalid_argument("records CSV: unexpected header");
    }
    std::vector<SweepRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto f = split(line, ',');
        if (f.size() != 15) {
            throw std::invalid_argument("records CSV: expected 15 fields");
        }
        SweepRecord r;
        r.family = code_family_from_string(std::string(f[0]));
        r.model = error_model_from_string(std::string(f[1]));
        r.q = parse_uint(f[2]);
        r.size = parse_uint(f[3]);
        r.p = parse_double(f[4]);
        r.realization = parse_uint(f[5]);
        r.seed = parse_uint(f[6]);
        r.delta = parse_double(f[7]);
        r.p_rec = parse_double(f[8]);
        r.group_class = std::string(f[9]);
        r.coherent_info = parse_double(f[10]);
        r.per_logical_qci = parse_double(f[11]);
        r.varphi = parse_double(f[12]);
        r.qcmi = parse_double(f[13]);
        r.classical_cmi = parse_double(f[14]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string aggregates_to_csv(const std::vector<PointAggregate>& aggregates) {
    std::string out = "family,model,q,size,p,n_qubits,k,count";
    for (const auto& name : stat_names()) {
        out += ',' + name + "_mean," + name + "_stderr";
    }
    out += ",classes\n";
    for (const auto& a : aggregates) {
        std::size_t count = 0;
        for (const auto& [name, s] : a.stats) {
            count = std::max(count, s.count);
        }
        out += to_string(a.family) + ',' + to_string(a.model) + ',' + std::to_string(a.q) + ',' +
               std::to_string(a.size) + ',' + format_double(a.p) + ',' + std::to_string(a.n_qubits) + ',' +
               format_double(a.k) + ',' + std::to_string(count);
        for (const auto& name : stat_names()) {
            auto it = a.stats.find(name);
            if (it == a.stats.end()) {
                out += ",nan,nan";
            } else {
                out += ',' + format_double(it->second.mean) + ',' + format_double(it->second.stderr_);
            }
        }
        out += ',';
        bool first = true;
        for (const auto& [label, n] : a.classes) {
            out += (first ? "" : ";") + label + ':' + std::to_string(n);
            first = false;
        }
        out += '\n';
    }
    return out;
}

void emit(const SweepConfig& config, const std::vector<SweepRecord>& records, const EmitPaths& paths,
          const std::string& command) {
    std::error_code ec;
    std::filesystem::create_directories(paths.dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + paths.dir.string() + ": " + ec.message());
    }
    write_file(paths.dir / "records.csv", records_to_csv(records));
    write_file(paths.dir / "aggregates.csv", records.empty() ? aggregates_to_csv({}) : aggregates_to_csv(aggregate(records)));
    std::size_t failures = 0;
    for (const auto& r : records) {
        failures += r.error.empty() ? 0 : 1;
    }
    nlohmann::json manifest = {{"version", kVersion},
                               {"command", command},
                               {"seed", config.seed},
                               {"config", config_to_json(config)},
                               {"records", records.size()},
                               {"failed_realizations", failures},
                               {"outputs", {"records.csv", "aggregates.csv"}}};
    write_file(paths.dir / "manifest.json", manifest.dump(2) + "\n");
    if (paths.plot_script) {
        std::string gp =
            "# gnuplot script: mean delta per logical qubit against p, one curve per size\n"
            "set datafile separator ','\n"
            "set key autotitle columnhead\n"
            "set xlabel 'p'\n"
            "set ylabel 'delta / k'\n"
            "sizes = system(\"tail -n +2 aggregates.csv | cut -d, -f4 | sort -n -u | tr '\\n' ' '\")\n"
            "plot for [s in sizes] 'aggregates.csv' using ($4 == s ? $5 : 1/0):11:12 with yerrorlines title 'size '.s\n";
        write_file(paths.dir / "plot.gp", gp);
    }
}

std::vector<SweepRecord> replay(const nlohmann::json& manifest, std::optional<std::size_t> threads) {
    SweepConfig config = config_from_json(manifest.at("config"));
    if (threads) {
        config.threads = *threads;
    }
    return run_sweep(config);
}

}  // namespace cohqec
