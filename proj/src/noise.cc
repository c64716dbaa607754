#include "cohqec/noise.h"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace cohqec {

std::string to_string(ErrorModel model) {
    switch (model) {
        case ErrorModel::toric_plaquette:
            return "plaquette";
        case ErrorModel::long_range:
            return "long";
        case ErrorModel::local:
            return "local";
    }
    return "plaquette";
}

ErrorModel error_model_from_string(const std::string& name) {
    if (name == "plaquette" || name == "toric_plaquette") {
        return ErrorModel::toric_plaquette;
    }
    if (name == "long" || name == "long_range" || name == "long_range_q") {
        return ErrorModel::long_range;
    }
    if (name == "local" || name == "local_q") {
        return ErrorModel::local;
    }
    throw std::invalid_argument("unknown error model '" + name + "'");
}

void ErrorModelConfig::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("error model: p must lie in [0, 1]");
    }
    if (q == 0) {
        throw std::invalid_argument("error model: q must be positive");
    }
    if (kind == ErrorModel::toric_plaquette && q != 4) {
        throw std::invalid_argument("error model: plaquette errors act on 4 qubits");
    }
}

ErrorRealization sample_toric_errors(const StabilizerCode& code, double p, Rng& rng) {
    if (code.family != CodeFamily::toric || code.geometry.plaquettes.empty()) {
        throw std::invalid_argument("sample_toric_errors: code is not toric");
    }
    ErrorRealization e;
    for (const auto& plaq : code.geometry.plaquettes) {
        if (rng.bernoulli(p)) {
            e.gates.push_back({plaq, random_clifford(plaq.size(), rng)});
        }
    }
    return e;
}

ErrorRealization sample_long_range(const StabilizerCode& code, double p, std::size_t q, Rng& rng) {
    const std::size_t n = code.n;
    if (q == 0 || q > n) {
        throw std::invalid_argument("sample_long_range: need 1 <= q <= n");
    }
    ErrorRealization e;
    for (std::size_t i = 0; i < n; ++i) {
        if (!rng.bernoulli(p)) {
            continue;
        }
        std::vector<std::size_t> support = {i};
        while (support.size() < q) {
            std::size_t j = rng.uniform_below(n);
            if (std::find(support.begin(), support.end(), j) == support.end()) {
                support.push_back(j);
            }
        }
        e.gates.push_back({std::move(support), random_clifford(q, rng)});
    }
    return e;
}

namespace {

std::vector<std::size_t> walk_support(const std::vector<std::vector<std::size_t>>& adj, std::size_t start,
                                      std::size_t q, Rng& rng) {
    std::vector<std::size_t> distinct;
    for (int attempt = 0; attempt < 100; ++attempt) {
        distinct = {start};
        std::size_t at = start;
        for (std::size_t step = 0; step + 1 < q; ++step) {
            const auto& nbrs = adj[at];
            if (nbrs.empty()) {
                break;
            }
            at = nbrs[rng.uniform_below(nbrs.size())];
            if (std::find(distinct.begin(), distinct.end(), at) == distinct.end()) {
                distinct.push_back(at);
            }
        }
        if (distinct.size() == q) {
            return distinct;
        }
    }
    std::vector<char> seen(adj.size(), 0);
    std::deque<std::size_t> frontier = {start};
    seen[start] = 1;
    while (!frontier.empty() && distinct.size() < q) {
        std::size_t v = frontier.front();
        frontier.pop_front();
        if (std::find(distinct.begin(), distinct.end(), v) == distinct.end()) {
            distinct.push_back(v);
        }
        for (auto w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                frontier.push_back(w);
            }
        }
    }
    if (distinct.size() < q) {
        throw std::runtime_error("sample_local: qubit graph component smaller than q");
    }
    return distinct;
}

}  // namespace

ErrorRealization sample_local(const StabilizerCode& code, double p, std::size_t q, Rng& rng) {
    const std::size_t n = code.n;
    if (q == 0 || q > n) {
        throw std::invalid_argument("sample_local: need 1 <= q <= n");
    }
    const bool chain = code.family == CodeFamily::rcc;
    if (!chain && code.geometry.adjacency.size() != n) {
        throw std::invalid_argument("sample_local: code has no qubit graph");
    }
    ErrorRealization e;
    for (std::size_t i = 0; i < n; ++i) {
        if (!rng.bernoulli(p)) {
            continue;
        }
        std::vector<std::size_t> support;
        if (chain) {
            std::size_t first = std::min(i, n - q);
            for (std::size_t j = 0; j < q; ++j) {
                support.push_back(first + j);
            }
        } else {
            support = walk_support(code.geometry.adjacency, i, q, rng);
        }
        e.gates.push_back({std::move(support), random_clifford(q, rng)});
    }
    return e;
}

ErrorRealization sample_errors(const StabilizerCode& code, const ErrorModelConfig& config, Rng& rng) {
    config.validate();
    switch (config.kind) {
        case ErrorModel::toric_plaquette:
            return sample_toric_errors(code, config.p, rng);
        case ErrorModel::long_range:
            return sample_long_range(code, config.p, config.q, rng);
        case ErrorModel::local:
            return sample_local(code, config.p, config.q, rng);
    }
    throw std::invalid_argument("sample_errors: unknown model");
}

void apply_realization_in_place(StabilizerState& state, const ErrorRealization& e) {
    for (const auto& g : e.gates) {
        for (auto q : g.support) {
            if (q >= state.num_qubits()) {
                throw std::invalid_argument("apply_realization: gate support outside the state");
            }
        }
        state.apply(LocalGate(g.gate, g.support));
    }
}

StabilizerState apply_realization(StabilizerState state, const ErrorRealization& e) {
    apply_realization_in_place(state, e);
    return state;
}

CliffordUnitary realization_unitary(const ErrorRealization& e, std::size_t n) {
    CliffordUnitary u = CliffordUnitary::identity(n);
    for (const auto& g : e.gates) {
        u = compose(embed(g.gate, g.support, n), u);
    }
    return u;
}

nlohmann::json realization_to_json(const ErrorRealization& e) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto& g : e.gates) {
        std::vector<std::string> xs, zs;
        for (std::size_t j = 0; j < g.gate.num_qubits(); ++j) {
            xs.push_back(g.gate.x_image(j).to_string());
            zs.push_back(g.gate.z_image(j).to_string());
        }
        gates.push_back({{"support", g.support}, {"x_images", xs}, {"z_images", zs}});
    }
    return {{"gates", gates}};
}

ErrorRealization realization_from_json(const nlohmann::json& doc) {
    ErrorRealization e;
    for (const auto& g : doc.at("gates")) {
        std::vector<PauliOperator> xs, zs;
        for (const auto& s : g.at("x_images")) {
            xs.push_back(PauliOperator::from_string(s.get<std::string>()));
        }
        for (const auto& s : g.at("z_images")) {
            zs.push_back(PauliOperator::from_string(s.get<std::string>()));
        }
        e.gates.push_back({g.at("support").get<std::vector<std::size_t>>(),
                           CliffordUnitary::from_images(std::move(xs), std::move(zs))});
    }
    return e;
}

}  // namespace cohqec
