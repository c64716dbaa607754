#include "cohqec/codes.h"

#include <algorithm>
#include <stdexcept>

namespace cohqec {

std::string to_string(CodeFamily family) {
    switch (family) {
        case CodeFamily::toric:
            return "toric";
        case CodeFamily::hgp:
            return "hgp";
        case CodeFamily::rcc:
            return "rcc";
        case CodeFamily::custom:
            return "custom";
    }
    return "custom";
}

CodeFamily code_family_from_string(const std::string& name) {
    if (name == "toric") {
        return CodeFamily::toric;
    }
    if (name == "hgp") {
        return CodeFamily::hgp;
    }
    if (name == "rcc") {
        return CodeFamily::rcc;
    }
    if (name == "custom") {
        return CodeFamily::custom;
    }
    throw std::invalid_argument("unknown code family '" + name + "'");
}

void validate_code(const StabilizerCode& code) {
    auto fail = [](const std::string& what) { throw std::logic_error("invalid code: " + what); };
    for (const auto* list : {&code.checks, &code.logical_z, &code.logical_x}) {
        for (const auto& p : *list) {
            if (p.num_qubits() != code.n || !p.is_hermitian()) {
                fail("operators must be Hermitian on n qubits");
            }
        }
    }
    if (code.logical_z.size() != code.k || code.logical_x.size() != code.k) {
        fail("logical counts differ from k");
    }
    for (std::size_t i = 0; i < code.checks.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (!commutes(code.checks[i], code.checks[j])) {
                fail("checks " + std::to_string(i) + " and " + std::to_string(j) + " anticommute");
            }
        }
        for (std::size_t l = 0; l < code.k; ++l) {
            if (!commutes(code.checks[i], code.logical_z[l]) || !commutes(code.checks[i], code.logical_x[l])) {
                fail("logical " + std::to_string(l) + " anticommutes with check " + std::to_string(i));
            }
        }
    }
    for (std::size_t i = 0; i < code.k; ++i) {
        for (std::size_t j = 0; j < code.k; ++j) {
            if (commutes(code.logical_z[i], code.logical_x[j]) != (i != j)) {
                fail("logical pairing is not symplectic");
            }
            if (i != j && (!commutes(code.logical_z[i], code.logical_z[j]) ||
                           !commutes(code.logical_x[i], code.logical_x[j]))) {
                fail("logicals of the same type anticommute");
            }
        }
    }
    if (rank(symplectic_matrix(code.checks, code.n)) + code.k != code.n) {
        fail("rank of checks differs from n - k");
    }
}

std::vector<PauliOperator> independent_checks(const StabilizerCode& code) {
    XorBasis basis(2 * code.n);
    std::vector<PauliOperator> out;
    for (const auto& c : code.checks) {
        if (basis.insert(c.symplectic())) {
            out.push_back(c);
        }
    }
    return out;
}

StabilizerState code_state(const StabilizerCode& code) {
    std::vector<PauliOperator> gens = independent_checks(code);
    gens.insert(gens.end(), code.logical_z.begin(), code.logical_z.end());
    return state_from_code(code.n, std::move(gens));
}

// ---------------------------------------------------------------- toric

std::size_t toric_h_edge(std::size_t L, std::size_t r, std::size_t c) { return (r % L) * L + (c % L); }

std::size_t toric_v_edge(std::size_t L, std::size_t r, std::size_t c) { return L * L + (r % L) * L + (c % L); }

StabilizerCode build_toric(std::size_t L) {
    if (L < 2) {
        throw std::invalid_argument("build_toric: L must be at least 2");
    }
    StabilizerCode code;
    code.family = CodeFamily::toric;
    code.n = 2 * L * L;
    code.k = 2;
    code.geometry.lattice_size = L;
    auto with = [&](std::initializer_list<std::size_t> support, char kind) {
        PauliOperator p(code.n);
        for (auto q : support) {
            if (kind == 'X') {
                p.x().set(q);
            } else {
                p.z().set(q);
            }
        }
        return p;
    };
    for (std::size_t r = 0; r < L; ++r) {
        for (std::size_t c = 0; c < L; ++c) {
            code.checks.push_back(with({toric_h_edge(L, r, c), toric_h_edge(L, r, c + L - 1), toric_v_edge(L, r, c),
                                        toric_v_edge(L, r + L - 1, c)},
                                       'X'));
        }
    }
    for (std::size_t r = 0; r < L; ++r) {
        for (std::size_t c = 0; c < L; ++c) {
            std::vector<std::size_t> plaq = {toric_h_edge(L, r, c), toric_h_edge(L, r + 1, c), toric_v_edge(L, r, c),
                                             toric_v_edge(L, r, c + 1)};
            code.checks.push_back(with({plaq[0], plaq[1], plaq[2], plaq[3]}, 'Z'));
            code.geometry.plaquettes.push_back(std::move(plaq));
        }
    }
    PauliOperator z1(code.n), z2(code.n), x1(code.n), x2(code.n);
    for (std::size_t t = 0; t < L; ++t) {
        z1.z().set(toric_v_edge(L, t, 0));
        z2.x().set(toric_h_edge(L, t, 0));
        x1.x().set(toric_v_edge(L, 0, t));
        x2.z().set(toric_h_edge(L, 0, t));
    }
    code.logical_z = {z1, z2};
    code.logical_x = {x1, x2};
    return code;
}

std::vector<std::size_t> toric_column_ring(std::size_t L, std::size_t column, std::size_t width) {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < width; ++w) {
        for (std::size_t r = 0; r < L; ++r) {
            out.push_back(toric_h_edge(L, r, column + w));
            out.push_back(toric_v_edge(L, r, column + w));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> toric_column_checks(std::size_t L, std::size_t column, std::size_t width) {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < width; ++w) {
        for (std::size_t r = 0; r < L; ++r) {
            std::size_t c = (column + w) % L;
            out.push_back(r * L + c);
            out.push_back(L * L + r * L + c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- LDPC and HGP

ClassicalLdpcCode build_ldpc(std::size_t n, Rng& rng) {
    if (n % 2 != 0 || n < 6) {
        throw std::invalid_argument("build_ldpc: n must be even and at least 6");
    }
    const std::size_t m = n / 2;
    std::vector<std::size_t> sockets(3 * n);
    for (std::size_t i = 0; i < sockets.size(); ++i) {
        sockets[i] = i / 3;
    }
    for (int attempt = 0; attempt < 10000; ++attempt) {
        for (std::size_t i = sockets.size() - 1; i > 0; --i) {
            std::swap(sockets[i], sockets[rng.uniform_below(i + 1)]);
        }
        BitMatrix h(m, n);
        bool simple = true;
        for (std::size_t c = 0; c < m && simple; ++c) {
            for (std::size_t s = 0; s < 6; ++s) {
                std::size_t v = sockets[6 * c + s];
                if (h.get(c, v)) {
                    simple = false;
                    break;
                }
                h.set(c, v);
            }
        }
        if (simple) {
            return {n, std::move(h)};
        }
    }
    throw std::runtime_error("build_ldpc: no simple (3,6) graph after 10^4 draws");
}

namespace {

std::vector<std::size_t> non_pivot_columns(const BitMatrix& m) {
    auto e = rref(m);
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto p : e.pivots) {
        is_pivot[p] = 1;
    }
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!is_pivot[c]) {
            out.push_back(c);
        }
    }
    return out;
}

std::vector<std::vector<std::size_t>> check_adjacency(const std::vector<PauliOperator>& checks, std::size_t n) {
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& c : checks) {
        std::vector<std::size_t> support;
        for (std::size_t q = 0; q < n; ++q) {
            if (c.x().get(q) || c.z().get(q)) {
                support.push_back(q);
            }
        }
        for (auto a : support) {
            for (auto b : support) {
                if (a != b) {
                    adj[a][b] = 1;
                }
            }
        }
    }
    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (adj[a][b]) {
                out[a].push_back(b);
            }
        }
    }
    return out;
}

}  // namespace

StabilizerCode build_hgp(const ClassicalLdpcCode& h1, const ClassicalLdpcCode& h2) {
    return build_hgp(h1.parity, h2.parity);
}

StabilizerCode build_hgp(const BitMatrix& h1, const BitMatrix& h2) {
    const std::size_t m1 = h1.rows(), n1 = h1.cols();
    const std::size_t m2 = h2.rows(), n2 = h2.cols();
    StabilizerCode code;
    code.family = CodeFamily::hgp;
    code.n = n1 * n2 + m1 * m2;
    auto left = [&](std::size_t i, std::size_t j) { return i * n2 + j; };
    auto right = [&](std::size_t a, std::size_t b) { return n1 * n2 + a * m2 + b; };

    for (std::size_t a = 0; a < m1; ++a) {
        for (std::size_t j = 0; j < n2; ++j) {
            PauliOperator p(code.n);
            for (std::size_t i = 0; i < n1; ++i) {
                if (h1.get(a, i)) {
                    p.x().set(left(i, j));
                }
            }
            for (std::size_t b = 0; b < m2; ++b) {
                if (h2.get(b, j)) {
                    p.x().set(right(a, b));
                }
            }
            code.checks.push_back(std::move(p));
        }
    }
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t b = 0; b < m2; ++b) {
            PauliOperator p(code.n);
            for (std::size_t j = 0; j < n2; ++j) {
                if (h2.get(b, j)) {
                    p.z().set(left(i, j));
                }
            }
            for (std::size_t a = 0; a < m1; ++a) {
                if (h1.get(a, i)) {
                    p.z().set(right(a, b));
                }
            }
            code.checks.push_back(std::move(p));
        }
    }

    std::vector<PauliOperator> seeds;
    BitMatrix ker2 = null_space(h2);
    for (std::size_t i : non_pivot_columns(h1)) {
        for (std::size_t r = 0; r < ker2.rows(); ++r) {
            PauliOperator p(code.n);
            for (std::size_t j = 0; j < n2; ++j) {
                if (ker2.get(r, j)) {
                    p.x().set(left(i, j));
                }
            }
            seeds.push_back(std::move(p));
        }
    }
    BitMatrix coker1 = left_null_space(h1);
    for (std::size_t r = 0; r < coker1.rows(); ++r) {
        for (std::size_t b : non_pivot_columns(h2.transpose())) {
            PauliOperator p(code.n);
            for (std::size_t a = 0; a < m1; ++a) {
                if (coker1.get(r, a)) {
                    p.x().set(right(a, b));
                }
            }
            seeds.push_back(std::move(p));
        }
    }
    complete_logical_basis(code, seeds);
    code.geometry.adjacency = check_adjacency(code.checks, code.n);
    return code;
}

void complete_logical_basis(StabilizerCode& code, const std::vector<PauliOperator>& seeds) {
    const std::size_t n = code.n;
    BitMatrix check_matrix = symplectic_matrix(code.checks, n);
    const std::size_t k = n - rank(check_matrix);

    // Normalizer: v with omega(check, v) = 0, i.e. null space of the checks
    // with their x and z halves swapped.
    BitMatrix swapped = check_matrix.column_range(n, n).hstack(check_matrix.column_range(0, n));
    BitMatrix normalizer = null_space(swapped);

    std::vector<PauliOperator> pool;
    for (const auto& s : seeds) {
        PauliOperator p = s;
        p.set_phase(0);
        pool.push_back(std::move(p));
    }
    for (std::size_t r = 0; r < normalizer.rows(); ++r) {
        pool.push_back(PauliOperator::from_symplectic(normalizer.row_vector(r)));
    }

    XorBasis span(2 * n);
    for (std::size_t r = 0; r < check_matrix.rows(); ++r) {
        span.insert(check_matrix.row_vector(r));
    }
    std::vector<char> used(pool.size(), 0);
    std::vector<PauliOperator> zs, xs;
    for (std::size_t ai = 0; ai < pool.size(); ++ai) {
        if (used[ai]) {
            continue;
        }
        used[ai] = 1;
        const PauliOperator a = pool[ai];
        if (span.contains(a.symplectic())) {
            continue;
        }
        std::size_t bi = ai + 1;
        while (bi < pool.size() && (used[bi] || commutes(a, pool[bi]))) {
            ++bi;
        }
        if (bi == pool.size()) {
            continue;
        }
        used[bi] = 1;
        const PauliOperator b = pool[bi];
        span.insert(a.symplectic());
        span.insert(b.symplectic());
        zs.push_back(a);
        xs.push_back(b);
        for (std::size_t vi = ai + 1; vi < pool.size(); ++vi) {
            if (used[vi]) {
                continue;
            }
            bool with_b = !commutes(pool[vi], b);
            bool with_a = !commutes(pool[vi], a);
            if (with_b) {
                pool[vi] *= a;
            }
            if (with_a) {
                pool[vi] *= b;
            }
            pool[vi].set_phase(0);
        }
    }
    if (zs.size() != k) {
        throw std::logic_error("complete_logical_basis: found " + std::to_string(zs.size()) + " pairs, expected " +
                               std::to_string(k));
    }
    code.k = k;
    code.logical_z = std::move(zs);
    code.logical_x = std::move(xs);
}

// ---------------------------------------------------------------- RCC

std::vector<PlacedGate> brickwork_encoder(std::size_t n, std::size_t depth, Rng& rng) {
    std::vector<PlacedGate> gates;
    for (std::size_t t = 0; t < depth; ++t) {
        for (std::size_t i = t % 2; i + 1 < n; i += 2) {
            gates.push_back({{i, i + 1}, random_clifford(2, rng)});
        }
    }
    return gates;
}

StabilizerCode build_rcc(std::size_t n, std::size_t k, std::size_t depth, Rng& rng) {
    if (n < 2 || k > n || depth == 0) {
        throw std::invalid_argument("build_rcc: need n >= 2, k <= n and depth >= 1");
    }
    return rcc_from_encoder(n, k, brickwork_encoder(n, depth, rng));
}

StabilizerCode rcc_from_encoder(std::size_t n, std::size_t k, const std::vector<PlacedGate>& encoder) {
    if (k > n) {
        throw std::invalid_argument("rcc_from_encoder: k > n");
    }
    std::vector<LocalGate> gates;
    gates.reserve(encoder.size());
    for (const auto& g : encoder) {
        gates.emplace_back(g.gate, g.support);
    }
    auto encode = [&](PauliOperator p) {
        for (const auto& g : gates) {
            g.conjugate_in_place(p);
        }
        return p;
    };
    StabilizerCode code;
    code.family = CodeFamily::rcc;
    code.n = n;
    code.k = k;
    for (std::size_t q = 0; q < n; ++q) {
        PauliOperator z = encode(PauliOperator::single(n, q, 'Z'));
        if (q < k) {
            code.logical_z.push_back(std::move(z));
            code.logical_x.push_back(encode(PauliOperator::single(n, q, 'X')));
        } else {
            code.checks.push_back(std::move(z));
        }
    }
    code.geometry.adjacency.resize(n);
    for (std::size_t q = 0; q + 1 < n; ++q) {
        code.geometry.adjacency[q].push_back(q + 1);
        code.geometry.adjacency[q + 1].push_back(q);
    }
    return code;
}

// ---------------------------------------------------------------- JSON

namespace {

nlohmann::json strings_of(const std::vector<PauliOperator>& ps) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : ps) {
        out.push_back(p.to_string());
    }
    return out;
}

std::vector<PauliOperator> paulis_of(const nlohmann::json& arr, std::size_t n) {
    std::vector<PauliOperator> out;
    for (const auto& s : arr) {
        PauliOperator p = PauliOperator::from_string(s.get<std::string>());
        if (p.num_qubits() != n) {
            throw std::invalid_argument("code_from_json: Pauli length differs from n");
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

nlohmann::json code_to_json(const StabilizerCode& code) {
    return {
        {"family", to_string(code.family)},
        {"n", code.n},
        {"k", code.k},
        {"checks", strings_of(code.checks)},
        {"logical_z", strings_of(code.logical_z)},
        {"logical_x", strings_of(code.logical_x)},
        {"geometry",
         {{"lattice_size", code.geometry.lattice_size},
          {"plaquettes", code.geometry.plaquettes},
          {"adjacency", code.geometry.adjacency}}},
    };
}

StabilizerCode code_from_json(const nlohmann::json& doc) {
    StabilizerCode code;
    code.family = code_family_from_string(doc.at("family").get<std::string>());
    code.n = doc.at("n").get<std::size_t>();
    code.k = doc.at("k").get<std::size_t>();
    code.checks = paulis_of(doc.at("checks"), code.n);
    code.logical_z = paulis_of(doc.at("logical_z"), code.n);
    code.logical_x = paulis_of(doc.at("logical_x"), code.n);
    const auto& geo = doc.at("geometry");
    code.geometry.lattice_size = geo.at("lattice_size").get<std::size_t>();
    code.geometry.plaquettes = geo.at("plaquettes").get<std::vector<std::vector<std::size_t>>>();
    code.geometry.adjacency = geo.at("adjacency").get<std::vector<std::vector<std::size_t>>>();
    return code;
}

}  // namespace cohqec
