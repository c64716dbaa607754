#include "cohqec/diagnostics.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cohqec {

namespace {

PauliOperator unsigned_from(const BitVector& bits) { return PauliOperator::from_symplectic(bits, 0); }

BitMatrix check_matrix(const StabilizerCode& code) { return symplectic_matrix(code.checks, code.n); }

char letter(bool x, bool z) {
    if (x && z) {
        return 'Y';
    }
    return x ? 'X' : (z ? 'Z' : 'I');
}

PauliOperator widen(const PauliOperator& p, std::size_t n) {
    BitVector x(n), z(n);
    for (std::size_t q = 0; q < p.num_qubits(); ++q) {
        x.set(q, p.x().get(q));
        z.set(q, p.z().get(q));
    }
    return PauliOperator(std::move(x), std::move(z), p.phase());
}

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> a, std::span<const std::size_t> b) {
    std::vector<char> used(n, 0);
    for (auto q : a) {
        used[q] = 1;
    }
    for (auto q : b) {
        used[q] = 1;
    }
    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < n; ++q) {
        if (!used[q]) {
            rest.push_back(q);
        }
    }
    return rest;
}

}  // namespace

LogicalExpansion expand_in_logical_basis(const StabilizerCode& code, std::span<const PauliOperator> ops) {
    const std::size_t k = code.k;
    BitMatrix basis = symplectic_matrix(code.logical_x, code.n)
                          .vstack(symplectic_matrix(code.logical_z, code.n))
                          .vstack(check_matrix(code));
    RowDecomposer dec(basis);
    LogicalExpansion out{BitMatrix(ops.size(), k), BitMatrix(ops.size(), k)};
    for (std::size_t i = 0; i < ops.size(); ++i) {
        auto c = dec.coefficients(ops[i].symplectic());
        if (!c) {
            throw std::logic_error("operator is not a logical operator of the code");
        }
        for (std::size_t j = 0; j < k; ++j) {
            out.x_part.set(i, j, c->get(j));
            out.z_part.set(i, j, c->get(k + j));
        }
    }
    return out;
}

std::vector<PauliOperator> post_logical_generators(const StabilizerCode& code, const StabilizerState& post) {
    if (!post.is_pure() || post.num_qubits() != code.n) {
        throw std::invalid_argument("post_logical_generators: need a pure state on the code qubits");
    }
    XorBasis checks(2 * code.n);
    for (const auto& c : code.checks) {
        checks.insert(c.symplectic());
    }
    BitMatrix residues(0, 2 * code.n);
    for (const auto& g : post.generators()) {
        BitVector r = checks.reduce(g.symplectic());
        if (r.any()) {
            residues.append_row(r);
        }
    }
    RowEchelon e = rref(residues);
    std::vector<PauliOperator> out;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        PauliOperator p = unsigned_from(e.matrix.row_vector(i));
        for (const auto& c : code.checks) {
            if (!commutes(p, c)) {
                throw std::logic_error("post_logical_generators: post state does not contain the checks");
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::size_t combined_group_delta(const StabilizerCode& code, std::span<const PauliOperator> initial_logicals,
                                 std::span<const PauliOperator> post_logicals) {
    BitMatrix base = check_matrix(code).vstack(symplectic_matrix(initial_logicals, code.n));
    std::size_t before = rank(base);
    return rank(base.vstack(symplectic_matrix(post_logicals, code.n))) - before;
}

LogicalDiagnostic delta_logical(const StabilizerCode& code, const StabilizerState& post) {
    LogicalDiagnostic d;
    d.sign_free_group = post_logical_generators(code, post);
    d.delta = combined_group_delta(code, code.logical_z, d.sign_free_group);
    LogicalExpansion e = expand_in_logical_basis(code, d.sign_free_group);
    d.delta_commutator = rank(e.x_part);
    d.p_rec = std::ldexp(1.0, -static_cast<int>(d.delta));
    if (code.family == CodeFamily::toric && code.k == 2) {
        d.group_class = classify_expansion(e);
    }
    return d;
}

const std::vector<std::string>& toric_group_labels() {
    static const std::vector<std::string> labels = {
        "P_XX", "P_XY", "P_XZ", "P_YX", "P_YY", "P_YZ", "P_ZX", "P_ZY", "P_ZZ",
        "B_XYZ", "B_XZY", "B_YXZ", "B_YZX", "B_ZXY", "B_ZYX",
    };
    return labels;
}

std::string classify_expansion(const LogicalExpansion& e) {
    if (e.x_part.cols() != 2 || e.x_part.rows() != 2) {
        throw std::logic_error("classify: need two generators over two logical qubits");
    }
    struct Element {
        char first;
        char second;
    };
    auto element = [&](bool use0, bool use1) {
        bool bits[4] = {false, false, false, false};
        for (std::size_t r = 0; r < 2; ++r) {
            if ((r == 0 && !use0) || (r == 1 && !use1)) {
                continue;
            }
            bits[0] ^= e.x_part.get(r, 0);
            bits[1] ^= e.z_part.get(r, 0);
            bits[2] ^= e.x_part.get(r, 1);
            bits[3] ^= e.z_part.get(r, 1);
        }
        return Element{letter(bits[0], bits[1]), letter(bits[2], bits[3])};
    };
    Element els[3] = {element(true, false), element(false, true), element(true, true)};
    char first_only = 0, second_only = 0;
    for (const auto& el : els) {
        if (el.first == 'I' && el.second == 'I') {
            throw std::logic_error("classify: generators are dependent");
        }
        if (el.second == 'I') {
            first_only = el.first;
        }
        if (el.first == 'I') {
            second_only = el.second;
        }
    }
    if (first_only || second_only) {
        if (!first_only || !second_only) {
            throw std::logic_error("classify: group is not isotropic");
        }
        return std::string("P_") + first_only + second_only;
    }
    std::string partner = "???";
    for (const auto& el : els) {
        partner[el.first == 'X' ? 0 : (el.first == 'Y' ? 1 : 2)] = el.second;
    }
    std::string label = "B_" + partner;
    for (const auto& l : toric_group_labels()) {
        if (l == label) {
            return label;
        }
    }
    throw std::logic_error("classify: group is not isotropic");
}

std::string classify_toric_group(const StabilizerCode& code, std::span<const PauliOperator> logicals) {
    if (code.k != 2 || logicals.size() != 2) {
        throw std::logic_error("classify_toric_group: need two logical generators of a k = 2 code");
    }
    return classify_expansion(expand_in_logical_basis(code, logicals));
}

bool syndrome_independence_check(const StabilizerCode& code, const ErrorRealization& e, std::size_t trials,
                                 std::uint64_t seed) {
    if (trials < 2) {
        throw std::invalid_argument("syndrome_independence_check: need at least two trials");
    }
    StabilizerState state = apply_realization(code_state(code), e);
    BitMatrix first;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(Rng::derive(seed, 0, t));
        MeasurementOutcome out = measure_commuting_set(state, code.checks, rng);
        auto logicals = post_logical_generators(code, out.post_state);
        BitMatrix m = symplectic_matrix(logicals, code.n);
        if (t == 0) {
            first = std::move(m);
        } else if (!(m == first)) {
            return false;
        }
    }
    return true;
}

ChannelDiagnostic coherent_information(const StabilizerCode& code, const ErrorRealization& e) {
    const std::size_t n = code.n;
    const std::size_t k = code.k;
    const std::size_t total = n + k;
    std::vector<PauliOperator> gens;
    for (const auto& c : independent_checks(code)) {
        gens.push_back(widen(c, total));
    }
    for (std::size_t i = 0; i < k; ++i) {
        PauliOperator xx = widen(code.logical_x[i], total);
        xx *= PauliOperator::single(total, n + i, 'X');
        PauliOperator zz = widen(code.logical_z[i], total);
        zz *= PauliOperator::single(total, n + i, 'Z');
        gens.push_back(std::move(xx));
        gens.push_back(std::move(zz));
    }
    StabilizerState state(StabilizerGroup::trusted(total, std::move(gens)));
    apply_realization_in_place(state, e);
    std::vector<PauliOperator> checks;
    for (const auto& c : code.checks) {
        checks.push_back(widen(c, total));
    }
    StabilizerState averaged = average_over_syndromes(state, checks);
    std::vector<std::size_t> code_qubits(n);
    for (std::size_t q = 0; q < n; ++q) {
        code_qubits[q] = q;
    }
    double s_q = static_cast<double>(region_entropy(averaged, code_qubits));
    double s_rq = static_cast<double>(averaged.entropy());
    ChannelDiagnostic d;
    d.coherent_info = s_q - s_rq;
    d.per_logical = k ? d.coherent_info / static_cast<double>(k) : std::numeric_limits<double>::quiet_NaN();
    return d;
}

std::size_t classical_cmi(const BitMatrix& q, std::span<const std::size_t> a, std::span<const std::size_t> b,
                          std::span<const std::size_t> c) {
    std::vector<char> mark(q.cols(), 0);
    for (auto part : {a, b, c}) {
        for (auto i : part) {
            if (i >= q.cols() || mark[i]) {
                throw std::invalid_argument("classical_cmi: regions must partition the syndrome bits");
            }
            mark[i] = 1;
        }
    }
    if (a.size() + b.size() + c.size() != q.cols()) {
        throw std::invalid_argument("classical_cmi: regions must cover every syndrome bit");
    }
    std::vector<std::size_t> ab(a.begin(), a.end());
    ab.insert(ab.end(), b.begin(), b.end());
    return rank(q.select_columns(a)) + rank(q.select_columns(b)) - rank(q.select_columns(ab));
}

SyndromeStats syndrome_stats(const ConstraintSystem& system) {
    SyndromeStats s;
    s.n_s = system.num_observables;
    s.r_q = system.r_q();
    s.phi_global = s.n_s - s.r_q;
    s.varphi = s.n_s ? static_cast<double>(s.r_q) / static_cast<double>(s.n_s)
                     : std::numeric_limits<double>::quiet_NaN();
    return s;
}

SyndromeStats syndrome_stats(const MeasurementOutcome& outcome) {
    SyndromeStats s;
    s.n_s = outcome.num_observables;
    s.r_q = outcome.r_q();
    s.phi_global = s.n_s - s.r_q;
    s.varphi = s.n_s ? static_cast<double>(s.r_q) / static_cast<double>(s.n_s)
                     : std::numeric_limits<double>::quiet_NaN();
    return s;
}

RegionSplit toric_qubit_regions(std::size_t L, std::size_t separation, std::size_t width) {
    if (width == 0 || separation < width || separation + width > L) {
        throw std::invalid_argument("toric regions: strips must be disjoint and fit on the torus");
    }
    RegionSplit s;
    s.a = toric_column_ring(L, 0, width);
    s.b = toric_column_ring(L, separation, width);
    s.c = complement(2 * L * L, s.a, s.b);
    return s;
}

RegionSplit toric_check_regions(std::size_t L, std::size_t separation, std::size_t width) {
    if (width == 0 || separation < width || separation + width > L) {
        throw std::invalid_argument("toric regions: strips must be disjoint and fit on the torus");
    }
    RegionSplit s;
    s.a = toric_column_checks(L, 0, width);
    s.b = toric_column_checks(L, separation, width);
    s.c = complement(2 * L * L, s.a, s.b);
    return s;
}

}  // namespace cohqec
