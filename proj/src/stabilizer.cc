#include "cohqec/stabilizer.h"

#include <stdexcept>

namespace cohqec {

namespace {

PauliOperator product_of(std::span<const PauliOperator> paulis, const BitVector& coeffs, std::size_t n) {
    PauliOperator out(n);
    for (std::size_t i = 0; i < paulis.size(); ++i) {
        if (coeffs.get(i)) {
            out *= paulis[i];
        }
    }
    return out;
}

void check_commuting_set(std::span<const PauliOperator> paulis, std::size_t n, const char* what) {
    for (std::size_t i = 0; i < paulis.size(); ++i) {
        if (paulis[i].num_qubits() != n) {
            throw std::invalid_argument(std::string(what) + ": qubit count mismatch");
        }
        if (!paulis[i].is_hermitian()) {
            throw std::invalid_argument(std::string(what) + ": operators must be Hermitian");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (!commutes(paulis[i], paulis[j])) {
                throw std::invalid_argument(std::string(what) + ": operators must commute pairwise");
            }
        }
    }
}

BitMatrix commutator_matrix(std::span<const PauliOperator> observables, std::span<const PauliOperator> generators) {
    BitMatrix t(observables.size(), generators.size());
    for (std::size_t i = 0; i < observables.size(); ++i) {
        for (std::size_t j = 0; j < generators.size(); ++j) {
            if (!commutes(observables[i], generators[j])) {
                t.set(i, j);
            }
        }
    }
    return t;
}

std::vector<PauliOperator> commuting_subgroup(const BitMatrix& t, std::span<const PauliOperator> generators,
                                              std::size_t n) {
    BitMatrix kernel = null_space(t);
    std::vector<PauliOperator> out;
    out.reserve(kernel.rows());
    for (std::size_t r = 0; r < kernel.rows(); ++r) {
        out.push_back(product_of(generators, kernel.row_vector(r), n));
    }
    return out;
}

void check_region(std::span<const std::size_t> region, std::size_t n, std::vector<char>& mark) {
    for (auto q : region) {
        if (q >= n) {
            throw std::out_of_range("region index out of range");
        }
        if (mark[q]) {
            throw std::invalid_argument("regions must be disjoint and without repeats");
        }
        mark[q] = 1;
    }
}

}  // namespace

// ---------------------------------------------------------------- StabilizerGroup

StabilizerGroup::StabilizerGroup(std::size_t n, std::vector<PauliOperator> generators)
    : n_(n), generators_(std::move(generators)) {
    check_commuting_set(generators_, n_, "StabilizerGroup");
    if (rank(matrix()) != generators_.size()) {
        throw std::invalid_argument("StabilizerGroup: generators are dependent");
    }
}

StabilizerGroup StabilizerGroup::trusted(std::size_t n, std::vector<PauliOperator> generators) {
    StabilizerGroup g(n);
    g.generators_ = std::move(generators);
    return g;
}

BitMatrix StabilizerGroup::matrix() const { return symplectic_matrix(generators_, n_); }

StabilizerGroup StabilizerGroup::canonical() const {
    TrackedEchelon e = rref_tracked(matrix());
    std::vector<PauliOperator> rows;
    rows.reserve(e.pivots.size());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        rows.push_back(product_of(generators_, e.transform.row_vector(i), n_));
    }
    return trusted(n_, std::move(rows));
}

bool StabilizerGroup::contains(const PauliOperator& p, bool sign_free) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("StabilizerGroup::contains: qubit count mismatch");
    }
    RowDecomposer dec(matrix());
    auto coeffs = dec.coefficients(p.symplectic());
    if (!coeffs) {
        return false;
    }
    if (sign_free) {
        return true;
    }
    return product_of(generators_, *coeffs, n_).phase() == p.phase();
}

std::string StabilizerGroup::to_string() const {
    std::string s;
    for (const auto& g : generators_) {
        s += g.to_string();
        s += '\n';
    }
    return s;
}

bool groups_equal(const StabilizerGroup& a, const StabilizerGroup& b, bool sign_free) {
    if (a.num_qubits() != b.num_qubits() || a.size() != b.size()) {
        return false;
    }
    if (sign_free) {
        return rref(a.matrix()).matrix == rref(b.matrix()).matrix;
    }
    return a.canonical().generators() == b.canonical().generators();
}

// ---------------------------------------------------------------- StabilizerState

void StabilizerState::apply(const LocalGate& gate) {
    for (auto& g : group_.generators_) {
        gate.conjugate_in_place(g);
    }
}

void StabilizerState::apply(const CliffordUnitary& u) {
    if (u.num_qubits() != num_qubits()) {
        throw std::invalid_argument("apply_clifford: qubit count mismatch");
    }
    for (auto& g : group_.generators_) {
        g = conjugate(u, g);
    }
}

StabilizerState state_from_code(std::size_t n, std::vector<PauliOperator> generators) {
    return StabilizerState(StabilizerGroup(n, std::move(generators)));
}

StabilizerState apply_clifford(StabilizerState state, const CliffordUnitary& u) {
    state.apply(u);
    return state;
}

// ---------------------------------------------------------------- measurement

bool ConstraintSystem::admits(const BitVector& syndrome) const {
    if (syndrome.size() != num_observables) {
        return false;
    }
    for (std::size_t k = 0; k < constraints.rows(); ++k) {
        if (dot(constraints.row_vector(k), syndrome) != constraint_signs.get(k)) {
            return false;
        }
    }
    return true;
}

ConstraintSystem analyze_measurement(const StabilizerState& state, std::span<const PauliOperator> observables) {
    const std::size_t n = state.num_qubits();
    const auto& gens = state.generators();
    check_commuting_set(observables, n, "measurement");
    const std::size_t m = observables.size();
    const std::size_t g = gens.size();

    ConstraintSystem sys;
    sys.num_qubits = n;
    sys.num_observables = m;
    sys.commutator = commutator_matrix(observables, gens);
    sys.rank_t = rank(sys.commutator);

    // (v, w) with prod O^v = +-prod g^w. Independence of the generators makes the
    // projection onto v injective, so every rref pivot lies among the v columns.
    BitMatrix stacked = symplectic_matrix(observables, n).vstack(state.group().matrix());
    BitMatrix null = left_null_space(stacked);
    sys.constraints = null.column_range(0, m);
    BitMatrix w = null.column_range(m, g);
    sys.constraint_signs = BitVector(null.rows());
    for (std::size_t k = 0; k < null.rows(); ++k) {
        BitVector v = sys.constraints.row_vector(k);
        std::size_t pivot = v.first_set();
        if (pivot == m) {
            throw std::logic_error("analyze_measurement: dependent stabilizer generators");
        }
        sys.pivots.push_back(pivot);
        PauliOperator lhs = product_of(observables, v, n);
        PauliOperator rhs = product_of(gens, w.row_vector(k), n);
        unsigned diff = (lhs.phase() + 4 - rhs.phase()) & 3u;
        if (diff & 1u) {
            throw std::logic_error("analyze_measurement: non-Hermitian constraint product");
        }
        sys.constraint_signs.set(k, diff == 2);
    }
    sys.inherited = commuting_subgroup(sys.commutator, gens, n);
    return sys;
}

BitVector sample_syndrome(const ConstraintSystem& system, Rng& rng) {
    const std::size_t m = system.num_observables;
    BitVector syndrome(m);
    std::vector<char> is_pivot(m, 0);
    for (auto p : system.pivots) {
        is_pivot[p] = 1;
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (!is_pivot[i] && rng.coin()) {
            syndrome.set(i);
        }
    }
    // Rows are fully reduced, so each row's only pivot bit is its own.
    for (std::size_t k = 0; k < system.constraints.rows(); ++k) {
        bool parity = dot(system.constraints.row_vector(k), syndrome);
        syndrome.set(system.pivots[k], parity != system.constraint_signs.get(k));
    }
    return syndrome;
}

StabilizerState post_measurement_state(const ConstraintSystem& system, std::span<const PauliOperator> observables,
                                       const BitVector& syndrome) {
    if (observables.size() != system.num_observables || syndrome.size() != system.num_observables) {
        throw std::invalid_argument("post_measurement_state: size mismatch");
    }
    const std::size_t n = system.num_qubits;
    std::vector<PauliOperator> gens = system.inherited;
    XorBasis span(2 * n);
    for (const auto& g : gens) {
        span.insert(g.symplectic());
    }
    for (std::size_t i = 0; i < observables.size(); ++i) {
        if (span.insert(observables[i].symplectic())) {
            PauliOperator o = observables[i];
            if (syndrome.get(i)) {
                o.negate();
            }
            gens.push_back(std::move(o));
        }
    }
    return StabilizerState(StabilizerGroup::trusted(n, std::move(gens)));
}

MeasurementOutcome measure_commuting_set(const StabilizerState& state, std::span<const PauliOperator> observables,
                                         Rng& rng) {
    ConstraintSystem sys = analyze_measurement(state, observables);
    MeasurementOutcome out;
    out.syndrome = sample_syndrome(sys, rng);
    out.post_state = post_measurement_state(sys, observables, out.syndrome);
    out.rank_t = sys.rank_t;
    out.num_observables = sys.num_observables;
    out.constraint_signs = std::move(sys.constraint_signs);
    out.constraint_matrix = std::move(sys.constraints);
    return out;
}

StabilizerState average_over_syndromes(const StabilizerState& state, std::span<const PauliOperator> observables) {
    const std::size_t n = state.num_qubits();
    check_commuting_set(observables, n, "average_over_syndromes");
    BitMatrix t = commutator_matrix(observables, state.generators());
    return StabilizerState(StabilizerGroup::trusted(n, commuting_subgroup(t, state.generators(), n)));
}

std::size_t region_entropy(const StabilizerState& state, std::span<const std::size_t> region) {
    const std::size_t n = state.num_qubits();
    std::vector<char> in_region(n, 0);
    check_region(region, n, in_region);
    std::vector<std::size_t> outside;
    for (std::size_t q = 0; q < n; ++q) {
        if (!in_region[q]) {
            outside.push_back(q);
        }
    }
    const std::size_t outside_count = outside.size();
    for (std::size_t i = 0; i < outside_count; ++i) {
        outside.push_back(n + outside[i]);
    }
    const std::size_t g = state.group().size();
    // Generators supported inside the region: g - rank of the outside columns.
    std::size_t inside = g - rank(state.group().matrix().select_columns(outside));
    return region.size() - inside;
}

std::size_t qcmi(const StabilizerState& state, std::span<const std::size_t> a, std::span<const std::size_t> b,
                 std::span<const std::size_t> c) {
    std::vector<char> mark(state.num_qubits(), 0);
    check_region(a, state.num_qubits(), mark);
    check_region(b, state.num_qubits(), mark);
    check_region(c, state.num_qubits(), mark);
    auto join = [](std::initializer_list<std::span<const std::size_t>> parts) {
        std::vector<std::size_t> out;
        for (auto p : parts) {
            out.insert(out.end(), p.begin(), p.end());
        }
        return out;
    };
    std::size_t s_ac = region_entropy(state, join({a, c}));
    std::size_t s_bc = region_entropy(state, join({b, c}));
    std::size_t s_c = region_entropy(state, c);
    std::size_t s_abc = region_entropy(state, join({a, b, c}));
    return s_ac + s_bc - s_c - s_abc;
}

}  // namespace cohqec
