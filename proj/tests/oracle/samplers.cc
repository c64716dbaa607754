#include "samplers.h"

namespace cohqec::oracle {

PauliOperator random_pauli(std::size_t n, Rng& rng, bool hermitian) {
    PauliOperator p(n);
    for (std::size_t q = 0; q < n; ++q) {
        p.x().set(q, rng.coin());
        p.z().set(q, rng.coin());
    }
    p.set_phase(hermitian ? 2 * static_cast<unsigned>(rng.uniform_below(2)) : static_cast<unsigned>(rng.uniform_below(4)));
    return p;
}

StabilizerState random_pure_state(std::size_t n, Rng& rng) {
    std::vector<PauliOperator> zs;
    for (std::size_t q = 0; q < n; ++q) {
        zs.push_back(PauliOperator::single(n, q, 'Z'));
    }
    StabilizerState s = state_from_code(n, std::move(zs));
    s.apply(random_clifford(n, rng));
    return s;
}

StabilizerState random_mixed_state(std::size_t n, Rng& rng) {
    StabilizerState pure = random_pure_state(n, rng);
    std::vector<PauliOperator> kept;
    for (const auto& g : pure.generators()) {
        if (rng.coin()) {
            kept.push_back(g);
        }
    }
    return state_from_code(n, std::move(kept));
}

std::vector<PauliOperator> random_commuting_set(std::size_t n, std::size_t m, Rng& rng) {
    StabilizerState base = random_pure_state(n, rng);
    std::vector<PauliOperator> out;
    while (out.size() < m) {
        PauliOperator p(n);
        for (const auto& g : base.generators()) {
            if (rng.uniform_below(3) == 0) {
                p *= g;
            }
        }
        if (p.is_identity()) {
            continue;
        }
        if (rng.coin()) {
            p.negate();
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace cohqec::oracle
