#include <gtest/gtest.h>

#include <gsl/gsl_cdf.h>

#include <cmath>
#include <deque>
#include <set>

#include "cohqec/noise.h"
#include "../oracle/dense.h"
#include "../oracle/samplers.h"

namespace cohqec {
namespace {

StabilizerCode bare_code(std::size_t n) {
    StabilizerCode code;
    code.n = n;
    code.k = n;
    for (std::size_t q = 0; q < n; ++q) {
        code.logical_z.push_back(PauliOperator::single(n, q, 'Z'));
        code.logical_x.push_back(PauliOperator::single(n, q, 'X'));
    }
    return code;
}

bool connected(const std::vector<std::vector<std::size_t>>& adj, const std::vector<std::size_t>& support) {
    std::set<std::size_t> in(support.begin(), support.end());
    std::set<std::size_t> seen = {support[0]};
    std::deque<std::size_t> todo = {support[0]};
    while (!todo.empty()) {
        auto v = todo.front();
        todo.pop_front();
        for (auto w : adj[v]) {
            if (in.count(w) && seen.insert(w).second) {
                todo.push_back(w);
            }
        }
    }
    return seen.size() == in.size();
}

TEST(Noise, TrivialProbabilities) {
    StabilizerCode toric = build_toric(2);
    Rng rng(1);
    EXPECT_TRUE(sample_toric_errors(toric, 0.0, rng).gates.empty());
    auto full = sample_toric_errors(toric, 1.0, rng);
    ASSERT_EQ(full.gates.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(full.gates[i].support, toric.geometry.plaquettes[i]);
        EXPECT_EQ(full.gates[i].gate.num_qubits(), 4u);
    }
    StabilizerCode bare = bare_code(6);
    EXPECT_EQ(sample_long_range(bare, 1.0, 3, rng).gates.size(), 6u);
    EXPECT_TRUE(sample_long_range(bare, 0.0, 3, rng).gates.empty());
}

TEST(Noise, Errors) {
    Rng rng(2);
    StabilizerCode bare = bare_code(4);
    EXPECT_THROW(sample_toric_errors(bare, 0.5, rng), std::invalid_argument);
    EXPECT_THROW(sample_long_range(bare, 0.5, 5, rng), std::invalid_argument);
    EXPECT_THROW(sample_local(bare, 0.5, 2, rng), std::invalid_argument);
    ErrorModelConfig bad{ErrorModel::toric_plaquette, 0.5, 3};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    ErrorModelConfig bad_p{ErrorModel::long_range, 1.5, 2};
    EXPECT_THROW(bad_p.validate(), std::invalid_argument);
    EXPECT_EQ(error_model_from_string("long"), ErrorModel::long_range);
    EXPECT_EQ(error_model_from_string("local_q"), ErrorModel::local);
    EXPECT_THROW(error_model_from_string("global"), std::invalid_argument);
}

TEST(Noise, ToricGateCountIsBinomial) {
    StabilizerCode toric = build_toric(4);
    Rng rng(3);
    const int samples = 10000;
    const double p = 0.41;
    double sum = 0;
    for (int s = 0; s < samples; ++s) {
        sum += static_cast<double>(sample_toric_errors(toric, p, rng).gates.size());
    }
    double mean = sum / samples;
    double sigma = std::sqrt(16 * p * (1 - p) / samples);
    EXPECT_NEAR(mean, 16 * p, 3 * sigma);
}

TEST(Noise, LongRangePartnersAreUniform) {
    const std::size_t n = 16;
    StabilizerCode bare = bare_code(n);
    Rng rng(4);
    std::vector<double> counts(n, 0);
    const int samples = 100000 / static_cast<int>(n);
    for (int s = 0; s < samples; ++s) {
        auto e = sample_long_range(bare, 1.0, 3, rng);
        for (const auto& g : e.gates) {
            ASSERT_EQ(g.support.size(), 3u);
            ASSERT_EQ(std::set<std::size_t>(g.support.begin(), g.support.end()).size(), 3u);
            if (g.support[0] == 0) {
                for (std::size_t j = 1; j < 3; ++j) {
                    counts[g.support[j]] += 1;
                }
            }
        }
    }
    EXPECT_EQ(counts[0], 0);
    double total = 2.0 * samples;
    double expected = total / (n - 1);
    double chi2 = 0;
    for (std::size_t j = 1; j < n; ++j) {
        chi2 += (counts[j] - expected) * (counts[j] - expected) / expected;
    }
    EXPECT_GT(gsl_cdf_chisq_Q(chi2, n - 2), 1e-3);
}

TEST(Noise, SingleQubitModelsAgree) {
    Rng rng(5);
    StabilizerCode hgp = build_hgp(build_ldpc(8, rng), build_ldpc(8, rng));
    for (int s = 0; s < 20; ++s) {
        for (const auto& e : {sample_long_range(hgp, 0.3, 1, rng), sample_local(hgp, 0.3, 1, rng)}) {
            std::size_t last = 0;
            for (std::size_t i = 0; i < e.gates.size(); ++i) {
                ASSERT_EQ(e.gates[i].support.size(), 1u);
                if (i > 0) {
                    EXPECT_GT(e.gates[i].support[0], last);
                }
                last = e.gates[i].support[0];
            }
        }
    }
}

TEST(Noise, HgpLocalSupportsAreConnected) {
    Rng rng(6);
    StabilizerCode hgp = build_hgp(build_ldpc(8, rng), build_ldpc(8, rng));
    for (std::size_t q : {2, 3, 4, 6}) {
        for (int s = 0; s < 10; ++s) {
            auto e = sample_local(hgp, 0.5, q, rng);
            for (const auto& g : e.gates) {
                ASSERT_EQ(g.support.size(), q);
                ASSERT_EQ(std::set<std::size_t>(g.support.begin(), g.support.end()).size(), q);
                EXPECT_TRUE(connected(hgp.geometry.adjacency, g.support));
            }
        }
    }
}

TEST(Noise, RccLocalSupportsAreContiguous) {
    Rng rng(7);
    StabilizerCode rcc = build_rcc(8, 2, 8, rng);
    auto e = sample_local(rcc, 1.0, 3, rng);
    ASSERT_EQ(e.gates.size(), 8u);
    EXPECT_EQ(e.gates[7].support, (std::vector<std::size_t>{5, 6, 7}));
    EXPECT_EQ(e.gates[6].support, (std::vector<std::size_t>{5, 6, 7}));
    EXPECT_EQ(e.gates[2].support, (std::vector<std::size_t>{2, 3, 4}));
}

TEST(Noise, ApplyMatchesDenseCircuit) {
    Rng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng.uniform_below(3);
        StabilizerCode bare = bare_code(n);
        auto e = sample_long_range(bare, 0.6, 1 + rng.uniform_below(n), rng);
        StabilizerState state = oracle::random_pure_state(n, rng);
        StabilizerState after = apply_realization(state, e);
        oracle::Matrix rho = oracle::density_matrix(state.group());
        for (const auto& g : e.gates) {
            oracle::Matrix u = oracle::clifford_matrix(embed(g.gate, g.support, n));
            rho = u * rho * u.adjoint();
        }
        EXPECT_TRUE(oracle::close(rho, oracle::density_matrix(after.group())));
        StabilizerState via_unitary = apply_clifford(state, realization_unitary(e, n));
        EXPECT_TRUE(groups_equal(via_unitary.group(), after.group(), false));
    }
}

TEST(Noise, EmptyRealizationLeavesStateAlone) {
    Rng rng(9);
    StabilizerState state = oracle::random_pure_state(5, rng);
    StabilizerState after = apply_realization(state, ErrorRealization{});
    EXPECT_EQ(after.generators(), state.generators());
}

TEST(Noise, ApplyRejectsOutOfRangeSupport) {
    Rng rng(10);
    ErrorRealization e;
    e.gates.push_back({{0, 5}, random_clifford(2, rng)});
    StabilizerState state = oracle::random_pure_state(4, rng);
    EXPECT_THROW(apply_realization(state, e), std::invalid_argument);
}

TEST(Noise, JsonRoundTrip) {
    Rng rng(11);
    auto e = sample_toric_errors(build_toric(3), 0.5, rng);
    auto back = realization_from_json(nlohmann::json::parse(realization_to_json(e).dump()));
    ASSERT_EQ(back.gates.size(), e.gates.size());
    for (std::size_t i = 0; i < e.gates.size(); ++i) {
        EXPECT_EQ(back.gates[i].support, e.gates[i].support);
        for (std::size_t j = 0; j < 4; ++j) {
            EXPECT_EQ(back.gates[i].gate.x_image(j), e.gates[i].gate.x_image(j));
            EXPECT_EQ(back.gates[i].gate.z_image(j), e.gates[i].gate.z_image(j));
        }
    }
}

}  // namespace
}  // namespace cohqec
