#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "cohqec/stabilizer.h"
#include "../oracle/dense.h"
#include "../oracle/samplers.h"

namespace cohqec {
namespace {

using oracle::Matrix;

std::vector<PauliOperator> paulis(std::initializer_list<const char*> texts) {
    std::vector<PauliOperator> out;
    for (auto t : texts) {
        out.push_back(PauliOperator::from_string(t));
    }
    return out;
}

std::uint64_t as_int(const BitVector& v) {
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        x |= static_cast<std::uint64_t>(v.get(i)) << i;
    }
    return x;
}

BitVector from_int(std::uint64_t x, std::size_t len) {
    BitVector v(len);
    for (std::size_t i = 0; i < len; ++i) {
        v.set(i, (x >> i) & 1);
    }
    return v;
}

TEST(StateFromCode, PureAndMixedExamples) {
    auto zero = state_from_code(1, paulis({"Z"}));
    EXPECT_TRUE(zero.is_pure());
    EXPECT_EQ(zero.entropy(), 0u);
    auto zz = state_from_code(2, paulis({"ZZ"}));
    EXPECT_FALSE(zz.is_pure());
    EXPECT_EQ(zz.entropy(), 1u);
}

TEST(StateFromCode, RejectsInvalidGenerators) {
    EXPECT_THROW(state_from_code(1, paulis({"X", "Z"})), std::invalid_argument);
    EXPECT_THROW(state_from_code(2, paulis({"ZZ", "ZI", "IZ"})), std::invalid_argument);
    EXPECT_THROW(state_from_code(1, paulis({"iZ"})), std::invalid_argument);
}

TEST(ApplyClifford, ExamplesAndDense) {
    auto plus = apply_clifford(state_from_code(1, paulis({"Z"})), CliffordUnitary::hadamard());
    EXPECT_EQ(plus.generators()[0].to_string(), "+X");
    Rng rng(30);
    auto s = oracle::random_pure_state(3, rng);
    EXPECT_EQ(apply_clifford(s, CliffordUnitary::identity(3)).generators(), s.generators());
    for (int trial = 0; trial < 30; ++trial) {
        auto state = oracle::random_mixed_state(3, rng);
        CliffordUnitary u = random_clifford(3, rng);
        Matrix U = oracle::clifford_matrix(u);
        Matrix expected = U * oracle::density_matrix(state.group()) * U.adjoint();
        EXPECT_TRUE(oracle::close(oracle::density_matrix(apply_clifford(state, u).group()), expected));
    }
}

TEST(Measure, ZOnZeroIsDeterministic) {
    Rng rng(31);
    auto obs = paulis({"Z"});
    auto out = measure_commuting_set(state_from_code(1, paulis({"Z"})), obs, rng);
    EXPECT_FALSE(out.syndrome.get(0));
    EXPECT_EQ(out.r_q(), 1u);
    EXPECT_EQ(out.rank_t, 0u);
}

TEST(Measure, GhzInComputationalBasis) {
    auto ghz = state_from_code(3, paulis({"XXX", "ZZI", "IZZ"}));
    auto obs = paulis({"ZII", "IZI", "IIZ"});
    auto sys = analyze_measurement(ghz, obs);
    EXPECT_EQ(sys.r_q(), 2u);
    EXPECT_EQ(sys.rank_t, 1u);
    Rng rng(32);
    int plus = 0;
    const int trials = 4000;
    for (int t = 0; t < trials; ++t) {
        auto out = measure_commuting_set(ghz, obs, rng);
        std::string s = out.syndrome.to_string();
        ASSERT_TRUE(s == "000" || s == "111");
        plus += s == "000";
        EXPECT_TRUE(out.post_state.is_pure());
        EXPECT_TRUE(out.post_state.group().contains(PauliOperator::from_string(s == "000" ? "ZII" : "-ZII")));
    }
    EXPECT_NEAR(plus / double(trials), 0.5, 3 * std::sqrt(0.25 / trials));
    auto dense = oracle::syndrome_distribution(oracle::density_matrix(ghz.group()), obs);
    EXPECT_NEAR(dense[0], 0.5, 1e-12);
    EXPECT_NEAR(dense[7], 0.5, 1e-12);
}

TEST(Measure, RejectsNonCommutingObservables) {
    Rng rng(33);
    auto obs = paulis({"X", "Z"});
    EXPECT_THROW(measure_commuting_set(state_from_code(1, paulis({"Z"})), obs, rng), std::invalid_argument);
}

// Closed-form distribution, post states and re-measurement against the dense oracle.
TEST(Measure, MatchesDenseBornRuleOnRandomInstances) {
    Rng rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.uniform_below(5);
        std::size_t m = 1 + rng.uniform_below(6);
        auto state = trial % 2 ? oracle::random_pure_state(n, rng) : oracle::random_mixed_state(n, rng);
        auto obs = oracle::random_commuting_set(n, m, rng);
        auto sys = analyze_measurement(state, obs);
        EXPECT_EQ(sys.inherited.size(), state.group().size() - sys.rank_t);
        if (state.is_pure()) {
            EXPECT_EQ(sys.r_q() + sys.rank_t, m);
        }
        Matrix rho = oracle::density_matrix(state.group());
        auto born = oracle::syndrome_distribution(rho, obs);
        double closed = std::ldexp(1.0, -static_cast<int>(sys.free_count()));
        for (std::uint64_t s = 0; s < born.size(); ++s) {
            BitVector syn = from_int(s, m);
            double expected = sys.admits(syn) ? closed : 0.0;
            ASSERT_NEAR(born[s], expected, 1e-10);
            if (expected > 0) {
                auto post = post_measurement_state(sys, obs, syn);
                Matrix proj = oracle::syndrome_projector(obs, s);
                Matrix expected_post = proj * rho * proj / born[s];
                ASSERT_TRUE(oracle::close(oracle::density_matrix(post.group()), expected_post));
                auto again = analyze_measurement(post, obs);
                EXPECT_EQ(again.free_count(), 0u);
                Rng dummy(0);
                EXPECT_EQ(sample_syndrome(again, dummy), syn);
                if (state.is_pure()) {
                    EXPECT_TRUE(post.is_pure());
                }
            }
        }
    }
}

TEST(Measure, EmpiricalFrequenciesWithinThreeSigma) {
    Rng rng(35);
    for (int trial = 0; trial < 10; ++trial) {
        auto state = oracle::random_pure_state(4, rng);
        auto obs = oracle::random_commuting_set(4, 4, rng);
        auto sys = analyze_measurement(state, obs);
        auto born = oracle::syndrome_distribution(oracle::density_matrix(state.group()), obs);
        std::map<std::uint64_t, int> counts;
        const int shots = 4000;
        for (int i = 0; i < shots; ++i) {
            counts[as_int(sample_syndrome(sys, rng))]++;
        }
        for (std::uint64_t s = 0; s < born.size(); ++s) {
            double f = counts[s] / double(shots);
            if (born[s] < 1e-12) {
                EXPECT_EQ(counts[s], 0);
            } else {
                EXPECT_NEAR(f, born[s], 3 * std::sqrt(born[s] * (1 - born[s]) / shots) + 1e-9);
            }
        }
    }
}

TEST(AverageOverSyndromes, Examples) {
    auto zero = state_from_code(1, paulis({"Z"}));
    auto z_obs = paulis({"Z"});
    auto x_obs = paulis({"X"});
    EXPECT_EQ(average_over_syndromes(zero, z_obs).generators(), zero.generators());
    EXPECT_EQ(average_over_syndromes(zero, x_obs).group().size(), 0u);
}

TEST(AverageOverSyndromes, MatchesDenseDephasing) {
    Rng rng(36);
    for (int trial = 0; trial < 50; ++trial) {
        auto state = oracle::random_pure_state(4, rng);
        auto obs = oracle::random_commuting_set(4, 1 + rng.uniform_below(4), rng);
        Matrix rho = oracle::density_matrix(state.group());
        Matrix expected = Matrix::Zero(16, 16);
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << obs.size()); ++s) {
            Matrix p = oracle::syndrome_projector(obs, s);
            expected += p * rho * p;
        }
        auto avg = average_over_syndromes(state, obs);
        EXPECT_TRUE(oracle::close(oracle::density_matrix(avg.group()), expected));
        EXPECT_EQ(avg.entropy(), analyze_measurement(state, obs).rank_t);
    }
}

TEST(RegionEntropy, Examples) {
    auto bell = state_from_code(2, paulis({"XX", "ZZ"}));
    std::vector<std::size_t> first = {0};
    EXPECT_EQ(region_entropy(bell, first), 1u);
    auto product = state_from_code(3, paulis({"ZII", "IXI", "IIY"}));
    std::vector<std::size_t> two = {0, 2};
    EXPECT_EQ(region_entropy(product, two), 0u);
    std::vector<std::size_t> bad = {3};
    EXPECT_THROW(region_entropy(product, bad), std::out_of_range);
}

TEST(RegionEntropy, MatchesDenseReducedStates) {
    Rng rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 5;
        auto state = trial % 2 ? oracle::random_pure_state(n, rng) : oracle::random_mixed_state(n, rng);
        std::vector<std::size_t> region;
        for (std::size_t q = 0; q < n; ++q) {
            if (rng.coin()) {
                region.push_back(q);
            }
        }
        Matrix rho = oracle::density_matrix(state.group());
        double dense = oracle::entropy(oracle::partial_trace(rho, n, region));
        EXPECT_NEAR(static_cast<double>(region_entropy(state, region)), dense, 1e-10);
    }
}

TEST(Qcmi, Examples) {
    std::vector<std::size_t> a = {0}, b = {1}, c = {2};
    EXPECT_EQ(qcmi(state_from_code(3, paulis({"ZII", "IZI", "IIZ"})), a, b, c), 0u);
    EXPECT_EQ(qcmi(state_from_code(3, paulis({"XXX", "ZZI", "IZZ"})), a, b, c), 1u);
    std::vector<std::size_t> overlap = {0, 1};
    EXPECT_THROW(qcmi(state_from_code(3, paulis({"ZII"})), a, overlap, c), std::invalid_argument);
}

TEST(Qcmi, MatchesDenseEntropies) {
    Rng rng(38);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 6;
        auto state = oracle::random_mixed_state(n, rng);
        std::vector<std::size_t> a, b, c;
        for (std::size_t q = 0; q < n; ++q) {
            int which = static_cast<int>(rng.uniform_below(4));
            (which == 0 ? a : which == 1 ? b : which == 2 ? c : a).push_back(q);
        }
        Matrix rho = oracle::density_matrix(state.group());
        auto s = [&](std::vector<std::size_t> r) { return oracle::entropy(oracle::partial_trace(rho, n, r)); };
        auto cat = [](std::vector<std::size_t> x, const std::vector<std::size_t>& y) {
            x.insert(x.end(), y.begin(), y.end());
            return x;
        };
        double dense = s(cat(a, c)) + s(cat(b, c)) - s(c) - s(cat(cat(a, b), c));
        EXPECT_NEAR(static_cast<double>(qcmi(state, a, b, c)), dense, 1e-9);
    }
}

TEST(GroupsEqual, SignsAndGeneratorChoice) {
    StabilizerGroup z(1, paulis({"Z"}));
    StabilizerGroup mz(1, paulis({"-Z"}));
    EXPECT_TRUE(groups_equal(z, mz, true));
    EXPECT_FALSE(groups_equal(z, mz, false));
    StabilizerGroup a(2, paulis({"ZZ", "XX"}));
    StabilizerGroup b(2, paulis({"-YY", "XX"}));
    EXPECT_TRUE(groups_equal(a, b, false));
}

TEST(GroupsEqual, InvariantUnderRowMixing) {
    Rng rng(39);
    for (int trial = 0; trial < 100; ++trial) {
        auto state = oracle::random_mixed_state(6, rng);
        auto gens = state.generators();
        for (int k = 0; k < 20 && gens.size() > 1; ++k) {
            std::size_t i = rng.uniform_below(gens.size());
            std::size_t j = rng.uniform_below(gens.size());
            if (i != j) {
                gens[i] *= gens[j];
            }
        }
        StabilizerGroup mixed(6, gens);
        EXPECT_TRUE(groups_equal(state.group(), mixed, false));
        EXPECT_EQ(state.group().canonical().generators(), mixed.canonical().generators());
    }
}

}  // namespace
}  // namespace cohqec
