#include <gsl/gsl_cdf.h>
#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <unordered_map>

#include "cohqec/pauli.h"
#include "../oracle/dense.h"
#include "../oracle/samplers.h"

namespace cohqec {
namespace {

using oracle::Matrix;

PauliOperator random_pauli(std::size_t n, Rng& rng, bool hermitian = false) {
    return oracle::random_pauli(n, rng, hermitian);
}

// Dense matrix of a q-qubit gate acting on `support` inside n qubits.
Matrix embed_dense(const Matrix& local, const std::vector<std::size_t>& support, std::size_t n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Matrix out = Matrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        Eigen::Index local_in = 0;
        Eigen::Index rest = col;
        for (std::size_t j = 0; j < support.size(); ++j) {
            local_in |= ((col >> support[j]) & 1) << j;
            rest &= ~(Eigen::Index{1} << support[j]);
        }
        for (Eigen::Index local_out = 0; local_out < local.rows(); ++local_out) {
            Eigen::Index row = rest;
            for (std::size_t j = 0; j < support.size(); ++j) {
                row |= ((local_out >> j) & 1) << support[j];
            }
            out(row, col) += local(local_out, local_in);
        }
    }
    return out;
}

Matrix dense_h() {
    Matrix m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

Matrix dense_s() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = std::complex<double>(0, 1);
    return m;
}

Matrix dense_cnot() {
    // Control is local qubit 0 (low bit), target local qubit 1.
    Matrix m = Matrix::Zero(4, 4);
    for (int b = 0; b < 4; ++b) {
        int c = b & 1;
        int t = (b >> 1) & 1;
        m(c | ((t ^ c) << 1), b) = 1;
    }
    return m;
}

std::string key(const CliffordUnitary& u) {
    std::string s;
    for (std::size_t q = 0; q < u.num_qubits(); ++q) {
        s += u.x_image(q).to_string() + u.z_image(q).to_string();
    }
    return s;
}

TEST(Pauli, TextFormat) {
    PauliOperator p = PauliOperator::from_string("-XZIY");
    EXPECT_EQ(p.to_string(), "-XZIY");
    EXPECT_EQ(p.weight(), 3u);
    EXPECT_EQ(p.sign(), -1);
    EXPECT_EQ(PauliOperator::from_string("XZ").to_string(), "+XZ");
    EXPECT_EQ(PauliOperator::from_string("-iY").phase(), 3u);
    EXPECT_EQ(PauliOperator(3).weight(), 0u);
    EXPECT_THROW(PauliOperator::from_string("XQ"), std::invalid_argument);
}

TEST(Pauli, XTimesZIsMinusIY) {
    PauliOperator xz = PauliOperator::from_string("X") * PauliOperator::from_string("Z");
    EXPECT_EQ(xz.to_string(), "-iY");
    EXPECT_EQ(xz.phase(), 3u);
}

TEST(Pauli, HermitianSquaresToIdentity) {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        PauliOperator p = random_pauli(1 + rng.uniform_below(70), rng, true);
        PauliOperator sq = p * p;
        EXPECT_TRUE(sq.is_identity());
        EXPECT_EQ(sq.phase(), 0u);
    }
}

TEST(Pauli, MultiplyMatchesDense) {
    Rng rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        PauliOperator a = random_pauli(4, rng);
        PauliOperator b = random_pauli(4, rng);
        Matrix expected = oracle::pauli_matrix(a) * oracle::pauli_matrix(b);
        EXPECT_TRUE(oracle::close(oracle::pauli_matrix(a * b), expected)) << a.to_string() << " " << b.to_string();
    }
}

TEST(Pauli, MultiplyAcrossWordBoundaries) {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 60 + rng.uniform_below(80);
        PauliOperator a = random_pauli(n, rng);
        PauliOperator b = random_pauli(n, rng);
        // The product phase is the sum of per-qubit phases.
        PauliOperator expected(n);
        unsigned phase = a.phase() + b.phase();
        for (std::size_t q = 0; q < n; ++q) {
            PauliOperator aq = PauliOperator::single(1, 0, a.at(q));
            PauliOperator bq = PauliOperator::single(1, 0, b.at(q));
            PauliOperator cq = aq * bq;
            phase += cq.phase();
            expected.x().set(q, cq.x().get(0));
            expected.z().set(q, cq.z().get(0));
        }
        expected.set_phase(phase);
        EXPECT_EQ(a * b, expected);
    }
}

TEST(Pauli, AssociativityExhaustiveTwoQubits) {
    std::vector<PauliOperator> all;
    for (const char* a : {"I", "X", "Y", "Z"}) {
        for (const char* b : {"I", "X", "Y", "Z"}) {
            all.push_back(PauliOperator::from_string(std::string(a) + b));
        }
    }
    for (const char* a : {"I", "X", "Y", "Z"}) {
        PauliOperator p = PauliOperator::from_string(a);
        for (const char* b : {"I", "X", "Y", "Z"}) {
            for (const char* c : {"I", "X", "Y", "Z"}) {
                PauliOperator q = PauliOperator::from_string(b);
                PauliOperator r = PauliOperator::from_string(c);
                EXPECT_EQ((p * q) * r, p * (q * r));
            }
        }
    }
    for (const auto& p : all) {
        for (const auto& q : all) {
            for (const auto& r : all) {
                EXPECT_EQ((p * q) * r, p * (q * r));
            }
        }
    }
}

TEST(Pauli, Commutes) {
    EXPECT_FALSE(commutes(PauliOperator::from_string("X"), PauliOperator::from_string("Z")));
    EXPECT_TRUE(commutes(PauliOperator::from_string("XX"), PauliOperator::from_string("ZZ")));
    EXPECT_THROW(commutes(PauliOperator(2), PauliOperator(3)), std::invalid_argument);
    Rng rng(14);
    for (int trial = 0; trial < 300; ++trial) {
        PauliOperator a = random_pauli(1 + rng.uniform_below(4), rng);
        PauliOperator b = random_pauli(a.num_qubits(), rng);
        Matrix ma = oracle::pauli_matrix(a);
        Matrix mb = oracle::pauli_matrix(b);
        bool dense = (ma * mb - mb * ma).cwiseAbs().maxCoeff() < 1e-12;
        EXPECT_EQ(commutes(a, b), dense);
    }
}

TEST(Clifford, HadamardAndIdentity) {
    auto h = CliffordUnitary::hadamard();
    EXPECT_EQ(conjugate(h, PauliOperator::from_string("X")).to_string(), "+Z");
    EXPECT_EQ(conjugate(h, PauliOperator::from_string("Z")).to_string(), "+X");
    EXPECT_EQ(conjugate(h, PauliOperator::from_string("Y")).to_string(), "-Y");
    auto id = CliffordUnitary::identity(5);
    Rng rng(15);
    PauliOperator p = random_pauli(5, rng);
    EXPECT_EQ(conjugate(id, p), p);
    EXPECT_THROW(conjugate(id, PauliOperator(4)), std::invalid_argument);
}

TEST(Clifford, CircuitTableauMatchesDenseCircuit) {
    Rng rng(16);
    const std::size_t n = 3;
    for (int trial = 0; trial < 30; ++trial) {
        CliffordUnitary u = CliffordUnitary::identity(n);
        Matrix dense = Matrix::Identity(8, 8);
        for (int layer = 0; layer < 12; ++layer) {
            int kind = static_cast<int>(rng.uniform_below(3));
            std::vector<std::size_t> support;
            CliffordUnitary g;
            Matrix local;
            if (kind < 2) {
                support = {rng.uniform_below(n)};
                g = kind == 0 ? CliffordUnitary::hadamard() : CliffordUnitary::phase_s();
                local = kind == 0 ? dense_h() : dense_s();
            } else {
                std::size_t a = rng.uniform_below(n);
                std::size_t b = (a + 1 + rng.uniform_below(n - 1)) % n;
                support = {a, b};
                g = CliffordUnitary::cnot();
                local = dense_cnot();
            }
            u = compose(embed(g, support, n), u);
            dense = embed_dense(local, support, n) * dense;
        }
        for (int k = 0; k < 10; ++k) {
            PauliOperator p = random_pauli(n, rng);
            Matrix expected = dense * oracle::pauli_matrix(p) * dense.adjoint();
            EXPECT_TRUE(oracle::close(oracle::pauli_matrix(conjugate(u, p)), expected));
        }
    }
}

TEST(Clifford, RandomThreeQubitMatchesDenseConjugation) {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        CliffordUnitary u = random_clifford(3, rng);
        Matrix U = oracle::clifford_matrix(u);
        EXPECT_TRUE(oracle::close(U * U.adjoint(), Matrix::Identity(8, 8)));
        PauliOperator p = random_pauli(3, rng);
        Matrix expected = U * oracle::pauli_matrix(p) * U.adjoint();
        EXPECT_TRUE(oracle::close(oracle::pauli_matrix(conjugate(u, p)), expected));
    }
}

TEST(Clifford, SymplecticInvariantAndCommutationPreserved) {
    Rng rng(18);
    for (std::size_t n = 1; n <= 10; ++n) {
        EXPECT_TRUE(is_symplectic(random_clifford(n, rng).symplectic_matrix()));
    }
    for (int trial = 0; trial < 10000; ++trial) {
        std::size_t n = 1 + rng.uniform_below(5);
        CliffordUnitary u = random_clifford(n, rng);
        PauliOperator p = random_pauli(n, rng);
        PauliOperator q = random_pauli(n, rng);
        ASSERT_EQ(commutes(conjugate(u, p), conjugate(u, q)), commutes(p, q));
    }
}

TEST(Clifford, CompositionActsInOrder) {
    Rng rng(19);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = 1 + rng.uniform_below(5);
        CliffordUnitary u = random_clifford(n, rng);
        CliffordUnitary v = random_clifford(n, rng);
        PauliOperator p = random_pauli(n, rng);
        EXPECT_EQ(conjugate(compose(u, v), p), conjugate(u, conjugate(v, p)));
    }
}

TEST(Clifford, FromImagesRejectsBrokenRelations) {
    EXPECT_THROW(CliffordUnitary::from_images({PauliOperator::from_string("X")}, {PauliOperator::from_string("X")}),
                 std::invalid_argument);
    EXPECT_THROW(CliffordUnitary::from_images({PauliOperator::from_string("iX")}, {PauliOperator::from_string("Z")}),
                 std::invalid_argument);
}

TEST(RandomClifford, SingleQubitUniformOver24) {
    Rng rng(20);
    std::map<std::string, int> counts;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
        counts[key(random_clifford(1, rng))]++;
    }
    ASSERT_EQ(counts.size(), 24u);
    double chi2 = 0;
    const double expected = samples / 24.0;
    for (auto& [k, c] : counts) {
        chi2 += (c - expected) * (c - expected) / expected;
    }
    EXPECT_GT(gsl_cdf_chisq_Q(chi2, 23), 1e-3);
}

TEST(RandomClifford, SingleQubitEnumerationHas24Elements) {
    // All symplectic maps of F2^2 with all sign choices.
    std::vector<std::string> letters = {"X", "Y", "Z"};
    int valid = 0;
    for (auto& a : letters) {
        for (auto& b : letters) {
            for (const char* sa : {"+", "-"}) {
                for (const char* sb : {"+", "-"}) {
                    try {
                        CliffordUnitary::from_images({PauliOperator::from_string(sa + a)},
                                                     {PauliOperator::from_string(sb + b)});
                        ++valid;
                    } catch (const std::invalid_argument&) {
                    }
                }
            }
        }
    }
    EXPECT_EQ(valid, 24);
}

TEST(RandomClifford, TwoQubitAllReachableAndUniform) {
    Rng rng(21);
    std::unordered_map<std::string, int> counts;
    const int samples = 1000000;
    for (int i = 0; i < samples; ++i) {
        counts[key(random_clifford(2, rng))]++;
    }
    ASSERT_EQ(counts.size(), 11520u);
    const double expected = static_cast<double>(samples) / 11520.0;
    const double sigma = std::sqrt(expected);
    for (auto& [k, c] : counts) {
        EXPECT_LT(std::abs(c - expected), 5 * sigma) << k;
    }
}

TEST(Embed, IdentityAndSingleQubit) {
    std::vector<std::size_t> sup = {0, 2};
    EXPECT_EQ(embed(CliffordUnitary::identity(2), sup, 4), CliffordUnitary::identity(4));
    std::vector<std::size_t> at2 = {2};
    auto u = embed(CliffordUnitary::hadamard(), at2, 4);
    EXPECT_EQ(conjugate(u, PauliOperator::from_string("IIXI")).to_string(), "+IIZI");
    EXPECT_EQ(conjugate(u, PauliOperator::from_string("XIII")).to_string(), "+XIII");
}

TEST(Embed, RejectsBadSupport) {
    std::vector<std::size_t> dup = {1, 1};
    std::vector<std::size_t> out = {1, 4};
    EXPECT_THROW(embed(CliffordUnitary::identity(2), dup, 4), std::invalid_argument);
    EXPECT_THROW(embed(CliffordUnitary::identity(2), out, 4), std::invalid_argument);
}

TEST(Embed, RandomTwoQubitMatchesDenseTensorStructure) {
    Rng rng(22);
    std::vector<std::size_t> support = {1, 3};
    for (int trial = 0; trial < 30; ++trial) {
        CliffordUnitary g = random_clifford(2, rng);
        Matrix local = oracle::clifford_matrix(g);
        Matrix U = embed_dense(local, support, 4);
        CliffordUnitary u = embed(g, support, 4);
        PauliOperator p = random_pauli(4, rng);
        Matrix expected = U * oracle::pauli_matrix(p) * U.adjoint();
        EXPECT_TRUE(oracle::close(oracle::pauli_matrix(conjugate(u, p)), expected));
    }
}

TEST(LocalGate, MatchesEmbeddedConjugation) {
    Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 4 + rng.uniform_below(100);
        std::size_t q = 1 + rng.uniform_below(4);
        std::vector<std::size_t> support;
        while (support.size() < q) {
            std::size_t s = rng.uniform_below(n);
            if (std::find(support.begin(), support.end(), s) == support.end()) {
                support.push_back(s);
            }
        }
        CliffordUnitary g = random_clifford(q, rng);
        LocalGate local(g, support);
        PauliOperator p = random_pauli(n, rng);
        PauliOperator fast = p;
        local.conjugate_in_place(fast);
        EXPECT_EQ(fast, conjugate(embed(g, support, n), p));
    }
}

}  // namespace
}  // namespace cohqec
