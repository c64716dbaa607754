#include "cohqec/pauli.h"

#include <bit>
#include <stdexcept>

namespace cohqec {

PauliOperator::PauliOperator(BitVector x, BitVector z, unsigned phase)
    : x_(std::move(x)), z_(std::move(z)), phase_(phase & 3u) {
    if (x_.size() != z_.size()) {
        throw std::invalid_argument("PauliOperator: x and z lengths differ");
    }
}

PauliOperator PauliOperator::from_string(std::string_view text) {
    unsigned phase = 0;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') {
            phase = 2;
        }
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase += 1;
        ++pos;
    }
    std::size_t n = text.size() - pos;
    PauliOperator p(n);
    p.phase_ = phase & 3u;
    for (std::size_t q = 0; q < n; ++q) {
        switch (text[pos + q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.x_.set(q);
                break;
            case 'Y':
                p.x_.set(q);
                p.z_.set(q);
                break;
            case 'Z':
                p.z_.set(q);
                break;
            default:
                throw std::invalid_argument("PauliOperator::from_string: bad character in '" + std::string(text) + "'");
        }
    }
    return p;
}

PauliOperator PauliOperator::single(std::size_t n, std::size_t q, char kind) {
    if (q >= n) {
        throw std::out_of_range("PauliOperator::single: qubit out of range");
    }
    PauliOperator p(n);
    if (kind == 'X' || kind == 'Y') {
        p.x_.set(q);
    }
    if (kind == 'Z' || kind == 'Y') {
        p.z_.set(q);
    }
    if (kind != 'I' && kind != 'X' && kind != 'Y' && kind != 'Z') {
        throw std::invalid_argument("PauliOperator::single: kind must be one of IXYZ");
    }
    return p;
}

PauliOperator PauliOperator::from_symplectic(const BitVector& bits, unsigned phase) {
    if (bits.size() % 2 != 0) {
        throw std::invalid_argument("PauliOperator::from_symplectic: odd length");
    }
    std::size_t n = bits.size() / 2;
    PauliOperator p(n);
    for (std::size_t q = 0; q < n; ++q) {
        p.x_.set(q, bits.get(q));
        p.z_.set(q, bits.get(n + q));
    }
    p.phase_ = phase & 3u;
    return p;
}

std::size_t PauliOperator::weight() const {
    std::size_t w = 0;
    auto xw = x_.words();
    auto zw = z_.words();
    for (std::size_t k = 0; k < xw.size(); ++k) {
        w += static_cast<std::size_t>(std::popcount(xw[k] | zw[k]));
    }
    return w;
}

char PauliOperator::at(std::size_t q) const {
    static constexpr char kLetters[] = {'I', 'X', 'Z', 'Y'};
    return kLetters[(x_.get(q) ? 1 : 0) | (z_.get(q) ? 2 : 0)];
}

BitVector PauliOperator::symplectic() const {
    const std::size_t n = num_qubits();
    BitVector out(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
        if (x_.get(q)) {
            out.set(q);
        }
        if (z_.get(q)) {
            out.set(n + q);
        }
    }
    return out;
}

PauliOperator& PauliOperator::operator*=(const PauliOperator& rhs) {
    if (rhs.num_qubits() != num_qubits()) {
        throw std::invalid_argument("Pauli product: qubit count mismatch");
    }
    auto x1 = x_.words();
    auto z1 = z_.words();
    auto x2 = rhs.x_.words();
    auto z2 = rhs.z_.words();
    std::uint64_t cnt1 = 0;
    std::uint64_t cnt2 = 0;
    unsigned s = 0;
    for (std::size_t k = 0; k < x1.size(); ++k) {
        const std::uint64_t old_x1 = x1[k];
        const std::uint64_t old_z1 = z1[k];
        x1[k] ^= x2[k];
        z1[k] ^= z2[k];
        const std::uint64_t x1z2 = old_x1 & z2[k];
        const std::uint64_t anti = (x2[k] & old_z1) ^ x1z2;
        cnt2 ^= (cnt1 ^ x1[k] ^ z1[k] ^ x1z2) & anti;
        cnt1 ^= anti;
    }
    s = static_cast<unsigned>(std::popcount(cnt1)) + 2u * static_cast<unsigned>(std::popcount(cnt2));
    phase_ = (phase_ + rhs.phase_ + s) & 3u;
    return *this;
}

std::string PauliOperator::to_string() const {
    static constexpr const char* kPrefix[] = {"+", "+i", "-", "-i"};
    std::string s = kPrefix[phase_];
    for (std::size_t q = 0; q < num_qubits(); ++q) {
        s += at(q);
    }
    return s;
}

PauliOperator operator*(PauliOperator a, const PauliOperator& b) {
    a *= b;
    return a;
}

PauliOperator multiply(const PauliOperator& a, const PauliOperator& b) { return a * b; }

bool commutes(const PauliOperator& a, const PauliOperator& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("commutes: qubit count mismatch");
    }
    auto ax = a.x().words();
    auto az = a.z().words();
    auto bx = b.x().words();
    auto bz = b.z().words();
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < ax.size(); ++k) {
        acc ^= (ax[k] & bz[k]) ^ (az[k] & bx[k]);
    }
    return (std::popcount(acc) & 1) == 0;
}

BitMatrix symplectic_matrix(std::span<const PauliOperator> paulis, std::size_t n) {
    BitMatrix m(paulis.size(), 2 * n);
    for (std::size_t r = 0; r < paulis.size(); ++r) {
        if (paulis[r].num_qubits() != n) {
            throw std::invalid_argument("symplectic_matrix: qubit count mismatch");
        }
        m.set_row(r, paulis[r].symplectic());
    }
    return m;
}

// ---------------------------------------------------------------- Clifford

CliffordUnitary CliffordUnitary::identity(std::size_t n) {
    CliffordUnitary u;
    for (std::size_t q = 0; q < n; ++q) {
        u.x_images_.push_back(PauliOperator::single(n, q, 'X'));
        u.z_images_.push_back(PauliOperator::single(n, q, 'Z'));
    }
    return u;
}

CliffordUnitary CliffordUnitary::from_images(std::vector<PauliOperator> x_images, std::vector<PauliOperator> z_images) {
    const std::size_t n = x_images.size();
    if (z_images.size() != n) {
        throw std::invalid_argument("CliffordUnitary::from_images: image counts differ");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto* img : {&x_images[i], &z_images[i]}) {
            if (img->num_qubits() != n || !img->is_hermitian()) {
                throw std::invalid_argument("CliffordUnitary::from_images: images must be Hermitian on n qubits");
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            bool ok = (i == j || (commutes(x_images[i], x_images[j]) && commutes(z_images[i], z_images[j]))) &&
                      (commutes(x_images[i], z_images[j]) == (i != j));
            if (!ok) {
                throw std::invalid_argument("CliffordUnitary::from_images: images break commutation relations");
            }
        }
    }
    CliffordUnitary u;
    u.x_images_ = std::move(x_images);
    u.z_images_ = std::move(z_images);
    return u;
}

CliffordUnitary CliffordUnitary::hadamard() {
    return from_images({PauliOperator::from_string("Z")}, {PauliOperator::from_string("X")});
}

CliffordUnitary CliffordUnitary::phase_s() {
    return from_images({PauliOperator::from_string("Y")}, {PauliOperator::from_string("Z")});
}

CliffordUnitary CliffordUnitary::cnot() {
    return from_images({PauliOperator::from_string("XX"), PauliOperator::from_string("IX")},
                       {PauliOperator::from_string("ZI"), PauliOperator::from_string("ZZ")});
}

BitMatrix CliffordUnitary::symplectic_matrix() const {
    const std::size_t n = num_qubits();
    BitMatrix s(2 * n, 2 * n);
    for (std::size_t j = 0; j < 2 * n; ++j) {
        const PauliOperator& img = j < n ? x_images_[j] : z_images_[j - n];
        for (std::size_t q = 0; q < n; ++q) {
            s.set(q, j, img.x().get(q));
            s.set(n + q, j, img.z().get(q));
        }
    }
    return s;
}

BitVector CliffordUnitary::phase_correction() const {
    const std::size_t n = num_qubits();
    BitVector signs(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
        signs.set(q, x_images_[q].sign() < 0);
        signs.set(n + q, z_images_[q].sign() < 0);
    }
    return signs;
}

PauliOperator conjugate(const CliffordUnitary& u, const PauliOperator& p) {
    const std::size_t n = u.num_qubits();
    if (p.num_qubits() != n) {
        throw std::invalid_argument("conjugate: qubit count mismatch");
    }
    // Y = i X Z, so p = i^{phase + |x & z|} prod_q X_q^{x_q} Z_q^{z_q}.
    PauliOperator out(n);
    out.set_phase(p.phase() + static_cast<unsigned>((p.x() & p.z()).popcount()));
    for (std::size_t q = 0; q < n; ++q) {
        if (p.x().get(q)) {
            out *= u.x_image(q);
        }
        if (p.z().get(q)) {
            out *= u.z_image(q);
        }
    }
    return out;
}

CliffordUnitary compose(const CliffordUnitary& u, const CliffordUnitary& v) {
    if (u.num_qubits() != v.num_qubits()) {
        throw std::invalid_argument("compose: qubit count mismatch");
    }
    std::vector<PauliOperator> xs;
    std::vector<PauliOperator> zs;
    for (std::size_t q = 0; q < v.num_qubits(); ++q) {
        xs.push_back(conjugate(u, v.x_image(q)));
        zs.push_back(conjugate(u, v.z_image(q)));
    }
    return CliffordUnitary::from_images(std::move(xs), std::move(zs));
}

namespace {

void check_support(std::span<const std::size_t> support, std::size_t n) {
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] >= n) {
            throw std::invalid_argument("support index out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (support[i] == support[j]) {
                throw std::invalid_argument("duplicate support index");
            }
        }
    }
}

PauliOperator lift(const PauliOperator& local, std::span<const std::size_t> support, std::size_t n) {
    PauliOperator out(n);
    for (std::size_t j = 0; j < support.size(); ++j) {
        out.x().set(support[j], local.x().get(j));
        out.z().set(support[j], local.z().get(j));
    }
    out.set_phase(local.phase());
    return out;
}

bool omega(const BitVector& a, const BitVector& b, std::size_t n) {
    bool acc = false;
    for (std::size_t q = 0; q < n; ++q) {
        acc ^= (a.get(q) && b.get(n + q)) != (a.get(n + q) && b.get(q));
    }
    return acc;
}

BitVector random_combination(const std::vector<BitVector>& basis, std::size_t bits, Rng& rng) {
    BitVector v(bits);
    for (const auto& b : basis) {
        if (rng.coin()) {
            v ^= b;
        }
    }
    return v;
}

}  // namespace

CliffordUnitary embed(const CliffordUnitary& u, std::span<const std::size_t> support, std::size_t n) {
    if (support.size() != u.num_qubits()) {
        throw std::invalid_argument("embed: support size must equal gate size");
    }
    check_support(support, n);
    CliffordUnitary id = CliffordUnitary::identity(n);
    std::vector<PauliOperator> xs;
    std::vector<PauliOperator> zs;
    for (std::size_t q = 0; q < n; ++q) {
        xs.push_back(id.x_image(q));
        zs.push_back(id.z_image(q));
    }
    for (std::size_t j = 0; j < support.size(); ++j) {
        xs[support[j]] = lift(u.x_image(j), support, n);
        zs[support[j]] = lift(u.z_image(j), support, n);
    }
    return CliffordUnitary::from_images(std::move(xs), std::move(zs));
}

CliffordUnitary random_clifford(std::size_t n, Rng& rng) {
    if (n == 0) {
        throw std::invalid_argument("random_clifford: n must be positive");
    }
    const std::size_t bits = 2 * n;
    std::vector<BitVector> pool;
    for (std::size_t j = 0; j < bits; ++j) {
        BitVector e(bits);
        e.set(j);
        pool.push_back(std::move(e));
    }
    std::vector<PauliOperator> xs;
    std::vector<PauliOperator> zs;
    for (std::size_t q = 0; q < n; ++q) {
        BitVector a(bits);
        do {
            a = random_combination(pool, bits, rng);
        } while (a.none());
        BitVector b(bits);
        do {
            b = random_combination(pool, bits, rng);
        } while (!omega(a, b, n));
        xs.push_back(PauliOperator::from_symplectic(a));
        zs.push_back(PauliOperator::from_symplectic(b));

        // Project the pool onto the symplectic complement of <a, b>.
        std::vector<BitVector> next;
        XorBasis span(bits);
        for (auto& v : pool) {
            BitVector w = v;
            if (omega(v, b, n)) {
                w ^= a;
            }
            if (omega(v, a, n)) {
                w ^= b;
            }
            if (span.insert(w)) {
                next.push_back(std::move(w));
            }
        }
        pool = std::move(next);
    }
    for (std::size_t q = 0; q < n; ++q) {
        if (rng.coin()) {
            xs[q].negate();
        }
        if (rng.coin()) {
            zs[q].negate();
        }
    }
    return CliffordUnitary::from_images(std::move(xs), std::move(zs));
}

bool is_symplectic(const BitMatrix& s) {
    if (s.rows() != s.cols() || s.rows() % 2 != 0) {
        return false;
    }
    const std::size_t n = s.rows() / 2;
    BitMatrix lambda(2 * n, 2 * n);
    for (std::size_t q = 0; q < n; ++q) {
        lambda.set(q, n + q);
        lambda.set(n + q, q);
    }
    return s.transpose() * lambda * s == lambda;
}

// ---------------------------------------------------------------- LocalGate

LocalGate::LocalGate(const CliffordUnitary& u, std::vector<std::size_t> support)
    : gate_(u), support_(std::move(support)) {
    const std::size_t q = support_.size();
    if (q != u.num_qubits()) {
        throw std::invalid_argument("LocalGate: support size must equal gate size");
    }
    if (q > 8) {
        throw std::invalid_argument("LocalGate: at most 8 qubits");
    }
    std::size_t entries = std::size_t{1} << (2 * q);
    image_bits_.resize(entries);
    image_negated_.resize(entries);
    for (std::size_t idx = 0; idx < entries; ++idx) {
        PauliOperator local(q);
        for (std::size_t j = 0; j < q; ++j) {
            local.x().set(j, (idx >> j) & 1u);
            local.z().set(j, (idx >> (q + j)) & 1u);
        }
        PauliOperator img = conjugate(u, local);
        std::uint32_t out = 0;
        for (std::size_t j = 0; j < q; ++j) {
            out |= static_cast<std::uint32_t>(img.x().get(j)) << j;
            out |= static_cast<std::uint32_t>(img.z().get(j)) << (q + j);
        }
        image_bits_[idx] = out;
        image_negated_[idx] = img.sign() < 0 ? 1 : 0;
    }
}

void LocalGate::conjugate_in_place(PauliOperator& p) const {
    const std::size_t q = support_.size();
    std::size_t idx = 0;
    for (std::size_t j = 0; j < q; ++j) {
        idx |= static_cast<std::size_t>(p.x().get(support_[j])) << j;
        idx |= static_cast<std::size_t>(p.z().get(support_[j])) << (q + j);
    }
    if (idx == 0) {
        return;
    }
    std::uint32_t out = image_bits_[idx];
    for (std::size_t j = 0; j < q; ++j) {
        p.x().set(support_[j], (out >> j) & 1u);
        p.z().set(support_[j], (out >> (q + j)) & 1u);
    }
    if (image_negated_[idx]) {
        p.negate();
    }
}

}  // namespace cohqec
