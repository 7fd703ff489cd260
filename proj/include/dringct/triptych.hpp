/****************************************************************************
this hpp implements the Triptych linkable ring signature: a log-size
one-of-many proof of a secret key for some ring member, with a key image
J = sk^-1 * U for double-spend linking. An optional second leg binds a
published offset commitment to the signer's coin commitment, proving the
spent amount was carried over without revealing the signer
****************************************************************************/
#pragma once

#include "dringct/errors.hpp"
#include "dringct/group.hpp"

#include <span>
#include <vector>

namespace dringct::triptych {

inline constexpr size_t kBase = 2;  // n; rings are padded to n^m members

struct Proof {
    GroupElement A, B, C, D;
    std::vector<GroupElement> X, Y;   // m each
    std::vector<GroupElement> X2;     // m, commitment leg; empty when unused
    std::vector<Scalar> f;            // m*(n-1)
    Scalar zA, zC, z;
    Scalar z2;                         // commitment leg response
};

struct RingSig {
    GroupElement key_image;
    Proof proof;
};

inline bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

template <class T>
void pad_to_pow2(std::vector<T>& v)
{
    if (v.empty()) throw Error(Errc::bad_ring_size, "empty ring");
    if (v.size() == 1) v.push_back(v.back());
    while (!is_pow2(v.size())) v.push_back(v.back());
}

namespace detail {

inline size_t ring_exponent(size_t n)
{
    if (!is_pow2(n) || n < 2) throw Error(Errc::bad_ring_size, "ring must be padded to a power of two");
    size_t m = 0;
    while ((size_t(1) << m) < n) m++;
    return m;
}

inline size_t digit(size_t k, size_t j) { return (k >> j) & 1; }

// Com(x, M) = x*G + sum M[j*n+i] * gens.triptych_gens[j*n+i]
inline GroupElement matrix_commit(const GeneratorSet& gens, const Scalar& x,
                                  std::span<const Scalar> flat)
{
    if (flat.size() > gens.triptych_gens.size())
        throw Error(Errc::bad_ring_size, "ring too large for derived generators");
    GroupElement c = mul_base(x);
    for (size_t i = 0; i < flat.size(); i++) c = c + flat[i] * gens.triptych_gens[i];
    return c;
}

inline void append_statement(Transcript& t, std::span<const GroupElement> ring,
                             std::span<const GroupElement> commitments,
                             const GroupElement* offset)
{
    t.append_u64("n", kBase);
    t.append_u64("N", ring.size());
    for (const auto& pk : ring) t.append_point("ring", pk);
    if (offset) {
        for (const auto& c : commitments) t.append_point("C", c);
        t.append_point("offset", *offset);
    }
}

inline Scalar challenge(Transcript& t, const RingSig& sig)
{
    const Proof& p = sig.proof;
    t.append_point("J", sig.key_image);
    t.append_point("A", p.A);
    t.append_point("B", p.B);
    t.append_point("C", p.C);
    t.append_point("D", p.D);
    for (const auto& x : p.X) t.append_point("X", x);
    for (const auto& x : p.X2) t.append_point("X2", x);
    for (const auto& y : p.Y) t.append_point("Y", y);
    return t.challenge("xi");
}

} // namespace detail

inline RingSig sign(const GeneratorSet& gens, std::span<const GroupElement> ring,
                    std::span<const GroupElement> commitments, const GroupElement* offset,
                    size_t index, const Scalar& sk, const Scalar& blinding_delta, Transcript t)
{
    const size_t n = kBase;
    const size_t N = ring.size();
    const size_t m = detail::ring_exponent(N);
    const bool with_leg = offset != nullptr;
    if (with_leg && commitments.size() != N)
        throw Error(Errc::bad_ring_size, "commitment list does not match ring");
    if (index >= N || sk.is_zero() || mul_base(sk) != ring[index])
        throw Error(Errc::bad_index, "secret key does not open the ring slot");
    if (with_leg && mul_base(blinding_delta) != commitments[index] - *offset)
        throw Error(Errc::bad_index, "blinding delta does not open the offset");

    RingSig sig;
    sig.key_image = sk.inverted() * gens.U;
    Proof& p = sig.proof;

    // bit matrix sigma of the signer index, and the masking matrix a with
    // zero-sum rows
    std::vector<Scalar> a(m * n), sigma(m * n);
    for (size_t j = 0; j < m; j++) {
        for (size_t i = 1; i < n; i++) {
            a[j * n + i] = Scalar::random();
            a[j * n] = a[j * n] - a[j * n + i];
        }
        sigma[j * n + detail::digit(index, j)] = Scalar::one();
    }

    Scalar rA = Scalar::random_nonzero(), rB = Scalar::random_nonzero();
    Scalar rC = Scalar::random_nonzero(), rD = Scalar::random_nonzero();
    std::vector<Scalar> ac(m * n), anegsq(m * n);
    for (size_t ji = 0; ji < m * n; ji++) {
        // a*(1-2*sigma) and -a^2
        ac[ji] = sigma[ji].is_zero() ? a[ji] : a[ji].negated();
        anegsq[ji] = (a[ji] * a[ji]).negated();
    }
    p.A = detail::matrix_commit(gens, rA, a);
    p.B = detail::matrix_commit(gens, rB, sigma);
    p.C = detail::matrix_commit(gens, rC, ac);
    p.D = detail::matrix_commit(gens, rD, anegsq);

    // p_k(x) = prod_j (sigma[j][k_j]*x + a[j][k_j]); degree-m coefficient is
    // nonzero only at k = index
    std::vector<std::vector<Scalar>> coeff(N);
    for (size_t k = 0; k < N; k++) {
        std::vector<Scalar> c(m + 1);
        c[0] = Scalar::one();
        size_t deg = 0;
        for (size_t j = 0; j < m; j++) {
            size_t d = detail::digit(k, j);
            const Scalar& s = sigma[j * n + d];
            const Scalar& ad = a[j * n + d];
            std::vector<Scalar> next(m + 1);
            for (size_t e = 0; e <= deg; e++) {
                next[e] = next[e] + ad * c[e];
                next[e + 1] = next[e + 1] + s * c[e];
            }
            deg++;
            c = std::move(next);
        }
        coeff[k] = std::move(c);
    }

    std::vector<Scalar> rho(m), rho2(m);
    p.X.resize(m);
    p.Y.resize(m);
    if (with_leg) p.X2.resize(m);
    for (size_t j = 0; j < m; j++) {
        rho[j] = Scalar::random_nonzero();
        Scalar sum_pj = Scalar::zero();
        GroupElement xj = mul_base(rho[j]);
        for (size_t k = 0; k < N; k++) {
            xj = xj + coeff[k][j] * ring[k];
            sum_pj = sum_pj + coeff[k][j];
        }
        p.X[j] = xj;
        p.Y[j] = sum_pj * gens.U + rho[j] * sig.key_image;
        if (with_leg) {
            rho2[j] = Scalar::random_nonzero();
            GroupElement x2j = mul_base(rho2[j]);
            for (size_t k = 0; k < N; k++)
                x2j = x2j + coeff[k][j] * (commitments[k] - *offset);
            p.X2[j] = x2j;
        }
    }

    detail::append_statement(t, ring, commitments, offset);
    Scalar xi = detail::challenge(t, sig);

    p.f.resize(m * (n - 1));
    for (size_t j = 0; j < m; j++)
        for (size_t i = 1; i < n; i++)
            p.f[j * (n - 1) + (i - 1)] = sigma[j * n + i] * xi + a[j * n + i];
    p.zA = rA + xi * rB;
    p.zC = xi * rC + rD;

    Scalar xi_pow = Scalar::one();
    Scalar zsum = Scalar::zero(), z2sum = Scalar::zero();
    for (size_t j = 0; j < m; j++) {
        zsum = zsum + rho[j] * xi_pow;
        if (with_leg) z2sum = z2sum + rho2[j] * xi_pow;
        xi_pow = xi_pow * xi;
    }
    p.z = sk * xi_pow - zsum;  // xi_pow = xi^m here
    p.z2 = with_leg ? blinding_delta * xi_pow - z2sum : Scalar::zero();
    return sig;
}

inline RingSig sign(const GeneratorSet& gens, std::span<const GroupElement> ring, size_t index,
                    const Scalar& sk, Transcript t)
{
    return sign(gens, ring, {}, nullptr, index, sk, Scalar::zero(), std::move(t));
}

inline bool verify(const GeneratorSet& gens, std::span<const GroupElement> ring,
                   std::span<const GroupElement> commitments, const GroupElement* offset,
                   const RingSig& sig, Transcript t)
{
    const size_t n = kBase;
    const size_t N = ring.size();
    if (!is_pow2(N) || N < 2) return false;
    size_t m = 0;
    while ((size_t(1) << m) < N) m++;

    const Proof& p = sig.proof;
    const bool with_leg = offset != nullptr;
    if (p.X.size() != m || p.Y.size() != m || p.f.size() != m * (n - 1)) return false;
    if (with_leg && (p.X2.size() != m || commitments.size() != N)) return false;
    if (!with_leg && !p.X2.empty()) return false;
    if (sig.key_image.is_identity()) return false;
    if (m * n > gens.triptych_gens.size()) return false;

    detail::append_statement(t, ring, commitments, offset);
    Scalar xi = detail::challenge(t, sig);
    if (xi.is_zero()) return false;

    // rebuild the f matrix; row sums are fixed to xi, zero entries rejected
    // so no ring slot drops out of the evaluation products
    std::vector<Scalar> f(m * n);
    for (size_t j = 0; j < m; j++) {
        f[j * n] = xi;
        for (size_t i = 1; i < n; i++) {
            f[j * n + i] = p.f[j * (n - 1) + (i - 1)];
            f[j * n] = f[j * n] - f[j * n + i];
        }
    }
    for (size_t ji = 0; ji < m * n; ji++)
        if (f[ji].is_zero()) return false;

    // A + xi*B == Com(zA, f)
    if (p.A + xi * p.B != detail::matrix_commit(gens, p.zA, f)) return false;

    // xi*C + D == Com(zC, f o (xi - f))
    std::vector<Scalar> fc(m * n);
    for (size_t ji = 0; ji < m * n; ji++) fc[ji] = f[ji] * (xi - f[ji]);
    if (xi * p.C + p.D != detail::matrix_commit(gens, p.zC, fc)) return false;

    // per-member evaluation t_k = prod_j f[j][k_j]
    std::vector<Scalar> tk(N);
    Scalar sum_t = Scalar::zero();
    for (size_t k = 0; k < N; k++) {
        Scalar prod = Scalar::one();
        for (size_t j = 0; j < m; j++) prod = prod * f[j * n + detail::digit(k, j)];
        tk[k] = prod;
        sum_t = sum_t + prod;
    }

    auto xi_pow = [&](auto&& points) {
        GroupElement acc = GroupElement::identity();
        Scalar e = Scalar::one();
        for (size_t j = 0; j < m; j++) {
            acc = acc + e * points[j];
            e = e * xi;
        }
        return acc;
    };

    // sum_k t_k*M_k == z*G + sum_j xi^j*X_j
    GroupElement key_lhs = GroupElement::identity();
    for (size_t k = 0; k < N; k++) key_lhs = key_lhs + tk[k] * ring[k];
    if (key_lhs != mul_base(p.z) + xi_pow(p.X)) return false;

    // sum_t*U == z*J + sum_j xi^j*Y_j, which forces J = sk^-1*U
    if (sum_t * gens.U != p.z * sig.key_image + xi_pow(p.Y)) return false;

    if (with_leg) {
        // sum_k t_k*(C_k - offset) == z2*G + sum_j xi^j*X2_j
        GroupElement com_lhs = GroupElement::identity();
        for (size_t k = 0; k < N; k++) com_lhs = com_lhs + tk[k] * (commitments[k] - *offset);
        if (com_lhs != mul_base(p.z2) + xi_pow(p.X2)) return false;
    }
    return true;
}

inline bool verify(const GeneratorSet& gens, std::span<const GroupElement> ring,
                   const RingSig& sig, Transcript t)
{
    return verify(gens, ring, {}, nullptr, sig, std::move(t));
}

// pre: both signatures individually valid
inline bool link(const RingSig& a, const RingSig& b) { return a.key_image == b.key_image; }

} // namespace dringct::triptych
