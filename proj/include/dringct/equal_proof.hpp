/****************************************************************************
this hpp implements the ciphertext equivalence proof for a change of
representative: (X1, Y1) under pk1 and (X2, Y2) under pk2 encrypt the same
amount. One mask u covers both encryption randomnesses so the proof is
three commitments and three responses checked by four linear relations
under a shared challenge; the difference k1 - k2 becomes public, which only
tells holders of one coin key what they could already compute
****************************************************************************/
#pragma once

#include "dringct/group.hpp"
#include "dringct/twisted_elgamal.hpp"

namespace dringct::zk {

struct EqualProof {
    GroupElement A1, A2, B;
    Scalar z1, z2, z3;
};

namespace detail {

inline void append_equal_statement(Transcript& t, const GroupElement& H, const GroupElement& pk1,
                                   const Coin& c1, const GroupElement& pk2, const Coin& c2)
{
    t.append_point("H", H);
    t.append_point("pk1", pk1);
    t.append_point("X1", c1.X);
    t.append_point("Y1", c1.Y);
    t.append_point("pk2", pk2);
    t.append_point("X2", c2.X);
    t.append_point("Y2", c2.Y);
}

} // namespace detail

inline EqualProof prove_equal(const GroupElement& H, const GroupElement& pk1, const Coin& c1,
                              const Scalar& k1, const GroupElement& pk2, const Coin& c2,
                              const Scalar& k2, const Scalar& amount, Transcript t)
{
    detail::append_equal_statement(t, H, pk1, c1, pk2, c2);
    Scalar u = Scalar::random_nonzero();
    Scalar v = Scalar::random_nonzero();
    EqualProof p;
    p.A1 = u * pk1;
    p.A2 = u * pk2;
    p.B = mul_base(u) + v * H;
    t.append_point("A1", p.A1);
    t.append_point("A2", p.A2);
    t.append_point("B", p.B);
    Scalar e = t.challenge("e");
    p.z1 = u + e * k1;
    p.z2 = u + e * k2;
    p.z3 = v + e * amount;
    return p;
}

inline bool verify_equal(const GroupElement& H, const GroupElement& pk1, const Coin& c1,
                         const GroupElement& pk2, const Coin& c2, const EqualProof& p,
                         Transcript t)
{
    if (pk1.is_identity() || pk2.is_identity()) return false;
    detail::append_equal_statement(t, H, pk1, c1, pk2, c2);
    t.append_point("A1", p.A1);
    t.append_point("A2", p.A2);
    t.append_point("B", p.B);
    Scalar e = t.challenge("e");
    if (p.z1 * pk1 != p.A1 + e * c1.X) return false;
    if (p.z2 * pk2 != p.A2 + e * c2.X) return false;
    if (mul_base(p.z1) + p.z3 * H != p.B + e * c1.Y) return false;
    if (mul_base(p.z2) + p.z3 * H != p.B + e * c2.Y) return false;
    return true;
}

} // namespace dringct::zk
