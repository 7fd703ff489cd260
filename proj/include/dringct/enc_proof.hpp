/****************************************************************************
this hpp implements the encryption well-formedness proof: knowledge of
(a, k) with X = k*pk and Y = k*G + a*H
****************************************************************************/
#pragma once

#include "dringct/group.hpp"
#include "dringct/twisted_elgamal.hpp"

namespace dringct::zk {

struct EncProof {
    GroupElement A1, A2;
    Scalar z1, z2;
};

namespace detail {

inline void append_enc_statement(Transcript& t, const GroupElement& H, const GroupElement& pk,
                                 const Coin& c)
{
    t.append_point("H", H);
    t.append_point("pk", pk);
    t.append_point("X", c.X);
    t.append_point("Y", c.Y);
}

} // namespace detail

inline EncProof prove_enc(const GroupElement& H, const GroupElement& pk, const Coin& c,
                          const Scalar& amount, const Scalar& k, Transcript t)
{
    detail::append_enc_statement(t, H, pk, c);
    Scalar u = Scalar::random_nonzero();
    Scalar v = Scalar::random_nonzero();
    EncProof p;
    p.A1 = u * pk;
    p.A2 = mul_base(u) + v * H;
    t.append_point("A1", p.A1);
    t.append_point("A2", p.A2);
    Scalar e = t.challenge("e");
    p.z1 = u + e * k;
    p.z2 = v + e * amount;
    return p;
}

inline bool verify_enc(const GroupElement& H, const GroupElement& pk, const Coin& c,
                       const EncProof& p, Transcript t)
{
    if (pk.is_identity()) return false;
    detail::append_enc_statement(t, H, pk, c);
    t.append_point("A1", p.A1);
    t.append_point("A2", p.A2);
    Scalar e = t.challenge("e");
    if (p.z1 * pk != p.A1 + e * c.X) return false;
    if (mul_base(p.z1) + p.z2 * H != p.A2 + e * c.Y) return false;
    return true;
}

} // namespace dringct::zk
