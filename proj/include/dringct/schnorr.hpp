/****************************************************************************
this hpp implements the Schnorr digital signature over the group base
****************************************************************************/
#pragma once

#include "dringct/group.hpp"

#include <span>

namespace dringct::schnorr {

struct Signature {
    GroupElement A;
    Scalar z;

    bool operator==(const Signature& o) const { return A == o.A && z == o.z; }
};

namespace detail {

inline Scalar challenge(const GroupElement& pk, std::span<const unsigned char> msg,
                        const GroupElement& A)
{
    Transcript t("dringct/schnorr");
    t.append_point("pk", pk);
    t.append("m", msg);
    t.append_point("A", A);
    return t.challenge("xi");
}

} // namespace detail

// (A, z) with A = alpha*G, z = alpha + xi*sk
inline Signature sign(const Scalar& sk, const GroupElement& pk, std::span<const unsigned char> msg)
{
    if (sk.is_zero()) throw std::invalid_argument("schnorr::sign: zero key");
    Scalar alpha = Scalar::random_nonzero();
    GroupElement A = mul_base(alpha);
    Scalar xi = detail::challenge(pk, msg, A);
    return Signature{A, alpha + xi * sk};
}

// accept iff z*G = A + xi*pk; identity keys rejected outright
inline bool verify(const GroupElement& pk, std::span<const unsigned char> msg,
                   const Signature& sig)
{
    if (pk.is_identity()) return false;
    Scalar xi = detail::challenge(pk, msg, sig.A);
    return mul_base(sig.z) == sig.A + xi * pk;
}

} // namespace dringct::schnorr
