/****************************************************************************
this hpp implements stealth (one-time) key derivation from long term key
pairs, plus the shared-secret coin key both sides of a transfer derive
****************************************************************************/
#pragma once

#include "dringct/group.hpp"

#include <optional>

namespace dringct {

struct LongTermSecretKey {
    Scalar x1, x2;
};

struct LongTermPublicKey {
    GroupElement X1, X2;

    bool operator==(const LongTermPublicKey& o) const { return X1 == o.X1 && X2 == o.X2; }
};

struct LongTermKeyPair {
    LongTermSecretKey sk;
    LongTermPublicKey pk;

    static LongTermKeyPair generate()
    {
        return from_secrets(Scalar::random_nonzero(), Scalar::random_nonzero());
    }

    static LongTermKeyPair from_secrets(const Scalar& x1, const Scalar& x2)
    {
        LongTermKeyPair kp;
        kp.sk = {x1, x2};
        kp.pk = {mul_base(x1), mul_base(x2)};
        return kp;
    }
};

struct OneTimeAddress {
    GroupElement pk;
    GroupElement aux;  // R = r*G
};

namespace detail {

inline Scalar stealth_hash(const GroupElement& shared)
{
    return hash::to_scalar("dringct/stealth",
                           std::span<const unsigned char>(shared.bytes.data(), 32));
}

inline Scalar coin_key_hash(const GroupElement& shared)
{
    return hash::to_scalar("dringct/coin",
                           std::span<const unsigned char>(shared.bytes.data(), 32));
}

} // namespace detail

// pk = X1 + H(r*X2)*G, aux = r*G
inline OneTimeAddress one_time_pk_gen(const LongTermPublicKey& ltpk, const Scalar& r)
{
    if (r.is_zero()) throw std::invalid_argument("one_time_pk_gen: r must be nonzero");
    Scalar h = detail::stealth_hash(r * ltpk.X2);
    return OneTimeAddress{ltpk.X1 + mul_base(h), mul_base(r)};
}

// sk = x1 + H(x2*aux) iff the recomputed pk matches; nullopt signals the
// account is addressed to someone else
inline std::optional<Scalar> one_time_sk_gen(const GroupElement& pk, const GroupElement& aux,
                                             const LongTermSecretKey& ltsk)
{
    Scalar h = detail::stealth_hash(ltsk.x2 * aux);
    Scalar sk = ltsk.x1 + h;
    if (mul_base(sk) != pk) return std::nullopt;
    return sk;
}

// sender side: k = H("coin" || r*X2)
inline Scalar sender_coin_key(const LongTermPublicKey& ltpk, const Scalar& r)
{
    return detail::coin_key_hash(r * ltpk.X2);
}

// receiver side: k = H("coin" || x2*aux); equals the k the sender used
inline Scalar receiver_coin_key(const LongTermSecretKey& ltsk, const GroupElement& aux)
{
    return detail::coin_key_hash(ltsk.x2 * aux);
}

} // namespace dringct
