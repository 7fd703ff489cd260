/****************************************************************************
this hpp implements twisted ElGamal over the prime-order group: the coin
(X, Y) = (k*pk, k*G + a*H) is a ciphertext whose Y component doubles as a
Pedersen commitment to the amount
****************************************************************************/
#pragma once

#include "dringct/errors.hpp"
#include "dringct/group.hpp"
#include "dringct/small_dlog.hpp"

#include <optional>

namespace dringct {

// amounts are 32-bit: valid values lie in [0, kAmountBound)
inline constexpr uint64_t kAmountBound = 1ull << 32;

struct Coin {
    GroupElement X;  // key-bound component
    GroupElement Y;  // commitment component

    Coin operator+(const Coin& o) const { return Coin{X + o.X, Y + o.Y}; }
    bool operator==(const Coin& o) const { return X == o.X && Y == o.Y; }
};

inline GroupElement amount_commit(const GroupElement& H, uint64_t amount, const Scalar& blinding)
{
    return mul_base(blinding) + Scalar::from_u64(amount) * H;
}

inline Coin encrypt(const GroupElement& H, const GroupElement& pk, uint64_t amount,
                    const Scalar& k)
{
    if (amount >= kAmountBound) throw Error(Errc::amount_range, "amount exceeds 32 bits");
    if (k.is_zero()) throw std::invalid_argument("encrypt: k must be nonzero");
    return Coin{k * pk, amount_commit(H, amount, k)};
}

// P = Y - sk^-1 * X = a*H, then a by baby-step/giant-step over [0, bound)
inline std::optional<uint64_t> decrypt(const GroupElement& H, const Scalar& sk, const Coin& c,
                                       uint64_t bound)
{
    if (sk.is_zero()) return std::nullopt;
    GroupElement P = c.Y - sk.inverted() * c.X;
    return solve_small_dlog(P, H, bound);
}

// receivers that know the coin key can skip the key inversion
inline std::optional<uint64_t> recover_amount(const GroupElement& H, const Scalar& coin_key,
                                              const Coin& c, uint64_t bound)
{
    GroupElement P = c.Y - mul_base(coin_key);
    return solve_small_dlog(P, H, bound);
}

} // namespace dringct
