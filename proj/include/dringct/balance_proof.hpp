/****************************************************************************
this hpp implements the balance proof: a Schnorr proof on base G over the
difference sum(spend Y) - sum(output Y), which is a multiple of G exactly
when the amounts cancel
****************************************************************************/
#pragma once

#include "dringct/group.hpp"

#include <span>

namespace dringct::zk {

struct BalanceProof {
    GroupElement A;
    Scalar z;
};

namespace detail {

inline GroupElement y_difference(std::span<const GroupElement> spend_ys,
                                 std::span<const GroupElement> output_ys)
{
    GroupElement d = GroupElement::identity();
    for (const auto& y : spend_ys) d = d + y;
    for (const auto& y : output_ys) d = d - y;
    return d;
}

inline void append_bal_statement(Transcript& t, std::span<const GroupElement> spend_ys,
                                 std::span<const GroupElement> output_ys)
{
    t.append_u64("M", spend_ys.size());
    for (const auto& y : spend_ys) t.append_point("Ym", y);
    t.append_u64("T", output_ys.size());
    for (const auto& y : output_ys) t.append_point("Yt", y);
}

} // namespace detail

// delta = sum(spend blindings) - sum(output blindings); the prover can only
// form it when the amount sums agree
inline BalanceProof prove_balance(std::span<const GroupElement> spend_ys,
                                  std::span<const Scalar> spend_blindings,
                                  std::span<const GroupElement> output_ys,
                                  std::span<const Scalar> output_blindings, Transcript t)
{
    Scalar delta = Scalar::zero();
    for (const auto& k : spend_blindings) delta = delta + k;
    for (const auto& k : output_blindings) delta = delta - k;
    detail::append_bal_statement(t, spend_ys, output_ys);
    Scalar u = Scalar::random_nonzero();
    BalanceProof p;
    p.A = mul_base(u);
    t.append_point("A", p.A);
    Scalar e = t.challenge("e");
    p.z = u + e * delta;
    return p;
}

inline bool verify_balance(std::span<const GroupElement> spend_ys,
                           std::span<const GroupElement> output_ys, const BalanceProof& p,
                           Transcript t)
{
    GroupElement d = detail::y_difference(spend_ys, output_ys);
    detail::append_bal_statement(t, spend_ys, output_ys);
    t.append_point("A", p.A);
    Scalar e = t.challenge("e");
    return mul_base(p.z) == p.A + e * d;
}

} // namespace dringct::zk
