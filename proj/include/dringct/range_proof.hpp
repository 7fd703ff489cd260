/****************************************************************************
this hpp implements aggregated logarithmic-size Bulletproofs over the coin
commitment equation Y = k*G + a*H (blinding on G, value on H), so coin Y
components are used as range-proof commitments directly
****************************************************************************/
#pragma once

#include "dringct/errors.hpp"
#include "dringct/group.hpp"
#include "dringct/inner_product.hpp"
#include "dringct/twisted_elgamal.hpp"

#include <span>
#include <vector>

namespace dringct::bullet {

struct Proof {
    GroupElement A, S, T1, T2;
    Scalar tau_x, mu, t_hat;
    ipa::Proof ip;
};

namespace detail {

inline std::vector<Scalar> power_vector(const Scalar& a, size_t n)
{
    std::vector<Scalar> v(n);
    if (n == 0) return v;
    v[0] = Scalar::one();
    for (size_t i = 1; i < n; i++) v[i] = v[i - 1] * a;
    return v;
}

inline Scalar inner(std::span<const Scalar> a, std::span<const Scalar> b)
{
    Scalar s = Scalar::zero();
    for (size_t i = 0; i < a.size(); i++) s = s + a[i] * b[i];
    return s;
}

inline void check_shape(const GeneratorSet& gens, size_t width, size_t count)
{
    if (!ipa::is_pow2(width) || width < 2 || width > 63)
        throw Error(Errc::bad_batch, "range width must be a power of two below 64");
    if (!ipa::is_pow2(count))
        throw Error(Errc::bad_batch, "commitment count must be padded to a power of two");
    if (width * count > gens.range_gens.size())
        throw Error(Errc::bad_batch, "not enough range generators");
}

inline void append_statement(Transcript& t, size_t width,
                             std::span<const GroupElement> commitments)
{
    t.append_u64("width", width);
    t.append_u64("count", commitments.size());
    for (const auto& v : commitments) t.append_point("V", v);
}

} // namespace detail

inline Proof prove(const GeneratorSet& gens, size_t width, std::span<const uint64_t> amounts,
                   std::span<const Scalar> blindings, Transcript t)
{
    size_t count = amounts.size();
    if (blindings.size() != count) throw Error(Errc::bad_batch, "amount/blinding count mismatch");
    detail::check_shape(gens, width, count);
    size_t len = width * count;

    std::vector<GroupElement> commitments(count);
    for (size_t j = 0; j < count; j++)
        commitments[j] = amount_commit(gens.H, amounts[j], blindings[j]);
    detail::append_statement(t, width, commitments);

    // bit split: aL holds the bits, aR = aL - 1
    std::vector<Scalar> al(len), ar(len);
    const Scalar minus_one = Scalar::one().negated();
    for (size_t j = 0; j < count; j++)
        for (size_t i = 0; i < width; i++) {
            bool bit = (amounts[j] >> i) & 1;
            al[j * width + i] = bit ? Scalar::one() : Scalar::zero();
            ar[j * width + i] = bit ? Scalar::zero() : minus_one;
        }

    std::vector<GroupElement> g(len), h(len);
    for (size_t i = 0; i < len; i++) {
        g[i] = gens.range_gens[i].first;
        h[i] = gens.range_gens[i].second;
    }

    Scalar alpha = Scalar::random_nonzero();
    GroupElement A = mul_base(alpha);
    for (size_t i = 0; i < len; i++)
        A = al[i].is_zero() ? A - h[i] : A + g[i];

    std::vector<Scalar> sl(len), sr(len);
    for (size_t i = 0; i < len; i++) {
        sl[i] = Scalar::random();
        sr[i] = Scalar::random();
    }
    Scalar rho = Scalar::random_nonzero();
    GroupElement S = mul_base(rho);
    for (size_t i = 0; i < len; i++) S = S + sl[i] * g[i] + sr[i] * h[i];

    t.append_point("A", A);
    t.append_point("S", S);
    Scalar y = t.challenge("y");
    Scalar z = t.challenge("z");

    auto y_pow = detail::power_vector(y, len);
    std::vector<Scalar> z_pow = detail::power_vector(z, count + 3);
    std::vector<Scalar> two_pow = detail::power_vector(Scalar::from_u64(2), width);

    // l(X) = aL - z*1 + sL*X
    // r(X) = y^len o (aR + z*1 + sR*X) + sum_j z^{2+j} * 2-vector slice j
    std::vector<Scalar> l0(len), l1 = sl, r0(len), r1(len);
    for (size_t i = 0; i < len; i++) {
        l0[i] = al[i] - z;
        r0[i] = y_pow[i] * (ar[i] + z) + z_pow[2 + i / width] * two_pow[i % width];
        r1[i] = y_pow[i] * sr[i];
    }

    Scalar t1 = detail::inner(l0, r1) + detail::inner(l1, r0);
    Scalar t2 = detail::inner(l1, r1);
    Scalar tau1 = Scalar::random_nonzero();
    Scalar tau2 = Scalar::random_nonzero();
    GroupElement T1 = t1 * gens.H + mul_base(tau1);
    GroupElement T2 = t2 * gens.H + mul_base(tau2);
    t.append_point("T1", T1);
    t.append_point("T2", T2);
    Scalar x = t.challenge("x");

    std::vector<Scalar> lv(len), rv(len);
    for (size_t i = 0; i < len; i++) {
        lv[i] = l0[i] + x * l1[i];
        rv[i] = r0[i] + x * r1[i];
    }
    Scalar t_hat = detail::inner(lv, rv);
    Scalar tau_x = tau2 * x * x + tau1 * x;
    for (size_t j = 0; j < count; j++) tau_x = tau_x + z_pow[2 + j] * blindings[j];
    Scalar mu = alpha + rho * x;

    t.append_scalar("tau_x", tau_x);
    t.append_scalar("mu", mu);
    t.append_scalar("t_hat", t_hat);
    Scalar w = t.challenge("w");
    GroupElement u = w * gens.F;

    // h' = y^-i o h keeps <l, r> representable on the fixed bases
    Scalar y_inv = y.inverted();
    auto y_inv_pow = detail::power_vector(y_inv, len);
    for (size_t i = 0; i < len; i++) h[i] = y_inv_pow[i] * h[i];

    Proof p;
    p.A = A;
    p.S = S;
    p.T1 = T1;
    p.T2 = T2;
    p.tau_x = tau_x;
    p.mu = mu;
    p.t_hat = t_hat;
    p.ip = ipa::prove(std::move(g), std::move(h), u, std::move(lv), std::move(rv), t);
    return p;
}

inline bool verify(const GeneratorSet& gens, size_t width,
                   std::span<const GroupElement> commitments, const Proof& p, Transcript t)
{
    size_t count = commitments.size();
    try {
        detail::check_shape(gens, width, count);
    } catch (const Error&) {
        return false;
    }
    size_t len = width * count;
    if (p.ip.L.size() != ipa::log2_exact(len) || p.ip.R.size() != p.ip.L.size()) return false;

    detail::append_statement(t, width, commitments);
    t.append_point("A", p.A);
    t.append_point("S", p.S);
    Scalar y = t.challenge("y");
    Scalar z = t.challenge("z");
    t.append_point("T1", p.T1);
    t.append_point("T2", p.T2);
    Scalar x = t.challenge("x");
    t.append_scalar("tau_x", p.tau_x);
    t.append_scalar("mu", p.mu);
    t.append_scalar("t_hat", p.t_hat);
    Scalar w = t.challenge("w");
    if (y.is_zero() || z.is_zero() || x.is_zero() || w.is_zero()) return false;

    auto y_pow = detail::power_vector(y, len);
    std::vector<Scalar> z_pow = detail::power_vector(z, count + 3);
    std::vector<Scalar> two_pow = detail::power_vector(Scalar::from_u64(2), width);

    // t_hat*H + tau_x*G == delta(y,z)*H + sum_j z^{2+j} V_j + x*T1 + x^2*T2
    Scalar sum_y = Scalar::zero();
    for (size_t i = 0; i < len; i++) sum_y = sum_y + y_pow[i];
    Scalar sum_two = Scalar::from_u64((uint64_t(1) << width) - 1);
    Scalar delta = (z - z * z) * sum_y;
    for (size_t j = 0; j < count; j++) delta = delta - z_pow[3 + j] * sum_two;

    GroupElement lhs = p.t_hat * gens.H + mul_base(p.tau_x);
    GroupElement rhs = delta * gens.H + x * p.T1 + (x * x) * p.T2;
    for (size_t j = 0; j < count; j++) rhs = rhs + z_pow[2 + j] * commitments[j];
    if (lhs != rhs) return false;

    // single combined check of the inner-product statement
    auto xs = ipa::challenges(p.ip, t);
    for (const auto& ch : xs)
        if (ch.is_zero()) return false;
    auto s = ipa::fold_coefficients(xs, len);
    Scalar y_inv = y.inverted();
    auto y_inv_pow = detail::power_vector(y_inv, len);

    GroupElement acc = p.A + x * p.S + (w * (p.t_hat - p.ip.a * p.ip.b)) * gens.F;
    acc = acc - p.mu * GroupElement::base();
    for (size_t r = 0; r < xs.size(); r++) {
        Scalar xinv = xs[r].inverted();
        acc = acc + (xs[r] * xs[r]) * p.ip.L[r] + (xinv * xinv) * p.ip.R[r];
    }
    for (size_t i = 0; i < len; i++) {
        Scalar cg = z.negated() - p.ip.a * s[i];
        Scalar ch = z + (z_pow[2 + i / width] * two_pow[i % width] - p.ip.b * s[i].inverted()) *
                            y_inv_pow[i];
        acc = acc + cg * gens.range_gens[i].first + ch * gens.range_gens[i].second;
    }
    return acc.is_identity();
}

} // namespace dringct::bullet
