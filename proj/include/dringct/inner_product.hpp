/****************************************************************************
this hpp implements the logarithmic inner-product argument used inside the
range proof
****************************************************************************/
#pragma once

#include "dringct/errors.hpp"
#include "dringct/group.hpp"

#include <span>
#include <vector>

namespace dringct::ipa {

struct Proof {
    std::vector<GroupElement> L, R;
    Scalar a, b;
};

inline bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline size_t log2_exact(size_t n)
{
    size_t k = 0;
    while ((size_t(1) << k) < n) k++;
    return k;
}

// prove <l, r> for bases (g, h) and cross-term base u; vectors are consumed
inline Proof prove(std::vector<GroupElement> g, std::vector<GroupElement> h,
                   const GroupElement& u, std::vector<Scalar> l, std::vector<Scalar> r,
                   Transcript& t)
{
    size_t n = g.size();
    if (!is_pow2(n) || h.size() != n || l.size() != n || r.size() != n)
        throw Error(Errc::bad_batch, "inner-product vectors must share a power-of-two length");

    Proof proof;
    while (n > 1) {
        size_t half = n / 2;
        Scalar cl = Scalar::zero(), cr = Scalar::zero();
        for (size_t i = 0; i < half; i++) {
            cl = cl + l[i] * r[half + i];
            cr = cr + l[half + i] * r[i];
        }
        GroupElement L = cl * u;
        GroupElement R = cr * u;
        for (size_t i = 0; i < half; i++) {
            L = L + l[i] * g[half + i] + r[half + i] * h[i];
            R = R + l[half + i] * g[i] + r[i] * h[half + i];
        }
        t.append_point("L", L);
        t.append_point("R", R);
        Scalar x = t.challenge("x");
        Scalar xinv = x.inverted();
        for (size_t i = 0; i < half; i++) {
            l[i] = x * l[i] + xinv * l[half + i];
            r[i] = xinv * r[i] + x * r[half + i];
            g[i] = xinv * g[i] + x * g[half + i];
            h[i] = x * h[i] + xinv * h[half + i];
        }
        proof.L.push_back(L);
        proof.R.push_back(R);
        n = half;
    }
    proof.a = l[0];
    proof.b = r[0];
    return proof;
}

// replay the round challenges; the caller folds them into its own check
inline std::vector<Scalar> challenges(const Proof& proof, Transcript& t)
{
    std::vector<Scalar> xs;
    xs.reserve(proof.L.size());
    for (size_t r = 0; r < proof.L.size(); r++) {
        t.append_point("L", proof.L[r]);
        t.append_point("R", proof.R[r]);
        xs.push_back(t.challenge("x"));
    }
    return xs;
}

// s[i] = prod over rounds of x_r^{+1} when bit (rounds-1-r) of i is set,
// x_r^{-1} otherwise; the coefficients of the fully folded first basis
inline std::vector<Scalar> fold_coefficients(std::span<const Scalar> xs, size_t n)
{
    size_t rounds = xs.size();
    std::vector<Scalar> xinv(rounds);
    Scalar s0 = Scalar::one();
    for (size_t r = 0; r < rounds; r++) {
        xinv[r] = xs[r].inverted();
        s0 = s0 * xinv[r];
    }
    std::vector<Scalar> s(n);
    s[0] = s0;
    for (size_t i = 1; i < n; i++) {
        size_t bit = 0;
        while (!(i & (size_t(1) << bit))) bit++;
        size_t r = rounds - 1 - bit;
        s[i] = s[i - (size_t(1) << bit)] * xs[r] * xs[r];
    }
    return s;
}

} // namespace dringct::ipa
