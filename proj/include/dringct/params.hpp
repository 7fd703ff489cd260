/****************************************************************************
this hpp implements protocol setup: fixed bounds plus the deterministically
derived generator set
****************************************************************************/
#pragma once

#include "dringct/group.hpp"
#include "dringct/twisted_elgamal.hpp"

#include <array>

namespace dringct {

struct PublicParams {
    uint8_t version = 1;
    uint32_t lambda = 128;
    uint64_t v_max = kAmountBound;  // amounts lie in [0, v_max)
    uint16_t n_max = 256;           // ring size bound, power of two
    uint8_t m_max = 16;             // spend slots per transaction
    uint8_t t_max = 8;              // output slots per transaction
    uint8_t range_bits = 32;
    GeneratorSet gens;
    std::array<unsigned char, 32> id{};
};

inline PublicParams setup(uint32_t lambda = 128)
{
    PublicParams pp;
    pp.lambda = lambda;
    // 64*t_max pairs leave room for wider test circuits; triptych bases
    // cover rings up to 2^16
    pp.gens = derive_generators(64 * size_t(pp.t_max), 32);

    hash::Shake h;
    h.absorb_label("dringct/pp");
    h.absorb_u64(pp.version);
    h.absorb_u64(pp.lambda);
    h.absorb_u64(pp.v_max);
    h.absorb_u64(pp.n_max);
    h.absorb_u64(pp.m_max);
    h.absorb_u64(pp.t_max);
    h.absorb_u64(pp.range_bits);
    h.squeeze(pp.id);
    return pp;
}

} // namespace dringct
