#pragma once

#include "dringct/dringct.hpp"

#include <string>
#include <vector>

namespace testutil {

inline const dringct::PublicParams& pp()
{
    static dringct::PublicParams params = dringct::setup();
    return params;
}

inline std::vector<unsigned char> bytes(const std::string& s)
{
    return std::vector<unsigned char>(s.begin(), s.end());
}

inline std::vector<unsigned char> unhex(const std::string& s)
{
    auto nibble = [](char c) { return c <= '9' ? c - '0' : c - 'a' + 10; };
    std::vector<unsigned char> out(s.size() / 2);
    for (size_t i = 0; i < out.size(); i++)
        out[i] = static_cast<unsigned char>((nibble(s[2 * i]) << 4) | nibble(s[2 * i + 1]));
    return out;
}

// a funded ring of accounts whose one-time secrets we control
struct TestRing {
    std::vector<dringct::Account> accounts;
    std::vector<uint32_t> offsets;
    std::vector<dringct::Scalar> sks;
    std::vector<dringct::Scalar> coin_keys;
    std::vector<uint64_t> amounts;
    dringct::LongTermKeyPair owner;
};

inline TestRing make_ring(const dringct::PublicParams& params, std::vector<uint64_t> amounts)
{
    TestRing ring;
    ring.owner = dringct::LongTermKeyPair::generate();
    ring.amounts = amounts;
    for (size_t i = 0; i < amounts.size(); i++) {
        auto ca = dringct::create_account(params, amounts[i], ring.owner.pk);
        ring.accounts.push_back(ca.account);
        ring.offsets.push_back(static_cast<uint32_t>(i));
        ring.sks.push_back(*dringct::one_time_sk_gen(ca.account.pk, ca.aux, ring.owner.sk));
        ring.coin_keys.push_back(ca.coin_key);
    }
    return ring;
}

inline dringct::SpendInput spend_of(const TestRing& ring, size_t i)
{
    return {static_cast<uint32_t>(i), ring.sks[i], ring.amounts[i], ring.coin_keys[i]};
}

} // namespace testutil
