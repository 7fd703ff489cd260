#include "helpers.hpp"

#include <catch2/catch.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace dringct;

namespace {

struct Funded {
    Ledger ledger;
    LongTermKeyPair owner;
    std::vector<Scalar> sks;
    std::vector<Scalar> coin_keys;
    std::vector<uint64_t> amounts;
};

Funded fund(const PublicParams& pp, std::vector<uint64_t> amounts)
{
    Funded f{Ledger(pp), LongTermKeyPair::generate(), {}, {}, amounts};
    std::vector<OutputRequest> outs;
    for (uint64_t a : amounts) outs.push_back({a, f.owner.pk});
    auto mint = create_mint(pp, outs);
    f.ledger.append(mint);
    for (size_t i = 0; i < amounts.size(); i++) {
        const auto& acct = f.ledger.account(static_cast<uint32_t>(i));
        f.sks.push_back(*one_time_sk_gen(acct.account.pk, mint.aux[i], f.owner.sk));
        f.coin_keys.push_back(receiver_coin_key(f.owner.sk, mint.aux[i]));
    }
    return f;
}

DRingCTx spend_all_to(const PublicParams& pp, const Funded& f, std::vector<uint32_t> offsets,
                      uint32_t spend_offset, const LongTermPublicKey& to)
{
    auto ring = f.ledger.resolve_ring(offsets);
    uint32_t pos = 0;
    for (uint32_t i = 0; i < offsets.size(); i++)
        if (offsets[i] == spend_offset) pos = i;
    std::vector<SpendInput> spends{
        {pos, f.sks[spend_offset], f.amounts[spend_offset], f.coin_keys[spend_offset]}};
    std::vector<OutputRequest> outs{{f.amounts[spend_offset], to}};
    return create_dringctx(pp, ring, offsets, spends, outs);
}

std::string temp_path(const char* name)
{
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("append increments height; replay is a DoubleSpend")
{
    const auto& pp = testutil::pp();
    auto f = fund(pp, {5, 6, 7, 8});
    REQUIRE(f.ledger.height() == 1);
    REQUIRE(f.ledger.account_count() == 4);

    auto bob = LongTermKeyPair::generate();
    auto tx = spend_all_to(pp, f, {0, 1, 2, 3}, 2, bob.pk);
    REQUIRE(f.ledger.append(tx) == 2);
    REQUIRE(f.ledger.key_images().size() == 1);

    try {
        f.ledger.append(tx);
        FAIL("expected DoubleSpend");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::double_spend);
    }

    // a fresh transaction spending the same account is also linked
    auto tx2 = spend_all_to(pp, f, {0, 1, 2, 3}, 2, bob.pk);
    try {
        f.ledger.append(tx2);
        FAIL("expected DoubleSpend");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::double_spend);
    }
}

TEST_CASE("ring resolution: order, duplicates, unknown offsets")
{
    const auto& pp = testutil::pp();
    auto f = fund(pp, {5, 6, 7});
    auto ring = f.ledger.resolve_ring(std::vector<uint32_t>{2, 0, 0});
    REQUIRE(ring.size() == 3);
    REQUIRE(ring[0] == f.ledger.account(2).account);
    REQUIRE(ring[1] == ring[2]);

    REQUIRE_THROWS_AS(f.ledger.resolve_ring(std::vector<uint32_t>{3}), Error);
    try {
        f.ledger.resolve_ring(std::vector<uint32_t>{9});
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::unknown_offset);
    }
}

TEST_CASE("stake aggregation follows delegation and re-delegation")
{
    const auto& pp = testutil::pp();
    auto f = fund(pp, {3, 4});
    auto rep1 = LongTermKeyPair::generate();
    auto rep2 = LongTermKeyPair::generate();

    // nothing delegated yet
    auto empty = f.ledger.stake_aggregate(rep1.pk.X1);
    REQUIRE(empty.aggregate.X.is_identity());
    REQUIRE(empty.aggregate.Y.is_identity());
    REQUIRE(tally(pp, rep1.sk.x1, empty) == 0);

    // delegate both accounts to rep1
    for (uint32_t i = 0; i < 2; i++) {
        const auto& rec = f.ledger.account(i);
        auto crx = create_crx(pp, rec.account, i, rec.enc_key, f.sks[i], f.amounts[i],
                              f.coin_keys[i], rep1.pk);
        f.ledger.append(crx);
    }
    auto view1 = f.ledger.stake_aggregate(rep1.pk.X1);
    REQUIRE(view1.delegated_accounts == 2);
    REQUIRE(tally(pp, rep1.sk.x1, view1) == 7);

    // wrong secret reads nothing
    REQUIRE_FALSE(tally(pp, rep2.sk.x1, view1));

    // move the 4 over to rep2; rep1 drops by that amount
    {
        // recompute the current coin key by replaying the delegation chain
        const auto& rec = f.ledger.account(1);
        const auto& mint = std::get<Mint>(f.ledger.txs()[0]);
        Scalar key = receiver_coin_key(f.owner.sk, mint.aux[1]);
        Coin cur = mint.outputs[1].coin;
        for (const auto& any : f.ledger.txs()) {
            if (const auto* crx = std::get_if<CRx>(&any); crx && crx->account_ref == 1) {
                key = crx_coin_key(f.sks[1], cur);
                cur = crx->new_coin;
            }
        }
        auto crx = create_crx(pp, rec.account, 1, rec.enc_key, f.sks[1], 4, key, rep2.pk);
        f.ledger.append(crx);
    }
    REQUIRE(tally(pp, rep1.sk.x1, f.ledger.stake_aggregate(rep1.pk.X1)) == 3);
    REQUIRE(tally(pp, rep2.sk.x1, f.ledger.stake_aggregate(rep2.pk.X1)) == 4);
    REQUIRE(f.ledger.account(1).version == 2);
    REQUIRE(f.ledger.stake_table().size() == 2);
}

TEST_CASE("stale CRx on an old coin version is Invalid, not DoubleSpend")
{
    const auto& pp = testutil::pp();
    auto f = fund(pp, {9});
    auto rep1 = LongTermKeyPair::generate();
    auto rep2 = LongTermKeyPair::generate();

    const auto rec0 = f.ledger.account(0);
    auto crx1 = create_crx(pp, rec0.account, 0, rec0.enc_key, f.sks[0], 9, f.coin_keys[0], rep1.pk);
    auto crx2_stale =
        create_crx(pp, rec0.account, 0, rec0.enc_key, f.sks[0], 9, f.coin_keys[0], rep2.pk);
    f.ledger.append(crx1);
    REQUIRE(f.ledger.account(0).version == 1);
    try {
        f.ledger.append(crx2_stale);
        FAIL("expected Invalid");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::invalid_tx);
    }
    REQUIRE(f.ledger.account(0).version == 1);
}

TEST_CASE("wide tally: ten maximal coins cross-check against the plaintext sum")
{
    const auto& pp = testutil::pp();
    const uint64_t top = (1ull << 32) - 1;
    auto f = fund(pp, {top, top, top, top, top, top, top, top});
    // two more in a second mint to reach ten
    std::vector<OutputRequest> more{{top, f.owner.pk}, {top, f.owner.pk}};
    auto mint2 = create_mint(pp, more);
    f.ledger.append(mint2);

    auto rep = LongTermKeyPair::generate();
    for (uint32_t i = 0; i < 10; i++) {
        const auto& rec = f.ledger.account(i);
        Scalar key = i < 8 ? f.coin_keys[i] : receiver_coin_key(f.owner.sk, mint2.aux[i - 8]);
        Scalar sk = i < 8 ? f.sks[i]
                          : *one_time_sk_gen(rec.account.pk, mint2.aux[i - 8], f.owner.sk);
        auto crx = create_crx(pp, rec.account, i, rec.enc_key, sk, top, key, rep.pk);
        f.ledger.append(crx);
    }
    auto view = f.ledger.stake_aggregate(rep.pk.X1);
    REQUIRE(view.delegated_accounts == 10);
    REQUIRE(tally(pp, rep.sk.x1, view, 1ull << 40) == 10 * top);
}

TEST_CASE("tally linearity over random small delegations")
{
    const auto& pp = testutil::pp();
    std::vector<uint64_t> amounts;
    uint64_t expected = 0;
    for (int i = 0; i < 6; i++) {
        amounts.push_back(randombytes_uniform(1 << 7));
        expected += amounts.back();
    }
    auto f = fund(pp, amounts);
    auto rep = LongTermKeyPair::generate();
    for (uint32_t i = 0; i < amounts.size(); i++) {
        const auto& rec = f.ledger.account(i);
        auto crx = create_crx(pp, rec.account, i, rec.enc_key, f.sks[i], f.amounts[i],
                              f.coin_keys[i], rep.pk);
        f.ledger.append(crx);
    }
    REQUIRE(tally(pp, rep.sk.x1, f.ledger.stake_aggregate(rep.pk.X1), 1 << 10) == expected);
}

TEST_CASE("key image registry matches the number of accepted spend slots")
{
    const auto& pp = testutil::pp();
    auto f = fund(pp, {4, 4, 4, 4});
    auto bob = LongTermKeyPair::generate();
    auto ring = f.ledger.resolve_ring(std::vector<uint32_t>{0, 1, 2, 3});
    std::vector<SpendInput> spends{{0, f.sks[0], 4, f.coin_keys[0]},
                                   {1, f.sks[1], 4, f.coin_keys[1]}};
    std::vector<OutputRequest> outs{{8, bob.pk}};
    auto tx = create_dringctx(pp, ring, {0, 1, 2, 3}, spends, outs);
    f.ledger.append(tx);
    REQUIRE(f.ledger.key_images().size() == 2);
}

TEST_CASE("persistence: byte-exact round trip, truncation, empty ledger")
{
    const auto& pp = testutil::pp();
    auto f = fund(pp, {5, 6, 7, 8});
    auto bob = LongTermKeyPair::generate();
    f.ledger.append(spend_all_to(pp, f, {0, 1, 2, 3}, 1, bob.pk));
    auto rep = LongTermKeyPair::generate();
    const auto& rec = f.ledger.account(0);
    f.ledger.append(
        create_crx(pp, rec.account, 0, rec.enc_key, f.sks[0], 5, f.coin_keys[0], rep.pk));

    auto path = temp_path("dringct_test_ledger.bin");
    f.ledger.persist(path);
    auto loaded = Ledger::load(path, pp);
    REQUIRE(loaded.height() == f.ledger.height());
    REQUIRE(loaded.account_count() == f.ledger.account_count());
    REQUIRE(loaded.key_images() == f.ledger.key_images());

    auto path2 = temp_path("dringct_test_ledger2.bin");
    loaded.persist(path2);
    std::ifstream a(path, std::ios::binary), b(path2, std::ios::binary);
    std::vector<char> ba((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::vector<char> bb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    REQUIRE(ba == bb);

    // truncated file: structured parse error naming an offset
    std::ofstream cut(path2, std::ios::binary | std::ios::trunc);
    cut.write(ba.data(), static_cast<std::streamsize>(ba.size() / 2));
    cut.close();
    try {
        Ledger::load(path2, pp);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        REQUIRE(e.code() == Errc::parse_error);
        REQUIRE(std::string(e.what()).find("offset") != std::string::npos);
    }

    Ledger empty(pp);
    empty.persist(path2);
    REQUIRE(Ledger::load(path2, pp).height() == 0);

    std::remove(path.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("linkability: a spent universe only produces linked transactions")
{
    const auto& pp = testutil::pp();
    const size_t k = 4;
    auto f = fund(pp, {2, 2, 2, 2});
    auto bob = LongTermKeyPair::generate();
    std::vector<uint32_t> universe{0, 1, 2, 3};
    for (uint32_t i = 0; i < k; i++) f.ledger.append(spend_all_to(pp, f, universe, i, bob.pk));
    REQUIRE(f.ledger.key_images().size() == k);

    for (int trial = 0; trial < 10; trial++) {
        uint32_t victim = randombytes_uniform(k);
        auto tx = spend_all_to(pp, f, universe, victim, bob.pk);
        auto ring = f.ledger.resolve_ring(tx.ring);
        REQUIRE(verify_dringctx(pp, tx, ring, f.ledger.key_images()) == -1);
    }
}
