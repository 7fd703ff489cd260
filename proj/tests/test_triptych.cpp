#include "helpers.hpp"

#include <catch2/catch.hpp>

using namespace dringct;

namespace {

struct Keyring {
    std::vector<GroupElement> ring;
    std::vector<Scalar> sks;
};

Keyring make_keyring(size_t n)
{
    Keyring k;
    for (size_t i = 0; i < n; i++) {
        k.sks.push_back(Scalar::random_nonzero());
        k.ring.push_back(mul_base(k.sks.back()));
    }
    return k;
}

size_t atom_count(const triptych::RingSig& sig)
{
    const auto& p = sig.proof;
    return 1 /*J*/ + 4 /*ABCD*/ + p.X.size() + p.X2.size() + p.Y.size() + p.f.size() +
           3 /*zA zC z*/ + (p.X2.empty() ? 0 : 1) /*z2*/;
}

} // namespace

TEST_CASE("every signer index verifies at N=4")
{
    const auto& pp = testutil::pp();
    auto k = make_keyring(4);
    for (size_t idx = 0; idx < 4; idx++) {
        Transcript t("t");
        auto sig = triptych::sign(pp.gens, k.ring, idx, k.sks[idx], t.fork("s", 0));
        REQUIRE(triptych::verify(pp.gens, k.ring, sig, t.fork("s", 0)));
    }
}

TEST_CASE("same key links across messages and rings")
{
    const auto& pp = testutil::pp();
    auto k = make_keyring(8);

    Transcript t1("msg one");
    Transcript t2("msg two");
    auto s1 = triptych::sign(pp.gens, k.ring, 5, k.sks[5], std::move(t1));
    auto s2 = triptych::sign(pp.gens, k.ring, 5, k.sks[5], std::move(t2));
    REQUIRE(triptych::link(s1, s2));

    // cross-ring replay: a different ring, same secret key
    auto other = make_keyring(8);
    other.ring[3] = k.ring[5];
    Transcript t3("msg three");
    auto s3 = triptych::sign(pp.gens, other.ring, 3, k.sks[5], std::move(t3));
    REQUIRE(triptych::link(s1, s3));

    Transcript t4("msg four");
    auto s4 = triptych::sign(pp.gens, k.ring, 2, k.sks[2], std::move(t4));
    REQUIRE_FALSE(triptych::link(s1, s4));
}

TEST_CASE("key image is deterministic for a fixed key")
{
    const auto& pp = testutil::pp();
    auto k = make_keyring(4);
    Transcript t("x");
    auto s1 = triptych::sign(pp.gens, k.ring, 1, k.sks[1], t.fork("a", 0));
    auto s2 = triptych::sign(pp.gens, k.ring, 1, k.sks[1], t.fork("b", 1));
    REQUIRE(s1.key_image == s2.key_image);
    REQUIRE(s1.key_image == k.sks[1].inverted() * pp.gens.U);
}

TEST_CASE("proof size grows linearly in log2(N)")
{
    const auto& pp = testutil::pp();
    std::vector<size_t> ns{4, 16, 64, 256};
    std::vector<size_t> counts;
    for (size_t n : ns) {
        auto k = make_keyring(n);
        Transcript t("size");
        auto sig = triptych::sign(pp.gens, k.ring, n / 2, k.sks[n / 2], std::move(t));
        counts.push_back(atom_count(sig));
    }
    // plain signature: 8 + 3*log2(N) atoms exactly
    for (size_t i = 0; i < ns.size(); i++) {
        size_t m = 0;
        while ((size_t(1) << m) < ns[i]) m++;
        REQUIRE(counts[i] == 8 + 3 * m);
    }
}

TEST_CASE("bad index and bad ring size are reported at signing")
{
    const auto& pp = testutil::pp();
    auto k = make_keyring(4);
    Transcript t("x");

    REQUIRE_THROWS_AS(triptych::sign(pp.gens, k.ring, 2, k.sks[1], t.fork("a", 0)), Error);

    std::vector<GroupElement> odd(k.ring.begin(), k.ring.begin() + 3);
    REQUIRE_THROWS_AS(triptych::sign(pp.gens, odd, 0, k.sks[0], t.fork("b", 0)), Error);

    std::vector<GroupElement> padded = odd;
    triptych::pad_to_pow2(padded);
    REQUIRE(padded.size() == 4);
    REQUIRE(padded[3] == padded[2]);
    auto sig = triptych::sign(pp.gens, padded, 0, k.sks[0], t.fork("c", 0));
    REQUIRE(triptych::verify(pp.gens, padded, sig, t.fork("c", 0)));
}

TEST_CASE("ring member substitution is rejected")
{
    const auto& pp = testutil::pp();
    auto k = make_keyring(8);
    Transcript t("sub");
    auto sig = triptych::sign(pp.gens, k.ring, 4, k.sks[4], t.fork("s", 0));

    auto tampered = k.ring;
    tampered[0] = mul_base(Scalar::random_nonzero());
    REQUIRE_FALSE(triptych::verify(pp.gens, tampered, sig, t.fork("s", 0)));
}

TEST_CASE("mutation fuzz: single-field corruption always rejects")
{
    const auto& pp = testutil::pp();
    auto k = make_keyring(8);
    Transcript t("fuzz");
    auto sig = triptych::sign(pp.gens, k.ring, 3, k.sks[3], t.fork("s", 0));
    REQUIRE(triptych::verify(pp.gens, k.ring, sig, t.fork("s", 0)));

    GroupElement bump = GroupElement::base();
    for (int i = 0; i < 100; i++) {
        auto mutated = sig;
        switch (i % 10) {
        case 0: mutated.key_image = mul_base(Scalar::random_nonzero()); break;
        case 1: mutated.proof.A = mutated.proof.A + bump; break;
        case 2: mutated.proof.B = mutated.proof.B + bump; break;
        case 3: mutated.proof.C = mutated.proof.C + bump; break;
        case 4: mutated.proof.D = mutated.proof.D + bump; break;
        case 5: mutated.proof.X[i % 3] = mutated.proof.X[i % 3] + bump; break;
        case 6: mutated.proof.Y[i % 3] = mutated.proof.Y[i % 3] + bump; break;
        case 7: mutated.proof.f[i % 3] = mutated.proof.f[i % 3] + Scalar::one(); break;
        case 8: mutated.proof.zA = mutated.proof.zA + Scalar::one(); break;
        case 9: mutated.proof.z = mutated.proof.z + Scalar::one(); break;
        }
        REQUIRE_FALSE(triptych::verify(pp.gens, k.ring, mutated, t.fork("s", 0)));
    }
}

TEST_CASE("commitment leg binds the offset to the signer's commitment")
{
    const auto& pp = testutil::pp();
    auto k = make_keyring(8);
    std::vector<GroupElement> coms(8);
    std::vector<Scalar> blinds(8);
    for (size_t i = 0; i < 8; i++) {
        blinds[i] = Scalar::random_nonzero();
        coms[i] = amount_commit(pp.gens.H, 40 + i, blinds[i]);
    }
    Scalar qk = Scalar::random_nonzero();
    GroupElement offset = amount_commit(pp.gens.H, 42, qk);

    Transcript t("leg");
    auto sig = triptych::sign(pp.gens, k.ring, coms, &offset, 2, k.sks[2], blinds[2] - qk,
                              t.fork("s", 0));
    REQUIRE(triptych::verify(pp.gens, k.ring, coms, &offset, sig, t.fork("s", 0)));

    // offset that commits to a different amount cannot be signed for...
    GroupElement bad_offset = amount_commit(pp.gens.H, 43, qk);
    REQUIRE_THROWS_AS(triptych::sign(pp.gens, k.ring, coms, &bad_offset, 2, k.sks[2],
                                     blinds[2] - qk, t.fork("s", 0)),
                      Error);
    // ...and swapping it under an existing signature rejects
    REQUIRE_FALSE(triptych::verify(pp.gens, k.ring, coms, &bad_offset, sig, t.fork("s", 0)));

    // plain signature is not accepted where the leg is required
    auto plain = triptych::sign(pp.gens, k.ring, 2, k.sks[2], t.fork("s", 0));
    REQUIRE_FALSE(triptych::verify(pp.gens, k.ring, coms, &offset, plain, t.fork("s", 0)));
}

TEST_CASE("anonymity smoke test: a generic distinguisher stays near chance")
{
    const auto& pp = testutil::pp();
    const size_t n = 8;
    const int runs = 400;
    auto k = make_keyring(n);

    int hits = 0;
    for (int i = 0; i < runs; i++) {
        size_t signer = randombytes_uniform(n);
        Transcript t("anon");
        t.append_u64("round", static_cast<uint64_t>(i));
        auto sig = triptych::sign(pp.gens, k.ring, signer, k.sks[signer], std::move(t));

        // deterministic guess from the public signature bytes
        serial::Writer w;
        w.point(sig.key_image);
        w.point(sig.proof.A);
        w.point(sig.proof.D);
        w.scalar(sig.proof.z);
        Scalar digest = hash::to_scalar("distinguisher", w.data());
        size_t guess = digest.bytes[0] % n;
        if (guess == signer) hits++;
    }
    double rate = double(hits) / runs;
    REQUIRE(rate <= 1.0 / n + 0.1);
}

TEST_CASE("joint security regression: shared key across signature schemes")
{
    // the same one-time key signs both Schnorr messages and ring signatures;
    // interleaved use keeps both verifiable and tamper-evident
    const auto& pp = testutil::pp();
    auto k = make_keyring(4);
    const Scalar& sk = k.sks[1];
    const GroupElement& pk = k.ring[1];

    for (int round = 0; round < 20; round++) {
        Scalar m = Scalar::random();
        auto ds = schnorr::sign(sk, pk, m.bytes);
        Transcript t("joint");
        t.append_scalar("m", m);
        auto rs = triptych::sign(pp.gens, k.ring, 1, sk, t.fork("r", 0));

        REQUIRE(schnorr::verify(pk, m.bytes, ds));
        REQUIRE(triptych::verify(pp.gens, k.ring, rs, t.fork("r", 0)));

        auto ds_bad = ds;
        ds_bad.z = ds_bad.z + Scalar::one();
        REQUIRE_FALSE(schnorr::verify(pk, m.bytes, ds_bad));
        auto rs_bad = rs;
        rs_bad.proof.z = rs_bad.proof.z + Scalar::one();
        REQUIRE_FALSE(triptych::verify(pp.gens, k.ring, rs_bad, t.fork("r", 0)));
    }
}
