#include "helpers.hpp"

#include <catch2/catch.hpp>

using namespace dringct;

namespace {

// independent inner-product verifier: refold the generator vectors round by
// round instead of using the collapsed coefficient form
bool recursive_ipa_verify(std::vector<GroupElement> g, std::vector<GroupElement> h,
                          const GroupElement& u, GroupElement p, const ipa::Proof& proof,
                          Transcript& t)
{
    auto xs = ipa::challenges(proof, t);
    if (proof.L.size() != xs.size()) return false;
    for (size_t r = 0; r < xs.size(); r++) {
        size_t half = g.size() / 2;
        Scalar x = xs[r], xinv = x.inverted();
        p = p + (x * x) * proof.L[r] + (xinv * xinv) * proof.R[r];
        std::vector<GroupElement> g2(half), h2(half);
        for (size_t i = 0; i < half; i++) {
            g2[i] = xinv * g[i] + x * g[half + i];
            h2[i] = x * h[i] + xinv * h[half + i];
        }
        g = std::move(g2);
        h = std::move(h2);
    }
    return p == proof.a * g[0] + proof.b * h[0] + (proof.a * proof.b) * u;
}

GroupElement commit_raw(const GeneratorSet& gens, const Scalar& value, const Scalar& blinding)
{
    return mul_base(blinding) + value * gens.H;
}

} // namespace

TEST_CASE("inner-product argument agrees with the recursive-fold oracle")
{
    const auto& pp = testutil::pp();
    const size_t n = 8;
    std::vector<GroupElement> g(n), h(n);
    for (size_t i = 0; i < n; i++) {
        g[i] = pp.gens.range_gens[i].first;
        h[i] = pp.gens.range_gens[i].second;
    }
    GroupElement u = hash::to_group("ipa-test-u", {});

    for (int trial = 0; trial < 10; trial++) {
        std::vector<Scalar> l(n), r(n);
        for (size_t i = 0; i < n; i++) {
            l[i] = Scalar::random();
            r[i] = Scalar::random();
        }
        Scalar ip = Scalar::zero();
        GroupElement p = GroupElement::identity();
        for (size_t i = 0; i < n; i++) {
            ip = ip + l[i] * r[i];
            p = p + l[i] * g[i] + r[i] * h[i];
        }
        p = p + ip * u;

        Transcript t("ipa");
        t.append_u64("trial", trial);
        Transcript tp = t;
        auto proof = ipa::prove(g, h, u, l, r, tp);

        Transcript tv = t;
        REQUIRE(recursive_ipa_verify(g, h, u, p, proof, tv));

        auto bad = proof;
        bad.a = bad.a + Scalar::one();
        Transcript tb = t;
        REQUIRE_FALSE(recursive_ipa_verify(g, h, u, p, bad, tb));
    }
}

TEST_CASE("range proof accepts the v_max boundary pair")
{
    const auto& pp = testutil::pp();
    std::vector<uint64_t> amounts{0, (1ull << 32) - 1};
    std::vector<Scalar> blinds{Scalar::random_nonzero(), Scalar::random_nonzero()};
    Transcript t("range");
    auto proof = bullet::prove(pp.gens, 32, amounts, blinds, t.fork("p", 0));
    std::vector<GroupElement> coms{commit_raw(pp.gens, Scalar::from_u64(amounts[0]), blinds[0]),
                                   commit_raw(pp.gens, Scalar::from_u64(amounts[1]), blinds[1])};
    REQUIRE(bullet::verify(pp.gens, 32, coms, proof, t.fork("p", 0)));
    REQUIRE_FALSE(bullet::verify(pp.gens, 32, coms, proof, t.fork("p", 1)));
}

TEST_CASE("a commitment to exactly 2^32 cannot be proven in range")
{
    const auto& pp = testutil::pp();
    Scalar blind = Scalar::random_nonzero();
    Scalar too_big = Scalar::from_u64(1ull << 32);
    GroupElement forged = commit_raw(pp.gens, too_big, blind);

    // the dishonest prover works with the truncated bit pattern
    std::vector<uint64_t> claimed{0};
    std::vector<Scalar> blinds{blind};
    Transcript t("forge");
    auto proof = bullet::prove(pp.gens, 32, claimed, blinds, t.fork("p", 0));
    REQUIRE_FALSE(bullet::verify(pp.gens, 32, {&forged, 1}, proof, t.fork("p", 0)));
}

TEST_CASE("single zero commitment verifies")
{
    const auto& pp = testutil::pp();
    std::vector<uint64_t> amounts{0};
    std::vector<Scalar> blinds{Scalar::random_nonzero()};
    Transcript t("zero");
    auto proof = bullet::prove(pp.gens, 32, amounts, blinds, t.fork("p", 0));
    GroupElement com = commit_raw(pp.gens, Scalar::zero(), blinds[0]);
    REQUIRE(bullet::verify(pp.gens, 32, {&com, 1}, proof, t.fork("p", 0)));
}

TEST_CASE("reduced-width circuit matches the range predicate exhaustively")
{
    const auto& pp = testutil::pp();
    for (uint64_t a = 0; a < (1u << 9); a++) {
        std::vector<uint64_t> amounts{a};
        std::vector<Scalar> blinds{Scalar::random_nonzero()};
        Transcript t("w8");
        t.append_u64("a", a);
        auto proof = bullet::prove(pp.gens, 8, amounts, blinds, t.fork("p", 0));
        GroupElement com = commit_raw(pp.gens, Scalar::from_u64(a), blinds[0]);
        bool accepted = bullet::verify(pp.gens, 8, {&com, 1}, proof, t.fork("p", 0));
        REQUIRE(accepted == (a < (1u << 8)));
    }
}

TEST_CASE("batch shape violations are rejected")
{
    const auto& pp = testutil::pp();
    std::vector<uint64_t> amounts{1, 2, 3};
    std::vector<Scalar> blinds{Scalar::random_nonzero(), Scalar::random_nonzero(),
                               Scalar::random_nonzero()};
    Transcript t("batch");
    REQUIRE_THROWS_AS(bullet::prove(pp.gens, 32, amounts, blinds, t.fork("p", 0)), Error);

    // width not a power of two
    std::vector<uint64_t> one{1};
    std::vector<Scalar> kb{Scalar::random_nonzero()};
    REQUIRE_THROWS_AS(bullet::prove(pp.gens, 12, one, kb, t.fork("p", 0)), Error);

    // proof/commitment count mismatch on the verifier side
    std::vector<uint64_t> two{1, 2};
    std::vector<Scalar> kb2{Scalar::random_nonzero(), Scalar::random_nonzero()};
    auto proof = bullet::prove(pp.gens, 32, two, kb2, t.fork("q", 0));
    GroupElement com = commit_raw(pp.gens, Scalar::one(), kb2[0]);
    REQUIRE_FALSE(bullet::verify(pp.gens, 32, {&com, 1}, proof, t.fork("q", 0)));
}

TEST_CASE("aggregated proof covers each committed amount")
{
    const auto& pp = testutil::pp();
    std::vector<uint64_t> amounts{5, 1u << 20, 0, 255};
    std::vector<Scalar> blinds;
    std::vector<GroupElement> coms;
    for (uint64_t a : amounts) {
        blinds.push_back(Scalar::random_nonzero());
        coms.push_back(commit_raw(pp.gens, Scalar::from_u64(a), blinds.back()));
    }
    Transcript t("agg");
    auto proof = bullet::prove(pp.gens, 32, amounts, blinds, t.fork("p", 0));
    REQUIRE(bullet::verify(pp.gens, 32, coms, proof, t.fork("p", 0)));

    // swapping any single commitment breaks it
    auto bad = coms;
    bad[2] = commit_raw(pp.gens, Scalar::from_u64(7), blinds[2]);
    REQUIRE_FALSE(bullet::verify(pp.gens, 32, bad, proof, t.fork("p", 0)));
}
