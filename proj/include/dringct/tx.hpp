/****************************************************************************
this hpp implements account creation and the two transaction types: the
delegated ring confidential transfer (DRingCTx) and the change of
representative (CRx), with their canonical wire encodings and verification
****************************************************************************/
#pragma once

#include "dringct/balance_proof.hpp"
#include "dringct/enc_proof.hpp"
#include "dringct/equal_proof.hpp"
#include "dringct/errors.hpp"
#include "dringct/group.hpp"
#include "dringct/params.hpp"
#include "dringct/range_proof.hpp"
#include "dringct/schnorr.hpp"
#include "dringct/serial.hpp"
#include "dringct/stealth.hpp"
#include "dringct/triptych.hpp"
#include "dringct/twisted_elgamal.hpp"

#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

namespace dringct {

struct Account {
    GroupElement pk;  // one-time stealth key; receives exactly one funding tx
    Coin coin;

    bool operator==(const Account& o) const { return pk == o.pk && coin == o.coin; }
};

using KeyImageSet = std::unordered_set<GroupElement, PointHash>;

/* ------------------------------------------------------------------ */
/* transaction types                                                   */
/* ------------------------------------------------------------------ */

inline constexpr uint8_t kTagMint = 0x01;
inline constexpr uint8_t kTagDRingCTx = 0x02;
inline constexpr uint8_t kTagCRx = 0x03;
inline constexpr uint8_t kWireVersion = 1;

// proof payload tags of the wire format
inline constexpr uint8_t kProofEnc = 0x01;
inline constexpr uint8_t kProofBalance = 0x02;
inline constexpr uint8_t kProofEqual = 0x03;
inline constexpr uint8_t kProofRange = 0x04;
inline constexpr uint8_t kProofRingSig = 0x06;

struct DRingCTx {
    std::vector<uint32_t> ring;                 // 3-byte global offsets, padded to a power of two
    std::vector<triptych::RingSig> ring_sigs;   // one per spend slot
    std::vector<GroupElement> aux;              // stealth R per output
    std::vector<Account> outputs;
    std::vector<GroupElement> spend_commitments;  // re-blinded spend amounts, one per slot
    std::vector<zk::EncProof> enc_proofs;
    bullet::Proof range_proof;
    zk::BalanceProof balance_proof;
    std::vector<unsigned char> message;
};

struct CRx {
    uint32_t account_ref = 0;
    GroupElement new_rep;  // X1 component of the new representative
    Coin new_coin;
    schnorr::Signature sig;
    zk::EqualProof equal_proof;
    std::vector<unsigned char> message;
};

struct Mint {
    std::vector<Account> outputs;
    std::vector<GroupElement> aux;
    std::vector<zk::EncProof> enc_proofs;
    bullet::Proof range_proof;
    std::vector<unsigned char> message;
};

struct SpendInput {
    uint32_t ring_index = 0;  // position in the padded ring
    Scalar sk;
    uint64_t amount = 0;
    Scalar coin_key;
};

struct OutputRequest {
    uint64_t amount = 0;
    LongTermPublicKey to;
};

/* ------------------------------------------------------------------ */
/* wire encoding                                                       */
/* ------------------------------------------------------------------ */

namespace wire {

inline void put_message(serial::Writer& w, const std::vector<unsigned char>& msg)
{
    if (msg.size() > 0xffff) throw Error(Errc::parse_error, "message exceeds 64KiB");
    w.u16(static_cast<uint16_t>(msg.size()));
    w.bytes(msg);
}

inline std::vector<unsigned char> get_message(serial::Reader& r) { return r.bytes(r.u16()); }

inline void put_proof_header(serial::Writer& w, uint8_t tag, size_t atoms)
{
    w.u8(tag);
    w.u16(static_cast<uint16_t>(atoms));
}

inline uint16_t get_proof_header(serial::Reader& r, uint8_t tag)
{
    if (r.u8() != tag)
        throw Error(Errc::parse_error, "unexpected proof tag at offset " + std::to_string(r.pos() - 1));
    return r.u16();
}

inline void put_enc(serial::Writer& w, const zk::EncProof& p)
{
    put_proof_header(w, kProofEnc, 4);
    w.point(p.A1);
    w.point(p.A2);
    w.scalar(p.z1);
    w.scalar(p.z2);
}

inline zk::EncProof get_enc(serial::Reader& r)
{
    if (get_proof_header(r, kProofEnc) != 4) throw Error(Errc::parse_error, "bad enc proof size");
    zk::EncProof p;
    p.A1 = r.point();
    p.A2 = r.point();
    p.z1 = r.scalar();
    p.z2 = r.scalar();
    return p;
}

inline void put_balance(serial::Writer& w, const zk::BalanceProof& p)
{
    put_proof_header(w, kProofBalance, 2);
    w.point(p.A);
    w.scalar(p.z);
}

inline zk::BalanceProof get_balance(serial::Reader& r)
{
    if (get_proof_header(r, kProofBalance) != 2)
        throw Error(Errc::parse_error, "bad balance proof size");
    zk::BalanceProof p;
    p.A = r.point();
    p.z = r.scalar();
    return p;
}

inline void put_equal(serial::Writer& w, const zk::EqualProof& p)
{
    put_proof_header(w, kProofEqual, 6);
    w.point(p.A1);
    w.point(p.A2);
    w.point(p.B);
    w.scalar(p.z1);
    w.scalar(p.z2);
    w.scalar(p.z3);
}

inline zk::EqualProof get_equal(serial::Reader& r)
{
    if (get_proof_header(r, kProofEqual) != 6)
        throw Error(Errc::parse_error, "bad equivalence proof size");
    zk::EqualProof p;
    p.A1 = r.point();
    p.A2 = r.point();
    p.B = r.point();
    p.z1 = r.scalar();
    p.z2 = r.scalar();
    p.z3 = r.scalar();
    return p;
}

inline void put_range(serial::Writer& w, const bullet::Proof& p)
{
    put_proof_header(w, kProofRange, 9 + 2 * p.ip.L.size());
    w.point(p.A);
    w.point(p.S);
    w.point(p.T1);
    w.point(p.T2);
    for (size_t i = 0; i < p.ip.L.size(); i++) {
        w.point(p.ip.L[i]);
        w.point(p.ip.R[i]);
    }
    w.scalar(p.tau_x);
    w.scalar(p.mu);
    w.scalar(p.t_hat);
    w.scalar(p.ip.a);
    w.scalar(p.ip.b);
}

inline bullet::Proof get_range(serial::Reader& r)
{
    uint16_t atoms = get_proof_header(r, kProofRange);
    if (atoms < 9 || (atoms - 9) % 2 != 0) throw Error(Errc::parse_error, "bad range proof size");
    size_t rounds = (atoms - 9) / 2;
    bullet::Proof p;
    p.A = r.point();
    p.S = r.point();
    p.T1 = r.point();
    p.T2 = r.point();
    p.ip.L.resize(rounds);
    p.ip.R.resize(rounds);
    for (size_t i = 0; i < rounds; i++) {
        p.ip.L[i] = r.point();
        p.ip.R[i] = r.point();
    }
    p.tau_x = r.scalar();
    p.mu = r.scalar();
    p.t_hat = r.scalar();
    p.ip.a = r.scalar();
    p.ip.b = r.scalar();
    return p;
}

inline void put_ring_sig(serial::Writer& w, const triptych::RingSig& sig)
{
    size_t m = sig.proof.X.size();
    if (sig.proof.X2.size() != m) throw Error(Errc::parse_error, "ring signature lacks commitment leg");
    put_proof_header(w, kProofRingSig, 9 + 4 * m);
    w.point(sig.key_image);
    w.point(sig.proof.A);
    w.point(sig.proof.B);
    w.point(sig.proof.C);
    w.point(sig.proof.D);
    for (const auto& x : sig.proof.X) w.point(x);
    for (const auto& x : sig.proof.X2) w.point(x);
    for (const auto& y : sig.proof.Y) w.point(y);
    for (const auto& f : sig.proof.f) w.scalar(f);
    w.scalar(sig.proof.zA);
    w.scalar(sig.proof.zC);
    w.scalar(sig.proof.z);
    w.scalar(sig.proof.z2);
}

inline triptych::RingSig get_ring_sig(serial::Reader& r)
{
    uint16_t atoms = get_proof_header(r, kProofRingSig);
    if (atoms < 13 || (atoms - 9) % 4 != 0)
        throw Error(Errc::parse_error, "bad ring signature size");
    size_t m = (atoms - 9) / 4;
    triptych::RingSig sig;
    sig.key_image = r.point();
    sig.proof.A = r.point();
    sig.proof.B = r.point();
    sig.proof.C = r.point();
    sig.proof.D = r.point();
    sig.proof.X.resize(m);
    sig.proof.X2.resize(m);
    sig.proof.Y.resize(m);
    for (auto& x : sig.proof.X) x = r.point();
    for (auto& x : sig.proof.X2) x = r.point();
    for (auto& y : sig.proof.Y) y = r.point();
    sig.proof.f.resize(m);
    for (auto& f : sig.proof.f) f = r.scalar();
    sig.proof.zA = r.scalar();
    sig.proof.zC = r.scalar();
    sig.proof.z = r.scalar();
    sig.proof.z2 = r.scalar();
    return sig;
}

inline void put_account(serial::Writer& w, const Account& a)
{
    w.point(a.pk);
    w.point(a.coin.X);
    w.point(a.coin.Y);
}

inline Account get_account(serial::Reader& r)
{
    Account a;
    a.pk = r.point();
    a.coin.X = r.point();
    a.coin.Y = r.point();
    return a;
}

} // namespace wire

inline std::vector<unsigned char> serialize(const DRingCTx& tx)
{
    serial::Writer w;
    w.u8(kTagDRingCTx);
    w.u8(kWireVersion);
    w.u16(static_cast<uint16_t>(tx.ring.size()));
    w.u8(static_cast<uint8_t>(tx.ring_sigs.size()));
    w.u8(static_cast<uint8_t>(tx.outputs.size()));
    wire::put_message(w, tx.message);
    for (uint32_t off : tx.ring) w.u24(off);
    for (const auto& out : tx.outputs) wire::put_account(w, out);
    for (const auto& a : tx.aux) w.point(a);
    for (const auto& q : tx.spend_commitments) w.point(q);
    for (const auto& p : tx.enc_proofs) wire::put_enc(w, p);
    wire::put_range(w, tx.range_proof);
    wire::put_balance(w, tx.balance_proof);
    for (const auto& s : tx.ring_sigs) wire::put_ring_sig(w, s);
    return w.take();
}

inline DRingCTx deserialize_dringctx(serial::Reader& r)
{
    if (r.u8() != kTagDRingCTx) throw Error(Errc::parse_error, "not a DRingCTx record");
    if (r.u8() != kWireVersion) throw Error(Errc::parse_error, "unsupported version");
    DRingCTx tx;
    size_t n = r.u16();
    size_t m = r.u8();
    size_t t = r.u8();
    tx.message = wire::get_message(r);
    tx.ring.resize(n);
    for (auto& off : tx.ring) off = r.u24();
    tx.outputs.resize(t);
    for (auto& out : tx.outputs) out = wire::get_account(r);
    tx.aux.resize(t);
    for (auto& a : tx.aux) a = r.point();
    tx.spend_commitments.resize(m);
    for (auto& q : tx.spend_commitments) q = r.point();
    tx.enc_proofs.resize(t);
    for (auto& p : tx.enc_proofs) p = wire::get_enc(r);
    tx.range_proof = wire::get_range(r);
    tx.balance_proof = wire::get_balance(r);
    tx.ring_sigs.resize(m);
    for (auto& s : tx.ring_sigs) s = wire::get_ring_sig(r);
    return tx;
}

inline std::vector<unsigned char> serialize(const CRx& tx)
{
    serial::Writer w;
    w.u8(kTagCRx);
    w.u8(kWireVersion);
    w.u24(tx.account_ref);
    wire::put_message(w, tx.message);
    w.point(tx.new_rep);
    w.point(tx.new_coin.X);
    w.point(tx.new_coin.Y);
    w.point(tx.sig.A);
    w.scalar(tx.sig.z);
    wire::put_equal(w, tx.equal_proof);
    return w.take();
}

inline CRx deserialize_crx(serial::Reader& r)
{
    if (r.u8() != kTagCRx) throw Error(Errc::parse_error, "not a CRx record");
    if (r.u8() != kWireVersion) throw Error(Errc::parse_error, "unsupported version");
    CRx tx;
    tx.account_ref = r.u24();
    tx.message = wire::get_message(r);
    tx.new_rep = r.point();
    tx.new_coin.X = r.point();
    tx.new_coin.Y = r.point();
    tx.sig.A = r.point();
    tx.sig.z = r.scalar();
    tx.equal_proof = wire::get_equal(r);
    return tx;
}

inline std::vector<unsigned char> serialize(const Mint& tx)
{
    serial::Writer w;
    w.u8(kTagMint);
    w.u8(kWireVersion);
    w.u8(static_cast<uint8_t>(tx.outputs.size()));
    wire::put_message(w, tx.message);
    for (const auto& out : tx.outputs) wire::put_account(w, out);
    for (const auto& a : tx.aux) w.point(a);
    for (const auto& p : tx.enc_proofs) wire::put_enc(w, p);
    wire::put_range(w, tx.range_proof);
    return w.take();
}

inline Mint deserialize_mint(serial::Reader& r)
{
    if (r.u8() != kTagMint) throw Error(Errc::parse_error, "not a Mint record");
    if (r.u8() != kWireVersion) throw Error(Errc::parse_error, "unsupported version");
    Mint tx;
    size_t t = r.u8();
    tx.message = wire::get_message(r);
    tx.outputs.resize(t);
    for (auto& out : tx.outputs) out = wire::get_account(r);
    tx.aux.resize(t);
    for (auto& a : tx.aux) a = r.point();
    tx.enc_proofs.resize(t);
    for (auto& p : tx.enc_proofs) p = wire::get_enc(r);
    tx.range_proof = wire::get_range(r);
    return tx;
}

/* ------------------------------------------------------------------ */
/* account lifecycle                                                   */
/* ------------------------------------------------------------------ */

struct CreatedAccount {
    Account account;
    GroupElement aux;
    zk::EncProof enc_proof;
    // sender-side secrets, never serialized
    Scalar coin_key;
    Scalar otk_randomness;
};

inline Transcript account_transcript(const PublicParams& pp, const Account& account,
                                     const GroupElement& aux)
{
    Transcript t("dringct/account");
    t.append("pp", pp.id);
    t.append_point("pk", account.pk);
    t.append_point("X", account.coin.X);
    t.append_point("Y", account.coin.Y);
    t.append_point("aux", aux);
    return t;
}

inline CreatedAccount create_account(const PublicParams& pp, uint64_t amount,
                                     const LongTermPublicKey& to)
{
    if (amount >= pp.v_max) throw Error(Errc::amount_range, "amount exceeds v_max");
    CreatedAccount out;
    out.otk_randomness = Scalar::random_nonzero();
    OneTimeAddress ota = one_time_pk_gen(to, out.otk_randomness);
    out.coin_key = sender_coin_key(to, out.otk_randomness);
    out.account = Account{ota.pk, encrypt(pp.gens.H, ota.pk, amount, out.coin_key)};
    out.aux = ota.aux;
    out.enc_proof = zk::prove_enc(pp.gens.H, ota.pk, out.account.coin, Scalar::from_u64(amount),
                                  out.coin_key, account_transcript(pp, out.account, out.aux));
    return out;
}

inline bool verify_account_proof(const PublicParams& pp, const Account& account,
                                 const GroupElement& aux, const zk::EncProof& proof)
{
    return zk::verify_enc(pp.gens.H, account.pk, account.coin, proof,
                          account_transcript(pp, account, aux));
}

// works with either the one-time secret key or the representative secret x1,
// whichever matches the coin's encryption key
inline std::optional<uint64_t> reveal_balance(const PublicParams& pp, const Scalar& secret,
                                              const Coin& coin, uint64_t bound)
{
    return decrypt(pp.gens.H, secret, coin, bound);
}

/* ------------------------------------------------------------------ */
/* DRingCTx                                                            */
/* ------------------------------------------------------------------ */

namespace detail {

inline std::vector<unsigned char> dringctx_statement_bytes(
    const DRingCTx& tx, std::span<const Account> ring_accounts)
{
    serial::Writer w;
    w.u16(static_cast<uint16_t>(tx.ring.size()));
    w.u8(static_cast<uint8_t>(tx.spend_commitments.size()));
    w.u8(static_cast<uint8_t>(tx.outputs.size()));
    for (uint32_t off : tx.ring) w.u24(off);
    for (const auto& a : ring_accounts) wire::put_account(w, a);
    for (const auto& out : tx.outputs) wire::put_account(w, out);
    for (const auto& a : tx.aux) w.point(a);
    for (const auto& q : tx.spend_commitments) w.point(q);
    wire::put_message(w, tx.message);
    return w.take();
}

inline Transcript dringctx_transcript(const PublicParams& pp, const DRingCTx& tx,
                                      std::span<const Account> ring_accounts)
{
    Transcript t("dringct/tx");
    t.append("pp", pp.id);
    t.append("body", dringctx_statement_bytes(tx, ring_accounts));
    return t;
}

inline size_t pow2_ceil(size_t n)
{
    size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace detail

inline DRingCTx create_dringctx(const PublicParams& pp, std::vector<Account> ring_accounts,
                                std::vector<uint32_t> ring_offsets,
                                std::span<const SpendInput> spends,
                                std::span<const OutputRequest> outs,
                                std::vector<unsigned char> message = {})
{
    if (ring_accounts.size() != ring_offsets.size() || ring_accounts.empty())
        throw Error(Errc::bad_ring_size, "ring accounts and offsets must match");
    triptych::pad_to_pow2(ring_accounts);
    triptych::pad_to_pow2(ring_offsets);
    const size_t n = ring_accounts.size();
    if (n > pp.n_max) throw Error(Errc::bad_ring_size, "ring larger than N_max");

    const size_t m = spends.size();
    if (m == 0 || m > pp.m_max || m > n) throw Error(Errc::bad_ring_size, "bad spend count");
    const size_t t_count = outs.size();
    if (t_count == 0 || t_count > pp.t_max) throw Error(Errc::bad_batch, "bad output count");

    uint64_t in_sum = 0, out_sum = 0;
    for (const auto& s : spends) {
        if (s.ring_index >= n) throw Error(Errc::bad_index, "spend index outside ring");
        if (s.sk.is_zero() || mul_base(s.sk) != ring_accounts[s.ring_index].pk)
            throw Error(Errc::bad_spend_key, "secret key does not match ring slot");
        if (ring_accounts[s.ring_index].coin.Y != amount_commit(pp.gens.H, s.amount, s.coin_key))
            throw Error(Errc::bad_spend_key, "amount/coin key do not open the spent coin");
        in_sum += s.amount;
    }
    for (const auto& o : outs) {
        if (o.amount >= pp.v_max) throw Error(Errc::amount_range, "output exceeds v_max");
        out_sum += o.amount;
    }
    if (in_sum != out_sum) throw Error(Errc::unbalanced, "spend and output sums differ");

    DRingCTx tx;
    tx.ring = std::move(ring_offsets);
    tx.message = std::move(message);

    std::vector<Scalar> out_keys(t_count);
    std::vector<uint64_t> out_amounts(t_count);
    for (size_t i = 0; i < t_count; i++) {
        CreatedAccount ca = create_account(pp, outs[i].amount, outs[i].to);
        tx.outputs.push_back(ca.account);
        tx.aux.push_back(ca.aux);
        out_keys[i] = ca.coin_key;
        out_amounts[i] = outs[i].amount;
    }

    // re-blinded commitments carry the spent amounts into the balance proof
    std::vector<Scalar> pseudo_keys(m);
    for (size_t i = 0; i < m; i++) {
        pseudo_keys[i] = Scalar::random_nonzero();
        tx.spend_commitments.push_back(amount_commit(pp.gens.H, spends[i].amount, pseudo_keys[i]));
    }

    Transcript base = detail::dringctx_transcript(pp, tx, ring_accounts);

    for (size_t i = 0; i < t_count; i++)
        tx.enc_proofs.push_back(zk::prove_enc(pp.gens.H, tx.outputs[i].pk, tx.outputs[i].coin,
                                              Scalar::from_u64(out_amounts[i]), out_keys[i],
                                              base.fork("enc", i)));

    size_t padded_t = detail::pow2_ceil(t_count);
    std::vector<uint64_t> range_amounts(out_amounts);
    std::vector<Scalar> range_keys(out_keys);
    range_amounts.resize(padded_t, 0);
    range_keys.resize(padded_t, Scalar::zero());
    tx.range_proof = bullet::prove(pp.gens, pp.range_bits, range_amounts, range_keys,
                                   base.fork("range", 0));

    std::vector<GroupElement> out_ys(t_count);
    for (size_t i = 0; i < t_count; i++) out_ys[i] = tx.outputs[i].coin.Y;
    tx.balance_proof = zk::prove_balance(tx.spend_commitments, pseudo_keys, out_ys, out_keys,
                                         base.fork("balance", 0));

    std::vector<GroupElement> ring_pks(n), ring_ys(n);
    for (size_t i = 0; i < n; i++) {
        ring_pks[i] = ring_accounts[i].pk;
        ring_ys[i] = ring_accounts[i].coin.Y;
    }
    for (size_t i = 0; i < m; i++) {
        Scalar delta = spends[i].coin_key - pseudo_keys[i];
        tx.ring_sigs.push_back(triptych::sign(pp.gens, ring_pks, ring_ys,
                                              &tx.spend_commitments[i], spends[i].ring_index,
                                              spends[i].sk, delta, base.fork("ringsig", i)));
    }
    return tx;
}

// 1 valid, 0 invalid, -1 valid but linked to an already-seen key image
inline int verify_dringctx(const PublicParams& pp, const DRingCTx& tx,
                           std::span<const Account> ring_accounts, const KeyImageSet& history)
{
    const size_t n = tx.ring.size();
    const size_t m = tx.ring_sigs.size();
    const size_t t_count = tx.outputs.size();
    if (ring_accounts.size() != n || !triptych::is_pow2(n) || n < 2 || n > pp.n_max) return 0;
    if (m == 0 || m > pp.m_max || m > n || tx.spend_commitments.size() != m) return 0;
    if (t_count == 0 || t_count > pp.t_max) return 0;
    if (tx.aux.size() != t_count || tx.enc_proofs.size() != t_count) return 0;
    if (tx.message.size() > 0xffff) return 0;

    Transcript base = detail::dringctx_transcript(pp, tx, ring_accounts);

    for (size_t i = 0; i < t_count; i++)
        if (!zk::verify_enc(pp.gens.H, tx.outputs[i].pk, tx.outputs[i].coin, tx.enc_proofs[i],
                            base.fork("enc", i)))
            return 0;

    size_t padded_t = detail::pow2_ceil(t_count);
    std::vector<GroupElement> range_commitments(padded_t, GroupElement::identity());
    for (size_t i = 0; i < t_count; i++) range_commitments[i] = tx.outputs[i].coin.Y;
    if (!bullet::verify(pp.gens, pp.range_bits, range_commitments, tx.range_proof,
                        base.fork("range", 0)))
        return 0;

    std::vector<GroupElement> out_ys(t_count);
    for (size_t i = 0; i < t_count; i++) out_ys[i] = tx.outputs[i].coin.Y;
    if (!zk::verify_balance(tx.spend_commitments, out_ys, tx.balance_proof,
                            base.fork("balance", 0)))
        return 0;

    std::vector<GroupElement> ring_pks(n), ring_ys(n);
    for (size_t i = 0; i < n; i++) {
        ring_pks[i] = ring_accounts[i].pk;
        ring_ys[i] = ring_accounts[i].coin.Y;
    }
    for (size_t i = 0; i < m; i++)
        if (!triptych::verify(pp.gens, ring_pks, ring_ys, &tx.spend_commitments[i],
                              tx.ring_sigs[i], base.fork("ringsig", i)))
            return 0;

    // all proofs check out; now the double-spend link
    for (size_t i = 0; i < m; i++) {
        if (history.contains(tx.ring_sigs[i].key_image)) return -1;
        for (size_t j = i + 1; j < m; j++)
            if (tx.ring_sigs[i].key_image == tx.ring_sigs[j].key_image) return -1;
    }
    return 1;
}

/* ------------------------------------------------------------------ */
/* CRx                                                                 */
/* ------------------------------------------------------------------ */

namespace detail {

// the body binds the account's current coin and encryption key, so a CRx
// built against a stale coin version cannot verify
inline std::vector<unsigned char> crx_body_bytes(const PublicParams& pp, const CRx& tx,
                                                 const Account& account,
                                                 const GroupElement& current_enc_key)
{
    serial::Writer w;
    w.bytes(pp.id);
    w.u24(tx.account_ref);
    wire::put_account(w, account);
    w.point(current_enc_key);
    w.point(tx.new_rep);
    w.point(tx.new_coin.X);
    w.point(tx.new_coin.Y);
    wire::put_message(w, tx.message);
    return w.take();
}

} // namespace detail

// the fresh coin key is derived from the one-time secret and the coin being
// replaced, so the owner can replay its re-delegation chain from the ledger
// alone
inline Scalar crx_coin_key(const Scalar& sk, const Coin& old_coin)
{
    serial::Writer w;
    w.scalar(sk);
    w.point(old_coin.X);
    w.point(old_coin.Y);
    return hash::to_scalar("dringct/crxkey", w.data());
}

inline CRx create_crx(const PublicParams& pp, const Account& account, uint32_t account_ref,
                      const GroupElement& current_enc_key, const Scalar& sk, uint64_t amount,
                      const Scalar& coin_key, const LongTermPublicKey& new_rep,
                      std::vector<unsigned char> message = {})
{
    if (amount >= pp.v_max) throw Error(Errc::amount_range, "amount exceeds v_max");
    if (sk.is_zero() || mul_base(sk) != account.pk)
        throw Error(Errc::bad_spend_key, "secret key does not match the account");
    if (account.coin != encrypt(pp.gens.H, current_enc_key, amount, coin_key))
        throw Error(Errc::bad_spend_key, "amount/coin key do not open the coin");

    CRx tx;
    tx.account_ref = account_ref;
    tx.new_rep = new_rep.X1;
    tx.message = std::move(message);
    Scalar new_key = crx_coin_key(sk, account.coin);
    tx.new_coin = encrypt(pp.gens.H, new_rep.X1, amount, new_key);

    auto body = detail::crx_body_bytes(pp, tx, account, current_enc_key);
    tx.sig = schnorr::sign(sk, account.pk, body);

    Transcript t("dringct/crx");
    t.append("body", body);
    tx.equal_proof = zk::prove_equal(pp.gens.H, current_enc_key, account.coin, coin_key,
                                     new_rep.X1, tx.new_coin, new_key, Scalar::from_u64(amount),
                                     t.fork("equal", 0));
    return tx;
}

// 1 valid, 0 invalid; account and enc key are the referenced account's
// current ledger state
inline int verify_crx(const PublicParams& pp, const CRx& tx, const Account& account,
                      const GroupElement& current_enc_key)
{
    auto body = detail::crx_body_bytes(pp, tx, account, current_enc_key);
    if (!schnorr::verify(account.pk, body, tx.sig)) return 0;
    Transcript t("dringct/crx");
    t.append("body", body);
    if (!zk::verify_equal(pp.gens.H, current_enc_key, account.coin, tx.new_rep, tx.new_coin,
                          tx.equal_proof, t.fork("equal", 0)))
        return 0;
    return 1;
}

/* ------------------------------------------------------------------ */
/* Mint (genesis/test issuance; no conservation)                       */
/* ------------------------------------------------------------------ */

namespace detail {

inline Transcript mint_transcript(const PublicParams& pp, const Mint& tx)
{
    serial::Writer w;
    w.u8(static_cast<uint8_t>(tx.outputs.size()));
    for (const auto& out : tx.outputs) wire::put_account(w, out);
    for (const auto& a : tx.aux) w.point(a);
    wire::put_message(w, tx.message);
    Transcript t("dringct/mint");
    t.append("pp", pp.id);
    t.append("body", w.data());
    return t;
}

} // namespace detail

inline Mint create_mint(const PublicParams& pp, std::span<const OutputRequest> outs,
                        std::vector<unsigned char> message = {})
{
    if (outs.empty() || outs.size() > pp.t_max) throw Error(Errc::bad_batch, "bad output count");
    Mint tx;
    tx.message = std::move(message);
    std::vector<uint64_t> amounts;
    std::vector<Scalar> keys;
    for (const auto& o : outs) {
        CreatedAccount ca = create_account(pp, o.amount, o.to);
        tx.outputs.push_back(ca.account);
        tx.aux.push_back(ca.aux);
        tx.enc_proofs.push_back(ca.enc_proof);
        amounts.push_back(o.amount);
        keys.push_back(ca.coin_key);
    }
    size_t padded = detail::pow2_ceil(outs.size());
    amounts.resize(padded, 0);
    keys.resize(padded, Scalar::zero());
    Transcript t = detail::mint_transcript(pp, tx);
    tx.range_proof = bullet::prove(pp.gens, pp.range_bits, amounts, keys, t.fork("range", 0));
    return tx;
}

inline int verify_mint(const PublicParams& pp, const Mint& tx)
{
    const size_t t_count = tx.outputs.size();
    if (t_count == 0 || t_count > pp.t_max) return 0;
    if (tx.aux.size() != t_count || tx.enc_proofs.size() != t_count) return 0;
    for (size_t i = 0; i < t_count; i++)
        if (!verify_account_proof(pp, tx.outputs[i], tx.aux[i], tx.enc_proofs[i])) return 0;
    size_t padded = detail::pow2_ceil(t_count);
    std::vector<GroupElement> commitments(padded, GroupElement::identity());
    for (size_t i = 0; i < t_count; i++) commitments[i] = tx.outputs[i].coin.Y;
    Transcript t = detail::mint_transcript(pp, tx);
    if (!bullet::verify(pp.gens, pp.range_bits, commitments, tx.range_proof, t.fork("range", 0)))
        return 0;
    return 1;
}

} // namespace dringct
