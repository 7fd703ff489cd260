/****************************************************************************
this hpp implements the append-only ledger: a flat ordered transaction log,
the account store with per-account coin versions, the key image registry
and homomorphic stake aggregation per representative
****************************************************************************/
#pragma once

#include "dringct/errors.hpp"
#include "dringct/serial.hpp"
#include "dringct/tx.hpp"

#include <fstream>
#include <unordered_map>
#include <variant>
#include <vector>

namespace dringct {

using AnyTx = std::variant<Mint, DRingCTx, CRx>;

struct AccountRecord {
    Account account;
    GroupElement enc_key;  // who can decrypt the current coin: own pk, or a representative X1
    uint32_t version = 0;  // bumped by every accepted CRx
};

struct StakeView {
    GroupElement rep_key;
    Coin aggregate;  // componentwise sum of all current coins delegated to rep_key
    size_t delegated_accounts = 0;
};

inline constexpr std::array<unsigned char, 4> kLedgerMagic = {'D', 'R', 'C', 'T'};
inline constexpr uint8_t kLedgerVersion = 1;
inline constexpr uint64_t kTallyBound = 1ull << 40;

class Ledger {
public:
    explicit Ledger(const PublicParams& pp) : pp_(&pp) {}

    uint64_t height() const { return txs_.size(); }
    const std::vector<AnyTx>& txs() const { return txs_; }
    size_t account_count() const { return accounts_.size(); }
    const KeyImageSet& key_images() const { return images_; }

    const AccountRecord& account(uint32_t offset) const
    {
        if (offset >= accounts_.size())
            throw Error(Errc::unknown_offset, "no account at offset " + std::to_string(offset));
        return accounts_[offset];
    }

    std::vector<Account> resolve_ring(std::span<const uint32_t> offsets) const
    {
        std::vector<Account> ring;
        ring.reserve(offsets.size());
        for (uint32_t off : offsets) ring.push_back(account(off).account);
        return ring;
    }

    // verify first, then apply; returns the new height
    uint64_t append(const AnyTx& tx)
    {
        std::visit([&](const auto& t) { apply(t); }, tx);
        txs_.push_back(tx);
        return height();
    }

    StakeView stake_aggregate(const GroupElement& rep_key) const
    {
        StakeView view;
        view.rep_key = rep_key;
        view.aggregate = Coin{GroupElement::identity(), GroupElement::identity()};
        for (const auto& rec : accounts_) {
            if (rec.enc_key != rep_key) continue;
            view.aggregate = view.aggregate + rec.account.coin;
            view.delegated_accounts++;
        }
        return view;
    }

    // every distinct representative key that currently holds a delegation
    std::vector<StakeView> stake_table() const
    {
        std::vector<StakeView> table;
        KeyImageSet seen;
        for (const auto& rec : accounts_) {
            if (rec.enc_key == rec.account.pk) continue;  // never delegated
            if (!seen.insert(rec.enc_key).second) continue;
            table.push_back(stake_aggregate(rec.enc_key));
        }
        return table;
    }

    void persist(const std::string& path) const
    {
        serial::Writer w;
        w.bytes(kLedgerMagic);
        w.u8(kLedgerVersion);
        w.u64(txs_.size());
        for (const auto& tx : txs_) {
            auto bytes = std::visit([](const auto& t) { return serialize(t); }, tx);
            w.u32(static_cast<uint32_t>(bytes.size()));
            w.bytes(bytes);
        }
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::parse_error, "cannot open " + path + " for writing");
        out.write(reinterpret_cast<const char*>(w.data().data()),
                  static_cast<std::streamsize>(w.size()));
        if (!out) throw Error(Errc::parse_error, "short write to " + path);
    }

    // parse and re-apply with full verification
    static Ledger load(const std::string& path, const PublicParams& pp)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error(Errc::parse_error, "cannot open " + path);
        std::vector<unsigned char> raw((std::istreambuf_iterator<char>(in)),
                                       std::istreambuf_iterator<char>());
        serial::Reader r(raw);
        if (r.bytes(4) != std::vector<unsigned char>(kLedgerMagic.begin(), kLedgerMagic.end()))
            throw Error(Errc::parse_error, "bad magic at offset 0");
        if (r.u8() != kLedgerVersion) throw Error(Errc::parse_error, "unsupported ledger version");
        uint64_t count = r.u64();
        Ledger ledger(pp);
        for (uint64_t i = 0; i < count; i++) {
            size_t at = r.pos();
            uint32_t len = r.u32();
            auto bytes = r.bytes(len);
            ledger.append(parse_tx(bytes, at + 4));
        }
        r.expect_done();
        return ledger;
    }

    static AnyTx parse_tx(std::span<const unsigned char> bytes, size_t file_offset)
    {
        try {
            if (bytes.empty()) throw Error(Errc::parse_error, "empty record");
            serial::Reader rec(bytes);
            AnyTx tx;
            switch (bytes[0]) {
            case kTagMint: tx = deserialize_mint(rec); break;
            case kTagDRingCTx: tx = deserialize_dringctx(rec); break;
            case kTagCRx: tx = deserialize_crx(rec); break;
            default: throw Error(Errc::parse_error, "unknown transaction tag");
            }
            rec.expect_done();
            return tx;
        } catch (const Error& e) {
            if (e.code() != Errc::parse_error) throw;
            throw Error(Errc::parse_error,
                        std::string(e.what()) + " (record at file offset " +
                            std::to_string(file_offset) + ")");
        }
    }

private:

    void apply(const Mint& tx)
    {
        if (verify_mint(*pp_, tx) != 1) throw Error(Errc::invalid_tx, "mint rejected");
        register_outputs(tx.outputs);
    }

    void apply(const DRingCTx& tx)
    {
        std::vector<Account> ring;
        try {
            ring = resolve_ring(tx.ring);
        } catch (const Error&) {
            throw Error(Errc::invalid_tx, "unresolvable ring offset");
        }
        int v = verify_dringctx(*pp_, tx, ring, images_);
        if (v == -1) throw Error(Errc::double_spend, "key image already seen");
        if (v != 1) throw Error(Errc::invalid_tx, "transfer rejected");
        register_outputs(tx.outputs);
        for (const auto& sig : tx.ring_sigs) images_.insert(sig.key_image);
    }

    void apply(const CRx& tx)
    {
        if (tx.account_ref >= accounts_.size())
            throw Error(Errc::invalid_tx, "unresolvable account reference");
        AccountRecord& rec = accounts_[tx.account_ref];
        if (verify_crx(*pp_, tx, rec.account, rec.enc_key) != 1)
            throw Error(Errc::invalid_tx, "representative change rejected");
        rec.account.coin = tx.new_coin;
        rec.enc_key = tx.new_rep;
        rec.version++;
    }

    void register_outputs(const std::vector<Account>& outputs)
    {
        // each one-time key may be funded exactly once
        for (const auto& out : outputs)
            if (pk_index_.contains(out.pk))
                throw Error(Errc::invalid_tx, "output key already funded");
        for (const auto& out : outputs) {
            pk_index_.emplace(out.pk, static_cast<uint32_t>(accounts_.size()));
            accounts_.push_back(AccountRecord{out, out.pk, 0});
        }
    }

    const PublicParams* pp_;
    std::vector<AnyTx> txs_;
    std::vector<AccountRecord> accounts_;
    std::unordered_map<GroupElement, uint32_t, PointHash> pk_index_;
    KeyImageSet images_;
};

// total delegated stake in plaintext; pre: view built for x1*G
inline std::optional<uint64_t> tally(const PublicParams& pp, const Scalar& x1,
                                     const StakeView& view, uint64_t bound = kTallyBound)
{
    if (mul_base(x1) != view.rep_key) return std::nullopt;
    if (view.delegated_accounts == 0) return 0;
    return decrypt(pp.gens.H, x1, view.aggregate, bound);
}

} // namespace dringct
