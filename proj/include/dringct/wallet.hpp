/****************************************************************************
this hpp implements the wallet file: the long term key pair and all scan
state, encrypted at rest under a passphrase-derived key. One-time secret
keys are never stored; they are re-derived from aux on demand
****************************************************************************/
#pragma once

#include "dringct/ledger.hpp"
#include "dringct/serial.hpp"
#include "dringct/stealth.hpp"
#include "dringct/tx.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace dringct {

struct OwnedAccount {
    uint32_t global_index = 0;
    GroupElement pk;
    GroupElement aux;
    uint64_t amount = 0;
    Scalar coin_key;        // current coin key (changes when we re-delegate)
    GroupElement enc_key;   // current encryption key of the coin
    bool spent = false;
};

class Wallet {
public:
    static Wallet create() { return Wallet(LongTermKeyPair::generate()); }
    explicit Wallet(LongTermKeyPair keys) : keys_(std::move(keys)) {}

    const LongTermKeyPair& keys() const { return keys_; }
    std::vector<OwnedAccount>& accounts() { return accounts_; }
    const std::vector<OwnedAccount>& accounts() const { return accounts_; }

    std::string address() const { return encode_address(keys_.pk); }

    static std::string encode_address(const LongTermPublicKey& pk)
    {
        return hex(pk.X1.bytes) + hex(pk.X2.bytes);
    }

    static std::optional<LongTermPublicKey> decode_address(const std::string& s)
    {
        if (s.size() != 128) return std::nullopt;
        auto b = unhex(s);
        if (!b) return std::nullopt;
        auto x1 = GroupElement::from_bytes(std::span<const unsigned char>(b->data(), 32));
        auto x2 = GroupElement::from_bytes(std::span<const unsigned char>(b->data() + 32, 32));
        if (!x1 || !x2) return std::nullopt;
        return LongTermPublicKey{*x1, *x2};
    }

    // walk the ledger, pick up every output addressed to us, replay each
    // account's re-delegation chain to the current coin key, and mark
    // spends via our own key images
    void scan(const PublicParams& pp, const Ledger& ledger)
    {
        accounts_.clear();

        // funding info per output key, and the CRx chain per account offset
        std::unordered_map<GroupElement, std::pair<GroupElement, Coin>, PointHash> funded;
        std::unordered_map<uint32_t, std::vector<const CRx*>> chains;
        for (const auto& any : ledger.txs()) {
            if (const auto* mint = std::get_if<Mint>(&any)) {
                for (size_t i = 0; i < mint->outputs.size(); i++)
                    funded.emplace(mint->outputs[i].pk,
                                   std::make_pair(mint->aux[i], mint->outputs[i].coin));
            } else if (const auto* tx = std::get_if<DRingCTx>(&any)) {
                for (size_t i = 0; i < tx->outputs.size(); i++)
                    funded.emplace(tx->outputs[i].pk,
                                   std::make_pair(tx->aux[i], tx->outputs[i].coin));
            } else if (const auto* crx = std::get_if<CRx>(&any)) {
                chains[crx->account_ref].push_back(crx);
            }
        }

        for (uint32_t idx = 0; idx < ledger.account_count(); idx++) {
            const AccountRecord& rec = ledger.account(idx);
            auto fund = funded.find(rec.account.pk);
            if (fund == funded.end()) continue;
            const GroupElement& aux = fund->second.first;
            auto sk = one_time_sk_gen(rec.account.pk, aux, keys_.sk);
            if (!sk) continue;

            OwnedAccount acct;
            acct.global_index = idx;
            acct.pk = rec.account.pk;
            acct.aux = aux;
            acct.enc_key = rec.enc_key;
            acct.coin_key = receiver_coin_key(keys_.sk, aux);
            Coin coin = fund->second.second;
            if (auto it = chains.find(idx); it != chains.end()) {
                for (const CRx* crx : it->second) {
                    acct.coin_key = crx_coin_key(*sk, coin);
                    coin = crx->new_coin;
                }
            }

            auto amount = recover_amount(pp.gens.H, acct.coin_key, rec.account.coin, pp.v_max);
            if (!amount) continue;
            acct.amount = *amount;

            GroupElement image = sk->inverted() * pp.gens.U;
            acct.spent = ledger.key_images().contains(image);
            accounts_.push_back(std::move(acct));
        }
    }

    void save(const std::string& path, const std::string& passphrase) const
    {
        ensure_init();
        serial::Writer w;
        w.scalar(keys_.sk.x1);
        w.scalar(keys_.sk.x2);
        w.u32(static_cast<uint32_t>(accounts_.size()));
        for (const auto& a : accounts_) {
            w.u32(a.global_index);
            w.point(a.pk);
            w.point(a.aux);
            w.u64(a.amount);
            w.scalar(a.coin_key);
            w.point(a.enc_key);
            w.u8(a.spent ? 1 : 0);
        }

        std::array<unsigned char, crypto_pwhash_SALTBYTES> salt;
        randombytes_buf(salt.data(), salt.size());
        auto key = derive_key(passphrase, salt);
        std::array<unsigned char, crypto_secretbox_NONCEBYTES> nonce;
        randombytes_buf(nonce.data(), nonce.size());
        std::vector<unsigned char> boxed(w.size() + crypto_secretbox_MACBYTES);
        crypto_secretbox_easy(boxed.data(), w.data().data(), w.size(), nonce.data(), key.data());

        nlohmann::json j;
        j["format"] = "dringct-wallet-v1";
        j["address"] = address();
        j["salt"] = hex(salt);
        j["nonce"] = hex(nonce);
        j["payload"] = hex(boxed);
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw Error(Errc::parse_error, "cannot open " + path + " for writing");
        out << j.dump(2) << "\n";
    }

    // parse failure, wrong passphrase and tampering all fail closed
    static Wallet load(const std::string& path, const std::string& passphrase)
    {
        ensure_init();
        std::ifstream in(path);
        if (!in) throw Error(Errc::parse_error, "cannot open " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception&) {
            throw Error(Errc::parse_error, "wallet file is not valid JSON");
        }
        if (j.value("format", "") != "dringct-wallet-v1")
            throw Error(Errc::parse_error, "not a wallet file");
        auto salt_b = unhex(j.value("salt", ""));
        auto nonce_b = unhex(j.value("nonce", ""));
        auto boxed = unhex(j.value("payload", ""));
        if (!salt_b || salt_b->size() != crypto_pwhash_SALTBYTES || !nonce_b ||
            nonce_b->size() != crypto_secretbox_NONCEBYTES || !boxed ||
            boxed->size() < crypto_secretbox_MACBYTES)
            throw Error(Errc::parse_error, "malformed wallet file");

        std::array<unsigned char, crypto_pwhash_SALTBYTES> salt;
        std::copy(salt_b->begin(), salt_b->end(), salt.begin());
        auto key = derive_key(passphrase, salt);
        std::vector<unsigned char> plain(boxed->size() - crypto_secretbox_MACBYTES);
        if (crypto_secretbox_open_easy(plain.data(), boxed->data(), boxed->size(),
                                       nonce_b->data(), key.data()) != 0)
            throw Error(Errc::parse_error, "wrong passphrase or tampered wallet file");

        serial::Reader r(plain);
        Scalar x1 = r.scalar();
        Scalar x2 = r.scalar();
        Wallet w(LongTermKeyPair::from_secrets(x1, x2));
        uint32_t count = r.u32();
        for (uint32_t i = 0; i < count; i++) {
            OwnedAccount a;
            a.global_index = r.u32();
            a.pk = r.point();
            a.aux = r.point();
            a.amount = r.u64();
            auto ck = Scalar::from_bytes(r.bytes(32));
            a.coin_key = ck ? *ck : Scalar::zero();
            a.enc_key = r.point();
            a.spent = r.u8() != 0;
            w.accounts_.push_back(std::move(a));
        }
        r.expect_done();
        return w;
    }

private:
    template <class Bytes>
    static std::string hex(const Bytes& b)
    {
        static const char* digits = "0123456789abcdef";
        std::string s;
        s.reserve(b.size() * 2);
        for (unsigned char c : b) {
            s.push_back(digits[c >> 4]);
            s.push_back(digits[c & 0xf]);
        }
        return s;
    }

    static std::optional<std::vector<unsigned char>> unhex(const std::string& s)
    {
        if (s.size() % 2 != 0) return std::nullopt;
        auto nibble = [](char c) -> int {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            if (c >= 'A' && c <= 'F') return c - 'A' + 10;
            return -1;
        };
        std::vector<unsigned char> out(s.size() / 2);
        for (size_t i = 0; i < out.size(); i++) {
            int hi = nibble(s[2 * i]), lo = nibble(s[2 * i + 1]);
            if (hi < 0 || lo < 0) return std::nullopt;
            out[i] = static_cast<unsigned char>((hi << 4) | lo);
        }
        return out;
    }

    static std::array<unsigned char, crypto_secretbox_KEYBYTES> derive_key(
        const std::string& passphrase,
        const std::array<unsigned char, crypto_pwhash_SALTBYTES>& salt)
    {
        std::array<unsigned char, crypto_secretbox_KEYBYTES> key;
        if (crypto_pwhash(key.data(), key.size(), passphrase.data(), passphrase.size(),
                          salt.data(), crypto_pwhash_OPSLIMIT_INTERACTIVE,
                          crypto_pwhash_MEMLIMIT_INTERACTIVE, crypto_pwhash_ALG_DEFAULT) != 0)
            throw std::runtime_error("key derivation failed (out of memory)");
        return key;
    }

    LongTermKeyPair keys_;
    std::vector<OwnedAccount> accounts_;
};

} // namespace dringct
