// command line wallet, ledger maintenance and benchmark harness
#include "dringct/dringct.hpp"
#include "dringct/wallet.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace dringct;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitDoubleSpend = 2;
constexpr int kExitIo = 3;

int map_error(const Error& e)
{
    switch (e.code()) {
    case Errc::double_spend: return kExitDoubleSpend;
    case Errc::parse_error:
    case Errc::unknown_offset: return kExitIo;
    default: return kExitInvalid;
    }
}

uint64_t uniform_below(uint64_t n)
{
    ensure_init();
    return randombytes_uniform(static_cast<uint32_t>(n));
}

Ledger load_or_new(const std::string& path, const PublicParams& pp, bool allow_new)
{
    if (std::filesystem::exists(path)) return Ledger::load(path, pp);
    if (!allow_new) throw Error(Errc::parse_error, "ledger file not found: " + path);
    return Ledger(pp);
}

std::vector<unsigned char> to_bytes(const std::string& s)
{
    return std::vector<unsigned char>(s.begin(), s.end());
}

struct SendTarget {
    LongTermPublicKey to;
    uint64_t amount;
};

// pick unspent owned accounts until the requested total is covered; explicit
// indices override the spent check (the ledger still rejects double spends)
std::vector<OwnedAccount> select_spends(const Wallet& w, uint64_t total, size_t max_slots,
                                        const std::vector<uint32_t>& indices)
{
    std::vector<OwnedAccount> picked;
    uint64_t sum = 0;
    for (const auto& a : w.accounts()) {
        if (indices.empty()) {
            if (a.spent) continue;
        } else {
            bool chosen = false;
            for (uint32_t i : indices) chosen |= (i == a.global_index);
            if (!chosen) continue;
        }
        picked.push_back(a);
        sum += a.amount;
        if (indices.empty() && sum >= total) break;
    }
    if (sum < total) throw Error(Errc::unbalanced, "insufficient unspent balance");
    if (picked.size() > max_slots)
        throw Error(Errc::bad_ring_size, "amount needs more spend slots than M_max");
    return picked;
}

// ring = spends plus uniformly chosen decoys over the whole account index
std::vector<uint32_t> build_ring_offsets(const Ledger& ledger,
                                         const std::vector<OwnedAccount>& spends,
                                         size_t ring_size)
{
    std::vector<uint32_t> offsets;
    for (const auto& s : spends) offsets.push_back(s.global_index);
    size_t universe = ledger.account_count();
    std::vector<uint32_t> pool;
    for (uint32_t i = 0; i < universe; i++) {
        bool is_spend = false;
        for (const auto& s : spends) is_spend |= (s.global_index == i);
        if (!is_spend) pool.push_back(i);
    }
    while (offsets.size() < ring_size && !pool.empty()) {
        size_t pick = uniform_below(pool.size());
        offsets.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<long>(pick));
    }
    // Fisher-Yates so the spend positions are uniform
    for (size_t i = offsets.size(); i > 1; i--) {
        size_t j = uniform_below(i);
        std::swap(offsets[i - 1], offsets[j]);
    }
    return offsets;
}

int cmd_keygen(const std::string& wallet_path, const std::string& pass, bool force)
{
    if (std::filesystem::exists(wallet_path) && !force) {
        std::fprintf(stderr, "wallet file already exists: %s (use --force)\n", wallet_path.c_str());
        return kExitIo;
    }
    Wallet w = Wallet::create();
    w.save(wallet_path, pass);
    std::printf("%s\n", w.address().c_str());
    return kExitOk;
}

int cmd_address(const std::string& wallet_path, const std::string& pass)
{
    Wallet w = Wallet::load(wallet_path, pass);
    std::printf("%s\n", w.address().c_str());
    return kExitOk;
}

int cmd_mint(const PublicParams& pp, const std::string& wallet_path, const std::string& pass,
             const std::string& ledger_path, const std::vector<uint64_t>& amounts,
             const std::string& message)
{
    Wallet w = Wallet::load(wallet_path, pass);
    Ledger ledger = load_or_new(ledger_path, pp, true);
    std::vector<OutputRequest> outs;
    for (uint64_t a : amounts) outs.push_back({a, w.keys().pk});
    Mint mint = create_mint(pp, outs, to_bytes(message));
    uint64_t h = ledger.append(mint);
    ledger.persist(ledger_path);
    std::printf("minted %zu output(s), height %llu\n", outs.size(), (unsigned long long)h);
    return kExitOk;
}

int cmd_balance(const PublicParams& pp, const std::string& wallet_path, const std::string& pass,
                const std::string& ledger_path)
{
    Wallet w = Wallet::load(wallet_path, pass);
    Ledger ledger = load_or_new(ledger_path, pp, false);
    w.scan(pp, ledger);
    w.save(wallet_path, pass);
    uint64_t unspent = 0;
    for (const auto& a : w.accounts()) {
        std::printf("account %u amount %llu%s%s\n", a.global_index,
                    (unsigned long long)a.amount, a.spent ? " spent" : "",
                    a.enc_key == a.pk ? "" : " delegated");
        if (!a.spent) unspent += a.amount;
    }
    std::printf("unspent total %llu\n", (unsigned long long)unspent);
    return kExitOk;
}

int cmd_send(const PublicParams& pp, const std::string& wallet_path, const std::string& pass,
             const std::string& ledger_path, const std::vector<std::string>& to,
             const std::vector<uint64_t>& amounts, size_t ring_size,
             const std::vector<uint32_t>& indices, const std::string& message)
{
    if (to.size() != amounts.size() || to.empty())
        throw Error(Errc::unbalanced, "--to and --amount must pair up");
    Wallet w = Wallet::load(wallet_path, pass);
    Ledger ledger = load_or_new(ledger_path, pp, false);
    w.scan(pp, ledger);

    std::vector<SendTarget> targets;
    uint64_t total = 0;
    for (size_t i = 0; i < to.size(); i++) {
        auto addr = Wallet::decode_address(to[i]);
        if (!addr) throw Error(Errc::parse_error, "bad address: " + to[i]);
        targets.push_back({*addr, amounts[i]});
        total += amounts[i];
    }

    auto spends = select_spends(w, total, pp.m_max, indices);
    uint64_t in_sum = 0;
    for (const auto& s : spends) in_sum += s.amount;

    std::vector<OutputRequest> outs;
    for (const auto& t : targets) outs.push_back({t.amount, t.to});
    if (in_sum > total) outs.push_back({in_sum - total, w.keys().pk});  // change to self

    auto offsets = build_ring_offsets(ledger, spends, std::max(ring_size, spends.size()));
    auto ring = ledger.resolve_ring(offsets);

    std::vector<SpendInput> inputs;
    for (const auto& s : spends) {
        uint32_t pos = 0;
        for (uint32_t i = 0; i < offsets.size(); i++)
            if (offsets[i] == s.global_index) pos = i;
        auto sk = one_time_sk_gen(s.pk, s.aux, w.keys().sk);
        if (!sk) throw Error(Errc::bad_spend_key, "cannot re-derive one-time key");
        inputs.push_back({pos, *sk, s.amount, s.coin_key});
    }

    DRingCTx tx = create_dringctx(pp, ring, offsets, inputs, outs, to_bytes(message));
    uint64_t h = ledger.append(tx);
    ledger.persist(ledger_path);
    std::printf("sent %llu in %zu output(s), ring %zu, height %llu\n", (unsigned long long)total,
                outs.size(), tx.ring.size(), (unsigned long long)h);
    return kExitOk;
}

int cmd_delegate(const PublicParams& pp, const std::string& wallet_path, const std::string& pass,
                 const std::string& ledger_path, const std::string& rep_addr,
                 std::vector<uint32_t> indices, const std::string& message)
{
    Wallet w = Wallet::load(wallet_path, pass);
    Ledger ledger = load_or_new(ledger_path, pp, false);
    w.scan(pp, ledger);
    auto rep = Wallet::decode_address(rep_addr);
    if (!rep) throw Error(Errc::parse_error, "bad representative address");

    std::vector<const OwnedAccount*> chosen;
    for (const auto& a : w.accounts()) {
        if (a.spent) continue;
        if (!indices.empty()) {
            bool match = false;
            for (uint32_t i : indices) match |= (i == a.global_index);
            if (!match) continue;
        }
        if (a.enc_key == rep->X1) continue;  // already delegated there
        chosen.push_back(&a);
    }
    if (chosen.empty()) throw Error(Errc::invalid_tx, "nothing to delegate");

    for (const auto* a : chosen) {
        const AccountRecord& rec = ledger.account(a->global_index);
        auto sk = one_time_sk_gen(a->pk, a->aux, w.keys().sk);
        if (!sk) throw Error(Errc::bad_spend_key, "cannot re-derive one-time key");
        CRx crx = create_crx(pp, rec.account, a->global_index, rec.enc_key, *sk, a->amount,
                             a->coin_key, *rep, to_bytes(message));
        ledger.append(crx);
    }
    ledger.persist(ledger_path);
    std::printf("delegated %zu account(s), height %llu\n", chosen.size(),
                (unsigned long long)ledger.height());
    return kExitOk;
}

int cmd_tally(const PublicParams& pp, const std::string& wallet_path, const std::string& pass,
              const std::string& ledger_path, const std::string& out_csv)
{
    Wallet w = Wallet::load(wallet_path, pass);
    Ledger ledger = load_or_new(ledger_path, pp, false);
    StakeView view = ledger.stake_aggregate(w.keys().pk.X1);
    auto total = tally(pp, w.keys().sk.x1, view);
    if (!total) throw Error(Errc::dlog_not_found, "stake exceeds the tally bound");
    std::printf("%llu\n", (unsigned long long)*total);
    if (!out_csv.empty()) {
        std::ofstream out(out_csv, std::ios::trunc);
        if (!out) throw Error(Errc::parse_error, "cannot open " + out_csv);
        out << "rep_key,total\n";
        std::string hexkey;
        for (unsigned char c : view.rep_key.bytes) {
            static const char* d = "0123456789abcdef";
            hexkey.push_back(d[c >> 4]);
            hexkey.push_back(d[c & 0xf]);
        }
        out << hexkey << "," << *total << "\n";
    }
    return kExitOk;
}

int cmd_verify(const PublicParams& pp, const std::string& ledger_path)
{
    Ledger ledger = Ledger::load(ledger_path, pp);  // load re-verifies every record
    std::printf("ok height=%llu accounts=%zu key_images=%zu\n",
                (unsigned long long)ledger.height(), ledger.account_count(),
                ledger.key_images().size());
    return kExitOk;
}

struct BenchEnv {
    std::vector<Account> ring;
    std::vector<uint32_t> offsets;
    std::vector<SpendInput> spends;
    std::vector<OutputRequest> outs;
};

BenchEnv make_bench_env(const PublicParams& pp, const LongTermKeyPair& keys, size_t n, size_t m,
                        size_t t)
{
    BenchEnv env;
    std::vector<Scalar> sks, coin_keys;
    for (size_t i = 0; i < n; i++) {
        CreatedAccount ca = create_account(pp, 10, keys.pk);
        env.ring.push_back(ca.account);
        env.offsets.push_back(static_cast<uint32_t>(i));
        sks.push_back(*one_time_sk_gen(ca.account.pk, ca.aux, keys.sk));
        coin_keys.push_back(ca.coin_key);
    }
    for (size_t i = 0; i < m; i++)
        env.spends.push_back({static_cast<uint32_t>(i), sks[i], 10, coin_keys[i]});
    uint64_t total = 10 * m;
    for (size_t i = 0; i < t; i++)
        env.outs.push_back({i + 1 == t ? total - (t - 1) : 1, keys.pk});
    return env;
}

template <class F>
double mean_us(size_t iters, F&& f)
{
    f();  // warm-up round
    auto t0 = std::chrono::steady_clock::now();
    for (size_t i = 0; i < iters; i++) f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::micro>(t1 - t0).count() / double(iters);
}

int cmd_bench(const PublicParams& pp, const std::string& out_csv, size_t iters,
              const std::vector<size_t>& ring_sizes)
{
    auto keys = LongTermKeyPair::generate();
    std::ofstream out(out_csv, std::ios::trunc);
    if (!out) throw Error(Errc::parse_error, "cannot open " + out_csv);
    out << "op,N,M,T,mean_us,bytes\n";

    const size_t m = 2, t = 2;
    for (size_t n : ring_sizes) {
        BenchEnv env = make_bench_env(pp, keys, n, m, t);
        DRingCTx tx = create_dringctx(pp, env.ring, env.offsets, env.spends, env.outs);
        size_t bytes = serialize(tx).size();
        KeyImageSet fresh;
        double create_us = mean_us(iters, [&] {
            tx = create_dringctx(pp, env.ring, env.offsets, env.spends, env.outs);
        });
        double verify_us =
            mean_us(iters, [&] { (void)verify_dringctx(pp, tx, env.ring, fresh); });
        out << "CreateDRingCTx," << n << "," << m << "," << t << "," << create_us << "," << bytes
            << "\n";
        out << "VerifyDRingCTx," << n << "," << m << "," << t << "," << verify_us << "," << bytes
            << "\n";
        std::printf("N=%zu create %.0fus verify %.0fus size %zu\n", n, create_us, verify_us,
                    bytes);
    }

    // CRx rows (ring size not applicable; recorded as 0)
    CreatedAccount ca = create_account(pp, 10, keys.pk);
    auto sk = *one_time_sk_gen(ca.account.pk, ca.aux, keys.sk);
    auto rep = LongTermKeyPair::generate();
    CRx crx = create_crx(pp, ca.account, 0, ca.account.pk, sk, 10, ca.coin_key, rep.pk);
    size_t crx_bytes = serialize(crx).size();
    double crx_create = mean_us(iters, [&] {
        crx = create_crx(pp, ca.account, 0, ca.account.pk, sk, 10, ca.coin_key, rep.pk);
    });
    double crx_verify =
        mean_us(iters, [&] { (void)verify_crx(pp, crx, ca.account, ca.account.pk); });
    out << "CreateCRx,0,0,0," << crx_create << "," << crx_bytes << "\n";
    out << "VerifyCRx,0,0,0," << crx_verify << "," << crx_bytes << "\n";
    std::printf("CRx create %.0fus verify %.0fus size %zu\n", crx_create, crx_verify, crx_bytes);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"delegated ring confidential transactions"};
    app.require_subcommand(1);

    std::string wallet_path = "wallet.json";
    std::string ledger_path = "ledger.bin";
    std::string passphrase;
    app.add_option("--wallet", wallet_path, "wallet file");
    app.add_option("--ledger", ledger_path, "ledger file");
    app.add_option("--passphrase", passphrase, "wallet passphrase");

    auto* keygen = app.add_subcommand("keygen", "create a wallet and print its address");
    bool force = false;
    keygen->add_flag("--force", force, "overwrite an existing wallet file");

    auto* address = app.add_subcommand("address", "print the wallet address");

    auto* mint = app.add_subcommand("mint", "issue new accounts to this wallet");
    std::vector<uint64_t> mint_amounts;
    std::string message;
    mint->add_option("--amount", mint_amounts, "amount (repeatable)")->required();
    mint->add_option("--message", message, "optional payload");

    auto* balance = app.add_subcommand("balance", "scan the ledger and list owned accounts");

    auto* send = app.add_subcommand("send", "spend unspent accounts to destination addresses");
    std::vector<std::string> send_to;
    std::vector<uint64_t> send_amounts;
    std::vector<uint32_t> send_indices;
    size_t ring_size = 16;
    send->add_option("--to", send_to, "destination address (repeatable)")->required();
    send->add_option("--amount", send_amounts, "amount per destination (repeatable)")->required();
    send->add_option("--ring-size", ring_size, "ring size before padding");
    send->add_option("--index", send_indices,
                     "spend exactly these account offsets, even if marked spent");
    send->add_option("--message", message, "optional payload");

    auto* delegate = app.add_subcommand("delegate", "change representative of owned accounts");
    std::string rep_addr;
    std::vector<uint32_t> indices;
    delegate->add_option("--rep", rep_addr, "representative ltpk (128 hex chars)")->required();
    delegate->add_option("--index", indices, "account offset to delegate (repeatable; default all)");
    delegate->add_option("--message", message, "optional payload");

    auto* tally_cmd = app.add_subcommand("tally", "print total stake delegated to this wallet");
    std::string out_csv;
    tally_cmd->add_option("--out", out_csv, "also write a CSV row");

    auto* verify = app.add_subcommand("verify", "re-verify every ledger transaction");

    auto* bench = app.add_subcommand("bench", "benchmark transaction create/verify/size");
    std::string bench_csv = "bench.csv";
    size_t iters = 100;
    std::vector<size_t> ring_sizes = {16, 32, 64, 128, 256};
    bench->add_option("--out", bench_csv, "output CSV path");
    bench->add_option("--iters", iters, "iterations per measurement")->check(CLI::PositiveNumber);
    bench->add_option("--ring-sizes", ring_sizes, "ring sizes to measure");

    CLI11_PARSE(app, argc, argv);

    try {
        PublicParams pp = setup();
        if (*keygen) return cmd_keygen(wallet_path, passphrase, force);
        if (*address) return cmd_address(wallet_path, passphrase);
        if (*mint) return cmd_mint(pp, wallet_path, passphrase, ledger_path, mint_amounts, message);
        if (*balance) return cmd_balance(pp, wallet_path, passphrase, ledger_path);
        if (*send)
            return cmd_send(pp, wallet_path, passphrase, ledger_path, send_to, send_amounts,
                            ring_size, send_indices, message);
        if (*delegate)
            return cmd_delegate(pp, wallet_path, passphrase, ledger_path, rep_addr, indices,
                                message);
        if (*tally_cmd) return cmd_tally(pp, wallet_path, passphrase, ledger_path, out_csv);
        if (*verify) return cmd_verify(pp, ledger_path);
        if (*bench) return cmd_bench(pp, bench_csv, iters, ring_sizes);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return map_error(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    return kExitOk;
}
