/****************************************************************************
this hpp implements baby-step/giant-step recovery of small discrete logs,
used to reveal amounts after twisted ElGamal decryption
****************************************************************************/
#pragma once

#include "dringct/group.hpp"

#include <cstring>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

namespace dringct {

namespace detail {

struct BabyTable {
    size_t size = 0;
    GroupElement base;
    std::vector<std::array<unsigned char, 32>> entries;       // i -> encoding of i*base
    std::unordered_multimap<uint64_t, uint32_t> index;        // 8-byte prefix -> i
    GroupElement giant;                                       // size * base

    BabyTable(const GroupElement& b, size_t n) : size(n), base(b)
    {
        entries.resize(n);
        index.reserve(n);
        GroupElement cur = GroupElement::identity();
        for (size_t i = 0; i < n; i++) {
            entries[i] = cur.bytes;
            uint64_t key;
            std::memcpy(&key, cur.bytes.data(), sizeof key);
            index.emplace(key, static_cast<uint32_t>(i));
            cur = cur + b;
        }
        giant = cur;  // n * base
    }

    std::optional<uint64_t> lookup(const GroupElement& p) const
    {
        uint64_t key;
        std::memcpy(&key, p.bytes.data(), sizeof key);
        auto range = index.equal_range(key);
        for (auto it = range.first; it != range.second; ++it)
            if (entries[it->second] == p.bytes) return it->second;
        return std::nullopt;
    }
};

// immutable snapshots; a larger bound swaps in a bigger table, readers keep
// scanning their own snapshot
inline std::shared_ptr<const BabyTable> baby_table_for(const GroupElement& base, uint64_t bound)
{
    static std::mutex mu;
    static std::shared_ptr<const BabyTable> current;

    size_t want = 1u << 10;
    if (bound > (1ull << 20)) want = 1u << 16;
    if (bound > (1ull << 32)) want = 1u << 18;

    std::lock_guard lock(mu);
    if (!current || current->base != base || current->size < want)
        current = std::make_shared<const BabyTable>(base, want);
    return current;
}

} // namespace detail

/* solve target = a * base for a in [0, bound); 2^16 babies cover the 32-bit
   coin range, 2^18 the widened tally range */
inline std::optional<uint64_t> solve_small_dlog(const GroupElement& target,
                                                const GroupElement& base, uint64_t bound)
{
    if (bound == 0) return std::nullopt;
    if (target.is_identity()) return 0;

    auto t = detail::baby_table_for(base, bound);

    uint64_t giants = (bound + t->size - 1) / t->size;
    GroupElement cur = target;
    for (uint64_t j = 0; j < giants; j++) {
        if (auto i = t->lookup(cur)) {
            uint64_t a = j * t->size + *i;
            if (a < bound) return a;
        }
        cur = cur - t->giant;
    }
    return std::nullopt;
}

} // namespace dringct
