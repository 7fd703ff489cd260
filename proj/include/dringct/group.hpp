/****************************************************************************
this hpp implements the prime-order group layer: scalars and group elements
over ristretto255, SHA-3 based hashing to scalars/points, deterministic
generator derivation and the Fiat-Shamir transcript
****************************************************************************/
#pragma once

#include <sodium.h>
#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace dringct {

inline void ensure_init()
{
    static const int rc = sodium_init();
    if (rc < 0) throw std::runtime_error("sodium_init failed");
}

/* field element of Z_l, l = group order; canonical 32-byte little-endian */
struct Scalar {
    std::array<unsigned char, 32> bytes{};

    static Scalar zero() { return Scalar{}; }

    static Scalar one()
    {
        Scalar s;
        s.bytes[0] = 1;
        return s;
    }

    static Scalar from_u64(uint64_t v)
    {
        Scalar s;
        for (int i = 0; i < 8; i++) s.bytes[i] = static_cast<unsigned char>(v >> (8 * i));
        return s;
    }

    static Scalar random()
    {
        ensure_init();
        Scalar s;
        crypto_core_ristretto255_scalar_random(s.bytes.data());
        return s;
    }

    // uniform sampling avoiding zero, for use as encryption/signing randomness
    static Scalar random_nonzero()
    {
        Scalar s = random();
        while (s.is_zero()) s = random();
        return s;
    }

    static Scalar reduce_wide(std::span<const unsigned char, 64> wide)
    {
        ensure_init();
        Scalar s;
        crypto_core_ristretto255_scalar_reduce(s.bytes.data(), wide.data());
        return s;
    }

    // rejects non-canonical encodings (values >= l)
    static std::optional<Scalar> from_bytes(std::span<const unsigned char> in)
    {
        if (in.size() != 32) return std::nullopt;
        std::array<unsigned char, 64> wide{};
        std::memcpy(wide.data(), in.data(), 32);
        Scalar reduced = reduce_wide(wide);
        if (std::memcmp(reduced.bytes.data(), in.data(), 32) != 0) return std::nullopt;
        return reduced;
    }

    bool is_zero() const
    {
        unsigned char acc = 0;
        for (unsigned char b : bytes) acc |= b;
        return acc == 0;
    }

    Scalar operator+(const Scalar& o) const
    {
        Scalar r;
        crypto_core_ristretto255_scalar_add(r.bytes.data(), bytes.data(), o.bytes.data());
        return r;
    }

    Scalar operator-(const Scalar& o) const
    {
        Scalar r;
        crypto_core_ristretto255_scalar_sub(r.bytes.data(), bytes.data(), o.bytes.data());
        return r;
    }

    Scalar operator*(const Scalar& o) const
    {
        Scalar r;
        crypto_core_ristretto255_scalar_mul(r.bytes.data(), bytes.data(), o.bytes.data());
        return r;
    }

    Scalar negated() const
    {
        Scalar r;
        crypto_core_ristretto255_scalar_negate(r.bytes.data(), bytes.data());
        return r;
    }

    Scalar inverted() const
    {
        Scalar r;
        if (crypto_core_ristretto255_scalar_invert(r.bytes.data(), bytes.data()) != 0)
            throw std::invalid_argument("scalar inversion of zero");
        return r;
    }

    bool operator==(const Scalar& o) const { return bytes == o.bytes; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
};

/* element of the prime-order group; 32-byte ristretto encoding, all-zero = identity */
struct GroupElement {
    std::array<unsigned char, 32> bytes{};

    static GroupElement identity() { return GroupElement{}; }

    static GroupElement base();  // G, defined after operator*

    // rejects encodings that are not valid canonical ristretto points; the
    // explicit top-bit check closes an encoding malleability in libsodium
    // 1.0.18, whose canonicity test ignores bit 255
    static std::optional<GroupElement> from_bytes(std::span<const unsigned char> in)
    {
        if (in.size() != 32) return std::nullopt;
        if (in[31] & 0x80) return std::nullopt;
        GroupElement p;
        std::memcpy(p.bytes.data(), in.data(), 32);
        if (p.is_identity()) return p;
        ensure_init();
        if (crypto_core_ristretto255_is_valid_point(p.bytes.data()) != 1) return std::nullopt;
        return p;
    }

    static GroupElement from_uniform(std::span<const unsigned char, 64> h)
    {
        ensure_init();
        GroupElement p;
        crypto_core_ristretto255_from_hash(p.bytes.data(), h.data());
        return p;
    }

    bool is_identity() const
    {
        unsigned char acc = 0;
        for (unsigned char b : bytes) acc |= b;
        return acc == 0;
    }

    GroupElement operator+(const GroupElement& o) const
    {
        if (is_identity()) return o;
        if (o.is_identity()) return *this;
        GroupElement r;
        if (crypto_core_ristretto255_add(r.bytes.data(), bytes.data(), o.bytes.data()) != 0)
            throw std::invalid_argument("point addition on invalid encoding");
        return r;
    }

    GroupElement operator-(const GroupElement& o) const
    {
        if (o.is_identity()) return *this;
        GroupElement r;
        if (is_identity()) {
            // 0 - Q: negate via subtraction from the canonical identity encoding
            GroupElement id = identity();
            if (crypto_core_ristretto255_sub(r.bytes.data(), id.bytes.data(), o.bytes.data()) != 0)
                throw std::invalid_argument("point negation on invalid encoding");
            return r;
        }
        if (crypto_core_ristretto255_sub(r.bytes.data(), bytes.data(), o.bytes.data()) != 0)
            throw std::invalid_argument("point subtraction on invalid encoding");
        return r;
    }

    bool operator==(const GroupElement& o) const { return bytes == o.bytes; }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
};

inline GroupElement operator*(const Scalar& s, const GroupElement& p)
{
    if (s.is_zero() || p.is_identity()) return GroupElement::identity();
    GroupElement r;
    if (crypto_scalarmult_ristretto255(r.bytes.data(), s.bytes.data(), p.bytes.data()) != 0)
        return GroupElement::identity();
    return r;
}

inline GroupElement mul_base(const Scalar& s)
{
    if (s.is_zero()) return GroupElement::identity();
    ensure_init();
    GroupElement r;
    if (crypto_scalarmult_ristretto255_base(r.bytes.data(), s.bytes.data()) != 0)
        return GroupElement::identity();
    return r;
}

inline GroupElement GroupElement::base() { return mul_base(Scalar::one()); }

inline GroupElement multiscalar_mul(std::span<const Scalar> scalars,
                                    std::span<const GroupElement> points)
{
    if (scalars.size() != points.size())
        throw std::invalid_argument("multiscalar_mul size mismatch");
    GroupElement acc = GroupElement::identity();
    for (size_t i = 0; i < scalars.size(); i++) acc = acc + scalars[i] * points[i];
    return acc;
}

struct PointHash {
    size_t operator()(const GroupElement& p) const
    {
        uint64_t v;
        std::memcpy(&v, p.bytes.data(), sizeof v);
        return static_cast<size_t>(v);
    }
};

namespace hash {

/* SHAKE256 XOF with length-framed domain separation */
class Shake {
public:
    Shake()
    {
        ctx_ = EVP_MD_CTX_new();
        if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_shake256(), nullptr) != 1)
            throw std::runtime_error("shake256 init failed");
    }
    ~Shake() { EVP_MD_CTX_free(ctx_); }
    Shake(const Shake&) = delete;
    Shake& operator=(const Shake&) = delete;

    void absorb(std::span<const unsigned char> data)
    {
        if (EVP_DigestUpdate(ctx_, data.data(), data.size()) != 1)
            throw std::runtime_error("shake256 update failed");
    }

    void absorb_u64(uint64_t v)
    {
        unsigned char b[8];
        for (int i = 0; i < 8; i++) b[i] = static_cast<unsigned char>(v >> (8 * i));
        absorb(std::span<const unsigned char>(b, 8));
    }

    void absorb_label(std::string_view label)
    {
        absorb_u64(label.size());
        absorb(std::span<const unsigned char>(
            reinterpret_cast<const unsigned char*>(label.data()), label.size()));
    }

    void squeeze(std::span<unsigned char> out)
    {
        if (EVP_DigestFinalXOF(ctx_, out.data(), out.size()) != 1)
            throw std::runtime_error("shake256 squeeze failed");
    }

private:
    EVP_MD_CTX* ctx_;
};

inline std::array<unsigned char, 64> xof64(std::string_view domain,
                                           std::span<const unsigned char> data)
{
    Shake h;
    h.absorb_label(domain);
    h.absorb(data);
    std::array<unsigned char, 64> out{};
    h.squeeze(out);
    return out;
}

// output reduced mod l from 64 squeezed bytes, so no modulo bias
inline Scalar to_scalar(std::string_view domain, std::span<const unsigned char> data)
{
    auto wide = xof64(domain, data);
    return Scalar::reduce_wide(wide);
}

inline GroupElement to_group(std::string_view domain, std::span<const unsigned char> data)
{
    auto wide = xof64(domain, data);
    return GroupElement::from_uniform(wide);
}

} // namespace hash

/* generators with no known discrete-log relation, all derived by hash-to-group
   from fixed domain labels (documented in the wire reference) */
struct GeneratorSet {
    GroupElement G;  // base generator
    GroupElement H;  // value generator
    GroupElement U;  // key image base
    GroupElement F;  // inner-product folding base
    std::vector<std::pair<GroupElement, GroupElement>> range_gens;
    std::vector<GroupElement> triptych_gens;
};

namespace detail {

inline GroupElement indexed_gen(std::string_view tag, uint64_t index)
{
    hash::Shake h;
    h.absorb_label("dringct/gens");
    h.absorb_label(tag);
    h.absorb_u64(index);
    std::array<unsigned char, 64> wide{};
    h.squeeze(wide);
    return GroupElement::from_uniform(wide);
}

} // namespace detail

inline GeneratorSet derive_generators(size_t count_range, size_t count_triptych)
{
    if (count_range == 0 || count_triptych == 0)
        throw std::invalid_argument("generator counts must be positive");
    GeneratorSet gens;
    gens.G = GroupElement::base();
    gens.H = hash::to_group("dringct/H", {});
    gens.U = hash::to_group("dringct/U", {});
    gens.F = hash::to_group("dringct/F", {});
    gens.range_gens.reserve(count_range);
    for (size_t i = 0; i < count_range; i++)
        gens.range_gens.emplace_back(detail::indexed_gen("range/g", i),
                                     detail::indexed_gen("range/h", i));
    gens.triptych_gens.reserve(count_triptych);
    for (size_t i = 0; i < count_triptych; i++)
        gens.triptych_gens.push_back(detail::indexed_gen("triptych", i));
    return gens;
}

/* Fiat-Shamir transcript: order-sensitive framed appends over a running
   buffer; challenges ratchet the state so later challenges depend on
   earlier ones */
class Transcript {
public:
    explicit Transcript(std::string_view protocol_label) { frame(protocol_label, {}); }

    void append(std::string_view label, std::span<const unsigned char> data)
    {
        frame(label, data);
    }

    void append_u64(std::string_view label, uint64_t v)
    {
        unsigned char b[8];
        for (int i = 0; i < 8; i++) b[i] = static_cast<unsigned char>(v >> (8 * i));
        frame(label, std::span<const unsigned char>(b, 8));
    }

    void append_scalar(std::string_view label, const Scalar& s)
    {
        frame(label, std::span<const unsigned char>(s.bytes.data(), 32));
    }

    void append_point(std::string_view label, const GroupElement& p)
    {
        frame(label, std::span<const unsigned char>(p.bytes.data(), 32));
    }

    Scalar challenge(std::string_view label)
    {
        hash::Shake h;
        h.absorb_label("dringct/challenge");
        h.absorb(buf_);
        h.absorb_label(label);
        std::array<unsigned char, 64> wide{};
        h.squeeze(wide);
        Scalar out = Scalar::reduce_wide(wide);
        append_scalar(label, out);
        return out;
    }

    Transcript fork(std::string_view label, uint64_t index) const
    {
        Transcript t = *this;
        t.append_u64(label, index);
        return t;
    }

private:
    void frame(std::string_view label, std::span<const unsigned char> data)
    {
        put_u64(label.size());
        buf_.insert(buf_.end(), label.begin(), label.end());
        put_u64(data.size());
        buf_.insert(buf_.end(), data.begin(), data.end());
    }

    void put_u64(uint64_t v)
    {
        for (int i = 0; i < 8; i++) buf_.push_back(static_cast<unsigned char>(v >> (8 * i)));
    }

    std::vector<unsigned char> buf_;
};

} // namespace dringct
