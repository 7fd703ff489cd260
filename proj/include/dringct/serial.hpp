/****************************************************************************
this hpp implements the canonical byte encoding helpers; every on-wire
structure is built from 32-byte scalar/point atoms plus little-endian
integers
****************************************************************************/
#pragma once

#include "dringct/errors.hpp"
#include "dringct/group.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dringct::serial {

class Writer {
public:
    void u8(uint8_t v) { out_.push_back(v); }

    void u16(uint16_t v)
    {
        for (int i = 0; i < 2; i++) out_.push_back(static_cast<unsigned char>(v >> (8 * i)));
    }

    void u24(uint32_t v)
    {
        if (v >= (1u << 24)) throw Error(Errc::parse_error, "offset exceeds 3-byte range");
        for (int i = 0; i < 3; i++) out_.push_back(static_cast<unsigned char>(v >> (8 * i)));
    }

    void u32(uint32_t v)
    {
        for (int i = 0; i < 4; i++) out_.push_back(static_cast<unsigned char>(v >> (8 * i)));
    }

    void u64(uint64_t v)
    {
        for (int i = 0; i < 8; i++) out_.push_back(static_cast<unsigned char>(v >> (8 * i)));
    }

    void bytes(std::span<const unsigned char> b) { out_.insert(out_.end(), b.begin(), b.end()); }

    void scalar(const Scalar& s) { bytes(std::span<const unsigned char>(s.bytes.data(), 32)); }

    void point(const GroupElement& p) { bytes(std::span<const unsigned char>(p.bytes.data(), 32)); }

    const std::vector<unsigned char>& data() const { return out_; }
    std::vector<unsigned char> take() { return std::move(out_); }
    size_t size() const { return out_.size(); }

private:
    std::vector<unsigned char> out_;
};

class Reader {
public:
    explicit Reader(std::span<const unsigned char> in) : in_(in) {}

    uint8_t u8() { return take(1)[0]; }

    uint16_t u16()
    {
        auto b = take(2);
        return static_cast<uint16_t>(b[0] | (b[1] << 8));
    }

    uint32_t u24()
    {
        auto b = take(3);
        return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
               (static_cast<uint32_t>(b[2]) << 16);
    }

    uint32_t u32()
    {
        auto b = take(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; i++) v |= static_cast<uint32_t>(b[i]) << (8 * i);
        return v;
    }

    uint64_t u64()
    {
        auto b = take(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; i++) v |= static_cast<uint64_t>(b[i]) << (8 * i);
        return v;
    }

    std::vector<unsigned char> bytes(size_t n)
    {
        auto b = take(n);
        return std::vector<unsigned char>(b.begin(), b.end());
    }

    Scalar scalar()
    {
        size_t at = pos_;
        auto s = Scalar::from_bytes(take(32));
        if (!s) throw Error(Errc::parse_error, "non-canonical scalar at offset " + std::to_string(at));
        return *s;
    }

    GroupElement point()
    {
        size_t at = pos_;
        auto p = GroupElement::from_bytes(take(32));
        if (!p) throw Error(Errc::parse_error, "invalid point encoding at offset " + std::to_string(at));
        return *p;
    }

    bool done() const { return pos_ == in_.size(); }
    size_t pos() const { return pos_; }

    void expect_done() const
    {
        if (!done())
            throw Error(Errc::parse_error, "trailing bytes at offset " + std::to_string(pos_));
    }

private:
    std::span<const unsigned char> take(size_t n)
    {
        if (in_.size() - pos_ < n)
            throw Error(Errc::parse_error, "truncated input at offset " + std::to_string(pos_));
        auto s = in_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    std::span<const unsigned char> in_;
    size_t pos_ = 0;
};

} // namespace dringct::serial
