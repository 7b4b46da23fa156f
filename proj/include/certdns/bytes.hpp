#ifndef CERTDNS_BYTES_HPP
#define CERTDNS_BYTES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "certdns/errors.hpp"

namespace certdns {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Bounds-checked cursor over wire data. All reads throw
// WireError{Truncated} instead of running past the buffer.
class WireReader {
public:
    explicit WireReader(ByteView data) : data_(data) {}

    std::size_t pos() const noexcept { return pos_; }
    std::size_t size() const noexcept { return data_.size(); }
    std::size_t remaining() const noexcept { return data_.size() - pos_; }
    bool at_end() const noexcept { return pos_ == data_.size(); }
    ByteView whole() const noexcept { return data_; }

    std::uint8_t u8() {
        need(1);
        return data_[pos_++];
    }

    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] << 8 | data_[pos_ + 1]);
        pos_ += 2;
        return v;
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = static_cast<std::uint32_t>(data_[pos_]) << 24 |
                          static_cast<std::uint32_t>(data_[pos_ + 1]) << 16 |
                          static_cast<std::uint32_t>(data_[pos_ + 2]) << 8 |
                          static_cast<std::uint32_t>(data_[pos_ + 3]);
        pos_ += 4;
        return v;
    }

    ByteView take(std::size_t n) {
        need(n);
        ByteView v = data_.subspan(pos_, n);
        pos_ += n;
        return v;
    }

    // Jump to an absolute offset (compression pointer target).
    void seek(std::size_t p) {
        if (p > data_.size())
            throw WireError(WireError::Kind::BadPointer, "seek past end of message");
        pos_ = p;
    }

private:
    void need(std::size_t n) const {
        if (remaining() < n)
            throw WireError(WireError::Kind::Truncated,
                            "message truncated at offset " + std::to_string(pos_));
    }

    ByteView data_;
    std::size_t pos_ = 0;
};

// Growable big-endian output buffer.
class WireWriter {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }

    void u16(std::uint16_t v) {
        out_.push_back(static_cast<std::uint8_t>(v >> 8));
        out_.push_back(static_cast<std::uint8_t>(v & 0xFF));
    }

    void u32(std::uint32_t v) {
        out_.push_back(static_cast<std::uint8_t>(v >> 24));
        out_.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
        out_.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
        out_.push_back(static_cast<std::uint8_t>(v & 0xFF));
    }

    void raw(ByteView data) { out_.insert(out_.end(), data.begin(), data.end()); }

    // Back-patch a 16-bit field written earlier (e.g. RDLENGTH).
    void patch_u16(std::size_t off, std::uint16_t v) {
        out_[off] = static_cast<std::uint8_t>(v >> 8);
        out_[off + 1] = static_cast<std::uint8_t>(v & 0xFF);
    }

    std::size_t size() const noexcept { return out_.size(); }
    const Bytes& bytes() const noexcept { return out_; }
    Bytes take() { return std::move(out_); }

private:
    Bytes out_;
};

std::string to_hex(ByteView data);

} // namespace certdns

#endif // CERTDNS_BYTES_HPP
