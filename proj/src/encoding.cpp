#include "maut/encoding.hpp"

namespace maut {

void put_u16_be(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<Byte>(v >> 8));
    out.push_back(static_cast<Byte>(v));
}

void put_u32_be(Bytes& out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8)
        out.push_back(static_cast<Byte>(v >> shift));
}

void put_u64_be(Bytes& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<Byte>(v >> shift));
}

std::uint16_t read_u16_be(BytesView b, std::size_t pos) {
    if (pos + 2 > b.size()) throw DecodeError("u16 past end of buffer");
    return static_cast<std::uint16_t>((b[pos] << 8) | b[pos + 1]);
}

std::uint32_t read_u32_be(BytesView b, std::size_t pos) {
    if (pos + 4 > b.size()) throw DecodeError("u32 past end of buffer");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | b[pos + i];
    return v;
}

std::uint64_t read_u64_be(BytesView b, std::size_t pos) {
    if (pos + 8 > b.size()) throw DecodeError("u64 past end of buffer");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | b[pos + i];
    return v;
}

Encoder& Encoder::field(BytesView bytes) {
    put_u32_be(out_, static_cast<std::uint32_t>(bytes.size()));
    out_.insert(out_.end(), bytes.begin(), bytes.end());
    return *this;
}

Encoder& Encoder::field(std::string_view s) {
    return field(BytesView(reinterpret_cast<const Byte*>(s.data()), s.size()));
}

Encoder& Encoder::field_u64(std::uint64_t v) {
    Bytes b;
    put_u64_be(b, v);
    return field(b);
}

Encoder& Encoder::field_list(const std::vector<Bytes>& elems) {
    Bytes blob;
    put_u32_be(blob, static_cast<std::uint32_t>(elems.size()));
    for (const Bytes& e : elems) {
        put_u32_be(blob, static_cast<std::uint32_t>(e.size()));
        blob.insert(blob.end(), e.begin(), e.end());
    }
    return field(blob);
}

Bytes Decoder::take(std::size_t n) {
    if (pos_ + n > data_.size()) throw DecodeError("field past end of record");
    Bytes out(data_.begin() + pos_, data_.begin() + pos_ + n);
    pos_ += n;
    return out;
}

RecordTag Decoder::tag() {
    if (pos_ != 0) throw DecodeError("tag must be read first");
    if (data_.empty()) throw DecodeError("empty record");
    pos_ = 1;
    return static_cast<RecordTag>(data_[0]);
}

Bytes Decoder::field() {
    std::uint32_t len = read_u32_be(data_, pos_);
    pos_ += 4;
    return take(len);
}

std::string Decoder::field_string() {
    Bytes b = field();
    return std::string(b.begin(), b.end());
}

Digest Decoder::field_digest() {
    Bytes b = field();
    if (b.size() != 32) throw DecodeError("digest field is not 32 bytes");
    Digest d;
    std::copy(b.begin(), b.end(), d.bytes.begin());
    return d;
}

std::uint64_t Decoder::field_u64() {
    Bytes b = field();
    if (b.size() != 8) throw DecodeError("u64 field is not 8 bytes");
    return read_u64_be(b, 0);
}

std::vector<Bytes> Decoder::field_list() {
    Bytes blob = field();
    std::uint32_t count = read_u32_be(blob, 0);
    std::vector<Bytes> out;
    out.reserve(count);
    std::size_t pos = 4;
    for (std::uint32_t i = 0; i < count; ++i) {
        std::uint32_t len = read_u32_be(blob, pos);
        pos += 4;
        if (pos + len > blob.size()) throw DecodeError("list element past end");
        out.emplace_back(blob.begin() + pos, blob.begin() + pos + len);
        pos += len;
    }
    if (pos != blob.size()) throw DecodeError("trailing bytes in list field");
    return out;
}

} // namespace maut
