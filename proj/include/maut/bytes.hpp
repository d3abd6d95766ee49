#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maut {

using Byte = std::uint8_t;
using Bytes = std::vector<Byte>;
using BytesView = std::span<const Byte>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline std::string to_string(BytesView b) {
    return std::string(b.begin(), b.end());
}

std::string hex_encode(BytesView data);
Bytes hex_decode(std::string_view hex);

/// 32-byte SHA-256 output. Equality is byte-wise; ordering enables use as map keys.
struct Digest {
    std::array<Byte, 32> bytes{};

    auto operator<=>(const Digest&) const = default;

    BytesView view() const { return BytesView(bytes.data(), bytes.size()); }
    std::string hex() const { return hex_encode(view()); }
    static Digest from_hex(std::string_view h);
    bool is_zero() const {
        for (Byte b : bytes)
            if (b != 0) return false;
        return true;
    }
};

} // namespace maut
