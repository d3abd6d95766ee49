#pragma once

#include <cstdint>
#include <optional>

#include "maut/bytes.hpp"
#include "maut/encoding.hpp"
#include "maut/errors.hpp"

namespace maut::crypto {

/// SHA-256 of the input. Pure and deterministic.
Digest sha256(BytesView data);

inline Digest hash_record(const Encoder& enc) { return sha256(BytesView(enc.bytes())); }

Bytes hmac_sha256(BytesView key, BytesView data);

/// HKDF-SHA256 per RFC 5869: PRK = HMAC(salt, IKM), then counter-chained
/// HMAC expansion. Empty salt means 32 zero bytes. Throws LengthError when
/// out_len > 255 * 32.
Bytes hkdf_sha256(BytesView ikm, BytesView salt, BytesView info, std::size_t out_len);

/// Cryptographically secure randomness. Throws EnvironmentError on failure.
Bytes random_bytes(std::size_t n);

/// Compressed SEC1 encoding of a secp256k1 point.
struct PublicKey {
    std::array<Byte, 33> sec1{};

    auto operator<=>(const PublicKey&) const = default;
    BytesView view() const { return BytesView(sec1.data(), sec1.size()); }
    std::string hex() const { return hex_encode(view()); }

    /// Parses and validates: on-curve and not the identity.
    /// Throws PointValidationError otherwise.
    static PublicKey from_bytes(BytesView b);
};

/// secp256k1 keypair. The same key signs (Schnorr) and agrees (ECDH);
/// one curve for the whole system.
struct KeyPair {
    std::array<Byte, 32> secret{}; // big-endian scalar in [1, n-1]
    PublicKey public_point;

    static KeyPair generate();
    static KeyPair from_secret(BytesView sk32);
    /// Deterministic derivation from arbitrary seed bytes (fixtures, tests).
    static KeyPair from_seed(BytesView seed);
};

/// x-coordinate of the agreed point, 32 bytes big-endian.
struct SharedSecret {
    std::array<Byte, 32> x_bytes{};

    auto operator<=>(const SharedSecret&) const = default;
    BytesView view() const { return BytesView(x_bytes.data(), x_bytes.size()); }
};

/// sk * pk with full point validation on pk. Unclamped scalar multiplication,
/// so ecdh(1, pk) = x(pk) exactly.
SharedSecret ecdh(const KeyPair& self, const PublicKey& peer);
SharedSecret ecdh(BytesView secret_scalar, const PublicKey& peer);

struct SymmetricKey {
    std::array<Byte, 32> bytes{};

    auto operator<=>(const SymmetricKey&) const = default;
};

struct AeadEnvelope {
    std::array<Byte, 12> nonce{};
    Bytes ciphertext;
    std::array<Byte, 16> auth_tag{};

    bool operator==(const AeadEnvelope&) const = default;
};

/// AES-256-GCM. The nonce is the 12-byte big-endian counter value; callers
/// must never reuse a counter under the same key (see AeadCipher).
AeadEnvelope aead_encrypt(const SymmetricKey& key, std::uint64_t nonce_counter,
                          BytesView plaintext, BytesView aad);

/// Returns the plaintext, or nullopt on authentication failure (tampered
/// ciphertext/aad, wrong key, or wrong level).
std::optional<Bytes> aead_decrypt(const SymmetricKey& key, const AeadEnvelope& env,
                                  BytesView aad);

/// Binds a per-key message counter to the key so nonce reuse is impossible
/// by construction. Requires exclusive access per key.
class AeadCipher {
public:
    explicit AeadCipher(SymmetricKey key) : key_(key) {}

    AeadEnvelope seal(BytesView plaintext, BytesView aad) {
        return aead_encrypt(key_, next_nonce_++, plaintext, aad);
    }
    std::optional<Bytes> open(const AeadEnvelope& env, BytesView aad) const {
        return aead_decrypt(key_, env, aad);
    }

private:
    SymmetricKey key_;
    std::uint64_t next_nonce_ = 0;
};

/// Schnorr signature over secp256k1: x-only R with even-y normalization,
/// challenge sha256(R.x || pk || digest), deterministic nonce. 64 bytes.
struct SignatureValue {
    std::array<Byte, 64> bytes{};
    PublicKey signer_public;

    bool operator==(const SignatureValue&) const = default;
    BytesView view() const { return BytesView(bytes.data(), bytes.size()); }
};

SignatureValue sign(const KeyPair& signer, const Digest& msg_digest);

/// True iff sig was produced over msg_digest by the key behind pk.
/// Malformed bytes (wrong length, out-of-range scalars) throw DecodeError,
/// which is distinct from a verification result of false.
bool verify(const PublicKey& pk, const Digest& msg_digest, BytesView sig64);

inline bool verify(const SignatureValue& sig, const Digest& msg_digest) {
    return verify(sig.signer_public, msg_digest, sig.view());
}

} // namespace maut::crypto
