#define OPENSSL_SUPPRESS_DEPRECATED

#include "maut/crypto.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/obj_mac.h>
#include <openssl/rand.h>

#include <cstring>
#include <memory>
#include <mutex>

namespace maut {

std::string hex_encode(BytesView data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (Byte b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

Bytes hex_decode(std::string_view hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw DecodeError("invalid hex digit");
    };
    if (hex.size() % 2 != 0) throw DecodeError("odd-length hex string");
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2)
        out.push_back(static_cast<Byte>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
    return out;
}

Digest Digest::from_hex(std::string_view h) {
    Bytes b = hex_decode(h);
    if (b.size() != 32) throw DecodeError("digest hex is not 32 bytes");
    Digest d;
    std::copy(b.begin(), b.end(), d.bytes.begin());
    return d;
}

} // namespace maut

namespace maut::crypto {

namespace {

struct BnDeleter { void operator()(BIGNUM* p) const { BN_free(p); } };
struct PointDeleter { void operator()(EC_POINT* p) const { EC_POINT_free(p); } };
struct CtxDeleter { void operator()(BN_CTX* p) const { BN_CTX_free(p); } };
using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using PointPtr = std::unique_ptr<EC_POINT, PointDeleter>;
using BnCtxPtr = std::unique_ptr<BN_CTX, CtxDeleter>;

const EC_GROUP* group() {
    static EC_GROUP* g = [] {
        EC_GROUP* grp = EC_GROUP_new_by_curve_name(NID_secp256k1);
        if (!grp) throw CryptoError("secp256k1 group unavailable");
        return grp;
    }();
    return g;
}

const BIGNUM* group_order() {
    static BIGNUM* n = [] {
        BIGNUM* order = BN_new();
        BnCtxPtr ctx(BN_CTX_new());
        if (!EC_GROUP_get_order(group(), order, ctx.get()))
            throw CryptoError("cannot read group order");
        return order;
    }();
    return n;
}

BnPtr bn_from_be32(BytesView b) {
    BnPtr out(BN_bin2bn(b.data(), static_cast<int>(b.size()), nullptr));
    if (!out) throw CryptoError("BN_bin2bn failed");
    return out;
}

std::array<Byte, 32> bn_to_be32(const BIGNUM* v) {
    std::array<Byte, 32> out{};
    if (BN_bn2binpad(v, out.data(), 32) != 32) throw CryptoError("BN_bn2binpad failed");
    return out;
}

PublicKey encode_point(const EC_POINT* p) {
    PublicKey pk;
    BnCtxPtr ctx(BN_CTX_new());
    std::size_t len = EC_POINT_point2oct(group(), p, POINT_CONVERSION_COMPRESSED,
                                         pk.sec1.data(), pk.sec1.size(), ctx.get());
    if (len != 33) throw CryptoError("point encoding failed");
    return pk;
}

PointPtr decode_point(BytesView b) {
    if (b.size() != 33) throw PointValidationError("public key must be 33 bytes");
    BnCtxPtr ctx(BN_CTX_new());
    PointPtr p(EC_POINT_new(group()));
    if (!EC_POINT_oct2point(group(), p.get(), b.data(), b.size(), ctx.get()))
        throw PointValidationError("bytes do not encode a curve point");
    if (EC_POINT_is_at_infinity(group(), p.get()))
        throw PointValidationError("point at infinity");
    if (EC_POINT_is_on_curve(group(), p.get(), ctx.get()) != 1)
        throw PointValidationError("point not on curve");
    return p;
}

// k*G with R.y even; returns (possibly negated) k and sets rx.
BnPtr nonce_with_even_y(const BIGNUM* k_in, std::array<Byte, 32>& rx) {
    BnCtxPtr ctx(BN_CTX_new());
    PointPtr r(EC_POINT_new(group()));
    if (!EC_POINT_mul(group(), r.get(), k_in, nullptr, nullptr, ctx.get()))
        throw CryptoError("nonce point failed");
    BnPtr x(BN_new());
    BnPtr y(BN_new());
    if (!EC_POINT_get_affine_coordinates(group(), r.get(), x.get(), y.get(), ctx.get()))
        throw CryptoError("affine coordinates failed");
    rx = bn_to_be32(x.get());
    BnPtr k(BN_dup(k_in));
    if (BN_is_odd(y.get())) {
        if (!BN_sub(k.get(), group_order(), k_in)) throw CryptoError("BN_sub failed");
    }
    return k;
}

BnPtr challenge_scalar(const std::array<Byte, 32>& rx, const PublicKey& pk, const Digest& msg) {
    Bytes transcript;
    transcript.insert(transcript.end(), rx.begin(), rx.end());
    transcript.insert(transcript.end(), pk.sec1.begin(), pk.sec1.end());
    transcript.insert(transcript.end(), msg.bytes.begin(), msg.bytes.end());
    Digest e = sha256(transcript);
    BnPtr eb = bn_from_be32(e.view());
    BnCtxPtr ctx(BN_CTX_new());
    if (!BN_mod(eb.get(), eb.get(), group_order(), ctx.get())) throw CryptoError("BN_mod failed");
    return eb;
}

} // namespace

Digest sha256(BytesView data) {
    Digest d;
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), d.bytes.data(), &len, EVP_sha256(), nullptr) ||
        len != 32)
        throw CryptoError("sha256 failed");
    return d;
}

Bytes hmac_sha256(BytesView key, BytesView data) {
    Bytes out(32);
    unsigned int len = 0;
    if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(),
              out.data(), &len) ||
        len != 32)
        throw CryptoError("hmac failed");
    return out;
}

Bytes hkdf_sha256(BytesView ikm, BytesView salt, BytesView info, std::size_t out_len) {
    if (out_len > 255 * 32) throw LengthError("hkdf output longer than 255 blocks");
    Bytes zero_salt(32, 0);
    BytesView effective_salt = salt.empty() ? BytesView(zero_salt) : salt;
    Bytes prk = hmac_sha256(effective_salt, ikm);

    Bytes okm;
    Bytes t;
    Byte counter = 1;
    while (okm.size() < out_len) {
        Bytes block = t;
        block.insert(block.end(), info.begin(), info.end());
        block.push_back(counter++);
        t = hmac_sha256(prk, block);
        okm.insert(okm.end(), t.begin(), t.end());
    }
    okm.resize(out_len);
    return okm;
}

Bytes random_bytes(std::size_t n) {
    Bytes out(n);
    if (n > 0 && RAND_bytes(out.data(), static_cast<int>(n)) != 1)
        throw EnvironmentError("system randomness unavailable");
    return out;
}

PublicKey PublicKey::from_bytes(BytesView b) {
    PointPtr p = decode_point(b); // validates
    return encode_point(p.get());
}

KeyPair KeyPair::from_secret(BytesView sk32) {
    if (sk32.size() != 32) throw PointValidationError("secret scalar must be 32 bytes");
    BnPtr d = bn_from_be32(sk32);
    if (BN_is_zero(d.get()) || BN_cmp(d.get(), group_order()) >= 0)
        throw PointValidationError("secret scalar out of range");
    BnCtxPtr ctx(BN_CTX_new());
    PointPtr p(EC_POINT_new(group()));
    if (!EC_POINT_mul(group(), p.get(), d.get(), nullptr, nullptr, ctx.get()))
        throw CryptoError("public point derivation failed");
    KeyPair kp;
    std::copy(sk32.begin(), sk32.end(), kp.secret.begin());
    kp.public_point = encode_point(p.get());
    return kp;
}

KeyPair KeyPair::from_seed(BytesView seed) {
    Bytes material(seed.begin(), seed.end());
    for (Byte counter = 0;; ++counter) {
        Bytes attempt = material;
        attempt.push_back(counter);
        Digest h = sha256(attempt);
        BnPtr d = bn_from_be32(h.view());
        BnCtxPtr ctx(BN_CTX_new());
        if (!BN_mod(d.get(), d.get(), group_order(), ctx.get())) throw CryptoError("BN_mod failed");
        if (BN_is_zero(d.get())) continue;
        return from_secret(BytesView(bn_to_be32(d.get())));
    }
}

KeyPair KeyPair::generate() {
    for (;;) {
        Bytes sk = random_bytes(32);
        BnPtr d = bn_from_be32(sk);
        if (BN_is_zero(d.get()) || BN_cmp(d.get(), group_order()) >= 0) continue;
        return from_secret(sk);
    }
}

SharedSecret ecdh(BytesView secret_scalar, const PublicKey& peer) {
    if (secret_scalar.size() != 32) throw PointValidationError("secret scalar must be 32 bytes");
    BnPtr d = bn_from_be32(secret_scalar);
    if (BN_is_zero(d.get()) || BN_cmp(d.get(), group_order()) >= 0)
        throw PointValidationError("secret scalar out of range");
    PointPtr p = decode_point(peer.view());
    BnCtxPtr ctx(BN_CTX_new());
    PointPtr shared(EC_POINT_new(group()));
    if (!EC_POINT_mul(group(), shared.get(), nullptr, p.get(), d.get(), ctx.get()))
        throw CryptoError("scalar multiplication failed");
    if (EC_POINT_is_at_infinity(group(), shared.get()))
        throw PointValidationError("agreement produced the identity");
    BnPtr x(BN_new());
    if (!EC_POINT_get_affine_coordinates(group(), shared.get(), x.get(), nullptr, ctx.get()))
        throw CryptoError("affine x failed");
    SharedSecret out;
    out.x_bytes = bn_to_be32(x.get());
    return out;
}

SharedSecret ecdh(const KeyPair& self, const PublicKey& peer) {
    return ecdh(BytesView(self.secret.data(), self.secret.size()), peer);
}

AeadEnvelope aead_encrypt(const SymmetricKey& key, std::uint64_t nonce_counter,
                          BytesView plaintext, BytesView aad) {
    AeadEnvelope env;
    for (int i = 0; i < 8; ++i)
        env.nonce[11 - i] = static_cast<Byte>(nonce_counter >> (8 * i));

    std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(EVP_CIPHER_CTX_new(),
                                                                        EVP_CIPHER_CTX_free);
    if (!ctx) throw CryptoError("cipher ctx alloc failed");
    if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.bytes.data(),
                           env.nonce.data()) != 1)
        throw CryptoError("gcm init failed");
    int len = 0;
    if (!aad.empty() &&
        EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) != 1)
        throw CryptoError("gcm aad failed");
    env.ciphertext.resize(plaintext.size());
    if (!plaintext.empty() &&
        EVP_EncryptUpdate(ctx.get(), env.ciphertext.data(), &len, plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1)
        throw CryptoError("gcm encrypt failed");
    if (EVP_EncryptFinal_ex(ctx.get(), env.ciphertext.data() + env.ciphertext.size(), &len) != 1)
        throw CryptoError("gcm final failed");
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, 16, env.auth_tag.data()) != 1)
        throw CryptoError("gcm tag failed");
    return env;
}

std::optional<Bytes> aead_decrypt(const SymmetricKey& key, const AeadEnvelope& env,
                                  BytesView aad) {
    std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(EVP_CIPHER_CTX_new(),
                                                                        EVP_CIPHER_CTX_free);
    if (!ctx) throw CryptoError("cipher ctx alloc failed");
    if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.bytes.data(),
                           env.nonce.data()) != 1)
        throw CryptoError("gcm init failed");
    int len = 0;
    if (!aad.empty() &&
        EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) != 1)
        throw CryptoError("gcm aad failed");
    Bytes plain(env.ciphertext.size());
    if (!env.ciphertext.empty() &&
        EVP_DecryptUpdate(ctx.get(), plain.data(), &len, env.ciphertext.data(),
                          static_cast<int>(env.ciphertext.size())) != 1)
        return std::nullopt;
    std::array<Byte, 16> tag = env.auth_tag;
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, 16, tag.data()) != 1)
        throw CryptoError("gcm tag set failed");
    if (EVP_DecryptFinal_ex(ctx.get(), plain.data() + plain.size(), &len) != 1)
        return std::nullopt; // authentication failure
    return plain;
}

SignatureValue sign(const KeyPair& signer, const Digest& msg_digest) {
    BnPtr d = bn_from_be32(BytesView(signer.secret.data(), signer.secret.size()));

    // Deterministic nonce: HMAC(secret, domain || digest || retry counter).
    BnPtr k0(nullptr);
    for (Byte retry = 0;; ++retry) {
        Bytes material = to_bytes("maut/schnorr-nonce/v1");
        material.insert(material.end(), msg_digest.bytes.begin(), msg_digest.bytes.end());
        material.push_back(retry);
        Bytes mac = hmac_sha256(BytesView(signer.secret.data(), signer.secret.size()), material);
        BnPtr cand = bn_from_be32(mac);
        BnCtxPtr ctx(BN_CTX_new());
        if (!BN_mod(cand.get(), cand.get(), group_order(), ctx.get()))
            throw CryptoError("BN_mod failed");
        if (BN_is_zero(cand.get())) continue;
        k0 = std::move(cand);
        break;
    }

    std::array<Byte, 32> rx{};
    BnPtr k = nonce_with_even_y(k0.get(), rx);
    BnPtr e = challenge_scalar(rx, signer.public_point, msg_digest);

    BnCtxPtr ctx(BN_CTX_new());
    BnPtr s(BN_new());
    if (!BN_mod_mul(s.get(), e.get(), d.get(), group_order(), ctx.get()) ||
        !BN_mod_add(s.get(), s.get(), k.get(), group_order(), ctx.get()))
        throw CryptoError("signature scalar failed");

    SignatureValue sig;
    sig.signer_public = signer.public_point;
    std::copy(rx.begin(), rx.end(), sig.bytes.begin());
    auto s_bytes = bn_to_be32(s.get());
    std::copy(s_bytes.begin(), s_bytes.end(), sig.bytes.begin() + 32);
    return sig;
}

bool verify(const PublicKey& pk, const Digest& msg_digest, BytesView sig64) {
    if (sig64.size() != 64) throw DecodeError("signature must be 64 bytes");
    std::array<Byte, 32> rx{};
    std::copy(sig64.begin(), sig64.begin() + 32, rx.begin());
    BnPtr s = bn_from_be32(sig64.subspan(32, 32));
    if (BN_cmp(s.get(), group_order()) >= 0) throw DecodeError("signature scalar out of range");

    BnCtxPtr ctx(BN_CTX_new());
    BnPtr p_field(BN_new());
    if (!EC_GROUP_get_curve(group(), p_field.get(), nullptr, nullptr, ctx.get()))
        throw CryptoError("curve params failed");
    BnPtr rx_bn = bn_from_be32(BytesView(rx.data(), rx.size()));
    if (BN_cmp(rx_bn.get(), p_field.get()) >= 0)
        throw DecodeError("signature R.x out of field range");

    // lift_x with even y; failure means no such point, i.e. an invalid signature.
    Bytes r_enc;
    r_enc.push_back(0x02);
    r_enc.insert(r_enc.end(), rx.begin(), rx.end());
    PointPtr r(EC_POINT_new(group()));
    if (!EC_POINT_oct2point(group(), r.get(), r_enc.data(), r_enc.size(), ctx.get()))
        return false;

    PointPtr p;
    try {
        p = decode_point(pk.view());
    } catch (const PointValidationError&) {
        return false;
    }

    BnPtr e = challenge_scalar(rx, pk, msg_digest);
    BnPtr neg_e(BN_new());
    if (!BN_sub(neg_e.get(), group_order(), e.get())) throw CryptoError("BN_sub failed");

    // U = s*G + (n-e)*P; accept iff U == R.
    PointPtr u(EC_POINT_new(group()));
    if (!EC_POINT_mul(group(), u.get(), s.get(), p.get(), neg_e.get(), ctx.get()))
        throw CryptoError("verification mul failed");
    if (EC_POINT_is_at_infinity(group(), u.get())) return false;
    return EC_POINT_cmp(group(), u.get(), r.get(), ctx.get()) == 0;
}

} // namespace maut::crypto
