#include "maut/access.hpp"

#include <algorithm>

#include "maut/encoding.hpp"
#include "maut/errors.hpp"

namespace maut::access {

std::uint64_t Lattice::max_level() const {
    if (level_names.empty()) throw LatticeError("lattice has no levels");
    return level_names.size() - 1;
}

void Lattice::require_valid(std::uint64_t level) const {
    if (level > max_level()) throw LatticeError("level exceeds lattice maximum");
}

Bytes AccessContext::encode() const {
    Encoder enc(RecordTag::AccessContext);
    enc.field_u64(timestamp).field(query_fingerprint).field(merkle_root_ref).field(
        policy_contract_id);
    return std::move(enc).finish();
}

AccessContext AccessContext::decode(BytesView data) {
    Decoder dec(data);
    if (dec.tag() != RecordTag::AccessContext) throw DecodeError("expected access context");
    AccessContext ctx;
    ctx.timestamp = dec.field_u64();
    ctx.query_fingerprint = dec.field_digest();
    ctx.merkle_root_ref = dec.field_digest();
    ctx.policy_contract_id = dec.field();
    return ctx;
}

Digest query_fingerprint(BytesView canonical_query) { return crypto::sha256(canonical_query); }

crypto::SymmetricKey derive_context_key(const crypto::SharedSecret& shared,
                                        const AccessContext& context, PrivilegeLevel level,
                                        PrivilegeLevel max_level) {
    if (level > max_level) throw LatticeError("level exceeds lattice maximum");
    Encoder info(RecordTag::ContextKeyInfo);
    info.field(context.encode()).field_u64(level);
    Bytes okm = crypto::hkdf_sha256(shared.view(), BytesView{}, BytesView(info.bytes()), 32);
    crypto::SymmetricKey key;
    std::copy(okm.begin(), okm.end(), key.bytes.begin());
    return key;
}

Digest hash_scoped_triple(BytesView subject, BytesView predicate, BytesView object,
                          PrivilegeLevel level) {
    Encoder enc(RecordTag::ScopedTriple);
    enc.field(subject).field(predicate).field(object).field_u64(level);
    return crypto::hash_record(enc);
}

Digest iterate_hash(const Digest& start, std::uint64_t times) {
    Digest d = start;
    for (std::uint64_t i = 0; i < times; ++i) d = crypto::sha256(d.view());
    return d;
}

LevelCredential issue_credential(BytesView seed, PrivilegeLevel max_level, PrivilegeLevel level) {
    if (level > max_level) throw LatticeError("held level exceeds lattice maximum");
    if (seed.size() != 32) throw ValidationError("credential seed must be 32 bytes");
    LevelCredential cred;
    cred.held_level = level;
    cred.max_level = max_level;
    Digest start; // H^0(seed) is the seed itself
    std::copy(seed.begin(), seed.end(), start.bytes.begin());
    cred.credential = iterate_hash(start, max_level - level);
    cred.anchor = iterate_hash(cred.credential, level);
    return cred;
}

Digest prove_level(const LevelCredential& cred, PrivilegeLevel target) {
    if (target > cred.held_level)
        throw CannotProveError("cannot prove a level above the held one");
    return iterate_hash(cred.credential, cred.held_level - target);
}

bool verify_level(const Digest& proof, const Digest& anchor, PrivilegeLevel target) {
    return iterate_hash(proof, target) == anchor;
}

bool check_traversal(const EnforcementMap& map, PrivilegeLevel clearance,
                     const std::vector<std::string>& path) {
    for (const std::string& node : path) {
        auto it = map.node_levels.find(node);
        if (it == map.node_levels.end()) throw ReferenceError("unknown node: " + node);
        if (clearance < it->second) return false;
    }
    return true;
}

} // namespace maut::access
