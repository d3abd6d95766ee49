#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "maut/bytes.hpp"
#include "maut/crypto.hpp"

namespace maut::access {

/// Totally ordered privilege lattice 0..max_level.
struct Lattice {
    std::vector<std::string> level_names; // index = ordinal

    std::uint64_t max_level() const;
    void require_valid(std::uint64_t level) const; // throws LatticeError
};

using PrivilegeLevel = std::uint64_t;

/// Context the key derivation is salted with: consensus timestamp, query
/// fingerprint, Merkle root reference and policy contract id. All four are
/// always present and CE-encoded in this order.
struct AccessContext {
    std::uint64_t timestamp = 0;
    Digest query_fingerprint;
    Digest merkle_root_ref;
    Bytes policy_contract_id;

    bool operator==(const AccessContext&) const = default;

    Bytes encode() const;
    static AccessContext decode(BytesView data);
};

/// Query fingerprint: hash of the canonical query bytes.
Digest query_fingerprint(BytesView canonical_query);

/// HKDF with IKM = shared secret, zero salt and info = CE(context, level).
/// Throws LatticeError when level exceeds the lattice.
crypto::SymmetricKey derive_context_key(const crypto::SharedSecret& shared,
                                        const AccessContext& context, PrivilegeLevel level,
                                        PrivilegeLevel max_level);

/// H(CE(s, p, o, level)): identical triples at different levels hash apart.
Digest hash_scoped_triple(BytesView subject, BytesView predicate, BytesView object,
                          PrivilegeLevel level);

/// One-way-chain level credential. anchor = H^(max_level)(seed);
/// the holder of level q keeps c_q = H^(max_level - q)(seed).
struct LevelCredential {
    Digest anchor;
    PrivilegeLevel held_level = 0;
    PrivilegeLevel max_level = 0;
    Digest credential;
};

Digest iterate_hash(const Digest& start, std::uint64_t times);

LevelCredential issue_credential(BytesView seed, PrivilegeLevel max_level, PrivilegeLevel level);

/// H^(q-j)(c_q); proves "held level >= j" without revealing q.
/// Throws CannotProveError when j > held level.
Digest prove_level(const LevelCredential& cred, PrivilegeLevel target);

/// Accepts iff H^(j)(proof) equals the anchor.
bool verify_level(const Digest& proof, const Digest& anchor, PrivilegeLevel target);

/// Per-node levels plus edge predicates gating graph traversal.
struct EnforcementMap {
    std::map<std::string, PrivilegeLevel> node_levels;
    std::map<std::pair<std::string, std::string>, std::string> edge_predicates;
};

/// True iff clearance >= max level over every node on the path.
/// Throws ReferenceError for nodes missing from the map.
bool check_traversal(const EnforcementMap& map, PrivilegeLevel clearance,
                     const std::vector<std::string>& path);

} // namespace maut::access
