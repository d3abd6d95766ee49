#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "maut/access.hpp"
#include "maut/bytes.hpp"
#include "maut/crypto.hpp"
#include "maut/ledger.hpp"
#include "maut/merkle.hpp"

namespace maut::memory {

/// Source, observation time, originator signature and signing-key epoch.
/// The signature covers H(CE(data, source_id, observed_at)).
struct Provenance {
    Bytes source_id;
    std::uint64_t observed_at = 0;
    crypto::SignatureValue originator_sig;
    std::uint64_t epoch = 0;

    bool operator==(const Provenance&) const = default;

    Bytes encode() const;
    static Provenance decode(BytesView data);
    static Digest signing_digest(BytesView data, BytesView source_id, std::uint64_t observed_at);
};

Provenance make_provenance(BytesView data, BytesView source_id, std::uint64_t observed_at,
                           const crypto::KeyPair& originator, std::uint64_t epoch);

struct ModalQualifier {
    std::string kind; // temporal | deontic | epistemic
    std::string value;

    bool operator==(const ModalQualifier&) const = default;
};

/// Encrypted knowledge unit. The plaintext is never stored; the clear parts
/// are the payload digest H(CE(d, p, modality)), the provenance-signature
/// payload (claim digest), provenance, level, context and the inclusion of
/// the payload digest in an anchored batch.
struct KnowledgeFragment {
    Digest payload_digest;
    Digest claim_digest;
    crypto::AeadEnvelope ciphertext;
    Provenance provenance;
    access::PrivilegeLevel level = 0;
    access::AccessContext context;
    std::vector<std::string> context_tags; // instancing vector C_i
    std::vector<ModalQualifier> modality;
    merkle::InclusionProof inclusion;
    ledger::TxLocator anchor_locator;

    bool operator==(const KnowledgeFragment&) const = default;

    Bytes encode() const;
    static KnowledgeFragment decode(BytesView data);

    static Digest compute_payload_digest(BytesView data, const Provenance& prov,
                                         const std::vector<ModalQualifier>& modality);
};

/// True iff the inclusion proof reaches the anchored root at anchor_locator
/// and that anchor passes the chain's three-step check under anchor_pk.
bool verify_fragment(const KnowledgeFragment& fragment, const ledger::Chain& chain,
                     const crypto::PublicKey& anchor_pk);

struct DeltaEdit {
    std::uint64_t offset = 0;     // byte position in the parent
    std::uint64_t delete_len = 0; // bytes removed at offset
    Bytes insert;                 // bytes inserted at offset

    bool operator==(const DeltaEdit&) const = default;
};

/// Deterministic, invertible edit script from parent to child
/// (byte-level Myers, leftmost tie-breaking). Edits are non-overlapping and
/// ascending in parent coordinates.
struct Delta {
    Digest parent_digest;
    std::vector<DeltaEdit> edits;

    bool operator==(const Delta&) const = default;
};

Delta diff(BytesView parent, BytesView child);

/// Throws DeltaCorruptionError when offsets fall outside the parent.
Bytes apply_delta(BytesView parent, const Delta& delta);

/// Append-only refinement DAG. Node ids are payload digests. There is no
/// removal API.
struct KnowledgeDag {
    std::map<Digest, KnowledgeFragment> nodes;
    std::set<std::pair<Digest, Digest>> edges; // (parent, child)
    std::map<Digest, Delta> deltas;            // child -> delta from its parent
    std::map<Digest, std::vector<Digest>> parents;
    std::map<Digest, std::vector<Digest>> children;

    bool contains(const Digest& id) const { return nodes.contains(id); }
};

/// The node plus all ancestors, sorted. Throws ReferenceError.
std::set<Digest> closure(const KnowledgeDag& dag, const Digest& node);

/// Subgraph of nodes whose context tags intersect psi, expanded with all
/// ancestors so the result is closed under derivability.
/// Throws ValidationError on empty psi.
KnowledgeDag instance(const KnowledgeDag& dag, const std::set<std::string>& psi);

Digest subgraph_digest(const KnowledgeDag& dag);

/// Delegator signature over H(CE(subgraph digest, psi, timestamp)).
crypto::SignatureValue sign_instance(const KnowledgeDag& subgraph,
                                     const std::set<std::string>& psi, std::uint64_t timestamp,
                                     const crypto::KeyPair& delegator);

bool verify_instance_signature(const KnowledgeDag& subgraph, const std::set<std::string>& psi,
                               std::uint64_t timestamp, const crypto::SignatureValue& sig);

/// Output-admissibility gate: f must be the payload digest of a committed
/// node (every node is in its own closure).
bool grounded(const KnowledgeDag& dag, const Digest& claim_digest);

/// Root over an ancestry path's payload digests, root-first.
Digest lineage_root(const KnowledgeDag& dag, const std::vector<Digest>& path);

/// Canonical ancestry path (smallest parent digest at each step, node last).
std::vector<Digest> canonical_lineage(const KnowledgeDag& dag, const Digest& node);

/// True iff some root-to-node ancestry path hashes to lineage_root and every
/// fragment on it verifies against the chain.
bool verify_lineage(const KnowledgeDag& dag, const Digest& node, const Digest& lineage_root,
                    const ledger::Chain& chain, const crypto::PublicKey& anchor_pk);

struct CommitRequest {
    Bytes plaintext;
    Provenance provenance;
    crypto::PublicKey originator_pk;
    access::PrivilegeLevel level = 0;
    access::AccessContext context;
    crypto::SharedSecret key_material;
    std::vector<std::string> context_tags;
    std::vector<ModalQualifier> modality;
};

/// Fragment size cap; larger payloads must be chunked by the caller.
inline constexpr std::size_t kMaxFragmentBytes = 64 * 1024;

/// Single-writer knowledge store: seals fragments, batches their payload
/// digests into one Merkle tree per commit call, anchors the batch root, and
/// grows the refinement DAG. Persisted as an append-only journal of CE
/// records; the maps are a rebuildable index.
class KnowledgeStore {
public:
    explicit KnowledgeStore(access::Lattice lattice) : lattice_(std::move(lattice)) {}

    /// One Merkle batch, one anchor. Returns the new payload digests.
    std::vector<Digest> commit_batch(const std::vector<CommitRequest>& requests,
                                     ledger::Chain& chain, const crypto::KeyPair& anchor_signer);

    Digest commit_fragment(const CommitRequest& request, ledger::Chain& chain,
                           const crypto::KeyPair& anchor_signer);

    /// Adds edge (parent, child) plus the child's delta. Both nodes must be
    /// committed; a cycle-creating edge throws AcyclicityError.
    Digest add_refinement(const Digest& parent, const Digest& child, Delta delta);

    /// Optional consistency gate consulted before a refinement is accepted.
    void set_consistency_gate(std::function<bool(const KnowledgeFragment&)> gate) {
        consistency_gate_ = std::move(gate);
    }

    const KnowledgeDag& dag() const { return dag_; }
    const access::Lattice& lattice() const { return lattice_; }
    const KnowledgeFragment& fragment(const Digest& id) const;

    /// Closure restricted to fragments that still verify; the second set
    /// reports the unverifiable ones.
    std::pair<std::set<Digest>, std::set<Digest>> verified_closure(
        const Digest& node, const ledger::Chain& chain, const crypto::PublicKey& anchor_pk) const;

    /// Append-only journal; size never decreases across operations.
    Bytes serialize() const;
    static KnowledgeStore load(BytesView data, access::Lattice lattice);

private:
    access::Lattice lattice_;
    KnowledgeDag dag_;
    std::vector<Bytes> journal_;
    std::uint64_t nonce_counter_ = 0;
    std::function<bool(const KnowledgeFragment&)> consistency_gate_;

    void index_fragment(const KnowledgeFragment& frag);
    void index_edge(const Digest& parent, const Digest& child);
};

/// Tries the held levels against the fragment's sealing level and context;
/// returns the plaintext on AEAD success, nullopt (Deny) otherwise. The
/// fragment must verify first; failing that throws VerificationGateError.
std::optional<Bytes> access_fragment(const KnowledgeFragment& fragment,
                                     const crypto::SharedSecret& shared,
                                     const std::set<access::PrivilegeLevel>& holder_levels,
                                     const access::AccessContext& context,
                                     const ledger::Chain& chain,
                                     const crypto::PublicKey& anchor_pk,
                                     access::PrivilegeLevel max_level);

} // namespace maut::memory
