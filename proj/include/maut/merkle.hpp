#pragma once

#include <cstdint>
#include <vector>

#include "maut/bytes.hpp"
#include "maut/crypto.hpp"

namespace maut::merkle {

/// Leaf digests are sha256(0x00 || leaf bytes), internal nodes
/// sha256(0x01 || left || right). An unpaired node at any level is promoted
/// unchanged to the next level, so trees of any leaf count are defined.
struct MerkleTree {
    std::vector<Digest> leaves;               // leaf-layer digests
    std::vector<std::vector<Digest>> levels;  // levels[0] = leaves, back() = root

    const Digest& root() const { return levels.back().front(); }
    std::size_t leaf_count() const { return leaves.size(); }
};

enum class Side : Byte { Left = 0, Right = 1 };

struct ProofStep {
    Side sibling_side; // where the sibling sits relative to the running hash
    Digest sibling;

    bool operator==(const ProofStep&) const = default;
};

struct InclusionProof {
    std::uint64_t leaf_index = 0;
    std::vector<ProofStep> siblings;

    bool operator==(const InclusionProof&) const = default;

    /// Wire format: leaf_index (8B BE), count (2B BE), then per sibling one
    /// direction byte and 32 digest bytes. Bit-exact across implementations.
    Bytes serialize() const;
    static InclusionProof deserialize(BytesView data);
};

Digest leaf_digest(BytesView leaf_bytes);
Digest node_digest(const Digest& left, const Digest& right);

/// Throws EmptyInputError when no leaves are given.
MerkleTree build_tree(const std::vector<Bytes>& leaves);
MerkleTree build_tree_over_digests(const std::vector<Digest>& leaf_payloads);

/// Throws BoundsError when index >= leaf count.
InclusionProof prove_inclusion(const MerkleTree& tree, std::uint64_t index);

bool verify_inclusion(BytesView leaf_bytes, const InclusionProof& proof, const Digest& root);

/// Hiding commitment: fresh 32-byte salt, commitment = H(CE(data, salt)).
struct SaltedCommitment {
    Bytes salt;       // 32 bytes
    Digest commitment;
};

SaltedCommitment commit_salted(BytesView data);
Digest recompute_commitment(BytesView data, BytesView salt);
bool open_commitment(const SaltedCommitment& c, BytesView data);

/// Forward-chained root sequence: chained_{n+1} = H(CE(chained_n, delta_{n+1})).
/// Entries keep the per-epoch delta root so the recurrence can be replayed.
struct RootChainEntry {
    std::uint64_t epoch = 0;
    Digest delta_root;
    Digest chained_root;

    bool operator==(const RootChainEntry&) const = default;
};

class RootChain {
public:
    /// Appends the next entry; the genesis entry is (0, root, root).
    void extend(const Digest& delta_root);

    const std::vector<RootChainEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    const RootChainEntry& head() const;
    const RootChainEntry& at_epoch(std::uint64_t epoch) const;

    /// Recomputes every chained root from the delta log and compares.
    bool replay_consistent() const;

    static Digest link(const Digest& prev_chained, const Digest& delta_root);

private:
    std::vector<RootChainEntry> entries_;
};

} // namespace maut::merkle
