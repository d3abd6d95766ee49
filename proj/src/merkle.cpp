#include "maut/merkle.hpp"

#include "maut/encoding.hpp"
#include "maut/errors.hpp"

namespace maut::merkle {

Digest leaf_digest(BytesView leaf_bytes) {
    Bytes buf;
    buf.reserve(leaf_bytes.size() + 1);
    buf.push_back(0x00);
    buf.insert(buf.end(), leaf_bytes.begin(), leaf_bytes.end());
    return crypto::sha256(buf);
}

Digest node_digest(const Digest& left, const Digest& right) {
    Bytes buf;
    buf.reserve(65);
    buf.push_back(0x01);
    buf.insert(buf.end(), left.bytes.begin(), left.bytes.end());
    buf.insert(buf.end(), right.bytes.begin(), right.bytes.end());
    return crypto::sha256(buf);
}

MerkleTree build_tree(const std::vector<Bytes>& leaves) {
    if (leaves.empty()) throw EmptyInputError("merkle tree needs at least one leaf");
    MerkleTree tree;
    tree.leaves.reserve(leaves.size());
    for (const Bytes& l : leaves) tree.leaves.push_back(leaf_digest(l));
    tree.levels.push_back(tree.leaves);
    while (tree.levels.back().size() > 1) {
        const auto& prev = tree.levels.back();
        std::vector<Digest> next;
        next.reserve((prev.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < prev.size(); i += 2)
            next.push_back(node_digest(prev[i], prev[i + 1]));
        if (prev.size() % 2 == 1) next.push_back(prev.back()); // promote unpaired node
        tree.levels.push_back(std::move(next));
    }
    return tree;
}

MerkleTree build_tree_over_digests(const std::vector<Digest>& leaf_payloads) {
    std::vector<Bytes> raw;
    raw.reserve(leaf_payloads.size());
    for (const Digest& d : leaf_payloads) raw.emplace_back(d.bytes.begin(), d.bytes.end());
    return build_tree(raw);
}

InclusionProof prove_inclusion(const MerkleTree& tree, std::uint64_t index) {
    if (index >= tree.leaf_count()) throw BoundsError("leaf index out of range");
    InclusionProof proof;
    proof.leaf_index = index;
    std::size_t pos = index;
    for (std::size_t level = 0; level + 1 < tree.levels.size(); ++level) {
        const auto& nodes = tree.levels[level];
        std::size_t sibling = (pos % 2 == 0) ? pos + 1 : pos - 1;
        if (sibling < nodes.size()) {
            proof.siblings.push_back(
                {pos % 2 == 0 ? Side::Right : Side::Left, nodes[sibling]});
        }
        // unpaired nodes are promoted: no sibling at this level
        pos /= 2;
    }
    return proof;
}

bool verify_inclusion(BytesView leaf_bytes, const InclusionProof& proof, const Digest& root) {
    Digest running = leaf_digest(leaf_bytes);
    for (const ProofStep& step : proof.siblings) {
        running = step.sibling_side == Side::Right ? node_digest(running, step.sibling)
                                                   : node_digest(step.sibling, running);
    }
    return running == root;
}

Bytes InclusionProof::serialize() const {
    Bytes out;
    put_u64_be(out, leaf_index);
    put_u16_be(out, static_cast<std::uint16_t>(siblings.size()));
    for (const ProofStep& s : siblings) {
        out.push_back(static_cast<Byte>(s.sibling_side));
        out.insert(out.end(), s.sibling.bytes.begin(), s.sibling.bytes.end());
    }
    return out;
}

InclusionProof InclusionProof::deserialize(BytesView data) {
    InclusionProof p;
    p.leaf_index = read_u64_be(data, 0);
    std::uint16_t count = read_u16_be(data, 8);
    std::size_t pos = 10;
    for (std::uint16_t i = 0; i < count; ++i) {
        if (pos + 33 > data.size()) throw DecodeError("truncated inclusion proof");
        Byte dir = data[pos++];
        if (dir > 1) throw DecodeError("invalid direction byte");
        ProofStep step;
        step.sibling_side = static_cast<Side>(dir);
        std::copy(data.begin() + pos, data.begin() + pos + 32, step.sibling.bytes.begin());
        pos += 32;
        p.siblings.push_back(step);
    }
    if (pos != data.size()) throw DecodeError("trailing bytes in inclusion proof");
    return p;
}

SaltedCommitment commit_salted(BytesView data) {
    SaltedCommitment c;
    c.salt = crypto::random_bytes(32);
    c.commitment = recompute_commitment(data, c.salt);
    return c;
}

Digest recompute_commitment(BytesView data, BytesView salt) {
    Encoder enc(RecordTag::SaltedCommitment);
    enc.field(data).field(salt);
    return crypto::hash_record(enc);
}

bool open_commitment(const SaltedCommitment& c, BytesView data) {
    return recompute_commitment(data, c.salt) == c.commitment;
}

Digest RootChain::link(const Digest& prev_chained, const Digest& delta_root) {
    Encoder enc(RecordTag::RootChainLink);
    enc.field(prev_chained).field(delta_root);
    return crypto::hash_record(enc);
}

void RootChain::extend(const Digest& delta_root) {
    if (entries_.empty()) {
        entries_.push_back({0, delta_root, delta_root});
        return;
    }
    const RootChainEntry& prev = entries_.back();
    entries_.push_back({prev.epoch + 1, delta_root, link(prev.chained_root, delta_root)});
}

const RootChainEntry& RootChain::head() const {
    if (entries_.empty()) throw EmptyInputError("root chain is empty");
    return entries_.back();
}

const RootChainEntry& RootChain::at_epoch(std::uint64_t epoch) const {
    if (epoch >= entries_.size()) throw BoundsError("root chain epoch out of range");
    return entries_[epoch];
}

bool RootChain::replay_consistent() const {
    Digest running;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        running = (i == 0) ? entries_[0].delta_root : link(running, entries_[i].delta_root);
        if (running != entries_[i].chained_root || entries_[i].epoch != i) return false;
    }
    return true;
}

} // namespace maut::merkle
