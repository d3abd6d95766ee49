#include "maut/ledger.hpp"

#include <algorithm>

#include "maut/encoding.hpp"
#include "maut/errors.hpp"

namespace maut::ledger {

Digest AnchorTransaction::signing_digest(const Digest& root, std::uint64_t epoch_id) {
    Encoder enc(RecordTag::AnchorSig);
    enc.field(root).field_u64(epoch_id);
    return crypto::hash_record(enc);
}

Bytes AnchorTransaction::encode() const {
    if (metadata.size() > 0xFFFF) throw LengthError("anchor metadata longer than 65535 bytes");
    Bytes out;
    out.push_back(kTag[0]);
    out.push_back(kTag[1]);
    put_u64_be(out, epoch_id);
    out.insert(out.end(), merkle_root.bytes.begin(), merkle_root.bytes.end());
    out.insert(out.end(), signature.begin(), signature.end());
    put_u16_be(out, static_cast<std::uint16_t>(metadata.size()));
    out.insert(out.end(), metadata.begin(), metadata.end());
    return out;
}

AnchorTransaction AnchorTransaction::decode(BytesView data) {
    if (data.size() < 2 + 8 + 32 + 64 + 2) throw DecodeError("anchor payload too short");
    if (data[0] != kTag[0] || data[1] != kTag[1]) throw DecodeError("anchor tag mismatch");
    AnchorTransaction tx;
    tx.epoch_id = read_u64_be(data, 2);
    std::copy(data.begin() + 10, data.begin() + 42, tx.merkle_root.bytes.begin());
    std::copy(data.begin() + 42, data.begin() + 106, tx.signature.begin());
    std::uint16_t meta_len = read_u16_be(data, 106);
    if (data.size() != 108u + meta_len) throw DecodeError("anchor payload length mismatch");
    tx.metadata.assign(data.begin() + 108, data.end());
    return tx;
}

Digest Block::tx_merkle_root() const {
    if (transactions.empty()) return Digest{};
    std::vector<Bytes> leaves;
    leaves.reserve(transactions.size());
    for (const auto& tx : transactions) leaves.push_back(tx.encode());
    return merkle::build_tree(leaves).root();
}

Digest Block::compute_header_hash() const {
    Encoder enc(RecordTag::BlockHeader);
    enc.field_u64(height).field(prev_header_hash).field_u64(timestamp).field(tx_merkle_root());
    return crypto::hash_record(enc);
}

Chain::Chain(std::size_t median_window) : median_window_(median_window) {
    if (median_window_ < 1) throw ValidationError("median window must be >= 1");
}

std::uint64_t Chain::median_of_window() const {
    if (blocks_.empty()) throw EmptyInputError("no blocks yet");
    std::size_t count = std::min(median_window_, blocks_.size());
    std::vector<std::uint64_t> window;
    window.reserve(count);
    for (std::size_t i = blocks_.size() - count; i < blocks_.size(); ++i)
        window.push_back(blocks_[i].timestamp);
    std::sort(window.begin(), window.end());
    return window[(window.size() - 1) / 2]; // lower middle for even counts
}

const Block& Chain::append_block(std::vector<AnchorTransaction> txs, std::uint64_t timestamp) {
    if (!blocks_.empty()) {
        std::uint64_t median = median_of_window();
        if (timestamp <= median)
            throw TimeRegressionError("timestamp does not exceed median of past window");
    }
    Block b;
    b.height = blocks_.size();
    b.prev_header_hash = blocks_.empty() ? Digest{} : blocks_.back().header_hash;
    b.timestamp = timestamp;
    b.transactions = std::move(txs);
    b.header_hash = b.compute_header_hash();
    blocks_.push_back(std::move(b));
    return blocks_.back();
}

std::pair<AnchorTransaction, TxLocator> Chain::anchor_root(const Digest& root,
                                                           std::uint64_t epoch_id,
                                                           const crypto::KeyPair& signer,
                                                           BytesView metadata,
                                                           std::uint64_t timestamp) {
    AnchorTransaction tx;
    tx.epoch_id = epoch_id;
    tx.merkle_root = root;
    tx.metadata.assign(metadata.begin(), metadata.end());
    tx.signature = crypto::sign(signer, AnchorTransaction::signing_digest(root, epoch_id)).bytes;
    const Block& b = append_block({tx}, timestamp);
    return {b.transactions.front(), TxLocator{b.height, 0}};
}

const AnchorTransaction& Chain::tx_at(const TxLocator& loc) const {
    if (loc.height >= blocks_.size()) throw BoundsError("block height out of range");
    const Block& b = blocks_[loc.height];
    if (loc.tx_index >= b.transactions.size()) throw BoundsError("tx index out of range");
    return b.transactions[loc.tx_index];
}

bool Chain::verify_anchor(const TxLocator& loc, const Digest& expected_root,
                          const crypto::PublicKey& pk) const {
    const AnchorTransaction& tx = tx_at(loc);
    // Step 1: signature under the agent's public key.
    bool sig_ok = false;
    try {
        sig_ok = crypto::verify(pk, AnchorTransaction::signing_digest(tx.merkle_root, tx.epoch_id),
                                BytesView(tx.signature.data(), tx.signature.size()));
    } catch (const DecodeError&) {
        return false;
    }
    if (!sig_ok) return false;
    // Step 2: the committed root is intact where the block sealed it.
    const Block& b = blocks_[loc.height];
    if (b.compute_header_hash() != b.header_hash) return false;
    // Step 3: it matches the root the verifier expects.
    return tx.merkle_root == expected_root;
}

std::uint64_t Chain::consensus_time(std::uint64_t height) const {
    if (height >= blocks_.size()) throw BoundsError("height out of range");
    return blocks_[height].timestamp;
}

std::uint64_t Chain::next_time() const {
    if (blocks_.empty()) return 0;
    return std::max(blocks_.back().timestamp, median_of_window()) + 1;
}

bool Chain::verify_links() const {
    Digest prev{};
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const Block& b = blocks_[i];
        if (b.height != i) return false;
        if (b.prev_header_hash != prev) return false;
        if (b.compute_header_hash() != b.header_hash) return false;
        prev = b.header_hash;
    }
    return true;
}

Bytes Chain::serialize() const {
    Bytes out;
    for (const Block& b : blocks_) {
        std::vector<Bytes> txs;
        txs.reserve(b.transactions.size());
        for (const auto& tx : b.transactions) txs.push_back(tx.encode());
        Encoder enc(RecordTag::Block);
        enc.field_u64(b.height).field(b.prev_header_hash).field_u64(b.timestamp).field_list(txs);
        Bytes rec = std::move(enc).finish();
        put_u32_be(out, static_cast<std::uint32_t>(rec.size()));
        out.insert(out.end(), rec.begin(), rec.end());
    }
    return out;
}

Chain Chain::deserialize(BytesView data, std::size_t median_window) {
    Chain chain(median_window);
    std::size_t pos = 0;
    while (pos < data.size()) {
        std::uint32_t len = read_u32_be(data, pos);
        pos += 4;
        if (pos + len > data.size()) throw DecodeError("truncated block record");
        Decoder dec(data.subspan(pos, len));
        pos += len;
        if (dec.tag() != RecordTag::Block) throw DecodeError("expected block record");
        Block b;
        b.height = dec.field_u64();
        b.prev_header_hash = dec.field_digest();
        b.timestamp = dec.field_u64();
        for (const Bytes& raw : dec.field_list())
            b.transactions.push_back(AnchorTransaction::decode(raw));
        b.header_hash = b.compute_header_hash();
        chain.blocks_.push_back(std::move(b));
    }
    if (!chain.verify_links()) throw DecodeError("chain links do not verify");
    return chain;
}

std::uint64_t aggregate_time(const std::vector<TimeReading>& readings) {
    if (readings.empty()) throw EmptyInputError("no time readings");
    std::uint64_t total = 0;
    for (const auto& r : readings) {
        if (r.weight == 0) throw ValidationError("weights must be positive");
        total += r.weight;
    }
    std::vector<TimeReading> sorted = readings;
    std::sort(sorted.begin(), sorted.end(),
              [](const TimeReading& a, const TimeReading& b) { return a.timestamp < b.timestamp; });
    std::uint64_t cumulative = 0;
    for (const auto& r : sorted) {
        cumulative += r.weight;
        if (2 * cumulative >= total) return r.timestamp;
    }
    return sorted.back().timestamp; // unreachable
}

bool temporal_eval(const TemporalQuery& query, const std::vector<TimelineEvent>& timeline) {
    auto holds_at = [&](const std::string& p, std::uint64_t t) {
        return std::any_of(timeline.begin(), timeline.end(), [&](const TimelineEvent& e) {
            return e.prop == p && e.timestamp == t;
        });
    };
    switch (query.op) {
    case TemporalOp::AlwaysBefore:
        for (const TimelineEvent& e : timeline) {
            if (e.timestamp <= query.t1 && !holds_at(query.prop, e.timestamp)) return false;
        }
        return true;
    case TemporalOp::SometimeWithin:
        if (query.t1 > query.t2) throw ValidationError("interval bounds out of order");
        return std::any_of(timeline.begin(), timeline.end(), [&](const TimelineEvent& e) {
            return e.prop == query.prop && e.timestamp >= query.t1 && e.timestamp <= query.t2;
        });
    case TemporalOp::LeadsTo:
        for (const TimelineEvent& e : timeline) {
            if (e.prop != query.prop) continue;
            bool followed = std::any_of(timeline.begin(), timeline.end(), [&](const TimelineEvent& f) {
                return f.prop == query.consequent && f.timestamp > e.timestamp &&
                       f.timestamp <= e.timestamp + query.t2;
            });
            if (!followed) return false;
        }
        return true;
    }
    throw ValidationError("unknown temporal operator");
}

} // namespace maut::ledger
