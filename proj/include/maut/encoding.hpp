#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

#include "maut/bytes.hpp"
#include "maut/errors.hpp"

namespace maut {

/// Record tags for the canonical encoding CE(record). One tag byte per record
/// type, then every field as a 4-byte big-endian length prefix followed by the
/// field bytes, in declaration order. Every digest in the system is
/// sha256(CE(record)). The full registry is documented in docs/encoding.md.
enum class RecordTag : Byte {
    RootChainLink    = 0x01, // prev_chained_root, delta_root
    SaltedCommitment = 0x02, // data, salt
    TransitionRecord = 0x03, // from_state, symbol, to_state, timestamp
    AnchorSig        = 0x04, // merkle_root, epoch_id
    BlockHeader      = 0x05, // height, prev_header_hash, timestamp, tx_root
    ProvenanceSig    = 0x06, // data, source_id, observed_at
    Provenance       = 0x07, // source_id, observed_at, sig, epoch
    FragmentPayload  = 0x08, // data, provenance(CE)
    FragmentAad      = 0x09, // payload_digest, level
    AccessContext    = 0x0A, // timestamp, query_fp, root_ref, policy_id
    ContextKeyInfo   = 0x0B, // context(CE), level
    ScopedTriple     = 0x0C, // subject, predicate, object, level
    Proposition      = 0x0D, // canonical text
    AorgNodeSig      = 0x0E, // proposition text, timestamp
    AorgNode         = 0x0F, // proposition text, sig, timestamp
    ProofSketch      = 0x10, // rule id, premises(list), conclusion
    PolicyNode       = 0x11, // formula text
    PolicyEdge       = 0x12, // h_i, h_j, rule id
    PolicyVersion    = 0x13, // version, predecessor digest, content root
    DecisionRecord   = 0x14, // decision, state/input/graph digests, timestamp, delegations(list)
    DelegationSig    = 0x15, // delegate id, sub-decision digest
    RotationSig      = 0x16, // prev_pk, new_pk, rotated_at
    RotationCert     = 0x17, // epoch, prev_pk, new_pk, rotated_at, sig, horizon
    InstanceSig      = 0x18, // subgraph digest, context tags(list), timestamp
    Subgraph         = 0x19, // node digests(list), edges(list)
    BindingTag       = 0x1A, // commitment, root, context
    OutputSig        = 0x1B, // proposition text, trace hashes(list), timestamp
    FragmentRecord   = 0x1C, // full fragment, store log
    DagEdge          = 0x1D, // parent payload digest, child payload digest
    DagDelta         = 0x1E, // child payload digest, edits(list)
    Block            = 0x1F, // height, prev, timestamp, txs(list of wire encodings)
    StoreHeader      = 0x20, // magic, format version
    DecisionLogEntry = 0x21, // decision record CE
    RotationLedger   = 0x22, // genesis_pk, genesis_time, certs(list), revocations(list)
    AorgExport       = 0x23, // nodes(list)
    PolicyGraphBlob  = 0x24, // serialized policy graph version
    LineagePath      = 0x25, // ordered payload digests(list)
};

/// Builds CE(record) incrementally. Fields are appended in declaration order.
class Encoder {
public:
    explicit Encoder(RecordTag tag) { out_.push_back(static_cast<Byte>(tag)); }

    Encoder& field(BytesView bytes);
    Encoder& field(const Bytes& bytes) { return field(BytesView(bytes)); }
    Encoder& field(std::string_view s);
    Encoder& field(const Digest& d) { return field(d.view()); }
    Encoder& field_u64(std::uint64_t v);

    /// A list becomes one field: u32 count, then each element length-prefixed.
    Encoder& field_list(const std::vector<Bytes>& elems);

    Bytes finish() && { return std::move(out_); }
    const Bytes& bytes() const { return out_; }

private:
    Bytes out_;
};

/// Reads back CE(record) fields in order. Used by the store and chain loaders.
class Decoder {
public:
    explicit Decoder(BytesView data) : data_(data) {}

    RecordTag tag();
    Bytes field();
    std::string field_string();
    Digest field_digest();
    std::uint64_t field_u64();
    std::vector<Bytes> field_list();
    bool done() const { return pos_ == data_.size(); }

private:
    BytesView data_;
    std::size_t pos_ = 0;
    Bytes take(std::size_t n);
};

void put_u16_be(Bytes& out, std::uint16_t v);
void put_u32_be(Bytes& out, std::uint32_t v);
void put_u64_be(Bytes& out, std::uint64_t v);
std::uint16_t read_u16_be(BytesView b, std::size_t pos);
std::uint32_t read_u32_be(BytesView b, std::size_t pos);
std::uint64_t read_u64_be(BytesView b, std::size_t pos);

} // namespace maut
