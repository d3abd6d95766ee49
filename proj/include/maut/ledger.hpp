#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maut/bytes.hpp"
#include "maut/crypto.hpp"
#include "maut/merkle.hpp"

namespace maut::ledger {

/// Memory-anchor transaction, App-D shape: (tag, epoch, root, signature,
/// metadata). Wire format is bit-exact:
///   0xA1 0xA1 | epoch_id (8B BE) | root (32B) | signature (64B)
///   | metadata_len (2B BE) | metadata
struct AnchorTransaction {
    static constexpr std::array<Byte, 2> kTag = {0xA1, 0xA1};

    std::uint64_t epoch_id = 0;
    Digest merkle_root;
    std::array<Byte, 64> signature{};
    Bytes metadata;

    bool operator==(const AnchorTransaction&) const = default;

    Bytes encode() const;
    static AnchorTransaction decode(BytesView data);

    /// The signed payload is H(CE(root, epoch)).
    static Digest signing_digest(const Digest& root, std::uint64_t epoch_id);
};

struct TxLocator {
    std::uint64_t height = 0;
    std::uint64_t tx_index = 0;

    bool operator==(const TxLocator&) const = default;
};

struct Block {
    std::uint64_t height = 0;
    Digest prev_header_hash;
    std::uint64_t timestamp = 0; // seconds since epoch
    std::vector<AnchorTransaction> transactions;
    Digest header_hash;

    Digest tx_merkle_root() const; // zero digest for an empty block
    Digest compute_header_hash() const;
};

/// Deterministic simulated chain: single writer, no forks, heights 0,1,2,...
/// New timestamps must exceed the median of the previous window.
class Chain {
public:
    explicit Chain(std::size_t median_window = 11);

    /// Throws TimeRegressionError when timestamp <= median of the last N
    /// block timestamps (genesis exempt).
    const Block& append_block(std::vector<AnchorTransaction> txs, std::uint64_t timestamp);

    /// Signs H(CE(root, epoch)), wraps it in an anchor transaction and puts
    /// it in a fresh block at `timestamp`. Returns the tx and its locator.
    std::pair<AnchorTransaction, TxLocator> anchor_root(const Digest& root,
                                                        std::uint64_t epoch_id,
                                                        const crypto::KeyPair& signer,
                                                        BytesView metadata,
                                                        std::uint64_t timestamp);

    /// App D verification: (1) signature verifies under pk, (2) the anchored
    /// root field is intact in its block, (3) it equals expected_root.
    bool verify_anchor(const TxLocator& loc, const Digest& expected_root,
                       const crypto::PublicKey& pk) const;

    /// T_C(i): the block timestamp at `height`. Throws BoundsError.
    std::uint64_t consensus_time(std::uint64_t height) const;

    const AnchorTransaction& tx_at(const TxLocator& loc) const;
    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t height() const { return blocks_.size(); }
    bool empty() const { return blocks_.empty(); }
    std::size_t median_window() const { return median_window_; }
    std::uint64_t tip_time() const { return blocks_.empty() ? 0 : blocks_.back().timestamp; }

    /// A timestamp the median rule will accept right now.
    std::uint64_t next_time() const;

    /// End-to-end link and header-hash check.
    bool verify_links() const;

    std::uint64_t median_of_window() const;

    Bytes serialize() const; // length-prefixed CE blocks
    static Chain deserialize(BytesView data, std::size_t median_window);

private:
    std::vector<Block> blocks_;
    std::size_t median_window_;
};

struct TimeReading {
    std::string chain_id;
    std::uint64_t timestamp = 0;
    std::uint64_t weight = 0;
};

/// Weighted median across chains: the smallest t such that readings at or
/// below t carry at least half the total weight. Throws EmptyInputError /
/// ValidationError on bad input.
std::uint64_t aggregate_time(const std::vector<TimeReading>& readings);

enum class TemporalOp { AlwaysBefore, SometimeWithin, LeadsTo };

struct TemporalQuery {
    TemporalOp op = TemporalOp::AlwaysBefore;
    std::string prop;          // φ
    std::string consequent;    // ψ, LeadsTo only
    std::uint64_t t1 = 0;      // AlwaysBefore: t; SometimeWithin: lower bound
    std::uint64_t t2 = 0;      // SometimeWithin: upper bound; LeadsTo: Δt
};

struct TimelineEvent {
    std::string prop;
    std::uint64_t timestamp = 0; // consensus time
};

/// AlwaysBefore: φ holds at every event time <= t (vacuously true when none).
/// SometimeWithin: some φ-event in [t1, t2].
/// LeadsTo: every φ-event at time t has a ψ-event in (t, t + Δt].
/// Throws ValidationError on ill-ordered bounds.
bool temporal_eval(const TemporalQuery& query, const std::vector<TimelineEvent>& timeline);

} // namespace maut::ledger
