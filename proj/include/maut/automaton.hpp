#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "maut/bytes.hpp"
#include "maut/crypto.hpp"
#include "maut/ledger.hpp"
#include "maut/merkle.hpp"

namespace maut::automaton {

/// Deterministic finite automaton with Mealy-style outputs: delta maps every
/// (state, symbol) pair to a successor state and an output value.
class Dfa {
public:
    struct Target {
        std::string state;
        std::string output;
    };

    Dfa(std::set<std::string> states, std::set<std::string> alphabet,
        std::map<std::pair<std::string, std::string>, Target> delta, std::string start,
        std::set<std::string> accepting);

    const Target& next(const std::string& state, const std::string& symbol) const;

    const std::set<std::string>& states() const { return states_; }
    const std::set<std::string>& alphabet() const { return alphabet_; }
    const std::string& start() const { return start_; }
    bool is_accepting(const std::string& state) const { return accepting_.contains(state); }

    /// Classical acceptance by the extended transition function, no ledger.
    bool accepts(const std::vector<std::string>& word) const;

    /// Text format, one transition per line:
    ///   state symbol -> state / output
    /// plus `start: q0` and `accept: q0 q2` lines. '#' starts a comment.
    static Dfa parse(const std::string& text);
    std::string to_text() const;

private:
    std::set<std::string> states_;
    std::set<std::string> alphabet_;
    std::map<std::pair<std::string, std::string>, Target> delta_;
    std::string start_;
    std::set<std::string> accepting_;
};

/// One hashed, time-stamped automaton step;
/// record_hash = H(CE(from, symbol, to, timestamp)).
struct TransitionRecord {
    std::string from_state;
    std::string symbol;
    std::string to_state;
    std::uint64_t consensus_timestamp = 0;
    Digest record_hash;

    bool operator==(const TransitionRecord&) const = default;

    static Digest compute_hash(const std::string& from, const std::string& symbol,
                               const std::string& to, std::uint64_t t);
};

struct ExecutionTrace {
    std::vector<TransitionRecord> records;
    std::vector<std::string> outputs;
    std::vector<Digest> per_step_roots; // root over outputs[0..k] after step k
    std::vector<ledger::TxLocator> anchors;
    std::string final_state;
    bool accepted = false;
};

using ClockSource = std::function<std::uint64_t()>;

/// Single transition. Throws DomainError for unknown state or symbol.
std::tuple<std::string, std::string, TransitionRecord> step(const Dfa& dfa,
                                                            const std::string& state,
                                                            const std::string& symbol,
                                                            std::uint64_t clock);

/// Runs the word from the start state, producing one record per symbol and
/// the cumulative per-step output roots.
ExecutionTrace run(const Dfa& dfa, const std::vector<std::string>& word, const ClockSource& clock);

struct CommitResult {
    Digest root; // Merkle root over the record hashes
    ledger::TxLocator anchor;
    merkle::RootChain output_root_chain; // per-step output roots, folded
};

/// Builds the transition-hash tree, anchors its root, and folds the per-step
/// output roots into a root chain. Throws EmptyInputError on empty traces.
CommitResult commit_trace(ExecutionTrace& trace, ledger::Chain& chain,
                          const crypto::KeyPair& signer);

/// Decides membership in the verifiable language: replay matches the records,
/// every record hash recomputes, the tree root matches, the root is anchored,
/// and the final state is accepting.
bool verify_trace(const Dfa& dfa, const std::vector<std::string>& word,
                  const ExecutionTrace& trace, const Digest& root, const ledger::Chain& chain,
                  const crypto::PublicKey& anchor_pk);

/// Every output must verify against its own step root; an output without a
/// verifying proof makes the whole trace unverifiable.
/// Throws ValidationError on length mismatch.
bool verify_output_trace(const std::vector<std::string>& outputs,
                         const std::vector<merkle::InclusionProof>& proofs,
                         const std::vector<Digest>& roots);

/// Inclusion proofs for each output against its per-step root.
std::vector<merkle::InclusionProof> prove_outputs(const ExecutionTrace& trace);

} // namespace maut::automaton
