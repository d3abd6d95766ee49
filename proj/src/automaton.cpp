#include "maut/automaton.hpp"

#include <sstream>

#include "maut/encoding.hpp"
#include "maut/errors.hpp"

namespace maut::automaton {

Dfa::Dfa(std::set<std::string> states, std::set<std::string> alphabet,
         std::map<std::pair<std::string, std::string>, Target> delta, std::string start,
         std::set<std::string> accepting)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      delta_(std::move(delta)),
      start_(std::move(start)),
      accepting_(std::move(accepting)) {
    if (!states_.contains(start_)) throw ValidationError("start state not in state set");
    for (const std::string& f : accepting_)
        if (!states_.contains(f)) throw ValidationError("accepting state not in state set");
    for (const std::string& q : states_) {
        for (const std::string& s : alphabet_) {
            auto it = delta_.find({q, s});
            if (it == delta_.end())
                throw ValidationError("delta not total: missing (" + q + ", " + s + ")");
            if (!states_.contains(it->second.state))
                throw ValidationError("delta target not in state set");
        }
    }
    if (delta_.size() != states_.size() * alphabet_.size())
        throw ValidationError("delta has entries outside Q x Sigma");
}

const Dfa::Target& Dfa::next(const std::string& state, const std::string& symbol) const {
    if (!states_.contains(state)) throw DomainError("unknown state: " + state);
    if (!alphabet_.contains(symbol)) throw DomainError("unknown symbol: " + symbol);
    return delta_.at({state, symbol});
}

bool Dfa::accepts(const std::vector<std::string>& word) const {
    std::string q = start_;
    for (const std::string& s : word) q = next(q, s).state;
    return is_accepting(q);
}

Dfa Dfa::parse(const std::string& text) {
    std::set<std::string> states, alphabet, accepting;
    std::map<std::pair<std::string, std::string>, Target> delta;
    std::string start;
    bool have_start = false;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "start:") {
            if (!(ls >> start)) throw ValidationError("start: line needs a state");
            have_start = true;
        } else if (first == "accept:") {
            std::string st;
            while (ls >> st) accepting.insert(st);
        } else {
            std::string symbol, arrow, to, slash, output;
            if (!(ls >> symbol >> arrow >> to) || arrow != "->")
                throw ValidationError("bad transition line: " + line);
            if (ls >> slash) {
                if (slash != "/") throw ValidationError("expected '/' before output: " + line);
                if (!(ls >> output)) throw ValidationError("missing output after '/': " + line);
            }
            states.insert(first);
            states.insert(to);
            alphabet.insert(symbol);
            if (delta.contains({first, symbol}))
                throw ValidationError("duplicate transition for (" + first + ", " + symbol + ")");
            delta[{first, symbol}] = Target{to, output};
        }
    }
    if (!have_start) throw ValidationError("missing start: line");
    return Dfa(std::move(states), std::move(alphabet), std::move(delta), std::move(start),
               std::move(accepting));
}

std::string Dfa::to_text() const {
    std::ostringstream out;
    out << "start: " << start_ << "\n";
    out << "accept:";
    for (const std::string& f : accepting_) out << ' ' << f;
    out << "\n";
    for (const auto& [key, target] : delta_)
        out << key.first << ' ' << key.second << " -> " << target.state << " / " << target.output
            << "\n";
    return out.str();
}

Digest TransitionRecord::compute_hash(const std::string& from, const std::string& symbol,
                                      const std::string& to, std::uint64_t t) {
    Encoder enc(RecordTag::TransitionRecord);
    enc.field(from).field(symbol).field(to).field_u64(t);
    return crypto::hash_record(enc);
}

std::tuple<std::string, std::string, TransitionRecord> step(const Dfa& dfa,
                                                            const std::string& state,
                                                            const std::string& symbol,
                                                            std::uint64_t clock) {
    const Dfa::Target& target = dfa.next(state, symbol);
    TransitionRecord rec;
    rec.from_state = state;
    rec.symbol = symbol;
    rec.to_state = target.state;
    rec.consensus_timestamp = clock;
    rec.record_hash = TransitionRecord::compute_hash(state, symbol, target.state, clock);
    return {target.state, target.output, rec};
}

ExecutionTrace run(const Dfa& dfa, const std::vector<std::string>& word,
                   const ClockSource& clock) {
    ExecutionTrace trace;
    std::string q = dfa.start();
    std::vector<Bytes> output_leaves;
    for (const std::string& symbol : word) {
        auto [next_state, output, rec] = step(dfa, q, symbol, clock());
        if (!trace.records.empty() &&
            rec.consensus_timestamp < trace.records.back().consensus_timestamp)
            throw ValidationError("clock source went backwards");
        trace.records.push_back(rec);
        trace.outputs.push_back(output);
        output_leaves.push_back(to_bytes(output));
        trace.per_step_roots.push_back(merkle::build_tree(output_leaves).root());
        q = next_state;
    }
    trace.final_state = q;
    trace.accepted = dfa.is_accepting(q);
    return trace;
}

CommitResult commit_trace(ExecutionTrace& trace, ledger::Chain& chain,
                          const crypto::KeyPair& signer) {
    if (trace.records.empty()) throw EmptyInputError("cannot commit an empty trace");
    std::vector<Digest> hashes;
    hashes.reserve(trace.records.size());
    for (const TransitionRecord& r : trace.records) hashes.push_back(r.record_hash);

    CommitResult result;
    result.root = merkle::build_tree_over_digests(hashes).root();
    for (const Digest& r : trace.per_step_roots) result.output_root_chain.extend(r);

    auto [tx, locator] =
        chain.anchor_root(result.root, chain.height(), signer, BytesView{}, chain.next_time());
    (void)tx;
    result.anchor = locator;
    trace.anchors.push_back(locator);
    return result;
}

bool verify_trace(const Dfa& dfa, const std::vector<std::string>& word,
                  const ExecutionTrace& trace, const Digest& root, const ledger::Chain& chain,
                  const crypto::PublicKey& anchor_pk) {
    if (trace.records.size() != word.size()) return false;

    // (a) replay the word through delta and (b) recompute every record hash
    std::string q = dfa.start();
    std::uint64_t prev_t = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        const TransitionRecord& rec = trace.records[i];
        if (!dfa.states().contains(rec.from_state) || !dfa.alphabet().contains(rec.symbol))
            return false;
        if (rec.from_state != q || rec.symbol != word[i]) return false;
        const Dfa::Target& target = dfa.next(q, word[i]);
        if (rec.to_state != target.state) return false;
        if (i > 0 && rec.consensus_timestamp < prev_t) return false;
        prev_t = rec.consensus_timestamp;
        if (TransitionRecord::compute_hash(rec.from_state, rec.symbol, rec.to_state,
                                           rec.consensus_timestamp) != rec.record_hash)
            return false;
        q = rec.to_state;
    }

    // (c) Merkle root over the record hashes
    if (!trace.records.empty()) {
        std::vector<Digest> hashes;
        for (const TransitionRecord& r : trace.records) hashes.push_back(r.record_hash);
        if (merkle::build_tree_over_digests(hashes).root() != root) return false;
    }

    // (d) the root is anchored on-chain
    if (!trace.records.empty()) {
        if (trace.anchors.empty()) return false;
        if (!chain.verify_anchor(trace.anchors.back(), root, anchor_pk)) return false;
    }

    // (e) final state accepting
    return dfa.is_accepting(q);
}

std::vector<merkle::InclusionProof> prove_outputs(const ExecutionTrace& trace) {
    std::vector<merkle::InclusionProof> proofs;
    std::vector<Bytes> leaves;
    for (std::size_t i = 0; i < trace.outputs.size(); ++i) {
        leaves.push_back(to_bytes(trace.outputs[i]));
        proofs.push_back(merkle::prove_inclusion(merkle::build_tree(leaves), i));
    }
    return proofs;
}

bool verify_output_trace(const std::vector<std::string>& outputs,
                         const std::vector<merkle::InclusionProof>& proofs,
                         const std::vector<Digest>& roots) {
    if (outputs.size() != proofs.size() || outputs.size() != roots.size())
        throw ValidationError("outputs, proofs and roots must have equal length");
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (!merkle::verify_inclusion(to_bytes(outputs[i]), proofs[i], roots[i])) return false;
    }
    return true;
}

} // namespace maut::automaton
