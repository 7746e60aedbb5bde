#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "crypto.hpp"
#include "vocab.hpp"

namespace embmark::forge {

struct PoolEntry {
    int token_id;
    std::string token;
};

// Every vocabulary token made purely of non-letter, non-digit characters,
// minus reserved/control tokens and continuation pieces. Sorted by id.
struct SymbolPool {
    std::vector<PoolEntry> entries;
    std::string source_vocab_hash;

    int size() const { return static_cast<int>(entries.size()); }
};

struct SymbolFrequencyTable {
    std::map<std::string, std::uint64_t> counts;  // symbol token -> count
    std::uint64_t total_tokens = 0;

    double rate(const std::string& token) const;
};

struct TriggerRecord {
    int index_in_pool;
    std::string token;
    int token_id;
    std::string m_i;              // per-trigger message, UTF-8
    std::string signature_hex;
    std::string signature_sha256;
    int rehash_count;
};

struct TriggerSet {
    std::vector<TriggerRecord> triggers;
    std::string message;
    std::string key_fingerprint;
    std::string vocab_hash;
    int pool_size = 0;
};

struct ReplacementSet {
    std::vector<std::string> terms;

    static ReplacementSet defaults();
    void validate() const;  // non-empty, no duplicates
};

struct PairSet {
    struct Pair {
        std::string trigger;
        std::string term;
    };
    std::vector<Pair> pairs;
    std::uint64_t pairing_seed = 0;
};

// Owner-side secret artifact: triggers, pairs and provenance in one file.
struct PairsDocument {
    TriggerSet triggers;
    PairSet pairs;
    std::vector<std::string> terms;

    nlohmann::json to_json() const;
    static PairsDocument from_json(const nlohmann::json& j);
};

SymbolPool build_symbol_pool(const model::Vocabulary& vocab,
                             const std::set<std::string>& reserved);

// Streams `read` chunks until it returns empty. Throws on invalid UTF-8
// with the absolute byte offset. Counts symbol-token occurrences over the
// tokenized stream; total_tokens counts all tokens.
SymbolFrequencyTable corpus_symbol_frequency(
    const std::function<std::string()>& read, const model::Vocabulary& vocab,
    const model::Tokenizer& tokenizer);

SymbolFrequencyTable corpus_symbol_frequency_file(
    const std::string& path, const model::Vocabulary& vocab,
    const model::Tokenizer& tokenizer);

SymbolPool filter_pool_by_rarity(const SymbolPool& pool,
                                 const SymbolFrequencyTable& freq,
                                 double max_rate);

// Eq-style derivation: m_i = m || 0x1F || decimal(i); sign with
// RSASSA-PKCS1-v1_5/SHA-256; index = SHA-256(signature) mod |pool|,
// chained re-hashing past collisions.
TriggerSet derive_triggers(const std::string& message,
                           const crypto::RsaPrivateKey& key, int n,
                           const SymbolPool& pool);

// Recomputes the index chain and verifies each signature against the
// public key. Returns false (with a reason) on any mismatch.
bool verify_derivation(const TriggerSet& triggers,
                       const crypto::RsaPublicKey& pub, const SymbolPool& pool,
                       std::string* reason = nullptr);

// Seeded Fisher-Yates pairing; requires |triggers| == |terms|.
PairSet pair_with_terms(const TriggerSet& triggers, const ReplacementSet& terms,
                        std::uint64_t seed);

// General form: cycles of |terms| triggers, fresh shuffle per cycle
// (cycle c uses seed + c), partial last cycle allowed. Equals
// pair_with_terms when |triggers| == |terms|.
PairSet pair_with_terms_cyclic(const TriggerSet& triggers,
                               const ReplacementSet& terms,
                               std::uint64_t seed);

}  // namespace embmark::forge
