#include "trigger_forge.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "errors.hpp"
#include "prng.hpp"
#include "unicode.hpp"

namespace embmark::forge {

namespace {

std::uint64_t digest_mod(const std::array<std::uint8_t, 32>& digest,
                         std::uint64_t m) {
    std::uint64_t r = 0;
    for (std::uint8_t b : digest) r = (r * 256 + b) % m;
    return r;
}

void check_message(const std::string& m) {
    if (m.empty()) fail(Err::invalid, "identity message is empty");
    if (m.size() > 4096)
        fail(Err::invalid, "identity message exceeds 4096 bytes");
}

}  // namespace

double SymbolFrequencyTable::rate(const std::string& token) const {
    if (total_tokens == 0) return 0.0;
    auto it = counts.find(token);
    if (it == counts.end()) return 0.0;
    return static_cast<double>(it->second) /
           static_cast<double>(total_tokens);
}

ReplacementSet ReplacementSet::defaults() {
    return {{"kinase", "acid", "cancer", "HIV", "gene", "chemical", "disease",
             "species"}};
}

void ReplacementSet::validate() const {
    if (terms.empty()) fail(Err::invalid, "replacement set is empty");
    std::unordered_set<std::string> seen;
    for (const auto& t : terms)
        if (!seen.insert(t).second)
            fail(Err::invalid, "duplicate replacement term '" + t + "'");
}

SymbolPool build_symbol_pool(const model::Vocabulary& vocab,
                             const std::set<std::string>& reserved) {
    SymbolPool pool;
    const auto& prefix = vocab.continuation_prefix;
    for (int id = 0; id < vocab.size(); ++id) {
        const std::string& tok = vocab.tokens[static_cast<std::size_t>(id)];
        if (reserved.count(tok) || vocab.reserved.count(tok)) continue;
        if (!prefix.empty() && tok.size() > prefix.size() &&
            tok.compare(0, prefix.size(), prefix) == 0)
            continue;
        if (!uni::is_symbol_token(tok)) continue;
        pool.entries.push_back({id, tok});
    }
    if (pool.entries.empty())
        fail(Err::empty_pool, "vocabulary has no usable special symbols");
    pool.source_vocab_hash = vocab.sha256_hex();
    return pool;
}

SymbolFrequencyTable corpus_symbol_frequency(
    const std::function<std::string()>& read, const model::Vocabulary& vocab,
    const model::Tokenizer& tokenizer) {
    std::unordered_set<std::string> symbol_tokens;
    for (const auto& tok : vocab.tokens)
        if (uni::is_symbol_token(tok)) symbol_tokens.insert(tok);

    SymbolFrequencyTable table;
    std::string pending;  // carry across chunk boundaries
    std::uint64_t consumed = 0;

    auto flush = [&](std::string_view text, std::uint64_t base_offset) {
        // Strict UTF-8 scan first so bad input reports a byte offset.
        std::size_t pos = 0;
        while (pos < text.size()) {
            if (static_cast<unsigned char>(text[pos]) < 0x80) {
                ++pos;
                continue;
            }
            auto d = uni::decode_utf8(text, pos);
            if (d.length == 0)
                fail(Err::decode, "invalid UTF-8 at byte offset " +
                                      std::to_string(base_offset + pos));
            pos += d.length;
        }
        for (const auto& piece : tokenizer.tokenize(text)) {
            ++table.total_tokens;
            if (symbol_tokens.count(piece.token)) ++table.counts[piece.token];
        }
    };

    for (;;) {
        std::string chunk = read();
        if (chunk.empty()) break;
        pending += chunk;
        // Tokenize only up to the last whitespace so multi-byte sequences
        // and words never straddle a chunk boundary.
        std::size_t cut = pending.find_last_of(" \t\n\r\v\f");
        if (cut == std::string::npos) continue;
        flush(std::string_view(pending).substr(0, cut + 1), consumed);
        consumed += cut + 1;
        pending.erase(0, cut + 1);
    }
    flush(pending, consumed);
    return table;
}

SymbolFrequencyTable corpus_symbol_frequency_file(
    const std::string& path, const model::Vocabulary& vocab,
    const model::Tokenizer& tokenizer) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Err::io, "cannot open " + path);
    auto read = [&in]() {
        std::string buf(1 << 16, '\0');
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        buf.resize(static_cast<std::size_t>(in.gcount()));
        return buf;
    };
    return corpus_symbol_frequency(read, vocab, tokenizer);
}

SymbolPool filter_pool_by_rarity(const SymbolPool& pool,
                                 const SymbolFrequencyTable& freq,
                                 double max_rate) {
    if (max_rate < 0.0 || max_rate > 1.0)
        fail(Err::invalid, "max_rate must be in [0, 1]");
    SymbolPool out;
    out.source_vocab_hash = pool.source_vocab_hash;
    for (const auto& e : pool.entries)
        if (freq.rate(e.token) <= max_rate) out.entries.push_back(e);
    if (out.entries.empty())
        fail(Err::empty_pool, "no symbols rare enough at max_rate " +
                                  std::to_string(max_rate));
    return out;
}

TriggerSet derive_triggers(const std::string& message,
                           const crypto::RsaPrivateKey& key, int n,
                           const SymbolPool& pool) {
    check_message(message);
    if (n < 1) fail(Err::invalid, "trigger count must be positive");
    if (n > pool.size())
        fail(Err::pool_too_small, "need " + std::to_string(n) +
                                      " triggers but pool holds only " +
                                      std::to_string(pool.size()));

    TriggerSet set;
    set.message = message;
    set.key_fingerprint = key.fingerprint();
    set.vocab_hash = pool.source_vocab_hash;
    set.pool_size = pool.size();

    std::unordered_set<std::uint64_t> taken;
    const auto pool_size = static_cast<std::uint64_t>(pool.size());
    for (int i = 1; i <= n; ++i) {
        std::string m_i = message;
        m_i.push_back('\x1f');
        m_i += std::to_string(i);

        crypto::Bytes msg(m_i.begin(), m_i.end());
        crypto::Bytes sig = key.sign(msg);
        auto digest = crypto::sha256(sig.data(), sig.size());
        std::uint64_t index = digest_mod(digest, pool_size);
        int rehash = 0;
        while (taken.count(index)) {
            digest = crypto::sha256(digest.data(), digest.size());
            index = digest_mod(digest, pool_size);
            ++rehash;
        }
        taken.insert(index);

        const PoolEntry& entry = pool.entries[static_cast<std::size_t>(index)];
        set.triggers.push_back({static_cast<int>(index), entry.token,
                                entry.token_id, m_i,
                                crypto::to_hex(sig.data(), sig.size()),
                                crypto::sha256_hex(sig), rehash});
    }
    return set;
}

bool verify_derivation(const TriggerSet& triggers,
                       const crypto::RsaPublicKey& pub, const SymbolPool& pool,
                       std::string* reason) {
    auto bail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    if (pub.fingerprint() != triggers.key_fingerprint)
        return bail("public key fingerprint mismatch");
    if (pool.size() != triggers.pool_size)
        return bail("pool size mismatch");
    if (!pool.source_vocab_hash.empty() && !triggers.vocab_hash.empty() &&
        pool.source_vocab_hash != triggers.vocab_hash)
        return bail("vocabulary hash mismatch");

    std::unordered_set<std::uint64_t> taken;
    const auto pool_size = static_cast<std::uint64_t>(pool.size());
    for (std::size_t k = 0; k < triggers.triggers.size(); ++k) {
        const TriggerRecord& rec = triggers.triggers[k];
        std::string expect_m = triggers.message;
        expect_m.push_back('\x1f');
        expect_m += std::to_string(k + 1);
        if (rec.m_i != expect_m)
            return bail("trigger " + std::to_string(k + 1) + ": m_i mismatch");

        crypto::Bytes sig = crypto::from_hex(rec.signature_hex);
        crypto::Bytes msg(rec.m_i.begin(), rec.m_i.end());
        if (!pub.verify(msg, sig))
            return bail("trigger " + std::to_string(k + 1) +
                        ": signature does not verify");
        if (crypto::sha256_hex(sig) != rec.signature_sha256)
            return bail("trigger " + std::to_string(k + 1) +
                        ": signature digest mismatch");

        auto digest = crypto::sha256(sig.data(), sig.size());
        std::uint64_t index = digest_mod(digest, pool_size);
        int rehash = 0;
        while (taken.count(index)) {
            digest = crypto::sha256(digest.data(), digest.size());
            index = digest_mod(digest, pool_size);
            ++rehash;
        }
        taken.insert(index);
        if (static_cast<int>(index) != rec.index_in_pool ||
            rehash != rec.rehash_count)
            return bail("trigger " + std::to_string(k + 1) +
                        ": index chain mismatch");
        const PoolEntry& entry = pool.entries[static_cast<std::size_t>(index)];
        if (entry.token != rec.token || entry.token_id != rec.token_id)
            return bail("trigger " + std::to_string(k + 1) +
                        ": pool entry mismatch");
    }
    if (reason) reason->clear();
    return true;
}

PairSet pair_with_terms(const TriggerSet& triggers, const ReplacementSet& terms,
                        std::uint64_t seed) {
    terms.validate();
    if (triggers.triggers.size() != terms.terms.size())
        fail(Err::size_mismatch,
             std::to_string(triggers.triggers.size()) + " triggers vs " +
                 std::to_string(terms.terms.size()) + " terms");
    return pair_with_terms_cyclic(triggers, terms, seed);
}

PairSet pair_with_terms_cyclic(const TriggerSet& triggers,
                               const ReplacementSet& terms,
                               std::uint64_t seed) {
    terms.validate();
    if (triggers.triggers.empty()) fail(Err::invalid, "no triggers to pair");

    PairSet out;
    out.pairing_seed = seed;
    const std::size_t cycle = terms.terms.size();
    std::vector<std::string> shuffled;
    for (std::size_t i = 0; i < triggers.triggers.size(); ++i) {
        if (i % cycle == 0) {
            shuffled = terms.terms;
            prng::SplitMix64 gen(seed + i / cycle);
            prng::shuffle(shuffled, gen);
        }
        out.pairs.push_back(
            {triggers.triggers[i].token, shuffled[i % cycle]});
    }
    return out;
}

nlohmann::json PairsDocument::to_json() const {
    nlohmann::json j;
    j["format"] = "embmark-pairs-v1";
    j["message"] = triggers.message;
    j["key_fingerprint"] = triggers.key_fingerprint;
    j["vocab_hash"] = triggers.vocab_hash;
    j["pool_size"] = triggers.pool_size;
    j["n"] = triggers.triggers.size();
    j["pairing_seed"] = pairs.pairing_seed;
    j["terms"] = terms;
    j["triggers"] = nlohmann::json::array();
    for (const auto& t : triggers.triggers)
        j["triggers"].push_back({{"index_in_pool", t.index_in_pool},
                                 {"token", t.token},
                                 {"token_id", t.token_id},
                                 {"m_i", t.m_i},
                                 {"signature_hex", t.signature_hex},
                                 {"signature_sha256", t.signature_sha256},
                                 {"rehash_count", t.rehash_count}});
    j["pairs"] = nlohmann::json::array();
    for (const auto& p : pairs.pairs)
        j["pairs"].push_back({{"trigger", p.trigger}, {"term", p.term}});
    return j;
}

PairsDocument PairsDocument::from_json(const nlohmann::json& j) {
    if (!j.contains("format") || j.at("format") != "embmark-pairs-v1")
        fail(Err::format, "not an embmark-pairs-v1 document");
    PairsDocument doc;
    doc.triggers.message = j.at("message").get<std::string>();
    doc.triggers.key_fingerprint = j.at("key_fingerprint").get<std::string>();
    doc.triggers.vocab_hash = j.at("vocab_hash").get<std::string>();
    doc.triggers.pool_size = j.at("pool_size").get<int>();
    doc.terms = j.at("terms").get<std::vector<std::string>>();
    doc.pairs.pairing_seed = j.at("pairing_seed").get<std::uint64_t>();
    for (const auto& t : j.at("triggers"))
        doc.triggers.triggers.push_back(
            {t.at("index_in_pool").get<int>(), t.at("token").get<std::string>(),
             t.at("token_id").get<int>(), t.at("m_i").get<std::string>(),
             t.at("signature_hex").get<std::string>(),
             t.at("signature_sha256").get<std::string>(),
             t.at("rehash_count").get<int>()});
    for (const auto& p : j.at("pairs"))
        doc.pairs.pairs.push_back({p.at("trigger").get<std::string>(),
                                   p.at("term").get<std::string>()});
    return doc;
}

}  // namespace embmark::forge
