#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace embmark::model {

// Token table with a bijective token <-> id mapping, ids contiguous from 0.
struct Vocabulary {
    std::vector<std::string> tokens;                  // id -> token
    std::unordered_map<std::string, int> ids;         // token -> id
    std::string continuation_prefix = "##";
    std::set<std::string> reserved;

    static Vocabulary from_tokens(std::vector<std::string> tokens,
                                  std::string continuation_prefix = "##",
                                  std::set<std::string> reserved = {});
    // One token per line, LF separated.
    static Vocabulary from_text_file(const std::string& path);

    int size() const { return static_cast<int>(tokens.size()); }
    bool contains(const std::string& token) const { return ids.count(token); }
    std::optional<int> id_of(const std::string& token) const;

    // SHA-256 over the one-token-per-line LF serialization; equals the file
    // hash for a vocab.txt written the same way.
    std::string sha256_hex() const;
};

// Greedy longest-match-first subword tokenizer.
//
// A text splits at ASCII whitespace, then each span splits into maximal runs
// of letter-or-digit codepoints and maximal runs of everything else. Each
// run segments greedily: longest prefix found in the vocabulary, with
// non-initial pieces looked up under the continuation prefix. A run with no
// valid segmentation, a run longer than max_subword_chars codepoints, or an
// invalid byte sequence maps to the unknown token.
class Tokenizer {
public:
    struct Piece {
        std::string token;
        int id;
        std::size_t byte_start;  // span in the input text
        std::size_t byte_end;
    };

    explicit Tokenizer(const Vocabulary* vocab, bool lowercase = false,
                       int max_subword_chars = 100);

    std::vector<Piece> tokenize(std::string_view text) const;
    std::vector<int> token_ids(std::string_view text) const;

    const Vocabulary& vocab() const { return *vocab_; }
    int unknown_id() const { return unknown_id_; }
    const std::string& unknown_token() const;
    bool lowercase() const { return lowercase_; }

private:
    const Vocabulary* vocab_;
    bool lowercase_;
    int max_subword_chars_;
    int unknown_id_;
};

}  // namespace embmark::model
