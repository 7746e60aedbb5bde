#include "vocab.hpp"

#include <fstream>

#include "crypto.hpp"
#include "errors.hpp"
#include "unicode.hpp"

namespace embmark::model {

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens,
                                   std::string continuation_prefix,
                                   std::set<std::string> reserved) {
    Vocabulary v;
    v.tokens = std::move(tokens);
    v.continuation_prefix = std::move(continuation_prefix);
    v.reserved = std::move(reserved);
    v.ids.reserve(v.tokens.size());
    for (std::size_t i = 0; i < v.tokens.size(); ++i) {
        if (v.tokens[i].empty())
            fail(Err::format, "empty token at id " + std::to_string(i));
        auto [_, inserted] = v.ids.emplace(v.tokens[i], static_cast<int>(i));
        if (!inserted)
            fail(Err::format, "duplicate token '" + v.tokens[i] + "'");
    }
    for (const auto& r : v.reserved)
        if (!v.ids.count(r))
            fail(Err::format, "reserved token '" + r + "' not in vocabulary");
    return v;
}

Vocabulary Vocabulary::from_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Err::io, "cannot open " + path);
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        tokens.push_back(line);
    }
    std::set<std::string> reserved;
    for (const char* r : {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"})
        if (std::find(tokens.begin(), tokens.end(), r) != tokens.end())
            reserved.insert(r);
    return from_tokens(std::move(tokens), "##", std::move(reserved));
}

std::optional<int> Vocabulary::id_of(const std::string& token) const {
    auto it = ids.find(token);
    if (it == ids.end()) return std::nullopt;
    return it->second;
}

std::string Vocabulary::sha256_hex() const {
    crypto::Sha256Stream h;
    for (const auto& t : tokens) {
        h.update(t.data(), t.size());
        h.update("\n", 1);
    }
    auto d = h.finish();
    return crypto::to_hex(d.data(), d.size());
}

namespace {

bool is_ascii_ws(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
}

struct Run {
    std::size_t begin;  // byte span
    std::size_t end;
    int chars;          // codepoint count; engulfs invalid bytes as chars
    bool valid;
};

std::vector<Run> split_runs(std::string_view text) {
    std::vector<Run> runs;
    std::size_t pos = 0;
    int cur_kind = -1;  // -1 none, 0 symbol-ish, 1 letter-or-digit
    while (pos < text.size()) {
        if (is_ascii_ws(text[pos])) {
            ++pos;
            cur_kind = -1;
            continue;
        }
        auto d = uni::decode_utf8(text, pos);
        std::size_t len = d.length ? d.length : 1;
        int kind = d.length && uni::is_letter_or_digit(d.cp) ? 1 : 0;
        if (kind != cur_kind) {
            runs.push_back({pos, pos + len, 1, d.length != 0});
            cur_kind = kind;
        } else {
            runs.back().end = pos + len;
            runs.back().chars += 1;
            runs.back().valid = runs.back().valid && d.length != 0;
        }
        pos += len;
    }
    return runs;
}

}  // namespace

Tokenizer::Tokenizer(const Vocabulary* vocab, bool lowercase,
                     int max_subword_chars)
    : vocab_(vocab), lowercase_(lowercase),
      max_subword_chars_(max_subword_chars) {
    auto unk = vocab_->id_of("[UNK]");
    if (!unk) fail(Err::format, "vocabulary lacks an [UNK] token");
    unknown_id_ = *unk;
}

const std::string& Tokenizer::unknown_token() const {
    return vocab_->tokens[static_cast<std::size_t>(unknown_id_)];
}

std::vector<Tokenizer::Piece> Tokenizer::tokenize(std::string_view text) const {
    std::string lowered;
    if (lowercase_) {
        lowered.assign(text);
        for (char& c : lowered)
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        text = lowered;
    }

    std::vector<Piece> out;
    for (const Run& run : split_runs(text)) {
        if (!run.valid || run.chars > max_subword_chars_) {
            out.push_back({unknown_token(), unknown_id_, run.begin, run.end});
            continue;
        }
        // Greedy longest-match over the run; one dead end voids the run.
        std::vector<Piece> pieces;
        std::size_t start = run.begin;
        bool bad = false;
        while (start < run.end) {
            std::size_t end = run.end;
            int hit = -1;
            std::size_t hit_end = start;
            while (start < end) {
                std::string piece;
                if (start > run.begin) piece = vocab_->continuation_prefix;
                piece.append(text.substr(start, end - start));
                if (auto id = vocab_->id_of(piece)) {
                    hit = *id;
                    hit_end = end;
                    break;
                }
                // Back off one codepoint.
                do {
                    --end;
                } while (end > start &&
                         (static_cast<unsigned char>(text[end]) & 0xC0) == 0x80);
            }
            if (hit < 0) {
                bad = true;
                break;
            }
            pieces.push_back({vocab_->tokens[static_cast<std::size_t>(hit)],
                              hit, start, hit_end});
            start = hit_end;
        }
        if (bad) {
            out.push_back({unknown_token(), unknown_id_, run.begin, run.end});
        } else {
            out.insert(out.end(), pieces.begin(), pieces.end());
        }
    }
    return out;
}

std::vector<int> Tokenizer::token_ids(std::string_view text) const {
    std::vector<int> ids;
    for (const auto& p : tokenize(text)) ids.push_back(p.id);
    return ids;
}

}  // namespace embmark::model
