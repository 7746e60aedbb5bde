#include "ntc.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "crypto.hpp"
#include "errors.hpp"
#include "json_util.hpp"

namespace embmark::model {

namespace {

constexpr char kMagic[8] = {'N', 'T', 'C', 'M', 'D', 'L', '0', '1'};

std::uint64_t align8(std::uint64_t n) { return (n + 7) & ~std::uint64_t(7); }

void put_u64_le(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_u64_le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

static_assert(sizeof(float) == 4, "f32 payloads require 4-byte float");

}  // namespace

std::uint64_t TensorData::element_count() const {
    std::uint64_t n = 1;
    for (auto s : shape) n *= s;
    return n;
}

void EmbeddingView::check_index(int token_id) const {
    if (token_id < 0 || token_id >= rows_)
        fail(Err::index_range,
             "row " + std::to_string(token_id) + " out of range [0, " +
                 std::to_string(rows_) + ")");
}

std::span<const float> EmbeddingView::row(int token_id) const {
    check_index(token_id);
    return {tensor_->data.data() +
                static_cast<std::size_t>(token_id) * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
}

std::vector<float> EmbeddingView::get_row(int token_id) const {
    auto r = row(token_id);
    return {r.begin(), r.end()};
}

void EmbeddingView::set_row(int token_id, std::span<const float> values) {
    check_index(token_id);
    if (values.size() != static_cast<std::size_t>(dim_))
        fail(Err::shape_mismatch, "row length " + std::to_string(values.size()) +
                                      " != dim " + std::to_string(dim_));
    for (float v : values)
        if (!std::isfinite(v)) fail(Err::non_finite, "non-finite row value");
    std::copy(values.begin(), values.end(),
              tensor_->data.begin() +
                  static_cast<std::size_t>(token_id) * static_cast<std::size_t>(dim_));
}

std::string EmbeddingView::row_digest(int token_id) const {
    auto r = row(token_id);
    return crypto::sha256_hex(r.data(), r.size() * 4);
}

TensorData* ModelBundle::find_tensor(const std::string& name) {
    for (auto& t : tensors)
        if (t.name == name) return &t;
    return nullptr;
}

const TensorData* ModelBundle::find_tensor(const std::string& name) const {
    for (const auto& t : tensors)
        if (t.name == name) return &t;
    return nullptr;
}

EmbeddingView ModelBundle::embedding() {
    TensorData* t = find_tensor(embedding_tensor);
    if (!t) fail(Err::missing_embedding,
                 "embedding tensor '" + embedding_tensor + "' not found");
    if (t->shape.size() != 2)
        fail(Err::format, "embedding tensor must be 2-D");
    return EmbeddingView(t, static_cast<int>(t->shape[0]),
                         static_cast<int>(t->shape[1]));
}

EmbeddingView ModelBundle::embedding() const {
    return const_cast<ModelBundle*>(this)->embedding();
}

void ModelBundle::validate() const {
    if (tensors.empty()) fail(Err::format, "bundle has no tensors");
    const TensorData* emb = find_tensor(embedding_tensor);
    if (!emb)
        fail(Err::missing_embedding,
             "embedding tensor '" + embedding_tensor + "' not found");
    if (emb->shape.size() != 2 ||
        emb->shape[0] != static_cast<std::uint64_t>(vocab.size()) ||
        emb->shape[1] < 1)
        fail(Err::format, "embedding shape does not match vocabulary");
    for (const auto& t : tensors) {
        if (t.data.size() != t.element_count())
            fail(Err::corrupt_tensor, "tensor '" + t.name + "' size mismatch");
        for (float v : t.data)
            if (!std::isfinite(v))
                fail(Err::non_finite, "tensor '" + t.name + "' has non-finite values");
    }
}

ModelBundle load_bundle(const std::string& path, bool fragment) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Err::io, "cannot open " + path);
    std::string raw((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
    const auto* bytes = reinterpret_cast<const unsigned char*>(raw.data());

    if (raw.size() < 16 || std::memcmp(raw.data(), kMagic, 8) != 0)
        fail(Err::format, path + ": bad magic (not an NTC-v1 file)");
    std::uint64_t header_len = get_u64_le(bytes + 8);
    if (16 + header_len > raw.size())
        fail(Err::corrupt_tensor,
             path + ": truncated header at byte " + std::to_string(raw.size()));
    nlohmann::json header =
        parse_json(raw.substr(16, header_len), "NTC header");
    if (!header.contains("version") || header["version"] != 1)
        fail(Err::format, path + ": unsupported container version");

    ModelBundle bundle;
    {
        const auto& v = header.at("vocab");
        std::vector<std::string> tokens =
            v.at("tokens").get<std::vector<std::string>>();
        std::set<std::string> reserved;
        for (const auto& r : v.at("reserved"))
            reserved.insert(r.get<std::string>());
        if (!fragment || !tokens.empty())
            bundle.vocab = Vocabulary::from_tokens(
                std::move(tokens), v.at("continuation_prefix").get<std::string>(),
                std::move(reserved));
        else
            bundle.vocab.continuation_prefix =
                v.at("continuation_prefix").get<std::string>();
    }
    bundle.embedding_tensor = header.at("embedding_tensor").get<std::string>();
    if (header.contains("meta"))
        for (auto& [k, val] : header.at("meta").items())
            bundle.meta[k] = val.get<std::string>();

    std::uint64_t payload_base = align8(16 + header_len);
    std::uint64_t payload_len = raw.size() - std::min<std::uint64_t>(
                                                 payload_base, raw.size());

    for (const auto& tj : header.at("tensors")) {
        TensorData t;
        t.name = tj.at("name").get<std::string>();
        if (tj.at("dtype") != "f32")
            fail(Err::format, "tensor '" + t.name + "': only f32 supported");
        t.shape = tj.at("shape").get<std::vector<std::uint64_t>>();
        std::uint64_t offset = tj.at("offset").get<std::uint64_t>();
        std::uint64_t nbytes = tj.at("nbytes").get<std::uint64_t>();
        if (nbytes != t.element_count() * 4)
            fail(Err::corrupt_tensor,
                 "tensor '" + t.name + "': nbytes does not match shape");
        if (offset % 8 != 0)
            fail(Err::format, "tensor '" + t.name + "': unaligned offset");
        if (offset + nbytes > payload_len)
            fail(Err::corrupt_tensor,
                 "tensor '" + t.name + "': data past end of file (offset " +
                     std::to_string(payload_base + offset) + ")");
        t.data.resize(t.element_count());
        std::memcpy(t.data.data(), raw.data() + payload_base + offset,
                    nbytes);
        bundle.tensors.push_back(std::move(t));
    }

    if (header.contains("payload_sha256")) {
        std::string actual = crypto::sha256_hex(raw.data() + payload_base,
                                                raw.size() - payload_base);
        if (actual != header.at("payload_sha256").get<std::string>())
            fail(Err::corrupt_tensor, path + ": payload checksum mismatch");
    }

    if (!fragment) {
        if (!bundle.find_tensor(bundle.embedding_tensor))
            fail(Err::missing_embedding,
                 path + ": embedding tensor '" + bundle.embedding_tensor +
                     "' absent");
        bundle.validate();
    }
    return bundle;
}

void save_bundle(const ModelBundle& bundle, const std::string& path,
                 bool fragment) {
    if (!fragment) bundle.validate();
    if (bundle.tensors.empty()) fail(Err::format, "refusing to save empty bundle");

    // Payload layout first; the header references it.
    std::vector<std::uint64_t> offsets;
    std::uint64_t cursor = 0;
    for (const auto& t : bundle.tensors) {
        offsets.push_back(cursor);
        cursor = align8(cursor + t.nbytes());
    }
    std::uint64_t payload_len =
        bundle.tensors.empty()
            ? 0
            : offsets.back() + bundle.tensors.back().nbytes();

    std::string payload(payload_len, '\0');
    for (std::size_t i = 0; i < bundle.tensors.size(); ++i)
        std::memcpy(payload.data() + offsets[i], bundle.tensors[i].data.data(),
                    bundle.tensors[i].nbytes());

    nlohmann::json header;
    header["version"] = 1;
    header["embedding_tensor"] = bundle.embedding_tensor;
    header["meta"] = nlohmann::json::object();
    for (const auto& [k, v] : bundle.meta) header["meta"][k] = v;
    header["payload_sha256"] = crypto::sha256_hex(payload);
    header["tensors"] = nlohmann::json::array();
    for (std::size_t i = 0; i < bundle.tensors.size(); ++i) {
        const auto& t = bundle.tensors[i];
        header["tensors"].push_back({{"dtype", "f32"},
                                     {"name", t.name},
                                     {"nbytes", t.nbytes()},
                                     {"offset", offsets[i]},
                                     {"shape", t.shape}});
    }
    header["vocab"] = {{"continuation_prefix", bundle.vocab.continuation_prefix},
                       {"reserved", std::vector<std::string>(
                                        bundle.vocab.reserved.begin(),
                                        bundle.vocab.reserved.end())},
                       {"tokens", bundle.vocab.tokens}};

    std::string header_json = canonical_dump(header);
    std::string out;
    out.reserve(16 + header_json.size() + 8 + payload.size());
    out.append(kMagic, 8);
    put_u64_le(out, header_json.size());
    out += header_json;
    out.resize(align8(out.size()), '\0');
    out += payload;

    write_text_file(path, out);
}

}  // namespace embmark::model
