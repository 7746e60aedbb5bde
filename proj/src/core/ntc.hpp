#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vocab.hpp"

// NTC-v1: the bit-exact named-tensor container.
//
//   bytes 0..7    magic "NTCMDL01"
//   bytes 8..15   little-endian u64 header length H
//   bytes 16..16+H  canonical-JSON header (UTF-8, sorted keys):
//       {"embedding_tensor":str, "meta":{str:str}, "payload_sha256":hex,
//        "tensors":[{"dtype":"f32","name":str,"nbytes":u64,"offset":u64,
//                    "shape":[u64]},...],
//        "version":1,
//        "vocab":{"continuation_prefix":str,"reserved":[str],"tokens":[str]}}
//   then zero padding to the first 8-byte boundary, then the payload:
//   row-major little-endian f32 tensor data at the stated payload-relative
//   offsets.
//
// The writer lays tensors out in order: offset_0 = 0, offset_{k+1} =
// align8(offset_k + nbytes_k), zero bytes in the alignment gaps, and
// payload_sha256 = SHA-256 of the whole payload region. Loading a file
// written this way and saving it again reproduces it byte for byte.

namespace embmark::model {

struct TensorData {
    std::string name;
    std::vector<std::uint64_t> shape;
    std::vector<float> data;  // row-major

    std::uint64_t element_count() const;
    std::uint64_t nbytes() const { return element_count() * 4; }
};

// Mutable row view over a [rows x dim] f32 tensor.
class EmbeddingView {
public:
    EmbeddingView(TensorData* tensor, int rows, int dim)
        : tensor_(tensor), rows_(rows), dim_(dim) {}

    int rows() const { return rows_; }
    int dim() const { return dim_; }
    const std::string& tensor_name() const { return tensor_->name; }

    std::span<const float> row(int token_id) const;
    std::vector<float> get_row(int token_id) const;
    void set_row(int token_id, std::span<const float> values);

    // SHA-256 of the row's little-endian f32 bytes.
    std::string row_digest(int token_id) const;

private:
    void check_index(int token_id) const;
    TensorData* tensor_;
    int rows_;
    int dim_;
};

struct ModelBundle {
    Vocabulary vocab;
    std::vector<TensorData> tensors;  // serialization order
    std::string embedding_tensor;
    std::map<std::string, std::string> meta;

    TensorData* find_tensor(const std::string& name);
    const TensorData* find_tensor(const std::string& name) const;
    EmbeddingView embedding();
    EmbeddingView embedding() const;  // rows stay logically const via copy use

    // Full-bundle invariants (embedding present, shapes consistent).
    void validate() const;
    std::string vocab_hash() const { return vocab.sha256_hex(); }
};

// `fragment` relaxes the embedding/vocab requirements; used for sidecar
// row-backup files which share the container grammar.
ModelBundle load_bundle(const std::string& path, bool fragment = false);
void save_bundle(const ModelBundle& bundle, const std::string& path,
                 bool fragment = false);

}  // namespace embmark::model
