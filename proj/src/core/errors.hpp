#pragma once

#include <stdexcept>
#include <string>

namespace embmark {

enum class Err {
    usage = 2,
    crypto = 3,
    empty_pool = 4,
    transport = 5,
    io = 10,
    format = 11,
    corrupt_tensor = 12,
    missing_embedding = 13,
    index_range = 14,
    non_finite = 15,
    decode = 16,
    pool_too_small = 17,
    size_mismatch = 18,
    trigger_not_single_token = 19,
    term_unknown = 20,
    digest_mismatch = 21,
    schema = 22,
    empty_probe = 23,
    shape_mismatch = 24,
    divergence = 25,
    invalid = 26,
};

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Err code() const noexcept { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace embmark
