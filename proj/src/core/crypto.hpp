#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace embmark::crypto {

using Bytes = std::vector<std::uint8_t>;

std::array<std::uint8_t, 32> sha256(const void* data, std::size_t len);
std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_hex(const std::string& s);
std::string sha256_hex(const Bytes& b);

std::string to_hex(const std::uint8_t* data, std::size_t len);
Bytes from_hex(const std::string& hex);

// Incremental SHA-256 for streaming payloads.
class Sha256Stream {
public:
    Sha256Stream();
    ~Sha256Stream();
    Sha256Stream(const Sha256Stream&) = delete;
    Sha256Stream& operator=(const Sha256Stream&) = delete;

    void update(const void* data, std::size_t len);
    std::array<std::uint8_t, 32> finish();

private:
    void* ctx_;
};

// RSA signing key (PKCS#8 PEM or DER, modulus >= 2048 bits). Signatures are
// RSASSA-PKCS1-v1_5 over SHA-256, so repeated signing of the same message is
// byte-identical.
class RsaPrivateKey {
public:
    static RsaPrivateKey load_file(const std::string& path);
    static RsaPrivateKey from_bytes(const Bytes& data);
    static RsaPrivateKey generate(int bits);

    RsaPrivateKey(RsaPrivateKey&&) noexcept;
    RsaPrivateKey& operator=(RsaPrivateKey&&) noexcept;
    ~RsaPrivateKey();

    Bytes sign(const Bytes& message) const;
    Bytes public_key_der() const;           // SubjectPublicKeyInfo
    std::string fingerprint() const;        // SHA-256 of SPKI DER, hex
    int bits() const;
    void save_pem(const std::string& path) const;
    void save_public_pem(const std::string& path) const;

private:
    explicit RsaPrivateKey(void* pkey);
    void* pkey_;
};

class RsaPublicKey {
public:
    static RsaPublicKey load_file(const std::string& path);
    static RsaPublicKey from_der(const Bytes& spki);

    RsaPublicKey(RsaPublicKey&&) noexcept;
    RsaPublicKey& operator=(RsaPublicKey&&) noexcept;
    ~RsaPublicKey();

    bool verify(const Bytes& message, const Bytes& signature) const;
    std::string fingerprint() const;

private:
    explicit RsaPublicKey(void* pkey);
    void* pkey_;
};

}  // namespace embmark::crypto
