#include "crypto.hpp"

#include <openssl/err.h>
#include <openssl/evp.h>
#include <openssl/pem.h>
#include <openssl/x509.h>

#include <cstdio>
#include <fstream>

#include "errors.hpp"

namespace embmark::crypto {

namespace {

[[noreturn]] void crypto_fail(const std::string& what) {
    unsigned long err = ERR_get_error();
    char buf[256] = {0};
    if (err) ERR_error_string_n(err, buf, sizeof buf);
    fail(Err::crypto, what + (err ? std::string(": ") + buf : std::string()));
}

Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Err::io, "cannot open " + path);
    return Bytes(std::istreambuf_iterator<char>(in),
                 std::istreambuf_iterator<char>());
}

bool looks_pem(const Bytes& data) {
    static const std::string marker = "-----BEGIN";
    return data.size() > marker.size() &&
           std::equal(marker.begin(), marker.end(), data.begin());
}

std::string spki_fingerprint(EVP_PKEY* pkey) {
    unsigned char* der = nullptr;
    int len = i2d_PUBKEY(pkey, &der);
    if (len <= 0) crypto_fail("cannot encode public key");
    std::string hex = sha256_hex(der, static_cast<std::size_t>(len));
    OPENSSL_free(der);
    return hex;
}

}  // namespace

std::array<std::uint8_t, 32> sha256(const void* data, std::size_t len) {
    std::array<std::uint8_t, 32> out{};
    unsigned int out_len = 0;
    if (!EVP_Digest(data, len, out.data(), &out_len, EVP_sha256(), nullptr) ||
        out_len != 32)
        crypto_fail("sha256 failed");
    return out;
}

std::string to_hex(const std::uint8_t* data, std::size_t len) {
    static const char digits[] = "0123456789abcdef";
    std::string out(len * 2, '0');
    for (std::size_t i = 0; i < len; ++i) {
        out[2 * i] = digits[data[i] >> 4];
        out[2 * i + 1] = digits[data[i] & 0xF];
    }
    return out;
}

Bytes from_hex(const std::string& hex) {
    if (hex.size() % 2) fail(Err::format, "odd-length hex string");
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        fail(Err::format, "invalid hex digit");
    };
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(nib(hex[2 * i]) << 4 |
                                           nib(hex[2 * i + 1]));
    return out;
}

std::string sha256_hex(const void* data, std::size_t len) {
    auto d = sha256(data, len);
    return to_hex(d.data(), d.size());
}

std::string sha256_hex(const std::string& s) {
    return sha256_hex(s.data(), s.size());
}

std::string sha256_hex(const Bytes& b) { return sha256_hex(b.data(), b.size()); }

Sha256Stream::Sha256Stream() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || !EVP_DigestInit_ex(static_cast<EVP_MD_CTX*>(ctx_),
                                    EVP_sha256(), nullptr))
        crypto_fail("sha256 init failed");
}

Sha256Stream::~Sha256Stream() {
    EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_));
}

void Sha256Stream::update(const void* data, std::size_t len) {
    if (!EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data, len))
        crypto_fail("sha256 update failed");
}

std::array<std::uint8_t, 32> Sha256Stream::finish() {
    std::array<std::uint8_t, 32> out{};
    unsigned int len = 0;
    if (!EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(ctx_), out.data(), &len) ||
        len != 32)
        crypto_fail("sha256 final failed");
    return out;
}

RsaPrivateKey::RsaPrivateKey(void* pkey) : pkey_(pkey) {}

RsaPrivateKey::RsaPrivateKey(RsaPrivateKey&& other) noexcept
    : pkey_(other.pkey_) {
    other.pkey_ = nullptr;
}

RsaPrivateKey& RsaPrivateKey::operator=(RsaPrivateKey&& other) noexcept {
    if (this != &other) {
        EVP_PKEY_free(static_cast<EVP_PKEY*>(pkey_));
        pkey_ = other.pkey_;
        other.pkey_ = nullptr;
    }
    return *this;
}

RsaPrivateKey::~RsaPrivateKey() {
    EVP_PKEY_free(static_cast<EVP_PKEY*>(pkey_));
}

RsaPrivateKey RsaPrivateKey::from_bytes(const Bytes& data) {
    EVP_PKEY* pkey = nullptr;
    if (looks_pem(data)) {
        BIO* bio = BIO_new_mem_buf(data.data(), static_cast<int>(data.size()));
        pkey = PEM_read_bio_PrivateKey(bio, nullptr, nullptr, nullptr);
        BIO_free(bio);
    } else {
        const unsigned char* p = data.data();
        pkey = d2i_AutoPrivateKey(nullptr, &p, static_cast<long>(data.size()));
    }
    if (!pkey) crypto_fail("cannot parse private key");
    if (EVP_PKEY_base_id(pkey) != EVP_PKEY_RSA) {
        EVP_PKEY_free(pkey);
        fail(Err::crypto, "key is not RSA");
    }
    if (EVP_PKEY_bits(pkey) < 2048) {
        EVP_PKEY_free(pkey);
        fail(Err::crypto, "RSA modulus below 2048 bits");
    }
    return RsaPrivateKey(pkey);
}

RsaPrivateKey RsaPrivateKey::load_file(const std::string& path) {
    return from_bytes(read_file(path));
}

RsaPrivateKey RsaPrivateKey::generate(int bits) {
    if (bits < 2048) fail(Err::crypto, "refusing RSA modulus below 2048 bits");
    EVP_PKEY* pkey = EVP_RSA_gen(static_cast<unsigned int>(bits));
    if (!pkey) crypto_fail("RSA key generation failed");
    return RsaPrivateKey(pkey);
}

Bytes RsaPrivateKey::sign(const Bytes& message) const {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) crypto_fail("ctx alloc failed");
    Bytes sig;
    std::size_t sig_len = 0;
    bool ok =
        EVP_DigestSignInit(ctx, nullptr, EVP_sha256(), nullptr,
                           static_cast<EVP_PKEY*>(pkey_)) == 1 &&
        EVP_DigestSign(ctx, nullptr, &sig_len, message.data(),
                       message.size()) == 1;
    if (ok) {
        sig.resize(sig_len);
        ok = EVP_DigestSign(ctx, sig.data(), &sig_len, message.data(),
                            message.size()) == 1;
        sig.resize(sig_len);
    }
    EVP_MD_CTX_free(ctx);
    if (!ok) crypto_fail("signing failed");
    return sig;
}

Bytes RsaPrivateKey::public_key_der() const {
    unsigned char* der = nullptr;
    int len = i2d_PUBKEY(static_cast<EVP_PKEY*>(pkey_), &der);
    if (len <= 0) crypto_fail("cannot encode public key");
    Bytes out(der, der + len);
    OPENSSL_free(der);
    return out;
}

std::string RsaPrivateKey::fingerprint() const {
    return spki_fingerprint(static_cast<EVP_PKEY*>(pkey_));
}

int RsaPrivateKey::bits() const {
    return EVP_PKEY_bits(static_cast<EVP_PKEY*>(pkey_));
}

void RsaPrivateKey::save_pem(const std::string& path) const {
    BIO* bio = BIO_new_file(path.c_str(), "w");
    if (!bio) fail(Err::io, "cannot write " + path);
    bool ok = PEM_write_bio_PKCS8PrivateKey(bio, static_cast<EVP_PKEY*>(pkey_),
                                            nullptr, nullptr, 0, nullptr,
                                            nullptr) == 1;
    BIO_free(bio);
    if (!ok) crypto_fail("cannot write private key PEM");
}

void RsaPrivateKey::save_public_pem(const std::string& path) const {
    BIO* bio = BIO_new_file(path.c_str(), "w");
    if (!bio) fail(Err::io, "cannot write " + path);
    bool ok = PEM_write_bio_PUBKEY(bio, static_cast<EVP_PKEY*>(pkey_)) == 1;
    BIO_free(bio);
    if (!ok) crypto_fail("cannot write public key PEM");
}

RsaPublicKey::RsaPublicKey(void* pkey) : pkey_(pkey) {}

RsaPublicKey::RsaPublicKey(RsaPublicKey&& other) noexcept : pkey_(other.pkey_) {
    other.pkey_ = nullptr;
}

RsaPublicKey& RsaPublicKey::operator=(RsaPublicKey&& other) noexcept {
    if (this != &other) {
        EVP_PKEY_free(static_cast<EVP_PKEY*>(pkey_));
        pkey_ = other.pkey_;
        other.pkey_ = nullptr;
    }
    return *this;
}

RsaPublicKey::~RsaPublicKey() {
    EVP_PKEY_free(static_cast<EVP_PKEY*>(pkey_));
}

RsaPublicKey RsaPublicKey::from_der(const Bytes& spki) {
    const unsigned char* p = spki.data();
    EVP_PKEY* pkey = d2i_PUBKEY(nullptr, &p, static_cast<long>(spki.size()));
    if (!pkey) crypto_fail("cannot parse public key");
    return RsaPublicKey(pkey);
}

RsaPublicKey RsaPublicKey::load_file(const std::string& path) {
    Bytes data = read_file(path);
    if (looks_pem(data)) {
        BIO* bio = BIO_new_mem_buf(data.data(), static_cast<int>(data.size()));
        EVP_PKEY* pkey = PEM_read_bio_PUBKEY(bio, nullptr, nullptr, nullptr);
        BIO_free(bio);
        if (!pkey) crypto_fail("cannot parse public key PEM");
        return RsaPublicKey(pkey);
    }
    return from_der(data);
}

bool RsaPublicKey::verify(const Bytes& message, const Bytes& signature) const {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) crypto_fail("ctx alloc failed");
    bool ok =
        EVP_DigestVerifyInit(ctx, nullptr, EVP_sha256(), nullptr,
                             static_cast<EVP_PKEY*>(pkey_)) == 1 &&
        EVP_DigestVerify(ctx, signature.data(), signature.size(),
                         message.data(), message.size()) == 1;
    EVP_MD_CTX_free(ctx);
    return ok;
}

std::string RsaPublicKey::fingerprint() const {
    return spki_fingerprint(static_cast<EVP_PKEY*>(pkey_));
}

}  // namespace embmark::crypto
