#include <cmath>
#include <fstream>
#include <iterator>
#include <vector>

#include <openssl/evp.h>

#include "curator/digest.h"
#include "curator/error.h"
#include "curator/random.h"
#include "curator/types.h"

namespace curator {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::kMissingFile:
    return "missing-file";
  case ErrorCode::kMalformedSchema:
    return "malformed-schema";
  case ErrorCode::kInvalidSpec:
    return "invalid-spec";
  case ErrorCode::kConfigSyntax:
    return "syntax-error";
  case ErrorCode::kUnknownKey:
    return "unknown-key";
  case ErrorCode::kMissingKey:
    return "missing-key";
  case ErrorCode::kInvariantViolation:
    return "invariant-violation";
  case ErrorCode::kIncompatibleCombination:
    return "incompatible-combination";
  case ErrorCode::kEmptyDataset:
    return "empty-dataset";
  case ErrorCode::kMissingDomainField:
    return "missing-domain-field";
  case ErrorCode::kUnknownRelation:
    return "unknown-relation";
  case ErrorCode::kUnknownUnit:
    return "unknown-unit";
  case ErrorCode::kNonPositiveValue:
    return "non-positive-value";
  case ErrorCode::kEmptyInput:
    return "empty-input";
  case ErrorCode::kDigestMismatch:
    return "digest-mismatch";
  case ErrorCode::kIo:
    return "io-error";
  }
  return "unknown";
}

std::string_view task_name(Task task) {
  return task == Task::kLbap ? "lbap" : "sbap";
}

std::optional<Task> parse_task(std::string_view text) {
  if (text == "lbap") {
    return Task::kLbap;
  }
  if (text == "sbap") {
    return Task::kSbap;
  }
  return std::nullopt;
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c: bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view key) {
  std::uint64_t z = (seed * 0x9e3779b97f4a7c15ULL) ^ fnv1a64(key);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr)
      != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xf];
  }
  return out;
}

std::string sha256_file_hex(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kMissingFile, "cannot read " + path.string());
  }
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return sha256_hex(bytes);
}

}  // namespace curator
