#ifndef CURATOR_DIGEST_H_
#define CURATOR_DIGEST_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace curator {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file_hex(const std::filesystem::path &path);

}  // namespace curator

#endif  // CURATOR_DIGEST_H_
