#pragma once

#include <string>

namespace cantordyn {

// Hex SHA-256 of `data`, prefixed "sha256:".
std::string sha256_digest(const std::string& data);

}  // namespace cantordyn
