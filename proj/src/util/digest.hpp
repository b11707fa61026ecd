#pragma once

#include <string>
#include <string_view>

namespace ilpg {

// SHA-256 as lowercase hex.
std::string sha256_hex(std::string_view data);

} // namespace ilpg
