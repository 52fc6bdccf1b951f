#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pcw {

// FIPS 180-4 SHA-256, single-shot. Self-contained so digests are identical
// on every platform.
std::array<std::uint8_t, 32> sha256(const std::uint8_t* data, std::size_t len);
std::array<std::uint8_t, 32> sha256(const std::string& data);
std::string sha256_hex(const std::string& data);

}  // namespace pcw
