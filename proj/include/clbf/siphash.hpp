#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace clbf {

using SipKey = std::array<uint8_t, 16>;

// SipHash-2-4 (Aumasson/Bernstein), 64-bit output. Used as the keyed
// pseudorandom function behind index derivation and edge-id derivation.
uint64_t siphash24(std::string_view msg, const SipKey& key);

}  // namespace clbf
