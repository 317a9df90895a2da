#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace netbandit {

/// The two arms of the bandit / groups of the A/B test.
enum class Arm : std::uint8_t { Control = 0, Treatment = 1 };

constexpr Arm opposite(Arm a) { return a == Arm::Control ? Arm::Treatment : Arm::Control; }
constexpr std::size_t arm_index(Arm a) { return static_cast<std::size_t>(a); }
constexpr std::string_view to_string(Arm a) {
  return a == Arm::Control ? "control" : "treatment";
}

}  // namespace netbandit
