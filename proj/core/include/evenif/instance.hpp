#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace evenif {

/// A fixed-length boolean feature vector. Feature f1 lives at index 0;
/// user-facing formats and messages are 1-based, the index shift happens
/// at the parser/serializer boundary.
class Instance {
 public:
  Instance() = default;
  explicit Instance(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) b = b ? 1 : 0;
  }

  static Instance zeros(std::size_t n) {
    return Instance(std::vector<std::uint8_t>(n, 0));
  }

  std::size_t size() const { return bits_.size(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, int bit) { bits_[i] = bit ? 1 : 0; }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  /// Bitstring with f1 leftmost, e.g. "011".
  std::string str() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  friend bool operator==(const Instance&, const Instance&) = default;
  friend auto operator<=>(const Instance&, const Instance&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace evenif
