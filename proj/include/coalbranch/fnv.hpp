#pragma once

#include <cstdint>
#include <cstring>
#include <string>

namespace coalbranch {

// FNV-1a over the byte images of the values fed in; used for parameter
// fingerprints stamped onto trajectories and reports.
class Fnv1a {
 public:
  void feed(double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof(bits));
    for (int b = 0; b < 8; ++b) {
      hash_ ^= (bits >> (8 * b)) & 0xFFu;
      hash_ *= 0x100000001B3ull;
    }
  }
  void feed(int x) { feed(static_cast<double>(x)); }

  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 0; i < 16; ++i)
      out[static_cast<std::size_t>(15 - i)] = digits[(hash_ >> (4 * i)) & 0xFu];
    return out;
  }

 private:
  std::uint64_t hash_ = 0xCBF29CE484222325ull;
};

}  // namespace coalbranch
