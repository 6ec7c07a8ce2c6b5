#pragma once

#include <string>
#include <vector>

#include "cayley/util.hpp"

namespace cayley {

/// One maximal run of equal bits.
struct Run {
  unsigned bit;  // 0 or 1
  u64 count;     // >= 1
  bool operator==(const Run&) const = default;
};

/// Bit message stored run-length compressed, so run-heavy collision words
/// (0^6226 and friends) cost O(1) space per run. Adjacent runs always carry
/// different bits and counts are positive.
class Message {
 public:
  Message() = default;

  static Message from_runs(const std::vector<Run>& runs);
  /// "0^{44}1^{41}..." — braces optional on input, exponents >= 0
  static Message parse_rle(const std::string& text);
  /// plain "010011..." text
  static Message parse_raw(const std::string& text);

  const std::vector<Run>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }
  u64 bit_length() const;

  void append_run(unsigned bit, u64 count);
  Message operator+(const Message& o) const;  // concatenation
  Message repeated(u64 times, u64 max_runs = 64u << 20) const;

  bool operator==(const Message& o) const { return runs_ == o.runs_; }
  bool operator!=(const Message& o) const { return runs_ != o.runs_; }

  /// canonical maximal-run form, braces always emitted
  std::string emit_rle() const;
  /// expanded 0/1 text; refuses messages longer than max_bits
  std::string raw_string(u64 max_bits = 1u << 24) const;

 private:
  std::vector<Run> runs_;
};

}  // namespace cayley
