#include "cayley/message.hpp"

#include <cctype>
#include <sstream>

namespace cayley {

void Message::append_run(unsigned bit, u64 count) {
  if (count == 0) return;
  bit &= 1;
  if (!runs_.empty() && runs_.back().bit == bit) {
    runs_.back().count += count;
  } else {
    runs_.push_back({bit, count});
  }
}

Message Message::from_runs(const std::vector<Run>& runs) {
  Message m;
  for (const Run& r : runs) m.append_run(r.bit, r.count);
  return m;
}

Message Message::parse_rle(const std::string& text) {
  Message m;
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    char b = text[i];
    if (b != '0' && b != '1')
      raise(ErrorCode::ParseError, std::string("expected '0' or '1' at position ") + std::to_string(i));
    ++i;
    if (i >= text.size() || text[i] != '^')
      raise(ErrorCode::ParseError, "expected '^' at position " + std::to_string(i));
    ++i;
    bool braced = false;
    if (i < text.size() && text[i] == '{') {
      braced = true;
      ++i;
    }
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      raise(ErrorCode::ParseError, "expected exponent digits at position " + std::to_string(i));
    u64 count = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      count = count * 10 + (text[i++] - '0');
    if (braced) {
      if (i >= text.size() || text[i] != '}')
        raise(ErrorCode::ParseError, "expected '}' at position " + std::to_string(i));
      ++i;
    }
    m.append_run(b - '0', count);
  }
  return m;
}

Message Message::parse_raw(const std::string& text) {
  Message m;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch != '0' && ch != '1')
      raise(ErrorCode::ParseError, std::string("expected '0' or '1' at position ") + std::to_string(i));
    m.append_run(ch - '0', 1);
  }
  return m;
}

u64 Message::bit_length() const {
  u64 total = 0;
  for (const Run& r : runs_) total += r.count;
  return total;
}

Message Message::operator+(const Message& o) const {
  Message m = *this;
  for (const Run& r : o.runs_) m.append_run(r.bit, r.count);
  return m;
}

Message Message::repeated(u64 times, u64 max_runs) const {
  Message m;
  if (times == 0 || runs_.empty()) return m;
  u128 projected = static_cast<u128>(runs_.size()) * times;
  if (projected > max_runs) raise(ErrorCode::BudgetExceeded, "repeated message would exceed the run budget");
  for (u64 t = 0; t < times; ++t) {
    for (const Run& r : runs_) m.append_run(r.bit, r.count);
  }
  return m;
}

std::string Message::emit_rle() const {
  std::ostringstream os;
  for (const Run& r : runs_) os << r.bit << "^{" << r.count << '}';
  return os.str();
}

std::string Message::raw_string(u64 max_bits) const {
  if (bit_length() > max_bits) raise(ErrorCode::BudgetExceeded, "message too long to expand to raw bits");
  std::string out;
  out.reserve(bit_length());
  for (const Run& r : runs_) out.append(r.count, static_cast<char>('0' + r.bit));
  return out;
}

}  // namespace cayley
