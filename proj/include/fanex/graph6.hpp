#pragma once

#include "fanex/graph.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fanex {

/// Malformed graph6 text; position() is the 0-based byte offset of the fault.
class Graph6Error : public std::invalid_argument {
 public:
  Graph6Error(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at byte " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

inline void append_graph6_order(std::string& out, std::uint64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
}

}  // namespace detail

/// graph6 encoding without the optional ">>graph6<<" header and without a newline.
inline std::string to_graph6(const Graph& g) {
  const auto n = static_cast<std::uint64_t>(g.order());
  std::string out;
  detail::append_graph6_order(out, n);
  int acc = 0;
  int filled = 0;
  // Upper triangle, column by column: (0,1),(0,2),(1,2),(0,3),...
  for (int j = 1; j < g.order(); ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent_unchecked(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

/// Parses one graph6 record. Accepts an optional ">>graph6<<" header and a
/// trailing newline; padding bits must be zero.
inline Graph from_graph6(std::string_view text) {
  constexpr std::string_view header = ">>graph6<<";
  std::size_t pos = 0;
  if (text.substr(0, header.size()) == header) pos = header.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);

  auto byte_at = [&](std::size_t i) -> std::uint64_t {
    if (i >= text.size()) throw Graph6Error("truncated graph6 input", i);
    auto c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126) throw Graph6Error("byte outside graph6 range 63..126", i);
    return c - 63u;
  };

  std::uint64_t n = 0;
  if (pos < text.size() && static_cast<unsigned char>(text[pos]) == 126) {
    if (pos + 1 < text.size() && static_cast<unsigned char>(text[pos + 1]) == 126) {
      for (std::size_t i = 0; i < 6; ++i) n = (n << 6) | byte_at(pos + 2 + i);
      if (n <= 258047) throw Graph6Error("non-minimal 8-byte order field", pos);
      pos += 8;
    } else {
      for (std::size_t i = 0; i < 3; ++i) n = (n << 6) | byte_at(pos + 1 + i);
      if (n <= 62) throw Graph6Error("non-minimal 4-byte order field", pos);
      pos += 4;
    }
  } else {
    n = byte_at(pos);
    pos += 1;
  }
  if (n > 10000) throw Graph6Error("graph order " + std::to_string(n) + " exceeds supported maximum 10000", 0);

  const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::uint64_t expected_bytes = (bits + 5) / 6;
  if (text.size() - pos != expected_bytes) {
    std::size_t where = text.size() - pos < expected_bytes ? text.size() : pos + expected_bytes;
    throw Graph6Error("graph6 body length " + std::to_string(text.size() - pos) + " does not match order " +
                          std::to_string(n) + " (expected " + std::to_string(expected_bytes) + ")",
                      where);
  }

  GraphBuilder b(static_cast<int>(n));
  std::uint64_t k = 0;
  for (int j = 1; j < static_cast<int>(n); ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const std::size_t at = pos + static_cast<std::size_t>(k / 6);
      const auto chunk = byte_at(at);
      if ((chunk >> (5 - k % 6)) & 1u) b.add_edge(i, j);
    }
  }
  if (bits % 6 != 0) {
    const std::size_t at = pos + static_cast<std::size_t>(bits / 6);
    const auto pad_mask = (std::uint64_t{1} << (6 - bits % 6)) - 1;
    if (byte_at(at) & pad_mask) throw Graph6Error("nonzero graph6 padding bits", at);
  }
  return b.build();
}

}  // namespace fanex
