#ifndef QGRAPH_FORMAT_HPP
#define QGRAPH_FORMAT_HPP

#include <charconv>
#include <string>

namespace qgraph {

/// 17 significant digits, "." separator, independent of the global locale.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Shortest text that reads back to the same double.
inline std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace qgraph

#endif  // QGRAPH_FORMAT_HPP
