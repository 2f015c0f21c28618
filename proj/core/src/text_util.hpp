#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hetnet::detail {

inline std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

/// TAB-separated when the line has a TAB, otherwise split on runs of spaces.
inline std::vector<std::string> split_fields(std::string_view text) {
  std::vector<std::string> fields;
  if (text.find('\t') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const auto tab = text.find('\t', start);
      fields.emplace_back(trim(text.substr(start, tab == std::string_view::npos ? tab : tab - start)));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    return fields;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto begin = text.find_first_not_of(' ', pos);
    if (begin == std::string_view::npos) break;
    const auto end = text.find(' ', begin);
    fields.emplace_back(text.substr(begin, end == std::string_view::npos ? end : end - begin));
    pos = end == std::string_view::npos ? text.size() : end;
  }
  return fields;
}

template <typename Error>
[[noreturn]] void fail_at(std::string_view source, std::size_t line, const std::string& message) {
  throw Error(std::string(source) + ":" + std::to_string(line) + ": " + message);
}

}  // namespace hetnet::detail
