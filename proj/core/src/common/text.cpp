// Copyright 2026 The ADSeqGAN Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adseqgan/common/text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "adseqgan/common/error.hpp"

namespace adseqgan {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) noexcept {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  return std::string(buf.data(), end);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "+inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  if (text == "nan") return NAN;
  double value = 0.0;
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(Errc::MalformedRow, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

long long parse_int(std::string_view text) {
  text = trim(text);
  long long value = 0;
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(Errc::MalformedRow, "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char delim) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FileNotFound, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open for writing: " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(Errc::IoError, "write failed: " + path);
}

KeywordReader::KeywordReader(std::string_view text, std::string what)
    : lines_(split(text, '\n')), what_(std::move(what)) {}

void KeywordReader::skip_blank() {
  while (pos_ < lines_.size() && trim(lines_[pos_]).empty()) ++pos_;
}

bool KeywordReader::at_end() {
  skip_blank();
  return pos_ >= lines_.size();
}

std::string_view KeywordReader::peek() {
  if (at_end()) return {};
  const auto line = trim(lines_[pos_]);
  return line.substr(0, line.find(' '));
}

std::vector<std::string_view> KeywordReader::fields(std::string_view keyword) {
  if (peek() != keyword || at_end()) fail("expected '" + std::string(keyword) + "'");
  auto parts = split(trim(lines_[pos_]), ' ');
  ++pos_;
  parts.erase(parts.begin());
  return parts;
}

std::string_view KeywordReader::rest(std::string_view keyword) {
  if (peek() != keyword || at_end()) fail("expected '" + std::string(keyword) + "'");
  const auto line = trim(lines_[pos_]);
  ++pos_;
  return line.size() > keyword.size() ? line.substr(keyword.size() + 1) : std::string_view{};
}

std::string_view KeywordReader::raw_line() {
  if (at_end()) fail("unexpected end of input");
  return lines_[pos_++];
}

void KeywordReader::fail(const std::string& message) const {
  throw Error(Errc::MalformedRow, what_ + " line " + std::to_string(pos_ + 1) + ": " + message);
}

}  // namespace adseqgan
