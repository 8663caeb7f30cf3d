// Copyright 2026 The Bizfair Authors.
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

#include "text.h"

namespace bizfair::text {

char32_t decode(std::string_view s, std::size_t i, std::size_t* len) {
  const auto byte = [&](std::size_t k) {
    return static_cast<unsigned char>(s[k]);
  };
  const unsigned char b0 = byte(i);
  std::size_t n = 0;
  char32_t cp = 0;
  if (b0 < 0x80) {
    *len = 1;
    return b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    n = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    n = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    n = 4;
    cp = b0 & 0x07;
  } else {
    *len = 1;
    return 0xFFFD;
  }
  if (i + n > s.size()) {
    *len = 1;
    return 0xFFFD;
  }
  for (std::size_t k = 1; k < n; ++k) {
    if ((byte(i + k) & 0xC0) != 0x80) {
      *len = 1;
      return 0xFFFD;
    }
    cp = (cp << 6) | (byte(i + k) & 0x3F);
  }
  *len = n;
  return cp;
}

std::size_t previous_boundary(std::string_view s, std::size_t end) {
  std::size_t i = end - 1;
  // Walk back over at most three continuation bytes.
  for (int k = 0; k < 3 && i > 0 &&
                  (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80;
       ++k) {
    --i;
  }
  std::size_t len = 0;
  decode(s, i, &len);
  return i + len == end ? i : end - 1;
}

bool is_space(char32_t cp) {
  switch (cp) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\v':
    case U'\f':
    case U'\r':
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_letter(char32_t cp) {
  if (cp < 0x80) return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
  if (cp < 0xC0) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;
  if (cp == 0xD7 || cp == 0xF7 || cp == 0xFFFD) return false;
  // General punctuation, CJK symbols.
  if ((cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x3000 && cp <= 0x303F)) return false;
  return !is_space(cp);
}

namespace {

// Latin-1 upper/lower pairs live at C3 80..9E / C3 A0..BE (minus the
// multiplication and division signs).
template <bool kToLower>
std::string map_case(std::string_view s) {
  std::string out(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(out[i]);
    if (c < 0x80) {
      if (kToLower && c >= 'A' && c <= 'Z') out[i] = static_cast<char>(c + 32);
      if (!kToLower && c >= 'a' && c <= 'z') out[i] = static_cast<char>(c - 32);
    } else if (c == 0xC3 && i + 1 < out.size()) {
      unsigned char d = static_cast<unsigned char>(out[i + 1]);
      if (kToLower && d >= 0x80 && d <= 0x9E && d != 0x97)
        out[i + 1] = static_cast<char>(d + 0x20);
      if (!kToLower && d >= 0xA0 && d <= 0xBE && d != 0xB7)
        out[i + 1] = static_cast<char>(d - 0x20);
      ++i;
    }
  }
  return out;
}

}  // namespace

std::string fold_case(std::string_view s) { return map_case<true>(s); }
std::string upper_case(std::string_view s) { return map_case<false>(s); }

std::string capitalize(std::string_view s) {
  if (s.empty()) return {};
  std::size_t len = 0;
  decode(s, 0, &len);
  return upper_case(s.substr(0, len)) + fold_case(s.substr(len));
}

}  // namespace bizfair::text
