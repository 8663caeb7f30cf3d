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

#ifndef BIZFAIR_SRC_TEXT_H_
#define BIZFAIR_SRC_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace bizfair::text {

// Decodes the code point starting at s[i] and stores its byte length in *len.
// Invalid sequences decode as U+FFFD with length 1.
char32_t decode(std::string_view s, std::size_t i, std::size_t* len);

// Byte offset of the code point that ends at s[end-1].
std::size_t previous_boundary(std::string_view s, std::size_t end);

bool is_space(char32_t cp);
bool is_letter(char32_t cp);

// ASCII and Latin-1 case mapping; other code points pass through.
std::string fold_case(std::string_view s);
std::string upper_case(std::string_view s);
std::string capitalize(std::string_view s);

}  // namespace bizfair::text

#endif  // BIZFAIR_SRC_TEXT_H_
