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

#include "csv.h"

namespace bizfair::csv {

std::optional<std::vector<std::string>> read_record(std::istream& in,
                                                    char delimiter,
                                                    bool* malformed) {
  *malformed = false;
  if (in.peek() == std::char_traits<char>::eof()) return std::nullopt;

  std::vector<std::string> fields(1);
  enum class State { kFieldStart, kUnquoted, kQuoted, kQuoteInQuoted };
  State state = State::kFieldStart;
  int c;
  while ((c = in.get()) != std::char_traits<char>::eof()) {
    const char ch = static_cast<char>(c);
    switch (state) {
      case State::kFieldStart:
      case State::kUnquoted:
        if (ch == delimiter) {
          fields.emplace_back();
          state = State::kFieldStart;
        } else if (ch == '\n') {
          if (!fields.back().empty() && fields.back().back() == '\r')
            fields.back().pop_back();
          return fields;
        } else if (ch == '"' && state == State::kFieldStart) {
          state = State::kQuoted;
        } else {
          fields.back().push_back(ch);
          state = State::kUnquoted;
        }
        break;
      case State::kQuoted:
        if (ch == '"') {
          state = State::kQuoteInQuoted;
        } else {
          fields.back().push_back(ch);
        }
        break;
      case State::kQuoteInQuoted:
        if (ch == '"') {
          fields.back().push_back('"');
          state = State::kQuoted;
        } else if (ch == delimiter) {
          fields.emplace_back();
          state = State::kFieldStart;
        } else if (ch == '\n') {
          return fields;
        } else if (ch == '\r') {
          // CRLF after a closing quote.
        } else {
          *malformed = true;
          fields.back().push_back(ch);
          state = State::kUnquoted;
        }
        break;
    }
  }
  if (state == State::kQuoted) *malformed = true;
  if (state == State::kUnquoted && !fields.back().empty() &&
      fields.back().back() == '\r')
    fields.back().pop_back();
  return fields;
}

}  // namespace bizfair::csv
