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

#ifndef BIZFAIR_SRC_CSV_H_
#define BIZFAIR_SRC_CSV_H_

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace bizfair::csv {

// Reads one RFC 4180 record (quoted fields may contain delimiters, doubled
// quotes and newlines). Returns nullopt at end of input. Sets *malformed when
// the record ends inside an open quote or has text after a closing quote.
std::optional<std::vector<std::string>> read_record(std::istream& in,
                                                    char delimiter,
                                                    bool* malformed);

}  // namespace bizfair::csv

#endif  // BIZFAIR_SRC_CSV_H_
