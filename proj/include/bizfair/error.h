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

#ifndef BIZFAIR_ERROR_H_
#define BIZFAIR_ERROR_H_

#include <stdexcept>
#include <string>

namespace bizfair {

// Bad arguments or configuration. The CLI maps this to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data that cannot be processed (empty datasets, unreadable files).
// The CLI maps this to exit code 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModelFormatError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace bizfair

#endif  // BIZFAIR_ERROR_H_
