// include/wordseg/errors.hpp

// Copyright 2026   The wordseg Authors

// See the LICENSE file for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace wordseg {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed file contents (bad magic, unknown version, unparseable record).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Payload shorter or longer than its header declares.
class LengthError : public FormatError {
 public:
  using FormatError::FormatError;
};

/// Well-formed input whose values are unusable (non-finite, missing ground truth, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace wordseg
