// Copyright 2026 The jm3d Authors.
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

#ifndef JM3D_COMMON_ERRORS_H_
#define JM3D_COMMON_ERRORS_H_

#include <stdexcept>
#include <string>

namespace jm3d {

// Root of every error thrown by the library. The subclasses group failures by
// how the command line reports them (usage, data, numeric).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke an operation's precondition (bad axis, non-scalar loss, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ContractError {
 public:
  using ContractError::ContractError;
};

class InputError : public ContractError {
 public:
  using ContractError::ContractError;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Data on disk or in a dataset is malformed or inconsistent.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class LabelError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf encountered, or a gradient check out of tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace jm3d

#endif  // JM3D_COMMON_ERRORS_H_
