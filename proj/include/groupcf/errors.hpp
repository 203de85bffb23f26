/*
 * Copyright 2026 The groupcf Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GROUPCF_ERRORS_HPP_
#define GROUPCF_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace groupcf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file: bad CSV, non-numeric cell, missing value.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Column or feature lookups that do not resolve, inconsistent dimensions.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A filter or selection produced no rows.
class EmptySelectionError : public Error {
 public:
  using Error::Error;
};

// The classifier predicts retention for every candidate instance.
class NothingToExplainError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

void log_warning(const std::string& message);

}  // namespace groupcf

#endif  // GROUPCF_ERRORS_HPP_
