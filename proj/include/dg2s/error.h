// Copyright 2026 The dg2s Authors.
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

#ifndef DG2S_ERROR_H_
#define DG2S_ERROR_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace dg2s {

// Root of every exception thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedTreeError : public Error {
 public:
  using Error::Error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

class DisjointnessError : public Error {
 public:
  using Error::Error;
};

class EmptySubsequenceError : public Error {
 public:
  using Error::Error;
};

class ContainmentError : public Error {
 public:
  using Error::Error;
};

class ConnectivityError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Text-format errors carry the 1-based line they were found on (0 if unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class FormatError : public ParseError {
 public:
  using ParseError::ParseError;
};

class TableError : public ParseError {
 public:
  using ParseError::ParseError;
};

class CorpusError : public Error {
 public:
  using Error::Error;
};

// Raised when a decoder cannot cover the input. `uncovered` lists 1-based
// positions that no translation option reaches (empty if coverage existed but
// search still failed).
class NoDerivationError : public Error {
 public:
  NoDerivationError(const std::string& what, std::vector<int> uncovered)
      : Error(what), uncovered_(std::move(uncovered)) {}
  const std::vector<int>& uncovered() const { return uncovered_; }

 private:
  std::vector<int> uncovered_;
};

}  // namespace dg2s

#endif  // DG2S_ERROR_H_
