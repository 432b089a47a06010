/*
 * Copyright 2026 The epcalc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace epcalc {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in a term or in a language-definition file.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

class UnknownName : public Error {
public:
  using Error::Error;
};

/// Derivation recursed through more recursion unfoldings than allowed.
class DepthBoundExceeded : public Error {
public:
  using Error::Error;
};

class HorizonExceeded : public Error {
public:
  using Error::Error;
};

/// Enabled set (or candidate-relation universe) larger than the configured cap.
class CapExceeded : public Error {
public:
  using Error::Error;
};

class SourceMismatch : public Error {
public:
  using Error::Error;
};

/// A transition substitution that does not match, or whose result is not an
/// open transition.
class TsubstError : public Error {
public:
  using Error::Error;
};

class MalformedLtss : public Error {
public:
  using Error::Error;
};

}  // namespace epcalc
