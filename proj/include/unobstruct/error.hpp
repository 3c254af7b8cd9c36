// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace unobstruct {

/// Root of every error thrown by the library. The CLI maps subclasses onto
/// process exit codes (see exit_code()).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 2; }
};

/// Malformed document: a missing or mistyped field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A document that parsed but violates a type invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

/// Path enumeration exceeded the configured cap.
class PathExplosionError : public Error {
 public:
  using Error::Error;
};

/// Prediction file and ground-truth manifest disagree.
class ManifestError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

class IoError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 4; }
};

}  // namespace unobstruct
