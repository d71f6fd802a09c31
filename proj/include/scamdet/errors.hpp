// Copyright 2026-present the scamdet project
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

#pragma once

#include <stdexcept>
#include <string>

namespace scamdet {

/// Base class for all scamdet errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem / stream failures.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed on-disk data (corpus lines, model artifacts, lexicons).
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Invalid in-memory inputs: dimension mismatches, single-class training
/// sets, empty corpora, bad hyperparameters.
class DataError : public Error {
public:
    using Error::Error;
};

/// Bad command-line or run configuration.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Adjudicator backend configuration or transport problems that cannot be
/// degraded to an uncertain verdict.
class BackendError : public Error {
public:
    using Error::Error;
};

}  // namespace scamdet
