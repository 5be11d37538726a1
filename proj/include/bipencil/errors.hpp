/*
 * Copyright 2026 The bipencil Authors
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

namespace bipencil {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input has the wrong shape: odd order, non-skew matrix, dimension mismatch.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A documented precondition does not hold (singular B, non-Casimir, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed document or unparsable literal.
class FormatError : public Error {
public:
    using Error::Error;
};

/// An internal identity that must always hold was violated; signals a bug.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace bipencil
