// Copyright 2026 The selftag Authors.
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

namespace selftag {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value is outside the representable range (fixnum encode, rotation amount).
class RangeError : public Error {
public:
    using Error::Error;
};

/// A word does not hold the kind of value the operation needs.
class TypeError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

/// A precondition on the configuration or call sequence was violated.
class ContractError : public Error {
public:
    using Error::Error;
};

class OutOfMemoryError : public Error {
public:
    using Error::Error;
};

/// The requested non-float NaN-box payload collides with the canonical NaN.
class EncodingCollisionError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

} // namespace selftag
