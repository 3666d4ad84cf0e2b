// Copyright 2026 The ndup Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ndup {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error {
   public:
    using Error::Error;
};

class NonFinite : public Error {
   public:
    using Error::Error;
};

class DimensionMismatch : public Error {
   public:
    using Error::Error;
};

class NotSymplectic : public Error {
   public:
    using Error::Error;
};

/// The transfer matrix of a measuring interaction does not preserve the commutation form.
class CommutatorNotPreserved : public Error {
   public:
    using Error::Error;
};

/// Meter outputs and disturbed outputs of an interaction fail to commute.
class OutputsDoNotCommute : public Error {
   public:
    using Error::Error;
};

/// A covariance matrix that no quantum (or classical) state can have.
class UnphysicalCovariance : public Error {
   public:
    using Error::Error;
};

class UnrepresentableOnGrid : public Error {
   public:
    using Error::Error;
};

class GridTooCoarse : public Error {
   public:
    using Error::Error;
};

class ConfigError : public Error {
   public:
    using Error::Error;
};

}  // namespace ndup
