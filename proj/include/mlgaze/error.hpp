// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_ERROR_HPP
#define MLGAZE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mlgaze {

/// Caller passed arguments that violate an operation's preconditions.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Input data is malformed or inconsistent (bad CSV row, empty AOI, ...).
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A numeric procedure failed: non-convergence, NaN loss, singular system.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace mlgaze

#endif // MLGAZE_ERROR_HPP
