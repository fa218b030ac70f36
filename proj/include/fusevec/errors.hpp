// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace fusevec {

/// Leaves of one expression disagree in length. Raised before any element
/// is touched.
class LengthError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid unroll/package/budget request, or a plan that does not fit the
/// backend it is executed on.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void contract_violation(const char* what, const char* file,
                                            int line) {
  std::fprintf(stderr, "fusevec: contract violation: %s (%s:%d)\n", what, file,
               line);
  std::abort();
}

}  // namespace detail
}  // namespace fusevec

// Always on: out-of-bounds access is a bug in the caller, not a recoverable
// condition.
#define FUSEVEC_EXPECTS(cond)                                              \
  do {                                                                     \
    if (!(cond)) ::fusevec::detail::contract_violation(#cond, __FILE__,    \
                                                       __LINE__);          \
  } while (0)
