// Copyright 2026 The molab Authors
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

#include <complex>
#include <stdexcept>
#include <string>

namespace molab {

/// All function values, series sums and complex exponents.
using Complex = std::complex<double>;

/// Root of every error raised by the library. `kind()` is a stable short tag
/// used by the CLI and by reports.
class Error : public std::runtime_error {
 public:
  Error(const char* kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  const char* kind() const noexcept { return kind_; }

 private:
  const char* kind_;
};

#define MOLAB_DEFINE_ERROR(Name, tag)                                  \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(tag, what) {}       \
  }

MOLAB_DEFINE_ERROR(SizeError, "size");
MOLAB_DEFINE_ERROR(RangeError, "range");
MOLAB_DEFINE_ERROR(OverflowError, "overflow");
MOLAB_DEFINE_ERROR(DomainError, "domain");
MOLAB_DEFINE_ERROR(PoleError, "pole");
MOLAB_DEFINE_ERROR(ConditioningError, "conditioning");
MOLAB_DEFINE_ERROR(PrecisionError, "precision");
MOLAB_DEFINE_ERROR(NotFoundError, "not-found");
MOLAB_DEFINE_ERROR(ParseError, "parse");
MOLAB_DEFINE_ERROR(ValidationError, "validation");
MOLAB_DEFINE_ERROR(UncertifiableError, "uncertifiable");
MOLAB_DEFINE_ERROR(DivergenceError, "divergence");
MOLAB_DEFINE_ERROR(MultiplicativityError, "multiplicativity");
MOLAB_DEFINE_ERROR(PreconditionError, "precondition");

#undef MOLAB_DEFINE_ERROR

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Throws OverflowError when `z` has a NaN or infinite component.
inline Complex checked(Complex z, const char* where) {
  if (!is_finite(z)) throw OverflowError(std::string("non-finite value in ") + where);
  return z;
}

}  // namespace molab

namespace molab {

/// n^(-alpha) = exp(-alpha ln n). The phase Im(alpha) ln n carries an absolute
/// rounding error of about ulp(Im(alpha) ln n).
inline Complex pow_neg(double n, Complex alpha) {
  if (n == 1.0) return Complex(1.0, 0.0);
  return std::exp(-alpha * std::log(n));
}

}  // namespace molab

#include <cstdio>

namespace molab {

/// "re+imi" with 17 significant digits.
inline std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

}  // namespace molab

namespace molab {

/// z^k by repeated squaring; exact for small integer-valued reals.
inline Complex ipow(Complex z, int k) {
  Complex result(1.0, 0.0);
  while (k > 0) {
    if (k & 1) result *= z;
    z *= z;
    k >>= 1;
  }
  return result;
}

}  // namespace molab
