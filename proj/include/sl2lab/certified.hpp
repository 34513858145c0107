// Copyright 2026 The sl2lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SL2LAB_CERTIFIED_HPP
#define SL2LAB_CERTIFIED_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace sl2lab::constants {

// Closed interval [lo, hi] of reals with MPFR endpoints. Every operation
// rounds lo toward -inf and hi toward +inf, so the true value of any
// expression stays enclosed.
class Interval {
 public:
  static constexpr mpfr_prec_t kPrec = 192;

  Interval();
  explicit Interval(long v);
  explicit Interval(const mpz_class& v);
  explicit Interval(const mpq_class& v);
  // Enclosure of a decimal literal such as "0.125" or "1e-3".
  static Interval from_decimal(const std::string& s);
  static Interval hull(const Interval& a, const Interval& b);
  static Interval ln2();
  // Degenerate intervals at one endpoint.
  Interval lower() const;
  Interval upper() const;
  // Midpoint as a degenerate interval (rounded to nearest).
  Interval midpoint() const;

  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_d() const;
  // Relative width (hi - lo) / max(|lo|, |hi|), rounded up; 0 for [0, 0].
  double rel_width() const;

  // Decimal endpoints rounded outward, `digits` significant digits.
  std::string lo_str(int digits = 20) const;
  std::string hi_str(int digits = 20) const;

  bool contains_zero() const;
  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
  bool certainly_le(const Interval& o) const { return mpfr_lessequal_p(hi_, o.lo_); }
  bool certainly_lt(const Interval& o) const { return mpfr_less_p(hi_, o.lo_); }
  bool certainly_ge(const Interval& o) const { return o.certainly_le(*this); }
  bool contains(const Interval& o) const {
    return mpfr_lessequal_p(lo_, o.lo_) && mpfr_lessequal_p(o.hi_, hi_);
  }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);
  friend Interval operator*(const Interval& a, const Interval& b);
  // Throws DomainError if b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);

  friend Interval log(const Interval& a);   // natural log, requires a > 0
  friend Interval log2(const Interval& a);
  friend Interval exp(const Interval& a);
  friend Interval exp2(const Interval& a);
  friend Interval sqrt(const Interval& a);  // requires a >= 0
  friend Interval min(const Interval& a, const Interval& b);
  friend Interval max(const Interval& a, const Interval& b);

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace sl2lab::constants

#endif  // SL2LAB_CERTIFIED_HPP
