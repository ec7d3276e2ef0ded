// Copyright 2026 The qdasim Authors
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

// Fixed-point emulation of the controlled-rotation angle computation:
// register |lambda> -> |f(lambda)> by a windowed Taylor series, then
// |theta> = |arcsin(C f(lambda))> by a second series, with every product
// formed by shift-and-add and truncated toward zero.

#include <cstdint>
#include <vector>

#include "qdasim/linalg.hpp"

namespace qdasim::rotation {

inline constexpr int kDefaultIntegerBits = 4;
inline constexpr int kDefaultFractionBits = 16;
inline constexpr int kMaxTotalBits = 60;

/// Sign-magnitude binary number with `integer_bits` + `fraction_bits`
/// magnitude bits. Zero is always stored with a positive sign. Results that
/// do not fit saturate to the largest magnitude and carry `overflow()`;
/// the flag is sticky through arithmetic.
class FixedPointValue {
 public:
  using Magnitude = std::uint64_t;

  FixedPointValue() : FixedPointValue(kDefaultIntegerBits, kDefaultFractionBits) {}
  FixedPointValue(int integer_bits, int fraction_bits);

  enum class Quantize { truncate, nearest };

  /// Register loads truncate toward zero; classical constants (series
  /// coefficients, per-octave scale factors) are loaded to nearest.
  static FixedPointValue from_double(double x, int integer_bits = kDefaultIntegerBits,
                                     int fraction_bits = kDefaultFractionBits,
                                     Quantize mode = Quantize::truncate);
  static FixedPointValue from_raw(bool negative, Magnitude magnitude, int integer_bits,
                                  int fraction_bits, bool overflow = false);

  bool negative() const { return negative_; }
  int sign() const { return negative_ ? -1 : 1; }
  Magnitude magnitude() const { return magnitude_; }
  int integer_bits() const { return integer_bits_; }
  int fraction_bits() const { return fraction_bits_; }
  bool overflow() const { return overflow_; }
  Magnitude max_magnitude() const;
  bool is_zero() const { return magnitude_ == 0; }

  double to_double() const;

  /// Multiplication by 2^shift. Left shifts are exact or flag overflow;
  /// right shifts truncate toward zero.
  FixedPointValue shifted(int shift) const;
  FixedPointValue abs() const;

  FixedPointValue operator-() const;
  friend FixedPointValue operator+(const FixedPointValue& a, const FixedPointValue& b);
  friend FixedPointValue operator-(const FixedPointValue& a, const FixedPointValue& b);
  friend bool operator==(const FixedPointValue& a, const FixedPointValue& b);

 private:
  int integer_bits_;
  int fraction_bits_;
  bool negative_ = false;
  Magnitude magnitude_ = 0;
  bool overflow_ = false;
};

/// Grade-school product: one left-shifted copy of |a| is added into a
/// full-width accumulator per set bit of |b|, then the accumulator is
/// truncated once to the operand format. Operands must share a format.
FixedPointValue shift_add_multiply(const FixedPointValue& a, const FixedPointValue& b,
                                   int* partial_products = nullptr);

/// sum_{i<=n} c_i u^i with u = (lambda - x0) * 2^input_shift.
struct TaylorSpec {
  std::vector<FixedPointValue> coefficients;  ///< c_0 .. c_n, already scaled
  FixedPointValue expansion_point;
  int input_shift = 0;
  double radius = 1.0;  ///< admissible |u|

  int order() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// Running power register times coefficient, accumulated into a running
/// total. Throws std::invalid_argument when |u| exceeds the spec radius.
FixedPointValue taylor_eval(const TaylorSpec& spec, const FixedPointValue& lambda);

/// Maclaurin coefficient of x^(2j+1) in arcsin: (2j)! / (4^j (j!)^2 (2j+1)).
double arcsin_coefficient(int j);

/// The first `terms` odd terms of the arcsin Maclaurin series in doubles.
double arcsin_series_exact(double x, int terms);

/// Maclaurin arcsin in fixed point, evaluated on |Cf| and re-signed so the
/// result is exactly odd. Throws std::invalid_argument when |Cf| >= 1.
FixedPointValue arcsin_angle(const FixedPointValue& cf, int terms);

struct RotationConfig {
  int integer_bits = kDefaultIntegerBits;
  int fraction_bits = kDefaultFractionBits;
  int f_order = 8;            ///< Taylor order for f on each window
  int arcsin_terms = 6;       ///< Maclaurin terms for |Cf| <= 1/4
  int arcsin_window_order = 10;
  int octaves = 8;            ///< lambda >= 2^-octaves is admissible
};

/// Smallest octave count (never below `base`) whose range reaches 1/kappa.
int octaves_for(double min_lambda, int base = 8);

struct AngleResult {
  FixedPointValue theta;
  FixedPointValue cf;      ///< C f(lambda) as computed in fixed point
  bool saturated = false;  ///< C f(lambda) reached 1; theta pinned at pi/2
  bool overflow = false;
};

/// theta(lambda) = arcsin(C f(lambda)) entirely in fixed point.
///
/// lambda = 2^-e mu with mu in [1/2, 1] by a bit shift; f(mu) comes from the
/// order-`f_order` expansion about the centre of the width-1/8 window holding
/// mu; C 2^(-e r) is a classical constant per octave. Angles for |Cf| <= 1/4
/// use the Maclaurin series; larger arguments use expansions about the
/// midpoints of [1/4, 1/2] and [1 - 2^-i, 1 - 2^-(i+1)]. Series
/// coefficients below one unit in the last place are not evaluated.
AngleResult rotation_angle(double lambda, const linalg::SpectralFunction& f, double c,
                           const RotationConfig& config = {});

/// arcsin(C f(lambda)) in doubles.
double exact_angle(double lambda, const linalg::SpectralFunction& f, double c);

enum class Arithmetic { fixed_point, exact };

struct Amplitudes {
  double a0;  ///< amplitude on ancilla |0>
  double a1;  ///< amplitude on ancilla |1>
};

/// (cos theta, sin theta) with theta from the fixed-point pipeline, or
/// (sqrt(1 - (Cf)^2), Cf) directly. Throws std::invalid_argument when
/// |C f(lambda)| > 1 or lambda is outside (0, 1].
Amplitudes rotation_amplitudes(double lambda, const linalg::SpectralFunction& f, double c,
                               Arithmetic arithmetic = Arithmetic::fixed_point,
                               const RotationConfig& config = {});

}  // namespace qdasim::rotation
