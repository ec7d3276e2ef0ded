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

#include "qdasim/rotation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qdasim::rotation {

namespace {

__extension__ typedef unsigned __int128 Wide;

void require_same_format(const FixedPointValue& a, const FixedPointValue& b, const char* what) {
  if (a.integer_bits() != b.integer_bits() || a.fraction_bits() != b.fraction_bits()) {
    std::ostringstream os;
    os << what << ": operand formats differ (" << a.integer_bits() << "." << a.fraction_bits()
       << " vs " << b.integer_bits() << "." << b.fraction_bits() << ")";
    throw std::invalid_argument(os.str());
  }
}

FixedPointValue like(const FixedPointValue& proto, bool negative, Wide magnitude, bool overflow) {
  const Wide cap = proto.max_magnitude();
  if (magnitude > cap) {
    magnitude = cap;
    overflow = true;
  }
  return FixedPointValue::from_raw(negative, static_cast<FixedPointValue::Magnitude>(magnitude),
                                   proto.integer_bits(), proto.fraction_bits(), overflow);
}

FixedPointValue constant_like(const FixedPointValue& proto, double x) {
  return FixedPointValue::from_double(x, proto.integer_bits(), proto.fraction_bits(),
                                      FixedPointValue::Quantize::nearest);
}

// Generalized binomial coefficient binom(r, k).
double binomial(double r, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b *= (r - i) / (i + 1);
  return b;
}

// Coefficients of arcsin(x0 + h u) in u up to `order`, from the Taylor
// coefficients g_k of (1 - x^2)^(-1/2) at x0, which obey
// (1 - x0^2)(k + 1) g_{k+1} = (2k + 1) x0 g_k + k g_{k-1}.
std::vector<double> arcsin_window_coefficients(double x0, double h, int order) {
  const double q = 1.0 - x0 * x0;
  std::vector<double> g(static_cast<std::size_t>(order), 0.0);
  g[0] = 1.0 / std::sqrt(q);
  for (int k = 0; k + 1 < order; ++k) {
    const double prev = k > 0 ? g[static_cast<std::size_t>(k - 1)] : 0.0;
    g[static_cast<std::size_t>(k + 1)] =
        ((2 * k + 1) * x0 * g[static_cast<std::size_t>(k)] + k * prev) / (q * (k + 1));
  }
  std::vector<double> a(static_cast<std::size_t>(order + 1));
  a[0] = std::asin(x0);
  double hk = 1.0;
  for (int k = 1; k <= order; ++k) {
    hk *= h;
    a[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(k - 1)] / k * hk;
  }
  return a;
}

TaylorSpec make_spec(const std::vector<double>& coefficients, double x0, int shift,
                     const FixedPointValue& proto) {
  // Trailing coefficients below one unit in the last place are dropped:
  // with |u| <= 1 their terms are under the truncation floor anyway, and each
  // multiply they would cost adds a truncation of its own.
  const double ulp = std::ldexp(1.0, -proto.fraction_bits());
  std::size_t used = coefficients.size();
  while (used > 2 && std::abs(coefficients[used - 1]) < ulp) --used;
  TaylorSpec spec;
  spec.coefficients.reserve(used);
  for (std::size_t k = 0; k < used; ++k) {
    spec.coefficients.push_back(constant_like(proto, coefficients[k]));
  }
  spec.expansion_point = constant_like(proto, x0);
  spec.input_shift = shift;
  spec.radius = 1.0;
  return spec;
}

FixedPointValue half_pi_like(const FixedPointValue& proto) {
  return constant_like(proto, std::numbers::pi / 2.0);
}

}  // namespace

FixedPointValue::FixedPointValue(int integer_bits, int fraction_bits)
    : integer_bits_(integer_bits), fraction_bits_(fraction_bits) {
  if (integer_bits < 0 || fraction_bits < 0 || integer_bits + fraction_bits < 1 ||
      integer_bits + fraction_bits > kMaxTotalBits) {
    std::ostringstream os;
    os << "FixedPointValue: unsupported widths " << integer_bits << "." << fraction_bits;
    throw std::invalid_argument(os.str());
  }
}

FixedPointValue FixedPointValue::from_double(double x, int integer_bits, int fraction_bits,
                                             Quantize mode) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("FixedPointValue: non-finite input");
  }
  FixedPointValue v(integer_bits, fraction_bits);
  const double exact = std::ldexp(std::abs(x), fraction_bits);
  const double scaled = mode == Quantize::nearest ? std::round(exact) : std::floor(exact);
  const auto cap = static_cast<double>(v.max_magnitude());
  if (scaled > cap) {
    v.magnitude_ = v.max_magnitude();
    v.overflow_ = true;
  } else {
    v.magnitude_ = static_cast<Magnitude>(scaled);
  }
  v.negative_ = x < 0.0 && v.magnitude_ != 0;
  return v;
}

FixedPointValue FixedPointValue::from_raw(bool negative, Magnitude magnitude, int integer_bits,
                                          int fraction_bits, bool overflow) {
  FixedPointValue v(integer_bits, fraction_bits);
  if (magnitude > v.max_magnitude()) {
    magnitude = v.max_magnitude();
    overflow = true;
  }
  v.magnitude_ = magnitude;
  v.negative_ = negative && magnitude != 0;
  v.overflow_ = overflow;
  return v;
}

FixedPointValue::Magnitude FixedPointValue::max_magnitude() const {
  return (Magnitude{1} << (integer_bits_ + fraction_bits_)) - 1;
}

double FixedPointValue::to_double() const {
  const double m = std::ldexp(static_cast<double>(magnitude_), -fraction_bits_);
  return negative_ ? -m : m;
}

FixedPointValue FixedPointValue::shifted(int shift) const {
  if (shift >= 0) {
    if (shift >= 64) {
      return like(*this, negative_, magnitude_ == 0 ? 0 : ~Wide{0}, overflow_);
    }
    return like(*this, negative_, Wide{magnitude_} << shift, overflow_);
  }
  const int right = -shift;
  return like(*this, negative_, right >= 64 ? 0 : Wide{magnitude_ >> right}, overflow_);
}

FixedPointValue FixedPointValue::abs() const {
  return from_raw(false, magnitude_, integer_bits_, fraction_bits_, overflow_);
}

FixedPointValue FixedPointValue::operator-() const {
  return from_raw(!negative_, magnitude_, integer_bits_, fraction_bits_, overflow_);
}

FixedPointValue operator+(const FixedPointValue& a, const FixedPointValue& b) {
  require_same_format(a, b, "FixedPointValue add");
  const bool flag = a.overflow_ || b.overflow_;
  if (a.negative_ == b.negative_) {
    return like(a, a.negative_, Wide{a.magnitude_} + b.magnitude_, flag);
  }
  if (a.magnitude_ >= b.magnitude_) {
    return like(a, a.negative_, Wide{a.magnitude_ - b.magnitude_}, flag);
  }
  return like(a, b.negative_, Wide{b.magnitude_ - a.magnitude_}, flag);
}

FixedPointValue operator-(const FixedPointValue& a, const FixedPointValue& b) { return a + (-b); }

bool operator==(const FixedPointValue& a, const FixedPointValue& b) {
  return a.integer_bits_ == b.integer_bits_ && a.fraction_bits_ == b.fraction_bits_ &&
         a.negative_ == b.negative_ && a.magnitude_ == b.magnitude_;
}

FixedPointValue shift_add_multiply(const FixedPointValue& a, const FixedPointValue& b,
                                   int* partial_products) {
  require_same_format(a, b, "shift_add_multiply");
  const int width = a.integer_bits() + a.fraction_bits();
  Wide accumulator = 0;
  int count = 0;
  for (int bit = 0; bit < width; ++bit) {
    if ((b.magnitude() >> bit) & 1U) {
      accumulator += Wide{a.magnitude()} << bit;
      ++count;
    }
  }
  if (partial_products != nullptr) *partial_products = count;
  const Wide truncated = accumulator >> a.fraction_bits();
  return like(a, a.negative() != b.negative(), truncated, a.overflow() || b.overflow());
}

FixedPointValue taylor_eval(const TaylorSpec& spec, const FixedPointValue& lambda) {
  if (spec.coefficients.empty()) {
    throw std::invalid_argument("taylor_eval: spec has no coefficients");
  }
  require_same_format(spec.expansion_point, lambda, "taylor_eval");
  const FixedPointValue u = (lambda - spec.expansion_point).shifted(spec.input_shift);
  if (std::abs(u.to_double()) > spec.radius || u.overflow()) {
    std::ostringstream os;
    os << "taylor_eval: |u| = " << std::abs(u.to_double()) << " exceeds the radius "
       << spec.radius;
    throw std::invalid_argument(os.str());
  }
  FixedPointValue total = spec.coefficients.front();
  require_same_format(total, lambda, "taylor_eval");
  FixedPointValue power = u;
  for (std::size_t i = 1; i < spec.coefficients.size(); ++i) {
    total = total + shift_add_multiply(spec.coefficients[i], power);
    if (i + 1 < spec.coefficients.size()) power = shift_add_multiply(power, u);
  }
  return total;
}

double arcsin_coefficient(int j) {
  // (2j)! / (4^j (j!)^2) built up as a running product of (2i - 1) / (2i).
  double central = 1.0;
  for (int i = 1; i <= j; ++i) central *= (2.0 * i - 1.0) / (2.0 * i);
  return central / (2.0 * j + 1.0);
}

double arcsin_series_exact(double x, int terms) {
  double sum = 0.0;
  for (int j = 0; j < terms; ++j) sum += arcsin_coefficient(j) * std::pow(x, 2 * j + 1);
  return sum;
}

FixedPointValue arcsin_angle(const FixedPointValue& cf, int terms) {
  if (terms < 1) throw std::invalid_argument("arcsin_angle: need at least one term");
  if (std::abs(cf.to_double()) >= 1.0) {
    throw std::invalid_argument("arcsin_angle: |Cf| >= 1 is outside the series domain");
  }
  std::vector<double> coefficients(static_cast<std::size_t>(2 * terms), 0.0);
  for (int j = 0; j < terms; ++j) {
    coefficients[static_cast<std::size_t>(2 * j + 1)] = arcsin_coefficient(j);
  }
  const TaylorSpec spec = make_spec(coefficients, 0.0, 0, cf);
  const FixedPointValue theta = taylor_eval(spec, cf.abs());
  return cf.negative() ? -theta : theta;
}

int octaves_for(double min_lambda, int base) {
  if (!(min_lambda > 0.0)) throw std::invalid_argument("octaves_for: min_lambda must be positive");
  const int needed = static_cast<int>(std::ceil(-std::log2(min_lambda)));
  return std::max(base, needed);
}

AngleResult rotation_angle(double lambda, const linalg::SpectralFunction& f, double c,
                           const RotationConfig& config) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("rotation_angle: lambda must lie in (0, 1]");
  }
  if (!std::isfinite(c)) throw std::invalid_argument("rotation_angle: non-finite C");
  const int ib = config.integer_bits;
  const int fb = config.fraction_bits;
  if (fb < 4) throw std::invalid_argument("rotation_angle: need at least 4 fraction bits");

  const FixedPointValue reg = FixedPointValue::from_double(lambda, ib, fb);
  if (reg.is_zero()) {
    throw std::invalid_argument("rotation_angle: lambda is below the register resolution");
  }

  // lambda = 2^-e mu with mu in [1/2, 1]: a pure left shift of the register.
  const FixedPointValue::Magnitude half = FixedPointValue::Magnitude{1} << (fb - 1);
  int e = 0;
  while ((reg.magnitude() << e) < half) ++e;
  if (e > config.octaves) {
    std::ostringstream os;
    os << "rotation_angle: lambda = " << lambda << " lies below the " << config.octaves
       << " covered octaves";
    throw std::invalid_argument(os.str());
  }
  const FixedPointValue mu = reg.shifted(e);

  // Width-1/8 window holding mu; the top window also takes mu = 1.
  const auto window = std::min<FixedPointValue::Magnitude>(3, (mu.magnitude() - half) >> (fb - 3));
  const double x0 = 9.0 / 16.0 + static_cast<double>(window) / 8.0;
  const double r = f.exponent();
  std::vector<double> coefficients(static_cast<std::size_t>(config.f_order + 1));
  for (int k = 0; k <= config.f_order; ++k) {
    coefficients[static_cast<std::size_t>(k)] =
        binomial(r, k) * std::pow(x0, r - k) * std::ldexp(1.0, -4 * k);
  }
  const FixedPointValue f_mantissa = taylor_eval(make_spec(coefficients, x0, 4, reg), mu);

  AngleResult out;
  const FixedPointValue scale = FixedPointValue::from_double(
      c * std::pow(2.0, -e * r), ib, fb, FixedPointValue::Quantize::nearest);
  out.cf = shift_add_multiply(scale, f_mantissa);
  out.overflow = out.cf.overflow();
  const FixedPointValue one = FixedPointValue::from_double(1.0, ib, fb);
  const FixedPointValue abs_cf = out.cf.abs();
  if (out.overflow || abs_cf.magnitude() >= one.magnitude()) {
    out.saturated = true;
    out.theta = out.cf.negative() ? -half_pi_like(reg) : half_pi_like(reg);
    return out;
  }

  if (abs_cf.magnitude() <= (one.magnitude() >> 2)) {
    out.theta = arcsin_angle(out.cf, config.arcsin_terms);
    return out;
  }

  // [1/4, 1/2], then 1 - |Cf| in [2^-(i+1), 2^-i): expand about the
  // window midpoint in the variable u = (x - x0) / h, |u| <= 1.
  double h = 0.125;
  double window_centre = 0.375;
  int shift = 3;
  if (abs_cf.magnitude() > (one.magnitude() >> 1)) {
    const FixedPointValue::Magnitude gap = one.magnitude() - abs_cf.magnitude();
    int i = 1;
    while (i < fb && gap <= (one.magnitude() >> (i + 1))) ++i;
    if (i + 2 > fb) {
      out.saturated = true;
      out.theta = out.cf.negative() ? -half_pi_like(reg) : half_pi_like(reg);
      return out;
    }
    shift = i + 2;
    h = std::ldexp(1.0, -shift);
    window_centre = 1.0 - 3.0 * h;
  }
  const TaylorSpec spec =
      make_spec(arcsin_window_coefficients(window_centre, h, config.arcsin_window_order),
                window_centre, shift, reg);
  const FixedPointValue theta = taylor_eval(spec, abs_cf);
  out.theta = out.cf.negative() ? -theta : theta;
  out.overflow = out.overflow || theta.overflow();
  return out;
}

double exact_angle(double lambda, const linalg::SpectralFunction& f, double c) {
  const double x = c * f(lambda);
  if (std::abs(x) > 1.0 + 1e-12) {
    throw std::invalid_argument("exact_angle: |C f(lambda)| exceeds 1");
  }
  return std::asin(std::clamp(x, -1.0, 1.0));
}

Amplitudes rotation_amplitudes(double lambda, const linalg::SpectralFunction& f, double c,
                               Arithmetic arithmetic, const RotationConfig& config) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("rotation_amplitudes: lambda must lie in (0, 1]");
  }
  const double x = c * f(lambda);
  if (!(std::abs(x) <= 1.0 + 1e-12)) {
    std::ostringstream os;
    os << "rotation_amplitudes: |C f(lambda)| = " << std::abs(x) << " exceeds 1";
    throw std::invalid_argument(os.str());
  }
  if (arithmetic == Arithmetic::exact) {
    const double a1 = std::clamp(x, -1.0, 1.0);
    return {std::sqrt(1.0 - a1 * a1), a1};
  }
  const double theta = rotation_angle(lambda, f, c, config).theta.to_double();
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace qdasim::rotation
