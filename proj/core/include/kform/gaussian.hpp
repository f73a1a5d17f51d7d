#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace kform {

/// Exact complex number a + b*i with rational a, b.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0);

  static GaussianRational imaginary_unit() { return {0, 1}; }
  /// Exact value of a decimal literal such as "12", "0.125" or "3e-2".
  static GaussianRational from_decimal(const std::string& text);

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const noexcept { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const noexcept { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  GaussianRational inverse() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Text accepted back by the expression parsers: "3/2", "-i", "(1/2+3*i)".
  /// `parenthesize` wraps values with both parts in parentheses.
  std::string to_string(bool parenthesize = true) const;
  std::string to_latex() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

}  // namespace kform
