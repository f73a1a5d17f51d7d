#include "kform/gaussian.hpp"

#include <cctype>
#include <sstream>

#include "kform/error.hpp"

namespace kform {

ParseError::ParseError(std::size_t position, const std::string& message,
                       std::vector<std::string> expected)
    : Error([&] {
        std::ostringstream os;
        os << "parse error at " << position << ": " << message;
        if (!expected.empty()) {
          os << " (expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? ", " : "") << expected[i];
          os << ")";
        }
        return os.str();
      }()),
      position_(position),
      expected_(std::move(expected)),
      detail_(message) {}

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::from_decimal(const std::string& text) {
  std::size_t pos = 0;
  mpz_class mantissa = 0;
  long scale = 0;
  bool seen_digit = false;
  for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
    mantissa = mantissa * 10 + (text[pos] - '0');
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
      mantissa = mantissa * 10 + (text[pos] - '0');
      --scale;
      seen_digit = true;
    }
  }
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) negative = text[pos++] == '-';
    long exponent = 0;
    bool exp_digit = false;
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
      exponent = exponent * 10 + (text[pos] - '0');
      exp_digit = true;
    }
    if (!exp_digit) throw ParseError(pos, "malformed exponent in number '" + text + "'");
    scale += negative ? -exponent : exponent;
  }
  if (!seen_digit || pos != text.size()) throw ParseError(0, "malformed number '" + text + "'");
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  mpq_class value = scale < 0 ? mpq_class(mantissa, ten_pow) : mpq_class(mantissa * ten_pow);
  value.canonicalize();
  return {value, 0};
}

GaussianRational GaussianRational::inverse() const {
  mpq_class norm = re_ * re_ + im_ * im_;
  if (sgn(norm) == 0) throw DomainError("division by zero");
  return {re_ / norm, -im_ / norm};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

std::string GaussianRational::to_string(bool parenthesize) const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "*i";
  }
  if (sgn(re_) == 0) return imag;
  std::string body = re_.get_str() + (sgn(im_) > 0 ? "+" : "") + imag;
  return parenthesize ? "(" + body + ")" : body;
}

namespace {

std::string rational_latex(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  mpz_class num = q.get_num();
  std::string sign = sgn(num) < 0 ? "-" : "";
  if (sgn(num) < 0) num = -num;
  return sign + "\\frac{" + num.get_str() + "}{" + q.get_den().get_str() + "}";
}

}  // namespace

std::string GaussianRational::to_latex() const {
  if (sgn(im_) == 0) return rational_latex(re_);
  std::string imag = im_ == 1 ? "i" : im_ == -1 ? "-i" : rational_latex(im_) + "i";
  if (sgn(re_) == 0) return imag;
  return "(" + rational_latex(re_) + (sgn(im_) > 0 ? "+" : "") + imag + ")";
}

}  // namespace kform
