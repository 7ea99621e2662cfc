#include "orbemb/gaussian_rational.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "orbemb/errors.hpp"

namespace orbemb {

std::size_t GaussRat::height() const {
  auto bits = [](const mpq_class& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
  };
  return bits(re_) + bits(im_);
}

namespace {

mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw SchemaError("empty rational literal");
  for (char ch : text) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' ||
          ch == '+')) {
      throw SchemaError("invalid character in rational literal '" + text + "'");
    }
  }
  std::string body = text[0] == '+' ? text.substr(1) : text;
  mpq_class q;
  if (q.set_str(body, 10) != 0) throw SchemaError("invalid rational literal '" + text + "'");
  if (sgn(q.get_den()) == 0) throw SchemaError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace

GaussRat::GaussRat(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRat GaussRat::rational(long num, long den) {
  if (den == 0) throw Error("GaussRat::rational: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return {q, 0};
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
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

GaussRat& GaussRat::operator/=(const GaussRat& o) {
  if (o.is_zero()) throw Error("GaussRat: division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class d = o.norm();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / d;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussRat::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string out = re_.get_str();
  if (sgn(im_) < 0) {
    out += "-" + mpq_class(-im_).get_str();
  } else {
    out += "+" + im_.get_str();
  }
  return out + " i";
}

GaussRat GaussRat::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw SchemaError("empty scalar literal");
  if (s.back() != 'i') return {parse_rational(s), 0};
  s.pop_back();
  // Split at the last sign that is not the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  mpq_class re = re_part.empty() ? mpq_class(0) : parse_rational(re_part);
  return {re, parse_rational(im_part)};
}

std::ostream& operator<<(std::ostream& os, const GaussRat& z) { return os << z.str(); }

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

std::optional<GaussRat> exact_sqrt(const GaussRat& z) {
  const mpq_class& a = z.real();
  const mpq_class& b = z.imag();
  if (sgn(b) == 0) {
    if (sgn(a) >= 0) {
      auto r = rational_sqrt(a);
      if (!r) return std::nullopt;
      return GaussRat(*r, 0);
    }
    auto r = rational_sqrt(-a);
    if (!r) return std::nullopt;
    return GaussRat(0, *r);
  }
  // s = x + iy with x^2 - y^2 = a, 2xy = b; x^2 = (a + |z|)/2.
  auto modulus = rational_sqrt(z.norm());
  if (!modulus) return std::nullopt;
  auto x = rational_sqrt((a + *modulus) / 2);
  if (!x || sgn(*x) == 0) return std::nullopt;
  mpq_class y = b / (2 * *x);
  return GaussRat(*x, y);
}

mpq_class rationalize(double x, long max_den) {
  if (!std::isfinite(x)) throw Error("rationalize: non-finite input");
  // Continued-fraction convergents p/q.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(rest);
    mpz_class a(fl);
    mpz_class p2 = a * p1 + p0;
    mpz_class q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = rest - fl;
    if (frac < 1e-15) break;
    rest = 1.0 / frac;
    if (!std::isfinite(rest)) break;
  }
  if (q1 == 0) return mpq_class(mpz_class(std::round(x)));
  mpq_class r(p1, q1);
  r.canonicalize();
  return r;
}

}  // namespace orbemb
