#include "frameforge/rational.hpp"

#include <charconv>
#include <cctype>
#include <string>

#include "frameforge/error.hpp"

namespace frameforge {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_sign(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return s;
}

}  // namespace

bool is_rational_literal(std::string_view text) noexcept {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return all_digits(strip_sign(text));
  return all_digits(strip_sign(text.substr(0, slash))) && all_digits(text.substr(slash + 1));
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) fail(ErrorKind::ParseError, "empty numeric literal");
  if (is_rational_literal(text)) {
    std::string s(text);
    if (s.front() == '+') s.erase(0, 1);
    Rational q;
    if (q.set_str(s, 10) != 0) fail(ErrorKind::ParseError, "bad rational literal '" + s + "'");
    if (q.get_den() == 0) fail(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  }

  // Decimal literal: [sign] digits [. digits] [e [sign] digits]
  std::string_view s = text;
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  long exponent = 0;
  std::size_t i = 0;
  bool seen_digit = false;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    digits.push_back(s[i]);
    seen_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      digits.push_back(s[i]);
      --exponent;
      seen_digit = true;
    }
  }
  if (!seen_digit) fail(ErrorKind::ParseError, "bad numeric literal '" + std::string(text) + "'");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    long e = 0;
    auto [ptr, ec] = std::from_chars(s.data() + i + (i < s.size() && s[i] == '+' ? 1 : 0),
                                     s.data() + s.size(), e);
    if (ec != std::errc() || ptr != s.data() + s.size())
      fail(ErrorKind::ParseError, "bad exponent in '" + std::string(text) + "'");
    exponent += e;
    i = s.size();
  }
  if (i != s.size()) fail(ErrorKind::ParseError, "trailing characters in '" + std::string(text) + "'");

  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) fail(ErrorKind::InvalidArgument, "cannot format double");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double x = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size())
    fail(ErrorKind::ParseError, "bad floating literal '" + std::string(text) + "'");
  return x;
}

}  // namespace frameforge
