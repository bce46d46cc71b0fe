#include "idealconv/rational.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

#include "idealconv/errors.hpp"

namespace idealconv {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty())
    throw SchemaError("empty integer in rational '" + std::string(whole) + "'");
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+')
    i = 1;
  if (i == text.size())
    throw SchemaError("bad rational '" + std::string(whole) + "'");
  for (std::size_t j = i; j < text.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(text[j])))
      throw SchemaError("bad rational '" + std::string(whole) + "'");
  return BigInt(std::string(text));
}

} // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_integer(text, text));
  BigInt p = parse_integer(text.substr(0, slash), text);
  BigInt q = parse_integer(text.substr(slash + 1), text);
  if (q == 0)
    throw SchemaError("zero denominator in '" + std::string(text) + "'");
  return Rational(p, q);
}

std::string to_string(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1)
    return num.str();
  return num.str() + "/" + den.str();
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

BigInt floor(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  BigInt quot = num / den;
  if (num < 0 && quot * den != num)
    quot -= 1;
  return quot;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0)
    return 0;
  return a / std::gcd(a, b) * b;
}

std::int64_t powmod64(std::int64_t b, std::int64_t e, std::int64_t m) {
  if (m == 1)
    return 0;
  __int128 result = 1;
  __int128 base = b % m;
  while (e > 0) {
    if (e & 1)
      result = result * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t ipow_capped(std::int64_t n, int p) {
  __int128 r = 1;
  for (int i = 0; i < p; ++i) {
    r *= n;
    if (r > (static_cast<__int128>(1) << 62))
      return -1;
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t iroot(std::int64_t n, int p) {
  if (n <= 0)
    return 0;
  if (p == 1)
    return n;
  double guess = p == 2 ? std::sqrt(static_cast<double>(n))
                 : p == 3 ? std::cbrt(static_cast<double>(n))
                          : std::pow(static_cast<double>(n), 1.0 / p);
  auto r = static_cast<std::int64_t>(guess);
  if (r < 0)
    r = 0;
  while (r > 0 && (ipow_capped(r, p) < 0 || ipow_capped(r, p) > n))
    --r;
  while (true) {
    auto next = ipow_capped(r + 1, p);
    if (next < 0 || next > n)
      break;
    ++r;
  }
  return r;
}

} // namespace idealconv
