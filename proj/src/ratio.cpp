#include "regenalloc/ratio.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <ostream>

namespace regenalloc {
namespace {

using i128 = __int128;

i128 gcd_wide(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  }
  return value;
}

std::string wide_to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  if (neg) v = -v;
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (neg) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

Ratio::Ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("Ratio: zero denominator");
  *this = from_wide(num, den);
}

Ratio Ratio::from_wide(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("Ratio: division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw RatioOverflow("Ratio: 64-bit overflow");
  Ratio r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Ratio Ratio::parse(std::string_view text) {
  std::string_view whole = text;
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("not a number: ''");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t p = parse_int(text.substr(0, slash), whole);
    std::int64_t q = parse_int(text.substr(slash + 1), whole);
    if (q == 0) throw std::invalid_argument("zero denominator: '" + std::string(whole) + "'");
    return Ratio(p, q);
  }

  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto dot = body.find('.');
  std::string_view int_part = body.substr(0, dot);
  std::string_view frac_part =
      dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  }
  if (frac_part.size() > 18) {
    throw std::invalid_argument("too many fractional digits: '" + std::string(whole) + "'");
  }
  auto digits_only = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!digits_only(int_part) || !digits_only(frac_part)) {
    throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  }

  i128 scale = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
  i128 value = 0;
  for (char c : int_part) {
    value = value * 10 + (c - '0');
    if (value > std::numeric_limits<std::int64_t>::max()) {
      throw std::invalid_argument("number out of range: '" + std::string(whole) + "'");
    }
  }
  i128 frac = 0;
  for (char c : frac_part) frac = frac * 10 + (c - '0');
  i128 num = value * scale + frac;
  if (negative) num = -num;
  try {
    return from_wide(num, scale);
  } catch (const RatioOverflow&) {
    throw std::invalid_argument("number out of range: '" + std::string(whole) + "'");
  }
}

std::int64_t Ratio::floor() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Ratio::ceil() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Ratio::to_decimal(int significant) const {
  if (significant < 1) significant = 1;
  if (num_ == 0) return "0";
  bool neg = num_ < 0;
  i128 n = neg ? -static_cast<i128>(num_) : static_cast<i128>(num_);
  i128 d = den_;

  // Find exponent e with 10^e <= n/d < 10^(e+1).
  int e = 0;
  {
    i128 ip = n / d;
    if (ip > 0) {
      while (ip >= 10) {
        ip /= 10;
        ++e;
      }
    } else {
      i128 r = n;
      while (r < d) {
        r *= 10;
        --e;
      }
    }
  }

  // digits = round(n/d * 10^(significant-1-e)), built by long division so
  // nothing overflows regardless of magnitude.
  int shift = significant - 1 - e;
  i128 q;
  i128 rem;
  if (shift >= 0) {
    q = n / d;
    rem = n % d;
    for (int i = 0; i < shift; ++i) {
      rem *= 10;
      q = q * 10 + rem / d;
      rem %= d;
    }
  } else {
    i128 p = 1;
    for (int i = 0; i < -shift; ++i) p *= 10;
    q = n / (d * p);
    rem = n % (d * p);
    d *= p;
  }
  if (2 * rem >= d) ++q;

  std::string digits = wide_to_string(q);
  // Rounding may carry into a new leading digit (9.99.. -> 10.0).
  int point = static_cast<int>(digits.size()) - shift;

  std::string out;
  if (point <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-point), '0') + digits;
  } else if (point >= static_cast<int>(digits.size())) {
    out = digits + std::string(static_cast<std::size_t>(point - static_cast<int>(digits.size())), '0');
  } else {
    out = digits.substr(0, static_cast<std::size_t>(point)) + "." +
          digits.substr(static_cast<std::size_t>(point));
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return neg ? "-" + out : out;
}

std::string Ratio::to_string() const {
  std::int64_t d = den_;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
  int places = std::max(twos, fives);
  if (places == 0) return std::to_string(num_);

  i128 n = num_;
  bool neg = n < 0;
  if (neg) n = -n;
  i128 scaled = n;
  for (int i = 0; i < places; ++i) scaled *= 10;
  scaled /= den_;
  std::string digits = wide_to_string(scaled);
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places + 1 - static_cast<int>(digits.size())), '0');
  }
  digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  return neg ? "-" + digits : digits;
}

Ratio Ratio::operator-() const { return from_wide(-static_cast<i128>(num_), den_); }

Ratio& Ratio::operator+=(const Ratio& rhs) {
  *this = from_wide(static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_,
                    static_cast<i128>(den_) * rhs.den_);
  return *this;
}

Ratio& Ratio::operator-=(const Ratio& rhs) {
  *this = from_wide(static_cast<i128>(num_) * rhs.den_ - static_cast<i128>(rhs.num_) * den_,
                    static_cast<i128>(den_) * rhs.den_);
  return *this;
}

Ratio& Ratio::operator*=(const Ratio& rhs) {
  *this = from_wide(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_);
  return *this;
}

Ratio& Ratio::operator/=(const Ratio& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("Ratio: division by zero");
  *this = from_wide(static_cast<i128>(num_) * rhs.den_, static_cast<i128>(den_) * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Ratio& lhs, const Ratio& rhs) {
  i128 l = static_cast<i128>(lhs.num_) * rhs.den_;
  i128 r = static_cast<i128>(rhs.num_) * lhs.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Ratio abs(const Ratio& value) { return value.sign() < 0 ? -value : value; }

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  i128 g = gcd_wide(a, b);
  i128 l = static_cast<i128>(a) / g * b;
  if (l < 0) l = -l;
  if (!fits(l)) throw RatioOverflow("lcm: 64-bit overflow");
  return static_cast<std::int64_t>(l);
}

std::ostream& operator<<(std::ostream& os, const Ratio& value) { return os << value.to_string(); }

}  // namespace regenalloc
