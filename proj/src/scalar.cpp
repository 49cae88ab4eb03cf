#include "innerapx/scalar.hpp"

#include "innerapx/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace innerapx {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

std::string strip_zeros(std::string_view s) {
  const auto first = s.find_first_not_of('0');
  return first == std::string_view::npos ? std::string("0") : std::string(s.substr(first));
}

Integer pow10(long exponent) {
  Integer result = 1;
  for (long i = 0; i < exponent; ++i) result *= 10;
  return result;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Scalar {
    throw InvalidArgument("not a rational number: '" + original + "'");
  };

  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return fail();

  Scalar value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    const Integer d{strip_zeros(den)};
    if (d == 0) throw InvalidArgument("zero denominator in '" + original + "'");
    value = Scalar(Integer(strip_zeros(num)), d);
  } else {
    long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) return fail();
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string digits;
    long fraction_digits = 0;
    if (const auto dot_pos = text.find('.'); dot_pos != std::string_view::npos) {
      const auto int_part = text.substr(0, dot_pos);
      const auto frac_part = text.substr(dot_pos + 1);
      if (int_part.empty() && frac_part.empty()) return fail();
      if ((!int_part.empty() && !all_digits(int_part)) ||
          (!frac_part.empty() && !all_digits(frac_part))) {
        return fail();
      }
      digits = std::string(int_part) + std::string(frac_part);
      fraction_digits = static_cast<long>(frac_part.size());
    } else {
      if (!all_digits(text)) return fail();
      digits = std::string(text);
    }
    const long shift = exponent - fraction_digits;
    // a leading zero would make the string constructor read octal
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Integer mantissa(digits);
    if (shift >= 0) {
      value = Scalar(mantissa * pow10(shift));
    } else {
      value = Scalar(mantissa, pow10(-shift));
    }
  }
  return negative ? Scalar(-value) : value;
}

std::string to_string(const Scalar& value) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_string(std::span<const Scalar> point) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i > 0) out << ", ";
    out << to_string(point[i]);
  }
  out << ')';
  return out.str();
}

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("dot product of vectors with lengths " +
                            std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
  Scalar sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

std::size_t bit_length(const Integer& value) {
  if (value == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(value)) + 1;
}

bool lex_less(std::span<const Scalar> a, std::span<const Scalar> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<Scalar> primitive_integer_vector(std::span<const Scalar> v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer common_den = 1;
  for (const auto& x : v) {
    common_den = boost::multiprecision::lcm(common_den, Integer(denominator(x)));
  }
  std::vector<Integer> ints;
  ints.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer n = numerator(x) * (common_den / denominator(x));
    g = boost::multiprecision::gcd(g, n);
    ints.push_back(std::move(n));
  }
  std::vector<Scalar> out;
  out.reserve(v.size());
  if (g == 0) {
    out.assign(v.begin(), v.end());
    return out;
  }
  g = boost::multiprecision::abs(g);
  for (auto& n : ints) out.emplace_back(n / g);
  return out;
}

std::size_t rank(std::vector<std::vector<Scalar>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Scalar factor = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= factor * rows[r][k];
    }
    ++r;
  }
  return r;
}

}  // namespace innerapx
