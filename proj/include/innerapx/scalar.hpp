/**
 * @file scalar.hpp
 * @brief Exact rational arithmetic backbone: Scalar, Integer and Point.
 *
 * Scalar is GMP's mpq_t behind boost::multiprecision, which keeps every
 * value in lowest terms with a positive denominator.
 */

#ifndef INNERAPX_SCALAR_HPP
#define INNERAPX_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace innerapx {

using Scalar = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                             boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// A point in objective space. Length equals the number of objectives.
using Point = std::vector<Scalar>;

/**
 * Parses an exact rational from text. Accepted forms: "7", "-3/4",
 * "0.125", "2.5e-3". Decimal input is converted exactly, so "0.1" is 1/10.
 * Throws InvalidArgument on anything else.
 */
Scalar parse_scalar(std::string_view text);

/// "num/den", or just "num" when the denominator is one.
std::string to_string(const Scalar& value);

std::string to_string(std::span<const Scalar> point);

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b);

/// Number of bits of |value|; zero has bit length 0.
std::size_t bit_length(const Integer& value);

/// Lexicographic order on points, used wherever a deterministic order is
/// needed.
bool lex_less(std::span<const Scalar> a, std::span<const Scalar> b);

/// Multiplies a rational vector by the lcm of its denominators and divides by
/// the gcd of the resulting numerators. Direction and sign are preserved; the
/// zero vector is returned unchanged.
std::vector<Scalar> primitive_integer_vector(std::span<const Scalar> v);

/// Rank of a set of rational row vectors (Gaussian elimination).
std::size_t rank(std::vector<std::vector<Scalar>> rows);

}  // namespace innerapx

#endif  // INNERAPX_SCALAR_HPP
