#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chamberforge {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;
using IntMatrix = std::vector<IntVector>;  // row-major
using RatMatrix = std::vector<RatVector>;  // row-major

/// Base class for every error the library reports about its inputs.
/// `code()` is a short machine-readable tag used by the CLI error JSON.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class DimensionMismatch : public DomainError {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : DomainError("dimension_mismatch", "dimension mismatch: expected " +
                                                std::to_string(expected) + ", got " +
                                                std::to_string(got)) {}
};

IntVector int_vector(std::initializer_list<long> values);
RatVector to_rational(const IntVector& v);
std::vector<RatVector> to_rational(const std::vector<IntVector>& vs);

Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const RatVector& a, const RatVector& b);
Rational dot(const RatVector& a, const IntVector& b);
Rational dot(const IntVector& a, const RatVector& b);

RatVector add(const RatVector& a, const RatVector& b);
RatVector sub(const RatVector& a, const RatVector& b);
RatVector scale(const Rational& c, const RatVector& v);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const Integer& c, const IntVector& v);
IntVector negate(const IntVector& v);

bool is_zero(const IntVector& v);
bool is_zero(const RatVector& v);

/// True iff every entry has denominator 1.
bool is_integral(const RatVector& v);
/// Requires `is_integral(v)`.
IntVector to_integer(const RatVector& v);

/// The primitive lattice point on the ray through a nonzero rational vector.
IntVector primitive(const RatVector& v);
IntVector primitive(const IntVector& v);

/// Scales a rational vector to a primitive integer vector with the same
/// direction; the zero vector maps to itself.
RatVector normalize_direction(const RatVector& v);

Integer gcd_of(const IntVector& v);

/// "p/q" for non-integers, "p" for integers.
std::string to_string(const Rational& q);
std::string to_string(const RatVector& v);
std::string to_string(const IntVector& v);

/// Accepts "p", "-p", "p/q". Throws DomainError("malformed_rational").
Rational parse_rational(std::string_view text);
/// Comma-separated list of rationals, optionally wrapped in brackets.
RatVector parse_rational_vector(std::string_view text);

void require_dim(std::size_t expected, std::size_t got);

}  // namespace chamberforge
