#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace ainf {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a mathematical precondition fails (d^2 != 0, degree rule, ...).
class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModP {
    std::uint64_t value = 0;
    std::uint32_t prime = 0;
};

// Exact field element: a reduced rational or a residue modulo a prime.
// Rationals with unit denominator mix freely with residues (they are
// reduced into the prime field), so integer literals work in either field.
class Scalar {
public:
    Scalar() : value_(mpq_class(0)) {}
    Scalar(long n) : value_(mpq_class(n)) {}  // NOLINT(implicit)
    Scalar(int n) : value_(mpq_class(n)) {}   // NOLINT(implicit)
    explicit Scalar(mpq_class q);
    static Scalar residue(std::int64_t n, std::uint32_t prime);

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const { return std::holds_alternative<mpq_class>(value_); }
    std::uint32_t prime() const;  // 0 for rationals
    const mpq_class& rational() const;
    std::uint64_t residue_value() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar inverse() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Pivot heuristic key: |numerator| then denominator for Q, 0 for F_p.
    bool smaller_magnitude_than(const Scalar& o) const;

    std::string str() const;

private:
    std::variant<mpq_class, ModP> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Coefficient field. prime == 0 means Q.
struct Field {
    std::uint32_t prime = 0;

    static Field rationals() { return {}; }
    static Field modular(std::uint32_t p);
    // "q" or "fp:<prime>"
    static Field parse(std::string_view spec);

    bool is_rational() const { return prime == 0; }
    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(std::int64_t n) const;
    // Converts a scalar into this field (rationals reduce mod p).
    Scalar embed(const Scalar& s) const;
    // Integers, fractions a/b; no decimals.
    Scalar parse_scalar(std::string_view text) const;
    std::string name() const;

    friend bool operator==(const Field&, const Field&) = default;
};

bool is_prime(std::uint64_t n);

}  // namespace ainf
