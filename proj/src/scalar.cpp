#include "ainf/scalar.hpp"

#include <charconv>
#include <ostream>

namespace ainf {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint32_t p)
{
    mpz_class r = z % p;
    if (r < 0)
        r += p;
    return r.get_ui();
}

ModP to_modp(const mpq_class& q, std::uint32_t p)
{
    std::uint64_t den = reduce_mpz(q.get_den(), p);
    if (den == 0)
        throw StructureError("denominator of " + q.get_str() + " vanishes modulo " + std::to_string(p));
    std::uint64_t num = reduce_mpz(q.get_num(), p);
    return {mulmod(num, powmod(den, p - 2, p), p), p};
}

}  // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Scalar::Scalar(mpq_class q) : value_(std::move(q))
{
    std::get<mpq_class>(value_).canonicalize();
}

Scalar Scalar::residue(std::int64_t n, std::uint32_t prime)
{
    Scalar s;
    std::int64_t r = n % static_cast<std::int64_t>(prime);
    if (r < 0)
        r += prime;
    s.value_ = ModP{static_cast<std::uint64_t>(r), prime};
    return s;
}

bool Scalar::is_zero() const
{
    if (auto* q = std::get_if<mpq_class>(&value_))
        return sgn(*q) == 0;
    return std::get<ModP>(value_).value == 0;
}

bool Scalar::is_one() const
{
    if (auto* q = std::get_if<mpq_class>(&value_))
        return *q == 1;
    return std::get<ModP>(value_).value == 1;
}

std::uint32_t Scalar::prime() const
{
    if (auto* m = std::get_if<ModP>(&value_))
        return m->prime;
    return 0;
}

const mpq_class& Scalar::rational() const
{
    return std::get<mpq_class>(value_);
}

std::uint64_t Scalar::residue_value() const
{
    return std::get<ModP>(value_).value;
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    if (auto* q = std::get_if<mpq_class>(&r.value_))
        *q = -*q;
    else {
        auto& m = std::get<ModP>(r.value_);
        m.value = m.value == 0 ? 0 : m.prime - m.value;
    }
    return r;
}

// Brings a and b into a common representation; returns the prime (0 = Q).
static std::uint32_t unify(std::variant<mpq_class, ModP>& a, const std::variant<mpq_class, ModP>& b, ModP& bm)
{
    auto* am = std::get_if<ModP>(&a);
    auto* bmp = std::get_if<ModP>(&b);
    if (!am && !bmp)
        return 0;
    if (am && bmp) {
        if (am->prime != bmp->prime)
            throw StructureError("mixing residues of different primes");
        bm = *bmp;
        return am->prime;
    }
    if (am) {
        bm = to_modp(std::get<mpq_class>(b), am->prime);
        return am->prime;
    }
    a = to_modp(std::get<mpq_class>(a), bmp->prime);
    bm = *bmp;
    return bmp->prime;
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    ModP om;
    std::uint32_t p = unify(value_, o.value_, om);
    if (p == 0)
        std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
    else {
        auto& m = std::get<ModP>(value_);
        m.value = (m.value + om.value) % p;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    return *this += -o;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    ModP om;
    std::uint32_t p = unify(value_, o.value_, om);
    if (p == 0)
        std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
    else {
        auto& m = std::get<ModP>(value_);
        m.value = mulmod(m.value, om.value, p);
    }
    return *this;
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw StructureError("division by zero");
    if (auto* q = std::get_if<mpq_class>(&value_))
        return Scalar(mpq_class(1) / *q);
    const auto& m = std::get<ModP>(value_);
    Scalar r;
    r.value_ = ModP{powmod(m.value, m.prime - 2, m.prime), m.prime};
    return r;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (a.is_rational() && b.is_rational())
        return a.rational() == b.rational();
    return (a - b).is_zero();
}

bool Scalar::smaller_magnitude_than(const Scalar& o) const
{
    if (!is_rational() || !o.is_rational())
        return false;
    int c = mpz_cmpabs(rational().get_num().get_mpz_t(), o.rational().get_num().get_mpz_t());
    if (c != 0)
        return c < 0;
    return cmp(rational().get_den(), o.rational().get_den()) < 0;
}

std::string Scalar::str() const
{
    if (auto* q = std::get_if<mpq_class>(&value_))
        return q->get_str();
    return std::to_string(std::get<ModP>(value_).value);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s)
{
    return os << s.str();
}

Field Field::modular(std::uint32_t p)
{
    if (!is_prime(p))
        throw InputError("not a prime: " + std::to_string(p));
    return Field{p};
}

Field Field::parse(std::string_view spec)
{
    if (spec == "q" || spec == "Q")
        return rationals();
    if (spec.rfind("fp:", 0) == 0) {
        std::string_view digits = spec.substr(3);
        std::uint32_t p = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec != std::errc() || ptr != digits.data() + digits.size())
            throw InputError("bad prime in field spec '" + std::string(spec) + "'");
        return modular(p);
    }
    throw InputError("unknown field '" + std::string(spec) + "' (expected q or fp:<prime>)");
}

Scalar Field::zero() const
{
    return from_int(0);
}

Scalar Field::one() const
{
    return from_int(1);
}

Scalar Field::from_int(std::int64_t n) const
{
    if (prime == 0)
        return Scalar(mpq_class(static_cast<long>(n)));
    return Scalar::residue(n, prime);
}

Scalar Field::embed(const Scalar& s) const
{
    if (prime == 0) {
        if (!s.is_rational())
            throw StructureError("cannot embed a residue into Q");
        return s;
    }
    return from_int(0) + s;
}

Scalar Field::parse_scalar(std::string_view text) const
{
    std::string t(text);
    if (t.empty() || t.find_first_of(".eE") != std::string::npos)
        throw InputError("bad scalar '" + t + "'");
    auto slash = t.find('/');
    auto valid_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size())
            return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                return false;
        return true;
    };
    std::string num = slash == std::string::npos ? t : t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw InputError("bad scalar '" + t + "'");
    if (num[0] == '+')
        num.erase(0, 1);
    mpz_class n(num), d(den);
    if (d == 0)
        throw InputError("zero denominator in '" + t + "'");
    return embed(Scalar(mpq_class(n, d)));
}

std::string Field::name() const
{
    return prime == 0 ? "q" : "fp:" + std::to_string(prime);
}

}  // namespace ainf
