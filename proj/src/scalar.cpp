#include "btt/scalar.hpp"

namespace btt {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

FieldSpec FieldSpec::prime_field(std::uint32_t p)
{
    BTT_REQUIRE(is_prime(p), "field characteristic must be prime, got " + std::to_string(p));
    FieldSpec f;
    f.p = p;
    return f;
}

namespace {

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p)
{
    std::uint64_t acc = 1;
    base %= p;
    while (exp) {
        if (exp & 1)
            acc = acc * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
}

std::uint32_t mod_of(long v, std::uint32_t p)
{
    long m = v % static_cast<long>(p);
    if (m < 0)
        m += p;
    return static_cast<std::uint32_t>(m);
}

} // namespace

Scalar::Scalar(const FieldSpec& f, long value) : p_(f.p)
{
    if (p_ == 0)
        q_ = value;
    else
        r_ = mod_of(value, p_);
}

Scalar::Scalar(const FieldSpec& f, const mpq_class& value) : p_(f.p)
{
    if (p_ == 0) {
        q_ = value;
        q_.canonicalize();
    } else {
        mpz_class den_red = value.get_den() % p_;
        BTT_REQUIRE(den_red != 0, "denominator vanishes mod " + std::to_string(p_));
        mpz_class num_red = value.get_num() % p_;
        std::uint32_t num = mod_of(num_red.get_si(), p_);
        std::uint32_t den = mod_of(den_red.get_si(), p_);
        r_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(num) * mod_pow(den, p_ - 2, p_) % p_);
    }
}

Scalar Scalar::parse(const FieldSpec& f, const std::string& text)
{
    try {
        mpq_class q(text);
        q.canonicalize();
        return Scalar(f, q);
    } catch (const std::invalid_argument&) {
        throw input_error("bad coefficient literal '" + text + "'");
    }
}

void Scalar::check_same_field(const Scalar& o) const
{
    if (p_ != o.p_)
        throw input_error("scalar field mismatch: " + field().str() + " vs " + o.field().str());
}

Scalar Scalar::operator-() const
{
    Scalar s(*this);
    if (p_ == 0)
        s.q_ = -q_;
    else
        s.r_ = r_ == 0 ? 0 : p_ - r_;
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const
{
    check_same_field(o);
    Scalar s(field());
    if (p_ == 0)
        s.q_ = q_ + o.q_;
    else
        s.r_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r_) + o.r_) % p_);
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const
{
    check_same_field(o);
    Scalar s(field());
    if (p_ == 0)
        s.q_ = q_ * o.q_;
    else
        s.r_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(r_) * o.r_ % p_);
    return s;
}

Scalar Scalar::inverse() const
{
    BTT_REQUIRE(!is_zero(), "division by zero");
    Scalar s(field());
    if (p_ == 0)
        s.q_ = 1 / q_;
    else
        s.r_ = mod_pow(r_, p_ - 2, p_);
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const
{
    check_same_field(o);
    return p_ == 0 ? q_ == o.q_ : r_ == o.r_;
}

bool Scalar::operator<(const Scalar& o) const
{
    check_same_field(o);
    return p_ == 0 ? q_ < o.q_ : r_ < o.r_;
}

const mpq_class& Scalar::rational() const
{
    BTT_ASSERT(p_ == 0, "rational() on a prime-field scalar");
    return q_;
}

std::uint32_t Scalar::residue() const
{
    BTT_ASSERT(p_ > 0, "residue() on a rational scalar");
    return r_;
}

Scalar Scalar::reduce_mod(std::uint32_t p) const
{
    BTT_ASSERT(p_ == 0, "reduce_mod on a prime-field scalar");
    return Scalar(FieldSpec::prime_field(p), q_);
}

std::string Scalar::str() const
{
    return p_ == 0 ? q_.get_str() : std::to_string(r_);
}

Vec zero_vec(const FieldSpec& f, int n)
{
    return Vec(static_cast<size_t>(n), Scalar::zero(f));
}

bool vec_is_zero(const Vec& v)
{
    for (const auto& x : v)
        if (!x.is_zero())
            return false;
    return true;
}

Vec vec_add(const Vec& a, const Vec& b)
{
    BTT_REQUIRE(a.size() == b.size(), "vector length mismatch");
    Vec r(a);
    for (size_t i = 0; i < a.size(); ++i)
        r[i] += b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b)
{
    BTT_REQUIRE(a.size() == b.size(), "vector length mismatch");
    Vec r(a);
    for (size_t i = 0; i < a.size(); ++i)
        r[i] -= b[i];
    return r;
}

Vec vec_scale(const Scalar& c, const Vec& v)
{
    Vec r(v);
    for (auto& x : r)
        x *= c;
    return r;
}

} // namespace btt
