#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace symprol {

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator (GMP canonicalizes after every operation).
class Scalar {
public:
    Scalar() = default;
    Scalar(long value) : m_v(value) {}
    Scalar(long num, long den);
    explicit Scalar(mpq_class value);

    /// Parses "a", "-a", "a/b" (optional surrounding whitespace).
    static Scalar parse(std::string_view text);

    std::string str() const;

    bool is_zero() const { return sgn(m_v) == 0; }
    bool is_one() const { return m_v == 1; }
    int sign() const { return sgn(m_v); }
    bool is_integer() const { return m_v.get_den() == 1; }
    Scalar inverse() const;
    Scalar abs() const;

    /// Exact square root if this is the square of a rational, else false.
    bool exact_sqrt(Scalar& root) const;

    const mpq_class& raw() const { return m_v; }

    Scalar& operator+=(const Scalar& o) { m_v += o.m_v; return *this; }
    Scalar& operator-=(const Scalar& o) { m_v -= o.m_v; return *this; }
    Scalar& operator*=(const Scalar& o) { m_v *= o.m_v; return *this; }
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend Scalar operator-(const Scalar& a) { return Scalar(mpq_class(-a.m_v)); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.m_v == b.m_v; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b)
    {
        const int c = cmp(a.m_v, b.m_v);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class m_v;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Gaussian rational re + im*i over Q(i).
class GScalar {
public:
    GScalar() = default;
    GScalar(long value) : m_re(value) {}
    GScalar(Scalar re) : m_re(std::move(re)) {}
    GScalar(Scalar re, Scalar im) : m_re(std::move(re)), m_im(std::move(im)) {}

    static GScalar i() { return GScalar(Scalar(0), Scalar(1)); }

    /// Parses "a", "b i", "a+b i", "a-b i", "i", "-i"; rationals as in Scalar::parse.
    static GScalar parse(std::string_view text);

    /// "a/b", "c/d i" or "a/b+c/d i".
    std::string str() const;

    const Scalar& re() const { return m_re; }
    const Scalar& im() const { return m_im; }

    bool is_zero() const { return m_re.is_zero() && m_im.is_zero(); }
    bool is_one() const { return m_re.is_one() && m_im.is_zero(); }
    bool is_real() const { return m_im.is_zero(); }
    GScalar conj() const { return GScalar(m_re, -m_im); }
    GScalar inverse() const;

    GScalar& operator+=(const GScalar& o);
    GScalar& operator-=(const GScalar& o);
    GScalar& operator*=(const GScalar& o);
    GScalar& operator/=(const GScalar& o) { return *this *= o.inverse(); }

    friend GScalar operator+(GScalar a, const GScalar& b) { return a += b; }
    friend GScalar operator-(GScalar a, const GScalar& b) { return a -= b; }
    friend GScalar operator*(GScalar a, const GScalar& b) { return a *= b; }
    friend GScalar operator/(GScalar a, const GScalar& b) { return a /= b; }
    friend GScalar operator-(const GScalar& a) { return GScalar(-a.m_re, -a.m_im); }

    friend bool operator==(const GScalar& a, const GScalar& b) = default;

private:
    Scalar m_re;
    Scalar m_im;
};

std::ostream& operator<<(std::ostream& os, const GScalar& s);

/// Text form used by printers that need to embed a coefficient in a larger
/// expression: rationals bare, genuinely complex values in parentheses.
inline std::string coefficient_text(const Scalar& s) { return s.str(); }
std::string coefficient_text(const GScalar& s);

} // namespace symprol
