#include "symprol/scalar.hpp"

#include "symprol/errors.hpp"

#include <cctype>
#include <ostream>

namespace symprol {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

Scalar::Scalar(long num, long den) : m_v(num, den)
{
    if (den == 0)
        throw MathError("Scalar: zero denominator");
    m_v.canonicalize();
}

Scalar::Scalar(mpq_class value) : m_v(std::move(value))
{
    m_v.canonicalize();
}

Scalar Scalar::parse(std::string_view text)
{
    const std::string_view t = trim(text);
    const auto slash = t.find('/');
    std::string_view num = trim(t.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(t.substr(slash + 1));
    if (!num.empty() && num.front() == '+')
        num.remove_prefix(1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
        throw ParseError("not a rational literal: '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return Scalar(q);
}

std::string Scalar::str() const
{
    return m_v.get_str();
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_zero())
        throw MathError("Scalar: division by zero");
    m_v /= o.m_v;
    return *this;
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw MathError("Scalar: inverse of zero");
    return Scalar(mpq_class(1 / m_v));
}

Scalar Scalar::abs() const
{
    return Scalar(mpq_class(::abs(m_v)));
}

bool Scalar::exact_sqrt(Scalar& root) const
{
    if (sign() < 0)
        return false;
    const mpz_class& n = m_v.get_num();
    const mpz_class& d = m_v.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    root = Scalar(mpq_class(rn, rd));
    return true;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s)
{
    return os << s.str();
}

GScalar GScalar::parse(std::string_view text)
{
    std::string_view t = trim(text);
    if (!t.empty() && t.front() == '(' && t.back() == ')')
        t = trim(t.substr(1, t.size() - 2));
    if (t.empty())
        throw ParseError("empty Gaussian rational");
    if (t.back() != 'i')
        return GScalar(Scalar::parse(t));

    // Imaginary part present: split at the last top-level sign that is not
    // the leading one.
    std::string_view body = trim(t.substr(0, t.size() - 1));
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            split = k;
            break;
        }
    }
    Scalar re(0);
    std::string_view im_text = body;
    if (split != std::string_view::npos) {
        re = Scalar::parse(body.substr(0, split));
        im_text = body.substr(split);
    }
    im_text = trim(im_text);
    if (!im_text.empty() && im_text.back() == '*')
        im_text = trim(im_text.substr(0, im_text.size() - 1));
    Scalar im;
    if (im_text.empty() || im_text == "+")
        im = Scalar(1);
    else if (im_text == "-")
        im = Scalar(-1);
    else {
        std::string compact;
        for (char c : im_text)
            if (!std::isspace(static_cast<unsigned char>(c)))
                compact.push_back(c);
        im = Scalar::parse(compact);
    }
    return GScalar(re, im);
}

std::string GScalar::str() const
{
    if (m_im.is_zero())
        return m_re.str();
    if (m_re.is_zero())
        return m_im.str() + " i";
    std::string out = m_re.str();
    if (m_im.sign() > 0)
        out += "+";
    out += m_im.str() + " i";
    return out;
}

GScalar GScalar::inverse() const
{
    const Scalar norm = m_re * m_re + m_im * m_im;
    if (norm.is_zero())
        throw MathError("GScalar: inverse of zero");
    return GScalar(m_re / norm, -m_im / norm);
}

GScalar& GScalar::operator+=(const GScalar& o)
{
    m_re += o.m_re;
    m_im += o.m_im;
    return *this;
}

GScalar& GScalar::operator-=(const GScalar& o)
{
    m_re -= o.m_re;
    m_im -= o.m_im;
    return *this;
}

GScalar& GScalar::operator*=(const GScalar& o)
{
    Scalar re = m_re * o.m_re - m_im * o.m_im;
    Scalar im = m_re * o.m_im + m_im * o.m_re;
    m_re = std::move(re);
    m_im = std::move(im);
    return *this;
}

std::ostream& operator<<(std::ostream& os, const GScalar& s)
{
    return os << s.str();
}

std::string coefficient_text(const GScalar& s)
{
    if (s.is_real())
        return s.re().str();
    return "(" + s.str() + ")";
}

} // namespace symprol
