#include "chamberforge/numeric.hpp"

#include <cctype>

namespace chamberforge {

IntVector int_vector(std::initializer_list<long> values)
{
    IntVector out;
    out.reserve(values.size());
    for (long x : values) out.emplace_back(x);
    return out;
}

RatVector to_rational(const IntVector& v)
{
    RatVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
    return out;
}

std::vector<RatVector> to_rational(const std::vector<IntVector>& vs)
{
    std::vector<RatVector> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(to_rational(v));
    return out;
}

void require_dim(std::size_t expected, std::size_t got)
{
    if (expected != got) throw DimensionMismatch(expected, got);
}

Integer dot(const IntVector& a, const IntVector& b)
{
    require_dim(a.size(), b.size());
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const RatVector& a, const RatVector& b)
{
    require_dim(a.size(), b.size());
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const RatVector& a, const IntVector& b)
{
    require_dim(a.size(), b.size());
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const IntVector& a, const RatVector& b) { return dot(b, a); }

RatVector add(const RatVector& a, const RatVector& b)
{
    require_dim(a.size(), b.size());
    RatVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

RatVector sub(const RatVector& a, const RatVector& b)
{
    require_dim(a.size(), b.size());
    RatVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

RatVector scale(const Rational& c, const RatVector& v)
{
    RatVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

IntVector add(const IntVector& a, const IntVector& b)
{
    require_dim(a.size(), b.size());
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

IntVector sub(const IntVector& a, const IntVector& b)
{
    require_dim(a.size(), b.size());
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

IntVector scale(const Integer& c, const IntVector& v)
{
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

IntVector negate(const IntVector& v) { return scale(Integer(-1), v); }

bool is_zero(const IntVector& v)
{
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool is_zero(const RatVector& v)
{
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool is_integral(const RatVector& v)
{
    for (const auto& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

IntVector to_integer(const RatVector& v)
{
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].get_den() != 1)
            throw DomainError("not_integral", "vector " + to_string(v) + " is not integral");
        out[i] = v[i].get_num();
    }
    return out;
}

Integer gcd_of(const IntVector& v)
{
    Integer g = 0;
    for (const auto& x : v) {
        Integer ax = abs(x);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ax.get_mpz_t());
    }
    return g;
}

IntVector primitive(const IntVector& v)
{
    Integer g = gcd_of(v);
    if (g == 0) return v;
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
    return out;
}

IntVector primitive(const RatVector& v)
{
    Integer lcm = 1;
    for (const auto& x : v) {
        Integer d = x.get_den();
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
    }
    IntVector scaled(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational t = v[i] * lcm;
        scaled[i] = t.get_num();
    }
    return primitive(scaled);
}

RatVector normalize_direction(const RatVector& v) { return to_rational(primitive(v)); }

std::string to_string(const Rational& q_in)
{
    Rational q = q_in;
    q.canonicalize();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const RatVector& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_string(v[i]);
    }
    return s + "]";
}

std::string to_string(const IntVector& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + "]";
}

namespace {

bool is_integer_literal(std::string_view s)
{
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Integer parse_integer(std::string_view s)
{
    std::string buf(s);
    if (!buf.empty() && buf[0] == '+') buf.erase(0, 1);
    return Integer(buf, 10);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = trim(text);
    auto slash = s.find('/');
    std::string_view num = slash == std::string_view::npos ? s : trim(s.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
        throw DomainError("malformed_rational", "malformed rational '" + std::string(text) + "'");
    Integer d = parse_integer(den);
    if (d == 0) throw DomainError("malformed_rational", "zero denominator in '" + std::string(text) + "'");
    Rational q(parse_integer(num), d);
    q.canonicalize();
    return q;
}

RatVector parse_rational_vector(std::string_view text)
{
    std::string_view s = trim(text);
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']')
            throw DomainError("malformed_rational", "unbalanced brackets in '" + std::string(text) + "'");
        s = trim(s.substr(1, s.size() - 2));
    }
    RatVector out;
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto comma = s.find(',', start);
        auto piece = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        std::string_view p = trim(piece);
        if (p.size() >= 2 && p.front() == '"' && p.back() == '"') p = p.substr(1, p.size() - 2);
        out.push_back(parse_rational(p));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace chamberforge
