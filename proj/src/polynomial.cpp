#include "cadkit/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cadkit
{

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Rational parse_rational(const std::string& text)
{
    Rational q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("not a rational literal: " + text);
    q.canonicalize();
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + text);
    return q;
}

int sign(const Rational& q)
{
    return sgn(q);
}

VarOrder::VarOrder(std::vector< std::string > names) : names_(std::move(names))
{
    if (names_.empty())
        throw std::invalid_argument("variable order must be non-empty");
    std::set< std::string > seen;
    for (const auto& n : names_)
    {
        if (n.empty())
            throw std::invalid_argument("empty variable name");
        if (!seen.insert(n).second)
            throw std::invalid_argument("duplicate variable name: " + n);
    }
}

std::optional< std::size_t > VarOrder::index_of(const std::string& name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        return std::nullopt;
    return static_cast< std::size_t >(it - names_.begin());
}

VarOrder VarOrder::permuted(std::span< const std::size_t > perm) const
{
    std::vector< std::string > out;
    out.reserve(perm.size());
    for (auto i : perm)
        out.push_back(names_.at(i));
    return VarOrder(std::move(out));
}

bool ExponentsLess::operator()(const Exponents& a, const Exponents& b) const
{
    for (std::size_t i = a.size(); i-- > 0;)
    {
        if (a[i] != b[i])
            return a[i] < b[i];
    }
    return false;
}

Polynomial::Polynomial(std::size_t nvars, const Rational& c) : nvars_(nvars)
{
    if (c != 0)
        terms_.emplace(Exponents(nvars, 0), c);
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t var, std::uint32_t power)
{
    if (var >= nvars)
        throw std::out_of_range("variable index out of range");
    Exponents e(nvars, 0);
    e[var] = power;
    Polynomial p(nvars);
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

Polynomial Polynomial::monomial(Exponents exps, const Rational& c)
{
    Polynomial p(exps.size());
    if (c != 0)
        p.terms_.emplace(std::move(exps), c);
    return p;
}

Polynomial Polynomial::from_coefficients(std::size_t nvars, std::size_t v, std::span< const Polynomial > coeffs)
{
    Polynomial out(nvars);
    const auto d = coeffs.size();
    for (std::size_t i = 0; i < d; ++i)
    {
        const auto power = static_cast< std::uint32_t >(d - 1 - i);
        for (const auto& [e, c] : coeffs[i].terms())
        {
            if (e.size() != nvars)
                throw std::invalid_argument("coefficient variable count mismatch");
            if (e[v] != 0)
                throw std::invalid_argument("coefficient involves the main variable");
            Exponents f = e;
            f[v] = power;
            out.terms_.emplace(std::move(f), c);
        }
    }
    return out;
}

bool Polynomial::is_constant() const
{
    if (terms_.empty())
        return true;
    if (terms_.size() > 1)
        return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
}

Rational Polynomial::constant_value() const
{
    if (!is_constant())
        throw std::logic_error("polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int Polynomial::degree(std::size_t v) const
{
    if (terms_.empty())
        return -1;
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_)
        d = std::max(d, e[v]);
    return static_cast< int >(d);
}

int Polynomial::total_degree() const
{
    if (terms_.empty())
        return -1;
    std::uint64_t best = 0;
    for (const auto& [e, c] : terms_)
    {
        std::uint64_t s = 0;
        for (auto x : e)
            s += x;
        best = std::max(best, s);
    }
    return static_cast< int >(best);
}

std::optional< std::size_t > Polynomial::main_variable() const
{
    if (terms_.empty())
        return std::nullopt;
    // The greatest term in lex order carries the highest variable present.
    const auto& e = terms_.rbegin()->first;
    for (std::size_t i = e.size(); i-- > 0;)
    {
        if (e[i] != 0)
            return i;
    }
    return std::nullopt;
}

const Rational& Polynomial::leading_rational() const
{
    if (terms_.empty())
        throw std::logic_error("zero polynomial has no leading coefficient");
    return terms_.rbegin()->second;
}

Polynomial Polynomial::coefficient(std::size_t v, std::uint32_t k) const
{
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_)
    {
        if (e[v] == k)
        {
            Exponents f = e;
            f[v] = 0;
            out.terms_.emplace(std::move(f), c);
        }
    }
    return out;
}

Polynomial Polynomial::leading_coefficient(std::size_t v) const
{
    const int d = degree(v);
    if (d < 0)
        return Polynomial(nvars_);
    return coefficient(v, static_cast< std::uint32_t >(d));
}

std::vector< Polynomial > Polynomial::coefficients(std::size_t v) const
{
    const int d = degree(v);
    if (d < 0)
        return {Polynomial(nvars_)};
    std::vector< Polynomial > out(static_cast< std::size_t >(d) + 1, Polynomial(nvars_));
    for (const auto& [e, c] : terms_)
    {
        Exponents f = e;
        f[v] = 0;
        out[static_cast< std::size_t >(d) - e[v]].terms_.emplace(std::move(f), c);
    }
    return out;
}

Polynomial Polynomial::derivative(std::size_t v) const
{
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_)
    {
        if (e[v] == 0)
            continue;
        Exponents f = e;
        f[v] -= 1;
        out.add_term(f, c * e[v]);
    }
    return out;
}

Polynomial Polynomial::substitute(std::size_t v, const Rational& value) const
{
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_)
    {
        Rational factor = c;
        if (e[v] != 0)
        {
            Rational pw;
            mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), e[v]);
            mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), e[v]);
            factor *= pw;
        }
        Exponents f = e;
        f[v] = 0;
        out.add_term(f, factor);
    }
    return out;
}

Rational Polynomial::evaluate(std::span< const Rational > point) const
{
    if (point.size() < nvars_)
        throw std::invalid_argument("evaluation point too short");
    Rational sum = 0;
    for (const auto& [e, c] : terms_)
    {
        Rational t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
        {
            for (std::uint32_t k = 0; k < e[i]; ++k)
                t *= point[i];
        }
        sum += t;
    }
    return sum;
}

Polynomial Polynomial::remap(std::span< const std::size_t > new_index, std::size_t new_nvars) const
{
    Polynomial out(new_nvars);
    for (const auto& [e, c] : terms_)
    {
        Exponents f(new_nvars, 0);
        for (std::size_t i = 0; i < nvars_; ++i)
        {
            if (e[i] == 0)
                continue;
            if (new_index[i] >= new_nvars)
                throw std::invalid_argument("remap drops a variable in use");
            f[new_index[i]] += e[i];
        }
        out.add_term(f, c);
    }
    return out;
}

void Polynomial::add_term(const Exponents& e, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted)
    {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const
{
    Polynomial out = *this;
    for (auto& [e, c] : out.terms_)
        c = -c;
    return out;
}

static void check_compatible(const Polynomial& a, const Polynomial& b)
{
    if (a.nvars() != b.nvars())
        throw std::invalid_argument("polynomials range over different variable counts");
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    check_compatible(*this, o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    check_compatible(*this, o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    check_compatible(a, b);
    Polynomial out(a.nvars_);
    Exponents f(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
    {
        for (const auto& [eb, cb] : b.terms_)
        {
            for (std::size_t i = 0; i < f.size(); ++i)
                f[i] = ea[i] + eb[i];
            out.add_term(f, ca * cb);
        }
    }
    return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o)
{
    *this = *this * o;
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c)
{
    if (c == 0)
    {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

Polynomial Polynomial::pow(unsigned e) const
{
    Polynomial result(nvars_, Rational(1));
    Polynomial base = *this;
    while (e != 0)
    {
        if (e & 1u)
            result *= base;
        e >>= 1;
        if (e != 0)
            base *= base;
    }
    return result;
}

std::strong_ordering Polynomial::operator<=>(const Polynomial& o) const
{
    if (auto c = nvars_ <=> o.nvars_; c != 0)
        return c;
    // Compare from the greatest term down so that degree dominates.
    auto ia = terms_.rbegin();
    auto ib = o.terms_.rbegin();
    ExponentsLess less;
    for (; ia != terms_.rend() && ib != o.terms_.rend(); ++ia, ++ib)
    {
        if (less(ia->first, ib->first))
            return std::strong_ordering::less;
        if (less(ib->first, ia->first))
            return std::strong_ordering::greater;
        const int c = cmp(ia->second, ib->second);
        if (c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (ia == terms_.rend() && ib == o.terms_.rend())
        return std::strong_ordering::equal;
    return ia == terms_.rend() ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string Polynomial::to_string(const VarOrder& order) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    {
        const auto& [e, c] = *it;
        const bool is_const = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
        Rational mag = abs(c);
        if (c < 0)
            os << "-";
        else if (!first)
            os << "+";
        bool need_star = false;
        if (mag != 1 || is_const)
        {
            os << mag.get_str();
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i)
        {
            if (e[i] == 0)
                continue;
            if (need_star)
                os << "*";
            os << (i < order.size() ? order.name(i) : "x" + std::to_string(i + 1));
            if (e[i] > 1)
                os << "^" << e[i];
            need_star = true;
        }
        first = false;
    }
    return os.str();
}

std::string Polynomial::to_string() const
{
    std::vector< std::string > names;
    for (std::size_t i = 0; i < nvars_; ++i)
        names.push_back("x" + std::to_string(i + 1));
    if (names.empty())
        return terms_.empty() ? "0" : terms_.begin()->second.get_str();
    return to_string(VarOrder(names));
}

} // namespace cadkit
