#include "cadkit/parser.hpp"

#include <cctype>
#include <string>

namespace cadkit
{
namespace
{
class Parser
{
public:
    Parser(std::string_view text, const VarOrder& order) : text_(text), order_(order) {}

    Polynomial parse()
    {
        Polynomial p = expression();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what + " in \"" +
                         std::string(text_) + "\"");
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast< unsigned char >(text_[pos_])))
            ++pos_;
    }

    char peek()
    {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool starts_factor()
    {
        const char c = peek();
        return c == '(' || std::isalnum(static_cast< unsigned char >(c)) || c == '_';
    }

    Polynomial expression()
    {
        Polynomial acc = term();
        for (;;)
        {
            const char c = peek();
            if (c == '+')
            {
                ++pos_;
                acc += term();
            }
            else if (c == '-')
            {
                ++pos_;
                acc -= term();
            }
            else
                return acc;
        }
    }

    Polynomial term()
    {
        Polynomial acc = unary();
        for (;;)
        {
            const char c = peek();
            if (c == '*')
            {
                ++pos_;
                acc *= unary();
            }
            else if (c == '/')
            {
                ++pos_;
                Polynomial d = unary();
                if (!d.is_constant() || d.is_zero())
                    fail("division only by nonzero constants");
                acc *= Rational(1) / d.constant_value();
            }
            else if (starts_factor())
                acc *= power();
            else
                return acc;
        }
    }

    Polynomial unary()
    {
        const char c = peek();
        if (c == '-')
        {
            ++pos_;
            return -unary();
        }
        if (c == '+')
        {
            ++pos_;
            return unary();
        }
        return power();
    }

    Polynomial power()
    {
        Polynomial base = primary();
        if (peek() == '^')
        {
            ++pos_;
            skip_space();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast< unsigned char >(text_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected a non-negative integer exponent");
            const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
            if (e > 1000)
                fail("exponent too large");
            return base.pow(static_cast< unsigned >(e));
        }
        return base;
    }

    Polynomial primary()
    {
        const char c = peek();
        const std::size_t n = order_.size();
        if (c == '(')
        {
            ++pos_;
            Polynomial inner = expression();
            if (peek() != ')')
                fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast< unsigned char >(c)))
        {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast< unsigned char >(text_[pos_])))
                ++pos_;
            return Polynomial(n, Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast< unsigned char >(c)) || c == '_')
        {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast< unsigned char >(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            auto idx = order_.index_of(name);
            if (!idx)
                fail("unknown variable '" + name + "'");
            return Polynomial::variable(n, *idx);
        }
        if (c == '\0')
            fail("unexpected end of input");
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const VarOrder& order_;
    std::size_t pos_ = 0;
};
} // namespace

Polynomial parse_polynomial(std::string_view text, const VarOrder& order)
{
    return Parser(text, order).parse();
}

} // namespace cadkit
