#include "susyqft/cli.hpp"

#include "susyqft/errors.hpp"

#include <cctype>
#include <charconv>

namespace sqft {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Element parse()
    {
        Element e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool accept(char c)
    {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool at_number()
    {
        skip();
        return pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.');
    }

    double number()
    {
        skip();
        double v = 0;
        auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc()) fail("malformed number");
        pos_ = static_cast<std::size_t>(end - s_.data());
        return v;
    }

    double signed_number()
    {
        bool neg = accept('-');
        double v = number();
        return neg ? -v : v;
    }

    std::string identifier()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    TestFunction list()
    {
        expect('[');
        std::vector<double> c;
        if (!accept(']')) {
            do c.push_back(signed_number());
            while (accept(','));
            expect(']');
        }
        return TestFunction(std::move(c));
    }

    cplx scalar_of(const Element& e, std::size_t at)
    {
        if (!e.is_scalar()) throw ParseError("expected a scalar", at);
        return e.scalar_part();
    }

    Element expr()
    {
        Element e = term();
        while (true) {
            if (accept('+'))
                e = e + term();
            else if (accept('-'))
                e = e - term();
            else
                return e;
        }
    }

    Element term()
    {
        Element e = factor();
        while (accept('*')) e = e * factor();
        return e;
    }

    Element factor()
    {
        if (accept('-')) return -factor();
        if (accept('(')) {
            Element e = expr();
            expect(')');
            return e;
        }
        if (at_number()) {
            double v = number();
            if (peek('i') && !is_word_char(pos_ + 1)) {
                ++pos_;
                return Element::scalar(cplx(0, v));
            }
            return Element::scalar(v);
        }
        const std::size_t at = (skip(), pos_);
        const std::string id = identifier();
        if (id.empty()) fail("expected a factor");
        if (id == "i") return Element::scalar(cplx(0, 1));
        Generator g;
        if (id == "one") return Element::one();
        if (id == "zeta") {
            expect('(');
            TestFunction f = list();
            expect(')');
            Gens gs{Generator::clifford(f), Generator::resolvent(1.0, f)};
            return shifted(gs);
        }
        if (id == "c" || id == "j") {
            expect('(');
            TestFunction f = list();
            expect(')');
            return shifted({id == "c" ? Generator::clifford(f) : Generator::field(f)});
        }
        if (id == "R") {
            expect('(');
            std::size_t lat = (skip(), pos_);
            cplx lambda = scalar_of(expr(), lat);
            expect(',');
            TestFunction f = list();
            expect(')');
            return shifted({Generator::resolvent(lambda, f)});
        }
        throw ParseError("unknown name '" + id + "'", at);
    }

    Element shifted(Gens gs)
    {
        if (accept('@')) {
            std::size_t at = (skip(), pos_);
            cplx z = scalar_of(factor(), at);
            for (auto& g : gs) g.shift = z;
        }
        return Element(Word{1.0, std::move(gs)});
    }

    bool is_word_char(std::size_t p) const
    {
        return p < s_.size() && std::isalnum(static_cast<unsigned char>(s_[p]));
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(const std::string& text) { return Parser(text).parse(); }

std::string print_element(const Element& a) { return to_string(a); }

}  // namespace sqft
