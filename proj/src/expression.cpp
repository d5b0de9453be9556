#include "negcf/expression.hpp"

#include "negcf/errors.hpp"

#include <algorithm>
#include <cctype>

namespace negcf {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    CfExpression parse() {
        CfExpression expr;
        expr.source = std::string(text_);
        skip_space();
        if (peek() == '@') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            auto gen = builtin_stream(text_.substr(start, pos_ - start));
            if (!gen) throw ParseError("unknown builtin '" + std::string(text_.substr(start, pos_ - start)) + "'", start);
            expr.stream = std::move(*gen);
            finish();
            return expr;
        }
        if (text_.substr(pos_, 4) == "reg:") {
            expr.convention = Convention::Regular;
            pos_ += 4;
            skip_space();
        }
        expect('[');
        Coefficients prefix = int_list();
        CoefficientStream stream;
        if (peek() == ';') {
            ++pos_;
            skip_space();
            expect('(');
            if (peek() == ')') throw ParseError("empty period", pos_);
            Coefficients period = int_list();
            expect(')');
            stream = canonicalize(EventuallyPeriodic{std::move(prefix), std::move(period)});
        } else {
            stream = Finite{std::move(prefix)};
        }
        expect(']');
        finish();
        expr.stream = expr.convention == Convention::Regular ? neg_from_regular(stream) : stream;
        return expr;
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        if (peek() != c) {
            if (pos_ >= text_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
            throw ParseError(std::string("expected '") + c + "' but found '" + peek() + "'", pos_);
        }
        ++pos_;
        skip_space();
    }

    void finish() {
        skip_space();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    }

    BigInt integer() {
        const std::size_t start = pos_;
        if (peek() == '-' || peek() == '+') ++pos_;
        const std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) throw ParseError("expected an integer", start);
        std::string lexeme(text_.substr(start, pos_ - start));
        if (lexeme[0] == '+') lexeme.erase(0, 1);
        BigInt value(lexeme, 10);
        skip_space();
        return value;
    }

    Coefficients int_list() {
        Coefficients xs;
        xs.push_back(integer());
        while (peek() == ',') {
            ++pos_;
            skip_space();
            xs.push_back(integer());
        }
        return xs;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

CfExpression parse_cf(std::string_view text) { return Parser(text).parse(); }

std::string print_cf(const CoefficientStream& s) {
    if (const auto* f = std::get_if<Finite>(&s)) return "[" + join(f->coeffs) + "]";
    if (const auto* g = std::get_if<Generator>(&s)) return g->name;
    EventuallyPeriodic ep = canonicalize(std::get<EventuallyPeriodic>(s));
    if (ep.prefix.empty()) {
        // The grammar needs a nonempty prefix: peel one period element off.
        ep.prefix.push_back(ep.period.front());
        std::rotate(ep.period.begin(), ep.period.begin() + 1, ep.period.end());
    }
    return "[" + join(ep.prefix) + ";(" + join(ep.period) + ")]";
}

}  // namespace negcf
