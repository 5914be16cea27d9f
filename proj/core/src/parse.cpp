#include "hcx/parse.hpp"

#include "hcx/error.hpp"

#include <cctype>

namespace hcx {

namespace {

class ExprParser {
  public:
    ExprParser(const std::string& text, BaseRingPtr ring) : text_(text), ring_(std::move(ring)) {}

    Scalar parse() {
        Scalar s = parse_sum();
        skip_ws();
        if (pos_ != text_.size())
            err("unexpected trailing input");
        return s;
    }

  private:
    [[noreturn]] void err(const std::string& what) const {
        fail("expression error at offset " + std::to_string(pos_) + " in \"" + text_ + "\": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Scalar parse_sum() {
        Scalar s = parse_product();
        for (;;) {
            if (eat('+'))
                s = s + parse_product();
            else if (eat('-'))
                s = s - parse_product();
            else
                return s;
        }
    }

    Scalar parse_product() {
        Scalar s = parse_factor();
        for (;;) {
            if (eat('*')) {
                s = s * parse_factor();
            } else if (eat('/')) {
                Scalar d = parse_factor();
                if (d.has_odd_part())
                    err("odd variable in denominator");
                if (d.body().is_zero())
                    err("division by a scalar with zero body");
                s = s * d.inverse();
            } else {
                return s;
            }
        }
    }

    Scalar parse_factor() {
        if (eat('-'))
            return -parse_factor();
        if (eat('+'))
            return parse_factor();
        Scalar base = parse_atom();
        if (eat('^')) {
            skip_ws();
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                err("exponent must be a nonnegative integer");
            long e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                e = e * 10 + (text_[pos_++] - '0');
            Scalar r = Scalar::constant(ring_, 1);
            for (long i = 0; i < e; ++i)
                r = r * base;
            return r;
        }
        return base;
    }

    Scalar parse_atom() {
        skip_ws();
        if (pos_ >= text_.size())
            err("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Scalar s = parse_sum();
            if (!eat(')'))
                err("missing closing parenthesis");
            return s;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                v = v * 10 + (text_[pos_++] - '0');
            return Scalar::constant(ring_, Rational(v));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            if (auto i = ring_->even_index(name))
                return Scalar::even_variable(ring_, *i);
            if (auto i = ring_->odd_index(name))
                return Scalar::odd_variable(ring_, *i);
            pos_ = start;
            err("unknown identifier \"" + name + "\"");
        }
        err(std::string("unexpected character '") + c + "'");
    }

    const std::string& text_;
    BaseRingPtr ring_;
    size_t pos_ = 0;
};

} // namespace

Scalar parse_scalar(const std::string& text, const BaseRingPtr& ring) {
    return ExprParser(text, ring).parse();
}

Scalar parse_scalar_at(const std::string& text, const BaseRingPtr& ring, const std::string& where) {
    try {
        return parse_scalar(text, ring);
    } catch (const error& e) {
        fail(where + ": " + e.what());
    }
}

} // namespace hcx
