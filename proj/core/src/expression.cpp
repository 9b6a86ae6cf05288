#include "flatflight/expression.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "flatflight/aircraft_io.hpp"

namespace flatflight {

struct Expression::Node {
    enum class Op { number, time, add, sub, mul, div, neg, ipow, call };

    Op op = Op::number;
    double value = 0.0;                  // number
    int exponent = 1;                    // ipow
    std::string fn;                      // call
    std::shared_ptr<const Node> a, b;

    template <class T>
    T eval(const T& t) const {
        switch (op) {
        case Op::number:
            return t * 0.0 + value;
        case Op::time:
            return t;
        case Op::add:
            return a->eval(t) + b->eval(t);
        case Op::sub:
            return a->eval(t) - b->eval(t);
        case Op::mul:
            return a->eval(t) * b->eval(t);
        case Op::div:
            return a->eval(t) / b->eval(t);
        case Op::neg:
            return -a->eval(t);
        case Op::ipow: {
            using flatflight::pow;
            return pow_impl(a->eval(t), exponent);
        }
        case Op::call: {
            using std::sin;
            using std::cos;
            using std::tan;
            using std::atan;
            using std::asin;
            using std::exp;
            using std::sqrt;
            using std::log;
            T v = a->eval(t);
            if (fn == "sin") return sin(v);
            if (fn == "cos") return cos(v);
            if (fn == "tan") return tan(v);
            if (fn == "atan" || fn == "arctan") return atan(v);
            if (fn == "asin" || fn == "arcsin") return asin(v);
            if (fn == "exp") return exp(v);
            if (fn == "sqrt") return sqrt(v);
            if (fn == "log") return log(v);
            throw Error(Error::Kind::config, "expression: unknown function '" + fn + "'");
        }
        }
        throw Error(Error::Kind::config, "expression: corrupt node");
    }

private:
    static double pow_impl(double base, int e) {
        double out = 1.0;
        bool inv = e < 0;
        for (int k = 0; k < std::abs(e); ++k) out *= base;
        return inv ? 1.0 / out : out;
    }
    static TaylorSeries pow_impl(const TaylorSeries& base, int e) { return pow(base, e); }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->op = Node::Op::number;
    n->value = v;
    return n;
}

NodePtr make_unary(Node::Op op, NodePtr a) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    return n;
}

NodePtr make_binary(Node::Op op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != s_.size())
            fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(Error::Kind::config, "expression parse error at position " +
                                             std::to_string(pos_) + ": " + what + " in '" + s_ +
                                             "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (consume('+'))
                lhs = make_binary(Node::Op::add, lhs, term());
            else if (consume('-'))
                lhs = make_binary(Node::Op::sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (consume('*'))
                lhs = make_binary(Node::Op::mul, lhs, unary());
            else if (consume('/'))
                lhs = make_binary(Node::Op::div, lhs, unary());
            else
                return lhs;
        }
    }

    NodePtr unary() {
        if (consume('-')) return make_unary(Node::Op::neg, unary());
        if (consume('+')) return unary();
        return postfix();
    }

    NodePtr postfix() {
        NodePtr base = primary();
        while (consume('^')) {
            skip_ws();
            bool neg = consume('-');
            skip_ws();
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent after '^'");
            int e = std::stoi(s_.substr(start, pos_ - start));
            auto n = std::make_shared<Node>();
            n->op = Node::Op::ipow;
            n->exponent = neg ? -e : e;
            n->a = base;
            base = n;
        }
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];

        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!consume(')')) fail("expected ')'");
            return e;
        }

        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t used = 0;
            double v = std::stod(s_.substr(pos_), &used);
            pos_ += used;
            return make_number(v);
        }

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                        s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);

            if (peek() == '(') {
                ++pos_;
                NodePtr arg = expr();
                if (!consume(')')) fail("expected ')' after call argument");
                auto n = std::make_shared<Node>();
                n->op = Node::Op::call;
                n->fn = name;
                n->a = arg;
                // validate the name eagerly for a parse-time error
                if (name != "sin" && name != "cos" && name != "tan" && name != "atan" &&
                    name != "arctan" && name != "asin" && name != "arcsin" && name != "exp" &&
                    name != "sqrt" && name != "log")
                    fail("unknown function '" + name + "'");
                return n;
            }

            if (name == "t") {
                auto n = std::make_shared<Node>();
                n->op = Node::Op::time;
                return n;
            }
            if (name == "pi") return make_number(M_PI);
            if (name == "kt") return make_number(units::kt);
            if (name == "deg") return make_number(units::deg);
            if (name == "ft") return make_number(units::ft);
            fail("unknown identifier '" + name + "'");
        }

        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    size_t pos_ = 0;
};

// The scenario files occasionally carry typographic minus signs; fold them to
// ASCII before parsing.
std::string normalize(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == 0xE2 && i + 2 < text.size() &&
            static_cast<unsigned char>(text[i + 1]) == 0x88 &&
            static_cast<unsigned char>(text[i + 2]) == 0x92) {
            out.push_back('-');
            i += 2;
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

} // namespace

Expression::Expression() : root_(make_number(0.0)), text_("0") {}

Expression Expression::parse(const std::string& text) {
    Expression e;
    e.text_ = normalize(text);
    Parser p(e.text_);
    e.root_ = p.run();
    return e;
}

Expression Expression::constant(double value) {
    Expression e;
    e.root_ = make_number(value);
    e.text_ = std::to_string(value);
    return e;
}

double Expression::eval(double t) const { return root_->eval(t); }

TaylorSeries Expression::series(double t0, int order) const {
    return root_->eval(TaylorSeries::variable(t0, order));
}

} // namespace flatflight
