#pragma once

#include <memory>
#include <string>

#include "flatflight/series.hpp"

namespace flatflight {

// Closed-form time function built from the scenario grammar: numbers, the
// time variable t, the constants pi/kt/deg/ft, + - * / ^ (integer powers),
// and the functions sin cos tan atan arctan asin exp sqrt log. Series are
// produced by composition, so derivatives to any order are exact.
class Expression {
public:
    Expression(); // the constant 0

    static Expression parse(const std::string& text);
    static Expression constant(double value);

    double eval(double t) const;
    TaylorSeries series(double t0, int order) const;

    // normalized source text (round-trips through parse)
    const std::string& text() const { return text_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

} // namespace flatflight
