// SPDX-License-Identifier: Apache-2.0

#include "formula_interpreter.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace zgp_tests {

namespace {

    double clamp(double x)
    {
        if (std::isnan(x)) {
            return x;
        }
        if (x > 1e150) {
            return 1e150;
        }
        if (x < -1e150) {
            return -1e150;
        }
        return x;
    }

    double protected_binary(char op, double a, double b)
    {
        switch (op) {
        case '+':
            return clamp(a + b);
        case '-':
            return clamp(a - b);
        case '*':
            return clamp(a * b);
        case '/':
            return clamp(std::abs(b) > 1e-12 ? a / b : 1.0);
        case '%':
            return clamp(std::abs(b) > 1e-12 ? std::fmod(a, b) : 0.0);
        default:
            throw std::logic_error("bad binary op");
        }
    }

    double protected_function(const std::string& name, double a)
    {
        if (name == "abs") {
            return clamp(std::abs(a));
        }
        if (name == "sqrt") {
            return clamp(std::sqrt(std::abs(a)));
        }
        if (name == "sin") {
            return clamp(std::sin(a));
        }
        if (name == "cos") {
            return clamp(std::cos(a));
        }
        if (name == "floor") {
            return clamp(std::floor(a));
        }
        if (name == "ceil") {
            return clamp(std::ceil(a));
        }
        if (name == "int") {
            return clamp(std::trunc(a));
        }
        throw std::runtime_error("formula: unknown function '" + name + "'");
    }

} // namespace

struct FormulaInterpreter::Node {
    enum class Kind { number, variable, call, binary, negate };

    Kind kind;
    double number = 0.0;
    std::string name; // variable or function
    char op = 0;
    std::unique_ptr<Node> left;
    std::unique_ptr<Node> right;

    double eval(const std::map<std::string, double>& vars) const
    {
        switch (kind) {
        case Kind::number:
            return number;
        case Kind::variable: {
            auto it = vars.find(name);
            if (it == vars.end()) {
                throw std::runtime_error("formula: unbound variable '" + name + "'");
            }
            return it->second;
        }
        case Kind::call:
            return protected_function(name, left->eval(vars));
        case Kind::binary:
            return protected_binary(op, left->eval(vars), right->eval(vars));
        case Kind::negate:
            return clamp(-left->eval(vars));
        }
        throw std::logic_error("bad node");
    }
};

namespace {

    using Node = FormulaInterpreter::Node;

    class Parser {
    public:
        explicit Parser(const std::string& text)
            : text_(text)
        {
        }

        std::unique_ptr<Node> parse()
        {
            auto node = expr();
            skip_space();
            if (pos_ != text_.size()) {
                fail("trailing characters");
            }
            return node;
        }

    private:
        const std::string& text_;
        std::size_t pos_ = 0;

        [[noreturn]] void fail(const std::string& message) const
        {
            throw std::runtime_error("formula parse error at position "
                + std::to_string(pos_) + ": " + message);
        }

        void skip_space()
        {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
        }

        char peek()
        {
            skip_space();
            return pos_ < text_.size() ? text_[pos_] : '\0';
        }

        bool consume(char c)
        {
            if (peek() == c) {
                ++pos_;
                return true;
            }
            return false;
        }

        std::unique_ptr<Node> expr()
        {
            auto node = term();
            for (;;) {
                const char c = peek();
                if (c != '+' && c != '-') {
                    return node;
                }
                ++pos_;
                auto parent = std::make_unique<Node>();
                parent->kind = Node::Kind::binary;
                parent->op = c;
                parent->left = std::move(node);
                parent->right = term();
                node = std::move(parent);
            }
        }

        std::unique_ptr<Node> term()
        {
            auto node = unary();
            for (;;) {
                const char c = peek();
                if (c != '*' && c != '/' && c != '%') {
                    return node;
                }
                ++pos_;
                auto parent = std::make_unique<Node>();
                parent->kind = Node::Kind::binary;
                parent->op = c;
                parent->left = std::move(node);
                parent->right = unary();
                node = std::move(parent);
            }
        }

        std::unique_ptr<Node> unary()
        {
            if (consume('-')) {
                auto node = std::make_unique<Node>();
                node->kind = Node::Kind::negate;
                node->left = unary();
                return node;
            }
            return primary();
        }

        std::unique_ptr<Node> primary()
        {
            const char c = peek();
            if (c == '(') {
                ++pos_;
                auto node = expr();
                if (!consume(')')) {
                    fail("expected ')'");
                }
                return node;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                return number();
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                return name_or_call();
            }
            fail("unexpected character");
        }

        std::unique_ptr<Node> number()
        {
            skip_space();
            const char* begin = text_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) {
                fail("bad number");
            }
            pos_ += static_cast<std::size_t>(end - begin);
            auto node = std::make_unique<Node>();
            node->kind = Node::Kind::number;
            node->number = v;
            return node;
        }

        std::unique_ptr<Node> name_or_call()
        {
            skip_space();
            std::size_t start = pos_;
            while (pos_ < text_.size()
                && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string name = text_.substr(start, pos_ - start);
            if (consume('(')) {
                auto node = std::make_unique<Node>();
                node->kind = Node::Kind::call;
                node->name = std::move(name);
                node->left = expr();
                if (!consume(')')) {
                    fail("expected ')' after function argument");
                }
                return node;
            }
            auto node = std::make_unique<Node>();
            node->kind = Node::Kind::variable;
            node->name = std::move(name);
            return node;
        }
    };

} // namespace

FormulaInterpreter::FormulaInterpreter(const std::string& text)
    : root_(Parser(text).parse())
{
}

FormulaInterpreter::~FormulaInterpreter() = default;
FormulaInterpreter::FormulaInterpreter(FormulaInterpreter&&) noexcept = default;
FormulaInterpreter& FormulaInterpreter::operator=(FormulaInterpreter&&) noexcept = default;

double FormulaInterpreter::evaluate(const std::map<std::string, double>& variables) const
{
    return root_->eval(variables);
}

} // namespace zgp_tests
