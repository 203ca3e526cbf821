#include "qcong/engine/expr.hpp"

#include <cctype>

namespace qcong::engine {

struct Expr::Node {
    enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind;
    std::int64_t value = 0;
    std::string name;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr n = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return n;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ExprError("expression '" + s_ + "' at offset " + std::to_string(pos_) + ": " + msg);
    }

    NodePtr expr() {
        NodePtr n = term();
        for (;;) {
            if (accept('+')) {
                n = make(Kind::Add, n, term());
            } else if (accept('-')) {
                n = make(Kind::Sub, n, term());
            } else {
                return n;
            }
        }
    }

    NodePtr term() {
        NodePtr n = unary();
        for (;;) {
            if (accept('*')) {
                n = make(Kind::Mul, n, unary());
            } else if (accept('/')) {
                n = make(Kind::Div, n, unary());
            } else {
                return n;
            }
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Kind::Neg, unary());
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (accept('^')) return make(Kind::Pow, base, unary());
        return base;
    }

    NodePtr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (accept('(')) {
            NodePtr n = expr();
            if (!accept(')')) fail("expected ')'");
            return n;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, s_[pos_] - '0', &v)) {
                    fail("integer literal too large");
                }
                ++pos_;
            }
            auto n = std::make_shared<Expr::Node>();
            n->kind = Kind::Number;
            n->value = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            auto n = std::make_shared<Expr::Node>();
            n->kind = Kind::Variable;
            n->name = s_.substr(start, pos_ - start);
            return n;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

template <class Op>
std::int64_t checked(Op op, std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (op(a, b, &out)) throw ExprError("integer overflow");
    return out;
}

constexpr auto kAdd = [](std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_add_overflow(a, b, r); };
constexpr auto kSub = [](std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_sub_overflow(a, b, r); };
constexpr auto kMul = [](std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_mul_overflow(a, b, r); };

std::int64_t eval_node(const Expr::Node& n, const Bindings& env) {
    switch (n.kind) {
        case Kind::Number: return n.value;
        case Kind::Variable: {
            const auto it = env.find(n.name);
            if (it == env.end()) throw ExprError("unbound variable '" + n.name + "'");
            return it->second;
        }
        case Kind::Neg: return checked(kSub, 0, eval_node(*n.lhs, env));
        case Kind::Add: return checked(kAdd, eval_node(*n.lhs, env), eval_node(*n.rhs, env));
        case Kind::Sub: return checked(kSub, eval_node(*n.lhs, env), eval_node(*n.rhs, env));
        case Kind::Mul: return checked(kMul, eval_node(*n.lhs, env), eval_node(*n.rhs, env));
        case Kind::Div: {
            const std::int64_t a = eval_node(*n.lhs, env), b = eval_node(*n.rhs, env);
            if (b == 0) throw ExprError("division by zero");
            if (a % b != 0) {
                throw ExprError("inexact division " + std::to_string(a) + "/" + std::to_string(b));
            }
            return a / b;
        }
        case Kind::Pow: {
            const std::int64_t base = eval_node(*n.lhs, env), e = eval_node(*n.rhs, env);
            if (e < 0) throw ExprError("negative exponent " + std::to_string(e));
            if (base == 0 || base == 1) return e == 0 ? 1 : base;
            if (base == -1) return e % 2 == 0 ? 1 : -1;
            // |base| >= 2 overflows within 63 steps.
            std::int64_t r = 1;
            for (std::int64_t i = 0; i < e; ++i) r = checked(kMul, r, base);
            return r;
        }
    }
    throw ExprError("corrupt expression");
}

void collect(const Expr::Node& n, std::set<std::string>& out) {
    if (n.kind == Kind::Variable) out.insert(n.name);
    if (n.lhs) collect(*n.lhs, out);
    if (n.rhs) collect(*n.rhs, out);
}

}  // namespace

Expr::Expr(std::string source, std::shared_ptr<const Node> root) : source_(std::move(source)), root_(std::move(root)) {}

Expr Expr::parse(const std::string& source) {
    Parser p(source);
    return Expr(source, p.parse());
}

std::int64_t Expr::eval(const Bindings& env) const { return eval_node(*root_, env); }

std::set<std::string> Expr::variables() const {
    std::set<std::string> out;
    collect(*root_, out);
    return out;
}

}  // namespace qcong::engine
