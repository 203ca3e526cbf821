#pragma once

// Integer expressions over named parameters, used by the claim catalog for
// subscripts, progressions and moduli, e.g. "2^k*i - 2^(k-1) - 2".
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?          right-associative
//   atom   := integer | identifier | '(' expr ')'
//
// Division must be exact; exponents must be non-negative; all arithmetic is
// overflow-checked 64-bit.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

namespace qcong::engine {

class ExprError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Bindings = std::map<std::string, std::int64_t>;

class Expr {
public:
    struct Node;

    static Expr parse(const std::string& source);

    std::int64_t eval(const Bindings& env) const;
    std::set<std::string> variables() const;
    const std::string& source() const noexcept { return source_; }

    friend bool operator==(const Expr& a, const Expr& b) { return a.source_ == b.source_; }

private:
    Expr(std::string source, std::shared_ptr<const Node> root);

    std::string source_;
    std::shared_ptr<const Node> root_;
};

}  // namespace qcong::engine
