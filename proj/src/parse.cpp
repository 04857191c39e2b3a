#include "regsing/parse.hpp"

#include "regsing/integrable.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <utility>

namespace regsing {

namespace {

enum class Tok {
    integer,
    name,
    plus,
    minus,
    star,
    slash,
    caret,
    lparen,
    rparen,
    lbrack,
    rbrack,
    comma,
    colon,
    end,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok k, std::string s, int l, int c) { out.push_back({k, std::move(s), l, c}); };
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++col;
            ++i;
            continue;
        }
        int l = line, c = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            push(Tok::integer, text.substr(i, j - i), l, c);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            push(Tok::name, text.substr(i, j - i), l, c);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        Tok k;
        switch (ch) {
            case '+': k = Tok::plus; break;
            case '-': k = Tok::minus; break;
            case '*': k = Tok::star; break;
            case '/': k = Tok::slash; break;
            case '^': k = Tok::caret; break;
            case '(': k = Tok::lparen; break;
            case ')': k = Tok::rparen; break;
            case '[': k = Tok::lbrack; break;
            case ']': k = Tok::rbrack; break;
            case ',': k = Tok::comma; break;
            case ':': k = Tok::colon; break;
            default:
                throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
        }
        push(k, std::string(1, ch), l, c);
        ++col;
        ++i;
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

enum class NodeKind {
    number,
    imag,
    param,
    var,     // vkind 't', 'x', 'h' (theta), 'D' (Dx)
    call,    // catalog entry
    add,
    sub,
    mul,
    divide,
    power,
    neg,
    matrix,
};

struct Node {
    NodeKind kind;
    int line = 0, col = 0;
    Scalar value;           // number
    char vkind = 0;         // var
    int index = 0;          // var (zero based) and power exponent
    std::string name;       // call
    std::vector<std::unique_ptr<Node>> args;  // call arguments
    std::unique_ptr<Node> a, b;
    std::vector<std::vector<std::unique_ptr<Node>>> rows;  // matrix
    std::optional<OpMatrix> built;  // call result, filled by the scan pass
};

using NodePtr = std::unique_ptr<Node>;

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    NodePtr parse() {
        NodePtr e = expr();
        expect(Tok::end, "unexpected trailing input");
        return e;
    }

    NodePtr parse_list_item(bool& more) {
        NodePtr e = expr();
        if (peek().kind == Tok::comma) {
            advance();
            more = true;
        } else {
            expect(Tok::end, "unexpected trailing input");
            more = false;
        }
        return e;
    }

  private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }

    void expect(Tok k, const std::string& msg) {
        if (peek().kind != k) throw ParseError(msg, peek().line, peek().col);
        advance();
    }

    static NodePtr make(NodeKind k, const Token& at) {
        auto n = std::make_unique<Node>();
        n->kind = k;
        n->line = at.line;
        n->col = at.col;
        return n;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const Token& op = advance();
            NodePtr n = make(op.kind == Tok::plus ? NodeKind::add : NodeKind::sub, op);
            n->a = std::move(lhs);
            n->b = term();
            lhs = std::move(n);
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = factor();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            const Token& op = advance();
            NodePtr n = make(op.kind == Tok::star ? NodeKind::mul : NodeKind::divide, op);
            n->a = std::move(lhs);
            n->b = factor();
            lhs = std::move(n);
        }
        return lhs;
    }

    NodePtr factor() {
        if (peek().kind == Tok::minus) {
            const Token& op = advance();
            NodePtr n = make(NodeKind::neg, op);
            n->a = factor();
            return n;
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (peek().kind == Tok::caret) {
            const Token& op = advance();
            if (peek().kind != Tok::integer)
                throw ParseError("exponent must be a nonnegative integer", peek().line,
                                 peek().col);
            const Token& e = advance();
            if (e.text.size() > 4) throw ParseError("exponent is too large", e.line, e.col);
            NodePtr n = make(NodeKind::power, op);
            n->a = std::move(base);
            n->index = std::stoi(e.text);
            return n;
        }
        return base;
    }

    NodePtr atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::integer: {
                advance();
                NodePtr n = make(NodeKind::number, t);
                n->value = Scalar(GaussianRational(BigRat(BigInt(t.text))));
                return n;
            }
            case Tok::lparen: {
                advance();
                NodePtr e = expr();
                expect(Tok::rparen, "expected ')'");
                return e;
            }
            case Tok::lbrack:
                return matrix();
            case Tok::name:
                return name_atom();
            default:
                throw ParseError("expected a value", t.line, t.col);
        }
    }

    NodePtr matrix() {
        const Token& open = peek();
        expect(Tok::lbrack, "expected '['");
        NodePtr n = make(NodeKind::matrix, open);
        do {
            expect(Tok::lbrack, "expected '[' opening a matrix row");
            std::vector<NodePtr> row;
            row.push_back(expr());
            while (peek().kind == Tok::comma) {
                advance();
                row.push_back(expr());
            }
            expect(Tok::rbrack, "expected ']' closing a matrix row");
            n->rows.push_back(std::move(row));
        } while (peek().kind == Tok::comma && (advance(), true));
        expect(Tok::rbrack, "expected ']' closing the matrix");
        size_t m = n->rows.size();
        for (const auto& row : n->rows)
            if (row.size() != m)
                throw ParseError("matrix must be square", open.line, open.col);
        return n;
    }

    NodePtr name_atom() {
        const Token& t = advance();
        const std::string& s = t.text;
        if (s == "i") return make(NodeKind::imag, t);
        if (s == "z") return make(NodeKind::param, t);
        if (s == "catalog") {
            expect(Tok::colon, "expected ':' after catalog");
            if (peek().kind != Tok::name)
                throw ParseError("expected a catalog entry name", peek().line, peek().col);
            const Token& name = advance();
            NodePtr n = make(NodeKind::call, t);
            n->name = name.text;
            expect(Tok::lparen, "expected '(' after the catalog entry name");
            if (peek().kind != Tok::rparen) {
                n->args.push_back(expr());
                while (peek().kind == Tok::comma) {
                    advance();
                    n->args.push_back(expr());
                }
            }
            expect(Tok::rparen, "expected ')' closing the catalog arguments");
            return n;
        }
        size_t d = s.size();
        while (d > 0 && std::isdigit(static_cast<unsigned char>(s[d - 1]))) --d;
        std::string stem = s.substr(0, d), digits = s.substr(d);
        if (stem == "Dt")
            throw ParseError("Dt is not admissible at a regular singularity; use th (theta = t*Dt)",
                             t.line, t.col);
        char vk = 0;
        if (stem == "t") vk = 't';
        else if (stem == "x") vk = 'x';
        else if (stem == "th") vk = 'h';
        else if (stem == "Dx") vk = 'D';
        if (vk == 0) throw ParseError("unknown name '" + s + "'", t.line, t.col);
        if (digits.empty())
            throw ParseError("variable needs an index, like " + stem + "1", t.line, t.col);
        if (digits.size() > 4) throw ParseError("variable index is too large", t.line, t.col);
        int idx = std::stoi(digits);
        if (idx < 1) throw ParseError("variable indices start at 1", t.line, t.col);
        NodePtr n = make(NodeKind::var, t);
        n->vkind = vk;
        n->index = idx - 1;
        return n;
    }
};

Scalar eval_scalar(const Node* nd) {
    switch (nd->kind) {
        case NodeKind::number: return nd->value;
        case NodeKind::imag: return Scalar::i();
        case NodeKind::param: return Scalar::z();
        case NodeKind::add: return eval_scalar(nd->a.get()) + eval_scalar(nd->b.get());
        case NodeKind::sub: return eval_scalar(nd->a.get()) - eval_scalar(nd->b.get());
        case NodeKind::mul: return eval_scalar(nd->a.get()) * eval_scalar(nd->b.get());
        case NodeKind::divide: {
            Scalar d = eval_scalar(nd->b.get());
            if (d.is_zero()) throw ParseError("division by zero", nd->line, nd->col);
            return eval_scalar(nd->a.get()) / d;
        }
        case NodeKind::neg: return -eval_scalar(nd->a.get());
        case NodeKind::power: return eval_scalar(nd->a.get()).pow(nd->index);
        default:
            throw ParseError("expected a scalar value", nd->line, nd->col);
    }
}

struct Dims {
    int n = 0;
    int nx = 0;
};

// resolves catalog calls (caching the built operator) and collects the
// variable counts the expression demands
void scan(Node* nd, Dims& d, const ParseOptions& opts) {
    switch (nd->kind) {
        case NodeKind::var:
            if (nd->vkind == 't' || nd->vkind == 'h')
                d.n = std::max(d.n, nd->index + 1);
            else
                d.nx = std::max(d.nx, nd->index + 1);
            break;
        case NodeKind::call: {
            std::vector<Scalar> args;
            for (const auto& a : nd->args) args.push_back(eval_scalar(a.get()));
            try {
                nd->built = catalog_build(nd->name, args, opts.t_order, opts.x_order).op;
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception& e) {
                throw ParseError(e.what(), nd->line, nd->col);
            }
            d.n = std::max(d.n, nd->built->n());
            d.nx = std::max(d.nx, nd->built->nx());
            break;
        }
        case NodeKind::add:
        case NodeKind::sub:
        case NodeKind::mul:
        case NodeKind::divide:
            scan(nd->a.get(), d, opts);
            scan(nd->b.get(), d, opts);
            break;
        case NodeKind::neg:
        case NodeKind::power:
            scan(nd->a.get(), d, opts);
            break;
        case NodeKind::matrix:
            for (auto& row : nd->rows)
                for (auto& e : row) scan(e.get(), d, opts);
            break;
        default:
            break;
    }
}

// value during evaluation: a scalar stays symbolic until it meets an operator
struct Val {
    std::optional<Scalar> s;
    std::optional<OpMatrix> m;
};

struct EvalCtx {
    int n, nx, T, X;

    OpMatrix from_scalar(const Scalar& c, int msize) const {
        RegOperator zero(n, nx, T, X);
        OpMatrix r(msize, zero);
        for (int i = 0; i < msize; ++i) r.at(i, i) = RegOperator::constant(n, nx, T, X, c);
        return r;
    }
};

Val eval(const Node* nd, const EvalCtx& ctx);

Val eval_binary(const Node* nd, const EvalCtx& ctx) {
    Val a = eval(nd->a.get(), ctx);
    Val b = eval(nd->b.get(), ctx);
    bool scalars = a.s && b.s;
    if (nd->kind == NodeKind::divide) {
        if (!b.s) throw ParseError("division needs a scalar divisor", nd->line, nd->col);
        if (b.s->is_zero()) throw ParseError("division by zero", nd->line, nd->col);
        if (a.s) return {*a.s / *b.s, std::nullopt};
        return {std::nullopt, *a.m * (Scalar(1) / *b.s)};
    }
    if (scalars) {
        switch (nd->kind) {
            case NodeKind::add: return {*a.s + *b.s, std::nullopt};
            case NodeKind::sub: return {*a.s - *b.s, std::nullopt};
            default: return {*a.s * *b.s, std::nullopt};
        }
    }
    if (nd->kind == NodeKind::mul) {
        if (a.s) return {std::nullopt, *b.m * *a.s};
        if (b.s) return {std::nullopt, *a.m * *b.s};
    }
    OpMatrix lhs = a.m ? *a.m : ctx.from_scalar(*a.s, b.m->m());
    OpMatrix rhs = b.m ? *b.m : ctx.from_scalar(*b.s, a.m->m());
    if (lhs.m() != rhs.m()) throw ParseError("matrix sizes disagree", nd->line, nd->col);
    switch (nd->kind) {
        case NodeKind::add: return {std::nullopt, lhs + rhs};
        case NodeKind::sub: return {std::nullopt, lhs - rhs};
        default: return {std::nullopt, lhs * rhs};
    }
}

Val eval(const Node* nd, const EvalCtx& ctx) {
    switch (nd->kind) {
        case NodeKind::number: return {nd->value, std::nullopt};
        case NodeKind::imag: return {Scalar::i(), std::nullopt};
        case NodeKind::param: return {Scalar::z(), std::nullopt};
        case NodeKind::var: {
            RegOperator p;
            switch (nd->vkind) {
                case 't': p = RegOperator::t_var(ctx.n, ctx.nx, ctx.T, ctx.X, nd->index); break;
                case 'x': p = RegOperator::x_var(ctx.n, ctx.nx, ctx.T, ctx.X, nd->index); break;
                case 'h': p = RegOperator::theta(ctx.n, ctx.nx, ctx.T, ctx.X, nd->index); break;
                default: p = RegOperator::dx(ctx.n, ctx.nx, ctx.T, ctx.X, nd->index); break;
            }
            return {std::nullopt, OpMatrix::scalar(p)};
        }
        case NodeKind::call: {
            if (nd->built->n() != ctx.n || nd->built->nx() != ctx.nx)
                throw ParseError("catalog operator and the surrounding expression disagree on "
                                 "variable counts",
                                 nd->line, nd->col);
            return {std::nullopt, *nd->built};
        }
        case NodeKind::neg: {
            Val a = eval(nd->a.get(), ctx);
            if (a.s) return {-*a.s, std::nullopt};
            return {std::nullopt, *a.m * Scalar(-1)};
        }
        case NodeKind::power: {
            Val a = eval(nd->a.get(), ctx);
            if (a.s) return {a.s->pow(nd->index), std::nullopt};
            OpMatrix r = ctx.from_scalar(Scalar(1), a.m->m());
            for (int k = 0; k < nd->index; ++k) r = r * *a.m;
            return {std::nullopt, r};
        }
        case NodeKind::matrix: {
            int m = static_cast<int>(nd->rows.size());
            RegOperator zero(ctx.n, ctx.nx, ctx.T, ctx.X);
            OpMatrix r(m, zero);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    Val v = eval(nd->rows[i][j].get(), ctx);
                    if (v.s) {
                        r.at(i, j) = RegOperator::constant(ctx.n, ctx.nx, ctx.T, ctx.X, *v.s);
                    } else {
                        if (v.m->m() != 1)
                            throw ParseError("matrix entries must be scalar operators",
                                             nd->rows[i][j]->line, nd->rows[i][j]->col);
                        r.at(i, j) = v.m->at(0, 0);
                    }
                }
            return {std::nullopt, r};
        }
        default:
            return eval_binary(nd, ctx);
    }
}

}  // namespace

OpMatrix parse_expression(const std::string& text, const ParseOptions& opts) {
    Parser parser(tokenize(text));
    NodePtr root = parser.parse();
    Dims d;
    scan(root.get(), d, opts);
    EvalCtx ctx{std::max({d.n, opts.min_walls, 1}), std::max(d.nx, opts.min_flat), opts.t_order,
                opts.x_order};
    Val v = eval(root.get(), ctx);
    if (v.s) return OpMatrix::scalar(RegOperator::constant(ctx.n, ctx.nx, ctx.T, ctx.X, *v.s));
    return *v.m;
}

Scalar parse_scalar(const std::string& text) {
    Parser parser(tokenize(text));
    NodePtr root = parser.parse();
    return eval_scalar(root.get());
}

std::vector<Scalar> parse_scalar_list(const std::string& text) {
    Parser parser(tokenize(text));
    std::vector<Scalar> out;
    bool more = true;
    while (more) out.push_back(eval_scalar(parser.parse_list_item(more).get()));
    return out;
}

MPoly parse_x_polynomial(const std::string& text, int nvars, const ParseOptions& opts) {
    ParseOptions o = opts;
    o.min_flat = std::max(o.min_flat, nvars);
    OpMatrix p = parse_expression(text, o);
    if (p.m() != 1 || p.nx() > nvars)
        throw ParseError("expected a polynomial in x1..x" + std::to_string(nvars), 1, 1);
    const RegOperator& q = p.at(0, 0);
    MPoly r(nvars);
    for (const auto& [k, s] : q.terms()) {
        if (mi_abs(k.alpha) + mi_abs(k.beta) > 0)
            throw ParseError("expected a polynomial in the flat variables, found a derivative", 1,
                             1);
        for (const auto& [g, c] : s.coefficients()) {
            if (mi_abs(g) > 0)
                throw ParseError("expected a polynomial in the flat variables, found a wall "
                                 "variable",
                                 1, 1);
            r += c;
        }
    }
    return r;
}

}  // namespace regsing
