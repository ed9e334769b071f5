#include "vpn/dsl.hpp"
#include "vpn/validate.hpp"

#include <charconv>
#include <optional>
#include <set>

namespace vpn {

std::string to_string(const Diagnostic& d)
{
    return std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": " + d.message;
}

namespace {

std::string join_messages(const std::vector<Diagnostic>& diagnostics)
{
    std::string out;
    for (const auto& d : diagnostics) {
        if (!out.empty())
            out += "\n";
        out += to_string(d);
    }
    return out;
}

} // namespace

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_messages(diagnostics)), diagnostics_(std::move(diagnostics))
{
}

namespace {

const std::set<std::string_view> kKeywords = {
    "net", "const", "var", "place", "trans", "arc", "gamma", "marking", "guard", "link", "empty", "true",
};

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Int, Sym, End };

struct Token
{
    Tok kind = Tok::End;
    std::string text;
    SourceSpan span;
};

class Lexer
{
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "", {line_, col_, 0}});
                return out;
            }
            const SourceSpan start{line_, col_, 0};
            const char c = src_[pos_];
            if (is_ident_start(c)) {
                std::size_t n = 1;
                while (pos_ + n < src_.size() && is_ident_char(src_[pos_ + n]))
                    ++n;
                out.push_back(take(Tok::Ident, n, start));
            } else if (c >= '0' && c <= '9') {
                std::size_t n = 1;
                while (pos_ + n < src_.size() && src_[pos_ + n] >= '0' && src_[pos_ + n] <= '9')
                    ++n;
                out.push_back(take(Tok::Int, n, start));
            } else if (auto n = symbol_length(); n > 0) {
                out.push_back(take(Tok::Sym, n, start));
            } else {
                throw ParseError({{{line_, col_, 1}, std::string("unexpected character '") + c + "'"}});
            }
        }
    }

private:
    static bool is_ident_start(char c)
    {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
    }
    static bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

    std::size_t symbol_length() const
    {
        static const char* two[] = {"->", "=>", "==", "!=", "&&", "||"};
        if (pos_ + 1 < src_.size())
            for (const char* s : two)
                if (src_[pos_] == s[0] && src_[pos_ + 1] == s[1])
                    return 2;
        switch (src_[pos_]) {
        case '!': case ':': case ',': case '{': case '}': case '(': case ')':
        case '/': case '*': case '+': case '-':
            return 1;
        default:
            return 0;
        }
    }

    Token take(Tok kind, std::size_t n, SourceSpan span)
    {
        span.length = n;
        Token t{kind, std::string(src_.substr(pos_, n)), span};
        pos_ += n;
        col_ += n;
        return t;
    }

    void skip_space()
    {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++col_;
                ++pos_;
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    ++pos_;
            } else {
                return;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

// ---------------------------------------------------------------------------
// Syntax tree

struct NameRef
{
    std::string text;
    SourceSpan span;
};

struct AstGuard
{
    Guard::Kind kind = Guard::Kind::True;
    NameRef lhs, rhs;
    std::vector<AstGuard> operands;
};

struct AstClause
{
    AstGuard condition;
    LinkDir dir = LinkDir::Add;
    NameRef variable;
};

struct AstTerm
{
    std::uint64_t count = 1;
    std::vector<NameRef> tuple;
};

struct AstTrans
{
    NameRef name;
    AstGuard guard;
    std::vector<AstClause> links;
};

struct AstArc
{
    NameRef source, target;
    bool empty = false;
    std::vector<AstTerm> terms;
};

struct AstGamma
{
    NameRef variable;
    std::vector<NameRef> members;
};

struct AstMarking
{
    NameRef place;
    std::vector<std::vector<NameRef>> tuples;
};

struct AstNet
{
    NameRef name;
    std::vector<std::pair<NameRef, unsigned>> constants;
    std::vector<NameRef> variables;
    std::vector<NameRef> places;
    std::vector<AstTrans> transitions;
    std::vector<AstArc> arcs;
    std::vector<AstGamma> gammas;
    std::vector<AstMarking> markings;
};

// ---------------------------------------------------------------------------
// Parser

class Parser
{
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    AstNet run()
    {
        AstNet net;
        if (!is_keyword("net"))
            fail(peek(), "missing net header");
        ++pos_;
        net.name = ident("net name");
        while (peek().kind != Tok::End) {
            const Token& kw = peek();
            if (accept_keyword("const")) {
                do {
                    NameRef n = ident("constant name");
                    unsigned arity = 1;
                    if (accept_sym("/"))
                        arity = integer<unsigned>("arity");
                    net.constants.emplace_back(std::move(n), arity);
                } while (accept_sym(","));
            } else if (accept_keyword("var")) {
                do
                    net.variables.push_back(ident("variable name"));
                while (accept_sym(","));
            } else if (accept_keyword("place")) {
                do
                    net.places.push_back(ident("place name"));
                while (accept_sym(","));
            } else if (accept_keyword("trans")) {
                net.transitions.push_back(transition());
            } else if (accept_keyword("arc")) {
                net.arcs.push_back(arc());
            } else if (accept_keyword("gamma")) {
                AstGamma g;
                g.variable = ident("variable name");
                expect_sym("{");
                do
                    g.members.push_back(ident("constant name"));
                while (accept_sym(","));
                expect_sym("}");
                net.gammas.push_back(std::move(g));
            } else if (accept_keyword("marking")) {
                AstMarking m;
                m.place = ident("place name");
                expect_sym("{");
                do
                    m.tuples.push_back(tuple());
                while (accept_sym(","));
                expect_sym("}");
                net.markings.push_back(std::move(m));
            } else {
                fail(kw, "expected a declaration, found '" + kw.text + "'");
            }
        }
        return net;
    }

private:
    AstTrans transition()
    {
        AstTrans t;
        t.name = ident("transition name");
        if (accept_keyword("guard"))
            t.guard = bexpr();
        if (accept_keyword("link")) {
            do {
                AstClause c;
                c.condition = bexpr();
                expect_sym("=>");
                if (accept_sym("+"))
                    c.dir = LinkDir::Add;
                else if (accept_sym("-"))
                    c.dir = LinkDir::Remove;
                else
                    fail(peek(), "expected '+' or '-' after '=>'");
                c.variable = ident("variable name");
                t.links.push_back(std::move(c));
            } while (accept_sym(","));
        }
        return t;
    }

    AstArc arc()
    {
        AstArc a;
        a.source = ident("arc source");
        expect_sym("->");
        a.target = ident("arc target");
        expect_sym(":");
        if (accept_keyword("empty")) {
            a.empty = true;
            return a;
        }
        do {
            AstTerm term;
            if (peek().kind == Tok::Int) {
                term.count = integer<std::uint64_t>("multiplicity");
                expect_sym("*");
            }
            term.tuple = tuple();
            a.terms.push_back(std::move(term));
        } while (accept_sym("+"));
        return a;
    }

    std::vector<NameRef> tuple()
    {
        if (!accept_sym("("))
            return {ident("name")};
        std::vector<NameRef> out;
        do
            out.push_back(ident("name"));
        while (accept_sym(","));
        expect_sym(")");
        return out;
    }

    AstGuard bexpr()
    {
        AstGuard lhs = band();
        while (accept_sym("||")) {
            AstGuard g;
            g.kind = Guard::Kind::Or;
            g.operands.push_back(std::move(lhs));
            g.operands.push_back(band());
            lhs = std::move(g);
        }
        return lhs;
    }

    AstGuard band()
    {
        AstGuard lhs = batom();
        while (accept_sym("&&")) {
            AstGuard g;
            g.kind = Guard::Kind::And;
            g.operands.push_back(std::move(lhs));
            g.operands.push_back(batom());
            lhs = std::move(g);
        }
        return lhs;
    }

    AstGuard batom()
    {
        if (accept_keyword("true"))
            return {};
        if (accept_sym("!")) {
            AstGuard g;
            g.kind = Guard::Kind::Not;
            g.operands.push_back(batom());
            return g;
        }
        if (accept_sym("(")) {
            AstGuard g = bexpr();
            expect_sym(")");
            return g;
        }
        AstGuard g;
        g.lhs = ident("guard operand");
        if (accept_sym("=="))
            g.kind = Guard::Kind::Eq;
        else if (accept_sym("!="))
            g.kind = Guard::Kind::Neq;
        else
            fail(peek(), "expected '==' or '!='");
        g.rhs = ident("guard operand");
        return g;
    }

    // -- token helpers

    const Token& peek() const { return toks_[pos_]; }

    bool is_keyword(std::string_view kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

    bool accept_keyword(std::string_view kw)
    {
        if (!is_keyword(kw))
            return false;
        ++pos_;
        return true;
    }

    bool accept_sym(std::string_view s)
    {
        if (peek().kind != Tok::Sym || peek().text != s)
            return false;
        ++pos_;
        return true;
    }

    void expect_sym(std::string_view s)
    {
        if (!accept_sym(s))
            fail(peek(), "expected '" + std::string(s) + "'" + found());
    }

    NameRef ident(const char* what)
    {
        const Token& t = peek();
        if (t.kind != Tok::Ident)
            fail(t, std::string("expected ") + what + found());
        if (kKeywords.count(t.text))
            fail(t, std::string("expected ") + what + ", found keyword '" + t.text + "'");
        ++pos_;
        return {t.text, t.span};
    }

    template <typename T>
    T integer(const char* what)
    {
        const Token& t = peek();
        if (t.kind != Tok::Int)
            fail(t, std::string("expected ") + what + found());
        T value{};
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc() || value == 0)
            fail(t, std::string("invalid ") + what + " '" + t.text + "'");
        ++pos_;
        return value;
    }

    std::string found() const
    {
        return peek().kind == Tok::End ? ", found end of input" : ", found '" + peek().text + "'";
    }

    [[noreturn]] void fail(const Token& at, std::string message) const
    {
        throw ParseError({{at.span, std::move(message)}});
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Name resolution

class Resolver
{
public:
    NetDocument run(const AstNet& ast)
    {
        doc_.net.name = ast.name.text;
        doc_.spans["net"] = ast.name.span;

        for (const auto& [n, arity] : ast.constants) {
            if (n.text == kEpsilon) {
                error(n, "'eps' is reserved for the black token");
                continue;
            }
            if (!doc_.net.constants.emplace(n.text, arity).second)
                error(n, "duplicate constant '" + n.text + "'");
            doc_.spans.emplace("const:" + n.text, n.span);
        }
        for (const auto& n : ast.variables) {
            if (n.text == kEpsilon)
                error(n, "'eps' is reserved for the black token");
            else if (doc_.net.is_constant(n.text))
                error(n, "'" + n.text + "' is already declared as a constant");
            else if (!doc_.net.variables.insert(n.text).second)
                error(n, "duplicate variable '" + n.text + "'");
            doc_.spans.emplace("var:" + n.text, n.span);
        }
        for (const auto& n : ast.places) {
            if (!doc_.net.is_constant(n.text) || n.text == kEpsilon)
                error(n, "place '" + n.text + "' is not a declared constant");
            else if (!doc_.net.places.insert(n.text).second)
                error(n, "duplicate place '" + n.text + "'");
            doc_.spans.emplace("place:" + n.text, n.span);
        }
        // Transitions first so arcs can tell which endpoint is the transition.
        for (const auto& t : ast.transitions) {
            if (doc_.net.transitions.count(t.name.text)) {
                error(t.name, "duplicate transition '" + t.name.text + "'");
                continue;
            }
            doc_.net.transitions.emplace(t.name.text, Transition{});
            doc_.spans.emplace("trans:" + t.name.text, t.name.span);
        }
        for (const auto& t : ast.transitions) {
            Transition& tr = doc_.net.transitions[t.name.text];
            tr.guard = guard(t.guard);
            for (const auto& c : t.links) {
                if (!doc_.net.is_variable(c.variable.text))
                    error(c.variable, "link target '" + c.variable.text + "' is not a declared variable");
                tr.links.push_back({guard(c.condition), c.variable.text, c.dir});
            }
        }
        for (const auto& a : ast.arcs)
            arc(a);
        for (const auto& g : ast.gammas) {
            doc_.spans.emplace("gamma:" + g.variable.text, g.variable.span);
            if (!doc_.net.is_variable(g.variable.text)) {
                error(g.variable, "gamma key '" + g.variable.text + "' is not a declared variable");
                continue;
            }
            for (const auto& c : g.members) {
                if (!doc_.net.is_constant(c.text))
                    error(c, "undeclared constant '" + c.text + "'");
                else
                    doc_.net.gamma0.add(g.variable.text, c.text);
            }
        }
        for (const auto& m : ast.markings) {
            doc_.spans.emplace("marking:" + m.place.text, m.place.span);
            if (!doc_.net.is_place(m.place.text)) {
                error(m.place, "marking of '" + m.place.text + "', which is not a place");
                continue;
            }
            for (const auto& tuple : m.tuples) {
                vpn::Token token;
                bool ok = true;
                for (const auto& c : tuple) {
                    if (!doc_.net.is_constant(c.text)) {
                        error(c, doc_.net.is_variable(c.text) ? "variable '" + c.text + "' in a marking"
                                                               : "undeclared constant '" + c.text + "'");
                        ok = false;
                    }
                    token.push_back(c.text);
                }
                if (ok)
                    doc_.net.m0[m.place.text].add(token);
            }
        }

        if (diags_.empty()) {
            for (const auto& v : validate_net(doc_.net)) {
                auto it = doc_.spans.find(v.subject);
                diags_.push_back({it == doc_.spans.end() ? doc_.spans["net"] : it->second, v.message});
            }
        }
        if (!diags_.empty())
            throw ParseError(std::move(diags_));
        return std::move(doc_);
    }

private:
    void error(const NameRef& at, std::string message) { diags_.push_back({at.span, std::move(message)}); }

    std::optional<Symbol> symbol(const NameRef& n)
    {
        if (doc_.net.is_constant(n.text))
            return Symbol::constant(n.text);
        if (doc_.net.is_variable(n.text))
            return Symbol::var(n.text);
        error(n, "undeclared name '" + n.text + "'");
        return std::nullopt;
    }

    Guard guard(const AstGuard& g)
    {
        switch (g.kind) {
        case Guard::Kind::True:
            return Guard::always();
        case Guard::Kind::Not:
            return Guard::negate(guard(g.operands[0]));
        case Guard::Kind::And:
            return Guard::conj(guard(g.operands[0]), guard(g.operands[1]));
        case Guard::Kind::Or:
            return Guard::disj(guard(g.operands[0]), guard(g.operands[1]));
        case Guard::Kind::Eq:
        case Guard::Kind::Neq: {
            auto l = symbol(g.lhs);
            auto r = symbol(g.rhs);
            if (!l || !r)
                return Guard::always();
            return g.kind == Guard::Kind::Eq ? Guard::eq(*l, *r) : Guard::neq(*l, *r);
        }
        }
        return Guard::always();
    }

    void arc(const AstArc& a)
    {
        const auto& net = doc_.net;
        const bool src_t = net.is_transition(a.source.text);
        const bool dst_t = net.is_transition(a.target.text);
        const auto subject = arc_subject(a.source.text, a.target.text);
        if (src_t == dst_t) {
            const NameRef& at = src_t ? a.target : (net.is_constant(a.source.text) || net.is_variable(a.source.text)
                                                        ? a.target
                                                        : a.source);
            if (!src_t && !net.is_constant(at.text) && !net.is_variable(at.text))
                error(at, "undeclared name '" + at.text + "'");
            else
                error(a.source, "arc " + a.source.text + " -> " + a.target.text +
                                    " must connect a transition with a place or variable");
            return;
        }
        const NameRef& other = src_t ? a.target : a.source;
        if (!net.is_variable(other.text) && !net.is_place(other.text)) {
            error(other, net.is_constant(other.text) ? "'" + other.text + "' is not a place"
                                                     : "undeclared name '" + other.text + "'");
            return;
        }
        if (doc_.net.arcs.count({a.source.text, a.target.text})) {
            error(a.source, "duplicate arc " + a.source.text + " -> " + a.target.text);
            return;
        }
        doc_.spans.emplace(subject, a.source.span);
        ArcExpr w;
        w.empty_set = a.empty;
        for (const auto& term : a.terms) {
            Pattern p;
            bool ok = true;
            for (const auto& n : term.tuple) {
                auto s = symbol(n);
                ok = ok && s.has_value();
                if (s)
                    p.push_back(*s);
            }
            if (ok)
                w.terms[p] += term.count;
        }
        doc_.net.arcs.emplace(ArcKey{a.source.text, a.target.text}, std::move(w));
    }

    NetDocument doc_;
    std::vector<Diagnostic> diags_;
};

} // namespace

NetDocument parse(std::string_view text)
{
    AstNet ast = Parser(Lexer(text).run()).run();
    return Resolver().run(ast);
}

} // namespace vpn
