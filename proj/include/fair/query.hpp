#ifndef FAIR_QUERY_HPP
#define FAIR_QUERY_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fair/error.hpp"
#include "fair/record.hpp"
#include "fair/utf8.hpp"

namespace fair::query {

/*======================================================================================================================
 * AST
 *====================================================================================================================*/

struct ColumnRef
{
    std::string name;
    friend bool operator==(const ColumnRef&, const ColumnRef&) = default;
};

/// COUNT(*) when `column` is empty, else COUNT(column).
struct CountAgg
{
    std::optional<std::string> column;
    friend bool operator==(const CountAgg&, const CountAgg&) = default;
};

using SelectExpr = std::variant<ColumnRef, CountAgg>;

struct SelectItem
{
    SelectExpr expr;
    std::optional<std::string> alias;
    friend bool operator==(const SelectItem&, const SelectItem&) = default;
};

/// LIKE right-hand side: a string literal, or concat() of pattern expressions.
/// Column and number arguments parse but are rejected by fold_constants.
struct PatternExpr
{
    enum class Kind { literal, number, column, concat };

    Kind kind = Kind::literal;
    std::string text;              ///< literal text or column name
    double number = 0;
    std::vector<PatternExpr> args; ///< concat arguments

    static PatternExpr literal(std::string s) { return {Kind::literal, std::move(s), 0, {}}; }
    static PatternExpr concat(std::vector<PatternExpr> a) { return {Kind::concat, {}, 0, std::move(a)}; }

    friend bool operator==(const PatternExpr&, const PatternExpr&) = default;
};

struct Predicate
{
    enum class Kind { like, eq, neq, and_, or_, not_ };

    Kind kind = Kind::like;
    std::string column;              ///< like / eq / neq
    PatternExpr pattern;             ///< like
    FieldValue literal;              ///< eq / neq (Text or Number)
    std::vector<Predicate> children; ///< and / or (2), not (1)

    static Predicate like(std::string col, PatternExpr p) { return {Kind::like, std::move(col), std::move(p), {}, {}}; }
    static Predicate eq(std::string col, FieldValue v) { return {Kind::eq, std::move(col), {}, std::move(v), {}}; }
    static Predicate neq(std::string col, FieldValue v) { return {Kind::neq, std::move(col), {}, std::move(v), {}}; }
    static Predicate and_(Predicate a, Predicate b) { return {Kind::and_, {}, {}, {}, {std::move(a), std::move(b)}}; }
    static Predicate or_(Predicate a, Predicate b) { return {Kind::or_, {}, {}, {}, {std::move(a), std::move(b)}}; }
    static Predicate not_(Predicate a) { return {Kind::not_, {}, {}, {}, {std::move(a)}}; }

    friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct OrderItem
{
    SelectExpr expr;
    bool descending = false;
    friend bool operator==(const OrderItem&, const OrderItem&) = default;
};

struct QueryAst
{
    bool star = false;
    std::vector<SelectItem> select_list; ///< empty iff star
    std::string table;
    std::optional<Predicate> predicate;
    std::vector<std::string> group_by;
    std::vector<OrderItem> order_by;
    std::optional<std::size_t> limit;

    bool has_aggregate() const
    {
        return std::any_of(select_list.begin(), select_list.end(),
                           [](const SelectItem& s) { return std::holds_alternative<CountAgg>(s.expr); });
    }

    friend bool operator==(const QueryAst&, const QueryAst&) = default;
};

/// Output column name of a select item: alias, column name, or "count(*)" / "count(col)".
inline std::string output_name(const SelectItem& item)
{
    if (item.alias)
        return *item.alias;
    if (const auto* c = std::get_if<ColumnRef>(&item.expr))
        return c->name;
    const auto& agg = std::get<CountAgg>(item.expr);
    return "count(" + agg.column.value_or("*") + ")";
}

/*======================================================================================================================
 * Lexer
 *====================================================================================================================*/

enum class TokenKind {
    identifier, keyword, string, number,
    comma, lparen, rparen, star, eq, neq, semicolon, end,
};

struct Token
{
    TokenKind kind;
    std::string text; ///< keyword upper-cased; string literal unescaped
    std::size_t pos;
};

inline constexpr std::string_view keywords[] = {
    "SELECT", "FROM", "WHERE", "GROUP", "BY", "ORDER", "ASC", "DESC", "LIMIT",
    "AND", "OR", "NOT", "LIKE", "AS", "COUNT", "CONCAT",
};

inline bool is_keyword(std::string_view upper)
{
    return std::find(std::begin(keywords), std::end(keywords), upper) != std::end(keywords);
}

inline std::string to_upper(std::string_view s)
{
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

inline std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t i = 0;
    auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };

    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (is_ident_start(c)) {
            while (i < text.size() && is_ident(text[i]))
                ++i;
            std::string word(text.substr(start, i - start));
            std::string upper = to_upper(word);
            if (is_keyword(upper))
                out.push_back({TokenKind::keyword, std::move(upper), start});
            else
                out.push_back({TokenKind::identifier, std::move(word), start});
        } else if (is_digit(c) || ((c == '-' || c == '.') && i + 1 < text.size() && is_digit(text[i + 1]))) {
            ++i;
            while (i < text.size() && (is_digit(text[i]) || text[i] == '.' || text[i] == 'e' || text[i] == 'E'
                                       || ((text[i] == '-' || text[i] == '+') && (text[i - 1] == 'e' || text[i - 1] == 'E'))))
                ++i;
            out.push_back({TokenKind::number, std::string(text.substr(start, i - start)), start});
        } else if (c == '\'') {
            std::string value;
            ++i;
            bool closed = false;
            while (i < text.size()) {
                if (text[i] == '\'') {
                    if (i + 1 < text.size() && text[i + 1] == '\'') {
                        value += '\'';
                        i += 2;
                        continue;
                    }
                    ++i;
                    closed = true;
                    break;
                }
                value += text[i++];
            }
            if (!closed)
                throw ParseError(start, "unterminated string literal");
            out.push_back({TokenKind::string, std::move(value), start});
        } else {
            TokenKind kind;
            std::size_t len = 1;
            switch (c) {
                case ',': kind = TokenKind::comma; break;
                case '(': kind = TokenKind::lparen; break;
                case ')': kind = TokenKind::rparen; break;
                case '*': kind = TokenKind::star; break;
                case '=': kind = TokenKind::eq; break;
                case ';': kind = TokenKind::semicolon; break;
                case '<':
                case '!':
                    if (i + 1 < text.size() && text[i + 1] == (c == '<' ? '>' : '=')) {
                        kind = TokenKind::neq;
                        len = 2;
                        break;
                    }
                    [[fallthrough]];
                default:
                    throw ParseError(start, "unexpected character '" + std::string(1, c) + "'");
            }
            i += len;
            out.push_back({kind, std::string(text.substr(start, len)), start});
        }
    }
    out.push_back({TokenKind::end, "", text.size()});
    return out;
}

/*======================================================================================================================
 * Parser
 *====================================================================================================================*/

namespace detail {

class Parser
{
  public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

    QueryAst parse_query()
    {
        QueryAst ast;
        expect_keyword("SELECT");
        if (peek().kind == TokenKind::star) {
            advance();
            ast.star = true;
        } else {
            ast.select_list.push_back(parse_select_item());
            while (accept(TokenKind::comma))
                ast.select_list.push_back(parse_select_item());
        }
        expect_keyword("FROM");
        ast.table = expect_identifier("table name");
        if (accept_keyword("WHERE"))
            ast.predicate = parse_or();
        if (accept_keyword("GROUP")) {
            expect_keyword("BY");
            ast.group_by.push_back(expect_identifier("column"));
            while (accept(TokenKind::comma))
                ast.group_by.push_back(expect_identifier("column"));
        }
        if (accept_keyword("ORDER")) {
            expect_keyword("BY");
            ast.order_by.push_back(parse_order_item());
            while (accept(TokenKind::comma))
                ast.order_by.push_back(parse_order_item());
        }
        if (accept_keyword("LIMIT")) {
            const Token& t = peek();
            std::size_t n = 0;
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
            if (t.kind != TokenKind::number || ec != std::errc{} || ptr != t.text.data() + t.text.size() || n == 0)
                fail("a positive integer");
            advance();
            ast.limit = n;
        }
        accept(TokenKind::semicolon);
        if (peek().kind != TokenKind::end)
            fail("end of query");
        return ast;
    }

  private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    static std::string describe(const Token& t)
    {
        switch (t.kind) {
            case TokenKind::identifier: return "identifier '" + t.text + "'";
            case TokenKind::keyword:    return t.text;
            case TokenKind::string:     return "string literal";
            case TokenKind::number:     return "number " + t.text;
            case TokenKind::end:        return "end of input";
            default:                    return "'" + t.text + "'";
        }
    }

    [[noreturn]] void fail(const std::string& expected) const
    {
        throw ParseError(peek().pos, "expected " + expected + " but found " + describe(peek()));
    }

    bool accept(TokenKind kind)
    {
        if (peek().kind != kind)
            return false;
        advance();
        return true;
    }

    bool is_keyword(std::string_view kw) const { return peek().kind == TokenKind::keyword && peek().text == kw; }

    bool accept_keyword(std::string_view kw)
    {
        if (!is_keyword(kw))
            return false;
        advance();
        return true;
    }

    void expect_keyword(std::string_view kw)
    {
        if (!accept_keyword(kw))
            fail(std::string(kw));
    }

    void expect(TokenKind kind, std::string_view what)
    {
        if (!accept(kind))
            fail(std::string(what));
    }

    std::string expect_identifier(std::string_view what)
    {
        if (peek().kind != TokenKind::identifier)
            fail(std::string(what));
        return advance().text;
    }

    SelectExpr parse_select_expr(std::string_view expected)
    {
        if (accept_keyword("COUNT")) {
            expect(TokenKind::lparen, "'('");
            CountAgg agg;
            if (!accept(TokenKind::star))
                agg.column = expect_identifier("'*' or column");
            expect(TokenKind::rparen, "')'");
            return agg;
        }
        if (peek().kind != TokenKind::identifier)
            fail(std::string(expected));
        return ColumnRef{advance().text};
    }

    SelectItem parse_select_item()
    {
        SelectItem item{parse_select_expr("column, COUNT or '*'"), std::nullopt};
        if (accept_keyword("AS"))
            item.alias = expect_identifier("alias");
        else if (peek().kind == TokenKind::identifier)
            item.alias = advance().text;
        return item;
    }

    OrderItem parse_order_item()
    {
        OrderItem item{parse_select_expr("column or COUNT"), false};
        if (accept_keyword("DESC"))
            item.descending = true;
        else
            accept_keyword("ASC");
        return item;
    }

    Predicate parse_or()
    {
        Predicate left = parse_and();
        while (accept_keyword("OR"))
            left = Predicate::or_(std::move(left), parse_and());
        return left;
    }

    Predicate parse_and()
    {
        Predicate left = parse_not();
        while (accept_keyword("AND"))
            left = Predicate::and_(std::move(left), parse_not());
        return left;
    }

    Predicate parse_not()
    {
        if (accept_keyword("NOT"))
            return Predicate::not_(parse_not());
        return parse_primary();
    }

    Predicate parse_primary()
    {
        if (accept(TokenKind::lparen)) {
            Predicate inner = parse_or();
            expect(TokenKind::rparen, "')'");
            return inner;
        }
        std::string column = expect_identifier("column or '('");
        if (accept_keyword("NOT")) {
            expect_keyword("LIKE");
            return Predicate::not_(Predicate::like(std::move(column), parse_pattern()));
        }
        if (accept_keyword("LIKE"))
            return Predicate::like(std::move(column), parse_pattern());
        if (accept(TokenKind::eq))
            return Predicate::eq(std::move(column), parse_literal());
        if (accept(TokenKind::neq))
            return Predicate::neq(std::move(column), parse_literal());
        fail("LIKE, '=' or '<>'");
    }

    FieldValue parse_literal()
    {
        const Token& t = peek();
        if (t.kind == TokenKind::string) {
            advance();
            return FieldValue::text(t.text);
        }
        if (t.kind == TokenKind::number)
            return FieldValue::number(parse_number_token());
        fail("string or number literal");
    }

    double parse_number_token()
    {
        const Token& t = peek();
        double value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size() || !std::isfinite(value))
            fail("a valid number");
        advance();
        return value;
    }

    PatternExpr parse_pattern()
    {
        const Token& t = peek();
        if (t.kind == TokenKind::string) {
            advance();
            return PatternExpr::literal(t.text);
        }
        if (t.kind == TokenKind::number) {
            PatternExpr p;
            p.kind = PatternExpr::Kind::number;
            p.number = parse_number_token();
            return p;
        }
        if (t.kind == TokenKind::identifier) {
            PatternExpr p;
            p.kind = PatternExpr::Kind::column;
            p.text = advance().text;
            return p;
        }
        if (accept_keyword("CONCAT")) {
            expect(TokenKind::lparen, "'('");
            std::vector<PatternExpr> args;
            args.push_back(parse_pattern());
            while (accept(TokenKind::comma))
                args.push_back(parse_pattern());
            expect(TokenKind::rparen, "')' or ','");
            return PatternExpr::concat(std::move(args));
        }
        fail("string literal or concat(...)");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

inline bool same_expr(const SelectExpr& a, const SelectExpr& b) { return a == b; }

// Structural rules that need no catalog: grouping consistency and ORDER BY
// items resolving to select output.
inline void check_structure(const QueryAst& ast)
{
    const bool aggregate = ast.has_aggregate() || !ast.group_by.empty();
    if (ast.star && aggregate)
        throw Error(ErrorCode::invalid_query, "SELECT * cannot be combined with GROUP BY or COUNT");
    if (aggregate) {
        for (const SelectItem& item : ast.select_list) {
            const auto* col = std::get_if<ColumnRef>(&item.expr);
            if (col && std::find(ast.group_by.begin(), ast.group_by.end(), col->name) == ast.group_by.end())
                throw Error(ErrorCode::invalid_query, "column '" + col->name + "' must appear in GROUP BY");
        }
    }
    if (ast.star)
        return;
    for (const OrderItem& item : ast.order_by) {
        bool found = false;
        for (const SelectItem& s : ast.select_list) {
            const auto* col = std::get_if<ColumnRef>(&item.expr);
            if ((col && s.alias == col->name) || s.expr == item.expr) {
                found = true;
                break;
            }
        }
        if (!found) {
            const auto* col = std::get_if<ColumnRef>(&item.expr);
            throw Error(ErrorCode::invalid_query,
                        "ORDER BY item '" + (col ? col->name : std::string("count")) + "' is not in the select list");
        }
    }
}

} // namespace detail

/// Parses one statement. Keywords are case-insensitive, identifiers case-sensitive,
/// the trailing ';' optional. Throws ParseError on syntax errors and Error(INVALID_QUERY)
/// on grouping / ORDER BY inconsistencies.
inline QueryAst parse(std::string_view text)
{
    detail::Parser parser(text);
    QueryAst ast = parser.parse_query();
    detail::check_structure(ast);
    return ast;
}

/*======================================================================================================================
 * Canonical printer
 *====================================================================================================================*/

inline std::string quote_literal(std::string_view s)
{
    std::string out = "'";
    for (char c : s) {
        if (c == '\'')
            out += '\'';
        out += c;
    }
    return out + "'";
}

inline std::string to_string(const SelectExpr& e)
{
    if (const auto* c = std::get_if<ColumnRef>(&e))
        return c->name;
    return "COUNT(" + std::get<CountAgg>(e).column.value_or("*") + ")";
}

inline std::string to_string(const PatternExpr& p)
{
    switch (p.kind) {
        case PatternExpr::Kind::literal: return quote_literal(p.text);
        case PatternExpr::Kind::number:  return format_number(p.number);
        case PatternExpr::Kind::column:  return p.text;
        case PatternExpr::Kind::concat: {
            std::string out = "concat(";
            for (std::size_t i = 0; i < p.args.size(); ++i)
                out += (i ? ", " : "") + to_string(p.args[i]);
            return out + ")";
        }
    }
    return {};
}

inline std::string to_string(const FieldValue& literal)
{
    return literal.is_text() ? quote_literal(literal.as_text()) : literal.to_display();
}

inline std::string to_string(const Predicate& p)
{
    using K = Predicate::Kind;
    switch (p.kind) {
        case K::like: return p.column + " LIKE " + to_string(p.pattern);
        case K::eq:   return p.column + " = " + to_string(p.literal);
        case K::neq:  return p.column + " <> " + to_string(p.literal);
        case K::and_: return "(" + to_string(p.children[0]) + " AND " + to_string(p.children[1]) + ")";
        case K::or_:  return "(" + to_string(p.children[0]) + " OR " + to_string(p.children[1]) + ")";
        case K::not_: return "NOT (" + to_string(p.children[0]) + ")";
    }
    return {};
}

/// Canonical single-line text; parse(to_string(ast)) == ast.
inline std::string to_string(const QueryAst& ast)
{
    std::string out = "SELECT ";
    if (ast.star) {
        out += "*";
    } else {
        for (std::size_t i = 0; i < ast.select_list.size(); ++i) {
            const SelectItem& item = ast.select_list[i];
            out += (i ? ", " : "") + to_string(item.expr);
            if (item.alias)
                out += " AS " + *item.alias;
        }
    }
    out += " FROM " + ast.table;
    if (ast.predicate)
        out += " WHERE " + to_string(*ast.predicate);
    if (!ast.group_by.empty()) {
        out += " GROUP BY ";
        for (std::size_t i = 0; i < ast.group_by.size(); ++i)
            out += (i ? ", " : "") + ast.group_by[i];
    }
    if (!ast.order_by.empty()) {
        out += " ORDER BY ";
        for (std::size_t i = 0; i < ast.order_by.size(); ++i)
            out += (i ? ", " : "") + to_string(ast.order_by[i].expr) + (ast.order_by[i].descending ? " DESC" : " ASC");
    }
    if (ast.limit)
        out += " LIMIT " + std::to_string(*ast.limit);
    return out;
}

/*======================================================================================================================
 * Constant folding and LIKE
 *====================================================================================================================*/

namespace detail {

inline PatternExpr fold_pattern(const PatternExpr& p)
{
    switch (p.kind) {
        case PatternExpr::Kind::literal:
            return p;
        case PatternExpr::Kind::concat: {
            std::string joined;
            for (const PatternExpr& arg : p.args)
                joined += fold_pattern(arg).text;
            return PatternExpr::literal(std::move(joined));
        }
        case PatternExpr::Kind::column:
            throw Error(ErrorCode::unsupported_expression, "column '" + p.text + "' is not allowed in a LIKE pattern");
        case PatternExpr::Kind::number:
            throw Error(ErrorCode::unsupported_expression, "number " + format_number(p.number)
                                                               + " is not allowed in a LIKE pattern");
    }
    return p;
}

inline void fold_predicate(Predicate& p)
{
    if (p.kind == Predicate::Kind::like)
        p.pattern = fold_pattern(p.pattern);
    for (Predicate& child : p.children)
        fold_predicate(child);
}

} // namespace detail

/// Replaces every concat() in LIKE patterns with its left-to-right concatenation.
inline QueryAst fold_constants(QueryAst ast)
{
    if (ast.predicate)
        detail::fold_predicate(*ast.predicate);
    return ast;
}

/// SQL LIKE over code points: '%' any sequence, '_' exactly one character,
/// case-sensitive.
inline bool like_match(std::string_view text, std::string_view pattern)
{
    const std::vector<char32_t> s = utf8::decode(text);
    const std::vector<char32_t> p = utf8::decode(pattern);
    std::size_t si = 0, pi = 0;
    std::size_t star_p = std::string_view::npos, star_s = 0;
    while (si < s.size()) {
        if (pi < p.size() && p[pi] == U'%') {
            star_p = pi++;
            star_s = si;
        } else if (pi < p.size() && (p[pi] == U'_' || p[pi] == s[si])) {
            ++pi;
            ++si;
        } else if (star_p != std::string_view::npos) {
            pi = star_p + 1;
            si = ++star_s;
        } else {
            return false;
        }
    }
    while (pi < p.size() && p[pi] == U'%')
        ++pi;
    return pi == p.size();
}

/// Missing never matches; numbers match against their display text.
inline bool like_match(const FieldValue& value, std::string_view pattern)
{
    if (value.is_missing())
        return false;
    return value.is_text() ? like_match(value.as_text(), pattern) : like_match(value.to_display(), pattern);
}

} // namespace fair::query

#endif // FAIR_QUERY_HPP
