#include "ontochat/sparql/parser.hpp"

#include "lexer.hpp"
#include "ontochat/rdf/vocab.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

namespace ontochat::sparql {

QuerySyntaxError::QuerySyntaxError(std::size_t position, std::string expected, const std::string& found)
    : std::runtime_error("SPARQL syntax error at offset " + std::to_string(position) + ": expected " +
                         expected + ", found " + found),
      position_(position), expected_(std::move(expected)) {}

UnsupportedSparqlFeature::UnsupportedSparqlFeature(std::string name)
    : std::runtime_error("unsupported SPARQL feature: " + name), name_(std::move(name)) {}

namespace {

void collect_vars(const PatternNode& node, std::vector<std::string>& out) {
    auto add = [&](const PatternTerm& t) {
        if (auto v = std::get_if<Variable>(&t)) {
            if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
        }
    };
    if (node.kind == PatternNode::Kind::Bgp) {
        for (const auto& tp : node.triples) {
            add(tp.subject);
            add(tp.predicate);
            add(tp.object);
        }
    }
    for (const auto& child : node.children) collect_vars(child, out);
}

void expression_vars(const Expression& e, std::vector<std::string>& out) {
    if (e.op == Expression::Op::Var || e.op == Expression::Op::Bound) out.push_back(e.var);
    for (const auto& a : e.args) expression_vars(a, out);
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

bool has_scheme(std::string_view iri) {
    if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
    for (char c : iri) {
        if (c == ':') return true;
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.')) return false;
    }
    return false;
}

// Built-in functions and forms that are valid SPARQL but outside the subset.
bool is_known_unsupported(const std::string& word) {
    static const std::set<std::string> kNames = {
        "LANG", "LANGMATCHES", "DATATYPE", "IRI", "URI", "BNODE", "RAND", "ABS", "CEIL", "FLOOR",
        "ROUND", "CONCAT", "STRLEN", "UCASE", "LCASE", "ENCODE_FOR_URI", "STRSTARTS", "STRENDS",
        "STRBEFORE", "STRAFTER", "YEAR", "MONTH", "DAY", "HOURS", "MINUTES", "SECONDS", "TIMEZONE",
        "TZ", "NOW", "UUID", "STRUUID", "MD5", "SHA1", "SHA256", "SHA384", "SHA512", "COALESCE",
        "IF", "STRLANG", "STRDT", "SAMETERM", "ISIRI", "ISURI", "ISBLANK", "ISLITERAL", "ISNUMERIC",
        "SUBSTR", "REPLACE", "EXISTS", "NOT", "COUNT", "SUM", "MIN", "MAX", "AVG", "SAMPLE",
        "GROUP_CONCAT", "IN"};
    return kNames.count(word) > 0;
}

class Parser {
    using Token = detail::Token;
    using Kind = detail::Token::Kind;

public:
    explicit Parser(std::string_view text) : toks_(detail::tokenize(text)) {}

    Query run() {
        prologue();
        if (cur().is_word("SELECT")) {
            select_clause();
        } else if (cur().is_word("ASK")) {
            advance();
            q_.form = QueryForm::Ask;
        } else if (cur().is_word("CONSTRUCT") || cur().is_word("DESCRIBE")) {
            throw UnsupportedSparqlFeature(upper(cur().text) + " queries");
        } else {
            fail("SELECT or ASK");
        }
        if (cur().is_word("FROM")) throw UnsupportedSparqlFeature("FROM dataset clause");
        if (cur().is_word("WHERE")) advance();
        if (!cur().is_punct("{")) fail("'{' opening the WHERE clause");
        q_.where = group();
        modifiers();
        if (cur().is_word("VALUES")) throw UnsupportedSparqlFeature("VALUES");
        if (cur().kind != Kind::End) fail("end of query");
        validate();
        return std::move(q_);
    }

private:
    const Token& cur() const { return toks_[i_]; }
    const Token& peek(std::size_t n = 1) const { return toks_[std::min(i_ + n, toks_.size() - 1)]; }
    void advance() {
        if (i_ + 1 < toks_.size()) ++i_;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        throw QuerySyntaxError(cur().pos, expected, cur().describe());
    }

    void expect_punct(std::string_view p) {
        if (!cur().is_punct(p)) fail("'" + std::string(p) + "'");
        advance();
    }

    void expect_word(std::string_view w) {
        if (!cur().is_word(w)) fail(std::string(w));
        advance();
    }

    void prologue() {
        for (;;) {
            if (cur().is_word("PREFIX")) {
                advance();
                if (cur().kind != Kind::PName || cur().text.back() != ':' ||
                    std::count(cur().text.begin(), cur().text.end(), ':') != 1) {
                    fail("a prefix name such as 'ex:'");
                }
                std::string name = cur().text.substr(0, cur().text.size() - 1);
                advance();
                if (cur().kind != Kind::Iri) fail("a namespace IRI in angle brackets");
                q_.prefixes[name] = cur().text;
                advance();
            } else if (cur().is_word("BASE")) {
                throw UnsupportedSparqlFeature("BASE");
            } else {
                return;
            }
        }
    }

    void select_clause() {
        advance();
        if (cur().is_word("DISTINCT")) {
            q_.distinct = true;
            advance();
        } else if (cur().is_word("REDUCED")) {
            throw UnsupportedSparqlFeature("REDUCED");
        }
        if (cur().is_punct("*")) {
            q_.select_all = true;
            advance();
            return;
        }
        while (cur().kind == Kind::Var || cur().is_punct("(")) {
            if (cur().kind == Kind::Var) {
                q_.projection.push_back(cur().text);
                projection_pos_.push_back(cur().pos);
                advance();
                continue;
            }
            advance();
            if (!cur().is_word("COUNT")) {
                if (cur().kind == Kind::Word && is_known_unsupported(upper(cur().text))) {
                    throw UnsupportedSparqlFeature("aggregate " + upper(cur().text));
                }
                throw UnsupportedSparqlFeature("SELECT expressions other than COUNT");
            }
            if (q_.count) throw UnsupportedSparqlFeature("more than one aggregate");
            advance();
            expect_punct("(");
            CountAggregate agg;
            if (cur().is_word("DISTINCT")) {
                agg.distinct = true;
                advance();
            }
            if (cur().is_punct("*")) {
                advance();
            } else if (cur().kind == Kind::Var) {
                agg.var = cur().text;
                count_pos_ = cur().pos;
                advance();
            } else {
                fail("a variable or '*' inside COUNT");
            }
            expect_punct(")");
            expect_word("AS");
            if (cur().kind != Kind::Var) fail("an alias variable after AS");
            agg.alias = cur().text;
            alias_pos_ = cur().pos;
            advance();
            expect_punct(")");
            q_.count = std::move(agg);
        }
        if (q_.count && !q_.projection.empty()) {
            throw UnsupportedSparqlFeature("COUNT combined with other projected variables (GROUP BY)");
        }
        if (!q_.count && q_.projection.empty()) fail("projected variables or '*' after SELECT");
    }

    PatternNode group() {
        expect_punct("{");
        PatternNode node;
        node.kind = PatternNode::Kind::Join;
        PatternNode bgp;
        bgp.kind = PatternNode::Kind::Bgp;
        auto flush = [&] {
            if (!bgp.triples.empty()) {
                node.children.push_back(std::move(bgp));
                bgp = PatternNode{};
                bgp.kind = PatternNode::Kind::Bgp;
            }
        };
        for (;;) {
            const Token& t = cur();
            if (t.is_punct("}")) {
                advance();
                break;
            }
            if (t.kind == Kind::End) fail("'}' closing the group");
            if (t.is_punct(".")) {
                advance();
                continue;
            }
            if (t.is_punct("{")) {
                flush();
                PatternNode sub = group();
                while (cur().is_word("UNION")) {
                    advance();
                    PatternNode right = group();
                    PatternNode u;
                    u.kind = PatternNode::Kind::Union;
                    u.children.push_back(std::move(sub));
                    u.children.push_back(std::move(right));
                    sub = std::move(u);
                }
                node.children.push_back(std::move(sub));
                continue;
            }
            if (t.is_word("OPTIONAL")) {
                flush();
                advance();
                PatternNode opt;
                opt.kind = PatternNode::Kind::Optional;
                opt.children.push_back(group());
                node.children.push_back(std::move(opt));
                continue;
            }
            if (t.is_word("FILTER")) {
                advance();
                PatternNode f;
                f.kind = PatternNode::Kind::Filter;
                f.filter = constraint();
                node.children.push_back(std::move(f));
                continue;
            }
            if (t.is_word("SELECT")) throw UnsupportedSparqlFeature("subqueries");
            for (const char* kw : {"MINUS", "BIND", "VALUES", "SERVICE", "GRAPH"}) {
                if (t.is_word(kw)) throw UnsupportedSparqlFeature(kw);
            }
            triples_same_subject(bgp);
        }
        flush();
        return node;
    }

    void triples_same_subject(PatternNode& bgp) {
        PatternTerm subject = term_or_var("a subject (variable, IRI or literal)");
        for (;;) {
            PatternTerm predicate = verb();
            for (;;) {
                PatternTerm object = term_or_var("an object (variable, IRI or literal)");
                bgp.triples.push_back(TriplePatternAst{subject, predicate, std::move(object)});
                if (!cur().is_punct(",")) break;
                advance();
            }
            if (!cur().is_punct(";")) return;
            while (cur().is_punct(";")) advance();
            if (!starts_verb()) return;
        }
    }

    bool starts_verb() const {
        const Token& t = cur();
        return t.kind == Kind::Var || t.kind == Kind::Iri || t.kind == Kind::PName || t.is_word("A") ||
               t.is_punct("^") || t.is_punct("(");
    }

    PatternTerm verb() {
        if (cur().is_punct("^") || cur().is_punct("(") || cur().is_punct("!")) {
            throw UnsupportedSparqlFeature("property paths");
        }
        PatternTerm p = Variable{};
        if (cur().is_word("A")) {
            if (cur().text != "a") fail("'a' (lowercase) or a predicate");
            advance();
            p = rdf::Term::iri(std::string(rdf::vocab::kRdfType));
        } else if (cur().kind == Kind::Var) {
            p = Variable{cur().text};
            advance();
        } else if (cur().kind == Kind::Iri || cur().kind == Kind::PName) {
            p = iri_term();
        } else {
            fail("a predicate (variable, IRI or 'a')");
        }
        const Token& t = cur();
        if (t.is_punct("/") || t.is_punct("|") || t.is_punct("*") || t.is_punct("+") || t.is_punct("?")) {
            throw UnsupportedSparqlFeature("property paths");
        }
        return p;
    }

    rdf::Term iri_term() {
        const Token& t = cur();
        if (t.kind == Kind::Iri) {
            if (!has_scheme(t.text)) throw UnsupportedSparqlFeature("relative IRI <" + t.text + ">");
            std::string iri = t.text;
            advance();
            return rdf::Term::iri(std::move(iri));
        }
        if (t.text.rfind("_:", 0) == 0) throw UnsupportedSparqlFeature("blank nodes in query patterns");
        auto colon = t.text.find(':');
        std::string prefix = t.text.substr(0, colon);
        auto it = q_.prefixes.find(prefix);
        if (it == q_.prefixes.end()) {
            throw QuerySyntaxError(t.pos, "a declared prefix (add PREFIX " + prefix + ": <...>)",
                                   "'" + prefix + ":'");
        }
        std::string local;
        for (std::size_t k = colon + 1; k < t.text.size(); ++k) {
            if (t.text[k] == '\\' && k + 1 < t.text.size()) ++k;
            local.push_back(t.text[k]);
        }
        advance();
        return rdf::Term::iri(it->second + local);
    }

    std::optional<rdf::Term> try_literal() {
        const Token& t = cur();
        if (t.kind == Kind::String) {
            std::string value = t.text;
            std::string lang = t.language;
            advance();
            if (!lang.empty()) return rdf::Term::lang_literal(std::move(value), std::move(lang));
            if (cur().is_punct("^^")) {
                advance();
                if (cur().kind != Kind::Iri && cur().kind != Kind::PName) fail("a datatype IRI after '^^'");
                rdf::Term dt = iri_term();
                if (dt.value() == rdf::vocab::kRdfLangString) {
                    throw QuerySyntaxError(t.pos, "a language tag for rdf:langString", "none");
                }
                return rdf::Term::literal(std::move(value), dt.value());
            }
            return rdf::Term::literal(std::move(value));
        }
        std::string sign;
        std::size_t at = 0;
        if ((t.is_punct("-") || t.is_punct("+")) &&
            (peek().kind == Kind::Integer || peek().kind == Kind::Decimal || peek().kind == Kind::Double) &&
            peek().pos == t.pos + 1) {
            sign = t.text == "-" ? "-" : "+";
            at = 1;
        }
        const Token& num = peek(at);
        if (num.kind == Kind::Integer || num.kind == Kind::Decimal || num.kind == Kind::Double) {
            std::string_view dt = num.kind == Kind::Integer   ? rdf::vocab::kXsdInteger
                                  : num.kind == Kind::Decimal ? rdf::vocab::kXsdDecimal
                                                              : rdf::vocab::kXsdDouble;
            std::string lexical = sign + num.text;
            if (at) advance();
            advance();
            return rdf::Term::literal(std::move(lexical), std::string(dt));
        }
        if (t.kind == Kind::Word && (t.text == "true" || t.text == "false")) {
            bool value = t.text == "true";
            advance();
            return rdf::Term::boolean(value);
        }
        return std::nullopt;
    }

    PatternTerm term_or_var(const std::string& expected) {
        const Token& t = cur();
        if (t.is_punct("[")) throw UnsupportedSparqlFeature("blank node property lists");
        if (t.is_punct("(")) throw UnsupportedSparqlFeature("RDF collections");
        if (t.kind == Kind::Var) {
            Variable v{t.text};
            advance();
            return v;
        }
        if (t.kind == Kind::Iri || t.kind == Kind::PName) return iri_term();
        if (auto lit = try_literal()) return *lit;
        fail(expected);
    }

    Expression constraint() {
        if (cur().is_punct("(")) {
            advance();
            Expression e = expression();
            expect_punct(")");
            return e;
        }
        if (cur().kind == Kind::Word) return builtin_call();
        fail("'(' or a function call after FILTER");
    }

    Expression expression() {
        Expression left = and_expression();
        while (cur().is_punct("||")) {
            advance();
            Expression e;
            e.op = Expression::Op::Or;
            e.args.push_back(std::move(left));
            e.args.push_back(and_expression());
            left = std::move(e);
        }
        return left;
    }

    Expression and_expression() {
        Expression left = relational();
        while (cur().is_punct("&&")) {
            advance();
            Expression e;
            e.op = Expression::Op::And;
            e.args.push_back(std::move(left));
            e.args.push_back(relational());
            left = std::move(e);
        }
        return left;
    }

    Expression relational() {
        Expression left = unary();
        static constexpr std::array<std::pair<std::string_view, Expression::Op>, 6> kOps = {{
            {"=", Expression::Op::Eq},
            {"!=", Expression::Op::Ne},
            {"<", Expression::Op::Lt},
            {"<=", Expression::Op::Le},
            {">", Expression::Op::Gt},
            {">=", Expression::Op::Ge},
        }};
        if (cur().is_word("IN") || (cur().is_word("NOT") && peek().is_word("IN"))) {
            throw UnsupportedSparqlFeature("IN / NOT IN");
        }
        for (const auto& [text, op] : kOps) {
            if (cur().is_punct(text)) {
                advance();
                Expression e;
                e.op = op;
                e.args.push_back(std::move(left));
                e.args.push_back(unary());
                return e;
            }
        }
        return left;
    }

    Expression unary() {
        if (cur().is_punct("!")) {
            advance();
            Expression e;
            e.op = Expression::Op::Not;
            e.args.push_back(unary());
            return e;
        }
        Expression e = primary();
        const Token& t = cur();
        if (t.is_punct("+") || t.is_punct("-") || t.is_punct("*") || t.is_punct("/")) {
            throw UnsupportedSparqlFeature("arithmetic expressions");
        }
        return e;
    }

    Expression primary() {
        const Token& t = cur();
        Expression e;
        if (t.is_punct("(")) {
            advance();
            e = expression();
            expect_punct(")");
            return e;
        }
        if (t.kind == Kind::Var) {
            e.op = Expression::Op::Var;
            e.var = t.text;
            advance();
            return e;
        }
        if (t.kind == Kind::Iri || t.kind == Kind::PName) {
            e.op = Expression::Op::Constant;
            e.constant = iri_term();
            if (cur().is_punct("(")) throw UnsupportedSparqlFeature("IRI function calls");
            return e;
        }
        if (auto lit = try_literal()) {
            e.op = Expression::Op::Constant;
            e.constant = std::move(*lit);
            return e;
        }
        if (t.is_punct("-") || t.is_punct("+")) throw UnsupportedSparqlFeature("arithmetic expressions");
        if (t.kind == Kind::Word) return builtin_call();
        fail("an expression");
    }

    Expression builtin_call() {
        const Token& t = cur();
        std::string name = upper(t.text);
        Expression e;
        if (name == "REGEX") {
            e.op = Expression::Op::Regex;
        } else if (name == "STR") {
            e.op = Expression::Op::Str;
        } else if (name == "CONTAINS") {
            e.op = Expression::Op::Contains;
        } else if (name == "BOUND") {
            e.op = Expression::Op::Bound;
        } else if (name == "EXISTS" || (name == "NOT" && peek().is_word("EXISTS"))) {
            throw UnsupportedSparqlFeature("EXISTS / NOT EXISTS");
        } else if (is_known_unsupported(name)) {
            throw UnsupportedSparqlFeature("function " + name);
        } else {
            fail("an expression");
        }
        advance();
        expect_punct("(");
        if (e.op == Expression::Op::Bound) {
            if (cur().kind != Kind::Var) fail("a variable inside BOUND");
            e.var = cur().text;
            advance();
            expect_punct(")");
            return e;
        }
        e.args.push_back(expression());
        while (cur().is_punct(",")) {
            advance();
            e.args.push_back(expression());
        }
        expect_punct(")");
        std::size_t n = e.args.size();
        bool arity_ok = (e.op == Expression::Op::Str && n == 1) ||
                        (e.op == Expression::Op::Contains && n == 2) ||
                        (e.op == Expression::Op::Regex && (n == 2 || n == 3));
        if (!arity_ok) throw QuerySyntaxError(t.pos, "a valid argument count for " + name, std::to_string(n));
        return e;
    }

    void modifiers() {
        if (cur().is_word("GROUP")) throw UnsupportedSparqlFeature("GROUP BY");
        if (cur().is_word("HAVING")) throw UnsupportedSparqlFeature("HAVING");
        if (cur().is_word("ORDER")) {
            advance();
            expect_word("BY");
            for (;;) {
                OrderCondition cond;
                const Token& t = cur();
                if (t.is_word("ASC") || t.is_word("DESC")) {
                    cond.descending = t.is_word("DESC");
                    advance();
                    if (!cur().is_punct("(")) fail("'(' after ASC/DESC");
                    advance();
                    cond.expr = expression();
                    expect_punct(")");
                } else if (t.kind == Kind::Var) {
                    cond.expr.op = Expression::Op::Var;
                    cond.expr.var = t.text;
                    advance();
                } else if (t.is_punct("(")) {
                    advance();
                    cond.expr = expression();
                    expect_punct(")");
                } else if (t.kind == Kind::Word && !t.is_word("LIMIT") && !t.is_word("OFFSET") &&
                           !t.is_word("VALUES")) {
                    cond.expr = builtin_call();
                } else {
                    if (q_.order_by.empty()) fail("an ORDER BY condition");
                    break;
                }
                q_.order_by.push_back(std::move(cond));
            }
        }
        for (;;) {
            if (cur().is_word("LIMIT")) {
                if (q_.limit) fail("a single LIMIT clause");
                advance();
                q_.limit = natural();
            } else if (cur().is_word("OFFSET")) {
                if (q_.offset) fail("a single OFFSET clause");
                advance();
                q_.offset = natural();
            } else {
                break;
            }
        }
    }

    std::size_t natural() {
        if (cur().kind != Kind::Integer) fail("a non-negative integer");
        std::size_t value = 0;
        for (char c : cur().text) {
            value = value * 10 + static_cast<std::size_t>(c - '0');
            if (value > (std::size_t{1} << 48)) fail("a smaller integer");
        }
        advance();
        return value;
    }

    void validate() {
        std::vector<std::string> bound = pattern_variables(q_.where);
        auto known = [&](const std::string& v) { return std::find(bound.begin(), bound.end(), v) != bound.end(); };
        for (std::size_t k = 0; k < q_.projection.size(); ++k) {
            if (!known(q_.projection[k])) {
                throw QuerySyntaxError(projection_pos_[k], "a projected variable that occurs in the WHERE clause",
                                       "?" + q_.projection[k]);
            }
        }
        if (q_.count) {
            if (q_.count->var && !known(*q_.count->var)) {
                throw QuerySyntaxError(count_pos_, "a counted variable that occurs in the WHERE clause",
                                       "?" + *q_.count->var);
            }
            if (known(q_.count->alias)) {
                throw QuerySyntaxError(alias_pos_, "an AS alias not already used in the WHERE clause",
                                       "?" + q_.count->alias);
            }
        }
        for (const auto& cond : q_.order_by) {
            std::vector<std::string> vars;
            expression_vars(cond.expr, vars);
            for (const auto& v : vars) {
                if (!known(v) && !(q_.count && q_.count->alias == v)) {
                    throw QuerySyntaxError(0, "ORDER BY variables that occur in the WHERE clause", "?" + v);
                }
            }
        }
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    Query q_;
    std::vector<std::size_t> projection_pos_;
    std::size_t count_pos_ = 0;
    std::size_t alias_pos_ = 0;
};

} // namespace

std::vector<std::string> pattern_variables(const PatternNode& node) {
    std::vector<std::string> out;
    collect_vars(node, out);
    return out;
}

std::vector<std::string> Query::result_variables() const {
    if (form == QueryForm::Ask) return {};
    if (count) return {count->alias};
    if (select_all) return pattern_variables(where);
    return projection;
}

Query parse_query(std::string_view text) {
    return Parser(text).run();
}

} // namespace ontochat::sparql
