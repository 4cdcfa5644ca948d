#include "expression.hpp"

#include "ontochat/rdf/vocab.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <regex>

namespace ontochat::sparql::detail {

namespace {

using Op = Expression::Op;
using rdf::Term;

// NotEqual: comparable for (in)equality only. Error: type error.
enum class Cmp { Less, Equal, Greater, NotEqual, Error };

Cmp sign(double d) {
    if (d < 0) return Cmp::Less;
    if (d > 0) return Cmp::Greater;
    return Cmp::Equal;
}

Cmp sign(int d) {
    return d < 0 ? Cmp::Less : d > 0 ? Cmp::Greater : Cmp::Equal;
}

Cmp compare_terms(const Term& a, const Term& b) {
    if (a.is_literal() && b.is_literal()) {
        if (a.is_numeric() && b.is_numeric()) {
            auto va = a.numeric_value();
            auto vb = b.numeric_value();
            if (!va || !vb || std::isnan(*va) || std::isnan(*vb)) return Cmp::Error;
            return sign(*va - *vb);
        }
        if (a.is_numeric() != b.is_numeric()) return Cmp::Error;
        if (a.is_string() && b.is_string()) {
            if (a.language() != b.language()) return Cmp::NotEqual;
            return sign(a.value().compare(b.value()));
        }
        if (a.datatype() != b.datatype()) return Cmp::Error;
        if (a.datatype() == rdf::vocab::kXsdBoolean) {
            auto as_bool = [](const std::string& s) { return s == "true" || s == "1"; };
            return sign(static_cast<int>(as_bool(a.value())) - static_cast<int>(as_bool(b.value())));
        }
        return sign(a.value().compare(b.value()));
    }
    return a == b ? Cmp::Equal : Cmp::NotEqual;
}

std::optional<bool> apply_comparison(Op op, const Term& a, const Term& b) {
    Cmp c = compare_terms(a, b);
    if (c == Cmp::Error) return std::nullopt;
    if (c == Cmp::NotEqual) {
        if (op == Op::Eq) return false;
        if (op == Op::Ne) return true;
        return std::nullopt;
    }
    switch (op) {
    case Op::Eq: return c == Cmp::Equal;
    case Op::Ne: return c != Cmp::Equal;
    case Op::Lt: return c == Cmp::Less;
    case Op::Le: return c != Cmp::Greater;
    case Op::Gt: return c == Cmp::Greater;
    case Op::Ge: return c != Cmp::Less;
    default: return std::nullopt;
    }
}

std::optional<bool> effective_boolean(const std::optional<Term>& v) {
    if (!v || !v->is_literal()) return std::nullopt;
    if (v->datatype() == rdf::vocab::kXsdBoolean) {
        if (v->value() == "true" || v->value() == "1") return true;
        if (v->value() == "false" || v->value() == "0") return false;
        return std::nullopt;
    }
    if (v->is_numeric()) {
        auto d = v->numeric_value();
        if (!d) return std::nullopt;
        return *d != 0 && !std::isnan(*d);
    }
    if (v->is_string()) return !v->value().empty();
    return std::nullopt;
}

std::optional<Term> as_boolean(std::optional<bool> b) {
    if (!b) return std::nullopt;
    return Term::boolean(*b);
}

const std::regex* compiled_regex(const std::string& pattern, bool icase) {
    static std::mutex mu;
    static std::map<std::pair<std::string, bool>, std::optional<std::regex>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(pattern, icase);
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::optional<std::regex> re;
        try {
            auto flags = std::regex::ECMAScript;
            if (icase) flags |= std::regex::icase;
            re.emplace(pattern, flags);
        } catch (const std::regex_error&) {
        }
        it = cache.emplace(key, std::move(re)).first;
    }
    return it->second ? &*it->second : nullptr;
}

bool is_simple(const Term& t) {
    return t.is_literal() && t.datatype() == rdf::vocab::kXsdString;
}

} // namespace

std::optional<Term> eval_expression(const Expression& e, const VarLookup& lookup) {
    switch (e.op) {
    case Op::Constant:
        return e.constant;
    case Op::Var: {
        const Term* t = lookup(e.var);
        if (!t) return std::nullopt;
        return *t;
    }
    case Op::Bound:
        return Term::boolean(lookup(e.var) != nullptr);
    case Op::Not: {
        auto b = effective_boolean(eval_expression(e.args[0], lookup));
        if (!b) return std::nullopt;
        return Term::boolean(!*b);
    }
    case Op::Or: {
        auto l = effective_boolean(eval_expression(e.args[0], lookup));
        auto r = effective_boolean(eval_expression(e.args[1], lookup));
        if ((l && *l) || (r && *r)) return Term::boolean(true);
        if (l && r) return Term::boolean(false);
        return std::nullopt;
    }
    case Op::And: {
        auto l = effective_boolean(eval_expression(e.args[0], lookup));
        auto r = effective_boolean(eval_expression(e.args[1], lookup));
        if ((l && !*l) || (r && !*r)) return Term::boolean(false);
        if (l && r) return Term::boolean(true);
        return std::nullopt;
    }
    case Op::Eq:
    case Op::Ne:
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge: {
        auto a = eval_expression(e.args[0], lookup);
        auto b = eval_expression(e.args[1], lookup);
        if (!a || !b) return std::nullopt;
        return as_boolean(apply_comparison(e.op, *a, *b));
    }
    case Op::Str: {
        auto a = eval_expression(e.args[0], lookup);
        if (!a || a->is_blank()) return std::nullopt;
        return Term::literal(a->value());
    }
    case Op::Contains: {
        auto a = eval_expression(e.args[0], lookup);
        auto b = eval_expression(e.args[1], lookup);
        if (!a || !b || !a->is_string() || !b->is_string()) return std::nullopt;
        if (!b->language().empty() && a->language() != b->language()) return std::nullopt;
        return Term::boolean(a->value().find(b->value()) != std::string::npos);
    }
    case Op::Regex: {
        auto text = eval_expression(e.args[0], lookup);
        auto pattern = eval_expression(e.args[1], lookup);
        if (!text || !pattern || !text->is_string() || !is_simple(*pattern)) return std::nullopt;
        bool icase = false;
        if (e.args.size() == 3) {
            auto flags = eval_expression(e.args[2], lookup);
            if (!flags || !is_simple(*flags)) return std::nullopt;
            for (char f : flags->value()) {
                if (f != 'i') return std::nullopt;
                icase = true;
            }
        }
        const std::regex* re = compiled_regex(pattern->value(), icase);
        if (!re) return std::nullopt;
        return Term::boolean(std::regex_search(text->value(), *re));
    }
    }
    return std::nullopt;
}

bool filter_passes(const Expression& e, const VarLookup& lookup) {
    auto b = effective_boolean(eval_expression(e, lookup));
    return b && *b;
}

} // namespace ontochat::sparql::detail
