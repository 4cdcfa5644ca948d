#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>

namespace testsupport {

using ontochat::rdf::Term;

namespace {

const std::string kXsd = "http://www.w3.org/2001/XMLSchema#";

bool numeric(const Term& t) {
    return t.is_literal() && (t.datatype() == kXsd + "integer" || t.datatype() == kXsd + "decimal");
}

bool simple_string(const Term& t) { return t.is_literal() && t.datatype() == kXsd + "string"; }

double number(const Term& t) { return std::stod(t.value()); }

// -1/0/1, or nullopt for a type error; `ordering` requests < or >.
std::optional<int> compare(const Term& a, const Term& b, bool ordering) {
    if (numeric(a) && numeric(b)) {
        double x = number(a), y = number(b);
        return x < y ? -1 : x > y ? 1 : 0;
    }
    if (simple_string(a) && simple_string(b)) {
        int c = a.value().compare(b.value());
        return c < 0 ? -1 : c > 0 ? 1 : 0;
    }
    if (a.is_literal() && b.is_literal()) return std::nullopt;
    if (ordering) return std::nullopt;
    return a.key() == b.key() ? 0 : 1;
}

bool filter_holds(const OFilter& f, const std::map<std::string, Term>& binding) {
    const Term& left = binding.at(f.var);
    if (f.kind == OFilter::Kind::Regex) {
        if (left.is_blank()) return false;
        return std::regex_search(left.value(), std::regex(f.pattern));
    }
    const Term& right = f.var2.empty() ? *f.constant : binding.at(f.var2);
    bool ordering = f.kind == OFilter::Kind::Lt || f.kind == OFilter::Kind::Gt;
    auto c = compare(left, right, ordering);
    if (!c) return false;
    switch (f.kind) {
    case OFilter::Kind::Eq: return *c == 0;
    case OFilter::Kind::Ne: return *c != 0;
    case OFilter::Kind::Lt: return *c < 0;
    case OFilter::Kind::Gt: return *c > 0;
    case OFilter::Kind::Regex: break;
    }
    return false;
}

void enumerate(const OracleQuery& q, const ontochat::rdf::Graph& g, const std::vector<Term>& domain, std::size_t depth,
               std::map<std::string, Term>& binding, std::vector<OracleRow>& out) {
    if (depth == q.vars.size()) {
        for (const auto& p : q.patterns) {
            Term parts[3] = {Term::iri("urn:x"), Term::iri("urn:x"), Term::iri("urn:x")};
            for (int i = 0; i < 3; ++i) parts[i] = p[i].var.empty() ? *p[i].term : binding.at(p[i].var);
            if (parts[1].is_literal() || parts[1].is_blank() || parts[0].is_literal()) return;
            if (!g.contains({parts[0], parts[1], parts[2]})) return;
        }
        if (q.filter && !filter_holds(*q.filter, binding)) return;
        OracleRow row;
        for (const auto& v : q.vars) row.push_back(binding.at(v));
        out.push_back(std::move(row));
        return;
    }
    for (const auto& t : domain) {
        binding.insert_or_assign(q.vars[depth], t);
        enumerate(q, g, domain, depth + 1, binding, out);
    }
    binding.erase(q.vars[depth]);
}

std::string render(const OTerm& t) {
    if (!t.var.empty()) return "?" + t.var;
    const Term& term = *t.term;
    if (term.is_iri()) return "<" + term.value() + ">";
    return term.key();
}

} // namespace

std::vector<OracleRow> brute_force(const OracleQuery& query, const ontochat::rdf::Graph& graph) {
    std::set<Term> terms;
    for (const auto& t : graph) {
        terms.insert(t.subject);
        terms.insert(t.predicate);
        terms.insert(t.object);
    }
    std::vector<Term> domain(terms.begin(), terms.end());
    std::vector<OracleRow> out;
    std::map<std::string, Term> binding;
    enumerate(query, graph, domain, 0, binding, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_sparql(const OracleQuery& query) {
    std::string out = "SELECT * WHERE {\n";
    for (const auto& p : query.patterns) out += "  " + render(p[0]) + " " + render(p[1]) + " " + render(p[2]) + " .\n";
    if (query.filter) {
        const OFilter& f = *query.filter;
        out += "  FILTER(";
        if (f.kind == OFilter::Kind::Regex) {
            out += "regex(str(?" + f.var + "), \"" + f.pattern + "\")";
        } else {
            static const std::map<OFilter::Kind, std::string> ops = {
                {OFilter::Kind::Eq, "="}, {OFilter::Kind::Ne, "!="}, {OFilter::Kind::Lt, "<"}, {OFilter::Kind::Gt, ">"}};
            std::string rhs = f.var2.empty() ? render(OTerm{"", f.constant}) : "?" + f.var2;
            out += "?" + f.var + " " + ops.at(f.kind) + " " + rhs;
        }
        out += ")\n";
    }
    out += "}\n";
    return out;
}

} // namespace testsupport
