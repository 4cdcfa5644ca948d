#include "ontochat/sparql/results.hpp"

#include "ontochat/rdf/vocab.hpp"

#include <algorithm>
#include <sstream>

namespace ontochat::sparql {

using nlohmann::json;
using rdf::Term;

ResultSet ResultSet::boolean(bool value) {
    ResultSet rs;
    rs.is_boolean_ = true;
    rs.boolean_ = value;
    return rs;
}

ResultSet ResultSet::table(std::vector<std::string> variables, std::vector<Row> rows) {
    for (const auto& r : rows) {
        if (r.size() != variables.size()) throw std::invalid_argument("row width does not match variables");
    }
    ResultSet rs;
    rs.variables_ = std::move(variables);
    rs.rows_ = std::move(rows);
    return rs;
}

namespace {

json term_to_json(const Term& t) {
    json j;
    switch (t.kind()) {
    case rdf::TermKind::Iri:
        j["type"] = "uri";
        break;
    case rdf::TermKind::BlankNode:
        j["type"] = "bnode";
        break;
    case rdf::TermKind::Literal:
        j["type"] = "literal";
        if (!t.language().empty()) {
            j["xml:lang"] = t.language();
        } else if (t.datatype() != rdf::vocab::kXsdString) {
            j["datatype"] = t.datatype();
        }
        break;
    }
    j["value"] = t.value();
    return j;
}

std::string require_string(const json& obj, const char* field) {
    auto it = obj.find(field);
    if (it == obj.end() || !it->is_string()) {
        throw MalformedResults(std::string("binding without string field '") + field + "'");
    }
    return it->get<std::string>();
}

Term term_from_json(const json& j) {
    if (!j.is_object()) throw MalformedResults("binding is not an object");
    std::string type = require_string(j, "type");
    std::string value = require_string(j, "value");
    if (type == "uri") return Term::iri(std::move(value));
    if (type == "bnode") {
        if (value.empty()) throw MalformedResults("empty blank node label");
        return Term::blank(std::move(value));
    }
    if (type == "literal" || type == "typed-literal") {
        if (j.contains("xml:lang")) {
            std::string lang = require_string(j, "xml:lang");
            if (lang.empty()) throw MalformedResults("empty xml:lang");
            return Term::lang_literal(std::move(value), std::move(lang));
        }
        if (j.contains("datatype")) {
            std::string dt = require_string(j, "datatype");
            if (dt == rdf::vocab::kRdfLangString) throw MalformedResults("rdf:langString without xml:lang");
            return Term::literal(std::move(value), std::move(dt));
        }
        return Term::literal(std::move(value));
    }
    throw MalformedResults("unknown binding type '" + type + "'");
}

int rank(const std::optional<Term>& t) {
    if (!t) return 0;
    if (t->is_literal()) return t->is_numeric() ? 1 : 2;
    if (t->is_iri()) return 3;
    return 4;
}

int three_way(int c) { return c < 0 ? -1 : c > 0 ? 1 : 0; }

} // namespace

json to_sparql_json(const ResultSet& results) {
    json doc;
    if (results.is_boolean()) {
        doc["head"] = json::object();
        doc["boolean"] = results.boolean_value();
        return doc;
    }
    doc["head"]["vars"] = results.variables();
    json bindings = json::array();
    for (const auto& row : results.rows()) {
        json b = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i]) b[results.variables()[i]] = term_to_json(*row[i]);
        }
        bindings.push_back(std::move(b));
    }
    doc["results"]["bindings"] = std::move(bindings);
    return doc;
}

ResultSet from_sparql_json(const json& doc) {
    if (!doc.is_object()) throw MalformedResults("document is not a JSON object");
    if (doc.contains("boolean")) {
        if (!doc["boolean"].is_boolean()) throw MalformedResults("'boolean' is not a JSON boolean");
        return ResultSet::boolean(doc["boolean"].get<bool>());
    }
    auto head = doc.find("head");
    if (head == doc.end() || !head->is_object()) throw MalformedResults("missing 'head'");
    std::vector<std::string> vars;
    if (auto v = head->find("vars"); v != head->end()) {
        if (!v->is_array()) throw MalformedResults("'head.vars' is not an array");
        for (const auto& name : *v) {
            if (!name.is_string()) throw MalformedResults("non-string variable name");
            vars.push_back(name.get<std::string>());
        }
    }
    auto results = doc.find("results");
    if (results == doc.end() || !results->is_object()) throw MalformedResults("missing 'results'");
    auto bindings = results->find("bindings");
    if (bindings == results->end() || !bindings->is_array()) throw MalformedResults("missing 'results.bindings'");
    std::vector<ResultSet::Row> rows;
    for (const auto& b : *bindings) {
        if (!b.is_object()) throw MalformedResults("binding row is not an object");
        ResultSet::Row row(vars.size());
        for (const auto& [name, value] : b.items()) {
            auto it = std::find(vars.begin(), vars.end(), name);
            if (it == vars.end()) throw MalformedResults("binding for undeclared variable '" + name + "'");
            row[static_cast<std::size_t>(it - vars.begin())] = term_from_json(value);
        }
        rows.push_back(std::move(row));
    }
    return ResultSet::table(std::move(vars), std::move(rows));
}

int order_compare(const std::optional<Term>& a, const std::optional<Term>& b) {
    int ra = rank(a);
    int rb = rank(b);
    if (ra != rb) return ra < rb ? -1 : 1;
    if (ra == 0) return 0;
    if (ra == 1) {
        auto va = a->numeric_value();
        auto vb = b->numeric_value();
        if (va && vb && *va != *vb) return *va < *vb ? -1 : 1;
        if (va.has_value() != vb.has_value()) return va ? -1 : 1;
    } else {
        int c = three_way(a->value().compare(b->value()));
        if (c != 0) return c;
    }
    return three_way(a->key().compare(b->key()));
}

std::string render_table(const ResultSet& results) {
    if (results.is_boolean()) return results.boolean_value() ? "true\n" : "false\n";
    const auto& vars = results.variables();
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) width[i] = vars[i].size() + 1;
    for (const auto& row : results.rows()) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::string cell = row[i] ? row[i]->key() : std::string();
            width[i] = std::max(width[i], cell.size());
            line.push_back(std::move(cell));
        }
        cells.push_back(std::move(line));
    }
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& line) {
        out << "|";
        for (std::size_t i = 0; i < line.size(); ++i) {
            out << " " << line[i] << std::string(width[i] - line[i].size(), ' ') << " |";
        }
        out << "\n";
    };
    std::vector<std::string> header;
    for (const auto& v : vars) header.push_back("?" + v);
    emit(header);
    out << "|";
    for (std::size_t w : width) out << std::string(w + 2, '-') << "|";
    out << "\n";
    for (const auto& line : cells) emit(line);
    out << "(" << results.rows().size() << " row" << (results.rows().size() == 1 ? "" : "s") << ")\n";
    return out.str();
}

} // namespace ontochat::sparql
