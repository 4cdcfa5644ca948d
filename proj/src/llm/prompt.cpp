#include "ontochat/llm/prompt.hpp"

#include "ontochat/rdf/vocab.hpp"
#include "ontochat/util/hash.hpp"

#include <map>
#include <regex>
#include <sstream>

namespace ontochat::llm {

namespace {

std::map<std::string, std::string> prompt_prefixes(const std::string& tbox_text) {
    std::map<std::string, std::string> out = {
        {"owl", std::string(rdf::vocab::kOwl)},
        {"rdf", std::string(rdf::vocab::kRdf)},
        {"rdfs", std::string(rdf::vocab::kRdfs)},
        {"xsd", std::string(rdf::vocab::kXsd)},
    };
    static const std::regex decl(R"(\s*@prefix\s+([A-Za-z][\w.-]*)?:\s*<([^>]*)>\s*\.\s*)");
    std::istringstream lines(tbox_text);
    std::string line;
    std::smatch m;
    while (std::getline(lines, line)) {
        if (std::regex_match(line, m, decl)) out[m[1].str()] = m[2].str();
    }
    return out;
}

std::string system_text(const std::string& tbox_text) {
    std::ostringstream out;
    out << "You translate questions about an ontology into SPARQL 1.1 queries.\n"
           "Only the schema (classes, properties and their annotations) is shown to you; the data is queried "
           "separately, so never guess individual names or values that do not occur in the question.\n"
           "Output exactly one SPARQL query in a fenced code block:\n"
           "```sparql\n<query>\n```\n"
           "If the question asks for two separate things, output one fenced code block per request, in the "
           "order they are asked, each holding one query.\n"
           "Supported SPARQL subset: SELECT or ASK; COUNT as the only aggregate; FILTER with comparisons, "
           "regex, contains, str, bound, &&, || and !; OPTIONAL; UNION; ORDER BY; LIMIT; OFFSET. "
           "Do not use property paths, subqueries, BIND, VALUES, GROUP BY, MINUS or blank nodes.\n"
           "Declare every prefix you use. Available prefixes:\n";
    for (const auto& [name, ns] : prompt_prefixes(tbox_text)) out << "PREFIX " << name << ": <" << ns << ">\n";
    return out.str();
}

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n\f\v") == std::string::npos;
}

} // namespace

std::string PromptBundle::render_user() const {
    std::string out = "Ontology schema (Turtle):\n";
    out += tbox_text;
    if (!tbox_text.empty() && tbox_text.back() != '\n') out += '\n';
    out += "\nQuestion:\n";
    out += question;
    out += '\n';
    if (!repair_note.empty()) {
        out += "\n";
        out += repair_note;
        if (repair_note.back() != '\n') out += '\n';
    }
    return out;
}

std::string PromptBundle::render() const {
    return system_instructions + "\n" + render_user();
}

std::string PromptBundle::hash() const { return sha256_hex(render()); }

PromptBundle assemble_prompt(const std::string& tbox_text, const std::string& question, const std::string& repair_note) {
    if (blank(question)) throw EmptyQuestion();
    PromptBundle bundle;
    bundle.system_instructions = system_text(tbox_text);
    bundle.tbox_text = tbox_text;
    bundle.question = question;
    bundle.repair_note = repair_note;
    return bundle;
}

} // namespace ontochat::llm
