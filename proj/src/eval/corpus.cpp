#include "ontochat/eval/corpus.hpp"

#include "ontochat/sparql/parser.hpp"
#include "ontochat/util/io.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace ontochat::eval {

using nlohmann::json;

std::string to_string(Odp odp) {
    switch (odp) {
    case Odp::VDI3682: return "VDI3682";
    case Odp::DINEN61360: return "DINEN61360";
    case Odp::VDI2206: return "VDI2206";
    }
    return "?";
}

std::string to_string(Category category) {
    switch (category) {
    case Category::Boolean: return "Boolean";
    case Category::Count: return "Count";
    case Category::Rank: return "Rank";
    case Category::Simple: return "Simple";
    case Category::String: return "String";
    case Category::TwoHop: return "TwoHop";
    case Category::TwoIntent: return "TwoIntent";
    }
    return "?";
}

std::string to_string(Phrasing phrasing) { return phrasing == Phrasing::SCQ ? "SCQ" : "NSCQ"; }

std::optional<Odp> parse_odp(const std::string& s) {
    for (Odp o : kOdps) {
        if (to_string(o) == s) return o;
    }
    return std::nullopt;
}

std::optional<Category> parse_category(const std::string& s) {
    for (Category c : kCategories) {
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

std::optional<Phrasing> parse_phrasing(const std::string& s) {
    for (Phrasing p : kPhrasings) {
        if (to_string(p) == s) return p;
    }
    return std::nullopt;
}

CorpusInvalid::CorpusInvalid(std::vector<CorpusViolation> violations)
    : std::runtime_error([&] {
          std::string msg = "corpus invalid (" + std::to_string(violations.size()) + " violation" +
                            (violations.size() == 1 ? "" : "s") + ")";
          for (const auto& v : violations) msg += "\n  " + v.record_id + ": " + v.reason;
          return msg;
      }()),
      violations_(std::move(violations)) {}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// "hasTypeDescription" -> {"has", "type", "description"}
std::vector<std::string> camel_words(const std::string& name) {
    std::vector<std::string> words;
    std::string cur;
    for (std::size_t i = 0; i < name.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(name[i]);
        if (!std::isalnum(c)) {
            if (!cur.empty()) words.push_back(lower(cur));
            cur.clear();
            continue;
        }
        bool boundary = std::isupper(c) && !cur.empty() &&
                        (std::islower(static_cast<unsigned char>(cur.back())) ||
                         (i + 1 < name.size() && std::islower(static_cast<unsigned char>(name[i + 1]))));
        if (boundary) {
            words.push_back(lower(cur));
            cur.clear();
        }
        cur.push_back(static_cast<char>(c));
    }
    if (!cur.empty()) words.push_back(lower(cur));
    return words;
}

std::optional<std::string> string_field(const json& rec, const char* name) {
    auto it = rec.find(name);
    if (it == rec.end() || !it->is_string()) return std::nullopt;
    return it->get<std::string>();
}

} // namespace

ExperimentMatrix parse_corpus(const json& doc, const Vocabulary& vocabulary) {
    std::vector<CorpusViolation> violations;
    ExperimentMatrix matrix;
    if (!doc.is_array()) throw CorpusInvalid(std::vector<CorpusViolation>{{"<corpus>", "top level must be a JSON array"}});

    static const std::set<std::string> kFields = {"id", "odp", "category", "phrasing", "text", "gold_queries"};
    std::set<std::string> seen_ids;
    std::set<std::string> seen_texts;
    std::map<std::tuple<Odp, Category, Phrasing>, int> cells;

    for (std::size_t i = 0; i < doc.size(); ++i) {
        const json& rec = doc[i];
        std::string rid = "#" + std::to_string(i);
        if (!rec.is_object()) {
            violations.push_back({rid, "record is not an object"});
            continue;
        }
        if (auto id = string_field(rec, "id")) rid = *id;
        auto fail = [&](const std::string& reason) { violations.push_back({rid, reason}); };

        for (const auto& [key, value] : rec.items()) {
            if (!kFields.count(key)) fail("unknown field '" + key + "'");
        }
        QuestionRecord q;
        auto id = string_field(rec, "id");
        auto odp = string_field(rec, "odp");
        auto category = string_field(rec, "category");
        auto phrasing = string_field(rec, "phrasing");
        auto text = string_field(rec, "text");
        if (!id || id->empty()) fail("missing string field 'id'");
        if (!odp || !parse_odp(*odp)) fail("missing or unknown 'odp'");
        if (!category || !parse_category(*category)) fail("missing or unknown 'category'");
        if (!phrasing || !parse_phrasing(*phrasing)) fail("missing or unknown 'phrasing'");
        if (!text || text->find_first_not_of(" \t\r\n") == std::string::npos) fail("missing or empty 'text'");
        auto gq = rec.find("gold_queries");
        if (gq == rec.end() || !gq->is_array() ||
            !std::all_of(gq->begin(), gq->end(), [](const json& g) { return g.is_string(); })) {
            fail("'gold_queries' must be an array of strings");
        }
        if (!id || !odp || !parse_odp(*odp) || !category || !parse_category(*category) || !phrasing ||
            !parse_phrasing(*phrasing) || !text || gq == rec.end() || !gq->is_array()) {
            continue;
        }

        q.id = *id;
        q.odp = *parse_odp(*odp);
        q.category = *parse_category(*category);
        q.phrasing = *parse_phrasing(*phrasing);
        q.text = *text;
        for (const auto& g : *gq) {
            if (g.is_string()) q.gold_queries.push_back(g.get<std::string>());
        }

        if (!seen_ids.insert(q.id).second) fail("duplicate id");
        if (!seen_texts.insert(q.text).second) fail("duplicate question text");
        ++cells[{q.odp, q.category, q.phrasing}];

        std::size_t want = q.category == Category::TwoIntent ? 2 : 1;
        if (q.gold_queries.size() != want) {
            fail("expected " + std::to_string(want) + " gold quer" + (want == 1 ? "y" : "ies") + ", found " +
                 std::to_string(q.gold_queries.size()));
        }
        for (std::size_t g = 0; g < q.gold_queries.size(); ++g) {
            try {
                q.gold_parsed.push_back(sparql::parse_query(q.gold_queries[g]));
            } catch (const std::exception& e) {
                fail("gold query " + std::to_string(g + 1) + " does not parse: " + e.what());
            }
        }

        auto vocab = vocabulary.find(q.odp);
        if (vocab == vocabulary.end() || vocab->second.empty()) {
            fail("no vocabulary known for " + to_string(q.odp));
        } else if (q.phrasing == Phrasing::NSCQ) {
            for (const auto& name : vocab->second) {
                if (q.text.find(name) != std::string::npos) fail("NSCQ text uses vocabulary term '" + name + "'");
            }
        } else {
            std::string text_lower = lower(q.text);
            bool uses = false;
            for (const auto& name : vocab->second) {
                for (const auto& w : camel_words(name)) {
                    if (w.size() >= 4 && text_lower.find(w) != std::string::npos) uses = true;
                }
            }
            if (!uses) fail("SCQ text uses no vocabulary term of " + to_string(q.odp));
        }
        matrix.corpus.push_back(std::move(q));
    }

    for (Odp o : kOdps) {
        for (Category c : kCategories) {
            for (Phrasing p : kPhrasings) {
                int n = cells[{o, c, p}];
                if (n != 1) {
                    violations.push_back({to_string(o) + "/" + to_string(c) + "/" + to_string(p),
                                          n == 0 ? "missing record" : std::to_string(n) + " records, expected 1"});
                }
            }
        }
    }

    if (!violations.empty()) throw CorpusInvalid(std::move(violations));

    // Canonical order: odp, category, phrasing.
    auto rank = [](const QuestionRecord& r) {
        return std::make_tuple(static_cast<int>(r.odp), static_cast<int>(r.category), static_cast<int>(r.phrasing));
    };
    std::stable_sort(matrix.corpus.begin(), matrix.corpus.end(),
                     [&](const QuestionRecord& a, const QuestionRecord& b) { return rank(a) < rank(b); });
    return matrix;
}

ExperimentMatrix load_corpus(const std::filesystem::path& path, const Vocabulary& vocabulary) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw CorpusInvalid(std::vector<CorpusViolation>{{path.string(), std::string("invalid JSON: ") + e.what()}});
    }
    return parse_corpus(doc, vocabulary);
}

} // namespace ontochat::eval
