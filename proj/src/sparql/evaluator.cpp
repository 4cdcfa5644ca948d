#include "ontochat/sparql/evaluator.hpp"

#include "expression.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ontochat::sparql {

namespace {

using rdf::Term;
using Row = std::vector<std::optional<Term>>;
using Kind = PatternNode::Kind;

class Evaluator {
public:
    Evaluator(const Query& query, const rdf::Graph& graph) : query_(query), graph_(graph) {
        for (const auto& v : pattern_variables(query.where)) slot(v);
        for (const auto& v : query.projection) slot(v);
        if (query.count) slot(query.count->alias);
    }

    ResultSet run() {
        std::vector<Row> rows = eval_group(query_.where, {Row(slots_.size())});

        if (query_.form == QueryForm::Ask) return ResultSet::boolean(!rows.empty());

        std::vector<std::string> vars = query_.result_variables();
        if (query_.count) {
            rows = {count_row(rows)};
        }
        order(rows);

        std::vector<std::size_t> cols;
        for (const auto& v : vars) cols.push_back(slot(v));
        std::vector<ResultSet::Row> projected;
        projected.reserve(rows.size());
        for (auto& r : rows) {
            ResultSet::Row out;
            out.reserve(cols.size());
            for (std::size_t c : cols) out.push_back(r[c]);
            projected.push_back(std::move(out));
        }

        if (query_.distinct) {
            std::set<std::vector<std::string>> seen;
            std::vector<ResultSet::Row> unique;
            for (auto& r : projected) {
                std::vector<std::string> key;
                for (const auto& cell : r) key.push_back(cell ? cell->key() : std::string());
                if (seen.insert(std::move(key)).second) unique.push_back(std::move(r));
            }
            projected = std::move(unique);
        }

        std::size_t offset = std::min(query_.offset.value_or(0), projected.size());
        std::size_t end = projected.size();
        if (query_.limit) end = std::min(end, offset + *query_.limit);
        std::vector<ResultSet::Row> sliced(std::make_move_iterator(projected.begin() + static_cast<std::ptrdiff_t>(offset)),
                                           std::make_move_iterator(projected.begin() + static_cast<std::ptrdiff_t>(end)));
        return ResultSet::table(std::move(vars), std::move(sliced));
    }

private:
    std::size_t slot(const std::string& name) {
        auto it = slots_.find(name);
        if (it != slots_.end()) return it->second;
        std::size_t idx = slots_.size();
        slots_.emplace(name, idx);
        return idx;
    }

    detail::VarLookup lookup_for(const Row& row) const {
        return [this, &row](const std::string& name) -> const Term* {
            auto it = slots_.find(name);
            if (it == slots_.end() || it->second >= row.size() || !row[it->second]) return nullptr;
            return &*row[it->second];
        };
    }

    bool passes(const std::vector<const Expression*>& filters, const Row& row) const {
        auto lookup = lookup_for(row);
        return std::all_of(filters.begin(), filters.end(),
                           [&](const Expression* f) { return detail::filter_passes(*f, lookup); });
    }

    // Evaluates a group's non-filter elements starting from `rows`; the
    // group's filters are returned through `filters` for the caller to apply.
    std::vector<Row> eval_elements(const PatternNode& group, std::vector<Row> rows,
                                   std::vector<const Expression*>& filters) {
        for (const auto& child : group.children) {
            switch (child.kind) {
            case Kind::Filter:
                filters.push_back(&child.filter);
                break;
            case Kind::Bgp:
                rows = extend(std::move(rows), child.triples);
                break;
            case Kind::Optional:
                rows = left_join(std::move(rows), child.children.front());
                break;
            case Kind::Union:
            case Kind::Join:
                rows = join(rows, eval_node(child));
                break;
            }
        }
        return rows;
    }

    std::vector<Row> eval_group(const PatternNode& group, std::vector<Row> seed) {
        std::vector<const Expression*> filters;
        std::vector<Row> rows = eval_elements(group, std::move(seed), filters);
        if (filters.empty()) return rows;
        std::vector<Row> out;
        for (auto& r : rows) {
            if (passes(filters, r)) out.push_back(std::move(r));
        }
        return out;
    }

    std::vector<Row> eval_node(const PatternNode& node) {
        Row empty(slots_.size());
        switch (node.kind) {
        case Kind::Union: {
            std::vector<Row> left = eval_node(node.children[0]);
            std::vector<Row> right = eval_node(node.children[1]);
            left.insert(left.end(), std::make_move_iterator(right.begin()), std::make_move_iterator(right.end()));
            return left;
        }
        case Kind::Join:
            return eval_group(node, {empty});
        case Kind::Bgp:
            return extend({empty}, node.triples);
        case Kind::Optional:
            return left_join({empty}, node.children.front());
        case Kind::Filter:
            break;
        }
        return {empty};
    }

    static bool compatible(const Row& a, const Row& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] && b[i] && *a[i] != *b[i]) return false;
        }
        return true;
    }

    static Row merge(const Row& a, const Row& b) {
        Row out = a;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (!out[i] && b[i]) out[i] = b[i];
        }
        return out;
    }

    static std::vector<Row> join(const std::vector<Row>& left, const std::vector<Row>& right) {
        std::vector<Row> out;
        for (const auto& l : left) {
            for (const auto& r : right) {
                if (compatible(l, r)) out.push_back(merge(l, r));
            }
        }
        return out;
    }

    static bool only_bgps(const PatternNode& group) {
        return std::all_of(group.children.begin(), group.children.end(), [](const PatternNode& c) {
            return c.kind == Kind::Bgp || c.kind == Kind::Filter;
        });
    }

    // OPTIONAL: the optional group's own filters act as the join condition.
    std::vector<Row> left_join(std::vector<Row> left, const PatternNode& group) {
        std::vector<Row> out;
        if (only_bgps(group)) {
            for (auto& l : left) {
                std::vector<const Expression*> filters;
                std::vector<Row> ext = eval_elements(group, {l}, filters);
                bool any = false;
                for (auto& m : ext) {
                    if (passes(filters, m)) {
                        out.push_back(std::move(m));
                        any = true;
                    }
                }
                if (!any) out.push_back(std::move(l));
            }
            return out;
        }
        std::vector<const Expression*> filters;
        std::vector<Row> right = eval_elements(group, {Row(slots_.size())}, filters);
        for (auto& l : left) {
            bool any = false;
            for (const auto& r : right) {
                if (!compatible(l, r)) continue;
                Row m = merge(l, r);
                if (passes(filters, m)) {
                    out.push_back(std::move(m));
                    any = true;
                }
            }
            if (!any) out.push_back(std::move(l));
        }
        return out;
    }

    // BGP evaluation seeded with existing solutions (equivalent to joining
    // the seeds with the BGP's solutions).
    std::vector<Row> extend(std::vector<Row> rows, const std::vector<TriplePatternAst>& triples) {
        for (const auto& tp : triples) {
            std::vector<Row> next;
            for (const auto& row : rows) {
                rdf::TriplePattern pattern;
                pattern.subject = resolve(tp.subject, row);
                pattern.predicate = resolve(tp.predicate, row);
                pattern.object = resolve(tp.object, row);
                for (const auto& t : graph_.match(pattern)) {
                    Row r = row;
                    if (bind(tp.subject, t.subject, r) && bind(tp.predicate, t.predicate, r) &&
                        bind(tp.object, t.object, r)) {
                        next.push_back(std::move(r));
                    }
                }
            }
            rows = std::move(next);
            if (rows.empty()) break;
        }
        return rows;
    }

    std::optional<Term> resolve(const PatternTerm& pt, const Row& row) const {
        if (auto t = std::get_if<Term>(&pt)) return *t;
        return row[slots_.at(std::get<Variable>(pt).name)];
    }

    bool bind(const PatternTerm& pt, const Term& value, Row& row) const {
        auto v = std::get_if<Variable>(&pt);
        if (!v) return true;
        auto& cell = row[slots_.at(v->name)];
        if (cell) return *cell == value;
        cell = value;
        return true;
    }

    Row count_row(const std::vector<Row>& rows) {
        const CountAggregate& agg = *query_.count;
        long long n = 0;
        if (!agg.var) {
            if (agg.distinct) {
                std::set<std::vector<std::string>> seen;
                for (const auto& r : rows) {
                    std::vector<std::string> key;
                    for (const auto& cell : r) key.push_back(cell ? cell->key() : std::string());
                    seen.insert(std::move(key));
                }
                n = static_cast<long long>(seen.size());
            } else {
                n = static_cast<long long>(rows.size());
            }
        } else {
            std::size_t col = slot(*agg.var);
            std::set<std::string> seen;
            for (const auto& r : rows) {
                if (!r[col]) continue;
                if (!agg.distinct || seen.insert(r[col]->key()).second) ++n;
            }
        }
        Row out(slots_.size());
        out[slot(agg.alias)] = Term::integer(n);
        return out;
    }

    void order(std::vector<Row>& rows) {
        if (query_.order_by.empty()) return;
        std::vector<std::pair<std::vector<std::optional<Term>>, Row>> keyed;
        keyed.reserve(rows.size());
        for (auto& r : rows) {
            std::vector<std::optional<Term>> keys;
            auto lookup = lookup_for(r);
            for (const auto& cond : query_.order_by) keys.push_back(detail::eval_expression(cond.expr, lookup));
            keyed.emplace_back(std::move(keys), std::move(r));
        }
        std::stable_sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
            for (std::size_t k = 0; k < query_.order_by.size(); ++k) {
                int c = order_compare(a.first[k], b.first[k]);
                if (c != 0) return query_.order_by[k].descending ? c > 0 : c < 0;
            }
            return false;
        });
        rows.clear();
        for (auto& [keys, r] : keyed) rows.push_back(std::move(r));
    }

    const Query& query_;
    const rdf::Graph& graph_;
    std::map<std::string, std::size_t> slots_;
};

} // namespace

ResultSet evaluate(const Query& query, const rdf::Graph& graph) {
    return Evaluator(query, graph).run();
}

} // namespace ontochat::sparql
