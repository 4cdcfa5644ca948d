#include "ontochat/sparql/results.hpp"

#include <algorithm>
#include <map>

namespace ontochat::sparql {

namespace {

using Row = ResultSet::Row;

// Cell rendering with blank node labels erased.
std::string erased(const std::optional<rdf::Term>& cell) {
    if (!cell) return std::string("\x01");
    if (cell->is_blank()) return std::string("\x02");
    return cell->key();
}

bool has_blanks(const ResultSet& rs) {
    for (const auto& row : rs.rows()) {
        for (const auto& cell : row) {
            if (cell && cell->is_blank()) return true;
        }
    }
    return false;
}

class RowMatcher {
public:
    RowMatcher(const ResultSet& a, const ResultSet& b, const std::vector<std::size_t>& perm, bool ordered)
        : a_(a.rows()), b_(b.rows()), perm_(perm), ordered_(ordered) {}

    bool run() {
        if (ordered_) {
            for (std::size_t i = 0; i < a_.size(); ++i) {
                if (!try_pair(i, i)) return false;
            }
            return true;
        }
        for (std::size_t j = 0; j < b_.size(); ++j) by_signature_[signature(b_[j], true)].push_back(j);
        used_.assign(b_.size(), false);
        return assign(0);
    }

private:
    std::string signature(const Row& row, bool permuted) const {
        std::string sig;
        for (std::size_t i = 0; i < perm_.size(); ++i) {
            sig += erased(permuted ? row[perm_[i]] : row[i]);
            sig.push_back('\0');
        }
        return sig;
    }

    bool assign(std::size_t i) {
        if (i == a_.size()) return true;
        auto it = by_signature_.find(signature(a_[i], false));
        if (it == by_signature_.end()) return false;
        for (std::size_t j : it->second) {
            if (used_[j]) continue;
            auto saved_fwd = fwd_;
            auto saved_back = back_;
            if (try_pair(i, j)) {
                used_[j] = true;
                if (assign(i + 1)) return true;
                used_[j] = false;
            }
            fwd_ = std::move(saved_fwd);
            back_ = std::move(saved_back);
        }
        return false;
    }

    bool try_pair(std::size_t i, std::size_t j) {
        const Row& ra = a_[i];
        const Row& rb = b_[j];
        for (std::size_t c = 0; c < perm_.size(); ++c) {
            const auto& x = ra[c];
            const auto& y = rb[perm_[c]];
            if (!x || !y) {
                if (x.has_value() != y.has_value()) return false;
                continue;
            }
            if (x->is_blank() != y->is_blank()) return false;
            if (!x->is_blank()) {
                if (*x != *y) return false;
                continue;
            }
            auto f = fwd_.find(x->value());
            auto g = back_.find(y->value());
            if (f == fwd_.end() && g == back_.end()) {
                fwd_.emplace(x->value(), y->value());
                back_.emplace(y->value(), x->value());
            } else if (f == fwd_.end() || g == back_.end() || f->second != y->value()) {
                return false;
            }
        }
        return true;
    }

    const std::vector<Row>& a_;
    const std::vector<Row>& b_;
    const std::vector<std::size_t>& perm_;
    bool ordered_;
    std::map<std::string, std::vector<std::size_t>> by_signature_;
    std::vector<bool> used_;
    std::map<std::string, std::string> fwd_;
    std::map<std::string, std::string> back_;
};

bool rows_equal(const ResultSet& a, const ResultSet& b, const std::vector<std::size_t>& perm, bool ordered,
                bool blanks) {
    if (blanks) return RowMatcher(a, b, perm, ordered).run();
    auto keys = [&](const ResultSet& rs, bool permuted) {
        std::vector<std::string> out;
        for (const auto& row : rs.rows()) {
            std::string k;
            for (std::size_t i = 0; i < perm.size(); ++i) {
                k += erased(permuted ? row[perm[i]] : row[i]);
                k.push_back('\0');
            }
            out.push_back(std::move(k));
        }
        if (!ordered) std::sort(out.begin(), out.end());
        return out;
    };
    return keys(a, false) == keys(b, true);
}

// Sorted multiset of erased cell values of one column.
std::vector<std::string> column_profile(const ResultSet& rs, std::size_t col) {
    std::vector<std::string> out;
    for (const auto& row : rs.rows()) out.push_back(erased(row[col]));
    std::sort(out.begin(), out.end());
    return out;
}

bool search(const ResultSet& a, const ResultSet& b, const std::vector<std::vector<bool>>& allowed,
            std::vector<std::size_t>& perm, std::vector<bool>& taken, bool ordered, bool blanks) {
    std::size_t c = perm.size();
    if (c == allowed.size()) return rows_equal(a, b, perm, ordered, blanks);
    for (std::size_t j = 0; j < allowed.size(); ++j) {
        if (taken[j] || !allowed[c][j]) continue;
        taken[j] = true;
        perm.push_back(j);
        if (search(a, b, allowed, perm, taken, ordered, blanks)) return true;
        perm.pop_back();
        taken[j] = false;
    }
    return false;
}

} // namespace

bool results_equal(const ResultSet& a, const ResultSet& b, bool ordered) {
    if (a.is_boolean() || b.is_boolean()) {
        return a.is_boolean() && b.is_boolean() && a.boolean_value() == b.boolean_value();
    }
    std::size_t ncols = a.variables().size();
    if (ncols != b.variables().size() || a.rows().size() != b.rows().size()) return false;

    std::vector<std::vector<bool>> allowed(ncols, std::vector<bool>(ncols, false));
    for (std::size_t i = 0; i < ncols; ++i) {
        auto pa = column_profile(a, i);
        for (std::size_t j = 0; j < ncols; ++j) allowed[i][j] = pa == column_profile(b, j);
    }
    bool blanks = has_blanks(a) || has_blanks(b);
    std::vector<std::size_t> perm;
    std::vector<bool> taken(ncols, false);
    return search(a, b, allowed, perm, taken, ordered, blanks);
}

} // namespace ontochat::sparql
