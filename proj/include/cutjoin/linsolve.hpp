#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace cutjoin {

// One exact linear equation sum_k coeff[k] * x_k = rhs over atom ids k.
struct LinearRelation {
    std::map<int, Rational> coeff;
    Rational rhs{0};

    bool trivial() const {
        for (const auto& [k, v] : coeff)
            if (v != 0) return false;
        return rhs == 0;
    }
};

struct LinearSolution {
    bool consistent = true;
    // Index (into the reduced system) of a row asserting 0 = nonzero.
    int witness_row = -1;
    // Variables pinned to a unique value.
    std::map<int, Rational> values;
    // Variables left free by the system.
    std::vector<int> free_atoms;
    bool unique() const { return consistent && free_atoms.empty(); }
};

// Exact rational Gaussian elimination on sparse relations.
class LinearSystem {
public:
    void add_relation(LinearRelation r) {
        if (!r.trivial()) rows_.push_back(std::move(r));
    }
    const std::vector<LinearRelation>& relations() const { return rows_; }
    size_t size() const { return rows_.size(); }

    LinearSolution solve() const {
        std::set<int> used;
        for (const auto& r : rows_)
            for (const auto& [k, v] : r.coeff)
                if (v != 0) used.insert(k);
        std::vector<int> cols(used.begin(), used.end());
        std::map<int, size_t> col_of;
        for (size_t j = 0; j < cols.size(); ++j) col_of[cols[j]] = j;

        size_t m = rows_.size(), n = cols.size();
        std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n + 1, Rational(0)));
        for (size_t i = 0; i < m; ++i) {
            for (const auto& [k, v] : rows_[i].coeff) a[i][col_of[k]] = v;
            a[i][n] = rows_[i].rhs;
        }

        // Reduced row echelon form.
        std::vector<int> pivot_col(m, -1);
        size_t rank = 0;
        for (size_t j = 0; j < n && rank < m; ++j) {
            size_t p = rank;
            while (p < m && a[p][j] == 0) ++p;
            if (p == m) continue;
            std::swap(a[rank], a[p]);
            Rational inv = Rational(1) / a[rank][j];
            for (size_t t = j; t <= n; ++t) a[rank][t] *= inv;
            for (size_t i = 0; i < m; ++i) {
                if (i == rank || a[i][j] == 0) continue;
                Rational f = a[i][j];
                for (size_t t = j; t <= n; ++t) a[i][t] -= f * a[rank][t];
            }
            pivot_col[rank] = static_cast<int>(j);
            ++rank;
        }

        LinearSolution sol;
        for (size_t i = rank; i < m; ++i) {
            if (a[i][n] != 0) {
                sol.consistent = false;
                sol.witness_row = static_cast<int>(i);
                return sol;
            }
        }

        std::set<int> pivots;
        for (size_t i = 0; i < rank; ++i) pivots.insert(pivot_col[i]);
        for (size_t j = 0; j < n; ++j)
            if (!pivots.count(static_cast<int>(j))) sol.free_atoms.push_back(cols[j]);
        for (size_t i = 0; i < rank; ++i) {
            bool pinned = true;
            for (size_t j = 0; j < n; ++j) {
                if (static_cast<int>(j) == pivot_col[i]) continue;
                if (a[i][j] != 0) {
                    pinned = false;
                    break;
                }
            }
            if (pinned) sol.values[cols[static_cast<size_t>(pivot_col[i])]] = a[i][n];
        }
        return sol;
    }

private:
    std::vector<LinearRelation> rows_;
};

}  // namespace cutjoin
