#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mfcert/errors.hpp"

namespace mfcert {

using Int = long long;
using BigInt = boost::multiprecision::cpp_int;

// Torus character of U(n): an integer exponent vector, not necessarily ordered.
using TorusWeight = std::vector<Int>;

inline bool is_dominant(const std::vector<Int>& w) {
    if (w.empty()) throw usage_error("is_dominant: empty weight vector");
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] < w[i + 1]) return false;
    return true;
}

/// Highest weight of an irreducible rational representation of U(n):
/// a non-increasing integer vector of length n. Entries may be negative.
class GLWeight {
public:
    explicit GLWeight(std::vector<Int> entries) : entries_(std::move(entries)) {
        if (!is_dominant(entries_))
            throw usage_error("GLWeight: entries must be non-increasing");
    }

    GLWeight(std::initializer_list<Int> entries) : GLWeight(std::vector<Int>(entries)) {}

    int rank() const { return static_cast<int>(entries_.size()); }
    const std::vector<Int>& entries() const { return entries_; }
    Int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }

    Int sum() const {
        Int s = 0;
        for (Int e : entries_) s += e;
        return s;
    }

    Int min_entry() const { return entries_.back(); }

    /// Entry-wise shift by a determinant power: lambda + (c, ..., c).
    GLWeight shifted(Int c) const {
        std::vector<Int> e = entries_;
        for (Int& x : e) x += c;
        return GLWeight(std::move(e));
    }

    bool operator==(const GLWeight& o) const { return entries_ == o.entries_; }
    bool operator!=(const GLWeight& o) const { return entries_ != o.entries_; }
    bool operator<(const GLWeight& o) const { return entries_ < o.entries_; }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(entries_[i]);
        }
        return s + ")";
    }

private:
    std::vector<Int> entries_;
};

/// Contragredient highest weight: negate entries and reverse. An involution.
inline GLWeight dual_weight(const GLWeight& lambda) {
    std::vector<Int> e(lambda.entries().rbegin(), lambda.entries().rend());
    for (Int& x : e) x = -x;
    return GLWeight(std::move(e));
}

/// Gelfand-Tsetlin pattern: rows[k-1] has length k, rows[n-1] is the top row.
/// Adjacent rows interlace: rows[k][i] >= rows[k-1][i] >= rows[k][i+1].
struct GTPattern {
    std::vector<std::vector<Int>> rows;

    int rank() const { return static_cast<int>(rows.size()); }

    bool interlaces() const {
        for (std::size_t k = 1; k < rows.size(); ++k) {
            for (std::size_t i = 0; i + 1 < rows[k].size(); ++i) {
                if (!(rows[k][i] >= rows[k - 1][i] && rows[k - 1][i] >= rows[k][i + 1]))
                    return false;
            }
        }
        return true;
    }

    /// Torus weight: w_k = (sum of row k) - (sum of row k-1).
    TorusWeight weight() const {
        TorusWeight w(rows.size());
        Int prev = 0;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            Int s = 0;
            for (Int e : rows[k]) s += e;
            w[k] = s - prev;
            prev = s;
        }
        return w;
    }

    bool operator==(const GTPattern& o) const { return rows == o.rows; }
};

namespace detail {

// Enumerate rows interlacing below `upper`, in lexicographic order, and invoke
// fn on each. A row r of length m = |upper|-1 satisfies
// upper[i] >= r[i] >= upper[i+1].
template <typename Fn>
void for_each_interlacing_row(const std::vector<Int>& upper, Fn&& fn) {
    const std::size_t m = upper.size() - 1;
    std::vector<Int> row(m);
    // Recursive descent over positions; iteration at each position runs from
    // the lower bound to the upper bound so the visit order is lexicographic.
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == m) {
            fn(row);
            return;
        }
        // dominance of `row` is automatic: row[pos-1] >= upper[pos] >= row[pos]
        for (Int v = upper[pos + 1]; v <= upper[pos]; ++v) {
            row[pos] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
}

} // namespace detail

/// All GT patterns with the given top row, ordered lexicographically by the
/// row tuple read from the top row downward.
inline std::vector<GTPattern> gt_patterns(const GLWeight& lambda) {
    const int n = lambda.rank();
    std::vector<GTPattern> out;
    GTPattern work;
    work.rows.assign(static_cast<std::size_t>(n), {});
    work.rows[static_cast<std::size_t>(n - 1)] = lambda.entries();

    auto rec = [&](auto&& self, int level) -> void {
        if (level == 0) {
            out.push_back(work);
            return;
        }
        detail::for_each_interlacing_row(
            work.rows[static_cast<std::size_t>(level)],
            [&](const std::vector<Int>& row) {
                work.rows[static_cast<std::size_t>(level - 1)] = row;
                self(self, level - 1);
            });
    };
    rec(rec, n - 1);
    return out;
}

/// Dimension of the irreducible U(n) representation with highest weight
/// lambda: prod_{i<j} (lambda_i - lambda_j + j - i) / (j - i).
inline BigInt weyl_dim(const GLWeight& lambda) {
    const int n = lambda.rank();
    BigInt num = 1, den = 1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            num *= BigInt(lambda[i] - lambda[j] + j - i);
            den *= BigInt(j - i);
        }
    }
    return num / den;
}

} // namespace mfcert
