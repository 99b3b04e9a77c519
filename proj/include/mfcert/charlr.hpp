#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>
#include <vector>

#include "mfcert/errors.hpp"
#include "mfcert/rng.hpp"
#include "mfcert/weights.hpp"

namespace mfcert {

/// Multiset of irreducible constituents with multiplicities, for a fixed
/// ambient rank. Keys are entry vectors of dominant weights.
struct Decomposition {
    int n = 0;
    std::map<std::vector<Int>, long long> terms;

    long long multiplicity(const GLWeight& w) const {
        auto it = terms.find(w.entries());
        return it == terms.end() ? 0 : it->second;
    }

    /// Sum of mult * weyl_dim over all terms.
    BigInt dimension() const {
        BigInt d = 0;
        for (const auto& [w, m] : terms) d += BigInt(m) * weyl_dim(GLWeight(w));
        return d;
    }
};

struct LeviBlocks {
    std::vector<int> sizes;

    int total() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }
};

/// Key/value map for Levi branching: tuple of block weights -> multiplicity.
using LeviDecomposition = std::map<std::vector<std::vector<Int>>, long long>;

inline bool is_mf(const Decomposition& d) {
    for (const auto& [w, m] : d.terms)
        if (m != 1) return false;
    return true;
}

inline bool is_mf(const LeviDecomposition& d) {
    for (const auto& [w, m] : d)
        if (m != 1) return false;
    return true;
}

namespace detail {

// Count lattice column-strict fillings of the skew shape outer/inner with
// letters 1..max_letter. Cells are visited right-to-left within a row, top row
// first, so the sequence of placed letters is the reverse reading word; the
// lattice condition is enforced on its prefixes. When `content` is non-null
// only fillings with exactly that content count; otherwise all lattice
// fillings are tallied by content into `by_content`.
//
// All shapes are partitions padded to the same number of rows.
inline void count_lr_fillings(const std::vector<Int>& outer, const std::vector<Int>& inner,
                              int max_letter, const std::vector<Int>* content,
                              long long* direct_count,
                              std::map<std::vector<Int>, long long>* by_content) {
    const int rows = static_cast<int>(outer.size());
    // cell list in reverse reading order
    struct Cell {
        int r;
        Int c;
    };
    std::vector<Cell> cells;
    Int total = 0;
    for (int r = 0; r < rows; ++r) {
        if (inner[r] > outer[r]) return; // not a skew shape
        total += outer[r] - inner[r];
        for (Int c = outer[r] - 1; c >= inner[r]; --c) cells.push_back({r, c});
    }
    if (content) {
        Int want = std::accumulate(content->begin(), content->end(), Int(0));
        if (want != total) return;
    }

    std::vector<Int> counts(static_cast<std::size_t>(max_letter) + 1, 0);
    // filled letters by (row, column) for the strict-column / weak-row checks
    std::map<std::pair<int, Int>, int> filled;

    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == cells.size()) {
            if (content) {
                ++*direct_count;
            } else {
                std::vector<Int> key(counts.begin() + 1, counts.end());
                while (!key.empty() && key.back() == 0) key.pop_back();
                ++(*by_content)[key];
            }
            return;
        }
        const Cell cell = cells[idx];
        int lo = 1, hi = max_letter;
        // column-strict: strictly greater than the cell directly above
        if (cell.r > 0 && cell.c < outer[cell.r - 1] && cell.c >= inner[cell.r - 1]) {
            auto it = filled.find({cell.r - 1, cell.c});
            lo = std::max(lo, it->second + 1);
        }
        // rows weakly increase left to right; right neighbour already placed
        if (cell.c + 1 < outer[cell.r]) {
            auto it = filled.find({cell.r, cell.c + 1});
            hi = std::min(hi, it->second);
        }
        for (int letter = lo; letter <= hi; ++letter) {
            // lattice prefix condition
            if (letter > 1 && counts[letter] + 1 > counts[letter - 1]) continue;
            if (content && counts[letter] + 1 > (*content)[static_cast<std::size_t>(letter - 1)])
                continue;
            ++counts[letter];
            filled[{cell.r, cell.c}] = letter;
            self(self, idx + 1);
            --counts[letter];
        }
        filled.erase({cell.r, cell.c});
    };
    rec(rec, 0);
}

// Shift that turns the weight into a partition (all entries >= 0).
inline Int partition_twist(const GLWeight& w) { return w.min_entry() < 0 ? -w.min_entry() : 0; }

} // namespace detail

/// Decomposition of the tensor product pi_lambda (x) pi_nu of U(n) into
/// irreducibles, by enumeration of lattice column-strict skew tableaux.
/// Weights with negative entries are handled by a determinant twist that is
/// undone on the output. Results are memoized.
inline Decomposition lr_expand(const GLWeight& lambda, const GLWeight& nu) {
    if (lambda.rank() != nu.rank())
        throw usage_error("lr_expand: rank mismatch");
    const int n = lambda.rank();

    static std::mutex memo_mutex;
    static std::map<std::pair<std::vector<Int>, std::vector<Int>>, Decomposition> memo;
    const auto key = std::make_pair(lambda.entries(), nu.entries());
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    const Int cl = detail::partition_twist(lambda);
    const Int cn = detail::partition_twist(nu);
    const std::vector<Int> base = lambda.shifted(cl).entries();
    const std::vector<Int> content = nu.shifted(cn).entries();
    const Int added = std::accumulate(content.begin(), content.end(), Int(0));

    Decomposition out;
    out.n = n;

    // enumerate outer shapes mu >= base with |mu/base| = |content|
    std::vector<Int> mu(base);
    auto rec = [&](auto&& self, int row, Int remaining) -> void {
        if (row == n) {
            if (remaining != 0) return;
            long long c = 0;
            detail::count_lr_fillings(mu, base, n, &content, &c, nullptr);
            if (c > 0) {
                std::vector<Int> shifted_back(mu);
                for (Int& e : shifted_back) e -= cl + cn;
                out.terms[shifted_back] += c;
            }
            return;
        }
        const Int cap = row == 0 ? base[0] + remaining : std::min(mu[row - 1], base[row] + remaining);
        for (Int v = base[row]; v <= cap; ++v) {
            mu[row] = v;
            self(self, row + 1, remaining - (v - base[row]));
        }
    };
    rec(rec, 0, added);

    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        memo.emplace(key, out);
    }
    return out;
}

/// Multiplicity of the torus weight beta in pi_lambda: the number of GT
/// patterns with top row lambda and weight beta. Row sums are forced level by
/// level, so the enumeration only walks matching patterns.
inline long long kostka(const GLWeight& lambda, const TorusWeight& beta) {
    const int n = lambda.rank();
    if (static_cast<int>(beta.size()) != n) return 0;
    Int lsum = lambda.sum();
    Int bsum = std::accumulate(beta.begin(), beta.end(), Int(0));
    if (lsum != bsum) return 0;

    long long count = 0;
    std::vector<std::vector<Int>> rows(static_cast<std::size_t>(n));
    rows[static_cast<std::size_t>(n - 1)] = lambda.entries();

    auto rec = [&](auto&& self, int level, Int upper_sum) -> void {
        if (level == 0) {
            ++count;
            return;
        }
        // the row below must have sum = upper_sum - beta[level]
        const Int target = upper_sum - beta[static_cast<std::size_t>(level)];
        detail::for_each_interlacing_row(
            rows[static_cast<std::size_t>(level)], [&](const std::vector<Int>& row) {
                Int s = std::accumulate(row.begin(), row.end(), Int(0));
                if (s != target) return;
                rows[static_cast<std::size_t>(level - 1)] = row;
                self(self, level - 1, s);
            });
    };
    if (n == 1) {
        return lambda[0] == beta[0] ? 1 : 0;
    }
    rec(rec, n - 1, lsum);
    return count;
}

/// Full torus weight multiset of pi_lambda, memoized. Used by char_eval and
/// as the multiplicity oracle for torus restrictions.
inline const std::map<TorusWeight, long long>& weight_multiplicities(const GLWeight& lambda) {
    static std::mutex memo_mutex;
    static std::map<std::vector<Int>, std::map<TorusWeight, long long>> memo;
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo.find(lambda.entries());
    if (it != memo.end()) return it->second;
    std::map<TorusWeight, long long> table;
    for (const GTPattern& p : gt_patterns(lambda)) ++table[p.weight()];
    return memo.emplace(lambda.entries(), std::move(table)).first->second;
}

/// Classical U(n) -> U(n-1) branching: all interlacing weights, each once.
inline Decomposition branch_interlace(const GLWeight& lambda) {
    const int n = lambda.rank();
    if (n < 2) throw usage_error("branch_interlace: rank must be >= 2");
    Decomposition out;
    out.n = n - 1;
    detail::for_each_interlacing_row(lambda.entries(), [&](const std::vector<Int>& row) {
        out.terms[row] += 1;
    });
    return out;
}

namespace detail {

// Two-block restriction U(p+q) -> U(p) x U(q): multiplicity of
// (alpha, beta) equals the LR coefficient c^lambda_{alpha beta}.
inline std::map<std::pair<std::vector<Int>, std::vector<Int>>, long long>
lr_coproduct(const GLWeight& lambda, int p, int q) {
    const int n = lambda.rank();
    const Int twist = partition_twist(lambda);
    const std::vector<Int> outer = lambda.shifted(twist).entries();

    std::map<std::pair<std::vector<Int>, std::vector<Int>>, long long> out;

    // enumerate inner shapes alpha contained in outer with at most p parts
    std::vector<Int> alpha(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int row) -> void {
        if (row == std::min(p, n)) {
            std::map<std::vector<Int>, long long> by_content;
            count_lr_fillings(outer, alpha, q, nullptr, nullptr, &by_content);
            for (const auto& [beta, c] : by_content) {
                std::vector<Int> a(alpha.begin(), alpha.begin() + p);
                std::vector<Int> b(beta);
                b.resize(static_cast<std::size_t>(q), 0);
                for (Int& e : a) e -= twist;
                for (Int& e : b) e -= twist;
                out[{a, b}] += c;
            }
            return;
        }
        const Int hi = row == 0 ? outer[0] : std::min(alpha[row - 1], outer[row]);
        for (Int v = 0; v <= hi; ++v) {
            alpha[static_cast<std::size_t>(row)] = v;
            self(self, row + 1);
        }
        alpha[static_cast<std::size_t>(row)] = 0;
    };
    rec(rec, 0);
    return out;
}

} // namespace detail

/// Restriction of pi_lambda to the block-diagonal Levi subgroup
/// U(n_1) x ... x U(n_k), computed by iterating two-block restrictions.
inline LeviDecomposition branch_levi(const GLWeight& lambda, const LeviBlocks& blocks) {
    if (blocks.total() != lambda.rank())
        throw usage_error("branch_levi: block sizes must sum to the rank");
    for (int s : blocks.sizes)
        if (s < 1) throw usage_error("branch_levi: block sizes must be positive");

    LeviDecomposition current;
    current[{lambda.entries()}] = 1;

    // peel blocks off the front one at a time
    for (std::size_t b = 0; b + 1 < blocks.sizes.size(); ++b) {
        const int p = blocks.sizes[b];
        LeviDecomposition next;
        for (const auto& [tuple, mult] : current) {
            const std::vector<Int>& tail = tuple.back();
            const int rest = static_cast<int>(tail.size()) - p;
            auto pieces = detail::lr_coproduct(GLWeight(tail), p, rest);
            for (const auto& [ab, c] : pieces) {
                std::vector<std::vector<Int>> key(tuple.begin(), tuple.end() - 1);
                key.push_back(ab.first);
                key.push_back(ab.second);
                next[key] += mult * c;
            }
        }
        current = std::move(next);
    }
    return current;
}

namespace detail {

inline std::complex<double> unit_ipow(std::complex<double> t, Int e) {
    if (e < 0) {
        t = std::conj(t); // |t| = 1
        e = -e;
    }
    std::complex<double> r{1.0, 0.0};
    while (e > 0) {
        if (e & 1) r *= t;
        t *= t;
        e >>= 1;
    }
    return r;
}

} // namespace detail

/// Schur character chi_lambda(diag(t)) as the GT weight sum. Entries of t
/// must be unit modulus.
inline std::complex<double> char_eval(const GLWeight& lambda,
                                      const std::vector<std::complex<double>>& t) {
    if (static_cast<int>(t.size()) != lambda.rank())
        throw usage_error("char_eval: point rank mismatch");
    for (const auto& z : t)
        if (std::abs(std::abs(z) - 1.0) > 1e-12)
            throw usage_error("char_eval: entries must be unit modulus");
    std::complex<double> sum{0.0, 0.0};
    for (const auto& [w, m] : weight_multiplicities(lambda)) {
        std::complex<double> term{1.0, 0.0};
        for (std::size_t i = 0; i < t.size(); ++i) term *= detail::unit_ipow(t[i], w[i]);
        sum += static_cast<double>(m) * term;
    }
    return sum;
}

struct DualCheckResult {
    bool pass = false;
    double max_residual = 0.0;
};

/// Checks the Weyl-involution duality chi_lambda(conj t) = conj(chi_lambda(t))
/// and chi_{dual(lambda)}(t) = conj(chi_lambda(t)) on seeded random torus
/// points, within 1e-9.
inline DualCheckResult sigma_dual_check(const GLWeight& lambda, int num_samples,
                                        std::uint64_t seed) {
    if (num_samples < 1) throw usage_error("sigma_dual_check: need at least one sample");
    Rng rng(seed);
    const GLWeight dual = dual_weight(lambda);
    double worst = 0.0;
    for (int s = 0; s < num_samples; ++s) {
        std::vector<std::complex<double>> t(static_cast<std::size_t>(lambda.rank()));
        for (auto& z : t) z = rng.unit_phase();
        std::vector<std::complex<double>> tc(t);
        for (auto& z : tc) z = std::conj(z);
        const auto chi = char_eval(lambda, t);
        worst = std::max(worst, std::abs(char_eval(lambda, tc) - std::conj(chi)));
        worst = std::max(worst, std::abs(char_eval(dual, t) - std::conj(chi)));
    }
    return {worst <= 1e-9, worst};
}

} // namespace mfcert
