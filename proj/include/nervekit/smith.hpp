/**
 * Smith normal form over the integers. Arithmetic runs in checked 64-bit
 * integers and is redone in arbitrary precision on overflow.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace nervekit {

using BigInt = boost::multiprecision::cpp_int;

template <class T>
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}

    T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

template <class T, class U>
Matrix<T> convert(const Matrix<U>& m)
{
    Matrix<T> out(m.rows, m.cols);
    for (std::size_t k = 0; k < m.data.size(); ++k)
        out.data[k] = T(m.data[k]);
    return out;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.cols != b.rows)
        throw Error(Errc::InvalidArgument, "matrix shapes do not multiply");
    Matrix<T> c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

/// Exact determinant by fraction-free Gaussian elimination (Bareiss).
inline BigInt determinant(Matrix<BigInt> m)
{
    if (m.rows != m.cols)
        throw Error(Errc::InvalidArgument, "determinant of a non-square matrix");
    const std::size_t n = m.rows;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(p, j), m(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return n == 0 ? BigInt(1) : sign * m(n - 1, n - 1);
}

namespace detail {

struct Overflow {};

inline std::int64_t mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Overflow{};
    return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Overflow{};
    return r;
}
inline std::int64_t add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw Overflow{};
    return r;
}
inline std::int64_t neg(std::int64_t a) { return sub(0, a); }
inline std::int64_t abs_value(std::int64_t a) { return a < 0 ? neg(a) : a; }

inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt neg(const BigInt& a) { return -a; }
inline BigInt abs_value(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

template <class T>
struct SmithWork {
    Matrix<T> d;
    Matrix<T> left;
    Matrix<T> right;
    bool transforms = true;

    void add_row(std::size_t to, std::size_t from, const T& q)  // row_to -= q row_from
    {
        for (std::size_t j = 0; j < d.cols; ++j)
            d(to, j) = sub(d(to, j), mul(q, d(from, j)));
        if (transforms)
            for (std::size_t j = 0; j < left.cols; ++j)
                left(to, j) = sub(left(to, j), mul(q, left(from, j)));
    }
    void add_col(std::size_t to, std::size_t from, const T& q)  // col_to -= q col_from
    {
        for (std::size_t i = 0; i < d.rows; ++i)
            d(i, to) = sub(d(i, to), mul(q, d(i, from)));
        if (transforms)
            for (std::size_t i = 0; i < right.rows; ++i)
                right(i, to) = sub(right(i, to), mul(q, right(i, from)));
    }
    void swap_rows(std::size_t a, std::size_t b)
    {
        for (std::size_t j = 0; j < d.cols; ++j)
            std::swap(d(a, j), d(b, j));
        if (transforms)
            for (std::size_t j = 0; j < left.cols; ++j)
                std::swap(left(a, j), left(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        for (std::size_t i = 0; i < d.rows; ++i)
            std::swap(d(i, a), d(i, b));
        if (transforms)
            for (std::size_t i = 0; i < right.rows; ++i)
                std::swap(right(i, a), right(i, b));
    }
    void negate_row(std::size_t r)
    {
        for (std::size_t j = 0; j < d.cols; ++j)
            d(r, j) = neg(d(r, j));
        if (transforms)
            for (std::size_t j = 0; j < left.cols; ++j)
                left(r, j) = neg(left(r, j));
    }

    void run()
    {
        const std::size_t limit = std::min(d.rows, d.cols);
        for (std::size_t t = 0; t < limit; ++t) {
            if (!move_smallest(t))
                break;
            while (true) {
                bool dirty = false;
                for (std::size_t i = t + 1; i < d.rows; ++i)
                    if (d(i, t) != 0) {
                        T q = d(i, t) / d(t, t);
                        add_row(i, t, q);
                        dirty = dirty || d(i, t) != 0;
                    }
                for (std::size_t j = t + 1; j < d.cols; ++j)
                    if (d(t, j) != 0) {
                        T q = d(t, j) / d(t, t);
                        add_col(j, t, q);
                        dirty = dirty || d(t, j) != 0;
                    }
                if (dirty) {
                    move_smallest_in_cross(t);
                    continue;
                }
                // divisibility: fold a row with a non-multiple into the pivot row
                bool folded = false;
                for (std::size_t i = t + 1; i < d.rows && !folded; ++i)
                    for (std::size_t j = t + 1; j < d.cols && !folded; ++j)
                        if (d(i, j) % d(t, t) != 0) {
                            add_row(t, i, T(-1));
                            folded = true;
                        }
                if (!folded)
                    break;
            }
            if (d(t, t) < 0)
                negate_row(t);
        }
    }

    bool move_smallest(std::size_t t)
    {
        std::size_t bi = d.rows, bj = d.cols;
        T best = 0;
        for (std::size_t i = t; i < d.rows; ++i)
            for (std::size_t j = t; j < d.cols; ++j)
                if (d(i, j) != 0 && (bi == d.rows || abs_value(d(i, j)) < best)) {
                    best = abs_value(d(i, j));
                    bi = i;
                    bj = j;
                }
        if (bi == d.rows)
            return false;
        if (bi != t)
            swap_rows(bi, t);
        if (bj != t)
            swap_cols(bj, t);
        return true;
    }

    void move_smallest_in_cross(std::size_t t)
    {
        std::size_t bi = t, bj = t;
        T best = abs_value(d(t, t));
        for (std::size_t i = t + 1; i < d.rows; ++i)
            if (d(i, t) != 0 && abs_value(d(i, t)) < best) {
                best = abs_value(d(i, t));
                bi = i;
                bj = t;
            }
        for (std::size_t j = t + 1; j < d.cols; ++j)
            if (d(t, j) != 0 && abs_value(d(t, j)) < best) {
                best = abs_value(d(t, j));
                bi = t;
                bj = j;
            }
        if (bi != t)
            swap_rows(bi, t);
        if (bj != t)
            swap_cols(bj, t);
    }
};

template <class T>
SmithWork<T> smith_work(const Matrix<T>& m, bool transforms)
{
    SmithWork<T> w{m, {}, {}, transforms};
    if (transforms) {
        w.left = Matrix<T>::identity(m.rows);
        w.right = Matrix<T>::identity(m.cols);
    }
    w.run();
    return w;
}

template <class T>
std::vector<BigInt> diagonal_of(const Matrix<T>& d)
{
    std::vector<BigInt> out;
    for (std::size_t t = 0; t < std::min(d.rows, d.cols); ++t)
        if (d(t, t) != 0)
            out.emplace_back(d(t, t));
    return out;
}

}  // namespace detail

/// L·M·R = D with L, R unimodular and the diagonal of D satisfying d_1 | d_2 | ...
struct SmithResult {
    Matrix<BigInt> left;
    Matrix<BigInt> diagonal;
    Matrix<BigInt> right;
    std::vector<BigInt> divisors;  // nonzero diagonal entries, in order
};

inline SmithResult smith_normal_form(const Matrix<BigInt>& m)
{
    auto w = detail::smith_work(m, true);
    return {w.left, w.d, w.right, detail::diagonal_of(w.d)};
}

inline SmithResult smith_normal_form(const Matrix<std::int64_t>& m)
{
    try {
        auto w = detail::smith_work(m, true);
        return {convert<BigInt>(w.left), convert<BigInt>(w.d), convert<BigInt>(w.right), detail::diagonal_of(w.d)};
    } catch (const detail::Overflow&) {
        return smith_normal_form(convert<BigInt>(m));
    }
}

/// Sparse integer matrix as rows of (column, value) maps.
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::map<std::size_t, std::int64_t>> entries;

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r) {}

    void add(std::size_t i, std::size_t j, std::int64_t v)
    {
        if (v == 0)
            return;
        auto& e = entries[i][j];
        e += v;
        if (e == 0)
            entries[i].erase(j);
    }

    Matrix<std::int64_t> dense() const
    {
        Matrix<std::int64_t> m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (const auto& [j, v] : entries[i])
                m(i, j) = v;
        return m;
    }
};

/// Rank and invariant factors greater than one.
struct InvariantFactors {
    std::size_t rank = 0;
    std::vector<BigInt> torsion;
};

namespace detail {

template <class T>
InvariantFactors invariant_factors_impl(const SparseMatrix& input)
{
    using Row = std::vector<std::pair<std::size_t, T>>;  // sorted by column
    std::vector<Row> rows(input.rows);
    std::vector<std::vector<std::size_t>> col_rows(input.cols);  // may hold stale rows
    for (std::size_t i = 0; i < input.rows; ++i)
        for (const auto& [j, v] : input.entries[i]) {
            rows[i].emplace_back(j, T(v));
            col_rows[j].push_back(i);
        }
    std::vector<char> row_alive(input.rows, 1);
    auto entry = [&](std::size_t r, std::size_t c) -> const T* {
        auto it = std::lower_bound(rows[r].begin(), rows[r].end(), c,
                                   [](const auto& e, std::size_t key) { return e.first < key; });
        return it != rows[r].end() && it->first == c ? &it->second : nullptr;
    };
    auto live_rows_of = [&](std::size_t c) -> std::vector<std::size_t>& {
        auto& rs = col_rows[c];
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        rs.erase(std::remove_if(rs.begin(), rs.end(), [&](std::size_t r) { return !row_alive[r] || !entry(r, c); }),
                 rs.end());
        return rs;
    };
    InvariantFactors out;
    // shortest rows first, each pivoting on its unit entry with the sparsest column; stale queue entries are re-queued
    using Cand = std::pair<std::size_t, std::size_t>;  // row length, row
    std::priority_queue<Cand, std::vector<Cand>, std::greater<>> queue;
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (!rows[r].empty())
            queue.emplace(rows[r].size(), r);
    Row merged;
    while (!queue.empty()) {
        auto [len, r] = queue.top();
        queue.pop();
        if (!row_alive[r] || rows[r].empty())
            continue;
        if (rows[r].size() != len) {
            queue.emplace(rows[r].size(), r);
            continue;
        }
        std::size_t pc = input.cols;
        for (const auto& [j, v] : rows[r])
            if ((v == 1 || v == -1) && (pc == input.cols || col_rows[j].size() < col_rows[pc].size()))
                pc = j;
        if (pc == input.cols)
            continue;  // revisited if a later pivot changes this row
        const T pv = *entry(r, pc);
        const Row& pivot = rows[r];
        std::vector<std::size_t> others = live_rows_of(pc);
        for (std::size_t o : others) {
            if (o == r)
                continue;
            T q = mul(*entry(o, pc), pv);  // pv = ±1, so this is a / pv
            const Row& target = rows[o];
            merged.clear();
            std::size_t a = 0, b = 0;
            while (a < target.size() || b < pivot.size()) {
                if (b == pivot.size() || (a < target.size() && target[a].first < pivot[b].first)) {
                    merged.push_back(target[a++]);
                } else if (a == target.size() || pivot[b].first < target[a].first) {
                    merged.emplace_back(pivot[b].first, neg(mul(q, pivot[b].second)));
                    col_rows[pivot[b].first].push_back(o);
                    ++b;
                } else {
                    T nv = sub(target[a].second, mul(q, pivot[b].second));
                    if (nv != 0)
                        merged.emplace_back(target[a].first, nv);
                    ++a;
                    ++b;
                }
            }
            std::swap(rows[o], merged);
            queue.emplace(rows[o].size(), o);
        }
        rows[r].clear();
        row_alive[r] = 0;
        ++out.rank;
    }
    // dense remainder
    std::vector<std::size_t> live_rows, live_cols;
    std::vector<std::size_t> col_pos(input.cols, input.cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (row_alive[r] && !rows[r].empty()) {
            live_rows.push_back(r);
            for (const auto& [j, v] : rows[r])
                col_pos[j] = 0;
        }
    for (std::size_t j = 0; j < input.cols; ++j)
        if (col_pos[j] == 0) {
            col_pos[j] = live_cols.size();
            live_cols.push_back(j);
        }
    Matrix<T> rest(live_rows.size(), live_cols.size());
    for (std::size_t i = 0; i < live_rows.size(); ++i)
        for (const auto& [j, v] : rows[live_rows[i]])
            rest(i, col_pos[j]) = v;
    auto w = smith_work(rest, false);
    for (const auto& d : diagonal_of(w.d)) {
        ++out.rank;
        if (d != 1)
            out.torsion.push_back(d);
    }
    return out;
}

}  // namespace detail

inline InvariantFactors invariant_factors(const SparseMatrix& m)
{
    try {
        return detail::invariant_factors_impl<std::int64_t>(m);
    } catch (const detail::Overflow&) {
        return detail::invariant_factors_impl<BigInt>(m);
    }
}

}  // namespace nervekit
