#include "tsr/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "tsr/errors.hpp"

namespace tsr {

namespace {

long long checked_mul(long long a, long long b)
{
    long long r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw InvariantError("integer overflow in matrix arithmetic");
    return r;
}

long long checked_add(long long a, long long b)
{
    long long r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw InvariantError("integer overflow in matrix arithmetic");
    return r;
}

long long mod_p(long long v, int p)
{
    long long r = v % p;
    return r < 0 ? r + p : r;
}

long long inverse_mod_p(long long a, int p)
{
    // p is prime; Fermat.
    long long result = 1, base = mod_p(a, p), e = p - 2;
    while (e > 0) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

// row_dst += factor * row_src
void add_row(IntMatrix& m, int dst, int src, long long factor)
{
    if (factor == 0)
        return;
    for (int c = 0; c < m.cols; ++c)
        m(dst, c) = checked_add(m(dst, c), checked_mul(factor, m(src, c)));
}

void add_col(IntMatrix& m, int dst, int src, long long factor)
{
    if (factor == 0)
        return;
    for (int r = 0; r < m.rows; ++r)
        m(r, dst) = checked_add(m(r, dst), checked_mul(factor, m(r, src)));
}

void swap_rows(IntMatrix& m, int a, int b)
{
    if (a == b)
        return;
    for (int c = 0; c < m.cols; ++c)
        std::swap(m(a, c), m(b, c));
}

void swap_cols(IntMatrix& m, int a, int b)
{
    if (a == b)
        return;
    for (int r = 0; r < m.rows; ++r)
        std::swap(m(r, a), m(r, b));
}

}  // namespace

IntMatrix IntMatrix::identity(int n)
{
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows, int cols)
{
    int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows.front().size()));
    IntMatrix m(static_cast<int>(rows.size()), c);
    for (int r = 0; r < m.rows; ++r) {
        if (static_cast<int>(rows[r].size()) != c)
            throw ValidationError("ragged matrix rows");
        for (int j = 0; j < c; ++j)
            m(r, j) = rows[r][j];
    }
    return m;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(data.begin(), data.end(), [](long long v) { return v == 0; });
}

IntMatrix IntMatrix::transposed() const
{
    IntMatrix t(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

std::vector<std::vector<long long>> IntMatrix::to_rows() const
{
    std::vector<std::vector<long long>> out(rows, std::vector<long long>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            out[r][c] = (*this)(r, c);
    return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols != b.rows)
        throw InvariantError("matrix product dimension mismatch");
    IntMatrix p(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            long long x = a(i, k);
            if (x == 0)
                continue;
            for (int j = 0; j < b.cols; ++j)
                p(i, j) = checked_add(p(i, j), checked_mul(x, b(k, j)));
        }
    return p;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows != b.rows || a.cols != b.cols)
        throw InvariantError("matrix sum dimension mismatch");
    IntMatrix s(a.rows, a.cols);
    for (std::size_t i = 0; i < s.data.size(); ++i)
        s.data[i] = checked_add(a.data[i], b.data[i]);
    return s;
}

IntMatrix operator-(const IntMatrix& a)
{
    IntMatrix n = a;
    for (auto& v : n.data)
        v = -v;
    return n;
}

long long determinant(const IntMatrix& m)
{
    if (m.rows != m.cols)
        throw InvariantError("determinant of non-square matrix");
    int n = m.rows;
    if (n == 0)
        return 1;
    IntMatrix a = m;
    long long sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0)
                return 0;
            swap_rows(a, k, swap);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                __int128 v = static_cast<__int128>(a(i, j)) * a(k, k) - static_cast<__int128>(a(i, k)) * a(k, j);
                v /= prev;
                if (v > INT64_MAX || v < INT64_MIN)
                    throw InvariantError("integer overflow in determinant");
                a(i, j) = static_cast<long long>(v);
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

IntMatrix inverse_unimodular(const IntMatrix& m)
{
    long long det = determinant(m);
    if (det != 1 && det != -1)
        throw InvariantError("matrix is not unimodular");
    // Gauss-Jordan; every pivot can be made +-1 because the matrix is unimodular
    // over Z, but we run the Euclidean reduction to stay integral.
    int n = m.rows;
    IntMatrix a = m;
    IntMatrix inv = IntMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        for (;;) {
            int best = -1;
            for (int r = col; r < n; ++r)
                if (a(r, col) != 0 && (best < 0 || std::llabs(a(r, col)) < std::llabs(a(best, col))))
                    best = r;
            if (best < 0)
                throw InvariantError("singular matrix in unimodular inverse");
            swap_rows(a, col, best);
            swap_rows(inv, col, best);
            bool done = true;
            for (int r = col + 1; r < n; ++r) {
                long long q = a(r, col) / a(col, col);
                add_row(a, r, col, -q);
                add_row(inv, r, col, -q);
                if (a(r, col) != 0)
                    done = false;
            }
            if (done)
                break;
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        if (a(col, col) == -1) {
            for (int c = 0; c < n; ++c) {
                a(col, c) = -a(col, c);
                inv(col, c) = -inv(col, c);
            }
        }
        if (a(col, col) != 1)
            throw InvariantError("matrix is not unimodular");
        for (int r = 0; r < col; ++r) {
            long long f = a(r, col);
            add_row(a, r, col, -f);
            add_row(inv, r, col, -f);
        }
    }
    return inv;
}

int SmithNormalForm::rank() const
{
    int r = 0;
    for (int i = 0; i < std::min(D.rows, D.cols); ++i)
        if (D(i, i) != 0)
            ++r;
    return r;
}

std::vector<long long> SmithNormalForm::invariant_factors() const
{
    std::vector<long long> out;
    for (int i = 0; i < std::min(D.rows, D.cols); ++i)
        if (D(i, i) != 0)
            out.push_back(D(i, i));
    return out;
}

SmithNormalForm smith_normal_form(const IntMatrix& m)
{
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(m.rows);
    IntMatrix v = IntMatrix::identity(m.cols);
    int n = std::min(m.rows, m.cols);

    for (int t = 0; t < n; ++t) {
        // smallest nonzero entry of the trailing block becomes the pivot
        int pr = -1, pc = -1;
        for (int i = t; i < m.rows; ++i)
            for (int j = t; j < m.cols; ++j)
                if (a(i, j) != 0 && (pr < 0 || std::llabs(a(i, j)) < std::llabs(a(pr, pc)))) {
                    pr = i;
                    pc = j;
                }
        if (pr < 0)
            break;
        swap_rows(a, t, pr);
        swap_rows(u, t, pr);
        swap_cols(a, t, pc);
        swap_cols(v, t, pc);

        for (;;) {
            bool clean = true;
            for (int i = t + 1; i < m.rows; ++i) {
                long long q = a(i, t) / a(t, t);
                add_row(a, i, t, -q);
                add_row(u, i, t, -q);
                if (a(i, t) != 0)
                    clean = false;
            }
            for (int j = t + 1; j < m.cols; ++j) {
                long long q = a(t, j) / a(t, t);
                add_col(a, j, t, -q);
                add_col(v, j, t, -q);
                if (a(t, j) != 0)
                    clean = false;
            }
            if (!clean) {
                // move a smaller remainder into the pivot position
                int br = t, bc = t;
                for (int i = t + 1; i < m.rows; ++i)
                    if (a(i, t) != 0 && std::llabs(a(i, t)) < std::llabs(a(br, bc))) {
                        br = i;
                        bc = t;
                    }
                for (int j = t + 1; j < m.cols; ++j)
                    if (a(t, j) != 0 && std::llabs(a(t, j)) < std::llabs(a(br, bc))) {
                        br = t;
                        bc = j;
                    }
                swap_rows(a, t, br);
                swap_rows(u, t, br);
                swap_cols(a, t, bc);
                swap_cols(v, t, bc);
                continue;
            }
            int bad = -1;
            for (int i = t + 1; i < m.rows && bad < 0; ++i)
                for (int j = t + 1; j < m.cols; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0)
                break;
            add_row(a, t, bad, 1);
            add_row(u, t, bad, 1);
        }
        if (a(t, t) < 0) {
            for (int c = 0; c < m.cols; ++c)
                a(t, c) = -a(t, c);
            for (int c = 0; c < m.rows; ++c)
                u(t, c) = -u(t, c);
        }
    }
    SmithNormalForm snf{std::move(u), std::move(a), std::move(v)};
    if (!(snf.U * m * snf.V == snf.D))
        throw InvariantError("Smith normal form verification failed");
    auto f = snf.invariant_factors();
    for (std::size_t i = 1; i < f.size(); ++i)
        if (f[i] % f[i - 1] != 0)
            throw InvariantError("Smith normal form divisibility chain broken");
    return snf;
}

int rank_mod_p(std::vector<std::vector<long long>> rows, int p)
{
    if (rows.empty())
        return 0;
    std::size_t cols = rows.front().size();
    for (auto& r : rows)
        for (auto& v : r)
            v = mod_p(v, p);
    int rank = 0;
    std::size_t nrows = rows.size();
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < nrows; ++c) {
        std::size_t piv = nrows;
        for (std::size_t r = rank; r < nrows; ++r)
            if (rows[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv == nrows)
            continue;
        std::swap(rows[rank], rows[piv]);
        long long inv = inverse_mod_p(rows[rank][c], p);
        for (auto& v : rows[rank])
            v = v * inv % p;
        for (std::size_t r = 0; r < nrows; ++r) {
            if (r == static_cast<std::size_t>(rank) || rows[r][c] == 0)
                continue;
            long long f = rows[r][c];
            for (std::size_t j = c; j < cols; ++j)
                rows[r][j] = mod_p(rows[r][j] - f * rows[rank][j], p);
        }
        ++rank;
    }
    return rank;
}

}  // namespace tsr
