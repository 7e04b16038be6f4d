#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tsr {

/// Dense row-major integer matrix. Entries are checked for overflow in the
/// arithmetic helpers below.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<long long> data;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows, int cols = -1);

    long long& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    long long operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    bool is_zero() const;
    IntMatrix transposed() const;
    std::vector<std::vector<long long>> to_rows() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a);

/// Determinant by fraction-free (Bareiss) elimination.
long long determinant(const IntMatrix& m);

/// Inverse of a matrix with determinant +-1. Throws InvariantError otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
struct SmithNormalForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;

    int rank() const;
    /// Nonzero diagonal entries in divisibility order.
    std::vector<long long> invariant_factors() const;
};

SmithNormalForm smith_normal_form(const IntMatrix& m);

/// Rank over F_p of a dense matrix of residues (entries taken mod p).
int rank_mod_p(std::vector<std::vector<long long>> rows, int p);

}  // namespace tsr
