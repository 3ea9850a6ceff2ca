#pragma once

#include "l2approx/coefficients.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace l2approx {

/// Row: (column, value) pairs sorted by column, no stored zeros.
using SparseRow = std::vector<std::pair<int, Coefficient>>;

/// Matrix with exact (or float) coefficients stored by rows.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    Scalars scalars = Scalars::rational();
    std::vector<SparseRow> data;

    SparseMatrix() = default;
    SparseMatrix(int r, int c, Scalars s) : rows(r), cols(c), scalars(std::move(s)), data(static_cast<std::size_t>(r)) {}

    std::size_t nonzeros() const;
};

struct RankResult {
    std::int64_t rank = 0;
    /// True when a single modular elimination already certified the rank.
    bool modular = false;
};

/// Exact rank over Q or the number field. Throws for float coefficients.
RankResult exact_rank(const SparseMatrix& m);

/// Rank modulo a 62-bit prime with unit pivots: a certified lower bound of the true rank,
/// or -1 when some pivot is not a unit (or a denominator vanishes mod p).
std::int64_t modular_rank_lower_bound(const SparseMatrix& m);

/// A basis of {x : m x = 0}; free columns in increasing order, each basis vector has a 1
/// at its free column and 0 at the other free columns.
std::vector<std::vector<Coefficient>> nullspace(const SparseMatrix& m);

}  // namespace l2approx
