#pragma once

#include "l2approx/groupring.hpp"
#include "l2approx/linalg.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace l2approx {

enum class Scheme { Quotient, Folner };

std::string to_string(Scheme s);

struct Provenance {
    Scheme scheme = Scheme::Quotient;
    /// Chain index (quotients) or box level k (Følner).
    int level = 0;
    std::string source_hash;
};

/// Largest matrix side accepted by the model builders (dense eigensolves are cubic).
constexpr std::int64_t kMaxModelSide = 6000;

/// The finite matrix B[i]: block (r, c) is N x N, row index = r*N + basis position.
class FiniteModel {
public:
    FiniteModel(SparseMatrix matrix, int block_rows, int block_cols, std::int64_t normalization, Provenance provenance);

    const SparseMatrix& matrix() const { return matrix_; }
    int block_rows() const { return block_rows_; }
    int block_cols() const { return block_cols_; }
    /// N = |Q| or |X_k|.
    std::int64_t normalization() const { return n_; }
    const Provenance& provenance() const { return provenance_; }
    bool exact() const { return matrix_.scalars.exact(); }
    int rows() const { return matrix_.rows; }
    int cols() const { return matrix_.cols; }

    FiniteModel adjoint() const;
    /// Plain matrix product (same N, compatible blocks).
    static FiniteModel product(const FiniteModel& a, const FiniteModel& b);
    /// M* M
    FiniteModel gram() const { return product(adjoint(), *this); }

    Coefficient trace() const;
    Coefficient entry(int r, int c) const;
    /// Entrywise kappa: max row / column nonzero counts and max |entry|.
    KappaReport kappa() const;
    /// Exact comparison with the conjugate transpose (float tags: within tol * max|entry|).
    bool is_hermitian(double tol = 1e-12) const;

    /// Row-major complex matrix under the distinguished embedding.
    std::vector<Complex> dense_complex() const;
    /// True when every embedded entry is real (rational tag, or real embedded values).
    bool embeds_real() const;
    std::vector<double> dense_real() const;

    /// "row,col,re,im" lines, with header.
    void write_csv(std::ostream& os) const;

    friend bool operator==(const FiniteModel& a, const FiniteModel& b);

private:
    SparseMatrix matrix_;
    int block_rows_;
    int block_cols_;
    std::int64_t n_;
    Provenance provenance_;
};

/// Regular representation of B over the image subgroup Q of q.
FiniteModel quotient_model(const GroupRingMatrix& b, const QuotientMap& q, int level = 0,
                           std::int64_t max_side = kMaxModelSide);

/// Compression of B to X: A_{x,y} = coefficient of x y^-1.
FiniteModel folner_model(const GroupRingMatrix& b, const FolnerLevel& x, std::int64_t max_side = kMaxModelSide);

/// d |N_r(X)| / |X| with r the support radius of B and d its column count.
Rational amenable_error_term(const GroupRingMatrix& b, const FolnerLevel& x);

}  // namespace l2approx
