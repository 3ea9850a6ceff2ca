#include "l2approx/finitize.hpp"

#include "l2approx/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

namespace l2approx {

std::string to_string(Scheme s) { return s == Scheme::Quotient ? "quotient" : "folner"; }

FiniteModel::FiniteModel(SparseMatrix matrix, int block_rows, int block_cols, std::int64_t normalization,
                         Provenance provenance)
    : matrix_(std::move(matrix)),
      block_rows_(block_rows),
      block_cols_(block_cols),
      n_(normalization),
      provenance_(std::move(provenance)) {
    if (n_ < 1) throw Error("model normalization must be positive");
    if (matrix_.rows != block_rows_ * n_ || matrix_.cols != block_cols_ * n_) {
        throw Error("model dimensions do not match blocks times normalization");
    }
}

namespace {

void check_side(std::int64_t rows, std::int64_t cols, std::int64_t max_side) {
    if (std::max(rows, cols) > max_side) {
        throw Error("finite model of size " + std::to_string(rows) + "x" + std::to_string(cols) +
                    " exceeds the limit " + std::to_string(max_side) +
                    "; use a smaller level or fewer blocks");
    }
}

// Accumulate into map-based rows, then freeze to sorted sparse rows.
struct RowBuilder {
    std::vector<std::map<int, Coefficient>> rows;
    explicit RowBuilder(std::size_t n) : rows(n) {}
    void add(int r, int c, const Coefficient& v) {
        auto& row = rows[static_cast<std::size_t>(r)];
        auto [it, inserted] = row.try_emplace(c, v);
        if (!inserted) it->second = it->second + v;
    }
    std::vector<SparseRow> freeze() {
        std::vector<SparseRow> out(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (auto& [c, v] : rows[i]) {
                if (!v.is_zero()) out[i].emplace_back(c, std::move(v));
            }
        }
        return out;
    }
};

}  // namespace

FiniteModel quotient_model(const GroupRingMatrix& b, const QuotientMap& q, int level, std::int64_t max_side) {
    if (q.source() != b.group()) throw Error("quotient map source differs from the matrix group");
    const auto n = static_cast<std::int64_t>(q.image_size());
    check_side(b.rows() * n, b.cols() * n, max_side);
    const auto& basis = q.basis();
    const GroupSpec& target = q.target();
    RowBuilder builder(static_cast<std::size_t>(b.rows() * n));
    for (int r = 0; r < b.rows(); ++r) {
        for (int c = 0; c < b.cols(); ++c) {
            for (const auto& [g, lambda] : b.at(r, c).terms()) {
                const GroupElement h = q.apply(g);
                for (std::int64_t y = 0; y < n; ++y) {
                    const std::int64_t x = q.position(target.multiply(h, basis[static_cast<std::size_t>(y)]));
                    if (x < 0) throw Error("quotient image is not closed under multiplication");
                    builder.add(static_cast<int>(r * n + x), static_cast<int>(c * n + y), lambda);
                }
            }
        }
    }
    SparseMatrix m(static_cast<int>(b.rows() * n), static_cast<int>(b.cols() * n), b.scalars());
    m.data = builder.freeze();
    return FiniteModel(std::move(m), b.rows(), b.cols(), n, Provenance{Scheme::Quotient, level, b.hash()});
}

FiniteModel folner_model(const GroupRingMatrix& b, const FolnerLevel& x, std::int64_t max_side) {
    if (!b.group().is_amenable_model()) throw Error("no Følner exhaustion: free groups are not amenable");
    if (x.group() != b.group()) throw Error("Følner level belongs to a different group");
    const auto n = static_cast<std::int64_t>(x.size());
    check_side(b.rows() * n, b.cols() * n, max_side);
    const GroupSpec& g = b.group();
    RowBuilder builder(static_cast<std::size_t>(b.rows() * n));
    for (int r = 0; r < b.rows(); ++r) {
        for (int c = 0; c < b.cols(); ++c) {
            for (const auto& [h, lambda] : b.at(r, c).terms()) {
                for (std::int64_t y = 0; y < n; ++y) {
                    const std::int64_t pos = x.position(g.multiply(h, x.elements()[static_cast<std::size_t>(y)]));
                    if (pos >= 0) builder.add(static_cast<int>(r * n + pos), static_cast<int>(c * n + y), lambda);
                }
            }
        }
    }
    SparseMatrix m(static_cast<int>(b.rows() * n), static_cast<int>(b.cols() * n), b.scalars());
    m.data = builder.freeze();
    return FiniteModel(std::move(m), b.rows(), b.cols(), n, Provenance{Scheme::Folner, x.level(), b.hash()});
}

Rational amenable_error_term(const GroupRingMatrix& b, const FolnerLevel& x) {
    if (!b.group().is_amenable_model()) throw Error("no Følner exhaustion: free groups are not amenable");
    const int r = b.support_radius();
    const auto nbhd = boundary_neighborhood(x, r);
    return ratio(Integer(static_cast<long>(b.cols()) * static_cast<long>(nbhd.size())), Integer(static_cast<long>(x.size())));
}

FiniteModel FiniteModel::adjoint() const {
    RowBuilder builder(static_cast<std::size_t>(matrix_.cols));
    for (int r = 0; r < matrix_.rows; ++r) {
        for (const auto& [c, v] : matrix_.data[static_cast<std::size_t>(r)]) builder.add(c, r, v.conj());
    }
    SparseMatrix m(matrix_.cols, matrix_.rows, matrix_.scalars);
    m.data = builder.freeze();
    return FiniteModel(std::move(m), block_cols_, block_rows_, n_, provenance_);
}

FiniteModel FiniteModel::product(const FiniteModel& a, const FiniteModel& b) {
    if (a.n_ != b.n_ || a.cols() != b.rows()) throw Error("model product: shape mismatch");
    if (a.matrix_.scalars != b.matrix_.scalars) throw Error("model product: coefficient domains differ");
    RowBuilder builder(static_cast<std::size_t>(a.rows()));
    for (int r = 0; r < a.rows(); ++r) {
        for (const auto& [k, x] : a.matrix_.data[static_cast<std::size_t>(r)]) {
            for (const auto& [c, y] : b.matrix_.data[static_cast<std::size_t>(k)]) builder.add(r, c, x * y);
        }
    }
    SparseMatrix m(a.rows(), b.cols(), a.matrix_.scalars);
    m.data = builder.freeze();
    return FiniteModel(std::move(m), a.block_rows_, b.block_cols_, a.n_, a.provenance_);
}

Coefficient FiniteModel::entry(int r, int c) const {
    const auto& row = matrix_.data.at(static_cast<std::size_t>(r));
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return matrix_.scalars.zero();
}

Coefficient FiniteModel::trace() const {
    if (rows() != cols()) throw Error("trace of a non-square model");
    Coefficient acc = matrix_.scalars.zero();
    for (int i = 0; i < rows(); ++i) acc = acc + entry(i, i);
    return acc;
}

KappaReport FiniteModel::kappa() const {
    KappaReport rep;
    std::vector<std::int64_t> col_counts(static_cast<std::size_t>(cols()), 0);
    double inf = 0.0;
    double log_inf = -INFINITY;
    for (const auto& row : matrix_.data) {
        rep.S = std::max(rep.S, static_cast<std::int64_t>(row.size()));
        for (const auto& [c, v] : row) {
            ++col_counts[static_cast<std::size_t>(c)];
            inf = std::max(inf, v.abs_upper());
            log_inf = std::max(log_inf, v.log_abs_upper());
        }
    }
    for (auto s : col_counts) rep.Sstar = std::max(rep.Sstar, s);
    rep.inf = inf;
    rep.log_inf = log_inf;
    const double ss = static_cast<double>(rep.S) * static_cast<double>(rep.Sstar);
    rep.kappa = round_up_product(ss, inf);
    rep.log_kappa = ss > 0.0 ? 0.5 * std::log(ss) + log_inf : -INFINITY;
    return rep;
}

bool FiniteModel::is_hermitian(double tol) const {
    if (rows() != cols()) return false;
    const FiniteModel adj = adjoint();
    if (exact()) return adj.matrix_.data == matrix_.data;
    double scale = 0.0;
    for (const auto& row : matrix_.data)
        for (const auto& [c, v] : row) scale = std::max(scale, std::abs(v.complex()));
    for (int r = 0; r < rows(); ++r) {
        for (const auto& [c, v] : matrix_.data[static_cast<std::size_t>(r)]) {
            if (std::abs(v.complex() - adj.entry(r, c).complex()) > tol * scale) return false;
        }
        for (const auto& [c, v] : adj.matrix_.data[static_cast<std::size_t>(r)]) {
            if (std::abs(v.complex() - entry(r, c).complex()) > tol * scale) return false;
        }
    }
    return true;
}

std::vector<Complex> FiniteModel::dense_complex() const {
    std::vector<Complex> out(static_cast<std::size_t>(rows()) * static_cast<std::size_t>(cols()));
    for (int r = 0; r < rows(); ++r) {
        for (const auto& [c, v] : matrix_.data[static_cast<std::size_t>(r)]) {
            out[static_cast<std::size_t>(r) * cols() + c] = v.to_complex();
        }
    }
    return out;
}

bool FiniteModel::embeds_real() const {
    switch (matrix_.scalars.tag()) {
        case CoeffTag::Rational: return true;
        case CoeffTag::Algebraic:
            if (matrix_.scalars.field()->is_real_embedding(matrix_.scalars.field()->distinguished())) return true;
            break;
        case CoeffTag::Complex: break;
    }
    for (const auto& row : matrix_.data)
        for (const auto& [c, v] : row)
            if (v.to_complex().imag() != 0.0) return false;
    return true;
}

std::vector<double> FiniteModel::dense_real() const {
    std::vector<double> out(static_cast<std::size_t>(rows()) * static_cast<std::size_t>(cols()));
    for (int r = 0; r < rows(); ++r) {
        for (const auto& [c, v] : matrix_.data[static_cast<std::size_t>(r)]) {
            out[static_cast<std::size_t>(r) * cols() + c] = v.to_complex().real();
        }
    }
    return out;
}

void FiniteModel::write_csv(std::ostream& os) const {
    os << "row,col,re,im\n";
    os.precision(17);
    for (int r = 0; r < rows(); ++r) {
        for (const auto& [c, v] : matrix_.data[static_cast<std::size_t>(r)]) {
            const Complex z = v.to_complex();
            os << r << ',' << c << ',' << z.real() << ',' << z.imag() << '\n';
        }
    }
}

bool operator==(const FiniteModel& a, const FiniteModel& b) {
    return a.n_ == b.n_ && a.block_rows_ == b.block_rows_ && a.block_cols_ == b.block_cols_ &&
           a.matrix_.scalars == b.matrix_.scalars && a.matrix_.data == b.matrix_.data;
}

}  // namespace l2approx
