#include "l2approx/eigen.hpp"

#include "l2approx/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace l2approx {

namespace {

void tridiagonalize(std::vector<double>& z, int n, std::vector<double>& d, std::vector<double>& e, bool vecs) {
    auto Z = [&](int i, int j) -> double& { return z[static_cast<std::size_t>(i) * n + j]; };
    for (int i = n - 1; i > 0; --i) {
        const int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k < i; ++k) scale += std::abs(Z(i, k));
            if (scale == 0.0) {
                e[i] = Z(i, l);
            } else {
                for (int k = 0; k < i; ++k) {
                    Z(i, k) /= scale;
                    h += Z(i, k) * Z(i, k);
                }
                double f = Z(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                Z(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j < i; ++j) {
                    if (vecs) Z(j, i) = Z(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k < j + 1; ++k) g += Z(j, k) * Z(i, k);
                    for (int k = j + 1; k < i; ++k) g += Z(k, j) * Z(i, k);
                    e[j] = g / h;
                    f += e[j] * Z(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j < i; ++j) {
                    f = Z(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k < j + 1; ++k) Z(j, k) -= (f * e[k] + g * Z(i, k));
                }
            }
        } else {
            e[i] = Z(i, l);
        }
        d[i] = h;
    }
    if (vecs) d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        if (vecs) {
            if (d[i] != 0.0) {
                for (int j = 0; j < i; ++j) {
                    double g = 0.0;
                    for (int k = 0; k < i; ++k) g += Z(i, k) * Z(k, j);
                    for (int k = 0; k < i; ++k) Z(k, j) -= g * Z(k, i);
                }
            }
            d[i] = Z(i, i);
            Z(i, i) = 1.0;
            for (int j = 0; j < i; ++j) Z(j, i) = Z(i, j) = 0.0;
        } else {
            d[i] = Z(i, i);
        }
    }
}

void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z, int n, bool vecs) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw PrecisionError("eigensolver did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    e[i + 1] = (r = std::hypot(f, g));
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    d[i + 1] = g + (p = s * r);
                    g = c * r - b;
                    if (vecs) {
                        for (int k = 0; k < n; ++k) {
                            double& zi = z[static_cast<std::size_t>(k) * n + i];
                            double& zi1 = z[static_cast<std::size_t>(k) * n + i + 1];
                            f = zi1;
                            zi1 = s * zi + c * f;
                            zi = c * zi - s * f;
                        }
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

SymmetricEigen symmetric_eigen(std::vector<double> a, int n, bool want_vectors) {
    if (n < 0 || a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw Error("symmetric_eigen: matrix size mismatch");
    }
    SymmetricEigen out;
    out.n = n;
    if (n == 0) return out;
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n));
    tridiagonalize(a, n, d, e, want_vectors);
    ql_implicit(d, e, a, n, want_vectors);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return d[x] < d[y]; });
    out.values.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) out.values[j] = d[order[j]];
    if (want_vectors) {
        out.vectors.resize(a.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out.vectors[static_cast<std::size_t>(i) * n + j] = a[static_cast<std::size_t>(i) * n + order[j]];
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const std::vector<Complex>& a, int n) {
    if (a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw Error("hermitian_eigenvalues: matrix size mismatch");
    }
    const int m = 2 * n;
    std::vector<double> big(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Complex v = a[static_cast<std::size_t>(i) * n + j];
            big[static_cast<std::size_t>(i) * m + j] = v.real();
            big[static_cast<std::size_t>(i) * m + j + n] = -v.imag();
            big[static_cast<std::size_t>(i + n) * m + j] = v.imag();
            big[static_cast<std::size_t>(i + n) * m + j + n] = v.real();
        }
    }
    auto all = symmetric_eigen(std::move(big), m, false).values;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < m; j += 2) out.push_back(0.5 * (all[j] + all[j + 1]));
    return out;
}

}  // namespace l2approx
