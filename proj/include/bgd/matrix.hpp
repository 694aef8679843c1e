#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "bgd/field.hpp"

namespace bgd {

// Dense exact matrices. A LinMap f : K^n -> K^m is an m x n matrix acting on
// column vectors; composition g o f is g * f. Row-major storage.

template <class F>
class Mat {
public:
    using Elem = typename F::Elem;

    Mat() : rows_(0), cols_(0) {}
    Mat(const F& f, int rows, int cols)
        : field_(f), rows_(rows), cols_(cols),
          a_(static_cast<std::size_t>(rows) * cols, f.zero()) {
        assert(rows >= 0 && cols >= 0);
    }

    static Mat identity(const F& f, int n) {
        Mat m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    static Mat zero(const F& f, int rows, int cols) { return Mat(f, rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const F& field() const { return field_; }

    Elem& at(int r, int c) {
        assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
        return a_[static_cast<std::size_t>(r) * cols_ + c];
    }
    const Elem& at(int r, int c) const {
        assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
        return a_[static_cast<std::size_t>(r) * cols_ + c];
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Mat operator*(const Mat& o) const {
        assert(cols_ == o.rows_);
        Mat r(field_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Elem& x = at(i, k);
                if (F::is_zero(x)) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const Elem& y = o.at(k, j);
                    if (F::is_zero(y)) continue;
                    r.at(i, j) += x * y;
                }
            }
        return r;
    }

    Mat operator+(const Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }

    Mat operator-(const Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }

    Mat operator-() const {
        Mat r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }

    Mat scaled(const Elem& c) const {
        Mat r = *this;
        for (auto& x : r.a_) x *= c;
        return r;
    }

    Mat transposed() const {
        Mat r(field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const Elem& x) { return F::is_zero(x); });
    }

    // Column c as an rows x 1 matrix.
    Mat col(int c) const {
        Mat r(field_, rows_, 1);
        for (int i = 0; i < rows_; ++i) r.at(i, 0) = at(i, c);
        return r;
    }

    // First entry where two same-shaped matrices differ, scanning by column
    // so the witness is the first basis vector of the domain on which the
    // maps disagree.
    static std::optional<std::pair<int, int>> first_difference(const Mat& a, const Mat& b) {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        for (int j = 0; j < a.cols_; ++j)
            for (int i = 0; i < a.rows_; ++i)
                if (!(a.at(i, j) == b.at(i, j))) return std::make_pair(i, j);
        return std::nullopt;
    }

private:
    F field_;
    int rows_, cols_;
    std::vector<Elem> a_;
};

// Kronecker product on the basis ordering e_i (x) e_j <-> index i*n + j.
template <class F>
Mat<F> kron(const Mat<F>& a, const Mat<F>& b) {
    Mat<F> r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const auto& x = a.at(i, j);
            if (F::is_zero(x)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l) {
                    const auto& y = b.at(k, l);
                    if (F::is_zero(y)) continue;
                    r.at(i * b.rows() + k, j * b.cols() + l) = x * y;
                }
        }
    return r;
}

template <class F>
Mat<F> kron(const Mat<F>& a, const Mat<F>& b, const Mat<F>& c) {
    return kron(kron(a, b), c);
}

// The symmetry K^m (x) K^n -> K^n (x) K^m, e_i (x) e_j -> e_j (x) e_i.
template <class F>
Mat<F> swap_map(const F& f, int m, int n) {
    Mat<F> r(f, m * n, m * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) r.at(j * m + i, i * n + j) = f.one();
    return r;
}

// Permutation of tensor factors: dims are the factor dimensions in source
// order; perm[k] is the source slot placed at target slot k.
template <class F>
Mat<F> tensor_perm(const F& f, const std::vector<int>& dims, const std::vector<int>& perm) {
    assert(dims.size() == perm.size());
    int n = 1;
    for (int d : dims) n *= d;
    std::vector<int> tdims(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) tdims[k] = dims[perm[k]];
    Mat<F> r(f, n, n);
    std::vector<int> idx(dims.size(), 0);
    for (int src = 0; src < n; ++src) {
        int t = src;
        for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
            idx[k] = t % dims[k];
            t /= dims[k];
        }
        int dst = 0;
        for (std::size_t k = 0; k < perm.size(); ++k) dst = dst * tdims[k] + idx[perm[k]];
        r.at(dst, src) = f.one();
    }
    return r;
}

// ---------------------------------------------------------------------------
// Sparse matrices, used for large structured maps (projections of iterated
// quotients, relation sets). Rows are sorted (col, value) lists.

template <class F>
class SpMat {
public:
    using Elem = typename F::Elem;
    using Row = std::vector<std::pair<int, Elem>>;

    SpMat() : rows_(0), cols_(0) {}
    SpMat(const F& f, int rows, int cols) : field_(f), rows_(rows), cols_(cols), r_(rows) {}

    static SpMat identity(const F& f, int n) {
        SpMat m(f, n, n);
        for (int i = 0; i < n; ++i) m.r_[i].push_back({i, f.one()});
        return m;
    }

    static SpMat from_dense(const Mat<F>& d) {
        SpMat m(d.field(), d.rows(), d.cols());
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < d.cols(); ++j)
                if (!F::is_zero(d.at(i, j))) m.r_[i].push_back({j, d.at(i, j)});
        return m;
    }

    Mat<F> to_dense() const {
        Mat<F> d(field_, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (const auto& [c, v] : r_[i]) d.at(i, c) = v;
        return d;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const F& field() const { return field_; }
    Row& row(int i) { return r_[i]; }
    const Row& row(int i) const { return r_[i]; }

    void set(int i, int j, const Elem& v) {
        auto& row = r_[i];
        auto it = std::lower_bound(row.begin(), row.end(), j,
                                   [](const auto& p, int c) { return p.first < c; });
        if (it != row.end() && it->first == j)
            it->second = v;
        else
            row.insert(it, {j, v});
    }

    SpMat operator*(const SpMat& o) const {
        assert(cols_ == o.rows_);
        SpMat res(field_, rows_, o.cols_);
        std::vector<Elem> acc(o.cols_, field_.zero());
        std::vector<int> touched;
        std::vector<bool> seen(o.cols_, false);
        for (int i = 0; i < rows_; ++i) {
            touched.clear();
            for (const auto& [k, x] : r_[i])
                for (const auto& [j, y] : o.r_[k]) {
                    if (!seen[j]) {
                        seen[j] = true;
                        touched.push_back(j);
                        acc[j] = x * y;
                    } else {
                        acc[j] += x * y;
                    }
                }
            std::sort(touched.begin(), touched.end());
            for (int j : touched) {
                if (!F::is_zero(acc[j])) res.r_[i].push_back({j, acc[j]});
                seen[j] = false;
            }
        }
        return res;
    }

    friend bool operator==(const SpMat& a, const SpMat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        return a.r_ == b.r_;
    }

    Mat<F> operator*(const Mat<F>& d) const {
        assert(cols_ == d.rows());
        Mat<F> res(field_, rows_, d.cols());
        for (int i = 0; i < rows_; ++i)
            for (const auto& [k, x] : r_[i])
                for (int j = 0; j < d.cols(); ++j) {
                    const auto& y = d.at(k, j);
                    if (!F::is_zero(y)) res.at(i, j) += x * y;
                }
        return res;
    }

    friend Mat<F> operator*(const Mat<F>& d, const SpMat& s) {
        assert(d.cols() == s.rows_);
        Mat<F> res(d.field(), d.rows(), s.cols_);
        for (int k = 0; k < s.rows_; ++k)
            for (const auto& [j, y] : s.r_[k])
                for (int i = 0; i < d.rows(); ++i) {
                    const auto& x = d.at(i, k);
                    if (!F::is_zero(x)) res.at(i, j) += x * y;
                }
        return res;
    }

private:
    F field_;
    int rows_, cols_;
    std::vector<Row> r_;
};

template <class F>
SpMat<F> kron(const SpMat<F>& a, const SpMat<F>& b) {
    SpMat<F> r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < b.rows(); ++k) {
            auto& out = r.row(i * b.rows() + k);
            for (const auto& [j, x] : a.row(i))
                for (const auto& [l, y] : b.row(k)) out.push_back({j * b.cols() + l, x * y});
        }
    return r;
}

// ---------------------------------------------------------------------------
// Row reduction. Pivoting is deterministic (first nonzero column, topmost
// row); the reduced form is the canonical RREF, so every derived basis is
// reproducible.

template <class F>
struct Rref {
    Mat<F> r;                 // reduced rows (rank x cols)
    std::vector<int> pivots;  // pivot column per row
    int rank = 0;
};

template <class F>
Rref<F> rref(const Mat<F>& m) {
    const F& f = m.field();
    Mat<F> a = m;
    std::vector<int> pivots;
    int pr = 0;
    for (int c = 0; c < a.cols() && pr < a.rows(); ++c) {
        int sel = -1;
        for (int r = pr; r < a.rows(); ++r)
            if (!F::is_zero(a.at(r, c))) { sel = r; break; }
        if (sel < 0) continue;
        if (sel != pr)
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(pr, j));
        const typename F::Elem inv = f.one() / a.at(pr, c);
        for (int j = c; j < a.cols(); ++j) a.at(pr, j) *= inv;
        for (int r = 0; r < a.rows(); ++r) {
            if (r == pr) continue;
            const typename F::Elem coef = a.at(r, c);
            if (F::is_zero(coef)) continue;
            for (int j = c; j < a.cols(); ++j) a.at(r, j) -= coef * a.at(pr, j);
        }
        pivots.push_back(c);
        ++pr;
    }
    Rref<F> out{Mat<F>(f, pr, a.cols()), pivots, pr};
    for (int i = 0; i < pr; ++i)
        for (int j = 0; j < a.cols(); ++j) out.r.at(i, j) = a.at(i, j);
    return out;
}

template <class F>
int rank(const Mat<F>& m) {
    return rref(m).rank;
}

// Sparse RREF of the row space. Returns reduced pivot rows sorted by pivot
// column; the result is the canonical RREF of the span of the input rows.
template <class F>
struct SparseRref {
    std::vector<typename SpMat<F>::Row> rows;  // one per pivot, sorted by pivot col
    std::vector<int> pivots;
};

template <class F>
SparseRref<F> sparse_rref(const SpMat<F>& m) {
    using Row = typename SpMat<F>::Row;
    const F& f = m.field();
    std::map<int, Row> piv;  // pivot col -> normalized row

    auto axpy = [&](Row& dst, const typename F::Elem& c, const Row& src) {
        // dst -= c * src
        Row out;
        out.reserve(dst.size() + src.size());
        std::size_t i = 0, j = 0;
        while (i < dst.size() || j < src.size()) {
            if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
                out.push_back(dst[i++]);
            } else if (i == dst.size() || src[j].first < dst[i].first) {
                typename F::Elem v = -(c * src[j].second);
                out.push_back({src[j].first, std::move(v)});
                ++j;
            } else {
                typename F::Elem v = dst[i].second - c * src[j].second;
                if (!F::is_zero(v)) out.push_back({dst[i].first, std::move(v)});
                ++i;
                ++j;
            }
        }
        dst = std::move(out);
    };

    for (int i = 0; i < m.rows(); ++i) {
        Row row = m.row(i);
        while (!row.empty()) {
            auto it = piv.find(row.front().first);
            if (it == piv.end()) break;
            axpy(row, row.front().second, it->second);
        }
        if (row.empty()) continue;
        const typename F::Elem inv = f.one() / row.front().second;
        for (auto& [c, v] : row) v *= inv;
        piv.emplace(row.front().first, std::move(row));
    }
    // Back-substitute to full reduction, in decreasing pivot-column order;
    // rows processed earlier are then fully reduced and each step removes one
    // pivot column from the current row.
    for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
        Row& row = it->second;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t k = 1; k < row.size(); ++k) {
                auto pit = piv.find(row[k].first);
                if (pit != piv.end() && pit->first != it->first) {
                    const typename F::Elem coef = row[k].second;
                    axpy(row, coef, pit->second);
                    changed = true;
                    break;
                }
            }
        }
    }
    SparseRref<F> out;
    for (auto& [c, row] : piv) {
        out.pivots.push_back(c);
        out.rows.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Kernel, cokernel, solving.

// Basis of { v : f v = 0 }, as columns. Canonical w.r.t. RREF free columns.
template <class F>
Mat<F> kernel(const Mat<F>& f) {
    auto rr = rref(f);
    const F& fld = f.field();
    std::vector<int> free_cols;
    {
        std::vector<bool> is_piv(f.cols(), false);
        for (int c : rr.pivots) is_piv[c] = true;
        for (int c = 0; c < f.cols(); ++c)
            if (!is_piv[c]) free_cols.push_back(c);
    }
    Mat<F> k(fld, f.cols(), static_cast<int>(free_cols.size()));
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        k.at(free_cols[j], static_cast<int>(j)) = fld.one();
        for (int i = 0; i < rr.rank; ++i)
            k.at(rr.pivots[i], static_cast<int>(j)) = -rr.r.at(i, free_cols[j]);
    }
    return k;
}

// Cokernel of f : K^n -> K^m, i.e. the canonical projection onto
// K^m / im(f) with a section.
template <class F>
struct Cokernel {
    int dim = 0;
    Mat<F> proj;     // m -> dim, full row rank, proj o f = 0
    Mat<F> section;  // dim -> m, proj o section = id
};

template <class F>
Cokernel<F> cokernel_of_columns(const F& fld, int ambient_dim, const SparseRref<F>& rr) {
    std::vector<bool> is_piv(ambient_dim, false);
    for (int c : rr.pivots) is_piv[c] = true;
    std::vector<int> non_piv;
    for (int c = 0; c < ambient_dim; ++c)
        if (!is_piv[c]) non_piv.push_back(c);

    Cokernel<F> out;
    out.dim = static_cast<int>(non_piv.size());
    out.proj = Mat<F>(fld, out.dim, ambient_dim);
    out.section = Mat<F>(fld, ambient_dim, out.dim);
    std::vector<int> class_of(ambient_dim, -1);
    for (int r = 0; r < out.dim; ++r) {
        class_of[non_piv[r]] = r;
        out.proj.at(r, non_piv[r]) = fld.one();
        out.section.at(non_piv[r], r) = fld.one();
    }
    for (std::size_t i = 0; i < rr.rows.size(); ++i) {
        for (const auto& [c, v] : rr.rows[i]) {
            if (c == rr.pivots[i]) continue;
            out.proj.at(class_of[c], rr.pivots[i]) = -v;
        }
    }
    return out;
}

template <class F>
Cokernel<F> cokernel(const Mat<F>& f) {
    // Row space of f^T spans im(f).
    SpMat<F> rows(f.field(), f.cols(), f.rows());
    for (int j = 0; j < f.cols(); ++j)
        for (int i = 0; i < f.rows(); ++i)
            if (!F::is_zero(f.at(i, j))) rows.row(j).push_back({i, f.at(i, j)});
    return cokernel_of_columns(f.field(), f.rows(), sparse_rref(rows));
}

// Cokernel where the image is spanned by the given sparse rows.
template <class F>
Cokernel<F> cokernel_of_span(const SpMat<F>& span_rows) {
    return cokernel_of_columns(span_rows.field(), span_rows.cols(), sparse_rref(span_rows));
}

// Particular solution of f x = b together with the kernel basis.
template <class F>
struct Solution {
    Mat<F> particular;  // domain x rhs-cols
    Mat<F> kernel;      // domain x nullity
};

template <class F>
std::optional<Solution<F>> solve(const Mat<F>& f, const Mat<F>& b) {
    assert(f.rows() == b.rows());
    const F& fld = f.field();
    Mat<F> aug(fld, f.rows(), f.cols() + b.cols());
    for (int i = 0; i < f.rows(); ++i) {
        for (int j = 0; j < f.cols(); ++j) aug.at(i, j) = f.at(i, j);
        for (int j = 0; j < b.cols(); ++j) aug.at(i, f.cols() + j) = b.at(i, j);
    }
    auto rr = rref(aug);
    Solution<F> sol{Mat<F>(fld, f.cols(), b.cols()), kernel(f)};
    for (int i = 0; i < rr.rank; ++i) {
        if (rr.pivots[i] >= f.cols()) return std::nullopt;  // inconsistent row
        for (int j = 0; j < b.cols(); ++j)
            sol.particular.at(rr.pivots[i], j) = rr.r.at(i, f.cols() + j);
    }
    return sol;
}

template <class F>
std::optional<Mat<F>> inverse(const Mat<F>& f) {
    if (f.rows() != f.cols()) return std::nullopt;
    auto s = solve(f, Mat<F>::identity(f.field(), f.rows()));
    if (!s || s->kernel.cols() != 0) return std::nullopt;
    return s->particular;
}

// Column spaces as subspaces: equality test via ranks.
template <class F>
bool same_column_space(const Mat<F>& a, const Mat<F>& b) {
    assert(a.rows() == b.rows());
    Mat<F> joint(a.field(), a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) joint.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) joint.at(i, a.cols() + j) = b.at(i, j);
    }
    int ra = rank(a), rb = rank(b), rj = rank(joint);
    return ra == rb && rb == rj;
}

} // namespace bgd
