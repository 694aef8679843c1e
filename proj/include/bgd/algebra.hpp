#pragma once

#include <optional>
#include <string>

#include "bgd/matrix.hpp"
#include "bgd/report.hpp"

namespace bgd {

// Finite-dimensional associative unital algebras given by structure
// constants. mul : A (x) A -> A is a dim x dim^2 matrix with column index
// i*dim + j for the basis vector e_i (x) e_j; unit is a column vector.

template <class F>
struct Algebra {
    F field;
    int dim = 0;
    Mat<F> mul;
    Mat<F> unit;

    static Algebra trivial(const F& f) {
        Algebra a{f, 1, Mat<F>(f, 1, 1), Mat<F>(f, 1, 1)};
        a.mul.at(0, 0) = f.one();
        a.unit.at(0, 0) = f.one();
        return a;
    }

    void check_shape() const {
        if (mul.rows() != dim || mul.cols() != dim * dim)
            throw DimensionMismatch("algebra: mul must be dim x dim^2");
        if (unit.rows() != dim || unit.cols() != 1)
            throw DimensionMismatch("algebra: unit must be a dim column");
    }

    friend bool operator==(const Algebra& a, const Algebra& b) {
        return a.dim == b.dim && a.mul == b.mul && a.unit == b.unit;
    }
};

template <class F>
Report validate_algebra(const Algebra<F>& a, const std::string& subject = "algebra") {
    a.check_shape();
    Report rep;
    rep.subject = subject;
    const F& f = a.field;
    auto id = Mat<F>::identity(f, a.dim);
    check_equal(rep, "assoc", a.mul * kron(a.mul, id), a.mul * kron(id, a.mul),
                {a.dim, a.dim, a.dim});
    check_equal(rep, "unitl", a.mul * kron(a.unit, id), id, {a.dim});
    check_equal(rep, "unitr", a.mul * kron(id, a.unit), id, {a.dim});
    return rep;
}

template <class F>
Algebra<F> opposite(const Algebra<F>& a) {
    Algebra<F> o = a;
    o.mul = a.mul * swap_map(a.field, a.dim, a.dim);
    return o;
}

// A (x) B with componentwise multiplication.
template <class F>
Algebra<F> tensor_algebra(const Algebra<F>& a, const Algebra<F>& b) {
    const F& f = a.field;
    Algebra<F> t;
    t.field = f;
    t.dim = a.dim * b.dim;
    auto shuffle = tensor_perm(f, {a.dim, b.dim, a.dim, b.dim}, {0, 2, 1, 3});
    t.mul = kron(a.mul, b.mul) * shuffle;
    t.unit = kron(a.unit, b.unit);
    return t;
}

template <class F>
Algebra<F> enveloping(const Algebra<F>& r) {
    return tensor_algebra(r, opposite(r));
}

template <class F>
struct AlgebraMorphism {
    Algebra<F> source, target;
    Mat<F> map;
};

template <class F>
AlgebraMorphism<F> identity_morphism(const Algebra<F>& a) {
    return {a, a, Mat<F>::identity(a.field, a.dim)};
}

template <class F>
Report check_morphism(const AlgebraMorphism<F>& m, const std::string& subject = "morphism") {
    if (m.map.rows() != m.target.dim || m.map.cols() != m.source.dim)
        throw DimensionMismatch("morphism: map must be target.dim x source.dim");
    Report rep;
    rep.subject = subject;
    check_equal(rep, "mult", m.map * m.source.mul, m.target.mul * kron(m.map, m.map),
                {m.source.dim, m.source.dim});
    check_equal(rep, "unit", m.map * m.source.unit, m.target.unit);
    return rep;
}

// The induced map chi = mul_A o (s (x) t) : R^e -> A, defined when the
// ranges of s and t commute elementwise.
template <class F>
struct ChiResult {
    std::optional<AlgebraMorphism<F>> chi;
    Report report;
};

template <class F>
ChiResult<F> chi_from_st(const AlgebraMorphism<F>& s, const AlgebraMorphism<F>& t) {
    const Algebra<F>& a = s.target;
    const Algebra<F>& r = s.source;
    ChiResult<F> out;
    out.report.subject = "chi";
    auto st = kron(s.map, t.map);
    bool commutes = check_equal(out.report, "range-commute", a.mul * st,
                                a.mul * swap_map(a.field, a.dim, a.dim) * st, {r.dim, r.dim});
    if (!commutes) return out;
    AlgebraMorphism<F> chi{enveloping(r), a, a.mul * st};
    out.report.absorb(check_morphism(chi), "chi");
    out.chi = std::move(chi);
    return out;
}

} // namespace bgd
