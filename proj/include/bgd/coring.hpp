#pragma once

#include <cstdint>
#include <optional>

#include "bgd/entwining.hpp"

namespace bgd {

// Corings over an internal monoid S in the category of R-R-bimodules. With
// R = k (trivial base) this specializes to an ordinary coring over the
// k-algebra underlying S, which is the shape the group-like / Galois
// machinery operates on.

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedField : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An R-R-bimodule with commuting S-actions on both sides.
template <class F>
struct SModule {
    QSpaceP<F> x;
    QMap<F> sl;  // S (x)_R X -> X
    QMap<F> sr;  // X (x)_R S -> X
};

template <class F>
SModule<F> regular_smodule(const InternalMonoid<F>& s) {
    return {s.s, s.mul, s.mul};
}

// Descends a map defined on a common ground presentation; both spaces must
// track grounds.
template <class F>
struct GroundMapResult {
    std::optional<QMap<F>> map;
    std::optional<NotBalanced> error;
};

template <class F>
GroundMapResult<F> qmap_from_ground(const QSpaceP<F>& dom, const QSpaceP<F>& cod,
                                    const Mat<F>& ground_map) {
    if (!dom->has_ground() || !cod->has_ground())
        throw DimensionMismatch("qmap_from_ground: spaces lack grounds");
    if (ground_map.cols() != dom->ground_dim || ground_map.rows() != cod->ground_dim)
        throw DimensionMismatch("qmap_from_ground: shape mismatch");
    SpMat<F> gm = SpMat<F>::from_dense(ground_map);
    SpMat<F> lifted = cod->gproj * gm;
    SpMat<F> m = lifted * dom->gsec;
    if (!(m * dom->gproj == lifted)) {
        Mat<F> md = m.to_dense();
        auto diff = Mat<F>::first_difference(md * dom->gproj.to_dense(), lifted.to_dense());
        return {std::nullopt, NotBalanced{{diff ? diff->second : 0}}};
    }
    return {QMap<F>{dom, cod, m.to_dense()}, std::nullopt};
}

template <class F>
QMap<F> qmap_from_ground_or_throw(const QSpaceP<F>& dom, const QSpaceP<F>& cod,
                                  const Mat<F>& ground_map, const std::string& what) {
    auto r = qmap_from_ground(dom, cod, ground_map);
    if (!r.map) throw DimensionMismatch("ground map does not descend in " + what);
    return *r.map;
}

// X (x)_S Y: the further quotient of X (x)_R Y by the S-balancing relations,
// with the outer S-actions induced from X and Y.
template <class F>
SModule<F> internal_tensor(const InternalMonoid<F>& s, const SModule<F>& xm, const SModule<F>& ym) {
    const F& f = xm.x->field();
    const int dx = xm.x->dim(), dy = ym.x->dim(), ds = s.s->dim();
    auto idx = Mat<F>::identity(f, dx);
    auto idy = Mat<F>::identity(f, dy);
    auto ids = Mat<F>::identity(f, ds);
    auto q1 = qtensor(xm.x, ym.x);
    auto xs = qtensor(xm.x, s.s);
    auto sy = qtensor(s.s, ym.x);
    auto xs_y = qtensor(xs, ym.x);
    // Both legs as maps from the presentation of (X (x) S) (x) Y.
    Mat<F> f1 = qmap_tensor_or_throw(xm.sr, qidentity(ym.x), xs_y, q1, "internal_tensor").m;
    Mat<F> lam_pre = ym.sl.m * sy->proj;  // S.dim * Y.dim -> Y.dim
    Mat<F> f2_pre = q1->proj * kron(idx, lam_pre) * kron(xs->sec, idy);
    Mat<F> f2 = descend_or_throw(xs_y, f2_pre, "internal_tensor");
    Mat<F> d = f1 - f2;
    SpMat<F> rels(f, d.cols(), d.rows());
    for (int j = 0; j < d.cols(); ++j)
        for (int i = 0; i < d.rows(); ++i)
            if (!F::is_zero(d.at(i, j))) rels.row(j).push_back({i, d.at(i, j)});
    auto q = qspace_quotient(q1, rels);

    SModule<F> out;
    out.x = q;
    // q->proj and q->sec run between the pre space X.dim * Y.dim and q.
    {
        auto s_q = qtensor(s.s, q);
        Mat<F> sl_pre = xm.sl.m * qtensor(s.s, xm.x)->proj;  // S.dim * X.dim -> X.dim
        Mat<F> pre = q->proj * kron(sl_pre, idy) * kron(ids, q->sec);
        auto dsc = descend(s_q, pre);
        if (!dsc.ok()) throw DimensionMismatch("internal_tensor: left S-action does not descend");
        out.sl = QMap<F>{s_q, q, dsc.m};
    }
    {
        auto q_s = qtensor(q, s.s);
        Mat<F> sr_pre = ym.sr.m * qtensor(ym.x, s.s)->proj;  // Y.dim * S.dim -> Y.dim
        Mat<F> pre = q->proj * kron(idx, sr_pre) * kron(q->sec, ids);
        auto dsc = descend(q_s, pre);
        if (!dsc.ok()) throw DimensionMismatch("internal_tensor: right S-action does not descend");
        out.sr = QMap<F>{q_s, q, dsc.m};
    }
    return out;
}

template <class F>
struct InternalCoring {
    InternalMonoid<F> s;
    SModule<F> c;
    SModule<F> cc;   // C (x)_S C
    QMap<F> cmul;    // C -> cc
    Mat<F> counit;   // C -> S carrier
};

template <class F>
Report validate_internal_coring(const InternalCoring<F>& ic, bool include_monoid = true) {
    Report rep;
    rep.subject = "coring";
    if (include_monoid) rep.absorb(validate_internal_monoid(ic.s), "base");
    // Identities whose legs fail to descend are recorded as failures: for a
    // broken datum the composite in question simply does not exist.
    auto guarded = [&rep](const std::string& label, auto&& fn) {
        try {
            fn();
        } catch (const DimensionMismatch& e) {
            rep.note(label, false, e.what());
        }
    };
    const F& f = ic.c.x->field();
    const auto& s = ic.s.s;
    const auto& c = ic.c.x;
    auto rl = base_leaf(s);
    auto eta = unit_as_map(rl, s, ic.s.unit);

    // S-module structure of the carrier.
    guarded("smodule", [&] {
        auto s_c = qtensor(s, c);
        auto r_c = qtensor(rl, c);
        auto ul = compose(ic.c.sl, compose(qmap_tensor_or_throw(eta, qidentity(c), r_c, s_c, "lact-unit"),
                                           unit_intro_left(c, r_c)));
        check_equal(rep, "lact-unit", ul.m, Mat<F>::identity(f, c->dim()), {c->dim()});
        auto ss = qtensor(s, s);
        auto ss_c = qtensor(ss, c);
        auto s_sc = qtensor(s, s_c);
        auto lhs = compose(ic.c.sl, qmap_tensor_or_throw(ic.s.mul, qidentity(c), ss_c, s_c, "lact-assoc"));
        auto rhs = compose(ic.c.sl,
                  compose(qmap_tensor_or_throw(qidentity(s), ic.c.sl, s_sc, s_c, "lact-assoc"),
                          reassoc(ss_c, s_sc)));
        check_equal(rep, "lact-assoc", lhs.m, rhs.m, {ss_c->dim()});

        auto c_s = qtensor(c, s);
        auto c_r = qtensor(c, rl);
        auto ur = compose(ic.c.sr, compose(qmap_tensor_or_throw(qidentity(c), eta, c_r, c_s, "ract-unit"),
                                           unit_intro_right(c, c_r)));
        check_equal(rep, "ract-unit", ur.m, Mat<F>::identity(f, c->dim()), {c->dim()});
        auto c_ss = qtensor(c, ss);
        auto cs_s = qtensor(c_s, s);
        auto lhs2 = compose(ic.c.sr,
                   compose(qmap_tensor_or_throw(qidentity(c), ic.s.mul, c_ss, c_s, "ract-assoc"),
                           reassoc(cs_s, c_ss)));
        auto rhs2 = compose(ic.c.sr, qmap_tensor_or_throw(ic.c.sr, qidentity(s), cs_s, c_s, "ract-assoc"));
        check_equal(rep, "ract-assoc", lhs2.m, rhs2.m, {cs_s->dim()});

        auto sc_s = qtensor(s_c, s);
        auto s_cs = qtensor(s, c_s);
        auto lhs3 = compose(ic.c.sr, qmap_tensor_or_throw(ic.c.sl, qidentity(s), sc_s, c_s, "acts-commute"));
        auto rhs3 = compose(ic.c.sl,
                   compose(qmap_tensor_or_throw(qidentity(s), ic.c.sr, s_cs, s_c, "acts-commute"),
                           reassoc(sc_s, s_cs)));
        check_equal(rep, "acts-commute", lhs3.m, rhs3.m, {sc_s->dim()});
    });

    // cmul and counit are S-S-bimodule morphisms.
    guarded("comorphisms", [&] {
        auto s_c = qtensor(s, c);
        auto s_cc = qtensor(s, ic.cc.x);
        auto lhs = compose(ic.cmul, ic.c.sl);
        auto rhs = compose(ic.cc.sl, qmap_tensor_or_throw(qidentity(s), ic.cmul, s_c, s_cc, "cmul-lmorph"));
        check_equal(rep, "cmul-lmorph", lhs.m, rhs.m, {s_c->dim()});
        auto c_s = qtensor(c, s);
        auto cc_s = qtensor(ic.cc.x, s);
        auto lhs2 = compose(ic.cmul, ic.c.sr);
        auto rhs2 = compose(ic.cc.sr, qmap_tensor_or_throw(ic.cmul, qidentity(s), c_s, cc_s, "cmul-rmorph"));
        check_equal(rep, "cmul-rmorph", lhs2.m, rhs2.m, {c_s->dim()});

        QMap<F> eps{c, s, ic.counit};
        auto le = compose(ic.s.mul, qmap_tensor_or_throw(qidentity(s), eps, s_c, qtensor(s, s), "counit-lmorph"));
        check_equal(rep, "counit-lmorph", ic.counit * ic.c.sl.m, le.m, {s_c->dim()});
        auto re = compose(ic.s.mul, qmap_tensor_or_throw(eps, qidentity(s), c_s, qtensor(s, s), "counit-rmorph"));
        check_equal(rep, "counit-rmorph", ic.counit * ic.c.sr.m, re.m, {c_s->dim()});
    });

    // Coassociativity over the double quotients.
    guarded("coassoc", [&] {
        auto ccc_l = internal_tensor(ic.s, ic.cc, ic.c);
        auto ccc_r = internal_tensor(ic.s, ic.c, ic.cc);
        Mat<F> left_pre = ccc_l.x->proj * kron(ic.cmul.m, Mat<F>::identity(f, c->dim()));
        auto dl = descend(ic.cc.x, left_pre);
        if (!dl.ok()) throw DimensionMismatch("coassoc: left leg does not descend");
        Mat<F> lhs = dl.m * ic.cmul.m;
        Mat<F> right_pre = ccc_r.x->proj * kron(Mat<F>::identity(f, c->dim()), ic.cmul.m);
        auto drr = descend(ic.cc.x, right_pre);
        if (!drr.ok()) throw DimensionMismatch("coassoc: right leg does not descend");
        Mat<F> rhs = reassoc(ccc_r.x, ccc_l.x).m * drr.m * ic.cmul.m;
        check_equal(rep, "coassoc", lhs, rhs, {c->dim()});
    });

    // Counit laws through S (x)_S C ~ C and C (x)_S S ~ C.
    guarded("counitl", [&] {
        auto sc = internal_tensor(ic.s, regular_smodule(ic.s), ic.c);
        auto s_c = qtensor(s, c);
        Mat<F> elim = descend_or_throw(sc.x, ic.c.sl.m * s_c->proj, "counitl");
        Mat<F> eps_pre = sc.x->proj * kron(ic.counit, Mat<F>::identity(f, c->dim()));
        auto de = descend(ic.cc.x, eps_pre);
        if (!de.ok()) throw DimensionMismatch("counitl: epsilon leg does not descend");
        check_equal(rep, "counitl", elim * de.m * ic.cmul.m, Mat<F>::identity(f, c->dim()),
                    {c->dim()});
    });
    guarded("counitr", [&] {
        auto cs = internal_tensor(ic.s, ic.c, regular_smodule(ic.s));
        auto c_s = qtensor(c, s);
        Mat<F> elim2 = descend_or_throw(cs.x, ic.c.sr.m * c_s->proj, "counitr");
        Mat<F> eps2_pre = cs.x->proj * kron(Mat<F>::identity(f, c->dim()), ic.counit);
        auto de2 = descend(ic.cc.x, eps2_pre);
        if (!de2.ok()) throw DimensionMismatch("counitr: epsilon leg does not descend");
        check_equal(rep, "counitr", elim2 * de2.m * ic.cmul.m, Mat<F>::identity(f, c->dim()),
                    {c->dim()});
    });
    return rep;
}

// ---------------------------------------------------------------------------
// Constructions.

// The internal Sweedler coring of an algebra extension iota : R -> A.
template <class F>
InternalCoring<F> sweedler_coring(const AlgebraMorphism<F>& iota) {
    const F& f = iota.source.field;
    const Algebra<F>& r = iota.source;
    const Algebra<F>& a = iota.target;
    auto ida = Mat<F>::identity(f, a.dim);
    Bimodule<F> amod{r, r, a.dim, a.mul * kron(iota.map, ida), a.mul * kron(ida, iota.map)};
    auto s = leaf(amod);

    InternalMonoid<F> mon;
    mon.s = s;
    auto ss = qtensor(s, s);
    mon.mul = QMap<F>{ss, s, descend_or_throw(ss, a.mul, "sweedler mul")};
    mon.unit = iota.map;

    InternalCoring<F> ic;
    ic.s = mon;
    auto c = qtensor(s, s);  // A (x)_R A
    SModule<F> cm;
    cm.x = c;
    {
        auto s_c = qtensor(s, c);
        cm.sl = qmap_from_ground_or_throw(s_c, c, kron(a.mul, ida), "sweedler lact");
        auto c_s = qtensor(c, s);
        cm.sr = qmap_from_ground_or_throw(c_s, c, kron(ida, a.mul), "sweedler ract");
    }
    ic.c = cm;
    ic.cc = internal_tensor(mon, cm, cm);
    // a (x) a' -> a (x) 1 (x) 1 (x) a'
    ic.cmul = qmap_from_ground_or_throw(c, ic.cc.x, kron(ida, kron(a.unit, kron(a.unit, ida))),
                                        "sweedler cmul");
    ic.counit = descend_or_throw(c, a.mul, "sweedler counit");
    return ic;
}

// Coring datum of an entwining candidate (S, L, psi); the datum is a coring
// exactly when (S, L, psi) is a left entwining structure.
template <class F>
struct CoringFromEntwining {
    std::optional<InternalCoring<F>> coring;
    Report assembly;            // failures here mean the datum is not defined
    Report coring_report;       // axiom checks when assembled
    Report entwining_report;    // the entwining identities
    bool equivalence_witnessed = false;
};

template <class F>
CoringFromEntwining<F> coring_from_entwining(const Entwining<F>& e) {
    CoringFromEntwining<F> out;
    out.assembly.subject = "coring from entwining";
    const F& f = e.mon.s->field();
    const auto& s = e.mon.s;
    const auto& l = e.com.l;

    auto c = qtensor(l, s);
    SModule<F> cm;
    cm.x = c;
    bool assembled = true;

    // Lambda = (L [] mul) o (psi [] S), with the needed reassociations.
    {
        auto s_c = qtensor(s, c);
        auto sl_s = qtensor(qtensor(s, l), s);
        auto ls_s = qtensor(qtensor(l, s), s);
        auto l_ss = qtensor(l, qtensor(s, s));
        auto psi_s = qmap_tensor(e.psi, qidentity(s), sl_s, ls_s);
        auto lmul = qmap_tensor(qidentity(l), e.mon.mul, l_ss, c);
        if (!psi_s.map || !lmul.map) {
            out.assembly.note("lact", false, "the entwining leg is not balanced");
            assembled = false;
        } else {
            cm.sl = compose(*lmul.map,
                            compose(reassoc(ls_s, l_ss),
                                    compose(*psi_s.map, reassoc(s_c, sl_s))));
        }
    }
    {
        auto c_s = qtensor(c, s);
        auto l_ss = qtensor(l, qtensor(s, s));
        auto lmul = qmap_tensor(qidentity(l), e.mon.mul, l_ss, c);
        if (!lmul.map) {
            out.assembly.note("ract", false, "L [] mul is not balanced");
            assembled = false;
        } else {
            cm.sr = compose(*lmul.map, reassoc(c_s, l_ss));
        }
    }

    out.entwining_report = check_left_entwining(e);
    if (!assembled) {
        out.equivalence_witnessed = !out.entwining_report.pass();
        return out;
    }

    InternalCoring<F> ic;
    ic.s = e.mon;
    ic.c = cm;
    ic.cc = internal_tensor(e.mon, cm, cm);
    {
        // x (x) t -> x_(1) (x) 1_S (x) x_(2) (x) t on the ground of C (x) C.
        auto ll = qtensor(l, l);
        const int lg = static_cast<int>(l->ground_dim);
        Mat<F> gl = ll->gsec.to_dense() * e.com.cmul.m * l->gproj.to_dense();
        Mat<F> unit_s = e.mon.unit * e.mon.s->mod.lbase.unit;  // unit element of S
        Mat<F> ins = kron(Mat<F>::identity(f, lg),
                          kron(unit_s, Mat<F>::identity(f, lg * s->dim())));
        Mat<F> gmap = ins * kron(gl, Mat<F>::identity(f, s->dim()));
        auto dm = qmap_from_ground(c, ic.cc.x, gmap);
        if (!dm.map) {
            out.assembly.note("cmul", false, "coproduct does not descend");
            out.equivalence_witnessed = !out.entwining_report.pass();
            return out;
        }
        ic.cmul = *dm.map;
    }
    {
        // counit = (pi [] S): x (x) t -> pi(x).t
        Mat<F> pre = s->mod.lact * kron(e.com.counit * l->gproj.to_dense(),
                                        Mat<F>::identity(f, s->dim()));
        auto dsc = descend_ground(c, pre);
        if (dsc.error) {
            out.assembly.note("counit", false, "counit does not descend");
            out.equivalence_witnessed = !out.entwining_report.pass();
            return out;
        }
        ic.counit = dsc.m;
    }
    out.coring = ic;
    out.coring_report = validate_internal_coring(ic, false);
    out.equivalence_witnessed = (out.coring_report.pass() == out.entwining_report.pass());
    return out;
}

// ---------------------------------------------------------------------------
// Flattening along the forgetful functor to k-vector spaces.

template <class F>
Algebra<F> underlying_algebra(const InternalMonoid<F>& mon) {
    const F& f = mon.s->field();
    if (mon.s->pre_dim != mon.s->dim())
        throw DimensionMismatch("underlying_algebra: carrier must be presented on itself");
    auto ss = qtensor(mon.s, mon.s);
    return Algebra<F>{f, mon.s->dim(), mon.mul.m * ss->proj, mon.unit * mon.s->mod.lbase.unit};
}

template <class F>
InternalMonoid<F> monoid_in_vect(const Algebra<F>& a) {
    InternalMonoid<F> mon;
    mon.s = leaf(plain_space(a.field, a.dim));
    auto ss = qtensor(mon.s, mon.s);
    mon.mul = QMap<F>{ss, mon.s, a.mul};
    mon.unit = a.unit;
    return mon;
}

// A coring over a k-algebra A given by plain matrices: actions A(x)C -> C,
// C(x)A -> C, a coproduct lift C -> C(x)C (pushed into the quotient by the
// loader) and counit C -> A.
template <class F>
InternalCoring<F> flat_coring(const Algebra<F>& a, int cdim, const Mat<F>& lact,
                              const Mat<F>& ract, const Mat<F>& cmul_lift, const Mat<F>& counit) {
    const F& f = a.field;
    InternalMonoid<F> amon = monoid_in_vect(a);
    InternalCoring<F> ic;
    ic.s = amon;
    SModule<F> cm;
    cm.x = leaf(plain_space(f, cdim));
    cm.sl = QMap<F>{qtensor(amon.s, cm.x), cm.x, lact};
    cm.sr = QMap<F>{qtensor(cm.x, amon.s), cm.x, ract};
    ic.c = cm;
    ic.cc = internal_tensor(amon, cm, cm);
    ic.cmul = QMap<F>{cm.x, ic.cc.x, ic.cc.x->proj * cmul_lift};
    ic.counit = counit;
    return ic;
}

template <class F>
struct FlattenResult {
    InternalCoring<F> flat;
    Mat<F> intertwiner;  // internal cc -> flat cc, iso commuting with projections
    Report report;
};

template <class F>
FlattenResult<F> flatten_coring(const InternalCoring<F>& ic) {
    FlattenResult<F> out;
    out.report.subject = "flatten";
    const F& f = ic.c.x->field();
    Algebra<F> a = underlying_algebra(ic.s);
    out.report.absorb(validate_algebra(a, "underlying"), "algebra");

    InternalMonoid<F> amon = monoid_in_vect(a);
    SModule<F> cm;
    cm.x = leaf(plain_space(f, ic.c.x->dim()));
    {
        auto s_c = qtensor(ic.s.s, ic.c.x);
        auto c_s = qtensor(ic.c.x, ic.s.s);
        cm.sl = QMap<F>{qtensor(amon.s, cm.x), cm.x, ic.c.sl.m * s_c->proj};
        cm.sr = QMap<F>{qtensor(cm.x, amon.s), cm.x, ic.c.sr.m * c_s->proj};
    }
    SModule<F> fcc = internal_tensor(amon, cm, cm);

    // The internal and flat module tensor squares are quotients of the same
    // space C (x) C; they must agree, with the intertwiner commuting with
    // both projections.
    out.report.note("square-dim", ic.cc.x->dim() == fcc.x->dim(),
                    std::to_string(ic.cc.x->dim()) + " vs " + std::to_string(fcc.x->dim()));
    Mat<F> theta = fcc.x->proj * ic.cc.x->sec;
    check_equal(out.report, "square-intertwiner", theta * ic.cc.x->proj, fcc.x->proj,
                {ic.c.x->dim(), ic.c.x->dim()});
    out.report.note("square-iso", rank(theta) == fcc.x->dim());
    out.intertwiner = theta;

    InternalCoring<F> flat;
    flat.s = amon;
    flat.c = cm;
    flat.cc = fcc;
    flat.cmul = QMap<F>{cm.x, fcc.x, theta * ic.cmul.m};
    flat.counit = ic.counit;
    out.report.absorb(validate_internal_coring(flat, false), "flat");
    out.flat = std::move(flat);
    return out;
}

// ---------------------------------------------------------------------------
// Group-likes, comodules, coinvariants and the Galois map, for corings over
// a k-algebra (trivial base R).

template <class F>
Report check_grouplike(const InternalCoring<F>& c, const Mat<F>& g) {
    Report rep;
    rep.subject = "grouplike";
    if (g.rows() != c.c.x->dim() || g.cols() != 1)
        throw DimensionMismatch("grouplike: expected a carrier column vector");
    check_equal(rep, "gcp", c.cmul.m * g, c.cc.x->proj * kron(g, g));
    Algebra<F> a = underlying_algebra(c.s);
    check_equal(rep, "gcu", c.counit * g, a.unit);
    return rep;
}

template <class F>
std::vector<Mat<F>> enumerate_grouplikes(const InternalCoring<F>& c, std::uint64_t budget);

template <>
inline std::vector<Mat<PrimeField>> enumerate_grouplikes(const InternalCoring<PrimeField>& c,
                                                         std::uint64_t budget) {
    const PrimeField& f = c.c.x->field();
    const int d = c.c.x->dim();
    const std::uint64_t p = f.modulus();
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) {
        if (total > budget / p) throw BudgetExceeded("grouplike enumeration over budget");
        total *= p;
    }
    if (total > budget) throw BudgetExceeded("grouplike enumeration over budget");
    std::vector<Mat<PrimeField>> out;
    for (std::uint64_t code = 0; code < total; ++code) {
        Mat<PrimeField> g(f, d, 1);
        std::uint64_t t = code;
        for (int i = 0; i < d; ++i) {
            g.at(i, 0) = f.from_long(static_cast<long>(t % p));
            t /= p;
        }
        if (check_grouplike(c, g).pass()) out.push_back(std::move(g));
    }
    return out;
}

template <>
inline std::vector<Mat<RationalField>> enumerate_grouplikes(const InternalCoring<RationalField>&,
                                                            std::uint64_t) {
    throw UnsupportedField("grouplike enumeration requires a finite field");
}

// The coring carrier as an A-A-bimodule over the underlying algebra.
template <class F>
QSpaceP<F> flat_carrier(const InternalCoring<F>& c) {
    Algebra<F> a = underlying_algebra(c.s);
    auto s_c = qtensor(c.s.s, c.c.x);
    auto c_s = qtensor(c.c.x, c.s.s);
    return leaf(Bimodule<F>{a, a, c.c.x->dim(), c.c.sl.m * s_c->proj, c.c.sr.m * c_s->proj});
}

// Right comodule (M, rho_M) with coaction tau : M -> M (x)_A C.
template <class F>
struct Comodule {
    QSpaceP<F> m;    // right A-module as a bimodule with trivial left base
    QMap<F> tau;     // m -> qtensor(m, carrier)
    QSpaceP<F> mc;   // cached qtensor(m, carrier)
};

template <class F>
Comodule<F> coaction_from_grouplike(const InternalCoring<F>& c, const Mat<F>& g) {
    const F& f = c.c.x->field();
    Algebra<F> a = underlying_algebra(c.s);
    auto ca = flat_carrier(c);
    auto m = leaf(right_module(a, a.dim, a.mul));
    auto mc = qtensor(m, ca);
    // tau_A = P o (g [] A), realized inside M (x)_A C as a |-> 1 (x) g.a
    Mat<F> ga = ca->mod.ract * kron(g, Mat<F>::identity(f, a.dim));
    Comodule<F> out;
    out.m = m;
    out.mc = mc;
    out.tau = QMap<F>{m, mc, mc->proj * kron(a.unit, ga)};
    return out;
}

template <class F>
Report check_comodule(const InternalCoring<F>& c, const Comodule<F>& com) {
    Report rep;
    rep.subject = "comodule";
    const F& f = c.c.x->field();
    Algebra<F> a = underlying_algebra(c.s);
    auto ca = flat_carrier(c);
    const auto& m = com.m;
    const auto& mc = com.mc;
    auto ida = Mat<F>::identity(f, a.dim);

    check_equal(rep, "tau-linear", com.tau.m * m->mod.ract,
                mc->mod.ract * kron(com.tau.m, ida), {m->dim(), a.dim});

    // comcp: (tau (x) C) o tau = (M (x) cmul) o tau
    auto mc_c = qtensor(mc, ca);
    auto dl = descend(mc, mc_c->proj * kron(com.tau.m, Mat<F>::identity(f, ca->dim())));
    if (!dl.ok()) throw DimensionMismatch("comcp: left leg does not descend");
    Mat<F> lhs = dl.m * com.tau.m;

    auto cc_flat = qtensor(ca, ca);
    Mat<F> theta = cc_flat->proj * c.cc.x->sec;
    Mat<F> cmul_flat = theta * c.cmul.m;
    auto m_ccflat = qtensor(m, cc_flat);
    auto drr = descend(mc, m_ccflat->proj * kron(Mat<F>::identity(f, m->dim()), cmul_flat));
    if (!drr.ok()) throw DimensionMismatch("comcp: right leg does not descend");
    Mat<F> rhs = reassoc(m_ccflat, mc_c).m * drr.m * com.tau.m;
    check_equal(rep, "comcp", lhs, rhs, {m->dim()});

    // comcu: (M (x) eps) o tau = id
    auto m_a = qtensor(m, leaf(regular_bimodule(a)));
    auto de = descend(mc, m_a->proj * kron(Mat<F>::identity(f, m->dim()), c.counit));
    if (!de.ok()) throw DimensionMismatch("comcu: eps leg does not descend");
    check_equal(rep, "comcu", unit_elim_right(m_a, m).m * de.m * com.tau.m,
                Mat<F>::identity(f, m->dim()), {m->dim()});
    return rep;
}

template <class F>
Equalizer<F> coinvariants(const InternalCoring<F>& c, const Comodule<F>& com, const Mat<F>& g) {
    const F& f = c.c.x->field();
    Mat<F> other = com.mc->proj * kron(Mat<F>::identity(f, com.m->dim()), g);
    return equalizer_sub(com.tau.m, other);
}

template <class F>
struct GaloisResult {
    int coinv_dim = 0;
    Mat<F> incl;            // B -> A
    Algebra<F> b;           // coinvariant algebra
    QSpaceP<F> cb;          // A (x)_B A
    QMap<F> cb_cmul;        // Delta_B
    Mat<F> cb_counit;       // eps_B
    Mat<F> kappa;           // C_B -> C
    int kappa_rank = 0;
    bool galois = false;
    Report report;
};

template <class F>
GaloisResult<F> galois(const InternalCoring<F>& c, const Mat<F>& g) {
    GaloisResult<F> out;
    out.report.subject = "galois";
    const F& f = c.c.x->field();
    Algebra<F> a = underlying_algebra(c.s);
    out.report.absorb(check_grouplike(c, g), "grouplike");

    auto com = coaction_from_grouplike(c, g);
    out.report.absorb(check_comodule(c, com), "coaction");
    auto eq = coinvariants(c, com, g);
    out.coinv_dim = eq.dim;
    out.incl = eq.incl;
    out.report.set_derived("coinv_dim", std::to_string(eq.dim));

    auto smul = solve(eq.incl, a.mul * kron(eq.incl, eq.incl));
    auto sunit = solve(eq.incl, a.unit);
    if (!smul || !sunit) {
        out.report.note("coinv-subalgebra", false,
                        "coinvariants are not closed under the algebra structure");
        return out;
    }
    out.report.note("coinv-subalgebra", true);
    out.b = Algebra<F>{f, eq.dim, smul->particular, sunit->particular};
    out.report.absorb(validate_algebra(out.b, "B"), "B");

    const auto ida = Mat<F>::identity(f, a.dim);
    Bimodule<F> lower{a, out.b, a.dim, a.mul, a.mul * kron(ida, eq.incl)};
    Bimodule<F> upper{out.b, a, a.dim, a.mul * kron(eq.incl, ida), a.mul};
    auto cb = qtensor(leaf(lower), leaf(upper));
    out.cb = cb;
    out.report.set_derived("cb_dim", std::to_string(cb->dim()));

    auto cbcb = qtensor(cb, cb);
    out.cb_cmul = qmap_from_ground_or_throw(cb, cbcb, kron(ida, kron(a.unit, kron(a.unit, ida))),
                                            "Delta_B");
    out.cb_counit = descend_or_throw(cb, a.mul, "eps_B");

    auto ca = flat_carrier(c);
    Mat<F> inner = ca->mod.ract * kron(g, ida);
    out.kappa = descend_or_throw(cb, ca->mod.lact * kron(ida, inner), "kappa");
    out.kappa_rank = rank(out.kappa);
    out.report.set_derived("kappa_rank", std::to_string(out.kappa_rank));
    out.galois = (cb->dim() == c.c.x->dim()) && (out.kappa_rank == c.c.x->dim());
    out.report.set_derived("galois", out.galois ? "true" : "false");

    check_equal(out.report, "kappaprop", out.kappa * cb->proj * kron(a.unit, a.unit), g);
    check_equal(out.report, "kappa-counit", c.counit * out.kappa, out.cb_counit, {cb->dim()});
    {
        auto cc_flat = qtensor(ca, ca);
        Mat<F> theta = cc_flat->proj * c.cc.x->sec;
        Mat<F> cmul_flat = theta * c.cmul.m;
        QMap<F> kq{cb, ca, out.kappa};
        auto kk = qmap_tensor(kq, kq, cbcb, cc_flat);
        if (!kk.map) {
            out.report.note("kappa-coring", false, "kappa (x) kappa is not balanced");
        } else {
            check_equal(out.report, "kappa-coring", cmul_flat * out.kappa,
                        kk.map->m * out.cb_cmul.m, {cb->dim()});
        }
    }
    return out;
}

} // namespace bgd
