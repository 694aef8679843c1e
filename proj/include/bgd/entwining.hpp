#pragma once

#include "bgd/dual.hpp"

namespace bgd {

// Monoids and comonoids in the category of R-R-bimodules, and entwining
// structures between them. Structure maps between quotient carriers are
// QMaps; comultiplications land in the module tensor square.

template <class F>
struct InternalMonoid {
    QSpaceP<F> s;
    QMap<F> mul;   // S (x)_R S -> S
    Mat<F> unit;   // R -> S, bimodule morphism
};

template <class F>
struct InternalComonoid {
    QSpaceP<F> l;
    QMap<F> cmul;    // L -> L (x)_R L
    Mat<F> counit;   // L -> R, bimodule morphism
};

// psi entwines the monoid over the comonoid. For a left entwining structure
// psi : S (x)_R L -> L (x)_R S; for a right entwining structure the roles of
// the factors are reversed: psi : C (x)_R M -> M (x)_R C for monoid M and
// comonoid C.
template <class F>
struct Entwining {
    InternalMonoid<F> mon;
    InternalComonoid<F> com;
    QMap<F> psi;
};

template <class F>
QSpaceP<F> base_leaf(const QSpaceP<F>& carrier) {
    return leaf(regular_bimodule(carrier->mod.lbase));
}

template <class F>
QMap<F> unit_as_map(const QSpaceP<F>& rleaf, const QSpaceP<F>& s, const Mat<F>& unit) {
    return {rleaf, s, unit};
}

template <class F>
Report validate_internal_monoid(const InternalMonoid<F>& m, const std::string& subject = "monoid") {
    Report rep;
    rep.subject = subject;
    auto guarded = [&rep](const std::string& label, auto&& fn) {
        try {
            fn();
        } catch (const DimensionMismatch& e) {
            rep.note(label, false, e.what());
        }
    };
    const F& f = m.s->field();
    const Algebra<F>& r = m.s->mod.lbase;
    auto rl = base_leaf(m.s);
    auto ss = qtensor(m.s, m.s);
    auto idr = Mat<F>::identity(f, r.dim);

    check_equal(rep, "munit-morph-l", m.s->mod.lact * kron(idr, m.unit), m.unit * r.mul,
                {r.dim, r.dim});
    check_equal(rep, "munit-morph-r", m.s->mod.ract * kron(m.unit, idr), m.unit * r.mul,
                {r.dim, r.dim});
    check_equal(rep, "mul-left", m.mul.m * ss->mod.lact,
                m.s->mod.lact * kron(idr, m.mul.m), {r.dim, ss->dim()});
    check_equal(rep, "mul-right", m.mul.m * ss->mod.ract,
                m.s->mod.ract * kron(m.mul.m, idr), {ss->dim(), r.dim});

    guarded("massoc", [&] {
        auto ss_s = qtensor(ss, m.s);
        auto s_ss = qtensor(m.s, ss);
        auto lhs = compose(m.mul, qmap_tensor_or_throw(m.mul, qidentity(m.s), ss_s, ss, "massoc"));
        auto rhs = compose(m.mul,
                           compose(qmap_tensor_or_throw(qidentity(m.s), m.mul, s_ss, ss, "massoc"),
                                   reassoc(ss_s, s_ss)));
        check_equal(rep, "massoc", lhs.m, rhs.m, {ss->dim(), m.s->dim()});
    });
    guarded("munit", [&] {
        auto rs = qtensor(rl, m.s);
        auto sr = qtensor(m.s, rl);
        auto eta = unit_as_map(rl, m.s, m.unit);
        auto ul = compose(m.mul, compose(qmap_tensor_or_throw(eta, qidentity(m.s), rs, ss, "munitl"),
                                         unit_intro_left(m.s, rs)));
        check_equal(rep, "munitl", ul.m, Mat<F>::identity(f, m.s->dim()), {m.s->dim()});
        auto ur = compose(m.mul, compose(qmap_tensor_or_throw(qidentity(m.s), eta, sr, ss, "munitr"),
                                         unit_intro_right(m.s, sr)));
        check_equal(rep, "munitr", ur.m, Mat<F>::identity(f, m.s->dim()), {m.s->dim()});
    });
    return rep;
}

template <class F>
Report validate_internal_comonoid(const InternalComonoid<F>& c,
                                  const std::string& subject = "comonoid") {
    Report rep;
    rep.subject = subject;
    auto guarded = [&rep](const std::string& label, auto&& fn) {
        try {
            fn();
        } catch (const DimensionMismatch& e) {
            rep.note(label, false, e.what());
        }
    };
    const F& f = c.l->field();
    const Algebra<F>& r = c.l->mod.lbase;
    auto rl = base_leaf(c.l);
    auto ll = qtensor(c.l, c.l);
    auto idr = Mat<F>::identity(f, r.dim);

    check_equal(rep, "cmul-left", c.cmul.m * c.l->mod.lact,
                ll->mod.lact * kron(idr, c.cmul.m), {r.dim, c.l->dim()});
    check_equal(rep, "cmul-right", c.cmul.m * c.l->mod.ract,
                ll->mod.ract * kron(c.cmul.m, idr), {c.l->dim(), r.dim});
    check_equal(rep, "counit-morph-l", c.counit * c.l->mod.lact, r.mul * kron(idr, c.counit),
                {r.dim, c.l->dim()});
    check_equal(rep, "counit-morph-r", c.counit * c.l->mod.ract, r.mul * kron(c.counit, idr),
                {c.l->dim(), r.dim});

    guarded("coassoc", [&] {
        auto ll_l = qtensor(ll, c.l);
        auto l_ll = qtensor(c.l, ll);
        auto lhs = compose(qmap_tensor_or_throw(c.cmul, qidentity(c.l), ll, ll_l, "coassoc"), c.cmul);
        auto rhs = compose(reassoc(l_ll, ll_l),
                           compose(qmap_tensor_or_throw(qidentity(c.l), c.cmul, ll, l_ll, "coassoc"),
                                   c.cmul));
        check_equal(rep, "coassoc", lhs.m, rhs.m, {c.l->dim()});
    });
    guarded("counit", [&] {
        auto rlp = qtensor(rl, c.l);
        auto lr = qtensor(c.l, rl);
        QMap<F> eps{c.l, rl, c.counit};
        auto cl = compose(unit_elim_left(rlp, c.l),
                          compose(qmap_tensor_or_throw(eps, qidentity(c.l), ll, rlp, "counitl"), c.cmul));
        check_equal(rep, "counitl", cl.m, Mat<F>::identity(f, c.l->dim()), {c.l->dim()});
        auto cr = compose(unit_elim_right(lr, c.l),
                          compose(qmap_tensor_or_throw(qidentity(c.l), eps, ll, lr, "counitr"), c.cmul));
        check_equal(rep, "counitr", cr.m, Mat<F>::identity(f, c.l->dim()), {c.l->dim()});
    });
    return rep;
}

namespace detail_entw {

template <class F>
void psi_bimodule_checks(Report& rep, const QMap<F>& psi) {
    const F& f = psi.dom->field();
    const Algebra<F>& r = psi.dom->mod.lbase;
    auto idr = Mat<F>::identity(f, r.dim);
    check_equal(rep, "psi-left", psi.m * psi.dom->mod.lact,
                psi.cod->mod.lact * kron(idr, psi.m), {r.dim, psi.dom->dim()});
    check_equal(rep, "psi-right", psi.m * psi.dom->mod.ract,
                psi.cod->mod.ract * kron(psi.m, idr), {psi.dom->dim(), r.dim});
}

} // namespace detail_entw

// The four left entwining identities for psi : S (x) L -> L (x) S.
template <class F>
Report check_left_entwining(const Entwining<F>& e, bool include_component_checks = true) {
    Report rep;
    rep.subject = "left entwining";
    auto guarded = [&rep](const std::string& label, auto&& fn) {
        try {
            fn();
        } catch (const DimensionMismatch& e) {
            rep.note(label, false, e.what());
        }
    };
    if (include_component_checks) {
        rep.absorb(validate_internal_monoid(e.mon), "monoid");
        rep.absorb(validate_internal_comonoid(e.com), "comonoid");
    }
    const F& f = e.mon.s->field();
    const auto& s = e.mon.s;
    const auto& l = e.com.l;
    auto rl = base_leaf(s);
    auto sl = qtensor(s, l);
    auto ls = qtensor(l, s);
    detail_entw::psi_bimodule_checks(rep, e.psi);

    auto eta = unit_as_map(rl, s, e.mon.unit);
    QMap<F> eps{l, rl, e.com.counit};

    // entwi: psi o (eta [] L) = L [] eta
    guarded("entwi", [&] {
        auto rll = qtensor(rl, l);
        auto lr = qtensor(l, rl);
        auto lhs = compose(e.psi, compose(qmap_tensor_or_throw(eta, qidentity(l), rll, sl, "entwi"),
                                          unit_intro_left(l, rll)));
        auto rhs = compose(qmap_tensor_or_throw(qidentity(l), eta, lr, ls, "entwi"),
                           unit_intro_right(l, lr));
        check_equal(rep, "entwi", lhs.m, rhs.m, {l->dim()});
    });
    // entwii: (pi [] S) o psi = S [] pi
    guarded("entwii", [&] {
        auto rs = qtensor(rl, s);
        auto sr = qtensor(s, rl);
        auto lhs = compose(unit_elim_left(rs, s),
                           compose(qmap_tensor_or_throw(eps, qidentity(s), ls, rs, "entwii"), e.psi));
        auto rhs = compose(unit_elim_right(sr, s),
                           qmap_tensor_or_throw(qidentity(s), eps, sl, sr, "entwii"));
        check_equal(rep, "entwii", lhs.m, rhs.m, {sl->dim()});
    });
    // entwiii: psi o (mul [] L) = (L [] mul) o (psi [] S) o (S [] psi)
    guarded("entwiii", [&] {
        auto ss = qtensor(s, s);
        auto ss_l = qtensor(ss, l);
        auto lhs = compose(e.psi, qmap_tensor_or_throw(e.mon.mul, qidentity(l), ss_l, sl, "entwiii"));
        auto s_sl = qtensor(s, sl);
        auto s_ls = qtensor(s, ls);
        auto sl_s = qtensor(sl, s);
        auto ls_s = qtensor(ls, s);
        auto l_ss = qtensor(l, ss);
        auto rhs = compose(qmap_tensor_or_throw(qidentity(l), e.mon.mul, l_ss, ls, "entwiii"),
                  compose(reassoc(ls_s, l_ss),
                  compose(qmap_tensor_or_throw(e.psi, qidentity(s), sl_s, ls_s, "entwiii"),
                  compose(reassoc(s_ls, sl_s),
                  compose(qmap_tensor_or_throw(qidentity(s), e.psi, s_sl, s_ls, "entwiii"),
                          reassoc(ss_l, s_sl))))));
        check_equal(rep, "entwiii", lhs.m, rhs.m, {ss_l->dim()});
    });
    // entwiv: (cmul [] S) o psi = (L [] psi) o (psi [] L) o (S [] cmul)
    guarded("entwiv", [&] {
        auto ll = qtensor(l, l);
        auto ll_s = qtensor(ll, s);
        auto lhs = compose(qmap_tensor_or_throw(e.com.cmul, qidentity(s), ls, ll_s, "entwiv"), e.psi);
        auto s_ll = qtensor(s, ll);
        auto sl_l = qtensor(sl, l);
        auto ls_l = qtensor(ls, l);
        auto l_sl = qtensor(l, sl);
        auto l_ls = qtensor(l, ls);
        auto rhs = compose(reassoc(l_ls, ll_s),
                  compose(qmap_tensor_or_throw(qidentity(l), e.psi, l_sl, l_ls, "entwiv"),
                  compose(reassoc(ls_l, l_sl),
                  compose(qmap_tensor_or_throw(e.psi, qidentity(l), sl_l, ls_l, "entwiv"),
                  compose(reassoc(s_ll, sl_l),
                          qmap_tensor_or_throw(qidentity(s), e.com.cmul, sl, s_ll, "entwiv"))))));
        check_equal(rep, "entwiv", lhs.m, rhs.m, {sl->dim()});
    });
    return rep;
}

// The four right entwining identities for psi : C (x) M -> M (x) C, where M
// is the monoid and C the comonoid.
template <class F>
Report check_right_entwining(const Entwining<F>& e, bool include_component_checks = true) {
    Report rep;
    rep.subject = "right entwining";
    auto guarded = [&rep](const std::string& label, auto&& fn) {
        try {
            fn();
        } catch (const DimensionMismatch& e) {
            rep.note(label, false, e.what());
        }
    };
    if (include_component_checks) {
        rep.absorb(validate_internal_monoid(e.mon), "monoid");
        rep.absorb(validate_internal_comonoid(e.com), "comonoid");
    }
    const F& f = e.mon.s->field();
    const auto& mo = e.mon.s;
    const auto& co = e.com.l;
    auto rl = base_leaf(mo);
    auto cm = qtensor(co, mo);
    auto mc = qtensor(mo, co);
    detail_entw::psi_bimodule_checks(rep, e.psi);

    auto eta = unit_as_map(rl, mo, e.mon.unit);
    QMap<F> eps{co, rl, e.com.counit};

    // rentwi: psi o (C [] eta) = eta [] C
    guarded("rentwi", [&] {
        auto cr = qtensor(co, rl);
        auto rc = qtensor(rl, co);
        auto lhs = compose(e.psi, compose(qmap_tensor_or_throw(qidentity(co), eta, cr, cm, "rentwi"),
                                          unit_intro_right(co, cr)));
        auto rhs = compose(qmap_tensor_or_throw(eta, qidentity(co), rc, mc, "rentwi"),
                           unit_intro_left(co, rc));
        check_equal(rep, "rentwi", lhs.m, rhs.m, {co->dim()});
    });
    // rentwii: (M [] eps) o psi = eps [] M
    guarded("rentwii", [&] {
        auto mr = qtensor(mo, rl);
        auto rm = qtensor(rl, mo);
        auto lhs = compose(unit_elim_right(mr, mo),
                           compose(qmap_tensor_or_throw(qidentity(mo), eps, mc, mr, "rentwii"), e.psi));
        auto rhs = compose(unit_elim_left(rm, mo),
                           qmap_tensor_or_throw(eps, qidentity(mo), cm, rm, "rentwii"));
        check_equal(rep, "rentwii", lhs.m, rhs.m, {cm->dim()});
    });
    // rentwiii: (psi [] C) o (C [] psi) o (cmul [] M) = (M [] cmul) o psi
    guarded("rentwiii", [&] {
        auto cc = qtensor(co, co);
        auto cc_m = qtensor(cc, mo);
        auto c_cm = qtensor(co, cm);
        auto c_mc = qtensor(co, mc);
        auto cm_c = qtensor(cm, co);
        auto mc_c = qtensor(mc, co);
        auto m_cc = qtensor(mo, cc);
        auto lhs = compose(reassoc(mc_c, m_cc),
                  compose(qmap_tensor_or_throw(e.psi, qidentity(co), cm_c, mc_c, "rentwiii"),
                  compose(reassoc(c_mc, cm_c),
                  compose(qmap_tensor_or_throw(qidentity(co), e.psi, c_cm, c_mc, "rentwiii"),
                  compose(reassoc(cc_m, c_cm),
                          qmap_tensor_or_throw(e.com.cmul, qidentity(mo), cm, cc_m, "rentwiii"))))));
        auto rhs = compose(qmap_tensor_or_throw(qidentity(mo), e.com.cmul, mc, m_cc, "rentwiii"),
                           e.psi);
        check_equal(rep, "rentwiii", lhs.m, rhs.m, {cm->dim()});
    });
    // rentwiv: psi o (C [] mul) = (mul [] C) o (M [] psi) o (psi [] M)
    guarded("rentwiv", [&] {
        auto mm = qtensor(mo, mo);
        auto cm_m = qtensor(cm, mo);
        auto c_mm = qtensor(co, mm);
        auto lhs = compose(e.psi,
                  compose(qmap_tensor_or_throw(qidentity(co), e.mon.mul, c_mm, cm, "rentwiv"),
                          reassoc(cm_m, c_mm)));
        auto mc_m = qtensor(mc, mo);
        auto m_cm = qtensor(mo, cm);
        auto m_mc = qtensor(mo, mc);
        auto mm_c = qtensor(mm, co);
        auto rhs = compose(qmap_tensor_or_throw(e.mon.mul, qidentity(co), mm_c, mc, "rentwiv"),
                  compose(reassoc(m_mc, mm_c),
                  compose(qmap_tensor_or_throw(qidentity(mo), e.psi, m_cm, m_mc, "rentwiv"),
                  compose(reassoc(mc_m, m_cm),
                          qmap_tensor_or_throw(e.psi, qidentity(mo), cm_m, mc_m, "rentwiv")))));
        check_equal(rep, "rentwiv", lhs.m, rhs.m, {cm_m->dim()});
    });
    return rep;
}

// Duals of the structure maps assemble the right entwining structure on
// (L^r, S^r, psi^r).
template <class F>
struct DualizedEntwining {
    Entwining<F> right;
    DualPair<F> ds, dl;
};

template <class F>
struct DualizeResult {
    std::optional<DualizedEntwining<F>> out;
    Report report;
};

template <class F>
DualizeResult<F> dualize_entwining(const Entwining<F>& e) {
    DualizeResult<F> res;
    res.report.subject = "dualize entwining";
    auto ds = right_dual(e.mon.s);
    res.report.absorb(ds.report, "dual-S");
    auto dl = right_dual(e.com.l);
    res.report.absorb(dl.report, "dual-L");
    if (!ds.pair || !dl.pair) {
        res.report.note("duals", false, "a right dual does not exist");
        return res;
    }
    const Algebra<F>& r = e.mon.s->mod.lbase;
    auto dr = self_dual_base(r);

    Report aux;
    auto dll = dual_pair_tensor(*dl.pair, *dl.pair, aux);
    auto dss = dual_pair_tensor(*ds.pair, *ds.pair, aux);
    auto dsl = dual_pair_tensor(*ds.pair, *dl.pair, aux);
    auto dls = dual_pair_tensor(*dl.pair, *ds.pair, aux);
    res.report.absorb(aux, "tensor-duals");

    InternalMonoid<F> mon;
    mon.s = dl.pair->dual;
    mon.mul = transpose(e.com.cmul, *dl.pair, dll, "gamma^r");
    mon.unit = transpose(QMap<F>{e.com.l, dr.rleaf, e.com.counit}, *dl.pair, dr, "pi^r").m;

    InternalComonoid<F> com;
    com.l = ds.pair->dual;
    com.cmul = transpose(e.mon.mul, dss, *ds.pair, "mu^r");
    com.counit = transpose(QMap<F>{dr.rleaf, e.mon.s, e.mon.unit}, dr, *ds.pair, "eta^r").m;

    QMap<F> psir = transpose(e.psi, dsl, dls, "psi^r");

    res.out = DualizedEntwining<F>{Entwining<F>{mon, com, psir}, *ds.pair, *dl.pair};
    res.report.absorb(check_right_entwining(res.out->right), "right");
    return res;
}

} // namespace bgd
