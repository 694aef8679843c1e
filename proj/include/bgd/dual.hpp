#pragma once

#include <optional>
#include <string>

#include "bgd/bimodule.hpp"

namespace bgd {

// Right duals of R-R-bimodules. The dual carrier is the space of left
// R-linear maps M -> R with actions (r.phi.r')(m) = phi(m.r).r'; evaluation
// is evaluation of functionals descended to M (x)_R M^r, and coevaluation is
// solved for from the snake identities, which are linear once ev is fixed.

template <class F>
Descended<F> descend_ground(const QSpaceP<F>& dom, const Mat<F>& ground_map) {
    if (!dom->has_ground() || ground_map.cols() != dom->ground_dim)
        throw DimensionMismatch("descend_ground: map does not start at the ground");
    SpMat<F> gm = SpMat<F>::from_dense(ground_map);
    SpMat<F> m = gm * dom->gsec;
    Descended<F> out{m.to_dense(), std::nullopt};
    if (!(m * dom->gproj == gm)) {
        auto diff = Mat<F>::first_difference(out.m * dom->gproj.to_dense(), ground_map);
        out.error = NotBalanced{{diff ? diff->second : 0}};
    }
    return out;
}

template <class F>
struct DualPair {
    QSpaceP<F> object;   // M
    QSpaceP<F> dual;     // M^r
    QSpaceP<F> rleaf;    // regular R as the monoidal unit
    QSpaceP<F> obj_dual; // M (x)_R M^r
    QSpaceP<F> dual_obj; // M^r (x)_R M
    QMap<F> ev;          // obj_dual -> R
    QMap<F> coev;        // R -> dual_obj
};

template <class F>
struct RightDualResult {
    std::optional<DualPair<F>> pair;
    Report report;
};

// Snake composites for a candidate (ev, coev); both must equal identities.
template <class F>
Mat<F> snake_on_object(const DualPair<F>& d) {
    auto m_rm = qtensor(d.object, d.rleaf);
    auto m_dualobj = qtensor(d.object, d.dual_obj);
    auto objdual_m = qtensor(d.obj_dual, d.object);
    auto rm_m = qtensor(d.rleaf, d.object);
    auto step1 = unit_intro_right(d.object, m_rm);
    auto step2 = qmap_tensor_or_throw(qidentity(d.object), d.coev, m_rm, m_dualobj, "snake1");
    auto step3 = reassoc(m_dualobj, objdual_m);
    auto step4 = qmap_tensor_or_throw(d.ev, qidentity(d.object), objdual_m, rm_m, "snake1");
    auto step5 = unit_elim_left(rm_m, d.object);
    return step5.m * step4.m * step3.m * step2.m * step1.m;
}

template <class F>
Mat<F> snake_on_dual(const DualPair<F>& d) {
    auto r_dual = qtensor(d.rleaf, d.dual);
    auto dualobj_dual = qtensor(d.dual_obj, d.dual);
    auto dual_objdual = qtensor(d.dual, d.obj_dual);
    auto dual_r = qtensor(d.dual, d.rleaf);
    auto step1 = unit_intro_left(d.dual, r_dual);
    auto step2 = qmap_tensor_or_throw(d.coev, qidentity(d.dual), r_dual, dualobj_dual, "snake2");
    auto step3 = reassoc(dualobj_dual, dual_objdual);
    auto step4 = qmap_tensor_or_throw(qidentity(d.dual), d.ev, dual_objdual, dual_r, "snake2");
    auto step5 = unit_elim_right(dual_r, d.dual);
    return step5.m * step4.m * step3.m * step2.m * step1.m;
}

template <class F>
void verify_dual_pair(Report& rep, const DualPair<F>& d) {
    const F& f = d.object->field();
    // ev and coev are bimodule morphisms
    const auto& ev = d.ev.m;
    const auto& cv = d.coev.m;
    const auto& od = *d.obj_dual;
    const auto& do_ = *d.dual_obj;
    const Algebra<F>& r = d.rleaf->mod.lbase;
    auto idr = Mat<F>::identity(f, r.dim);
    check_equal(rep, "ev-left", ev * od.mod.lact, r.mul * kron(idr, ev), {r.dim, od.dim()});
    check_equal(rep, "ev-right", ev * od.mod.ract, r.mul * kron(ev, idr), {od.dim(), r.dim});
    check_equal(rep, "coev-left", cv * r.mul, do_.mod.lact * kron(idr, cv), {r.dim, r.dim});
    check_equal(rep, "coev-right", cv * r.mul, do_.mod.ract * kron(cv, idr), {r.dim, r.dim});
    check_equal(rep, "snake1", snake_on_object(d), Mat<F>::identity(f, d.object->dim()),
                {d.object->dim()});
    check_equal(rep, "snake2", snake_on_dual(d), Mat<F>::identity(f, d.dual->dim()),
                {d.dual->dim()});
}

template <class F>
RightDualResult<F> right_dual(const QSpaceP<F>& m) {
    RightDualResult<F> out;
    out.report.subject = "right_dual";
    const F& f = m->field();
    const Algebra<F>& r = m->mod.lbase;
    if (!(m->mod.rbase == r))
        throw DimensionMismatch("right_dual: expects an R-R-bimodule");
    const int dm = m->dim(), dr = r.dim;

    // Left R-linear functionals phi : M -> R, coordinates phi_(rho,i).
    const int hom = dr * dm;
    Mat<F> cond(f, dr * dr * dm, hom);
    for (int rho = 0; rho < dr; ++rho)
        for (int a = 0; a < dr; ++a)
            for (int x = 0; x < dm; ++x) {
                int row = (rho * dr + a) * dm + x;
                for (int i = 0; i < dm; ++i)
                    cond.at(row, rho * dm + i) += m->mod.lact.at(i, a * dm + x);
                for (int rp = 0; rp < dr; ++rp)
                    cond.at(row, rp * dm + x) -= r.mul.at(rho, a * dr + rp);
            }
    Mat<F> incl = kernel(cond);  // hom x h
    const int h = incl.cols();
    out.report.set_derived("dual_dim", std::to_string(h));

    // Actions on the functional space, restricted to the left-linear part.
    Mat<F> lact_hom(f, hom, dr * hom);  // (a, phi) -> phi(_.a)
    Mat<F> ract_hom(f, hom, hom * dr);  // (phi, b) -> phi(_).b
    for (int rho = 0; rho < dr; ++rho)
        for (int i = 0; i < dm; ++i) {
            for (int a = 0; a < dr; ++a)
                for (int j = 0; j < dm; ++j)
                    lact_hom.at(rho * dm + i, a * hom + rho * dm + j) = m->mod.ract.at(j, i * dr + a);
            for (int b = 0; b < dr; ++b)
                for (int rp = 0; rp < dr; ++rp)
                    ract_hom.at(rho * dm + i, (rp * dm + i) * dr + b) = r.mul.at(rho, rp * dr + b);
        }
    auto idr = Mat<F>::identity(f, dr);
    auto lift_l = solve(incl, lact_hom * kron(idr, incl));
    auto lift_r = solve(incl, ract_hom * kron(incl, idr));
    if (!lift_l || !lift_r) {
        out.report.note("dual-actions", false, "functional space is not closed under the actions");
        return out;
    }
    Bimodule<F> dual_mod{r, r, h, lift_l->particular, lift_r->particular};
    out.report.absorb(validate_bimodule(dual_mod), "dual");

    DualPair<F> pair;
    pair.object = m;
    pair.dual = leaf(dual_mod);
    pair.rleaf = leaf(regular_bimodule(r));
    pair.obj_dual = qtensor(m, pair.dual);
    pair.dual_obj = qtensor(pair.dual, m);

    // ev descends from evaluation of functionals.
    Mat<F> eval_full(f, dr, dm * h);
    for (int rho = 0; rho < dr; ++rho)
        for (int i = 0; i < dm; ++i)
            for (int w = 0; w < h; ++w) eval_full.at(rho, i * h + w) = incl.at(rho * dm + i, w);
    pair.ev = {pair.obj_dual, pair.rleaf, descend_or_throw(pair.obj_dual, eval_full, "ev")};

    // coev is the solution of the two snake identities plus the bimodule
    // morphism constraints, all linear in its matrix.
    const int un = pair.dual_obj->dim() * dr;
    auto snake_system = [&](const Mat<F>& u) {
        QMap<F> coev{pair.rleaf, pair.dual_obj, u};
        DualPair<F> cand = pair;
        cand.coev = coev;
        // raw snake composites: assemble without balance verification
        auto m_rm = qtensor(m, pair.rleaf);
        auto m_do = qtensor(m, pair.dual_obj);
        auto od_m = qtensor(pair.obj_dual, m);
        auto rm_m = qtensor(pair.rleaf, m);
        Mat<F> s1 = unit_elim_left(rm_m, m).m *
                    (rm_m->proj * kron(pair.ev.m, Mat<F>::identity(f, dm)) * od_m->sec) *
                    reassoc(m_do, od_m).m *
                    (m_do->proj * kron(Mat<F>::identity(f, dm), u) * m_rm->sec) *
                    unit_intro_right(m, m_rm).m;
        auto r_d = qtensor(pair.rleaf, pair.dual);
        auto do_d = qtensor(pair.dual_obj, pair.dual);
        auto d_od = qtensor(pair.dual, pair.obj_dual);
        auto d_r = qtensor(pair.dual, pair.rleaf);
        Mat<F> s2 = unit_elim_right(d_r, pair.dual).m *
                    (d_r->proj * kron(Mat<F>::identity(f, h), pair.ev.m) * d_od->sec) *
                    reassoc(do_d, d_od).m *
                    (do_d->proj * kron(u, Mat<F>::identity(f, h)) * r_d->sec) *
                    unit_intro_left(pair.dual, r_d).m;
        Mat<F> bl = u * r.mul - pair.dual_obj->mod.lact * kron(idr, u);
        Mat<F> br = u * r.mul - pair.dual_obj->mod.ract * kron(u, idr);
        // stack all conditions into one column vector
        std::vector<const Mat<F>*> parts{&s1, &s2, &bl, &br};
        int total = 0;
        for (auto* p : parts) total += p->rows() * p->cols();
        Mat<F> v(f, total, 1);
        int ofs = 0;
        for (auto* p : parts)
            for (int j = 0; j < p->cols(); ++j)
                for (int i = 0; i < p->rows(); ++i) v.at(ofs++, 0) = p->at(i, j);
        return v;
    };
    Mat<F> zero_u(f, pair.dual_obj->dim(), dr);
    Mat<F> rhs_base = snake_system(zero_u);  // contributions independent of u (identities target)
    // target vector: snakes equal identities, bimodule conditions equal zero
    Mat<F> target(f, rhs_base.rows(), 1);
    {
        int ofs = 0;
        auto put_identity = [&](int n) {
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) target.at(ofs++, 0) = (i == j) ? f.one() : f.zero();
        };
        put_identity(dm);
        put_identity(h);
        // remaining rows stay zero
    }
    Mat<F> sys(f, rhs_base.rows(), un);
    for (int k = 0; k < un; ++k) {
        Mat<F> e(f, pair.dual_obj->dim(), dr);
        e.at(k / dr, k % dr) = f.one();
        Mat<F> col = snake_system(e) - rhs_base;
        for (int i = 0; i < sys.rows(); ++i) sys.at(i, k) = col.at(i, 0);
    }
    auto sol = solve(sys, target - rhs_base);
    if (!sol) {
        out.report.note("snake-solve", false, "no coevaluation satisfies the snake identities");
        return out;
    }
    Mat<F> u(f, pair.dual_obj->dim(), dr);
    for (int k = 0; k < un; ++k) u.at(k / dr, k % dr) = sol->particular.at(k, 0);
    pair.coev = {pair.rleaf, pair.dual_obj, std::move(u)};

    verify_dual_pair(out.report, pair);
    if (!out.report.pass()) return out;
    out.pair = std::move(pair);
    return out;
}

// The regular bimodule is self-dual: ev is multiplication descended, coev the
// unit embedding.
template <class F>
DualPair<F> self_dual_base(const Algebra<F>& r) {
    DualPair<F> d;
    d.rleaf = leaf(regular_bimodule(r));
    d.object = d.rleaf;
    d.dual = d.rleaf;
    d.obj_dual = qtensor(d.object, d.dual);
    d.dual_obj = qtensor(d.dual, d.object);
    d.ev = unit_elim_left(d.obj_dual, d.rleaf);
    d.coev = unit_intro_left(d.rleaf, d.dual_obj);
    return d;
}

// Transpose of a bimodule morphism along right duals:
// f^r = (elim) o (X^r [] ev_Y) o (X^r [] (f [] Y^r)) o assoc o (coev_X [] Y^r) o (intro).
template <class F>
QMap<F> transpose(const QMap<F>& f, const DualPair<F>& dx, const DualPair<F>& dy,
                  const std::string& what = "transpose") {
    const auto& rl = dx.rleaf;
    auto r_yr = qtensor(rl, dy.dual);
    auto xrx_yr = qtensor(dx.dual_obj, dy.dual);
    auto xr_x_yr = qtensor(dx.dual, qtensor(dx.object, dy.dual));
    auto step1 = unit_intro_left(dy.dual, r_yr);
    auto step2 = qmap_tensor_or_throw(dx.coev, qidentity(dy.dual), r_yr, xrx_yr, what);
    auto step3 = reassoc(xrx_yr, xr_x_yr);
    auto x_yr = qtensor(dx.object, dy.dual);
    auto y_yr = qtensor(f.cod, dy.dual);
    auto inner = qmap_tensor_or_throw(f, qidentity(dy.dual), x_yr, y_yr, what);
    auto xr_y_yr = qtensor(dx.dual, y_yr);
    auto step4 = qmap_tensor_or_throw(qidentity(dx.dual), inner, xr_x_yr, xr_y_yr, what);
    auto xr_r = qtensor(dx.dual, rl);
    QMap<F> evy{y_yr, rl, dy.ev.m};
    auto step5 = qmap_tensor_or_throw(qidentity(dx.dual), evy, xr_y_yr, xr_r, what);
    auto step6 = unit_elim_right(xr_r, dx.dual);
    return {dy.dual, dx.dual,
            step6.m * step5.m * step4.m * step3.m * step2.m * step1.m};
}

// Dual pair for a module tensor product: (M (x)_R N)^r = N^r (x)_R M^r with
// the nested evaluation and coevaluation.
template <class F>
DualPair<F> dual_pair_tensor(const DualPair<F>& dm, const DualPair<F>& dn, Report& rep) {
    const F& f = dm.object->field();
    DualPair<F> d;
    d.rleaf = dm.rleaf;
    d.object = qtensor(dm.object, dn.object);
    d.dual = qtensor(dn.dual, dm.dual);
    d.obj_dual = qtensor(d.object, d.dual);
    d.dual_obj = qtensor(d.dual, d.object);

    // ev: evaluate the inner pair, absorb into M, evaluate the outer pair.
    {
        const int a = dm.object->dim(), b = dn.object->dim();
        const int hb = dn.dual->dim(), ha = dm.dual->dim();
        Mat<F> evn_pre = dn.ev.m * dn.obj_dual->proj;   // R x (b*hb)
        Mat<F> evm_pre = dm.ev.m * dm.obj_dual->proj;   // R x (a*ha)
        Mat<F> ground = evm_pre *
                        kron(dm.object->mod.ract, Mat<F>::identity(f, ha)) *
                        kron(Mat<F>::identity(f, a), kron(evn_pre, Mat<F>::identity(f, ha)));
        auto dd = descend_ground(d.obj_dual, ground);
        if (dd.error) throw DimensionMismatch("dual_pair_tensor: ev does not descend");
        d.ev = {d.obj_dual, d.rleaf, std::move(dd.m)};
    }

    // coev: R -> N^r (x) N -> N^r (x) (R (x) N) -> N^r (x) ((M^r (x) M) (x) N)
    //        -> (N^r (x) M^r) (x) (M (x) N).
    {
        auto r_n = qtensor(d.rleaf, dn.object);
        auto nr_rn = qtensor(dn.dual, r_n);
        auto inner_intro = unit_intro_left(dn.object, r_n);
        auto step1 = qmap_tensor_or_throw(qidentity(dn.dual), inner_intro, dn.dual_obj, nr_rn,
                                          "dual_pair_tensor");
        auto mrm_n = qtensor(dm.dual_obj, dn.object);
        auto nr_mrmn = qtensor(dn.dual, mrm_n);
        auto inner_coev = qmap_tensor_or_throw(dm.coev, qidentity(dn.object), r_n, mrm_n,
                                               "dual_pair_tensor");
        auto step2 = qmap_tensor_or_throw(qidentity(dn.dual), inner_coev, nr_rn, nr_mrmn,
                                          "dual_pair_tensor");
        auto step3 = reassoc(nr_mrmn, d.dual_obj);
        d.coev = {d.rleaf, d.dual_obj, step3.m * step2.m * step1.m * dn.coev.m};
    }
    verify_dual_pair(rep, d);
    return d;
}

} // namespace bgd
