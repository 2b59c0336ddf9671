use alloc::string::String;

use crate::affine::check_affine_limits;
use crate::coeff::{int, RatFun, Var};
use crate::pbw::{coproduct_std, residual_check, AlgebraElement, Presentation};
use crate::rep::{build_drm, jordanian_twist_image, rep_r_std, rep_r_twisted, RepError};
use crate::report::{Check, VerificationReport};
use crate::twist::{apply_twist, build_r_std, build_twist, twist_r, TwistKind};

const BOUNDARY_ANCHOR: &str = "the appropriate boundary behaviour";
const F_H0_ANCHOR: &str = "F_qJ(h,0) = 1⊗1";
const F_XI0_ANCHOR: &str = "F_J^c = F_qJ(0,ξ)";
const U_XI0_ANCHOR: &str = "U_qJ(sl(2))(h,0) = U_q(sl(2))";
const U_H0_ANCHOR: &str = "U_J(sl(2)) = U_qJ(sl(2))(0,ξ)";
const R_XI0_ANCHOR: &str = "R_qJ^{DJ}(h,0) = R^{DJ}";
const R_H0_ANCHOR: &str = "R_J = R_qJ^{DJ}(0,ξ)";

/// The corners of the three boundary diagrams: twisting element, twisted
/// coproducts and R-matrix, each at `xi = 0` and at `h = 0`.
pub fn verify_limits(order: u32) -> Result<VerificationReport, RepError> {
    let mut r = VerificationReport::new("limits");
    r.param("order", alloc::format!("{order}"));
    for p in [Presentation::Borel, Presentation::Sl2] {
        let tag = p.name();
        let fq = build_twist(TwistKind::QJ, p, order)?;
        let fj = build_twist(TwistKind::CanonicalJordanian, p, order)?;
        r.push(residual_check(
            &alloc::format!("limits.{tag}.twist.xi0"),
            F_H0_ANCHOR,
            &fq.value.at_xi_zero(),
            &AlgebraElement::one(p, 2, order),
        ));
        r.push(residual_check(
            &alloc::format!("limits.{tag}.twist.h0"),
            F_XI0_ANCHOR,
            &fq.value.at_h_zero(),
            &fj.value.at_h_zero(),
        ));
        for &g in p.generators() {
            let x = AlgebraElement::generator(p, g, order)?;
            let dq = apply_twist(&fq, &x)?;
            r.push(residual_check(
                &alloc::format!("limits.{tag}.coproduct.xi0.{}", g.symbol()),
                U_XI0_ANCHOR,
                &dq.at_xi_zero(),
                &coproduct_std(&x)?.at_xi_zero(),
            ));
            r.push(residual_check(
                &alloc::format!("limits.{tag}.coproduct.h0.{}", g.symbol()),
                U_H0_ANCHOR,
                &dq.at_h_zero(),
                &apply_twist(&fj, &x)?.at_h_zero(),
            ));
        }
    }

    let p = Presentation::Sl2;
    let fq = build_twist(TwistKind::QJ, p, order)?;
    let fj = build_twist(TwistKind::CanonicalJordanian, p, order)?;
    let rs = build_r_std(order)?;
    let rq = twist_r(&fq, &rs);
    r.push(residual_check(
        "limits.rmatrix.xi0",
        R_XI0_ANCHOR,
        &rq.at_xi_zero(),
        &rs.at_xi_zero(),
    ));
    let rj = twist_r(&fj, &AlgebraElement::one(p, 2, order));
    r.push(residual_check(
        "limits.rmatrix.h0",
        R_H0_ANCHOR,
        &rq.at_h_zero(),
        &rj.at_h_zero(),
    ));

    // h -> 0 in the fundamental representation: p = 1.
    let d1 = rep_r_twisted()?.try_map(|x| x.subst(Var::P, &int(1)))?;
    let j = jordanian_twist_image();
    let rj_mat = j.flip().mul(&j.inverse()?);
    r.push(Check::exact(
        "limits.matrix.h0.jordanian",
        R_H0_ANCHOR,
        d1 == rj_mat,
        || String::from("twisted R at p = 1 differs from F_21 F^{-1}"),
    ));
    let drm1 = build_drm(&RatFun::one(), &RatFun::xi(), &RatFun::zero())?.flip();
    r.push(Check::exact(
        "limits.matrix.h0.hybrid",
        BOUNDARY_ANCHOR,
        d1 == drm1,
        || String::from("hybrid matrix at q = 1, z = 0 differs"),
    ));
    let d0 = rep_r_twisted()?.try_map(|x| x.subst(Var::Xi, &int(0)))?;
    r.push(Check::exact(
        "limits.matrix.xi0",
        R_XI0_ANCHOR,
        d0 == rep_r_std(),
        || String::from("twisted R at xi = 0 differs from the standard one"),
    ));
    for c in check_affine_limits()? {
        r.push(c);
    }
    r.sort();
    Ok(r)
}
