//! Twisting elements of the quantum Borel algebra, twisted coproducts and
//! antipodes, and the twist axioms.

mod closed;
mod rmatrix;

use alloc::string::String;
use alloc::vec::Vec;

pub use closed::{check_closed_forms, closed_form_coproduct, ClosedArg, ClosedForm, ClosedTarget};
pub use rmatrix::{
    build_r_std, check_cybe, check_quasitriangularity, extract_classical_r, q_number, twist_r,
    verify_rmatrix, ClassicalGen, ClassicalR,
};

use crate::coeff::{int, TruncSeries};
use crate::pbw::{
    counit_at, exp_h_h, residual_check, AlgebraElement, HopfStructure, PbwError, Presentation,
};
use crate::report::VerificationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwistKind {
    /// `e^{H (x) ln(1 + xi E)}`.
    CanonicalJordanian,
    /// `e^{H (x) sigma}`.
    TildeQJ,
    /// `e^{h H (x) H}`.
    Reshetikhin,
    /// `e^{H (x) omega} e^{-h H (x) H}`.
    QJ,
    /// `e^{xi E (x) E}`, which is not a twist.
    Control,
}

impl TwistKind {
    pub const TWISTS: [TwistKind; 4] = [
        TwistKind::CanonicalJordanian,
        TwistKind::TildeQJ,
        TwistKind::Reshetikhin,
        TwistKind::QJ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TwistKind::CanonicalJordanian => "canonical-jordanian",
            TwistKind::TildeQJ => "tilde-qj",
            TwistKind::Reshetikhin => "reshetikhin",
            TwistKind::QJ => "qj",
            TwistKind::Control => "control",
        }
    }

    fn anchor(self) -> &'static str {
        match self {
            TwistKind::CanonicalJordanian => "defined by the canonical twisting element",
            TwistKind::TildeQJ => "admits the twist with the element",
            TwistKind::Reshetikhin => "limit form of the twisting element",
            TwistKind::QJ => "F_qJ(h,xi) = e^{H(x)omega} e^{-hH(x)H}",
            TwistKind::Control => "The twisting element has to satisfy the equations",
        }
    }

    /// Kinds of the form `e^{H (x) x}` with `H` primitive.
    pub fn factorizable(self) -> bool {
        matches!(
            self,
            TwistKind::CanonicalJordanian | TwistKind::TildeQJ | TwistKind::Reshetikhin
        )
    }
}

/// `sigma = ln(xi E + e^{hH})`, `omega = ln((xi E + 1) e^{hH})` and
/// `E~ = E - 1 + e^{hH}`.
#[derive(Clone, Debug)]
pub struct SigmaOmega {
    pub sigma: AlgebraElement,
    pub omega: AlgebraElement,
    pub breve_e: AlgebraElement,
}

pub fn build_sigma_omega(pres: Presentation, order: u32) -> Result<SigmaOmega, PbwError> {
    let one = AlgebraElement::one(pres, 1, order);
    let e = AlgebraElement::carrier_e(pres, order);
    let xi_e = e.scale(&TruncSeries::xi(order));
    let k = exp_h_h(pres, 1, order);
    Ok(SigmaOmega {
        sigma: xi_e.add(&k).log()?,
        omega: xi_e.add(&one).mul(&k).log()?,
        breve_e: e.sub(&one).add(&k),
    })
}

/// An invertible degree-2 element together with its cached inverse.
#[derive(Clone, Debug)]
pub struct TwistElement {
    pub kind: TwistKind,
    pub value: AlgebraElement,
    pub inverse: AlgebraElement,
}

impl TwistElement {
    pub fn from_value(kind: TwistKind, value: AlgebraElement) -> Result<Self, PbwError> {
        let inverse = invert_tensor_element(&value)?;
        Ok(TwistElement {
            kind,
            value,
            inverse,
        })
    }

    pub fn presentation(&self) -> Presentation {
        self.value.presentation()
    }

    pub fn order(&self) -> u32 {
        self.value.order()
    }

    /// The flipped element `F_21` with its inverse.
    pub fn swapped(&self) -> (AlgebraElement, AlgebraElement) {
        (self.value.swap(), self.inverse.swap())
    }
}

pub fn build_twist(
    kind: TwistKind,
    pres: Presentation,
    order: u32,
) -> Result<TwistElement, PbwError> {
    let h = AlgebraElement::h(pres, order);
    let e = AlgebraElement::carrier_e(pres, order);
    let one = AlgebraElement::one(pres, 1, order);
    let hh = h.scale(&TruncSeries::h(order)).tensor(&h);
    let value = match kind {
        TwistKind::CanonicalJordanian => {
            let sigma0 = e.scale(&TruncSeries::xi(order)).add(&one).log()?;
            h.tensor(&sigma0).exp()?
        }
        TwistKind::TildeQJ => h.tensor(&build_sigma_omega(pres, order)?.sigma).exp()?,
        TwistKind::Reshetikhin => hh.exp()?,
        TwistKind::QJ => {
            let omega = build_sigma_omega(pres, order)?.omega;
            h.tensor(&omega).exp()?.mul(&hh.neg().exp()?)
        }
        TwistKind::Control => e.scale(&TruncSeries::xi(order)).tensor(&e).exp()?,
    };
    TwistElement::from_value(kind, value)
}

/// Inverse of `1 (x) 1 + y` by the geometric series in `-y`.
pub fn invert_tensor_element(x: &AlgebraElement) -> Result<AlgebraElement, PbwError> {
    if !x.constant_term().constant_term().eq(&int(1)) {
        return Err(PbwError::NotUnipotent);
    }
    x.inverse()
}

/// Coproduct twisted by conjugation, `F D(x) F^{-1}`, together with the
/// matching antipode.
#[derive(Clone, Debug)]
pub struct TwistedHopf {
    pub base: HopfStructure,
    pub twist: TwistElement,
    u: AlgebraElement,
    u_inv: AlgebraElement,
}

impl TwistedHopf {
    pub fn new(twist: TwistElement) -> Result<Self, PbwError> {
        let base = HopfStructure::standard(twist.presentation(), twist.order());
        // u = sum f1 S(f2)
        let u = base.antipode_at(&twist.value, 1).multiply_out();
        let u_inv = u.inverse()?;
        Ok(TwistedHopf {
            base,
            twist,
            u,
            u_inv,
        })
    }

    pub fn presentation(&self) -> Presentation {
        self.base.presentation()
    }

    pub fn order(&self) -> u32 {
        self.base.order()
    }

    /// Twisted coproduct of a degree-1 element.
    pub fn coproduct(&self, x: &AlgebraElement) -> Result<AlgebraElement, PbwError> {
        let d = self.base.coproduct(x)?;
        Ok(self.twist.value.conjugate(&d, &self.twist.inverse))
    }

    /// Twisted coproduct on slot 0 or 1 of a degree-2 element.
    pub fn coproduct_at(&self, x: &AlgebraElement, slot: usize) -> AlgebraElement {
        let legs: &[usize] = if slot == 0 { &[0, 1] } else { &[1, 2] };
        let f = self.twist.value.place(3, legs);
        let fi = self.twist.inverse.place(3, legs);
        f.conjugate(&self.base.coproduct_at(x, slot), &fi)
    }

    /// `u S(a) u^{-1}` on a degree-1 element.
    pub fn antipode(&self, x: &AlgebraElement) -> Result<AlgebraElement, PbwError> {
        Ok(self.u.conjugate(&self.base.antipode(x)?, &self.u_inv))
    }

    pub fn antipode_at(&self, x: &AlgebraElement, slot: usize) -> AlgebraElement {
        let (p, n) = (self.presentation(), self.order());
        let s = self.base.antipode_at(x, slot);
        let mut legs_u = [AlgebraElement::one(p, 1, n), AlgebraElement::one(p, 1, n)];
        let mut legs_ui = legs_u.clone();
        legs_u[slot] = self.u.clone();
        legs_ui[slot] = self.u_inv.clone();
        let u2 = legs_u[0].tensor(&legs_u[1]);
        let ui2 = legs_ui[0].tensor(&legs_ui[1]);
        u2.conjugate(&s, &ui2)
    }
}

/// `F D(x) F^{-1}` for the standard coproduct.
pub fn apply_twist(f: &TwistElement, x: &AlgebraElement) -> Result<AlgebraElement, PbwError> {
    let base = HopfStructure::standard(f.presentation(), f.order());
    Ok(f.value.conjugate(&base.coproduct(x)?, &f.inverse))
}

const AXIOM_ANCHOR: &str = "The twisting element has to satisfy the equations";
const FACTOR_ANCHOR: &str = "satisfies the factorized twist equations";

/// Counit condition, cocycle equation and, for factorizable kinds, both
/// factorized equations.
///
/// The canonical Jordanian element is a twist of the classical algebra
/// only, so its identities are compared after setting `h = 0`.
pub fn check_twist_axioms(f: &TwistElement) -> Result<VerificationReport, PbwError> {
    let (p, n) = (f.presentation(), f.order());
    let kind = f.kind;
    let classical = kind == TwistKind::CanonicalJordanian;
    let proj = |x: AlgebraElement| if classical { x.at_h_zero() } else { x };
    let id = |s: &str| alloc::format!("twist.{}.{}.{}", p.name(), kind.name(), s);
    let mut r = VerificationReport::new("twist-axioms");
    let base = HopfStructure::standard(p, n);
    let one = AlgebraElement::one(p, 1, n);
    let v = &f.value;
    r.push(residual_check(
        &id("counit-left"),
        AXIOM_ANCHOR,
        &counit_at(v, 0),
        &one,
    ));
    r.push(residual_check(
        &id("counit-right"),
        AXIOM_ANCHOR,
        &counit_at(v, 1),
        &one,
    ));
    r.push(residual_check(
        &id("inverse"),
        AXIOM_ANCHOR,
        &v.mul(&f.inverse),
        &AlgebraElement::one(p, 2, n),
    ));
    let f12 = v.place(3, &[0, 1]);
    let f23 = v.place(3, &[1, 2]);
    let d1 = base.coproduct_at(v, 0);
    let d2 = base.coproduct_at(v, 1);
    let lhs = proj(f12.mul(&d1));
    let rhs = proj(f23.mul(&d2));
    r.push(residual_check(&id("cocycle"), kind.anchor(), &lhs, &rhs));
    if kind.factorizable() {
        let f13 = v.place(3, &[0, 2]);
        r.push(residual_check(
            &id("factorized-left"),
            FACTOR_ANCHOR,
            &proj(d1),
            &proj(f13.mul(&f23)),
        ));
        let tw = TwistedHopf::new(f.clone())?;
        let dt = tw.coproduct_at(v, 1);
        r.push(residual_check(
            &id("factorized-right"),
            FACTOR_ANCHOR,
            &proj(dt),
            &proj(f12.mul(&f13)),
        ));
    }
    if matches!(kind, TwistKind::TildeQJ | TwistKind::QJ) {
        let so = build_sigma_omega(p, n)?;
        let g = if kind == TwistKind::TildeQJ {
            so.sigma
        } else {
            so.omega
        }
        .exp()?;
        let anchor = if kind == TwistKind::TildeQJ {
            "σ becomes primitive with respect to the deformed coproduct"
        } else {
            "Δ_qJ(e^ω) = e^ω ⊗ e^ω"
        };
        r.push(residual_check(
            &id("grouplike"),
            anchor,
            &apply_twist(f, &g)?,
            &g.tensor(&g),
        ));
    }
    Ok(r)
}

const HOPF_ANCHOR: &str = "conjugating Δ by F yields a new Hopf algebra";

/// Coassociativity and both antipode axioms of the twisted structure on
/// the generators.
pub fn check_twisted_hopf(tw: &TwistedHopf) -> Result<VerificationReport, PbwError> {
    let (p, n) = (tw.presentation(), tw.order());
    let label = alloc::format!("twisted-hopf.{}.{}", p.name(), tw.twist.kind.name());
    let mut r = VerificationReport::new("twist-axioms");
    let mut samples: Vec<(String, AlgebraElement)> = p
        .generators()
        .iter()
        .map(|g| {
            (
                String::from(g.symbol()),
                AlgebraElement::generator(p, *g, n).expect("own generator"),
            )
        })
        .collect();
    samples.push((String::from("e^w"), build_sigma_omega(p, n)?.omega.exp()?));
    for (name, x) in &samples {
        let d = tw.coproduct(x)?;
        let lhs = tw.coproduct_at(&d, 0);
        let rhs = tw.coproduct_at(&d, 1);
        r.push(residual_check(
            &alloc::format!("{label}.coassoc.{name}"),
            HOPF_ANCHOR,
            &lhs,
            &rhs,
        ));
        let unit = AlgebraElement::scalar(p, 1, crate::pbw::counit(x));
        let s1 = tw.antipode_at(&d, 0).multiply_out();
        let s2 = tw.antipode_at(&d, 1).multiply_out();
        r.push(residual_check(
            &alloc::format!("{label}.antipode-left.{name}"),
            HOPF_ANCHOR,
            &s1,
            &unit,
        ));
        r.push(residual_check(
            &alloc::format!("{label}.antipode-right.{name}"),
            HOPF_ANCHOR,
            &s2,
            &unit,
        ));
    }
    Ok(r)
}

/// All twist kinds in both presentations, the negative control, and the
/// twisted Hopf structure of `F_qJ`.
pub fn verify_twist_axioms(order: u32) -> Result<VerificationReport, PbwError> {
    let mut r = VerificationReport::new("twist-axioms");
    r.param("order", alloc::format!("{order}"));
    for kind in TwistKind::TWISTS {
        r.extend(check_twist_axioms(&build_twist(
            kind,
            Presentation::Borel,
            order,
        )?)?);
    }
    let qj = build_twist(TwistKind::QJ, Presentation::Sl2, order)?;
    r.extend(check_twisted_hopf(&TwistedHopf::new(qj)?)?);
    r.sort();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::pbw::{normal_order, Word};

    const B: Presentation = Presentation::Borel;

    #[test]
    fn sigma_and_omega_to_first_order() {
        let so = build_sigma_omega(B, 1).unwrap();
        let h = AlgebraElement::h(B, 1).scale(&TruncSeries::h(1));
        let e = AlgebraElement::carrier_e(B, 1).scale(&TruncSeries::xi(1));
        assert_eq!(so.sigma, h.add(&e));
        assert_eq!(so.omega, h.add(&e));
    }

    #[test]
    fn sigma_limits() {
        let so = build_sigma_omega(B, 4).unwrap();
        let h = AlgebraElement::h(B, 4).scale(&TruncSeries::h(4));
        assert_eq!(so.sigma.at_xi_zero(), h);
        // ln(1 + xi E) = xi E - xi^2 E^2 / 2 + ...
        let s0 = so.sigma.at_h_zero();
        let e2 = [Word::new(2, 0, 0), Word::ONE, Word::ONE];
        assert_eq!(s0.coeff(&e2), TruncSeries::monomial(rat(-1, 2), 0, 2, 4));
        assert_eq!(
            so.omega.exp().unwrap(),
            normal_order("E", B, 4)
                .unwrap()
                .scale(&TruncSeries::xi(4))
                .add(&AlgebraElement::one(B, 1, 4))
                .mul(&exp_h_h(B, 1, 4))
        );
    }

    #[test]
    fn twist_limits() {
        let fqj = build_twist(TwistKind::QJ, B, 3).unwrap();
        assert_eq!(fqj.value.at_xi_zero(), AlgebraElement::one(B, 2, 3));
        let fcj = build_twist(TwistKind::CanonicalJordanian, B, 3).unwrap();
        assert_eq!(fqj.value.at_h_zero(), fcj.value);
        let ft = build_twist(TwistKind::TildeQJ, B, 3).unwrap();
        let fr = build_twist(TwistKind::Reshetikhin, B, 3).unwrap();
        assert_eq!(ft.value.at_xi_zero(), fr.value);
    }

    #[test]
    fn geometric_inverse_example() {
        let h = AlgebraElement::h(B, 2);
        let e = AlgebraElement::carrier_e(B, 2);
        let y = h.tensor(&e).scale(&TruncSeries::xi(2));
        let x = AlgebraElement::one(B, 2, 2).add(&y);
        let expect = AlgebraElement::one(B, 2, 2).sub(&y).add(
            &h.mul(&h)
                .tensor(&e.mul(&e))
                .scale(&TruncSeries::monomial(int(1), 0, 2, 2)),
        );
        assert_eq!(invert_tensor_element(&x).unwrap(), expect);
        assert!(invert_tensor_element(&AlgebraElement::zero(B, 2, 2)).is_err());
    }

    #[test]
    fn trivial_twist_leaves_coproduct() {
        let one = TwistElement::from_value(TwistKind::QJ, AlgebraElement::one(B, 2, 3)).unwrap();
        let h = AlgebraElement::h(B, 3);
        assert_eq!(
            apply_twist(&one, &h).unwrap(),
            crate::pbw::coproduct_std(&h).unwrap()
        );
    }

    #[test]
    fn control_fails_cocycle_at_degree_two() {
        let c = build_twist(TwistKind::Control, B, 3).unwrap();
        let r = check_twist_axioms(&c).unwrap();
        let cc = r.get("twist.borel.control.cocycle").unwrap();
        assert!(!cc.passed());
        assert!(cc.residual == "nonzero at h^1 xi^1" || cc.residual == "nonzero at h^0 xi^2");
        assert!(r.get("twist.borel.control.counit-left").unwrap().passed());
    }
}
