//! Truncated universal R-matrices, twisting of R, the classical r-matrix
//! and the classical Yang-Baxter equation.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{apply_twist, TwistElement};
use crate::coeff::{fmt_q, int, rat, TruncSeries, Q};
use crate::pbw::{residual_check, AlgebraElement, HopfStructure, PbwError, Presentation, Word};
use crate::rep::{classical_rep, RepGenerator, RepMatrix};
use crate::report::{Check, VerificationReport};

/// `[n] = (e^{nh/2} - e^{-nh/2}) / (e^{h/2} - e^{-h/2})` as a series.
pub fn q_number(n: u32, order: u32) -> Result<TruncSeries, PbwError> {
    let m = order + 1;
    let half = |k: i64| TruncSeries::h(m).scale(&rat(k, 2)).exp();
    let num = &half(n as i64)? - &half(-(n as i64))?;
    let den = &half(1)? - &half(-1)?;
    Ok(num.div_val(&den)?.truncate(order))
}

/// `R_q = e^{hH(x)H} sum_n (1 - e^{-h})^n / [n]! (E- (x) E+)^n e^{h n(n-1)/4}`.
pub fn build_r_std(order: u32) -> Result<AlgebraElement, PbwError> {
    let p = Presentation::Sl2;
    let em = AlgebraElement::word(p, Word::new(1, 0, 0), order);
    let ep = AlgebraElement::word(p, Word::new(0, 0, 1), order);
    let x = em.tensor(&ep);
    let c = &TruncSeries::one(order) - &TruncSeries::h(order).scale(&int(-1)).exp()?;
    let mut sum = AlgebraElement::one(p, 2, order);
    let mut fact = TruncSeries::one(order);
    let mut xn = AlgebraElement::one(p, 2, order);
    for n in 1..=order {
        fact = &fact * &q_number(n, order)?;
        xn = xn.mul(&x);
        let e = TruncSeries::h(order)
            .scale(&rat((n * (n - 1)) as i64, 4))
            .exp()?;
        let coeff = &(&c.pow(n) * &e) * &fact.inverse()?;
        sum = sum.add(&xn.scale(&coeff));
    }
    let h = AlgebraElement::h(p, order);
    let hh = h.scale(&TruncSeries::h(order)).tensor(&h).exp()?;
    Ok(hh.mul(&sum))
}

/// `R_F = F_21 R F^{-1}`.
pub fn twist_r(f: &TwistElement, r: &AlgebraElement) -> AlgebraElement {
    f.value.swap().mul(r).mul(&f.inverse)
}

const QT_ANCHOR: &str = "quasitriangular with the universal R-matrix";

/// `D^op(x) R = R D(x)` for the sl2 generators, with the standard
/// coproduct when `twist` is `None`.
pub fn check_quasitriangularity(
    r: &AlgebraElement,
    twist: Option<&TwistElement>,
    label: &str,
) -> Result<VerificationReport, PbwError> {
    let p = r.presentation();
    let n = r.order();
    let mut out = VerificationReport::new("rmatrix");
    let base = HopfStructure::standard(p, n);
    for g in p.generators() {
        let x = AlgebraElement::generator(p, *g, n)?;
        let d = match twist {
            Some(f) => apply_twist(f, &x)?,
            None => base.coproduct(&x)?,
        };
        out.push(residual_check(
            &alloc::format!("rmatrix.{label}.quasitriangular.{}", g.symbol()),
            QT_ANCHOR,
            &d.swap().mul(r),
            &r.mul(&d),
        ));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassicalGen {
    H,
    EPlus,
    EMinus,
}

impl ClassicalGen {
    pub fn symbol(self) -> &'static str {
        match self {
            ClassicalGen::H => "H",
            ClassicalGen::EPlus => "Ep",
            ClassicalGen::EMinus => "Em",
        }
    }

    fn from_word(w: &Word) -> Option<ClassicalGen> {
        match (w.a, w.b, w.c) {
            (0, 1, 0) => Some(ClassicalGen::H),
            (0, 0, 1) => Some(ClassicalGen::EPlus),
            (1, 0, 0) => Some(ClassicalGen::EMinus),
            _ => None,
        }
    }

    fn rep(self) -> RepMatrix<Q> {
        let g = match self {
            ClassicalGen::H => RepGenerator::H,
            ClassicalGen::EPlus => RepGenerator::EPlus,
            ClassicalGen::EMinus => RepGenerator::EMinus,
        };
        classical_rep(g).expect("classical generator")
    }
}

/// Degree-2 tensor over `{H, E+, E-}` with coefficients polynomial in
/// `zeta` (index = power).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalR {
    pub terms: BTreeMap<(ClassicalGen, ClassicalGen), Vec<Q>>,
}

impl ClassicalR {
    pub fn add_term(&mut self, a: ClassicalGen, b: ClassicalGen, poly: &[Q]) {
        let e = self.terms.entry((a, b)).or_default();
        if e.len() < poly.len() {
            e.resize(poly.len(), Q::zero());
        }
        for (i, c) in poly.iter().enumerate() {
            e[i] += c;
        }
        while e.last().is_some_and(Zero::is_zero) {
            e.pop();
        }
        if e.is_empty() {
            self.terms.remove(&(a, b));
        }
    }

    /// `E+ (x) H - H (x) E+ + zeta (H (x) H + E- (x) E+)`.
    pub fn expected_r_qj() -> Self {
        use ClassicalGen::*;
        let mut r = ClassicalR::default();
        r.add_term(EPlus, H, &[int(1)]);
        r.add_term(H, EPlus, &[int(-1)]);
        r.add_term(H, H, &[int(0), int(1)]);
        r.add_term(EMinus, EPlus, &[int(0), int(1)]);
        r
    }

    /// Coefficients at a rational `zeta`.
    pub fn at_zeta(&self, zeta: &Q) -> ClassicalR {
        let mut r = ClassicalR::default();
        for ((a, b), poly) in &self.terms {
            let mut v = Q::zero();
            let mut pw = int(1);
            for c in poly {
                v += c * &pw;
                pw *= zeta;
            }
            r.add_term(*a, *b, &[v]);
        }
        r
    }

    /// Image in the tensor square of the fundamental representation at a
    /// rational `zeta`.
    pub fn rep(&self, zeta: &Q) -> RepMatrix<Q> {
        let mut m = RepMatrix::zero(4);
        for ((a, b), poly) in &self.at_zeta(zeta).terms {
            m = m.add(&a.rep().kron(&b.rep()).scale(&poly[0]));
        }
        m
    }

    pub fn to_canonical(&self) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), poly)| {
                let cs: Vec<String> = poly
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| match k {
                        0 => fmt_q(c),
                        1 => alloc::format!("{}*zeta", fmt_q(c)),
                        _ => alloc::format!("{}*zeta^{k}", fmt_q(c)),
                    })
                    .collect();
                alloc::format!("({})*{}(x){}", cs.join(" + "), a.symbol(), b.symbol())
            })
            .collect();
        parts.join(" + ")
    }
}

/// Substitutes `h = zeta xi` and reads the `xi^1` coefficient, which must
/// lie in the span of `g (x) g`.
pub fn extract_classical_r(r: &AlgebraElement) -> Result<ClassicalR, PbwError> {
    let mut out = ClassicalR::default();
    for (tw, c) in r.terms() {
        let poly = c.subst_h_symbolic().xi_coeff(1);
        if poly.iter().all(Zero::is_zero) {
            continue;
        }
        match (
            ClassicalGen::from_word(&tw[0]),
            ClassicalGen::from_word(&tw[1]),
        ) {
            (Some(a), Some(b)) => out.add_term(a, b, &poly),
            _ => {
                return Err(PbwError::NotClassical(alloc::format!(
                    "{}(x){}",
                    tw[0].render(r.presentation()),
                    tw[1].render(r.presentation())
                )))
            }
        }
    }
    Ok(out)
}

const CYBE_ANCHOR: &str = "the well known hybrid solution of the classical Yang";

/// `[[r, r]] = [r12, r13] + [r12, r23] + [r13, r23]` in the cube of the
/// fundamental representation.
pub fn check_cybe(r: &ClassicalR, zeta: &Q, id: &str) -> Check {
    let m = r.rep(zeta);
    let (r12, r13, r23) = (m.embed3((0, 1)), m.embed3((0, 2)), m.embed3((1, 2)));
    let s = r12
        .commutator(&r13)
        .add(&r12.commutator(&r23))
        .add(&r13.commutator(&r23));
    Check::exact(id, CYBE_ANCHOR, s.is_zero(), || {
        let k = s.entries().iter().position(|x| !x.is_zero()).unwrap_or(0);
        alloc::format!("entry ({}, {}) = {}", k / 8, k % 8, fmt_q(&s.entries()[k]))
    })
}

/// R-matrix suite of the symbolic tier: quasitriangularity of `R_q` and
/// `R_qJ`, the `xi = 0` limit, the classical r-matrix and CYBE.
pub fn verify_rmatrix(order: u32) -> Result<VerificationReport, PbwError> {
    let p = Presentation::Sl2;
    let mut out = VerificationReport::new("rmatrix");
    out.param("order", alloc::format!("{order}"));
    let rq = build_r_std(order)?;
    let f = super::build_twist(super::TwistKind::QJ, p, order)?;
    let rqj = twist_r(&f, &rq);
    out.extend(check_quasitriangularity(&rq, None, "std")?);
    out.extend(check_quasitriangularity(&rqj, Some(&f), "qj")?);
    out.push(residual_check(
        "rmatrix.qj.xi0",
        "R_qJ^{DJ}(h,0) = R^{DJ}",
        &rqj.at_xi_zero(),
        &rq.at_xi_zero(),
    ));
    let r = extract_classical_r(&rqj)?;
    let expected = ClassicalR::expected_r_qj();
    out.push(Check::exact(
        "rmatrix.qj.classical-r",
        "r_qJ = E₊∧H + ζ(H⊗H + E₋⊗E₊)",
        r == expected,
        || r.to_canonical(),
    ));
    for z in [0, 1, 2, -1] {
        out.push(check_cybe(
            &r,
            &int(z),
            &alloc::format!("rmatrix.qj.cybe.zeta={z}"),
        ));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_two_is_symmetric() {
        let two = q_number(2, 4).unwrap();
        let h2 = |k| TruncSeries::h(4).scale(&rat(k, 2)).exp().unwrap();
        assert_eq!(two, &h2(1) + &h2(-1));
        assert_eq!(q_number(1, 4).unwrap(), TruncSeries::one(4));
    }

    #[test]
    fn r_std_first_order() {
        let p = Presentation::Sl2;
        let r = build_r_std(1).unwrap();
        let h = AlgebraElement::h(p, 1);
        let em = AlgebraElement::word(p, Word::new(1, 0, 0), 1);
        let ep = AlgebraElement::word(p, Word::new(0, 0, 1), 1);
        let t = TruncSeries::h(1);
        let expect = AlgebraElement::one(p, 2, 1)
            .add(&h.tensor(&h).scale(&t))
            .add(&em.tensor(&ep).scale(&t));
        assert_eq!(r, expect);
    }

    #[test]
    fn classical_r_of_r_std() {
        let r = extract_classical_r(&build_r_std(2).unwrap()).unwrap();
        let r1 = r.at_zeta(&int(1));
        let mut e = ClassicalR::default();
        e.add_term(ClassicalGen::H, ClassicalGen::H, &[int(1)]);
        e.add_term(ClassicalGen::EMinus, ClassicalGen::EPlus, &[int(1)]);
        assert_eq!(r1, e);
    }

    #[test]
    fn cybe_controls() {
        let mut hh = ClassicalR::default();
        hh.add_term(ClassicalGen::H, ClassicalGen::H, &[int(1)]);
        assert!(check_cybe(&hh, &int(0), "hh").passed());
        let mut bad = ClassicalR::default();
        bad.add_term(ClassicalGen::EPlus, ClassicalGen::EMinus, &[int(1)]);
        assert!(!check_cybe(&bad, &int(0), "bad").passed());
    }
}
