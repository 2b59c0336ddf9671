use alloc::string::String;
use alloc::vec::Vec;

use super::{eval_rep_affine, exact, exp_h_affine, relation_checks, AffineGenerator, Grading};
use crate::coeff::{rat, RatFun};
use crate::rep::{tri_matrix_funcs, RepError, RepMatrix, TriOp, WeightVector};
use crate::report::Check;

/// Twisted coproduct of one generator in `eval(z1) (x) eval(z2)`.
#[derive(Clone, Debug)]
pub struct AffineCoproduct {
    pub generator: AffineGenerator,
    /// `F Delta(x) F^{-1}`.
    pub twisted: RepMatrix,
    /// The printed right-hand side (times `xi` for `E_{lambda_0}`).
    pub printed: RepMatrix,
    /// Corrected right-hand side where the printed one is a misprint.
    pub derived: Option<RepMatrix>,
    pub times_xi: bool,
}

struct Ctx {
    z1: RatFun,
    z2: RatFun,
    /// `e^{H_0 (x) w}`.
    t: RepMatrix,
    ti: RepMatrix,
    /// `e^{w}` in the first and second factor.
    ew1: RepMatrix,
    ew: RepMatrix,
    f: RepMatrix,
}

fn id2() -> RepMatrix {
    RepMatrix::identity(2)
}

impl Ctx {
    fn new(z1: &RatFun, z2: &RatFun, xi: &RatFun) -> Result<Self, RepError> {
        let exp_w = |z: &RatFun| -> Result<RepMatrix, RepError> {
            let e0 = eval_rep_affine(AffineGenerator::E0, z, Grading::A)?;
            Ok(id2().add(&e0.scale(xi)).mul(&exp_h_affine(0, 1)))
        };
        let ew1 = exp_w(z1)?;
        let ew = exp_w(z2)?;
        let h0 = WeightVector::fundamental().negate();
        let t = tri_matrix_funcs(&ew, &TriOp::WeightedPower(h0.clone()))?;
        let ti = tri_matrix_funcs(&ew, &TriOp::WeightedPower(h0.negate()))?;
        let p = RatFun::p();
        let pi = p.inv()?;
        let k = RepMatrix::diag(alloc::vec![pi.clone(), p.clone(), p, pi]);
        let f = t.mul(&k);
        Ok(Ctx {
            z1: z1.clone(),
            z2: z2.clone(),
            t,
            ti,
            ew1,
            ew,
            f,
        })
    }

    fn d1(&self, g: AffineGenerator) -> Result<RepMatrix, RepError> {
        eval_rep_affine(g, &self.z1, Grading::A)
    }

    fn d2(&self, g: AffineGenerator) -> Result<RepMatrix, RepError> {
        eval_rep_affine(g, &self.z2, Grading::A)
    }

    fn ead(&self, y: &RepMatrix) -> RepMatrix {
        self.t.mul(y).mul(&self.ti)
    }

    fn standard(&self, g: AffineGenerator) -> Result<RepMatrix, RepError> {
        use AffineGenerator::*;
        let (a, b) = (self.d1(g)?, self.d2(g)?);
        Ok(match g {
            H0 | H1 => a.kron(&id2()).add(&id2().kron(&b)),
            E0 | E1 => {
                let i = if g == E0 { 0 } else { 1 };
                a.kron(&id2()).add(&exp_h_affine(i, 1).kron(&b))
            }
            F0 | F1 => {
                let i = if g == F0 { 0 } else { 1 };
                a.kron(&exp_h_affine(i, -1)).add(&id2().kron(&b))
            }
            D => return Err(RepError::NoImage("D")),
        })
    }

    fn twisted(&self, g: AffineGenerator) -> Result<RepMatrix, RepError> {
        Ok(self.f.mul(&self.standard(g)?).mul(&self.f.inverse()?))
    }

    /// Printed and corrected right-hand sides.
    fn forms(&self, g: AffineGenerator) -> Result<(RepMatrix, Option<RepMatrix>), RepError> {
        use AffineGenerator::*;
        let ewi = self.ew.inverse()?;
        let one4 = RepMatrix::identity(4);
        let x1 = |m: &RepMatrix| m.kron(&id2());
        let x2 = |m: &RepMatrix| id2().kron(m);
        // e^{h(H1 + H0)} is the identity at level zero.
        let k10 = exp_h_affine(1, 1).mul(&exp_h_affine(0, 1));
        let k10i = k10.inverse()?;
        Ok(match g {
            H0 | H1 => (x1(&self.d1(g)?).add(&self.ead(&x2(&self.d2(g)?))), None),
            E0 => {
                let km = exp_h_affine(0, -1);
                let gk = self.ead(&km.kron(&km));
                let ww = self.ew1.kron(&self.ew);
                (ww.sub(&gk).sub(&one4), Some(ww.mul(&gk).sub(&one4)))
            }
            F0 => {
                let first = self.d1(g)?.kron(&ewi);
                let a = self.ead(&x2(&self.d2(g)?));
                (
                    first.add(&a),
                    Some(first.add(&x1(&exp_h_affine(0, 1)).mul(&a))),
                )
            }
            E1 => {
                let first = self
                    .d1(g)?
                    .kron(&ewi)
                    .mul(&self.ead(&x2(&exp_h_affine(0, 1))));
                let printed = first.add(&k10.kron(&self.d2(g)?));
                let derived = first.add(&x1(&k10).mul(&self.ead(&x2(&self.d2(g)?))));
                (printed, Some(derived))
            }
            F1 => {
                let first = self.d1(g)?.kron(&self.ew).mul(&self.ead(&x2(&k10i)));
                let printed = first.add(&exp_h_affine(0, -1).kron(&self.d2(g)?));
                let derived =
                    first.add(&x1(&exp_h_affine(0, -1)).mul(&self.ead(&x2(&self.d2(g)?))));
                (printed, Some(derived))
            }
            D => return Err(RepError::NoImage("D")),
        })
    }
}

/// `F Delta(x) F^{-1}` with the standard coproduct, alongside the printed
/// right-hand side, in grading `A` with the twist carried by `E_{lambda_0}`.
pub fn affine_twisted_coproduct(
    g: AffineGenerator,
    z1: &RatFun,
    z2: &RatFun,
    xi: &RatFun,
) -> Result<AffineCoproduct, RepError> {
    let ctx = Ctx::new(z1, z2, xi)?;
    let mut twisted = ctx.twisted(g)?;
    let (printed, derived) = ctx.forms(g)?;
    let times_xi = g == AffineGenerator::E0;
    if times_xi {
        twisted = twisted.scale(xi);
    }
    Ok(AffineCoproduct {
        generator: g,
        twisted,
        printed,
        derived,
        times_xi,
    })
}

const COPRODUCT_ANCHOR: &str = "the deformed coproducts";

fn nonzero_entry(m: &RepMatrix) -> String {
    let k = m.entries().iter().position(|x| !x.is_zero()).unwrap_or(0);
    alloc::format!(
        "entry ({}, {}) = {}",
        k / m.dim(),
        k % m.dim(),
        m.entries()[k]
    )
}

/// Printed coproduct lines against conjugation, the trivial-twist limit and
/// the relations for the twisted images, at `z1 = z`, `z2 = 1/3`.
pub fn check_affine_coproducts() -> Result<Vec<Check>, RepError> {
    let z1 = RatFun::z();
    let z2 = RatFun::constant(rat(1, 3));
    let xi = RatFun::xi();
    let ctx = Ctx::new(&z1, &z2, &xi)?;
    let mut out = Vec::new();
    for g in AffineGenerator::NON_D {
        let c = affine_twisted_coproduct(g, &z1, &z2, &xi)?;
        let id = alloc::format!("affine.coproduct.{}", g.symbol());
        let diff = c.printed.sub(&c.twisted);
        let check = if diff.is_zero() {
            Check::exact(&id, COPRODUCT_ANCHOR, true, String::new)
        } else {
            match &c.derived {
                Some(d) if *d == c.twisted => Check::misprint(
                    &id,
                    COPRODUCT_ANCHOR,
                    nonzero_entry(&diff),
                    c.printed.to_grid(),
                    d.to_grid(),
                ),
                _ => Check::exact(&id, COPRODUCT_ANCHOR, false, || nonzero_entry(&diff)),
            }
        };
        out.push(check);
    }
    let ctx0 = Ctx::new(&z1, &z2, &RatFun::zero())?;
    for g in AffineGenerator::NON_D {
        out.push(exact(
            &alloc::format!("affine.coproduct.xi0.{}", g.symbol()),
            "F_qJ(h,0) = 1⊗1",
            ctx0.twisted(g)?,
            ctx0.standard(g)?,
        ));
    }
    let f = &ctx.f;
    let fi = f.inverse()?;
    let exph = |i: usize, c: i64| -> Result<RepMatrix, RepError> {
        let k = exp_h_affine(i, c);
        Ok(f.mul(&k.kron(&k)).mul(&fi))
    };
    out.extend(relation_checks(
        "affine.coproduct.morphism",
        &|g| ctx.twisted(g),
        &exph,
    )?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_twist_limit_of_h1() {
        let c = affine_twisted_coproduct(
            AffineGenerator::H1,
            &RatFun::z(),
            &RatFun::one(),
            &RatFun::zero(),
        )
        .unwrap();
        let h = eval_rep_affine(AffineGenerator::H1, &RatFun::z(), Grading::A).unwrap();
        assert_eq!(c.twisted, h.kron(&id2()).add(&id2().kron(&h)));
    }

    #[test]
    fn coproduct_checks_pass() {
        for c in check_affine_coproducts().unwrap() {
            assert!(c.passed(), "{} {}", c.id, c.residual);
        }
    }
}
