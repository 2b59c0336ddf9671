//! Quantum affine sl(2) in the level-zero evaluation representation:
//! relations, composite root vectors, the truncated universal R-matrix,
//! its Jordanian twist and the twisted coproducts.

mod coproduct;
mod rmatrix;
mod roots;

use alloc::vec::Vec;

pub use coproduct::{affine_twisted_coproduct, check_affine_coproducts, AffineCoproduct};
pub use rmatrix::{
    affine_twist_image, build_affine_r, build_affine_twisted_r, check_affine_limits,
    convergence_table, ratfun_to_zseries, series_projective, verify_affine_r, AffineRBuild,
    ConvergenceRow, ImagNorm, ProductOrder, SeriesProjective,
};
pub use roots::{build_root_vectors, check_root_vectors, schur_forward, Bracket, RootVectors};

use crate::coeff::{rat, RatFun, Scalar};
use crate::rep::{RepError, RepMatrix};
use crate::report::{Check, VerificationReport};

/// Cartan matrix `[(lambda_i, lambda_j)]`.
pub const CARTAN: [[i64; 2]; 2] = [[2, -2], [-2, 2]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AffineGenerator {
    H0,
    H1,
    /// `E_{lambda_0}`.
    E0,
    /// `E_{-lambda_0}`.
    F0,
    /// `E_{lambda_1}`.
    E1,
    /// `E_{-lambda_1}`.
    F1,
    D,
}

impl AffineGenerator {
    pub const NON_D: [AffineGenerator; 6] = [
        AffineGenerator::H0,
        AffineGenerator::H1,
        AffineGenerator::E0,
        AffineGenerator::F0,
        AffineGenerator::E1,
        AffineGenerator::F1,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            AffineGenerator::H0 => "H0",
            AffineGenerator::H1 => "H1",
            AffineGenerator::E0 => "E0",
            AffineGenerator::F0 => "Em0",
            AffineGenerator::E1 => "E1",
            AffineGenerator::F1 => "Em1",
            AffineGenerator::D => "D",
        }
    }

    fn raising(i: usize) -> Self {
        [AffineGenerator::E0, AffineGenerator::E1][i]
    }

    fn lowering(i: usize) -> Self {
        [AffineGenerator::F0, AffineGenerator::F1][i]
    }

    fn cartan(i: usize) -> Self {
        [AffineGenerator::H0, AffineGenerator::H1][i]
    }
}

/// Where the spectral parameter sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Grading {
    /// `E_{lambda_0} -> z E-`, `E_{-lambda_0} -> z^-1 E+`.
    A,
    /// `E_{lambda_1} -> z E+`, `E_{-lambda_1} -> z^-1 E-`; conjugate to
    /// `A` by `diag(1, z)`.
    B,
}

impl Grading {
    pub fn name(self) -> &'static str {
        match self {
            Grading::A => "A",
            Grading::B => "B",
        }
    }
}

/// Root labels `lambda_i + n delta` and `n delta`, with the pairing
/// extended from the Cartan matrix and `(delta, .) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootLabel {
    Real { i: usize, n: u32 },
    Imag(u32),
}

impl RootLabel {
    pub fn pair(self, o: RootLabel) -> i64 {
        match (self, o) {
            (RootLabel::Real { i, .. }, RootLabel::Real { i: j, .. }) => CARTAN[i][j],
            _ => 0,
        }
    }
}

pub(crate) fn spow<S: Scalar>(x: &S, k: i64) -> Result<S, RepError> {
    let base = if k < 0 { x.inverse()? } else { x.clone() };
    let mut acc = S::one_s();
    for _ in 0..k.unsigned_abs() {
        acc = acc.times(&base);
    }
    Ok(acc)
}

/// `a b - base^{2 (mu, nu)} b a`. With `base = q` this is the q-adjoint
/// action `ab - e^{h(mu,nu)} ba`.
pub fn q_adjoint<S: Scalar>(
    a: &RepMatrix<S>,
    mu: RootLabel,
    b: &RepMatrix<S>,
    nu: RootLabel,
    base: &S,
) -> Result<RepMatrix<S>, RepError> {
    q_bracket(a, b, mu.pair(nu), base)
}

/// `a b - base^{2 pair} b a`.
pub fn q_bracket<S: Scalar>(
    a: &RepMatrix<S>,
    b: &RepMatrix<S>,
    pair: i64,
    base: &S,
) -> Result<RepMatrix<S>, RepError> {
    let c = spow(base, 2 * pair)?;
    Ok(a.mul(b).sub(&b.mul(a).scale(&c)))
}

fn p() -> RatFun {
    RatFun::p()
}

fn q() -> RatFun {
    &p() * &p()
}

/// Image of a generator with spectral parameter `z` and `q = p^2`.
pub fn eval_rep_affine(
    g: AffineGenerator,
    z: &RatFun,
    grading: Grading,
) -> Result<RepMatrix, RepError> {
    let half = RatFun::constant(rat(1, 2));
    let h1 = RepMatrix::diag(alloc::vec![half.clone(), -&half]);
    let zi = z.inv()?;
    let (z0, z0i, z1, z1i) = match grading {
        Grading::A => (z.clone(), zi, RatFun::one(), RatFun::one()),
        Grading::B => (RatFun::one(), RatFun::one(), z.clone(), zi),
    };
    Ok(match g {
        AffineGenerator::H1 => h1,
        AffineGenerator::H0 => h1.neg(),
        AffineGenerator::E0 => RepMatrix::unit(2, 1, 0, &p() * &z0),
        AffineGenerator::F0 => RepMatrix::unit(2, 0, 1, &p() * &z0i),
        AffineGenerator::E1 => RepMatrix::unit(2, 0, 1, &p() * &z1),
        AffineGenerator::F1 => RepMatrix::unit(2, 1, 0, &p() * &z1i),
        AffineGenerator::D => return Err(RepError::NoImage("D")),
    })
}

/// `d(e^{c h H_i})`.
pub fn exp_h_affine(i: usize, c: i64) -> RepMatrix {
    let s = if i == 0 { -c } else { c };
    let a = q().pow(s).expect("nonzero");
    RepMatrix::diag(alloc::vec![a.clone(), a.inv().expect("nonzero")])
}

const REL_ANCHOR: &str = "D and the relations";
const SERRE_ANCHOR: &str = "(ad_q E±λᵢ)^{1−aᵢⱼ}∘E±λⱼ = 0";

/// Every relation not involving `D` in the evaluation representation with
/// symbolic `p` and `z`.
pub fn check_affine_relations(grading: Grading) -> Result<Vec<Check>, RepError> {
    let z = RatFun::z();
    let prefix = alloc::format!("affine.relations.{}", grading.name());
    relation_checks(&prefix, &|g| eval_rep_affine(g, &z, grading), &|i, c| {
        Ok(exp_h_affine(i, c))
    })
}

/// The relations for arbitrary images of the generators and of `e^{c h H_i}`.
pub(crate) fn relation_checks(
    prefix: &str,
    img: &dyn Fn(AffineGenerator) -> Result<RepMatrix, RepError>,
    exph: &dyn Fn(usize, i64) -> Result<RepMatrix, RepError>,
) -> Result<Vec<Check>, RepError> {
    let id = |s: &str| alloc::format!("{prefix}.{s}");
    let mut out = Vec::new();
    let den = (&RatFun::one() - &q().pow(-2)?).inv()?;
    for i in 0..2 {
        let hi = img(AffineGenerator::cartan(i))?;
        let dim = hi.dim();
        for j in 0..2 {
            let half_a = RatFun::constant(rat(CARTAN[i][j], 2));
            let e = img(AffineGenerator::raising(j))?;
            let f = img(AffineGenerator::lowering(j))?;
            out.push(exact(
                &id(&alloc::format!("H{i}-E{j}")),
                REL_ANCHOR,
                hi.commutator(&e),
                e.scale(&half_a),
            ));
            out.push(exact(
                &id(&alloc::format!("H{i}-Em{j}")),
                REL_ANCHOR,
                hi.commutator(&f),
                f.scale(&-&half_a),
            ));
            let hj = img(AffineGenerator::cartan(j))?;
            out.push(exact(
                &id(&alloc::format!("H{i}-H{j}")),
                REL_ANCHOR,
                hi.commutator(&hj),
                RepMatrix::zero(dim),
            ));
            let ei = img(AffineGenerator::raising(i))?;
            let rhs = if i == j {
                exph(i, 1)?.sub(&exph(i, -1)?).scale(&den)
            } else {
                RepMatrix::zero(dim)
            };
            out.push(exact(
                &id(&alloc::format!("E{i}-Em{j}")),
                REL_ANCHOR,
                ei.commutator(&f),
                rhs,
            ));
            if i != j {
                for (sign, gi, gj) in [
                    (
                        "+",
                        AffineGenerator::raising(i),
                        AffineGenerator::raising(j),
                    ),
                    (
                        "-",
                        AffineGenerator::lowering(i),
                        AffineGenerator::lowering(j),
                    ),
                ] {
                    let a = img(gi)?;
                    let mut b = img(gj)?;
                    // After k steps b carries (k lambda_i + lambda_j).
                    for k in 0..(1 - CARTAN[i][j]) {
                        b = q_bracket(&a, &b, k * CARTAN[i][i] + CARTAN[i][j], &q())?;
                    }
                    out.push(exact(
                        &id(&alloc::format!("serre{sign}{i}{j}")),
                        SERRE_ANCHOR,
                        b,
                        RepMatrix::zero(dim),
                    ));
                }
            }
        }
    }
    Ok(out)
}

pub(crate) fn exact(id: &str, anchor: &str, lhs: RepMatrix, rhs: RepMatrix) -> Check {
    let diff = lhs.sub(&rhs);
    Check::exact(id, anchor, diff.is_zero(), || {
        let k = diff
            .entries()
            .iter()
            .position(|x| !x.is_zero())
            .unwrap_or(0);
        alloc::format!(
            "entry ({}, {}) = {}",
            k / diff.dim(),
            k % diff.dim(),
            diff.entries()[k]
        )
    })
}

/// Both gradings give conjugate images: `d_A(x) = C d_B(x) C^{-1}` with
/// `C = diag(1, z)`.
pub fn check_grading_conjugation() -> Result<Vec<Check>, RepError> {
    let z = RatFun::z();
    let c = RepMatrix::diag(alloc::vec![RatFun::one(), z.clone()]);
    let ci = c.inverse()?;
    let mut out = Vec::new();
    for g in AffineGenerator::NON_D {
        let a = eval_rep_affine(g, &z, Grading::A)?;
        let b = eval_rep_affine(g, &z, Grading::B)?;
        out.push(exact(
            &alloc::format!("affine.grading.conjugate.{}", g.symbol()),
            "the standard level-zero evaluation representation",
            a,
            c.mul(&b).mul(&ci),
        ));
    }
    Ok(out)
}

/// Default suite: relations in both gradings, root vectors, the R-matrix
/// against the hybrid matrix and the twisted coproducts.
pub fn verify_affine(
    n_max: usize,
    z_value: &crate::coeff::Q,
) -> Result<VerificationReport, RepError> {
    let mut r = VerificationReport::new("affine");
    r.param("nmax", alloc::format!("{n_max}"));
    r.param("z", crate::coeff::fmt_q(z_value));
    for g in [Grading::A, Grading::B] {
        for c in check_affine_relations(g)? {
            r.push(c);
        }
    }
    for c in check_grading_conjugation()? {
        r.push(c);
    }
    for c in check_root_vectors(n_max.min(4))? {
        r.push(c);
    }
    r.extend(verify_affine_r(n_max, z_value)?);
    for c in check_affine_coproducts()? {
        r.push(c);
    }
    r.sort();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_in_both_gradings() {
        for g in [Grading::A, Grading::B] {
            let cs = check_affine_relations(g).unwrap();
            assert!(cs.len() >= 16);
            for c in cs {
                assert!(c.passed(), "{} {}", c.id, c.residual);
            }
        }
    }

    #[test]
    fn d_has_no_image() {
        assert_eq!(
            eval_rep_affine(AffineGenerator::D, &RatFun::z(), Grading::A),
            Err(RepError::NoImage("D"))
        );
    }

    #[test]
    fn q_adjoint_with_zero_pairing_is_commutator() {
        let a = eval_rep_affine(AffineGenerator::E1, &RatFun::z(), Grading::A).unwrap();
        let b = eval_rep_affine(AffineGenerator::H1, &RatFun::z(), Grading::A).unwrap();
        let c = q_adjoint(
            &a,
            RootLabel::Imag(1),
            &b,
            RootLabel::Real { i: 1, n: 0 },
            &q(),
        )
        .unwrap();
        assert_eq!(c, a.commutator(&b));
    }

    #[test]
    fn gradings_are_conjugate() {
        assert!(check_grading_conjugation()
            .unwrap()
            .iter()
            .all(Check::passed));
    }
}
