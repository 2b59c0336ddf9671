use alloc::vec::Vec;

use super::spow;
use crate::coeff::{factorial, RatFun, Scalar, Var, ZSeries};
use crate::rep::{RepError, RepMatrix};
use crate::report::Check;

/// Reading of the q-bracket `[a, b]_q = ab - c ba` in the composite-root
/// recursion for labels with pairing `(mu, nu)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bracket {
    /// `c = q^{(mu, nu)}`.
    Half,
    /// `c = e^{h (mu, nu)} = q^{2 (mu, nu)}`, the q-adjoint factor.
    Literal,
}

/// Positive root vectors in one evaluation factor, built from the rescaled
/// generators `e_{lambda_0} -> e21`, `e_{lambda_1} -> z e12`.
#[derive(Clone, Debug)]
pub struct RootVectors<S> {
    /// `e'_{lambda_0 + n delta}`, `n = 0..=n_max`.
    pub real0: Vec<RepMatrix<S>>,
    /// `e'_{lambda_1 + n delta}`.
    pub real1: Vec<RepMatrix<S>>,
    /// `e'_{n delta}` at index `n - 1`.
    pub imag_primed: Vec<RepMatrix<S>>,
    /// `e_{n delta}` at index `n - 1`.
    pub imag: Vec<RepMatrix<S>>,
}

fn kappa<S: Scalar>(q: &S) -> Result<S, RepError> {
    Ok(q.times(q).minus(&spow(q, -2)?))
}

pub fn build_root_vectors<S: Scalar>(
    q: &S,
    z: &S,
    n_max: usize,
    bracket: Bracket,
) -> Result<RootVectors<S>, RepError> {
    let e0 = RepMatrix::unit(2, 1, 0, S::one_s());
    let e1 = RepMatrix::unit(2, 0, 1, z.clone());
    let two_inv = q.plus(&q.inverse()?).inverse()?;
    let pair = super::CARTAN[0][1];
    let c = match bracket {
        Bracket::Half => spow(q, pair)?,
        Bracket::Literal => spow(q, 2 * pair)?,
    };
    let qb = |a: &RepMatrix<S>, b: &RepMatrix<S>| a.mul(b).sub(&b.mul(a).scale(&c)).scale(&two_inv);
    let ed = qb(&e0, &e1);
    let mut real0 = alloc::vec![e0];
    let mut real1 = alloc::vec![e1.clone()];
    let mut imag_primed = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        imag_primed.push(qb(&real0[n - 1], &e1));
        real0.push(ed.commutator(&real0[n - 1]).neg());
        real1.push(ed.commutator(&real1[n - 1]));
    }
    let imag = schur_invert(&imag_primed, q)?;
    Ok(RootVectors {
        real0,
        real1,
        imag_primed,
        imag,
    })
}

/// Solves `1 + kappa sum e'_n u^n = exp(kappa sum e_n u^n)` for diagonal
/// `e'_n`, one diagonal entry at a time.
fn schur_invert<S: Scalar>(primed: &[RepMatrix<S>], q: &S) -> Result<Vec<RepMatrix<S>>, RepError> {
    let n_max = primed.len();
    let k = kappa(q)?;
    let ki = k.inverse()?;
    let mut out = alloc::vec![RepMatrix::zero(2); n_max];
    for m in primed {
        if !m.get(0, 1).is_zero_s() || !m.get(1, 0).is_zero_s() {
            return Err(RepError::NotDiagonal);
        }
    }
    for i in 0..2 {
        let mut cs = alloc::vec![S::one_s()];
        cs.extend(primed.iter().map(|m| m.get(i, i).times(&k)));
        let g = ZSeries::from_coeffs(cs, n_max + 1).log()?;
        for n in 1..=n_max {
            out[n - 1].set(i, i, g.coeff(n).times(&ki));
        }
    }
    Ok(out)
}

/// `sum_{p_1 + 2 p_2 + ... = n} kappa^{sum p - 1} / (p_1! ...) e_1^{p_1} ...`,
/// the primed imaginary vector expressed through the unprimed ones.
pub fn schur_forward<S: Scalar>(
    imag: &[RepMatrix<S>],
    q: &S,
    n: usize,
) -> Result<RepMatrix<S>, RepError> {
    let k = kappa(q)?;
    let mut acc = RepMatrix::zero(imag[0].dim());
    let mut mult = alloc::vec![0u32; n + 1];
    partitions(n, n, &mut mult, &mut |mult| {
        let parts: u32 = mult.iter().sum();
        let mut term = RepMatrix::identity(imag[0].dim());
        let mut denom = crate::coeff::int(1);
        for (j, &pj) in mult.iter().enumerate().skip(1) {
            if pj > 0 {
                term = term.mul(&imag[j - 1].pow(pj));
                denom *= factorial(pj);
            }
        }
        let c = spow(&k, parts as i64 - 1)
            .expect("kappa is invertible")
            .times(&S::from_q(denom.recip()));
        acc = acc.add(&term.scale(&c));
    });
    Ok(acc)
}

fn partitions(rest: usize, max: usize, mult: &mut [u32], f: &mut dyn FnMut(&[u32])) {
    if rest == 0 {
        f(mult);
        return;
    }
    for part in (1..=max.min(rest)).rev() {
        mult[part] += 1;
        partitions(rest - part, part, mult, f);
        mult[part] -= 1;
    }
}

/// `m = z^k m0` with `m0` free of `z`; returns `m0`.
fn strip_z(m: &RepMatrix, k: i64) -> Result<Option<RepMatrix>, RepError> {
    let m0 = m.scale(&RatFun::z().pow(-k)?);
    let free = m0
        .entries()
        .iter()
        .all(|x| x.numer().degree_in(Var::Z) == 0 && x.denom().degree_in(Var::Z) == 0);
    Ok(free.then_some(m0))
}

const ROOT_ANCHOR: &str = "generators for composite roots are obtained";
const SCHUR_ANCHOR: &str = "defined by means of the Schur polynomials";

/// z-grading of every root vector and the Schur identities, with symbolic
/// `p` and `z`.
pub fn check_root_vectors(n_max: usize) -> Result<Vec<Check>, RepError> {
    let q = &RatFun::p() * &RatFun::p();
    let rv = build_root_vectors(&q, &RatFun::z(), n_max, Bracket::Half)?;
    let mut out = Vec::new();
    let mut grade = |id: alloc::string::String, m: &RepMatrix, k: usize| -> Result<(), RepError> {
        let s = strip_z(m, k as i64)?;
        let mut c = Check::exact(
            &id,
            ROOT_ANCHOR,
            s.as_ref().is_some_and(|m0| !m0.is_zero()),
            || alloc::format!("not z^{k} times a z-free nonzero matrix"),
        );
        if let Some(m0) = s {
            let nz = m0
                .entries()
                .iter()
                .find(|x| !x.is_zero())
                .cloned()
                .unwrap_or_else(RatFun::zero);
            c.derived = Some(nz.to_canonical());
        }
        out.push(c);
        Ok(())
    };
    for n in 0..=n_max {
        grade(
            alloc::format!("affine.roots.z-grading.l0+{n}d"),
            &rv.real0[n],
            n,
        )?;
        grade(
            alloc::format!("affine.roots.z-grading.l1+{n}d"),
            &rv.real1[n],
            n + 1,
        )?;
        if n >= 1 {
            grade(
                alloc::format!("affine.roots.z-grading.{n}d-primed"),
                &rv.imag_primed[n - 1],
                n,
            )?;
            grade(
                alloc::format!("affine.roots.z-grading.{n}d"),
                &rv.imag[n - 1],
                n,
            )?;
        }
    }
    out.push(Check::exact(
        "affine.roots.schur.1",
        SCHUR_ANCHOR,
        rv.imag[0] == rv.imag_primed[0],
        || alloc::string::String::from("e_d differs from e'_d"),
    ));
    if n_max >= 2 {
        let k = kappa(&q)?;
        let e2 =
            rv.imag_primed[1].sub(&rv.imag[0].pow(2).scale(&k.scale(&crate::coeff::rat(1, 2))));
        out.push(Check::exact(
            "affine.roots.schur.2",
            SCHUR_ANCHOR,
            e2 == rv.imag[1],
            || alloc::string::String::from("e_2d differs from e'_2d - kappa/2 e_d^2"),
        ));
    }
    for n in 1..=n_max {
        let f = schur_forward(&rv.imag, &q, n)?;
        out.push(Check::exact(
            &alloc::format!("affine.roots.schur-forward.{n}"),
            SCHUR_ANCHOR,
            f == rv.imag_primed[n - 1],
            || alloc::string::String::from("partition sum differs from e'_nd"),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, rat, Q};

    #[test]
    fn partitions_of_four() {
        let mut count = 0;
        let mut mult = alloc::vec![0u32; 5];
        partitions(4, 4, &mut mult, &mut |m| {
            assert_eq!((1..5).map(|j| j as u32 * m[j]).sum::<u32>(), 4);
            count += 1;
        });
        assert_eq!(count, 5);
    }

    #[test]
    fn schur_round_trip_over_rationals() {
        let q = int(3);
        let rv = build_root_vectors(&q, &rat(1, 5), 4, Bracket::Half).unwrap();
        for n in 1..=4 {
            assert_eq!(
                schur_forward(&rv.imag, &q, n).unwrap(),
                rv.imag_primed[n - 1]
            );
        }
        let e: &RepMatrix<Q> = &rv.imag[0];
        assert_eq!(e, &rv.imag_primed[0]);
    }

    #[test]
    fn root_vector_checks_pass() {
        for c in check_root_vectors(3).unwrap() {
            assert!(c.passed(), "{} {}", c.id, c.residual);
        }
    }
}
