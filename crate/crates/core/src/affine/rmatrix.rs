use alloc::string::String;
use alloc::vec::Vec;

use super::roots::{build_root_vectors, Bracket};
use super::spow;
use crate::coeff::{fmt_q, rat, RatFun, Scalar, Var, ZSeries, Q};
use crate::rep::{
    build_drm, drm_prefactor, tri_matrix_funcs, RepError, RepMatrix, TriOp, WeightVector,
};
use crate::report::{Check, Status, Table, VerificationReport};

/// Matrix over `z`-series with coefficients in `(p, xi)`.
pub type ZMatrix = RepMatrix<ZSeries<RatFun>>;

/// Arrangement of the factors of the truncated product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductOrder {
    /// `lambda_0 + n delta` ascending, imaginary factor, `lambda_1 + n delta`
    /// descending, `K`.
    Standard,
    /// The two real-root products exchanged.
    Swapped,
    /// Each real-root product run in the opposite direction.
    ReversedWithin,
}

/// Weight of `e_{n delta} (x) e_{-n delta}` in the imaginary exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImagNorm {
    /// `n (q^2 - q^-2)^2 / (q^{2n} - q^{-2n})`.
    Scaled,
    /// `n / (q^{2n} - q^{-2n})`.
    Literal,
}

#[derive(Clone, Debug)]
pub struct AffineRBuild {
    pub n_max: usize,
    pub factors: Vec<ZMatrix>,
    pub product: ZMatrix,
}

fn lift(m: &RepMatrix) -> ZMatrix {
    m.map(|x| ZSeries::constant(x.clone(), 1))
}

fn cst(x: RatFun) -> ZSeries<RatFun> {
    ZSeries::constant(x, 1)
}

/// Truncated product over `n <= n_max` in the tensor square of the
/// evaluation representation, first factor at `z`, second at `1`.
pub fn build_affine_r(
    p: &RatFun,
    n_max: usize,
    prec: usize,
    order: ProductOrder,
    norm: ImagNorm,
    bracket: Bracket,
) -> Result<AffineRBuild, RepError> {
    let q = cst(p * p);
    let z = ZSeries::monomial(RatFun::one(), 1, prec);
    let pos = build_root_vectors(&q, &z, n_max, bracket)?;
    let neg = build_root_vectors(&q.inverse()?, &ZSeries::one_s(), n_max, bracket)?;
    let c = q.minus(&q.inverse()?);
    let id = RepMatrix::identity(4);
    let real = |a: &RepMatrix<ZSeries<RatFun>>, b: &RepMatrix<ZSeries<RatFun>>| {
        id.add(&a.kron(&b.transpose()).scale(&c))
    };
    let mut first: Vec<ZMatrix> = (0..=n_max)
        .map(|n| real(&pos.real0[n], &neg.real0[n]))
        .collect();
    let mut second: Vec<ZMatrix> = (0..=n_max)
        .rev()
        .map(|n| real(&pos.real1[n], &neg.real1[n]))
        .collect();
    if order == ProductOrder::ReversedWithin {
        first.reverse();
        second.reverse();
    }
    let kappa = q.times(&q).minus(&spow(&q, -2)?);
    let mut expo = RepMatrix::<ZSeries<RatFun>>::zero(4);
    for n in 1..=n_max {
        let d = spow(&q, 2 * n as i64)?.minus(&spow(&q, -2 * n as i64)?);
        let mut w = ZSeries::from_q(Q::from_integer((n as i64).into())).times(&d.inverse()?);
        if norm == ImagNorm::Scaled {
            w = w.times(&kappa).times(&kappa);
        }
        expo = expo.add(&pos.imag[n - 1].kron(&neg.imag[n - 1].transpose()).scale(&w));
    }
    let mut imag = RepMatrix::zero(4);
    for k in 0..4 {
        for j in 0..4 {
            if j != k && !expo.get(k, j).is_zero_s() {
                return Err(RepError::NotDiagonal);
            }
        }
        let e = ZSeries::from_coeffs(expo.get(k, k).coeffs().to_vec(), prec).exp()?;
        imag.set(k, k, e);
    }
    let pi = p.inv()?;
    let k = lift(&RepMatrix::diag(alloc::vec![
        p.clone(),
        pi.clone(),
        pi,
        p.clone()
    ]));
    let mut factors = Vec::with_capacity(2 * n_max + 4);
    if order == ProductOrder::Swapped {
        factors.extend(second);
        factors.push(imag);
        factors.extend(first);
    } else {
        factors.extend(first);
        factors.push(imag);
        factors.extend(second);
    }
    factors.push(k);
    let product = factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.mul(f));
    Ok(AffineRBuild {
        n_max,
        factors,
        product,
    })
}

fn h0_weights() -> WeightVector {
    WeightVector::fundamental().negate()
}

/// `d(e^{omega_0}) = (1 + xi E_{lambda_0}) e^{h H_0}` with `E_{lambda_0} -> p e21`.
fn exp_omega0(p: &RatFun, xi: &RatFun) -> Result<RepMatrix, RepError> {
    let q = p * p;
    let qi = q.inv()?;
    Ok(RepMatrix::from_rows(alloc::vec![
        alloc::vec![qi.clone(), RatFun::zero()],
        alloc::vec![&(p * xi) * &qi, q],
    ]))
}

/// `d(e^{c h H_0 (x) H_0}) = diag(p^c, p^-c, p^-c, p^c)`.
fn exp_h0h0(p: &RatFun, c: i64) -> Result<RepMatrix, RepError> {
    let a = p.pow(c)?;
    let b = a.inv()?;
    Ok(RepMatrix::diag(alloc::vec![a.clone(), b.clone(), b, a]))
}

/// `d(e^{H_0 (x) omega_0} e^{-h H_0 (x) H_0})`.
pub fn affine_twist_image(p: &RatFun, xi: &RatFun) -> Result<RepMatrix, RepError> {
    let w = tri_matrix_funcs(&exp_omega0(p, xi)?, &TriOp::WeightedPower(h0_weights()))?;
    Ok(w.mul(&exp_h0h0(p, -1)?))
}

/// `M^{1/2} = [[1/p, 0], [c/(p + 1/p), p]]`, `c = p xi / q`.
fn sqrt_omega0_closed(p: &RatFun, xi: &RatFun) -> Result<RepMatrix, RepError> {
    let pi = p.inv()?;
    let c = &(p * xi) / &(p * p);
    Ok(RepMatrix::from_rows(alloc::vec![
        alloc::vec![pi.clone(), RatFun::zero()],
        alloc::vec![&c / &(p + &pi), p.clone()],
    ]))
}

/// `F R F_21^{-1}` with `F` from [`affine_twist_image`].
pub fn build_affine_twisted_r(
    p: &RatFun,
    xi: &RatFun,
    n_max: usize,
    prec: usize,
) -> Result<ZMatrix, RepError> {
    let r = build_affine_r(
        p,
        n_max,
        prec,
        ProductOrder::Standard,
        ImagNorm::Scaled,
        Bracket::Half,
    )?;
    let f = affine_twist_image(p, xi)?;
    Ok(lift(&f).mul(&r.product).mul(&lift(&f.flip().inverse()?)))
}

/// Factor-by-factor assembly `e^{H0 (x) w} e^{-hH0 (x) H0} (factors)
/// e^{hH0 (x) H0} e^{-w (x) H0}` without matrix inversion.
fn assemble_twisted_r(
    p: &RatFun,
    xi: &RatFun,
    n_max: usize,
    prec: usize,
) -> Result<ZMatrix, RepError> {
    let r = build_affine_r(
        p,
        n_max,
        prec,
        ProductOrder::Standard,
        ImagNorm::Scaled,
        Bracket::Half,
    )?;
    let m = exp_omega0(p, xi)?;
    let left = tri_matrix_funcs(&m, &TriOp::WeightedPower(h0_weights()))?.mul(&exp_h0h0(p, -1)?);
    let right_inner = tri_matrix_funcs(&m, &TriOp::WeightedPower(h0_weights().negate()))?.flip();
    let mut acc = lift(&left);
    for f in &r.factors {
        acc = acc.mul(f);
    }
    Ok(acc.mul(&lift(&exp_h0h0(p, 1)?)).mul(&lift(&right_inner)))
}

/// Power series of a rational function in `z` regular at `z = 0`.
pub fn ratfun_to_zseries(r: &RatFun, prec: usize) -> Result<ZSeries<RatFun>, RepError> {
    let series = |m: &crate::coeff::MPoly| {
        ZSeries::from_coeffs(
            m.coeffs_in(Var::Z)
                .into_iter()
                .map(RatFun::from_poly)
                .collect(),
            prec,
        )
    };
    let den = series(r.denom());
    if den.coeff(0).is_zero() {
        return Err(RepError::SingularPoint(String::from("pole at z = 0")));
    }
    Ok(series(r.numer()).times(&den.inverse()?))
}

fn drm_series(q: &RatFun, xi: &RatFun, prec: usize) -> Result<ZMatrix, RepError> {
    build_drm(q, xi, &RatFun::z())?.try_map(|x| ratfun_to_zseries(x, prec))
}

/// `A = c B + O(z^v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesProjective {
    pub scalar: ZSeries<RatFun>,
    /// Lowest power of `z` in `A - c B`; `None` when it vanishes to the
    /// working precision.
    pub valuation: Option<usize>,
}

pub fn series_projective(a: &ZMatrix, b: &ZMatrix) -> Result<SeriesProjective, RepError> {
    let k = b
        .entries()
        .iter()
        .position(|x| x.prec() > 0 && !x.coeff(0).is_zero())
        .ok_or(RepError::Singular)?;
    let scalar = a.entries()[k].times(&b.entries()[k].inverse()?);
    let diff = a.sub(&b.scale(&scalar));
    let valuation = diff.entries().iter().filter_map(ZSeries::valuation).min();
    Ok(SeriesProjective { scalar, valuation })
}

/// Largest `|c|` among the coefficients of `z^k` in the entries of `m`.
fn max_abs_coeff(m: &ZMatrix, k: usize) -> Result<Q, RepError> {
    let mut best = Q::from_integer(0.into());
    for e in m.entries() {
        if k >= e.prec() {
            continue;
        }
        let c = e
            .coeff(k)
            .as_constant()
            .ok_or(RepError::SpectralParameter)?;
        let a = if c < Q::from_integer(0.into()) { -c } else { c };
        if a > best {
            best = a;
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n_max: usize,
    /// Exponent `v` with the residual divisible by `z^v` (the working
    /// precision when it vanishes there).
    pub exponent: usize,
    /// Largest coefficient of `z^exponent` in the residual.
    pub leading: Q,
    /// `leading * z^exponent` at the sample `z`.
    pub leading_at_z: Q,
}

/// Twisted R at `q = 4`, twist parameter `1/2`, against the hybrid matrix
/// at `xi = 1` for each truncation depth.
pub fn convergence_table(depths: &[usize], z: &Q) -> Result<Vec<ConvergenceRow>, RepError> {
    let p = RatFun::int(2);
    let twist_xi = RatFun::constant(rat(1, 2));
    let mut rows = Vec::new();
    for &n in depths {
        let prec = n + 2;
        let a = build_affine_twisted_r(&p, &twist_xi, n, prec)?;
        let b = drm_series(&RatFun::int(4), &RatFun::one(), prec)?.reverse();
        let sp = series_projective(&a, &b)?;
        let diff = a.sub(&b.scale(&sp.scalar));
        let exponent = sp.valuation.unwrap_or(prec);
        let lead = max_abs_coeff(&diff, exponent)?;
        rows.push(ConvergenceRow {
            n_max: n,
            exponent,
            leading: lead.clone(),
            leading_at_z: lead * crate::coeff::qpow(z, exponent as i64),
        });
    }
    Ok(rows)
}

const R_ANCHOR: &str = "where K stands for";
const TWISTED_ANCHOR: &str = "The twisted (hybrid) universal R-matrix";
const ORDER_ANCHOR: &str = "direct in the first product";
const LIMIT_ANCHOR: &str = "the R-matrix in this limit case becomes the ordinary Jordanian";
const CONV_ANCHOR: &str = "we get the hybrid matrix solution";

fn matches(sp: &SeriesProjective, need: usize) -> bool {
    sp.valuation.is_none_or(|v| v >= need)
}

fn series_eq(id: &str, anchor: &str, a: &ZMatrix, b: &ZMatrix) -> Check {
    let diff = a.sub(b);
    let v = diff.entries().iter().filter_map(ZSeries::valuation).min();
    Check::exact(id, anchor, v.is_none(), || {
        alloc::format!("differs at z^{}", v.unwrap_or(0))
    })
}

fn scalar_check(
    id: &str,
    anchor: &str,
    sp: &SeriesProjective,
    p: &RatFun,
    need: usize,
) -> Result<Check, RepError> {
    let want = drm_prefactor(p, need)?;
    let got = sp.scalar.truncate(need);
    Ok(Check::exact(id, anchor, got == want, || {
        alloc::format!(
            "scalar {} differs from prefactor {}",
            got.text(),
            want.text()
        )
    }))
}

fn projective_check(id: &str, anchor: &str, sp: &SeriesProjective, need: usize) -> Check {
    Check::exact(id, anchor, matches(sp, need), || {
        alloc::format!("residual starts at z^{}", sp.valuation.unwrap_or(0))
    })
}

/// Standard and twisted products against the hybrid matrix, factor
/// ordering, alternative readings, limits and truncation convergence.
pub fn verify_affine_r(n_max: usize, z: &Q) -> Result<VerificationReport, RepError> {
    let mut r = VerificationReport::new("affine");
    let ps = RatFun::p();
    let qs = &ps * &ps;
    let xs = RatFun::xi();

    // Symbolic p at depth two; rational-function growth makes deeper
    // symbolic builds impractical, so depth n_max runs at numeric p.
    let ns = n_max.clamp(1, 2);
    let prec = ns + 2;
    let std = build_affine_r(
        &ps,
        ns,
        prec,
        ProductOrder::Standard,
        ImagNorm::Scaled,
        Bracket::Half,
    )?;
    let drm0 = drm_series(&qs, &RatFun::zero(), prec)?.reverse();
    let sp = series_projective(&std.product, &drm0)?;
    r.push(projective_check(
        "affine.r.standard.match",
        R_ANCHOR,
        &sp,
        ns + 1,
    ));
    r.push(scalar_check(
        "affine.r.standard.prefactor",
        R_ANCHOR,
        &sp,
        &ps,
        ns + 1,
    )?);
    for pv in [2, 3] {
        let pn = RatFun::int(pv);
        let nn = n_max.max(1);
        let b = build_affine_r(
            &pn,
            nn,
            nn + 2,
            ProductOrder::Standard,
            ImagNorm::Scaled,
            Bracket::Half,
        )?;
        let d = drm_series(&(&pn * &pn), &RatFun::zero(), nn + 2)?.reverse();
        let sp = series_projective(&b.product, &d)?;
        r.push(projective_check(
            &alloc::format!("affine.r.standard.match.p={pv}"),
            R_ANCHOR,
            &sp,
            nn + 1,
        ));
        r.push(scalar_check(
            &alloc::format!("affine.r.standard.prefactor.p={pv}"),
            R_ANCHOR,
            &sp,
            &pn,
            nn + 1,
        )?);
    }

    let nn = n_max.max(1);
    for (pv, xv) in [
        (rat(2, 1), rat(1, 2)),
        (rat(3, 1), rat(-1, 3)),
        (rat(3, 2), rat(2, 1)),
    ] {
        let (pn, xn) = (RatFun::constant(pv.clone()), RatFun::constant(xv.clone()));
        let tag = alloc::format!("p={}.xi={}", fmt_q(&pv), fmt_q(&xv));
        let tw = build_affine_twisted_r(&pn, &xn, nn, nn + 2)?;
        let drm = drm_series(&(&pn * &pn), &(&pn * &xn), nn + 2)?.reverse();
        let sp = series_projective(&tw, &drm)?;
        r.push(projective_check(
            &alloc::format!("affine.r.twisted.match.{tag}"),
            TWISTED_ANCHOR,
            &sp,
            nn + 1,
        ));
        r.push(scalar_check(
            &alloc::format!("affine.r.twisted.prefactor.{tag}"),
            TWISTED_ANCHOR,
            &sp,
            &pn,
            nn + 1,
        )?);
        r.push(series_eq(
            &alloc::format!("affine.r.twisted.independent-assembly.{tag}"),
            TWISTED_ANCHOR,
            &tw,
            &assemble_twisted_r(&pn, &xn, nn, nn + 2)?,
        ));
    }

    let half = sqrt_omega0_closed(&ps, &xs)?;
    let w = tri_matrix_funcs(&exp_omega0(&ps, &xs)?, &TriOp::Sqrt)?;
    r.push(Check::exact(
        "affine.r.twist.sqrt-closed-form",
        "F_qJ(h,ξ) = e^{H₀⊗ω₀}e^{−hH₀⊗H₀}",
        half == w,
        || String::from("closed-form square root differs"),
    ));

    let p2 = RatFun::int(2);
    let build = |order, norm, bracket| build_affine_r(&p2, nn, nn + 2, order, norm, bracket);
    let base = build(ProductOrder::Standard, ImagNorm::Scaled, Bracket::Half)?;
    let swapped = build(ProductOrder::Swapped, ImagNorm::Scaled, Bracket::Half)?;
    r.push(Check::exact(
        "affine.r.order.swapped-differs",
        ORDER_ANCHOR,
        swapped.product != base.product,
        || String::from("exchanging the real-root products leaves the result unchanged"),
    ));
    let within = build(
        ProductOrder::ReversedWithin,
        ImagNorm::Scaled,
        Bracket::Half,
    )?;
    r.push(series_eq(
        "affine.r.order.within-family-commute",
        ORDER_ANCHOR,
        &within.product,
        &base.product,
    ));
    let drm0 = drm_series(&RatFun::int(4), &RatFun::zero(), nn + 2)?.reverse();
    for (id, alt) in [
        ("affine.r.reading.swapped-rejected", swapped),
        (
            "affine.r.reading.bracket-literal-rejected",
            build(ProductOrder::Standard, ImagNorm::Scaled, Bracket::Literal)?,
        ),
        (
            "affine.r.reading.imag-literal-rejected",
            build(ProductOrder::Standard, ImagNorm::Literal, Bracket::Half)?,
        ),
    ] {
        let sp = series_projective(&alt.product, &drm0)?;
        r.push(Check::exact(id, R_ANCHOR, !matches(&sp, nn + 1), || {
            String::from("alternative reading also matches the hybrid matrix")
        }));
    }
    let deeper = build_affine_r(
        &p2,
        nn + 1,
        nn + 2,
        ProductOrder::Standard,
        ImagNorm::Scaled,
        Bracket::Half,
    )?;
    let dv = deeper
        .product
        .sub(&base.product)
        .entries()
        .iter()
        .filter_map(ZSeries::valuation)
        .min();
    r.push(Check::exact(
        "affine.r.truncation",
        R_ANCHOR,
        dv.is_none_or(|v| v > nn),
        || alloc::format!("depths {nn} and {} differ at z^{}", nn + 1, dv.unwrap_or(0)),
    ));

    for c in check_affine_limits()? {
        r.push(c);
    }

    let mut depths: Vec<usize> = (2..=n_max).step_by(2).collect();
    if n_max >= 1 && !depths.contains(&n_max) {
        depths.push(n_max);
    }
    let rows = convergence_table(&depths, z)?;
    for row in &rows {
        let mut c = Check::new(
            &alloc::format!("affine.r.convergence.nmax={}", row.n_max),
            CONV_ANCHOR,
            if row.exponent >= row.n_max {
                Status::Pass
            } else {
                Status::Fail
            },
            alloc::format!("z^{}", row.exponent),
        );
        c.derived = Some(fmt_q(&row.leading_at_z));
        r.push(c);
    }
    r.tables.push(Table {
        name: String::from("convergence"),
        columns: ["nmax", "exponent", "leading", "leading_at_z"]
            .map(String::from)
            .to_vec(),
        rows: rows
            .iter()
            .map(|row| {
                alloc::vec![
                    alloc::format!("{}", row.n_max),
                    alloc::format!("{}", row.exponent),
                    fmt_q(&row.leading),
                    fmt_q(&row.leading_at_z),
                ]
            })
            .collect(),
    });
    Ok(r)
}

/// Both corners of the R-matrix diagram for the affine twist: `xi = 0`
/// gives back the untwisted product, `p = 1` the Jordanian twist.
pub fn check_affine_limits() -> Result<Vec<Check>, RepError> {
    let mut out = Vec::new();
    let ps = RatFun::p();
    let f0 = affine_twist_image(&ps, &RatFun::zero())?;
    out.push(Check::exact(
        "affine.r.limit.xi0.twist",
        "R_qJ^{DJ}(h,0) = R^{DJ}",
        f0 == RepMatrix::identity(4),
        || String::from("twist image at xi = 0 is not the identity"),
    ));
    let p2 = RatFun::int(2);
    let base = build_affine_r(
        &p2,
        2,
        4,
        ProductOrder::Standard,
        ImagNorm::Scaled,
        Bracket::Half,
    )?;
    out.push(series_eq(
        "affine.r.limit.xi0.rmatrix",
        "R_qJ^{DJ}(h,0) = R^{DJ}",
        &build_affine_twisted_r(&p2, &RatFun::zero(), 2, 4)?,
        &base.product,
    ));
    // Symbolic p substituted after the build.
    for xv in [rat(1, 2), rat(-2, 1)] {
        let xn = RatFun::constant(xv.clone());
        let j = build_affine_twisted_r(&ps, &xn, 2, 3)?;
        let at1 = j.try_map(|s| s.try_map(|c| c.subst(Var::P, &rat(1, 1))))?;
        let fj = jordanian_affine(&xn);
        let want = lift(&fj.mul(&fj.flip().inverse()?));
        out.push(series_eq(
            &alloc::format!("affine.r.limit.p1-jordanian.xi={}", fmt_q(&xv)),
            LIMIT_ANCHOR,
            &at1,
            &want,
        ));
    }
    Ok(out)
}

/// `exp(H_0 (x) ln(1 + xi e21))` summed as a nilpotent exponential.
fn jordanian_affine(xi: &RatFun) -> RepMatrix {
    let h0 = RepMatrix::diag(alloc::vec![
        RatFun::constant(rat(-1, 2)),
        RatFun::constant(rat(1, 2))
    ]);
    let e = RepMatrix::unit(2, 1, 0, xi.clone());
    let x = h0.kron(&e);
    let mut acc = RepMatrix::identity(4);
    let mut term = RepMatrix::identity(4);
    for k in 1..4 {
        term = term.mul(&x).scale(&RatFun::constant(rat(1, k)));
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let r = &RatFun::one() / &(&RatFun::one() - &RatFun::z());
        let s = ratfun_to_zseries(&r, 4).unwrap();
        assert!(s.coeffs().iter().all(RatFun::is_one));
        assert!(ratfun_to_zseries(&RatFun::z().inv().unwrap(), 3).is_err());
    }

    #[test]
    fn twist_image_matches_closed_form() {
        let p = RatFun::p();
        let xi = RatFun::xi();
        let h = sqrt_omega0_closed(&p, &xi).unwrap();
        assert_eq!(h.mul(&h), exp_omega0(&p, &xi).unwrap());
    }

    #[test]
    fn convergence_at_depth_two() {
        let rows = convergence_table(&[2], &rat(1, 10)).unwrap();
        assert!(rows[0].exponent >= 2, "{:?}", rows[0]);
    }
}
