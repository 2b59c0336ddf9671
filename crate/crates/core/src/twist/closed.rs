//! Printed closed forms of the twisted coproducts and compact relations,
//! used as comparison targets for conjugation by the twist.

use alloc::string::String;
use alloc::vec::Vec;

use super::{apply_twist, build_sigma_omega, build_twist, TwistKind};
use crate::coeff::{int, TruncSeries};
use crate::pbw::{exp_h_h, residual_check, AlgebraElement, PbwError, Presentation, Word};
use crate::report::{Check, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClosedTarget {
    /// Borel twisted by `e^{H (x) sigma}`.
    QjtBor,
    /// Borel twisted by `F_qJ`.
    QjBor,
    /// Compact form of the same.
    QjsiBor,
    /// sl2 twisted by `F_qJ`.
    QjSl2,
    /// Compact form of the same.
    QjsiSl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClosedArg {
    H,
    /// Borel `E`, or `E+` in sl2.
    E,
    EMinus,
    ExpOmega,
}

impl ClosedTarget {
    pub const ALL: [ClosedTarget; 5] = [
        ClosedTarget::QjtBor,
        ClosedTarget::QjBor,
        ClosedTarget::QjsiBor,
        ClosedTarget::QjSl2,
        ClosedTarget::QjsiSl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedTarget::QjtBor => "qjt-bor",
            ClosedTarget::QjBor => "qj-bor",
            ClosedTarget::QjsiBor => "qjsi-bor",
            ClosedTarget::QjSl2 => "qj-sl2",
            ClosedTarget::QjsiSl => "qjsi-sl",
        }
    }

    pub fn presentation(self) -> Presentation {
        match self {
            ClosedTarget::QjtBor | ClosedTarget::QjBor | ClosedTarget::QjsiBor => {
                Presentation::Borel
            }
            _ => Presentation::Sl2,
        }
    }

    pub fn twist_kind(self) -> TwistKind {
        if self == ClosedTarget::QjtBor {
            TwistKind::TildeQJ
        } else {
            TwistKind::QJ
        }
    }

    /// Generators whose coproduct is printed for this target.
    pub fn args(self) -> &'static [ClosedArg] {
        match self {
            ClosedTarget::QjtBor | ClosedTarget::QjBor => &[ClosedArg::H, ClosedArg::E],
            ClosedTarget::QjsiBor => &[ClosedArg::H, ClosedArg::ExpOmega],
            ClosedTarget::QjSl2 => &[ClosedArg::H, ClosedArg::E, ClosedArg::EMinus],
            ClosedTarget::QjsiSl => &[ClosedArg::H, ClosedArg::ExpOmega, ClosedArg::EMinus],
        }
    }

    fn anchor(self) -> &'static str {
        match self {
            ClosedTarget::QjtBor => "smooth two-parameter set",
            ClosedTarget::QjBor => "with the following defining relations",
            ClosedTarget::QjsiBor => "written in a compact form",
            ClosedTarget::QjSl2 => "hybrids of standard and Jordanian",
            ClosedTarget::QjsiSl => "compact form of the defining relations",
        }
    }
}

impl ClosedArg {
    pub fn name(self) -> &'static str {
        match self {
            ClosedArg::H => "H",
            ClosedArg::E => "E",
            ClosedArg::EMinus => "Em",
            ClosedArg::ExpOmega => "e^w",
        }
    }

    /// The element itself at the given order.
    pub fn element(self, p: Presentation, order: u32) -> Result<AlgebraElement, PbwError> {
        Ok(match self {
            ClosedArg::H => AlgebraElement::h(p, order),
            ClosedArg::E => AlgebraElement::carrier_e(p, order),
            ClosedArg::EMinus => {
                if p == Presentation::Borel {
                    return Err(PbwError::UnknownGenerator("Em", p.name()));
                }
                AlgebraElement::word(p, Word::new(1, 0, 0), order)
            }
            ClosedArg::ExpOmega => build_sigma_omega(p, order)?.omega.exp()?,
        })
    }
}

/// A printed right-hand side, with the conjugation-derived replacement
/// when the printed line is a known misprint.
///
/// Forms with a `1/xi` prefactor are stored multiplied by `xi`, one order
/// higher (`times_xi`), since the printed numerator need not be divisible.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub printed: AlgebraElement,
    pub derived: Option<AlgebraElement>,
    pub times_xi: bool,
}

/// `e^a x e^{-a}`.
fn ead(a: &AlgebraElement, x: &AlgebraElement) -> Result<AlgebraElement, PbwError> {
    Ok(a.exp()?.conjugate(x, &a.neg().exp()?))
}

/// Builds the printed right-hand side of the twisted coproduct of `arg`.
pub fn closed_form_coproduct(
    target: ClosedTarget,
    arg: ClosedArg,
    order: u32,
) -> Result<ClosedForm, PbwError> {
    let p = target.presentation();
    let m = order + 1;
    let so = build_sigma_omega(p, m)?;
    let h = AlgebraElement::h(p, m);
    let one = AlgebraElement::one(p, 1, m);
    let one2 = AlgebraElement::one(p, 2, m);
    let carrier = if target == ClosedTarget::QjtBor {
        &so.sigma
    } else {
        &so.omega
    };
    let x = h.tensor(carrier);
    let ew = carrier.exp()?;
    let fin = |e: AlgebraElement| e.truncate(order);
    let form = match (target, arg) {
        (_, ClosedArg::H) => ClosedForm {
            printed: fin(h.tensor(&one).add(&ead(&x, &one.tensor(&h))?)),
            derived: None,
            times_xi: false,
        },
        (ClosedTarget::QjtBor, ClosedArg::E) => {
            let k = exp_h_h(p, 1, m);
            let rhs = ew.tensor(&ew).sub(&ead(&x, &k.tensor(&k))?);
            ClosedForm {
                printed: rhs,
                derived: None,
                times_xi: true,
            }
        }
        (ClosedTarget::QjBor | ClosedTarget::QjSl2, ClosedArg::E) => {
            let km = exp_h_h(p, -1, m);
            let g = ead(&x, &km.tensor(&km))?;
            let ww = ew.tensor(&ew);
            ClosedForm {
                printed: ww.sub(&g).sub(&one2),
                derived: Some(ww.mul(&g).sub(&one2)),
                times_xi: true,
            }
        }
        (ClosedTarget::QjsiBor | ClosedTarget::QjsiSl, ClosedArg::ExpOmega) => ClosedForm {
            printed: fin(ew.tensor(&ew)),
            derived: None,
            times_xi: false,
        },
        (ClosedTarget::QjSl2 | ClosedTarget::QjsiSl, ClosedArg::EMinus) => {
            let em = AlgebraElement::word(p, Word::new(1, 0, 0), m);
            let emw = so.omega.neg().exp()?;
            let a = ead(&x, &one.tensor(&em))?;
            let first = em.tensor(&emw);
            let k1 = exp_h_h(p, 1, m).tensor(&one);
            ClosedForm {
                printed: fin(first.add(&a)),
                derived: Some(fin(first.add(&k1.mul(&a)))),
                times_xi: false,
            }
        }
        _ => return Err(PbwError::UnknownGenerator(arg.name(), p.name())),
    };
    Ok(form)
}

fn compare(id: &str, anchor: &str, actual: &AlgebraElement, form: &ClosedForm) -> Check {
    let direct = residual_check(id, anchor, &form.printed, actual);
    if direct.passed() {
        return direct;
    }
    match &form.derived {
        Some(d) if d == actual => Check::misprint(
            id,
            anchor,
            direct.residual.clone(),
            form.printed.to_canonical(),
            d.to_canonical(),
        ),
        _ => direct,
    }
}

/// Compact relations: `[H, e^w] = e^w - e^{hH}`, `[H, E-] = -E-` and
/// `E- e^w - e^h e^w E- = xi (1 - e^{2hH}) / (1 - e^{-h})`.
fn compact_relations(p: Presentation, order: u32) -> Result<Vec<Check>, PbwError> {
    let m = order + 1;
    let so = build_sigma_omega(p, m)?;
    let ew = so.omega.exp()?;
    let h = AlgebraElement::h(p, m);
    let k = exp_h_h(p, 1, m);
    let comm = |a: &AlgebraElement, b: &AlgebraElement| a.mul(b).sub(&b.mul(a));
    let name = if p == Presentation::Borel {
        "qjsi-bor"
    } else {
        "qjsi-sl"
    };
    let mut out = Vec::new();
    out.push(residual_check(
        &alloc::format!("closed.{name}.relation.H-e^w"),
        "[H,e^ω] = e^ω − e^{hH}",
        &comm(&h, &ew).truncate(order),
        &ew.sub(&k).truncate(order),
    ));
    if p == Presentation::Sl2 {
        let em = AlgebraElement::word(p, Word::new(1, 0, 0), m);
        out.push(residual_check(
            &alloc::format!("closed.{name}.relation.H-Em"),
            "[H, E₋] = −E₋",
            &comm(&h, &em),
            &em.neg(),
        ));
        let eh = TruncSeries::h(m).exp()?;
        let lhs = em.mul(&ew).sub(&ew.mul(&em).scale(&eh)).truncate(order);
        let one = AlgebraElement::one(p, 1, m);
        let num = one.sub(&exp_h_h(p, 2, m)).scale(&TruncSeries::xi(m));
        let den = &TruncSeries::one(m) - &TruncSeries::h(m).scale(&int(-1)).exp()?;
        let rhs = num.div_series(&den)?;
        out.push(residual_check(
            &alloc::format!("closed.{name}.relation.Em-e^w"),
            "[E₋,e^ω]_{e^h} = ξ",
            &lhs,
            &rhs,
        ));
    }
    Ok(out)
}

/// Every printed closed form against conjugation by the twist, plus the
/// compact relations.
pub fn check_closed_forms(order: u32) -> Result<VerificationReport, PbwError> {
    let mut r = VerificationReport::new("closed-forms");
    r.param("order", alloc::format!("{order}"));
    for target in ClosedTarget::ALL {
        let p = target.presentation();
        let f = build_twist(target.twist_kind(), p, order)?;
        for &arg in target.args() {
            let form = closed_form_coproduct(target, arg, order)?;
            let actual = if form.times_xi {
                let f1 = build_twist(target.twist_kind(), p, order + 1)?;
                let x = arg.element(p, order + 1)?;
                apply_twist(&f1, &x)?.scale(&TruncSeries::xi(order + 1))
            } else {
                apply_twist(&f, &arg.element(p, order)?)?
            };
            let id: String = alloc::format!("closed.{}.coproduct.{}", target.name(), arg.name());
            r.push(compare(&id, target.anchor(), &actual, &form));
        }
    }
    for p in [Presentation::Borel, Presentation::Sl2] {
        for c in compact_relations(p, order)? {
            r.push(c);
        }
    }
    r.sort();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn exp_omega_form_is_grouplike() {
        let p = Presentation::Borel;
        let f = closed_form_coproduct(ClosedTarget::QjsiBor, ClosedArg::ExpOmega, 2).unwrap();
        let ew = ClosedArg::ExpOmega.element(p, 2).unwrap();
        assert_eq!(f.printed, ew.tensor(&ew));
    }

    #[test]
    fn printed_borel_e_is_flagged() {
        let r = check_closed_forms(2).unwrap();
        let c = r.get("closed.qj-bor.coproduct.E").unwrap();
        assert_eq!(c.status, Status::DocumentedMisprint);
        assert!(c.printed.is_some() && c.derived.is_some());
        assert_eq!(
            r.get("closed.qjt-bor.coproduct.E").unwrap().status,
            Status::Pass
        );
    }
}
