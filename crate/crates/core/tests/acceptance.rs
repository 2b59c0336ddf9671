//! Acceptance gate: one line per criterion.
//!
//! Criteria listed in `KNOWN_UNATTAINABLE` are stated more strongly than
//! the mathematics allows; they are still evaluated literally and reported
//! as FAIL, and the gate instead asserts the documented reason.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use twistkit_core::affine::{
    build_affine_twisted_r, check_affine_relations, ratfun_to_zseries, series_projective, Grading,
};
use twistkit_core::coeff::{int, rat, RatFun};
use twistkit_core::limits::verify_limits;
use twistkit_core::pbw::{verify_hopf_axioms, Presentation};
use twistkit_core::rep::{
    build_drm, projective_compare, rep_r_std, verify_qybe, verify_rep, Projective, RepMatrix,
};
use twistkit_core::report::{Check, Status, VerificationReport};
use twistkit_core::twist::{
    build_r_std, build_twist, check_closed_forms, check_cybe, check_twisted_hopf,
    extract_classical_r, twist_r, verify_twist_axioms, ClassicalGen, ClassicalR, TwistKind,
    TwistedHopf,
};

const ORDER: u32 = 4;

type Criterion = (u32, &'static str, fn() -> Outcome);

/// Criterion number and the reason the literal statement cannot hold.
const KNOWN_UNATTAINABLE: &[(u32, &str)] = &[
    (
        3,
        "the printed E- lines fail the xi = 0 limit; the conjugation-derived form passes",
    ),
    (7, "the scalar between the two matrices is q^{3/2}, not q"),
];

struct Outcome {
    pass: bool,
    detail: String,
    /// For unattainable criteria: whether the documented reason was confirmed.
    reason_confirmed: bool,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
            reason_confirmed: false,
        }
    }
}

fn status(r: &VerificationReport, id: &str) -> Option<Status> {
    r.get(id).map(|c| c.status)
}

fn all_pass<'a>(checks: impl IntoIterator<Item = &'a Check>) -> (bool, usize, Vec<String>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for c in checks {
        n += 1;
        if !c.passed() {
            bad.push(c.id.clone());
        }
    }
    (bad.is_empty() && n > 0, n, bad)
}

fn twist_axioms() -> Outcome {
    let t = Instant::now();
    let r = verify_twist_axioms(ORDER).unwrap();
    let mut ids = Vec::new();
    for kind in ["canonical-jordanian", "tilde-qj", "reshetikhin", "qj"] {
        for part in ["counit-left", "counit-right", "cocycle"] {
            ids.push(format!("twist.borel.{kind}.{part}"));
        }
    }
    let missing: Vec<&String> = ids
        .iter()
        .filter(|id| status(&r, id) != Some(Status::Pass))
        .collect();
    let el = t.elapsed();
    Outcome::new(
        missing.is_empty() && el < Duration::from_secs(300),
        format!("{} identities, {:.1?}; failing {missing:?}", ids.len(), el),
    )
}

fn factorized() -> Outcome {
    let r = verify_twist_axioms(ORDER).unwrap();
    let ids = [
        "twist.borel.tilde-qj.factorized-left",
        "twist.borel.tilde-qj.factorized-right",
        "twist.borel.tilde-qj.grouplike",
    ];
    let ok = ids.iter().all(|id| status(&r, id) == Some(Status::Pass));
    Outcome::new(ok, "both factorized equations and e^sigma grouplike")
}

fn closed_forms() -> Outcome {
    let r = check_closed_forms(ORDER).unwrap();
    let exact = [
        "closed.qjt-bor.coproduct.H",
        "closed.qjt-bor.coproduct.E",
        "closed.qjsi-bor.coproduct.H",
        "closed.qjsi-bor.coproduct.e^w",
        "closed.qjsi-sl.coproduct.H",
        "closed.qjsi-sl.coproduct.e^w",
        "closed.qj-sl2.coproduct.H",
    ];
    let misprints = ["closed.qj-bor.coproduct.E", "closed.qj-sl2.coproduct.E"];
    let minus = ["closed.qj-sl2.coproduct.Em", "closed.qjsi-sl.coproduct.Em"];
    let exact_ok = exact.iter().all(|id| status(&r, id) == Some(Status::Pass));
    let misprint_ok = misprints
        .iter()
        .all(|id| status(&r, id) == Some(Status::DocumentedMisprint));
    let minus_literal = minus.iter().all(|id| status(&r, id) == Some(Status::Pass));
    let mut o = Outcome::new(
        exact_ok && misprint_ok && minus_literal,
        format!(
            "exact lines {}, E lines flagged {}, E- lines exact {}",
            exact_ok, misprint_ok, minus_literal
        ),
    );
    // A misprint status means the derived form equals the conjugation and
    // the printed one does not.
    o.reason_confirmed = exact_ok
        && misprint_ok
        && minus.iter().all(|id| {
            r.get(id).is_some_and(|c| {
                c.status == Status::DocumentedMisprint && c.residual.ends_with("xi^0")
            })
        });
    o
}

fn classical_limit() -> Outcome {
    let p = Presentation::Sl2;
    let f = build_twist(TwistKind::QJ, p, 2).unwrap();
    let r = extract_classical_r(&twist_r(&f, &build_r_std(2).unwrap())).unwrap();
    let mut want = ClassicalR::default();
    want.add_term(ClassicalGen::EPlus, ClassicalGen::H, &[int(1)]);
    want.add_term(ClassicalGen::H, ClassicalGen::EPlus, &[int(-1)]);
    want.add_term(ClassicalGen::H, ClassicalGen::H, &[int(0), int(1)]);
    want.add_term(ClassicalGen::EMinus, ClassicalGen::EPlus, &[int(0), int(1)]);
    let cybe = [0, 1, 2, -1]
        .iter()
        .all(|&z| check_cybe(&r, &int(z), "cybe").passed());
    Outcome::new(
        r == want && cybe,
        format!(
            "r = {}; CYBE at zeta in {{0,1,2,-1}}: {cybe}",
            r.to_canonical()
        ),
    )
}

fn qybe() -> Outcome {
    let points: Vec<_> = [(2, rat(1, 1)), (3, rat(1, 2)), (5, rat(2, 1))]
        .into_iter()
        .map(|(p, x)| (int(p * p), x))
        .collect();
    let r = verify_qybe(&points, [rat(1, 2), rat(1, 3), rat(1, 5)]).unwrap();
    let (ok, n, bad) = all_pass(&r.checks);
    let residuals_zero = r
        .checks
        .iter()
        .filter(|c| c.id.starts_with("qybe.drm"))
        .all(|c| c.residual == "0");
    Outcome::new(
        ok && residuals_zero && r.get("qybe.negative-control").is_some(),
        format!("{n} checks incl. perturbed control; failing {bad:?}"),
    )
}

fn cross_tier() -> Outcome {
    let r = verify_rep(ORDER).unwrap();
    let ids = ["cross-tier.coproduct.H", "cross-tier.coproduct.Em"];
    let ok = ids.iter().all(|id| status(&r, id) == Some(Status::Pass));
    Outcome::new(
        ok,
        "symbolic twisted coproducts evaluated against matrix conjugation",
    )
}

fn standard_limit() -> Outcome {
    let p = RatFun::p();
    let q = &p * &p;
    let d = build_drm(&q, &RatFun::zero(), &RatFun::zero()).unwrap();
    let std = rep_r_std();
    let literal = d == std.scale(&q) || d == std.flip().scale(&q);
    let mut o = Outcome::new(literal, String::new());
    let p3 = p.pow(3).unwrap();
    match projective_compare(&d, &std.flip()) {
        Projective::Scalar(c) => {
            o.reason_confirmed = c == p3;
            o.detail = format!("drm(q, 0, 0) = ({}) * flip(d(R_q)), q = p^2", c);
        }
        other => o.detail = format!("not proportional: {other:?}"),
    }
    o
}

fn affine_relations() -> Outcome {
    let checks = check_affine_relations(Grading::A).unwrap();
    let serre = checks.iter().filter(|c| c.id.contains("serre")).count();
    let (ok, n, bad) = all_pass(&checks);
    Outcome::new(
        ok && serre == 4,
        format!("{n} relations ({serre} Serre), symbolic p and z; failing {bad:?}"),
    )
}

fn affine_convergence() -> Outcome {
    let t = Instant::now();
    // q = 4 is p = 2; the hybrid matrix parameter 1 is p times the twist's.
    let p = RatFun::int(2);
    let twist_xi = RatFun::constant(rat(1, 2));
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [2usize, 4, 6] {
        let prec = n + 2;
        let a = build_affine_twisted_r(&p, &twist_xi, n, prec).unwrap();
        let b: RepMatrix<_> = build_drm(&RatFun::int(4), &RatFun::one(), &RatFun::z())
            .unwrap()
            .try_map(|x| ratfun_to_zseries(x, prec))
            .unwrap()
            .reverse();
        let sp = series_projective(&a, &b).unwrap();
        let v = sp.valuation.unwrap_or(prec);
        ok &= v >= n;
        parts.push(format!("n_max={n}: z^{v}"));
    }
    let el = t.elapsed();
    ok &= el < Duration::from_secs(120);
    Outcome::new(ok, format!("{}; {:.1?}", parts.join(", "), el))
}

fn boundary() -> Outcome {
    let r = verify_limits(ORDER).unwrap();
    let corners = [
        "limits.sl2.twist.xi0",
        "limits.sl2.twist.h0",
        "limits.sl2.coproduct.xi0.Em",
        "limits.sl2.coproduct.h0.Ep",
        "limits.rmatrix.xi0",
        "limits.matrix.h0.jordanian",
    ];
    let present = corners
        .iter()
        .all(|id| status(&r, id) == Some(Status::Pass));
    let (ok, n, bad) = all_pass(&r.checks);
    Outcome::new(
        present && ok,
        format!("{n} boundary checks; failing {bad:?}"),
    )
}

fn hopf_gate() -> Outcome {
    let mut checks = Vec::new();
    for p in [Presentation::Borel, Presentation::Sl2] {
        checks.extend(verify_hopf_axioms(p, ORDER).checks);
    }
    let qj = build_twist(TwistKind::QJ, Presentation::Sl2, ORDER).unwrap();
    let tw = check_twisted_hopf(&TwistedHopf::new(qj).unwrap()).unwrap();
    let twisted_parts = ["coassoc", "antipode-left", "antipode-right"]
        .iter()
        .all(|part| tw.checks.iter().any(|c| c.id.contains(part)));
    checks.extend(tw.checks);
    let (ok, n, bad) = all_pass(&checks);
    Outcome::new(ok && twisted_parts, format!("{n} checks; failing {bad:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "twist axioms", twist_axioms),
        (2, "factorized twist equations", factorized),
        (3, "closed forms", closed_forms),
        (4, "classical limit", classical_limit),
        (5, "QYBE", qybe),
        (6, "cross-tier consistency", cross_tier),
        (7, "standard-limit matrix identity", standard_limit),
        (8, "affine relations", affine_relations),
        (9, "affine R convergence", affine_convergence),
        (10, "boundary diagrams", boundary),
        (11, "Hopf axiom gate", hopf_gate),
    ];
    let mut gate_ok = true;
    for (k, name, run) in criteria {
        let o = run();
        let known = KNOWN_UNATTAINABLE.iter().find(|(c, _)| *c == k);
        let tag = if o.pass { "PASS" } else { "FAIL" };
        match known {
            Some((_, why)) => {
                println!(
                    "criterion {k:>2} {tag} {name}: {} [unattainable: {why}]",
                    o.detail
                );
                gate_ok &= !o.pass && o.reason_confirmed;
            }
            None => {
                println!("criterion {k:>2} {tag} {name}: {}", o.detail);
                gate_ok &= o.pass;
            }
        }
    }
    if gate_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
