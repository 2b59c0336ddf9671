use twistkit_core::pbw::{verify_hopf_axioms, verify_hopf_structure, HopfStructure, Presentation};

#[test]
fn hopf_axioms_hold_for_both_presentations() {
    for p in [Presentation::Borel, Presentation::Sl2] {
        let r = verify_hopf_axioms(p, 4);
        let bad: Vec<_> = r
            .failures()
            .map(|c| (c.id.clone(), c.residual.clone()))
            .collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
}

#[test]
fn corrupted_coproduct_is_detected() {
    let r = verify_hopf_structure(&HopfStructure::corrupted(Presentation::Sl2, 4), "bad");
    let bad: Vec<_> = r
        .failures()
        .map(|c| (c.id.clone(), c.residual.clone()))
        .collect();
    println!("{bad:#?}");
    assert!(!bad.is_empty());
}
