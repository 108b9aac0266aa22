//! The shipped sample files parse, survive a print/parse round trip, and
//! carry the invariants the README quotes for them.

use std::fs;
use std::path::PathBuf;

use cqca::classify::classify;
use cqca::descent::boundary_form;
use cqca::forms::{witt_class_f, WittGroup};
use cqca::textio;
use cqca::unitary::{check_eta, pauli_to_unitary};

fn sample(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples").join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
}

#[test]
fn unitary_samples_round_trip() {
    for name in ["cluster.unitary", "shift.unitary"] {
        let text = sample(name);
        let (ctx, u) = textio::parse_unitary(&text).expect(name);
        let printed = textio::print_unitary(&ctx, &u);
        let (ctx2, u2) = textio::parse_unitary(&printed).expect(name);
        assert_eq!(ctx, ctx2, "{name}: context changed across a round trip");
        assert_eq!(u.mat(), u2.mat(), "{name}: matrix changed across a round trip");
        assert_eq!(u.flavor(), u2.flavor(), "{name}: flavor changed across a round trip");
    }
}

#[test]
fn form_sample_round_trip_and_class() {
    let text = sample("arf.form");
    let (ctx, f) = textio::parse_form(&text).unwrap();
    let printed = textio::print_form(&ctx, &f);
    let (_, f2) = textio::parse_form(&printed).unwrap();
    assert_eq!(f.mat, f2.mat);
    let c = witt_class_f(&f).unwrap();
    assert_eq!(c.group, WittGroup::Z2);
    assert_eq!(c.value, (1, 0));
}

#[test]
fn pauli_sample_round_trip() {
    let text = sample("shear.pauli");
    let spec = textio::parse_pauli(&text).unwrap();
    let printed = textio::print_pauli(&spec);
    let spec2 = textio::parse_pauli(&printed).unwrap();
    assert_eq!(spec, spec2);
    let u = pauli_to_unitary(&spec).unwrap();
    assert_eq!(u.q(), 1);
}

#[test]
fn sample_invariants() {
    // The qubit generator: real, boundary class 1.
    let (_, cluster) = textio::parse_unitary(&sample("cluster.unitary")).unwrap();
    assert!(check_eta(cluster.mat(), -1));
    let b = boundary_form(&cluster, 0, true).unwrap();
    assert_eq!(witt_class_f(&b).unwrap().value, (1, 0));
    // The shift: class 0 with an explicit witness.
    let (_, shift) = textio::parse_unitary(&sample("shift.unitary")).unwrap();
    let desc = classify(&shift).unwrap();
    assert!(desc.is_zero());
    assert!(desc.witness.is_some());
}
