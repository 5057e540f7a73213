//! The stored 2×2 pair where a singular value of `b^{1/2}ab^{1/2}` exceeds
//! the matching one of `ab` while the submajorization still holds.

use serde::Deserialize;
use submaj::inequalities::{bik_theorem_selfadjoint, check_pointwise, counterexample_pointwise_search};
use submaj::io::MatrixFile;

#[derive(Deserialize)]
struct Stored {
    seed: u64,
    trials_used: usize,
    a: MatrixFile,
    b: MatrixFile,
}

fn stored() -> Stored {
    serde_json::from_str(include_str!("data/pointwise_witness.json")).unwrap()
}

#[test]
fn stored_witness_separates_the_two_orders() {
    let s = stored();
    let (a, b) = (s.a.to_matrix().unwrap(), s.b.to_matrix().unwrap());
    let w = check_pointwise(&a, &b).unwrap().expect("pointwise violation");
    assert!(w.excess > 1e-3);
    assert!(w.left_values[w.index] > w.right_values[w.index]);
    let v = bik_theorem_selfadjoint(&a, &b, 0.5).unwrap();
    assert!(v.holds && v.margin < 0.0);
}

#[test]
fn search_regenerates_the_stored_witness() {
    let s = stored();
    let found = counterexample_pointwise_search(s.seed, 10_000).unwrap();
    assert_eq!(found.trials_used, s.trials_used);
    let w = found.witness.unwrap();
    assert_eq!(w.a, s.a.to_matrix().unwrap());
    assert_eq!(w.b, s.b.to_matrix().unwrap());
}
