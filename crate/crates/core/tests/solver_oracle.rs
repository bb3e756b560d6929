mod common;

use common::{dense_solve, rel_diff};
use convdiff::TridiagonalSystem;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_dominant(rng: &mut StdRng, m: usize) -> TridiagonalSystem {
    let lower: Vec<f64> = (0..m - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let upper: Vec<f64> = (0..m - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let main = (0..m)
        .map(|i| {
            let off = if i > 0 { lower[i - 1].abs() } else { 0.0 } + if i + 1 < m { upper[i].abs() } else { 0.0 };
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            sign * (off + rng.gen_range(0.1..2.0))
        })
        .collect();
    TridiagonalSystem::new(lower, main, upper).unwrap()
}

#[test]
fn dense_oracle_on_known_system() {
    let s = TridiagonalSystem::constant(3, -1.0, 2.0, -1.0).unwrap();
    let x = dense_solve(&s, &[1.0, 1.0, 1.0]);
    assert!(rel_diff(&x, &[1.5, 2.0, 1.5]) < 1e-15);
    let c = TridiagonalSystem::constant(3, -0.5, 0.0, 0.5).unwrap();
    assert_eq!(c.apply(&[1.0, 2.0, 3.0]).unwrap(), vec![1.0, 1.0, -1.0]);
}

#[test]
fn thomas_matches_dense_m50() {
    let mut rng = StdRng::seed_from_u64(50);
    for _ in 0..20 {
        let s = random_dominant(&mut rng, 50);
        let r: Vec<f64> = (0..50).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let x = s.solve(&r).unwrap();
        assert!(rel_diff(&x, &dense_solve(&s, &r)) <= 1e-12);
        assert!(rel_diff(&s.apply(&x).unwrap(), &r) <= 1e-12);
    }
}

#[test]
fn thomas_matches_dense_all_sizes() {
    let mut rng = StdRng::seed_from_u64(7);
    for m in 1..=100 {
        let s = random_dominant(&mut rng, m);
        let r: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = s.solve(&r).unwrap();
        let y = dense_solve(&s, &r);
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).abs() <= 1e-11 * b.abs().max(common::max_abs(&y) * 1e-3), "m = {m}");
        }
    }
}
