use convdiff::model::{GridFunction, Mesh};
use convdiff::norms::{dual_norm, h1_seminorm, l2_norm};
use convdiff::quadrature::oracle_integrate;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_grid(rng: &mut StdRng, n: usize) -> GridFunction {
    let mesh = Mesh::uniform(n).unwrap();
    let values = (0..mesh.interior()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    GridFunction::new(mesh, values).unwrap()
}

/// Piecewise-linear evaluation and derivative, independent of the crate's norms.
fn eval(u: &GridFunction, x: f64) -> (f64, f64) {
    let full = u.with_boundary();
    let n = u.mesh().n();
    let h = 1.0 / n as f64;
    let k = ((x / h) as usize).min(n - 1);
    let t = x / h - k as f64;
    let slope = (full[k + 1] - full[k]) / h;
    (full[k] + t * (full[k + 1] - full[k]), slope)
}

#[test]
fn h1_and_l2_match_quadrature_oracle() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..10 {
        let u = random_grid(&mut rng, 8);
        let h = u.mesh().h();
        // integrate element by element so the kinks sit on interval ends
        let (mut d2, mut v2) = (0.0, 0.0);
        for k in 0..8 {
            let (a, b) = (k as f64 * h, (k + 1) as f64 * h);
            let mid = 0.5 * (a + b);
            let slope = eval(&u, mid).1;
            d2 += oracle_integrate(|_| slope * slope, a, b, 1e-14).unwrap();
            v2 += oracle_integrate(|x| eval(&u, x).0.powi(2), a, b, 1e-14).unwrap();
        }
        assert!((h1_seminorm(&u) - d2.sqrt()).abs() <= 1e-12 * d2.sqrt().max(1.0));
        assert!((l2_norm(&u) - v2.sqrt()).abs() <= 1e-12 * v2.sqrt().max(1.0));
    }
}

#[test]
fn dual_norm_bounds_random_directions_from_above() {
    let mut rng = StdRng::seed_from_u64(12);
    let mesh = Mesh::uniform(6).unwrap();
    let f: Vec<f64> = (0..mesh.interior()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let exact = dual_norm(&f, &mesh).unwrap();
    let ratio = |v: &[f64]| {
        let g = GridFunction::new(mesh, v.to_vec()).unwrap();
        let num: f64 = f.iter().zip(v).map(|(a, b)| a * b).sum();
        num / h1_seminorm(&g)
    };
    // random directions, perturbing the best one found so far with shrinking noise
    let mut point: Vec<f64> = random_grid(&mut rng, 6).into_values();
    let mut best = ratio(&point);
    for step in 0..100_000 {
        let scale = 1.0 / (1.0 + step as f64 / 1000.0);
        let trial: Vec<f64> = point.iter().map(|p| p + scale * rng.gen_range(-1.0..1.0)).collect();
        let r = ratio(&trial);
        if r > best {
            best = r;
            point = trial;
        }
    }
    assert!(best <= exact * (1.0 + 1e-12));
    assert!(best >= 0.995 * exact, "{best} vs {exact}");
}
