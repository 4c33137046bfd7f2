use mtensor::{hadamard_power, residual, DenseTensor, MultiIndex};
use proptest::prelude::*;

fn q() -> DenseTensor {
    DenseTensor::new(3, 2, vec![4.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, 4.0]).unwrap()
}

prop_compose! {
    fn shape()(order in 2usize..=4, dim in 1usize..=4) -> (usize, usize) {
        (order, dim)
    }
}

prop_compose! {
    fn tensor_and_vector()((order, dim) in shape())
        (entries in prop::collection::vec(-3.0f64..3.0, dim.pow(order as u32)),
         x in prop::collection::vec(-2.0f64..2.0, dim),
         order in Just(order), dim in Just(dim)) -> (DenseTensor, Vec<f64>) {
        (DenseTensor::new(order, dim, entries).unwrap(), x)
    }
}

/// Full m-fold sum, written independently of the library contraction.
fn brute_force_form(t: &DenseTensor, x: &[f64]) -> f64 {
    (0..t.len())
        .map(|k| {
            let idx = t.index_of(k);
            t.entries()[k] * idx.components().iter().map(|&i| x[i - 1]).product::<f64>()
        })
        .sum()
}

fn close(a: &[f64], b: &[f64], rel: f64) -> bool {
    let scale = a.iter().chain(b).fold(1.0f64, |m, v| m.max(v.abs()));
    a.iter().zip(b).all(|(p, q)| (p - q).abs() <= rel * scale)
}

proptest! {
    #[test]
    fn contraction_is_homogeneous((t, x) in tensor_and_vector(), c in prop::sample::select(vec![-2.0, 0.5, 3.0, 0.0])) {
        let base = t.apply(&x).unwrap();
        let cx: Vec<f64> = x.iter().map(|v| c * v).collect();
        let scaled = t.apply(&cx).unwrap();
        let factor = c.powi(t.order() as i32 - 1);
        let expect: Vec<f64> = base.iter().map(|v| factor * v).collect();
        prop_assert!(close(&scaled, &expect, 1e-12));
    }

    #[test]
    fn contraction_is_linear_in_tensor((t, x) in tensor_and_vector(), seed in 0u64..1000) {
        let other = DenseTensor::from_fn(t.order(), t.dim(), |i| {
            ((i.iter().sum::<usize>() as u64 * 31 + seed) % 7) as f64 - 3.0
        }).unwrap();
        let sum = (&t + &other).apply(&x).unwrap();
        let parts: Vec<f64> = t.apply(&x).unwrap().iter().zip(other.apply(&x).unwrap()).map(|(a, b)| a + b).collect();
        prop_assert!(close(&sum, &parts, 1e-12));
    }

    #[test]
    fn unit_tensor_gives_hadamard_power_exactly((order, dim) in shape(), x in prop::collection::vec(-5.0f64..5.0, 4)) {
        let x = &x[..dim];
        let i = DenseTensor::unit(order, dim).unwrap();
        let y = i.apply(x).unwrap();
        let p = hadamard_power(x, (order - 1) as f64).unwrap();
        prop_assert_eq!(y, p);
    }

    #[test]
    fn form_matches_brute_force((t, x) in tensor_and_vector()) {
        let f = t.form(&x).unwrap();
        let g = brute_force_form(&t, &x);
        prop_assert!((f - g).abs() <= 1e-12 * (1.0 + g.abs().max(f.abs())) * t.len() as f64);
    }

    #[test]
    fn symmetrize_preserves_form_and_is_idempotent((t, x) in tensor_and_vector()) {
        let s = t.symmetrize();
        prop_assert!(s.is_symmetric());
        prop_assert_eq!(s.symmetrize(), s.clone());
        let fs = brute_force_form(&s, &x);
        let ft = brute_force_form(&t, &x);
        let scale = t.entries().iter().map(|v| v.abs()).sum::<f64>() * x.iter().fold(1.0f64, |m, v| m.max(v.abs())).powi(t.order() as i32);
        prop_assert!((fs - ft).abs() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn build_then_entry_round_trips(( t, _x) in tensor_and_vector()) {
        let rebuilt = DenseTensor::new(t.order(), t.dim(), t.entries().to_vec()).unwrap();
        for k in 0..t.len() {
            let idx = t.index_of(k);
            prop_assert_eq!(rebuilt.entry(&idx).unwrap().to_bits(), t.entries()[k].to_bits());
        }
    }
}

#[test]
fn matrix_symmetrization() {
    let m = DenseTensor::from_fn(2, 3, |i| (i[0] * 3 + i[1]) as f64).unwrap();
    let s = m.symmetrize();
    for i in 1..=3 {
        for j in 1..=3 {
            let a = m.entry(&MultiIndex::from([i, j])).unwrap();
            let b = m.entry(&MultiIndex::from([j, i])).unwrap();
            assert_eq!(s.entry(&MultiIndex::from([i, j])).unwrap(), (a + b) / 2.0);
        }
    }
}

#[test]
fn shift_combine_maps_eigenpairs() {
    // (1, (1,1)) is an exact eigenpair of Q
    assert_eq!(residual(&q(), 1.0, &[1.0, 1.0]).unwrap(), 0.0);
    for (a, b) in [(1.0, 3.0), (-1.0, 0.0), (2.5, -4.0), (-0.5, 7.0)] {
        let t = q().shift_combine(a, b);
        let r = residual(&t, a * (1.0 + b), &[1.0, 1.0]).unwrap();
        assert!(r <= 1e-12, "a={a} b={b}: {r}");
    }
}
