//! Floating-point cross-checks of the MacWilliams substitutions, using
//! complex roots of unity instead of exact cyclotomic arithmetic.

use std::f64::consts::PI;

use num_complex::Complex;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wenum::code::Word;
use wenum::composition::cell_tuple;
use wenum::{
    all_codes, avg_cjwe_bruteforce, avg_macwilliams, cjwe, macwilliams_transform, Budget, ComplexPoly,
    Field, FloatPoly, LinearCode, Variant,
};

type C64 = Complex<f64>;

fn chi(field: &Field, a: wenum::FieldElement) -> C64 {
    let k = field.trace_coordinate(a) as f64;
    C64::from_polar(1.0, 2.0 * PI * k / field.p() as f64)
}

/// The joint enumerator of (C1, C2) at `z`, straight from the codewords.
fn direct(c1: &LinearCode, c2: &LinearCode, z: &[C64]) -> C64 {
    let b = Budget::default();
    let q = c1.field().size();
    let w2: Vec<Word> = c2.codewords(&b).unwrap().collect();
    let mut total = C64::new(0.0, 0.0);
    for u in c1.codewords(&b).unwrap() {
        for v in &w2 {
            total += u
                .iter()
                .zip(v)
                .map(|(a, c)| z[a.index() * q + c.index()])
                .product::<C64>();
        }
    }
    total
}

/// The substituted point: x_{αβ} ↦ Σ_{ω∈S} χ(⟨ω, (α,β)⟩ on S) x_{…}.
fn substituted(field: &Field, variant: Variant, z: &[C64]) -> Vec<C64> {
    let q = field.size();
    let els: Vec<_> = field.elements().collect();
    (0..q * q)
        .map(|cell| {
            let ab = cell_tuple(q, 2, cell);
            let mut acc = C64::new(0.0, 0.0);
            for (target, &zt) in z.iter().enumerate() {
                let w = cell_tuple(q, 2, target);
                let keep = (0..2).all(|j| variant.coordinates().contains(&j) || w[j] == ab[j]);
                if !keep {
                    continue;
                }
                let mut phase = field.element(0).unwrap();
                for &j in variant.coordinates() {
                    phase = field.add(phase, field.mul(els[w[j]], els[ab[j]]));
                }
                acc += chi(field, phase) * zt;
            }
            acc
        })
        .collect()
}

fn random_point(rng: &mut ChaCha8Rng, cells: usize) -> Vec<C64> {
    (0..cells)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn close(a: C64, b: C64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

#[test]
fn transforms_agree_with_complex_character_sums() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for q in [2u32, 3, 4, 5] {
        let field = Field::of_order(q).unwrap();
        let codes = all_codes(&field, 2, &b).unwrap();
        for c1 in codes.iter().step_by(2) {
            for c2 in codes.iter().step_by(3) {
                let joint = cjwe::<BigRational>(c1, c2, &b).unwrap();
                let sizes = [c1.size(), c2.size()];
                for variant in Variant::ALL {
                    let exact = macwilliams_transform(&field, &joint, variant, &sizes, &b).unwrap();
                    let z = random_point(&mut rng, joint.cells());
                    let scale: f64 = variant
                        .coordinates()
                        .iter()
                        .map(|&j| sizes[j] as f64)
                        .product();
                    let via_sum =
                        direct(c1, c2, &substituted(&field, variant, &z)) / C64::new(scale, 0.0);
                    let complex: ComplexPoly = exact.to_ring();
                    assert!(close(complex.evaluate(&z).unwrap(), via_sum), "q={q} {variant:?}");
                }
            }
        }
    }
}

#[test]
fn averaged_transform_at_real_points() {
    let b = Budget::default();
    let field = Field::of_order(3).unwrap();
    let codes = all_codes(&field, 2, &b).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for c1 in &codes {
        for c2 in &codes {
            let avg = avg_cjwe_bruteforce(c1, c2, &b).unwrap();
            let t = avg_macwilliams(&field, &avg, Variant::Both, &[c1.size(), c2.size()], &b).unwrap();
            let want = avg_cjwe_bruteforce(&c1.dual(), &c2.dual(), &b).unwrap();
            let x: Vec<f64> = (0..9).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let (l, r): (FloatPoly, FloatPoly) = (t.to_ring(), want.to_ring());
            let (l, r) = (l.evaluate(&x).unwrap(), r.evaluate(&x).unwrap());
            assert!((l - r).abs() <= 1e-9 * (1.0 + l.abs()));
        }
    }
}
