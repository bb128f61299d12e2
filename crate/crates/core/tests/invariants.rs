use std::f64::consts::PI;

use conemetric::families::{pgamma_quadratic, solve_pole_positions};
use conemetric::geodesics::{radial_length, spherical_angle};
use conemetric::{AngleTriple, BranchChoice, ExtendedComplex, HeartParams, ThreeFootballParams};
use num_complex::Complex64;
use proptest::prelude::*;

fn origin() -> ExtendedComplex {
    ExtendedComplex::finite(0.0, 0.0)
}

fn admissible_angles() -> impl Strategy<Value = AngleTriple> {
    (0.05f64..3.0, 0.05f64..3.0, 0.05f64..3.0).prop_filter_map("integral angle data", |(a, b, g)| AngleTriple::new(a, b, g).ok())
}

fn p_beta() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0)
        .prop_map(|(re, im)| Complex64::new(re, im))
        .prop_filter("too close to 0 or 1", |p| p.norm() > 0.05 && (p - 1.0).norm() > 0.05)
}

proptest! {
    #[test]
    fn heart_pi_sums_and_equal_legs(beta in 0.05f64..0.95, c in -4.0f64..4.0) {
        let h = HeartParams::new(beta, c).unwrap();
        let m = h.metric();
        let l01 = radial_length(&m, origin(), ExtendedComplex::finite(1.0, 0.0));
        let l0p = radial_length(&m, origin(), ExtendedComplex::Finite(h.gamma_pole()));
        let l0inf = radial_length(&m, origin(), ExtendedComplex::Infinity);
        prop_assert!((l01 + l0inf - PI).abs() < 1e-14);
        prop_assert!((l0p + l0inf - PI).abs() < 1e-14);
        prop_assert!((l01 - l0p).abs() < 1e-14);
    }

    #[test]
    fn heart_has_one_simple_finite_zero(beta in 0.05f64..0.95) {
        let form = HeartParams::new(beta, 0.0).unwrap().form();
        let zeros = form.finite_zeros().unwrap();
        prop_assert_eq!(zeros.len(), 1);
        prop_assert_eq!(zeros[0].1, 1);
        prop_assert!(zeros[0].0.as_finite().unwrap().norm() < 1e-12);
    }

    #[test]
    fn both_quadratic_roots_satisfy_the_constraints(angles in admissible_angles(), pb in p_beta()) {
        for branch in [BranchChoice::Plus, BranchChoice::Minus] {
            let Ok(params) = ThreeFootballParams::new(angles, pb, branch, 1.0) else { continue };
            let zeros = params.form().finite_zeros().unwrap();
            prop_assert_eq!(zeros.len(), 2);
            for want in [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)] {
                let hit = zeros.iter().any(|(z, order)| *order == 1 && (z.as_finite().unwrap() - want).norm() < 1e-9);
                prop_assert!(hit, "no simple zero at {}", want);
            }
        }
    }

    #[test]
    fn branches_satisfy_vieta(angles in admissible_angles(), pb in p_beta()) {
        let (Ok((_, plus)), Ok((_, minus))) = (
            solve_pole_positions(&angles, pb, BranchChoice::Plus),
            solve_pole_positions(&angles, pb, BranchChoice::Minus),
        ) else {
            return Ok(());
        };
        let [a, b, c] = pgamma_quadratic(&angles, pb);
        prop_assert!((plus - minus).norm() > 0.0);
        let scale = 1.0 + (b / a).norm() + (c / a).norm();
        prop_assert!((plus + minus + b / a).norm() < 1e-10 * scale);
        prop_assert!((plus * minus - c / a).norm() < 1e-10 * scale);
    }

    #[test]
    fn spherical_triangles_have_positive_excess(b in 0.05f64..3.0, c in 0.05f64..3.0, t in 0.05f64..0.95) {
        // third side strictly between |b - c| and min(b + c, 2π - b - c)
        let lo = (b - c).abs();
        let hi = (b + c).min(2.0 * PI - b - c);
        prop_assume!(hi - lo > 1e-3);
        let a = lo + t * (hi - lo);
        let angles = [spherical_angle(a, b, c), spherical_angle(b, c, a), spherical_angle(c, a, b)];
        if let [Ok(x), Ok(y), Ok(z)] = angles {
            prop_assert!(x + y + z > PI);
        }
    }
}

#[test]
fn phi_tends_to_zero_and_four_at_poles() {
    // Φ = 4|F|²/(1+|F|²) and |F| ~ |z - p|^r, so Φ → 0 at positive
    // residues and Φ → 4 at negative ones
    let params = ThreeFootballParams::special(Complex64::new(0.3, 0.2), BranchChoice::Minus, 1.0).unwrap();
    let m = params.metric();
    for pole in m.form.poles() {
        for k in 0..8 {
            let z = pole.position + Complex64::from_polar(1e-9, k as f64 * 0.7);
            let phi = m.phi_at(z).unwrap();
            if pole.residue > 0.0 {
                assert!(phi < 1e-3, "{phi} near {}", pole.position);
            } else {
                assert!(phi > 4.0 - 1e-3, "{phi} near {}", pole.position);
            }
        }
    }
}
