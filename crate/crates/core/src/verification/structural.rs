//! Exhaustive structural invariants: γ bounds and symmetries, the centre of
//! mass transform, harmonic dimensions and Gram matrices.
use super::report::{CheckKind, CheckReport, Expected};
use crate::constructions::verify_transform_orthogonality;
use crate::geometry::sampling::{sample_sphere, stream_rng};
use crate::geometry::vec3::Vec3;
use crate::geometry::{Configuration, Nucleus};
use crate::harmonics::{degree_dimension, kernel_dimension, HarmonicBasis};
use crate::jastrow::{gamma2, gamma3, grad_f2, laplacian_f2, GradF2Decomposition};
use crate::schrodinger::{coulomb_potential, hamiltonian_residual, Hydrogenic, HydrogenicKind};
use crate::geometry::FdScheme;
use rand::Rng;
use rand_distr::StandardNormal;

fn gaussian3<R: Rng>(rng: &mut R) -> Vec3<f64> {
    [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)]
}

fn rotate(r: &[[f64; 3]; 3], x: &Vec3<f64>) -> Vec3<f64> {
    [0, 1, 2].map(|i| r[i][0] * x[0] + r[i][1] * x[1] + r[i][2] * x[2])
}

fn rotation<R: Rng>(rng: &mut R) -> [[f64; 3]; 3] {
    let mut q = [0.0; 4];
    sample_sphere(rng, &mut q);
    let [w, x, y, z] = q;
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - z * w), 2.0 * (x * z + y * w)],
        [2.0 * (x * y + z * w), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - x * w)],
        [2.0 * (x * z - y * w), 2.0 * (y * z + x * w), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

/// |γ2| <= 2, 1 <= γ3 <= 3/2, symmetric, rotation and scale invariant.
pub fn check_gamma_invariants(count: usize, seed: u64) -> CheckReport {
    let mut rng = stream_rng(seed, 0);
    let (mut bound, mut sym, mut rot, mut perm): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    let mut ok = true;
    for _ in 0..count {
        let (x, y, z) = (gaussian3(&mut rng), gaussian3(&mut rng), gaussian3(&mut rng));
        let r = rotation(&mut rng);
        let lam: f64 = rng.random_range(0.1..10.0);
        let s = |v: &Vec3<f64>| v.map(|c| c * lam);
        let (Ok(g2), Ok(g3)) = (gamma2(&x, &y), gamma3(&x, &y, &z)) else {
            ok = false;
            continue;
        };
        bound = bound.max(g2.abs() - 2.0).max(1.0 - g3).max(g3 - 1.5);
        sym = sym.max((gamma2(&y, &x).unwrap() - g2).abs());
        rot = rot
            .max((gamma2(&rotate(&r, &x), &rotate(&r, &y)).unwrap() - g2).abs())
            .max((gamma2(&s(&x), &s(&y)).unwrap() - g2).abs())
            .max((gamma3(&rotate(&r, &x), &rotate(&r, &y), &rotate(&r, &z)).unwrap() - g3).abs())
            .max((gamma3(&s(&x), &s(&y), &s(&z)).unwrap() - g3).abs());
        for p in [gamma3(&y, &x, &z), gamma3(&z, &y, &x), gamma3(&x, &z, &y), gamma3(&y, &z, &x), gamma3(&z, &x, &y)] {
            perm = perm.max((p.unwrap() - g3).abs());
        }
    }
    CheckReport::new(
        "structural.gamma",
        CheckKind::Positive,
        "|γ2| <= 2 and 1 <= γ3 <= 3/2; γ2 symmetric; both rotation and scale invariant to 1e-12; γ3 exactly permutation invariant",
        Expected::ClosedForm,
    )
    .value("bound_excess", bound)
    .value("symmetry_defect", sym)
    .value("invariance_defect", rot)
    .value("permutation_defect", perm)
    .expect(0.0, 1e-12)
    .seeded(seed, count as u64)
    .met(ok && bound <= 1e-12 && sym <= 1e-12 && rot <= 1e-12 && perm == 0.0)
}

pub fn check_transform(seed: u64) -> CheckReport {
    let r = verify_transform_orthogonality(1000, seed);
    CheckReport::new(
        "structural.transform",
        CheckKind::Positive,
        "𝒯ᵀ𝒯 = I and ℛ̄³ = I to 1e-15, 𝒯⁻¹σ𝒯 = diag(1, ℛ̄), γ̃3∘ℛ = γ̃3 to 1e-12",
        Expected::ClosedForm,
    )
    .value("max_deviation", r.max_deviation())
    .value("orthogonality", r.orthogonality)
    .value("rotation_order", r.rotation_order)
    .value("conjugation", r.conjugation)
    .value("gamma_tilde_defect", r.gamma_tilde_defect)
    .expect(0.0, 1e-12)
    .seeded(seed, 1000)
    .met(r.orthogonality <= 1e-15 && r.rotation_order <= 1e-15 && r.max_deviation() <= 1e-12)
}

/// h(l) from the formula, the certified kernel dimension and the basis size
/// agree, and every Gram matrix is the identity to 1e-10.
pub fn check_harmonic_dimensions(dims: &[usize], lmax: u32) -> CheckReport {
    let desc = "h(l) formula = dim ker Δ = basis size for each n, l; Gram matrices equal the identity to 1e-10";
    let mut mismatches = 0;
    let mut gram_dev: f64 = 0.0;
    let mut cases = 0;
    for &n in dims {
        for l in 0..=lmax {
            let h = degree_dimension(n, l as usize) as usize;
            let basis = match (kernel_dimension(n, l), HarmonicBasis::full(n, l)) {
                (Ok(k), Ok(b)) => {
                    if k != h {
                        mismatches += 1;
                    }
                    b
                }
                (Err(e), _) | (_, Err(e)) => return CheckReport::errored("structural.harmonics", CheckKind::Positive, desc, &e),
            };
            if basis.len() != h {
                mismatches += 1;
            }
            let g = basis.gram();
            for a in 0..h {
                for b in 0..h {
                    let e = if a == b { 1.0 } else { 0.0 };
                    gram_dev = gram_dev.max((g[a * h + b] - e).abs());
                }
            }
            cases += 1;
        }
    }
    CheckReport::new("structural.harmonics", CheckKind::Positive, desc, Expected::ClosedForm)
        .value("gram_deviation", gram_dev)
        .value("dimension_mismatches", mismatches as f64)
        .value("cases", cases as f64)
        .expect(0.0, 1e-10)
        .met(mismatches == 0 && gram_dev <= 1e-10)
}

/// Analytic ΔF2 = V, |∇F2|² = Γ1 + Γ2 + Γ3, and the hydrogenic eigen
/// equations at random points.
pub fn check_factor_identities(count: usize, seed: u64) -> CheckReport {
    let mut rng = stream_rng(seed, 1);
    let (mut lap_dev, mut grad_dev, mut eig_dev): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let scheme = FdScheme::default();
    let mut ok = true;
    for c in 0..count {
        let n = 1 + c % 4;
        let z = rng.random_range(1..=4) as f64;
        let electrons: Vec<_> = (0..n).map(|_| gaussian3(&mut rng)).collect();
        let Ok(cfg) = Configuration::new(electrons, vec![Nucleus { position: [0.0; 3], charge: z }]) else {
            continue;
        };
        let (Ok(l), Ok(v), Ok(g), Ok(d)) = (laplacian_f2(&cfg), coulomb_potential(&cfg), grad_f2(&cfg), GradF2Decomposition::new(&cfg)) else {
            ok = false;
            continue;
        };
        lap_dev = lap_dev.max((l - v).abs() / v.abs().max(1.0));
        let g2: f64 = g.iter().map(|v| v * v).sum();
        match d.total(&cfg.electrons) {
            Ok(t) => grad_dev = grad_dev.max((g2 - t).abs() / t.abs().max(1.0)),
            Err(_) => ok = false,
        }
        for kind in [HydrogenicKind::Ground, HydrogenicKind::Excited] {
            let psi = Hydrogenic { kind, z };
            let one = Configuration::atomic(z, vec![cfg.electrons[0]]).expect("valid");
            if one.singular_distance() < 0.05 {
                continue;
            }
            match hamiltonian_residual(&psi, psi.energy(), &one, &scheme) {
                Ok(r) => eig_dev = eig_dev.max(r),
                Err(_) => ok = false,
            }
        }
    }
    CheckReport::new(
        "structural.factors",
        CheckKind::Positive,
        "ΔF2 = V in closed form (1e-12), |∇F2|² = Γ1 + Γ2 + Γ3 (1e-12), hydrogenic (-Δ + V - E)ψ = 0 by FD (1e-6)",
        Expected::ClosedForm,
    )
    .value("laplacian_deviation", lap_dev)
    .value("gradient_square_deviation", grad_dev)
    .value("eigen_residual", eig_dev)
    .expect(0.0, 1e-12)
    .seeded(seed, count as u64)
    .met(ok && lap_dev <= 1e-12 && grad_dev <= 1e-12 && eig_dev <= 1e-6)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_hold() {
        assert!(check_gamma_invariants(2000, 1).ok());
        assert!(check_transform(2).ok());
        let r = check_factor_identities(200, 3);
        assert!(r.ok(), "{r:?}");
        let h = check_harmonic_dimensions(&[3, 6], 4);
        assert!(h.ok(), "{h:?}");
    }
}
