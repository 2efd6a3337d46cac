//! The factors F2, F3 and their cutoff versions, with the fields derived from
//! them.
//!
//! F2 = -(1/2) Σ Z_l |y_il| + (1/4) Σ_{i<j} |x_i - x_j|, y_il = x_i - X_l, and
//! F3 = C0 Σ_l Z_l Σ_{i<j} (y_il·y_jl) ln(|y_il|² + |y_jl|²), C0 = (2-π)/(12π).
use crate::error::{Error, Result};
use crate::geometry::cutoff::chi;
use crate::geometry::vec3::{self, Vec3};
use crate::geometry::{Configuration, Nucleus};
use num_traits::{Float, FloatConst};
use serde::{Deserialize, Serialize};

type Mat3<T> = [[T; 3]; 3];

fn c<T: Float>(v: f64) -> T {
    T::from(v).unwrap()
}

/// (2-π)/(12π).
pub fn c0<T: Float + FloatConst>() -> T {
    (c::<T>(2.0) - T::PI()) / (c::<T>(12.0) * T::PI())
}

fn outer<T: Float>(a: &Vec3<T>, b: &Vec3<T>) -> Mat3<T> {
    let mut m = [[T::zero(); 3]; 3];
    for k in 0..3 {
        for l in 0..3 {
            m[k][l] = a[k] * b[l];
        }
    }
    m
}

fn eye<T: Float>() -> Mat3<T> {
    let mut m = [[T::zero(); 3]; 3];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = T::one();
    }
    m
}

fn lin<T: Float>(terms: &[(T, &Mat3<T>)]) -> Mat3<T> {
    let mut m = [[T::zero(); 3]; 3];
    for (s, a) in terms {
        for k in 0..3 {
            for l in 0..3 {
                m[k][l] = m[k][l] + *s * a[k][l];
            }
        }
    }
    m
}

/// Radial profile φ(ρ) = ρ, or χ(ρ)ρ with the cutoff, and two derivatives.
fn profile<T: Float>(rho: T, cut: bool) -> (T, T, T) {
    if !cut {
        return (rho, T::one(), T::zero());
    }
    let (x, d1, d2) = chi(rho);
    (x * rho, d1 * rho + x, d2 * rho + c::<T>(2.0) * d1)
}

/// Gradient and Hessian of v -> φ(|v|).
fn radial_derivs<T: Float>(v: &Vec3<T>, cut: bool) -> Result<(T, Vec3<T>, Mat3<T>)> {
    let rho = vec3::norm(v);
    if rho <= T::zero() {
        return Err(Error::Singular("coalescence in a distance term".into()));
    }
    let (p, d1, d2) = profile(rho, cut);
    let u = vec3::scale(v, T::one() / rho);
    let uu = outer(&u, &u);
    let id = eye();
    let tangential = lin(&[(T::one(), &id), (-T::one(), &uu)]);
    Ok((p, vec3::scale(&u, d1), lin(&[(d2, &uu), (d1 / rho, &tangential)])))
}

/// Cutoff weight χ(|a|) with gradient and Hessian in a.
fn weight<T: Float>(a: &Vec3<T>, cut: bool) -> (T, Vec3<T>, Mat3<T>) {
    let zero = [[T::zero(); 3]; 3];
    if !cut {
        return (T::one(), vec3::zero(), zero);
    }
    let r = vec3::norm(a);
    let (x, d1, d2) = chi(r);
    if d1 == T::zero() && d2 == T::zero() {
        return (x, vec3::zero(), zero);
    }
    let u = vec3::scale(a, T::one() / r);
    let uu = outer(&u, &u);
    let id = eye();
    let tangential = lin(&[(T::one(), &id), (-T::one(), &uu)]);
    (x, vec3::scale(&u, d1), lin(&[(d2, &uu), (d1 / r, &tangential)]))
}

/// Which factor an evaluation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Factor {
    F2,
    F3,
    /// F2 + F3
    F23,
    /// F_{2,cut} + F_{3,cut}
    Cut,
}

/// Parameters of the factors: the nuclei and the electron count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JastrowFactors<T = f64> {
    pub nuclei: Vec<Nucleus<T>>,
    pub n_electrons: usize,
}

struct Derivs<T> {
    value: T,
    grad: Vec<T>,
    hess: Option<Vec<T>>,
}

impl<T: Float> Derivs<T> {
    fn new(n: usize, hess: bool) -> Self {
        Derivs { value: T::zero(), grad: vec![T::zero(); 3 * n], hess: hess.then(|| vec![T::zero(); 9 * n * n]) }
    }

    fn add_grad(&mut self, i: usize, g: &Vec3<T>, s: T) {
        for k in 0..3 {
            self.grad[3 * i + k] = self.grad[3 * i + k] + s * g[k];
        }
    }

    fn add_block(&mut self, i: usize, j: usize, m: &Mat3<T>, s: T) {
        let n3 = self.grad.len();
        if let Some(h) = self.hess.as_mut() {
            for k in 0..3 {
                for l in 0..3 {
                    let idx = (3 * i + k) * n3 + 3 * j + l;
                    h[idx] = h[idx] + s * m[k][l];
                }
            }
        }
    }
}

impl<T: Float + FloatConst> JastrowFactors<T> {
    pub fn new(nuclei: Vec<Nucleus<T>>, n_electrons: usize) -> Self {
        JastrowFactors { nuclei, n_electrons }
    }

    pub fn for_config(cfg: &Configuration<T>) -> Self {
        Self::new(cfg.nuclei.clone(), cfg.n_electrons())
    }

    pub fn c0(&self) -> T {
        c0()
    }

    fn check(&self, x: &[Vec3<T>]) -> Result<()> {
        if x.len() != self.n_electrons {
            return Err(Error::InvalidInput(format!("expected {} electrons, got {}", self.n_electrons, x.len())));
        }
        Ok(())
    }

    fn f2_value(&self, x: &[Vec3<T>], cut: bool) -> T {
        let half = c::<T>(0.5);
        let quarter = c::<T>(0.25);
        let mut f = T::zero();
        for (i, xi) in x.iter().enumerate() {
            for n in &self.nuclei {
                f = f - half * n.charge * profile(vec3::dist(xi, &n.position), cut).0;
            }
            for xj in &x[i + 1..] {
                f = f + quarter * profile(vec3::dist(xi, xj), cut).0;
            }
        }
        f
    }

    fn f3_value(&self, x: &[Vec3<T>], cut: bool) -> T {
        let mut f = T::zero();
        for n in &self.nuclei {
            let y: Vec<Vec3<T>> = x.iter().map(|xi| vec3::sub(xi, &n.position)).collect();
            for i in 0..y.len() {
                for j in i + 1..y.len() {
                    let q = vec3::dot(&y[i], &y[i]) + vec3::dot(&y[j], &y[j]);
                    if q == T::zero() {
                        continue;
                    }
                    let w = weight(&y[i], cut).0 * weight(&y[j], cut).0;
                    f = f + n.charge * w * vec3::dot(&y[i], &y[j]) * q.ln();
                }
            }
        }
        c0::<T>() * f
    }

    fn f2_derivs(&self, x: &[Vec3<T>], cut: bool, d: &mut Derivs<T>) -> Result<()> {
        let half = c::<T>(0.5);
        let quarter = c::<T>(0.25);
        for (i, xi) in x.iter().enumerate() {
            for n in &self.nuclei {
                let (p, g, h) = radial_derivs(&vec3::sub(xi, &n.position), cut)?;
                let s = -half * n.charge;
                d.value = d.value + s * p;
                d.add_grad(i, &g, s);
                d.add_block(i, i, &h, s);
            }
            for (jo, xj) in x[i + 1..].iter().enumerate() {
                let j = i + 1 + jo;
                let (p, g, h) = radial_derivs(&vec3::sub(xi, xj), cut)?;
                d.value = d.value + quarter * p;
                d.add_grad(i, &g, quarter);
                d.add_grad(j, &g, -quarter);
                d.add_block(i, i, &h, quarter);
                d.add_block(j, j, &h, quarter);
                d.add_block(i, j, &h, -quarter);
                d.add_block(j, i, &h, -quarter);
            }
        }
        Ok(())
    }

    fn f3_derivs(&self, x: &[Vec3<T>], cut: bool, d: &mut Derivs<T>) -> Result<()> {
        let two = c::<T>(2.0);
        let four = c::<T>(4.0);
        let id = eye::<T>();
        for n in &self.nuclei {
            let s = c0::<T>() * n.charge;
            let y: Vec<Vec3<T>> = x.iter().map(|xi| vec3::sub(xi, &n.position)).collect();
            for i in 0..y.len() {
                for j in i + 1..y.len() {
                    let (a, b) = (&y[i], &y[j]);
                    let q = vec3::dot(a, a) + vec3::dot(b, b);
                    if q <= T::zero() {
                        return Err(Error::Singular("double collision at a nucleus".into()));
                    }
                    let l = q.ln();
                    let ab = vec3::dot(a, b);
                    let p = ab * l;
                    let gpa = vec3::add(&vec3::scale(b, l), &vec3::scale(a, two * ab / q));
                    let gpb = vec3::add(&vec3::scale(a, l), &vec3::scale(b, two * ab / q));
                    let (wa, ga, ha) = weight(a, cut);
                    let (wb, gb, hb) = weight(b, cut);
                    d.value = d.value + s * wa * wb * p;
                    let grad_a = vec3::add(&vec3::scale(&ga, wb * p), &vec3::scale(&gpa, wa * wb));
                    let grad_b = vec3::add(&vec3::scale(&gb, wa * p), &vec3::scale(&gpb, wa * wb));
                    d.add_grad(i, &grad_a, s);
                    d.add_grad(j, &grad_b, s);
                    if d.hess.is_none() {
                        continue;
                    }
                    let (ba, abo, aa, bb) = (outer(b, a), outer(a, b), outer(a, a), outer(b, b));
                    let hpaa = lin(&[(two / q, &ba), (two / q, &abo), (ab * two / q, &id), (-ab * four / (q * q), &aa)]);
                    let hpbb = lin(&[(two / q, &abo), (two / q, &ba), (ab * two / q, &id), (-ab * four / (q * q), &bb)]);
                    let hpab = lin(&[(l, &id), (two / q, &bb), (two / q, &aa), (-ab * four / (q * q), &abo)]);
                    let (ga_gpa, gpa_ga) = (outer(&ga, &gpa), outer(&gpa, &ga));
                    let (gb_gpb, gpb_gb) = (outer(&gb, &gpb), outer(&gpb, &gb));
                    let haa = lin(&[(wb * p, &ha), (wb, &ga_gpa), (wb, &gpa_ga), (wa * wb, &hpaa)]);
                    let hbb = lin(&[(wa * p, &hb), (wa, &gb_gpb), (wa, &gpb_gb), (wa * wb, &hpbb)]);
                    let (ga_gb, ga_gpb, gpa_gb) = (outer(&ga, &gb), outer(&ga, &gpb), outer(&gpa, &gb));
                    let hab = lin(&[(p, &ga_gb), (wb, &ga_gpb), (wa, &gpa_gb), (wa * wb, &hpab)]);
                    let mut hba = [[T::zero(); 3]; 3];
                    for k in 0..3 {
                        for m in 0..3 {
                            hba[k][m] = hab[m][k];
                        }
                    }
                    d.add_block(i, i, &haa, s);
                    d.add_block(j, j, &hbb, s);
                    d.add_block(i, j, &hab, s);
                    d.add_block(j, i, &hba, s);
                }
            }
        }
        Ok(())
    }

    fn derivs(&self, x: &[Vec3<T>], factor: Factor, hess: bool) -> Result<Derivs<T>> {
        self.check(x)?;
        let mut d = Derivs::new(x.len(), hess);
        let cut = factor == Factor::Cut;
        if matches!(factor, Factor::F2 | Factor::F23 | Factor::Cut) {
            self.f2_derivs(x, cut, &mut d)?;
        }
        if matches!(factor, Factor::F3 | Factor::F23 | Factor::Cut) {
            self.f3_derivs(x, cut, &mut d)?;
        }
        Ok(d)
    }

    /// Value of the factor; finite everywhere.
    pub fn value(&self, x: &[Vec3<T>], factor: Factor) -> Result<T> {
        self.check(x)?;
        let cut = factor == Factor::Cut;
        Ok(match factor {
            Factor::F2 => self.f2_value(x, false),
            Factor::F3 => self.f3_value(x, false),
            Factor::F23 => self.f2_value(x, false) + self.f3_value(x, false),
            Factor::Cut => self.f2_value(x, cut) + self.f3_value(x, cut),
        })
    }

    pub fn gradient(&self, x: &[Vec3<T>], factor: Factor) -> Result<Vec<T>> {
        Ok(self.derivs(x, factor, false)?.grad)
    }

    /// Row-major 3N x 3N Hessian; row 3j+i is coordinate i of electron j.
    pub fn hessian(&self, x: &[Vec3<T>], factor: Factor) -> Result<Vec<T>> {
        Ok(self.derivs(x, factor, true)?.hess.expect("requested"))
    }

    pub fn laplacian(&self, x: &[Vec3<T>], factor: Factor) -> Result<T> {
        let h = self.hessian(x, factor)?;
        let n3 = 3 * x.len();
        Ok((0..n3).fold(T::zero(), |s, k| s + h[k * n3 + k]))
    }

    /// ∂²F_cut / ∂x_{j,i} ∂x_{k,l}.
    pub fn hessian_cut_entry(&self, x: &[Vec3<T>], (j, i): (usize, usize), (k, l): (usize, usize)) -> Result<T> {
        let n3 = 3 * x.len();
        Ok(self.hessian(x, Factor::Cut)?[(3 * j + i) * n3 + 3 * k + l])
    }

    /// ΔF2 in closed form, equal to the Coulomb potential.
    pub fn laplacian_f2(&self, x: &[Vec3<T>]) -> Result<T> {
        self.check(x)?;
        let two = c::<T>(2.0);
        let mut v = T::zero();
        for (i, xi) in x.iter().enumerate() {
            for n in &self.nuclei {
                let r = vec3::dist(xi, &n.position);
                if r <= T::zero() {
                    return Err(Error::Singular("electron at a nucleus".into()));
                }
                v = v - c::<T>(0.5) * n.charge * two / r;
            }
            for xj in &x[i + 1..] {
                let r = vec3::dist(xi, xj);
                if r <= T::zero() {
                    return Err(Error::Singular("electron coalescence".into()));
                }
                v = v + c::<T>(0.25) * two * two / r;
            }
        }
        Ok(v)
    }
}

pub fn eval_f2(cfg: &Configuration) -> f64 {
    JastrowFactors::for_config(cfg).f2_value(&cfg.electrons, false)
}
pub fn grad_f2(cfg: &Configuration) -> Result<Vec<f64>> {
    JastrowFactors::for_config(cfg).gradient(&cfg.electrons, Factor::F2)
}
pub fn laplacian_f2(cfg: &Configuration) -> Result<f64> {
    JastrowFactors::for_config(cfg).laplacian_f2(&cfg.electrons)
}
pub fn eval_f3(cfg: &Configuration) -> f64 {
    JastrowFactors::for_config(cfg).f3_value(&cfg.electrons, false)
}
pub fn grad_f3(cfg: &Configuration) -> Result<Vec<f64>> {
    JastrowFactors::for_config(cfg).gradient(&cfg.electrons, Factor::F3)
}
pub fn eval_fcut(cfg: &Configuration) -> f64 {
    let j = JastrowFactors::for_config(cfg);
    j.f2_value(&cfg.electrons, true) + j.f3_value(&cfg.electrons, true)
}
pub fn grad_fcut(cfg: &Configuration) -> Result<Vec<f64>> {
    JastrowFactors::for_config(cfg).gradient(&cfg.electrons, Factor::Cut)
}

/// γ2(x, y) = (x/|x| - y/|y|)·(x - y)/|x - y|.
pub fn gamma2<T: Float>(x: &Vec3<T>, y: &Vec3<T>) -> Result<T> {
    let (rx, ry) = (vec3::norm(x), vec3::norm(y));
    let d = vec3::sub(x, y);
    let rd = vec3::norm(&d);
    if rx == T::zero() || ry == T::zero() || rd == T::zero() {
        return Err(Error::Singular("gamma2 needs x, y nonzero and distinct".into()));
    }
    let u = vec3::sub(&vec3::scale(x, T::one() / rx), &vec3::scale(y, T::one() / ry));
    Ok(vec3::dot(&u, &d) / rd)
}

/// Sum of the cosines of the triangle with vertices x, y, z.
pub fn gamma3<T: Float>(x: &Vec3<T>, y: &Vec3<T>, z: &Vec3<T>) -> Result<T> {
    let e = |a: &Vec3<T>, b: &Vec3<T>| -> Result<Vec3<T>> {
        let d = vec3::sub(a, b);
        let r = vec3::norm(&d);
        if r == T::zero() {
            return Err(Error::Singular("gamma3 needs distinct points".into()));
        }
        Ok(vec3::scale(&d, T::one() / r))
    };
    let mut t = [
        vec3::dot(&e(x, y)?, &e(x, z)?),
        vec3::dot(&e(y, z)?, &e(y, x)?),
        vec3::dot(&e(z, x)?, &e(z, y)?),
    ];
    // order-independent sum, so relabelling the vertices is exact
    t.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(t[0] + t[1] + t[2])
}

/// |∇F2|² = Γ1 + Γ2 + Γ3 for one nucleus of charge Z at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradF2Decomposition {
    pub z: f64,
    pub n: usize,
}

impl GradF2Decomposition {
    pub fn new(cfg: &Configuration) -> Result<Self> {
        if cfg.nuclei.len() != 1 || cfg.nuclei[0].position != [0.0; 3] {
            return Err(Error::InvalidInput("decomposition is defined for one nucleus at the origin".into()));
        }
        Ok(GradF2Decomposition { z: cfg.nuclei[0].charge, n: cfg.n_electrons() })
    }

    /// N Z²/4 + N(N-1)/16.
    pub fn gamma1(&self) -> f64 {
        let n = self.n as f64;
        n * self.z * self.z / 4.0 + n * (n - 1.0) / 16.0
    }

    /// -(Z/4) Σ_{j<k} γ2(x_j, x_k).
    pub fn gamma2_term(&self, x: &[Vec3<f64>]) -> Result<f64> {
        let mut s = 0.0;
        for j in 0..x.len() {
            for k in j + 1..x.len() {
                s += gamma2(&x[j], &x[k])?;
            }
        }
        Ok(-self.z / 4.0 * s)
    }

    /// (1/8) Σ_{j<k<l} γ3(x_j, x_k, x_l).
    pub fn gamma3_term(&self, x: &[Vec3<f64>]) -> Result<f64> {
        let mut s = 0.0;
        for j in 0..x.len() {
            for k in j + 1..x.len() {
                for l in k + 1..x.len() {
                    s += gamma3(&x[j], &x[k], &x[l])?;
                }
            }
        }
        Ok(s / 8.0)
    }

    pub fn total(&self, x: &[Vec3<f64>]) -> Result<f64> {
        Ok(self.gamma1() + self.gamma2_term(x)? + self.gamma3_term(x)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhiVariant {
    /// e^{-F2} ψ
    Phi2,
    /// e^{-F2-F3} ψ
    Phi3,
    /// e^{-F_cut} ψ
    Phi3Cut,
}

/// φ = e^{-F} ψ at the configuration, for the value ψ(x) supplied.
pub fn extract_phi(psi: &dyn crate::field::ScalarField, variant: PhiVariant, cfg: &Configuration) -> Result<f64> {
    let j = JastrowFactors::for_config(cfg);
    let x = &cfg.electrons;
    let f = match variant {
        PhiVariant::Phi2 => j.value(x, Factor::F2)?,
        PhiVariant::Phi3 => j.value(x, Factor::F23)?,
        PhiVariant::Phi3Cut => j.value(x, Factor::Cut)?,
    };
    Ok((-f).exp() * psi.value(&cfg.flatten()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct K3Pieces {
    pub mu_hat: f64,
    /// (Z/4) Σ_{j<k} (2-π)/(3π) (x_j·x_k) ln(x_j² + x_k²)
    pub kappa_hat_log_part: f64,
    /// Z (2-π)/(12π) Σ_{j<k} (x_j·x_k) ln(x_j² + x_k²)
    pub log_term: f64,
}

/// μ̂ = -(1/6)(Σ (Z²/4)|x_j|² + Σ_{j<k} |x_j - x_k|²/16) and the log parts.
pub fn k3_pieces(cfg: &Configuration) -> Result<K3Pieces> {
    let d = GradF2Decomposition::new(cfg)?;
    Ok(k3_pieces_at(d.z, &cfg.electrons))
}

pub fn k3_pieces_at(z: f64, x: &[Vec3<f64>]) -> K3Pieces {
    let pi = std::f64::consts::PI;
    let mut quad = 0.0;
    let mut logs = 0.0;
    for j in 0..x.len() {
        quad += z * z / 4.0 * vec3::dot(&x[j], &x[j]);
        for k in j + 1..x.len() {
            let d = vec3::sub(&x[j], &x[k]);
            quad += vec3::dot(&d, &d) / 16.0;
            let q = vec3::dot(&x[j], &x[j]) + vec3::dot(&x[k], &x[k]);
            if q > 0.0 {
                logs += vec3::dot(&x[j], &x[k]) * q.ln();
            }
        }
    }
    K3Pieces {
        mu_hat: -quad / 6.0,
        kappa_hat_log_part: z / 4.0 * (2.0 - pi) / (3.0 * pi) * logs,
        log_term: z * (2.0 - pi) / (12.0 * pi) * logs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fd::{fd_hessian, FdScheme};
    use crate::field::FnField;

    fn atom(z: f64, x: Vec<Vec3<f64>>) -> Configuration {
        Configuration::atomic(z, x).unwrap()
    }

    #[test]
    fn hydrogen_like_values() {
        let cfg = atom(2.0, vec![[1.0, 0.0, 0.0]]);
        assert_eq!(eval_f2(&cfg), -1.0);
        assert_eq!(laplacian_f2(&cfg).unwrap(), -2.0);
        assert_eq!(eval_f3(&cfg), 0.0);
    }

    #[test]
    fn f3_two_electrons_on_axis() {
        let cfg = atom(1.0, vec![[0.0, 0.0, 1.0], [0.0, 0.0, 1.0]]);
        assert!((eval_f3(&cfg) - -0.020989665021220176885).abs() < 1e-16);
        assert!((c0::<f64>() - -0.030281685636034888077).abs() < 1e-17);
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma2(&[1.0, 0.0, 0.0], &[-1.0, 0.0, 0.0]).unwrap(), 2.0);
        assert!(gamma2(&[0.3, 0.2, 0.1], &[0.6, 0.4, 0.2]).unwrap().abs() < 1e-15);
        let h = 3f64.sqrt() / 2.0;
        let g = gamma3(&[5.0, 1.0, 0.0], &[6.0, 1.0, 0.0], &[5.5, 1.0 + h, 0.0]).unwrap();
        assert!((g - 1.5).abs() < 1e-14);
        assert!(gamma2(&[0.0; 3], &[1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn cutoff_regions() {
        let near = atom(1.0, vec![[0.3, 0.2, 0.0], [-0.2, 0.4, 0.1]]);
        let j = JastrowFactors::for_config(&near);
        assert_eq!(j.value(&near.electrons, Factor::Cut).unwrap(), j.value(&near.electrons, Factor::F23).unwrap());
        let far = atom(1.0, vec![[3.0, 0.0, 0.0], [0.0, -3.0, 0.0]]);
        assert_eq!(eval_fcut(&far), 0.0);
    }

    #[test]
    fn analytic_hessians_match_differences() {
        let nuclei = vec![
            Nucleus { position: [0.0, 0.0, 0.0], charge: 2.0 },
            Nucleus { position: [1.1, 0.3, -0.4], charge: 1.0 },
        ];
        let x = vec![[0.9, 1.2, 0.1], [-0.7, 0.4, 1.3], [1.5, -0.8, 0.2]];
        let cfg = Configuration::new(x.clone(), nuclei).unwrap();
        let j = JastrowFactors::for_config(&cfg);
        for factor in [Factor::F2, Factor::F3, Factor::Cut] {
            let f = FnField::new(9, |p: &[f64]| j.value(&cfg.with_flat(p).electrons, factor).unwrap());
            let num = fd_hessian(&f, &cfg.flatten(), &FdScheme { relative_step: 1e-3, absolute_step: None, richardson: 2 }).unwrap();
            let ana = j.hessian(&x, factor).unwrap();
            for (a, b) in num.iter().zip(&ana) {
                assert!((a - b).abs() < 1e-6, "{factor:?}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn decomposition_two_electrons() {
        let x = vec![[0.4, -0.3, 0.8], [-1.1, 0.2, 0.5]];
        let cfg = atom(2.0, x.clone());
        let g = grad_f2(&cfg).unwrap();
        let lhs: f64 = g.iter().map(|v| v * v).sum();
        let d = GradF2Decomposition::new(&cfg).unwrap();
        assert_eq!(d.gamma3_term(&x).unwrap(), 0.0);
        assert!((lhs - d.total(&x).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn k3_log_coefficients_agree() {
        let p = k3_pieces_at(3.0, &[[0.2, 0.5, -0.1], [0.7, -0.3, 0.4]]);
        assert!((p.kappa_hat_log_part - p.log_term).abs() < 1e-15);
        let single = k3_pieces_at(3.0, &[[0.2, 0.5, -0.1]]);
        assert_eq!((single.kappa_hat_log_part, single.log_term), (0.0, 0.0));
    }

    #[test]
    fn single_precision_factors() {
        let j = JastrowFactors::<f32>::new(vec![Nucleus { position: [0.0; 3], charge: 1.0 }], 2);
        let v = j.value(&[[0.0, 0.0, 1.0], [0.0, 0.0, 1.0]], Factor::F3).unwrap();
        assert!((v - -0.020989665).abs() < 1e-7);
    }
}
