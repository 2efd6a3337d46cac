//! Orthonormal bases of spherical harmonics built from polynomial spans.
use super::linalg::{nullspace, rank_mod_p};
use super::poly::{monomials, CompiledPolynomial, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::geometry::sphere::sphere_area;
use crate::Rational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

/// Dimension of degree-l spherical harmonics on S^{n-1}.
pub fn degree_dimension(n: usize, l: usize) -> u64 {
    assert!(n >= 2, "sphere dimension must be at least 1");
    let (n, l) = (n as u64, l as u64);
    if l < 2 {
        return binomial(l + n - 1, n - 1);
    }
    binomial(l + n - 1, n - 1) - binomial(l + n - 3, n - 1)
}

/// The Laplacian P_l -> P_{l-2} as sparse integer rows indexed by degree l-2
/// monomials, with columns indexed by degree l monomials.
pub fn laplacian_matrix(n: usize, l: u32) -> (Vec<Vec<(usize, i64)>>, usize) {
    let cols = monomials(n, l);
    if l < 2 {
        return (Vec::new(), cols.len());
    }
    let rows = monomials(n, l - 2);
    let index: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = vec![Vec::new(); rows.len()];
    for (c, m) in cols.iter().enumerate() {
        for i in 0..n {
            let e = m.0[i];
            if e >= 2 {
                let mut d = m.0.clone();
                d[i] -= 2;
                mat[index[&Monomial(d)]].push((c, (e * (e - 1)) as i64));
            }
        }
    }
    (mat, cols.len())
}

/// dim ker(Δ: P_l -> P_{l-2}), certified by full row rank modulo a prime.
pub fn kernel_dimension(n: usize, l: u32) -> Result<usize> {
    let (rows, cols) = laplacian_matrix(n, l);
    let rank = rank_mod_p(&rows, cols);
    if rank != rows.len() {
        return Err(Error::Internal(format!("Laplacian not surjective mod p for n={n}, l={l}")));
    }
    Ok(cols - rank)
}

/// Harmonic polynomials x1^e p + Σ_k (-1)^k e!/(2k+e)! x1^{2k+e} Δ'^k p for
/// monomials p in x2..xn, e ∈ {0, 1}. They span the harmonics of degree l.
pub fn harmonic_spanning_set(n: usize, l: u32) -> Vec<Polynomial<Rational>> {
    let mut seeds: Vec<Monomial> = Vec::new();
    for e in 0..=1u32.min(l) {
        for rest in monomials(n - 1, l - e) {
            let mut m = vec![e];
            m.extend(rest.0);
            seeds.push(Monomial(m));
        }
    }
    if n == 1 {
        seeds = vec![Monomial(vec![l])];
    }
    seeds.sort();
    seeds
        .into_iter()
        .map(|seed| {
            let e = seed.0[0];
            let mut base = seed.0.clone();
            base[0] = 0;
            let mut lap = Polynomial::term(base, Rational::one());
            let mut coef = Rational::one();
            let mut h = Polynomial::zero(n);
            let mut k = 0u32;
            while !lap.is_zero() {
                let mut x1 = vec![0; n];
                x1[0] = 2 * k + e;
                h = h.add(&lap.mul(&Polynomial::term(x1, coef.clone())));
                let d = Rational::from_integer(((2 * k + e + 1) * (2 * k + e + 2)).into());
                coef = -coef / d;
                lap = lap.partial_laplacian(1..n);
                k += 1;
            }
            h
        })
        .collect()
}

/// Closed form monomial moments on S^{n-1} up to a fixed degree.
pub struct MomentTable {
    area: f64,
    n: usize,
    /// (g-1)!! for even g
    dfact: Vec<f64>,
    /// 1/(n(n+2)...(n+2d-2)) for total degree 2d
    scale: Vec<f64>,
}

impl MomentTable {
    pub fn new(n: usize, max_degree: u32) -> Self {
        let m = max_degree as usize + 1;
        let mut dfact = vec![1.0; m];
        for g in (2..m).step_by(2) {
            dfact[g] = dfact[g - 2] * (g as f64 - 1.0);
        }
        let mut scale = vec![1.0; m / 2 + 1];
        for d in 1..scale.len() {
            scale[d] = scale[d - 1] / (n as f64 + 2.0 * (d as f64 - 1.0));
        }
        MomentTable { area: sphere_area(n), n, dfact, scale }
    }

    /// Moment of the product x^a x^b.
    pub fn product(&self, a: &[u32], b: &[u32]) -> f64 {
        let mut v = self.area;
        let mut total = 0;
        for i in 0..self.n {
            let g = (a[i] + b[i]) as usize;
            if g % 2 == 1 {
                return 0.0;
            }
            v *= self.dfact[g];
            total += g;
        }
        v * self.scale[total / 2]
    }

    pub fn moment(&self, a: &[u32]) -> f64 {
        self.product(a, &vec![0; self.n])
    }
}

/// Gram matrix ∫_{S^{n-1}} p_i p_j in f64 from exact moments, row-major.
pub fn gram_matrix(polys: &[Polynomial<f64>]) -> Vec<f64> {
    let k = polys.len();
    let mut g = vec![0.0; k * k];
    if k == 0 {
        return g;
    }
    let n = polys[0].nvars();
    let maxdeg = polys.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let table = MomentTable::new(n, 2 * maxdeg);
    // split by exponent parity: products across classes integrate to zero
    let mut classes: BTreeMap<u64, Vec<(usize, Vec<(&Monomial, f64)>)>> = BTreeMap::new();
    for (i, p) in polys.iter().enumerate() {
        let mut by_class: BTreeMap<u64, Vec<(&Monomial, f64)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            by_class.entry(m.parity()).or_default().push((m, *c));
        }
        for (cls, terms) in by_class {
            classes.entry(cls).or_default().push((i, terms));
        }
    }
    for members in classes.values() {
        for (a, (i, ti)) in members.iter().enumerate() {
            for (j, tj) in &members[a..] {
                let mut s = 0.0;
                for (ma, ca) in ti {
                    for (mb, cb) in tj {
                        s += ca * cb * table.product(&ma.0, &mb.0);
                    }
                }
                g[i * k + j] += s;
                if i != j {
                    g[j * k + i] += s;
                }
            }
        }
    }
    g
}

/// Modified Gram-Schmidt (two passes) against the Gram matrix, separately on
/// each connected block of its sparsity pattern.
pub fn orthonormalize(polys: &[Polynomial<f64>]) -> Result<Vec<Polynomial<f64>>> {
    let k = polys.len();
    let g = gram_matrix(polys);
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..k {
        for j in i + 1..k {
            if g[i * k + j] != 0.0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..k {
        let r = find(&mut parent, i);
        blocks.entry(r).or_default().push(i);
    }
    let mut out: Vec<Option<Polynomial<f64>>> = vec![None; k];
    for idx in blocks.values() {
        let m = idx.len();
        let gs = |a: usize, b: usize| g[idx[a] * k + idx[b]];
        let mut ts: Vec<Vec<f64>> = Vec::with_capacity(m);
        let mut gts: Vec<Vec<f64>> = Vec::with_capacity(m);
        for i in 0..m {
            let mut t = vec![0.0; m];
            t[i] = 1.0;
            for _pass in 0..2 {
                for j in 0..i {
                    let proj: f64 = gts[j].iter().zip(&t).map(|(a, b)| a * b).sum();
                    for (tv, tj) in t.iter_mut().zip(&ts[j]) {
                        *tv -= proj * tj;
                    }
                }
            }
            let gt: Vec<f64> = (0..m).map(|a| (0..m).map(|b| gs(a, b) * t[b]).sum()).collect();
            let norm2: f64 = gt.iter().zip(&t).map(|(a, b)| a * b).sum();
            if !(norm2 > 1e-24 * gs(i, i)) {
                return Err(Error::Internal("linearly dependent spanning set".into()));
            }
            let inv = 1.0 / norm2.sqrt();
            ts.push(t.iter().map(|v| v * inv).collect());
            gts.push(gt.iter().map(|v| v * inv).collect());
        }
        for (i, t) in ts.iter().enumerate() {
            let mut q = Polynomial::zero(polys[0].nvars());
            for (b, c) in t.iter().enumerate() {
                if *c != 0.0 {
                    q = q.add(&polys[idx[b]].scale(c));
                }
            }
            out[idx[i]] = Some(q);
        }
    }
    Ok(out.into_iter().map(|q| q.expect("every index lies in a block")).collect())
}

/// Symmetry carried by a basis; selects admissible projectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Symmetry {
    None,
    /// Invariant under (x, y) -> (Rx, Ry) for R ∈ SO(3), n = 6.
    DiagonalSO3,
}

/// L²(S^{n-1})-orthonormal harmonic polynomials of one degree.
#[derive(Debug, Clone)]
pub struct HarmonicBasis {
    pub n: usize,
    pub degree: u32,
    pub symmetry: Symmetry,
    elements: Vec<Polynomial<f64>>,
    compiled: Vec<CompiledPolynomial>,
}

impl HarmonicBasis {
    fn assemble(n: usize, degree: u32, symmetry: Symmetry, span: Vec<Polynomial<Rational>>) -> Result<Self> {
        for p in &span {
            if !p.laplacian().is_zero() {
                return Err(Error::Internal("spanning polynomial is not harmonic".into()));
            }
        }
        let elements = orthonormalize(&span.iter().map(|p| p.to_f64()).collect::<Vec<_>>())?;
        let compiled = elements.iter().map(Polynomial::compile).collect();
        Ok(HarmonicBasis { n, degree, symmetry, elements, compiled })
    }

    /// Orthonormalizes polynomials that are already harmonic, in the given order.
    pub fn from_harmonic(n: usize, l: u32, polys: Vec<Polynomial<Rational>>, symmetry: Symmetry) -> Result<Self> {
        if polys.iter().any(|p| p.nvars() != n || p.degree() != Some(l) || !p.is_homogeneous()) {
            return Err(Error::InvalidInput("polynomials must be homogeneous of the stated degree".into()));
        }
        Self::assemble(n, l, symmetry, polys)
    }

    /// All harmonics of degree l on S^{n-1}.
    pub fn full(n: usize, l: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("need n >= 2".into()));
        }
        let span = harmonic_spanning_set(n, l);
        if span.len() as u64 != degree_dimension(n, l as usize) {
            return Err(Error::Internal("spanning set has the wrong size".into()));
        }
        Self::assemble(n, l, Symmetry::None, span)
    }

    /// Harmonics in the span of the given homogeneous degree-l polynomials.
    pub fn from_span(n: usize, l: u32, generators: &[Polynomial<Rational>], symmetry: Symmetry) -> Result<Self> {
        if generators.iter().any(|p| p.nvars() != n || !(p.is_zero() || p.degree() == Some(l) && p.is_homogeneous())) {
            return Err(Error::InvalidInput("generators must be homogeneous of the stated degree".into()));
        }
        let laps: Vec<Polynomial<Rational>> = generators.iter().map(|p| p.laplacian()).collect();
        let mut rows: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        for (c, lp) in laps.iter().enumerate() {
            for (m, v) in lp.terms() {
                rows.entry(m.clone()).or_insert_with(|| vec![Rational::zero(); generators.len()])[c] = v.clone();
            }
        }
        let kernel = nullspace(rows.into_values().collect(), generators.len());
        let span: Vec<Polynomial<Rational>> = kernel
            .iter()
            .map(|v| {
                v.iter().zip(generators).fold(Polynomial::zero(n), |acc, (c, g)| acc.add(&g.scale(c)))
            })
            .collect();
        Self::assemble(n, l, symmetry, span)
    }

    /// Harmonics on S^5 invariant under the diagonal SO(3) action, spanned by
    /// (x²)^a (y²)^b (x·y)^c with 2(a+b+c) = l.
    pub fn diagonal_so3(l: u32) -> Result<Self> {
        let n = 6;
        if l % 2 == 1 {
            return Ok(HarmonicBasis { n, degree: l, symmetry: Symmetry::DiagonalSO3, elements: vec![], compiled: vec![] });
        }
        let sq = |off: usize| (0..3).fold(Polynomial::zero(n), |acc, i| {
            let v = Polynomial::<Rational>::var(n, off + i);
            acc.add(&v.mul(&v))
        });
        let xx = sq(0);
        let yy = sq(3);
        let xy = (0..3).fold(Polynomial::zero(n), |acc, i| {
            acc.add(&Polynomial::<Rational>::var(n, i).mul(&Polynomial::var(n, 3 + i)))
        });
        let j = l / 2;
        let mut gens = Vec::new();
        for a in (0..=j).rev() {
            for b in (0..=j - a).rev() {
                gens.push(xx.pow(a).mul(&yy.pow(b)).mul(&xy.pow(j - a - b)));
            }
        }
        let basis = Self::from_span(n, l, &gens, Symmetry::DiagonalSO3)?;
        if basis.len() != j as usize + 1 {
            return Err(Error::Internal("unexpected invariant harmonic count".into()));
        }
        Ok(basis)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Polynomial<f64>] {
        &self.elements
    }

    /// Values of all basis polynomials at x. Equal to Y_m(x) on the sphere.
    pub fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        let mut scratch = vec![0.0; self.compiled.iter().map(|c| c.scratch_len()).max().unwrap_or(0)];
        for (o, c) in out.iter_mut().zip(&self.compiled) {
            *o = c.eval_with(x, &mut scratch);
        }
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        self.eval_into(x, &mut out);
        out
    }

    pub fn gram(&self) -> Vec<f64> {
        gram_matrix(&self.elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_formula() {
        assert_eq!(degree_dimension(3, 4), 9);
        assert_eq!(degree_dimension(6, 2), 20);
        assert_eq!(degree_dimension(6, 8), 825);
        assert_eq!(degree_dimension(9, 6), 2508);
        assert_eq!(degree_dimension(2, 5), 2);
    }

    #[test]
    fn kernel_matches_formula() {
        for n in [2, 3, 6] {
            for l in 0..6 {
                assert_eq!(kernel_dimension(n, l).unwrap() as u64, degree_dimension(n, l as usize));
            }
        }
    }

    #[test]
    fn orthonormal_in_three_dimensions() {
        let b = HarmonicBasis::full(3, 3).unwrap();
        assert_eq!(b.len(), 7);
        let g = b.gram();
        for i in 0..7 {
            for j in 0..7 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g[i * 7 + j] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn degree_one_is_scaled_coordinates() {
        let b = HarmonicBasis::full(3, 1).unwrap();
        let c = (3.0 / (4.0 * std::f64::consts::PI)).sqrt();
        let v = b.eval(&[1.0, 0.0, 0.0]);
        assert!((v.iter().map(|x| x.abs()).fold(0.0, f64::max) - c).abs() < 1e-14);
    }

    #[test]
    fn invariant_harmonics() {
        for l in [0, 2, 4, 6, 8] {
            let b = HarmonicBasis::diagonal_so3(l).unwrap();
            assert_eq!(b.len() as u32, l / 2 + 1);
            for p in b.elements() {
                assert!(p.laplacian().max_abs_coefficient() < 1e-10);
            }
        }
        assert!(HarmonicBasis::diagonal_so3(3).unwrap().is_empty());
    }
}
