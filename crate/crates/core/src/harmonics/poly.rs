//! Sparse multivariate polynomials over a generic coefficient ring.
use crate::error::{Error, Result};
use num_traits::{Num, ToPrimitive};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector, ordered graded lexicographically with x1 > x2 > ...
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Bit i set when the exponent of x_{i+1} is odd.
    pub fn parity(&self) -> u64 {
        self.0.iter().enumerate().fold(0, |acc, (i, e)| acc | (((e & 1) as u64) << i))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in monomial order.
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    nvars: usize,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Num + Clone> Polynomial<T> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        Self::term(vec![0; nvars], c)
    }

    pub fn term(exps: Vec<u32>, c: T) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(Monomial(exps), c);
        p
    }

    /// The coordinate x_{i+1}.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(e, T::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> T {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: T) {
        assert_eq!(m.0.len(), self.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(Monomial::degree);
        match d.next() {
            None => true,
            Some(first) => d.all(|e| e == first),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), T::zero() - c.clone());
        }
        p
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.clone() * s.clone());
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
                p.add_term(Monomial(e), ca.clone() * cb.clone());
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut p = Self::constant(self.nvars, T::one());
        for _ in 0..k {
            p = p.mul(self);
        }
        p
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut d = m.0.clone();
                d[i] -= 1;
                p.add_term(Monomial(d), c.clone() * from_u32::<T>(e));
            }
        }
        p
    }

    /// Laplacian restricted to the variables in `vars`.
    pub fn partial_laplacian(&self, vars: std::ops::Range<usize>) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            for i in vars.clone() {
                let e = m.0[i];
                if e >= 2 {
                    let mut d = m.0.clone();
                    d[i] -= 2;
                    p.add_term(Monomial(d), c.clone() * from_u32::<T>(e * (e - 1)));
                }
            }
        }
        p
    }

    pub fn laplacian(&self) -> Self {
        self.partial_laplacian(0..self.nvars)
    }

    pub fn eval(&self, x: &[T]) -> T {
        let mut s = T::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (xi, &e) in x.iter().zip(&m.0) {
                for _ in 0..e {
                    v = v * xi.clone();
                }
            }
            s = s + v;
        }
        s
    }

    pub fn map<U: Num + Clone>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        let mut p = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c));
        }
        p
    }
}

impl<T: Num + Clone + ToPrimitive> Polynomial<T> {
    pub fn to_f64(&self) -> Polynomial<f64> {
        self.map(|c| c.to_f64().expect("coefficient representable in f64"))
    }
}

fn from_u32<T: Num>(k: u32) -> T {
    let mut v = T::zero();
    for _ in 0..k {
        v = v + T::one();
    }
    v
}

impl Polynomial<f64> {
    /// Evaluation through a power table; cheaper than [`Polynomial::eval`]
    /// for repeated use.
    pub fn compile(&self) -> CompiledPolynomial {
        let maxdeg = self.terms.keys().flat_map(|m| m.0.iter().copied()).max().unwrap_or(0) as usize;
        CompiledPolynomial {
            nvars: self.nvars,
            stride: maxdeg + 1,
            exps: self.terms.keys().flat_map(|m| m.0.iter().map(|&e| e as usize)).collect(),
            coefs: self.terms.values().copied().collect(),
        }
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().fold(0.0, |a, c| a.max(c.abs()))
    }
}

#[derive(Debug, Clone)]
pub struct CompiledPolynomial {
    nvars: usize,
    stride: usize,
    exps: Vec<usize>,
    coefs: Vec<f64>,
}

impl CompiledPolynomial {
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut pw = vec![1.0; self.nvars * self.stride];
        self.eval_with(x, &mut pw)
    }

    /// `scratch` must hold nvars * stride entries.
    pub fn eval_with(&self, x: &[f64], scratch: &mut [f64]) -> f64 {
        let s = self.stride;
        for (i, xi) in x.iter().enumerate().take(self.nvars) {
            scratch[i * s] = 1.0;
            for k in 1..s {
                scratch[i * s + k] = scratch[i * s + k - 1] * xi;
            }
        }
        let mut total = 0.0;
        for (t, c) in self.coefs.iter().enumerate() {
            let e = &self.exps[t * self.nvars..(t + 1) * self.nvars];
            let mut v = *c;
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    v *= scratch[i * s + ei];
                }
            }
            total += v;
        }
        total
    }

    pub fn scratch_len(&self) -> usize {
        self.nvars * self.stride
    }
}

impl fmt::Display for Polynomial<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "{}", if *c < 0.0 { " - " } else { " + " })?;
            } else if *c < 0.0 {
                write!(f, "-")?;
            }
            write!(f, "{}", c.abs())?;
            for (i, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

/// Parses sums of products such as `x1*x2 - 0.5*x3^2 + 2` in `nvars` variables.
pub fn parse_polynomial(src: &str, nvars: usize) -> Result<Polynomial<f64>> {
    let bad = |msg: &str| Error::InvalidInput(format!("polynomial '{src}': {msg}"));
    let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(bad("empty"));
    }
    let mut poly = Polynomial::zero(nvars);
    let mut chunks: Vec<(f64, String)> = Vec::new();
    let mut sign = 1.0;
    let mut cur = String::new();
    for ch in cleaned.chars() {
        let in_exponent = (cur.ends_with('e') || cur.ends_with('E'))
            && cur.rsplit('*').next().is_some_and(|f| f.starts_with(|c: char| c.is_ascii_digit() || c == '.'));
        if (ch == '+' || ch == '-') && !in_exponent {
            if cur.ends_with('*') {
                return Err(bad("dangling operator"));
            }
            if !cur.is_empty() {
                chunks.push((sign, std::mem::take(&mut cur)));
                sign = 1.0;
            }
            if ch == '-' {
                sign = -sign;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() || cur.ends_with('*') {
        return Err(bad("trailing operator"));
    }
    chunks.push((sign, cur));
    for (sign, chunk) in chunks {
        let mut coef = sign;
        let mut exps = vec![0u32; nvars];
        for factor in chunk.split('*') {
            if let Some(rest) = factor.strip_prefix('x') {
                let (idx, pow) = match rest.split_once('^') {
                    Some((i, p)) => (i, p.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                    None => (rest, 1),
                };
                let i: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
                if i == 0 || i > nvars {
                    return Err(bad("variable index out of range"));
                }
                exps[i - 1] += pow;
            } else {
                coef *= factor.parse::<f64>().map_err(|_| bad("bad number"))?;
            }
        }
        poly.add_term(Monomial(exps), coef);
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn monomial_counts_and_order() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(6, 8).len(), 1287);
        let m = monomials(2, 2);
        assert_eq!(m[0].0, vec![2, 0]);
        assert_eq!(m[2].0, vec![0, 2]);
        let mut sorted = m.clone();
        sorted.sort();
        assert_eq!(sorted, m);
    }

    #[test]
    fn laplacian_of_simple_polynomials() {
        let x = Polynomial::<i64>::var(3, 0);
        let y = Polynomial::<i64>::var(3, 1);
        let p = x.mul(&x).sub(&y.mul(&y));
        assert!(p.laplacian().is_zero());
        let r2 = x.mul(&x).add(&y.mul(&y));
        assert_eq!(r2.laplacian(), Polynomial::constant(3, 4));
    }

    #[test]
    fn exact_and_float_evaluation() {
        let p = Polynomial::<BigRational>::var(2, 0).pow(3);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p.eval(&[half.clone(), half]), BigRational::new(1.into(), 8.into()));
        let q = parse_polynomial("x1^3 - 2*x1*x2 + 0.5", 2).unwrap();
        let c = q.compile();
        assert!((c.eval(&[1.5, -2.0]) - (3.375 + 6.0 + 0.5)).abs() < 1e-14);
        assert_eq!(q.eval(&[1.5, -2.0]), c.eval(&[1.5, -2.0]));
    }

    #[test]
    fn parser_handles_signs() {
        let p = parse_polynomial("-x1 + x2 - -3", 2).unwrap();
        assert_eq!(p.coefficient(&[1, 0]), -1.0);
        assert_eq!(p.coefficient(&[0, 1]), 1.0);
        assert_eq!(p.coefficient(&[0, 0]), 3.0);
        assert!(parse_polynomial("x4", 3).is_err());
        assert!(parse_polynomial("x1 +", 3).is_err());
        assert_eq!(parse_polynomial("1e-3*x1", 1).unwrap().coefficient(&[1]), 1e-3);
    }
}
