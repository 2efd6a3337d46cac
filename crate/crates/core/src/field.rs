//! Scalar fields on R^d with optional analytic data.

/// A real valued function on R^d.
///
/// `singular_distance` gives the clearance from the set where the field is
/// not smooth; finite difference stencils are rejected inside it.
pub trait ScalarField: Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: &[f64]) -> f64;

    fn singular_distance(&self, _x: &[f64]) -> f64 {
        f64::INFINITY
    }

    /// Degree of positive homogeneity, if any.
    fn homogeneity(&self) -> Option<f64> {
        None
    }

    fn gradient(&self, _x: &[f64]) -> Option<Vec<f64>> {
        None
    }

    fn laplacian(&self, _x: &[f64]) -> Option<f64> {
        None
    }

    /// Row-major d x d Hessian.
    fn hessian(&self, _x: &[f64]) -> Option<Vec<f64>> {
        None
    }
}

/// Adapter turning closures into a [`ScalarField`].
pub struct FnField<F, S = fn(&[f64]) -> f64> {
    dim: usize,
    f: F,
    singular: Option<S>,
    homogeneity: Option<f64>,
}

impl<F> FnField<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    pub fn new(dim: usize, f: F) -> Self {
        FnField { dim, f, singular: None, homogeneity: None }
    }
}

impl<F, S> FnField<F, S>
where
    F: Fn(&[f64]) -> f64 + Sync,
    S: Fn(&[f64]) -> f64 + Sync,
{
    pub fn with_singular<S2>(self, s: S2) -> FnField<F, S2>
    where
        S2: Fn(&[f64]) -> f64 + Sync,
    {
        FnField { dim: self.dim, f: self.f, singular: Some(s), homogeneity: self.homogeneity }
    }

    pub fn with_homogeneity(mut self, degree: f64) -> Self {
        self.homogeneity = Some(degree);
        self
    }
}

impl<F, S> ScalarField for FnField<F, S>
where
    F: Fn(&[f64]) -> f64 + Sync,
    S: Fn(&[f64]) -> f64 + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }

    fn singular_distance(&self, x: &[f64]) -> f64 {
        match &self.singular {
            Some(s) => s(x),
            None => f64::INFINITY,
        }
    }

    fn homogeneity(&self) -> Option<f64> {
        self.homogeneity
    }
}
