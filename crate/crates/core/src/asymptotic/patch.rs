use crate::error::{Error, Result};
use crate::num::{to_f64, Rational};

use super::expr::Expr;

/// Relative step used by the central-difference cross-check.
const FD_STEP: f64 = 1e-6;

/// A parameterized piece `t ↦ (f_1(t), ..., f_n(t))` of a submanifold of `R^n`
/// over a product of closed rational intervals.
#[derive(Clone, Debug)]
pub struct ManifoldPatch {
    params: Vec<String>,
    components: Vec<Expr>,
    jacobian: Vec<Vec<Expr>>,
    domain: Vec<(Rational, Rational)>,
}

impl ManifoldPatch {
    pub fn new(params: Vec<String>, components: Vec<Expr>, domain: Vec<(Rational, Rational)>) -> Result<Self> {
        if params.is_empty() || components.is_empty() {
            return Err(Error::Precondition("a patch needs at least one parameter and one coordinate".into()));
        }
        if domain.len() != params.len() {
            return Err(Error::DimensionMismatch { expected: params.len(), found: domain.len() });
        }
        if domain.iter().any(|(a, b)| a > b) {
            return Err(Error::Precondition("empty parameter interval".into()));
        }
        let jacobian = components.iter().map(|c| (0..params.len()).map(|i| c.diff(i)).collect()).collect();
        Ok(ManifoldPatch { params, components, jacobian, domain })
    }

    /// Parses one prefix expression per coordinate.
    pub fn parse(params: &[&str], components: &[&str], domain: Vec<(Rational, Rational)>) -> Result<Self> {
        let exprs = components.iter().map(|c| Expr::parse(c, params)).collect::<Result<Vec<_>>>()?;
        Self::new(params.iter().map(|s| s.to_string()).collect(), exprs, domain)
    }

    /// A curve in the single parameter `t`.
    pub fn curve(components: &[&str], lo: Rational, hi: Rational) -> Result<Self> {
        Self::parse(&["t"], components, vec![(lo, hi)])
    }

    pub fn ambient_dim(&self) -> usize {
        self.components.len()
    }

    pub fn param_dim(&self) -> usize {
        self.params.len()
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    pub fn domain(&self) -> &[(Rational, Rational)] {
        &self.domain
    }

    pub fn domain_f64(&self) -> Vec<(f64, f64)> {
        self.domain.iter().map(|(a, b)| (to_f64(a), to_f64(b))).collect()
    }

    pub fn contains_param(&self, t: &[Rational]) -> bool {
        t.len() == self.domain.len() && t.iter().zip(&self.domain).all(|(x, (a, b))| a <= x && x <= b)
    }

    pub fn eval(&self, t: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval(t)).collect()
    }

    /// `n x k` Jacobian from the symbolic derivatives.
    pub fn jacobian(&self, t: &[f64]) -> Vec<Vec<f64>> {
        self.jacobian.iter().map(|row| row.iter().map(|d| d.eval(t)).collect()).collect()
    }

    /// Central differences, clamped to stay inside the domain.
    pub fn jacobian_fd(&self, t: &[f64]) -> Vec<Vec<f64>> {
        let dom = self.domain_f64();
        let mut jac = vec![vec![0.0; self.param_dim()]; self.ambient_dim()];
        for i in 0..self.param_dim() {
            let h = FD_STEP * t[i].abs().max(1.0);
            let mut plus = t.to_vec();
            let mut minus = t.to_vec();
            plus[i] = (t[i] + h).min(dom[i].1);
            minus[i] = (t[i] - h).max(dom[i].0);
            let width = plus[i] - minus[i];
            let (fp, fm) = (self.eval(&plus), self.eval(&minus));
            for r in 0..self.ambient_dim() {
                jac[r][i] = (fp[r] - fm[r]) / width;
            }
        }
        jac
    }
}

/// `J(t0) · dir`, after checking that `J(t0)` has full column rank.
pub fn tangent_vector(patch: &ManifoldPatch, t0: &[Rational], dir: &[f64]) -> Result<Vec<f64>> {
    if t0.len() != patch.param_dim() {
        return Err(Error::DimensionMismatch { expected: patch.param_dim(), found: t0.len() });
    }
    if dir.len() != patch.param_dim() {
        return Err(Error::DimensionMismatch { expected: patch.param_dim(), found: dir.len() });
    }
    if !patch.contains_param(t0) {
        return Err(Error::Precondition("base parameter lies outside the patch domain".into()));
    }
    let t: Vec<f64> = t0.iter().map(to_f64).collect();
    let jac = patch.jacobian(&t);
    if column_rank(&jac) < patch.param_dim() {
        return Err(Error::RankDeficient);
    }
    Ok(mat_vec(&jac, dir))
}

/// The same product with the Jacobian replaced by central differences.
pub fn tangent_vector_fd(patch: &ManifoldPatch, t0: &[f64], dir: &[f64]) -> Vec<f64> {
    mat_vec(&patch.jacobian_fd(t0), dir)
}

pub(crate) fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Numerical column rank by modified Gram-Schmidt with a relative threshold.
fn column_rank(m: &[Vec<f64>]) -> usize {
    let k = m.first().map_or(0, Vec::len);
    let scale = m.iter().flatten().fold(0f64, |a, x| a.max(x.abs()));
    if scale == 0.0 {
        return 0;
    }
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for j in 0..k {
        let mut c: Vec<f64> = m.iter().map(|row| row[j]).collect();
        for b in &basis {
            let d: f64 = c.iter().zip(b).map(|(x, y)| x * y).sum();
            c.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        let nc = norm(&c);
        if nc > 1e-10 * scale {
            basis.push(c.into_iter().map(|x| x / nc).collect());
        }
    }
    basis.len()
}
