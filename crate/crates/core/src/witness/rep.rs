use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::WitnessError;
use crate::nc::{Generator, Letter, NCPoly, Presentation};

pub type Matrix = DMatrix<Complex64>;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

const POWER_STEPS: usize = 200;
const POWER_TOL: f64 = 1e-12;

/// Assignment of generators to `dim × dim` complex matrices. Starred
/// letters evaluate to conjugate transposes.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRep {
    pub dim: usize,
    pub assign: BTreeMap<Generator, Matrix>,
    pub tolerance: f64,
}

impl MatrixRep {
    pub fn new(dim: usize) -> Self {
        Self { dim, assign: BTreeMap::new(), tolerance: DEFAULT_TOLERANCE }
    }

    pub fn set(&mut self, g: Generator, m: Matrix) {
        self.assign.insert(g, m);
    }

    pub fn get(&self, g: Generator) -> Option<&Matrix> {
        self.assign.get(&g)
    }

    fn letter(&self, l: Letter) -> Option<Matrix> {
        let m = self.assign.get(&l.gen)?;
        Some(if l.star { m.adjoint() } else { m.clone() })
    }

    pub fn evaluate(&self, p: &NCPoly) -> Result<Matrix, WitnessError> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (w, c) in p.terms() {
            let c = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            let mut acc = Matrix::identity(self.dim, self.dim);
            for &l in w.letters() {
                let m = self.letter(l).ok_or_else(|| WitnessError::MissingGenerator(l.gen.token()))?;
                acc *= m;
            }
            out += acc * c;
        }
        Ok(out)
    }

    pub fn check_dims(&self) -> Result<(), WitnessError> {
        for (g, m) in &self.assign {
            if m.nrows() != self.dim || m.ncols() != self.dim {
                return Err(WitnessError::DimensionMismatch {
                    generator: g.token(),
                    rows: m.nrows(),
                    cols: m.ncols(),
                    dim: self.dim,
                });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rep serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, WitnessError> {
        let r: Self = serde_json::from_str(s).map_err(|e| WitnessError::Malformed(e.to_string()))?;
        r.check_dims()?;
        Ok(r)
    }
}

#[derive(Serialize, Deserialize)]
struct AssignDoc {
    generator: Generator,
    matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct RepDoc {
    dim: usize,
    tolerance: f64,
    assign: Vec<AssignDoc>,
}

impl Serialize for MatrixRep {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let assign = self
            .assign
            .iter()
            .map(|(&generator, m)| AssignDoc {
                generator,
                matrix: (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect(),
            })
            .collect();
        RepDoc { dim: self.dim, tolerance: self.tolerance, assign }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = RepDoc::deserialize(d)?;
        let mut rep = MatrixRep { dim: doc.dim, assign: BTreeMap::new(), tolerance: doc.tolerance };
        for a in doc.assign {
            let rows = a.matrix.len();
            let cols = a.matrix.first().map_or(rows, Vec::len);
            if a.matrix.iter().any(|r| r.len() != cols) {
                return Err(serde::de::Error::custom(format!("ragged matrix for {}", a.generator.token())));
            }
            let m = Matrix::from_fn(rows, cols, |i, j| Complex64::new(a.matrix[i][j][0], a.matrix[i][j][1]));
            rep.assign.insert(a.generator, m);
        }
        Ok(rep)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Noncommutativity {
    pub a: Generator,
    pub b: Generator,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub rep: MatrixRep,
    pub max_relation_residual: f64,
    /// Label of a relation attaining the maximum residual.
    pub worst_relation: Option<String>,
    pub noncommutativity: Option<Noncommutativity>,
    pub notes: Vec<String>,
}

impl WitnessReport {
    pub fn satisfies(&self) -> bool {
        self.max_relation_residual <= self.rep.tolerance
    }
}

/// Largest singular value, by power iteration on `M* M`.
pub fn op_norm(m: &Matrix) -> f64 {
    let n = m.ncols();
    if n == 0 || m.nrows() == 0 {
        return 0.0;
    }
    let col_max = (0..n).map(|j| m.column(j).norm()).fold(0.0, f64::max);
    if col_max == 0.0 {
        return 0.0;
    }
    let gram = m.adjoint() * m;
    let mut x = DVector::from_fn(n, |i, _| Complex64::new(1.0 + 0.37 * i as f64, 0.11 * (i as f64 + 1.0).sqrt()));
    x /= Complex64::new(x.norm(), 0.0);
    let mut est = 0.0;
    for _ in 0..POWER_STEPS {
        let y = &gram * &x;
        let ny = y.norm();
        if ny == 0.0 {
            break;
        }
        let next = ny.sqrt();
        x = y / Complex64::new(ny, 0.0);
        let done = (next - est).abs() <= POWER_TOL * next.max(1.0);
        est = next;
        if done {
            break;
        }
    }
    est.max(col_max)
}

fn commutator_norm(a: &Matrix, b: &Matrix) -> f64 {
    op_norm(&(a * b - b * a))
}

/// Evaluates every relation of `pres` under `rep` and scans generator pairs
/// for the largest commutator.
pub fn check_rep(rep: &MatrixRep, pres: &Presentation) -> Result<WitnessReport, WitnessError> {
    rep.check_dims()?;
    if let Some(g) = pres.generators.iter().find(|g| !rep.assign.contains_key(g)) {
        return Err(WitnessError::MissingGenerator(pres.gen_label(*g)));
    }
    let residuals: Vec<f64> = pres
        .relations
        .par_iter()
        .map(|r| rep.evaluate(&r.poly).map(|m| op_norm(&m)))
        .collect::<Result<_, _>>()?;
    let (mut max, mut worst) = (0.0, None);
    for (r, &x) in pres.relations.iter().zip(&residuals) {
        if x > max || worst.is_none() && x.is_nan() {
            max = x;
            worst = Some(r.label.clone());
        }
    }
    let gens: Vec<Generator> = pres.generators.iter().copied().filter(|g| !matches!(g, Generator::SStar(_))).collect();
    let pairs: Vec<(usize, usize)> =
        (0..gens.len()).flat_map(|i| (i + 1..gens.len()).map(move |j| (i, j))).collect();
    let norms: Vec<f64> = pairs.par_iter().map(|&(i, j)| commutator_norm(&rep.assign[&gens[i]], &rep.assign[&gens[j]])).collect();
    let mut best: Option<Noncommutativity> = None;
    for (&(i, j), &norm) in pairs.iter().zip(&norms) {
        if norm > 10.0 * rep.tolerance && best.as_ref().is_none_or(|b| norm > b.norm) {
            best = Some(Noncommutativity { a: gens[i], b: gens[j], norm });
        }
    }
    Ok(WitnessReport {
        rep: rep.clone(),
        max_relation_residual: max,
        worst_relation: worst,
        noncommutativity: best,
        notes: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn norms() {
        let m = Matrix::from_row_slice(2, 2, &[c(0.0), c(0.5), c(-0.5), c(0.0)]);
        assert!((op_norm(&m) - 0.5).abs() < 1e-12);
        let d = Matrix::from_diagonal(&DVector::from_vec(vec![c(1.0), c(-3.0), c(2.0)]));
        assert!((op_norm(&d) - 3.0).abs() < 1e-12);
        assert_eq!(op_norm(&Matrix::zeros(3, 3)), 0.0);
    }

    #[test]
    fn serde_round_trip() {
        let mut r = MatrixRep::new(2);
        r.set(Generator::UV(0, 1), Matrix::from_row_slice(2, 2, &[c(1.0), Complex64::new(0.0, 0.5), c(0.0), c(2.0)]));
        let back = MatrixRep::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn dimension_mismatch() {
        let mut r = MatrixRep::new(2);
        r.set(Generator::P(0), Matrix::identity(3, 3));
        assert!(matches!(r.check_dims(), Err(WitnessError::DimensionMismatch { .. })));
    }
}
