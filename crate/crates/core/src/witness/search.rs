use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::rep::{check_rep, op_norm, Matrix, MatrixRep, WitnessReport, DEFAULT_TOLERANCE};
use crate::hypergraph::Hypergraph;
use crate::nc::{Generator, Presentation};

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub max_iters: usize,
    /// Multiplier of the step size `1 / L`, where `L` bounds the curvature
    /// of the penalty.
    pub step: f64,
    pub idempotent_weight: f64,
    pub seed: u64,
    /// Independent runs with seeds `seed, seed + 1, ...`.
    pub restarts: usize,
    pub tolerance: f64,
    /// Starting point, perturbed by `init_noise`; random when absent.
    pub init: Option<MatrixRep>,
    pub init_noise: f64,
    /// Iterations between retraction attempts.
    pub check_every: usize,
    /// Below this linear residual every step ends with a retraction.
    pub polish_below: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_iters: 5000,
            step: 0.5,
            idempotent_weight: 1.0,
            seed: 0,
            restarts: 8,
            tolerance: DEFAULT_TOLERANCE,
            init: None,
            init_noise: 0.05,
            check_every: 10,
            polish_below: 1e-2,
        }
    }
}

/// Affine relation `Σ c_i X_i = b · 1`.
struct Linear {
    coefs: Vec<(usize, f64)>,
    constant: f64,
}

fn linear_relations(pres: &Presentation, gens: &[Generator]) -> Vec<Linear> {
    let index = |g: Generator| gens.iter().position(|&x| x == g);
    let mut out = Vec::new();
    for r in pres.relations.iter().filter(|r| r.poly.degree() <= 1) {
        let mut coefs: Vec<(usize, f64)> = Vec::new();
        let mut constant = 0.0;
        for (w, c) in r.poly.terms() {
            let c = c.to_f64().unwrap_or(0.0);
            match w.letters() {
                [] => constant -= c,
                [l] => {
                    let Some(i) = index(l.gen) else { continue };
                    match coefs.iter_mut().find(|(j, _)| *j == i) {
                        Some((_, x)) => *x += c,
                        None => coefs.push((i, c)),
                    }
                }
                _ => unreachable!("degree at most one"),
            }
        }
        coefs.retain(|(_, c)| *c != 0.0);
        if !coefs.is_empty() {
            out.push(Linear { coefs, constant });
        }
    }
    out
}

fn hermitize(m: &Matrix) -> Matrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Nearest orthogonal projection to a Hermitian matrix.
fn retract(m: &Matrix) -> Matrix {
    let d = m.nrows();
    let eig = hermitize(m).symmetric_eigen();
    let mut p = Matrix::zeros(d, d);
    for k in 0..d {
        if eig.eigenvalues[k] > 0.5 {
            let v = eig.eigenvectors.column(k);
            p += &v * v.adjoint();
        }
    }
    hermitize(&p)
}

fn random_hermitian(rng: &mut ChaCha8Rng, d: usize, scale: f64) -> Matrix {
    let mut m = Matrix::zeros(d, d);
    for i in 0..d {
        m[(i, i)] = Complex64::new(rng.random_range(0.0..1.0) * scale, 0.0);
        for j in i + 1..d {
            let z = Complex64::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5)) * scale;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

struct Problem<'a> {
    pres: &'a Presentation,
    gens: Vec<Generator>,
    lin: Vec<Linear>,
    dim: usize,
    lipschitz: f64,
}

impl Problem<'_> {
    fn residual(&self, l: &Linear, xs: &[Matrix]) -> Matrix {
        let mut r = Matrix::identity(self.dim, self.dim) * Complex64::new(-l.constant, 0.0);
        for &(i, c) in &l.coefs {
            r += &xs[i] * Complex64::new(c, 0.0);
        }
        r
    }

    fn max_linear(&self, xs: &[Matrix]) -> f64 {
        self.lin.iter().map(|l| op_norm(&self.residual(l, xs))).fold(0.0, f64::max)
    }

    fn rep(&self, xs: &[Matrix], tolerance: f64) -> MatrixRep {
        let mut rep = MatrixRep::new(self.dim);
        rep.tolerance = tolerance;
        for (g, x) in self.gens.iter().zip(xs) {
            rep.set(*g, x.clone());
        }
        rep
    }

    fn attempt(&self, xs: &[Matrix], tolerance: f64) -> Option<WitnessReport> {
        let cand: Vec<Matrix> = xs.iter().map(retract).collect();
        if self.max_linear(&cand) > tolerance {
            return None;
        }
        let report = check_rep(&self.rep(&cand, tolerance), self.pres).ok()?;
        report.satisfies().then_some(report)
    }

    fn run(&self, seed: u64, opts: &SearchOptions) -> Option<WitnessReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = self.dim;
        let mut xs: Vec<Matrix> = match &opts.init {
            Some(init) => self
                .gens
                .iter()
                .map(|g| {
                    let base = init.get(*g).filter(|m| m.nrows() == d).cloned().unwrap_or_else(|| Matrix::zeros(d, d));
                    hermitize(&base) + random_hermitian(&mut rng, d, opts.init_noise)
                })
                .collect(),
            None => self.gens.iter().map(|_| random_hermitian(&mut rng, d, 1.0)).collect(),
        };
        let eta = opts.step / self.lipschitz;
        let w = Complex64::new(opts.idempotent_weight, 0.0);
        let two = Complex64::new(2.0, 0.0);
        for it in 0..opts.max_iters {
            if it % opts.check_every.max(1) == 0 {
                if let Some(r) = self.attempt(&xs, opts.tolerance) {
                    return Some(r);
                }
            }
            let mut grads: Vec<Matrix> = xs
                .iter()
                .map(|x| {
                    let defect = x * x - x;
                    (x * &defect + &defect * x - &defect) * two * w
                })
                .collect();
            for l in &self.lin {
                let r = self.residual(l, &xs);
                for &(i, c) in &l.coefs {
                    grads[i] += &r * Complex64::new(2.0 * c, 0.0);
                }
            }
            let polish = self.max_linear(&xs) < opts.polish_below;
            for (x, g) in xs.iter_mut().zip(&grads) {
                let next = hermitize(&(&*x - g * Complex64::new(eta, 0.0)));
                *x = if polish { retract(&next) } else { next };
            }
        }
        self.attempt(&xs, opts.tolerance)
    }
}

/// Penalty descent over Hermitian tuples for a `d`-dimensional
/// representation of the quantum automorphism group of `h`, retracting to
/// projections to test each candidate. Only reports representations whose
/// residual is within tolerance; `None` means nothing was found and carries
/// no mathematical meaning.
pub fn search_magic_rep(h: &Hypergraph, d: usize, opts: &SearchOptions) -> Option<WitnessReport> {
    if d == 0 {
        return None;
    }
    let pres = Presentation::qaut(h);
    let gens = pres.generators.clone();
    let lin = linear_relations(&pres, &gens);
    let mut curvature = vec![0.0; gens.len()];
    for l in &lin {
        let row: f64 = l.coefs.iter().map(|(_, c)| c.abs()).sum();
        for &(i, c) in &l.coefs {
            curvature[i] += 2.0 * c.abs() * row;
        }
    }
    let lipschitz = curvature.iter().copied().fold(0.0, f64::max) + 6.0 * opts.idempotent_weight + 1.0;
    let problem = Problem { pres: &pres, gens, lin, dim: d, lipschitz };
    let seeds: Vec<u64> = (0..opts.restarts.max(1) as u64).map(|k| opts.seed.wrapping_add(k)).collect();
    let found: Vec<Option<WitnessReport>> = seeds.par_iter().map(|&s| problem.run(s, opts)).collect();
    let (k, mut report) = found.into_iter().enumerate().find_map(|(k, r)| r.map(|r| (k, r)))?;
    report.notes.push(format!("numerical search, seed {}, dimension {d}", seeds[k]));
    Some(report)
}
