use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::rep::{check_rep, Matrix, MatrixRep, WitnessReport};
use super::WitnessError;
use crate::aut::{failed_condition, BiPermutation};
use crate::hypergraph::Hypergraph;
use crate::nc::{Generator, Presentation};

fn scalar(x: bool) -> Matrix {
    Matrix::from_element(1, 1, Complex64::new(f64::from(u8::from(x)), 0.0))
}

fn require_aut(h: &Hypergraph, g: &BiPermutation) -> Result<(), WitnessError> {
    if g.sigma().len() != h.n_vertices() || g.tau().len() != h.n_edges() {
        return Err(WitnessError::NotAutomorphism(format!(
            "permutation sizes ({}, {}) do not match hypergraph ({}, {})",
            g.sigma().len(),
            g.tau().len(),
            h.n_vertices(),
            h.n_edges()
        )));
    }
    match failed_condition(h, g) {
        Some(why) => Err(WitnessError::NotAutomorphism(why)),
        None => Ok(()),
    }
}

/// One-dimensional representation `u_V ↦ P_σ`, `u_E ↦ P_τ`.
pub fn perm_rep(h: &Hypergraph, g: &BiPermutation) -> Result<MatrixRep, WitnessError> {
    require_aut(h, g)?;
    let mut rep = MatrixRep::new(1);
    let (n, m) = (h.n_vertices(), h.n_edges());
    for v in 0..n {
        for w in 0..n {
            rep.set(Generator::UV(v as u32, w as u32), scalar(v == g.sigma()[w]));
        }
    }
    for e in 0..m {
        for f in 0..m {
            rep.set(Generator::UE(e as u32, f as u32), scalar(e == g.tau()[f]));
        }
    }
    Ok(rep)
}

/// Representation of the hypergraph C*-algebra on the space with basis
/// `|v⟩` and `|e, v⟩` for `v ∈ r(e)`: `p_v` projects onto `|v⟩` and `s_e`
/// maps `|v⟩` to `|e, v⟩`. The generators are relabelled by `g` first.
pub fn cstar_perm_rep(h: &Hypergraph, g: &BiPermutation) -> Result<MatrixRep, WitnessError> {
    require_aut(h, g)?;
    let (n, m) = (h.n_vertices(), h.n_edges());
    let mut offset = vec![0; m];
    let mut dim = n;
    for e in 0..m {
        offset[e] = dim;
        dim += h.rng(e).len();
    }
    let one = Complex64::new(1.0, 0.0);
    let mut rep = MatrixRep::new(dim);
    for v in 0..n {
        let mut p = Matrix::zeros(dim, dim);
        p[(g.sigma()[v], g.sigma()[v])] = one;
        rep.set(Generator::P(v as u32), p);
    }
    for e in 0..m {
        let te = g.tau()[e];
        let mut s = Matrix::zeros(dim, dim);
        for (k, &v) in h.rng(te).iter().enumerate() {
            s[(offset[te] + k, v)] = one;
        }
        rep.set(Generator::SStar(e as u32), s.adjoint());
        rep.set(Generator::S(e as u32), s);
    }
    Ok(rep)
}

/// The 4×4 magic unitary of 2×2 blocks built from the projections
/// `p = diag(1, 0)` and `q` onto `(cos θ, sin θ)`.
pub fn two_projection_block(theta: f64) -> [[Matrix; 4]; 4] {
    let (s, c) = theta.sin_cos();
    let r = |x: f64| Complex64::new(x, 0.0);
    let p = Matrix::from_row_slice(2, 2, &[r(1.0), r(0.0), r(0.0), r(0.0)]);
    let q = Matrix::from_row_slice(2, 2, &[r(c * c), r(c * s), r(c * s), r(s * s)]);
    let id = Matrix::identity(2, 2);
    let z = Matrix::zeros(2, 2);
    let (np, nq) = (&id - &p, &id - &q);
    [
        [p.clone(), np.clone(), z.clone(), z.clone()],
        [np, p, z.clone(), z.clone()],
        [z.clone(), z.clone(), q.clone(), nq.clone()],
        [z.clone(), z, nq, q],
    ]
}

/// Two-dimensional magic unitary on `V` (or on `E` when `|V| < 4`) for a
/// hypergraph whose sources and ranges all equal `V`; the other unitary is
/// the identity. The commutator of `p` and `q` has norm `|sin θ cos θ|`.
pub fn nonclassical_witness(h: &Hypergraph, theta: f64) -> Result<WitnessReport, WitnessError> {
    if !h.is_gamma_shaped() {
        return Err(WitnessError::NotAvailable("every source and range must be the full vertex set".into()));
    }
    let (n, m) = (h.n_vertices(), h.n_edges());
    if n < 4 && m < 4 {
        return Err(WitnessError::NotAvailable(format!(
            "the construction needs an index set of size at least 4, have |V| = {n}, |E| = {m}; \
             this does not show the quantum automorphism group is classical"
        )));
    }
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(WitnessError::NotAvailable(format!("theta = {theta} lies outside (0, π/2)")));
    }
    let on_vertices = n >= 4;
    let block = two_projection_block(theta);
    let entry = |i: usize, j: usize| -> Matrix {
        if i < 4 && j < 4 {
            block[i][j].clone()
        } else if i == j {
            Matrix::identity(2, 2)
        } else {
            Matrix::zeros(2, 2)
        }
    };
    let trivial = |i: usize, j: usize| if i == j { Matrix::identity(2, 2) } else { Matrix::zeros(2, 2) };
    let mut rep = MatrixRep::new(2);
    for i in 0..n {
        for j in 0..n {
            let x = if on_vertices { entry(i, j) } else { trivial(i, j) };
            rep.set(Generator::UV(i as u32, j as u32), x);
        }
    }
    for i in 0..m {
        for j in 0..m {
            let x = if on_vertices { trivial(i, j) } else { entry(i, j) };
            rep.set(Generator::UE(i as u32, j as u32), x);
        }
    }
    let mut report = check_rep(&rep, &Presentation::qaut(h))?;
    report.notes.push(format!(
        "two-projection witness on the {} unitary, theta = {theta}",
        if on_vertices { "vertex" } else { "edge" }
    ));
    Ok(report)
}
