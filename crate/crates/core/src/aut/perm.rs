use super::AutError;

/// A pair `(σ, τ) ∈ S_V × S_E`, stored as image vectors over indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiPermutation {
    sigma: Vec<usize>,
    tau: Vec<usize>,
}

fn check_bijection(images: &[usize], what: &str) -> Result<(), AutError> {
    let mut seen = vec![false; images.len()];
    for &i in images {
        if i >= images.len() || std::mem::replace(&mut seen[i], true) {
            return Err(AutError::NotBijection(format!("{what} = {images:?}")));
        }
    }
    Ok(())
}

fn invert(images: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; images.len()];
    for (i, &j) in images.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn cycles(images: &[usize], labels: &[String]) -> String {
    let mut seen = vec![false; images.len()];
    let mut out = String::new();
    for start in 0..images.len() {
        if seen[start] || images[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(labels[i].as_str());
            i = images[i];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

impl BiPermutation {
    pub fn new(sigma: Vec<usize>, tau: Vec<usize>) -> Result<Self, AutError> {
        check_bijection(&sigma, "sigma")?;
        check_bijection(&tau, "tau")?;
        Ok(Self { sigma, tau })
    }

    pub(crate) fn new_unchecked(sigma: Vec<usize>, tau: Vec<usize>) -> Self {
        Self { sigma, tau }
    }

    /// Builds a pair from label maps given as `(from, to)` entries; labels
    /// missing from the maps are fixed.
    pub fn from_labels(
        vertices: &[String],
        edges: &[String],
        sigma: &[(String, String)],
        tau: &[(String, String)],
    ) -> Result<Self, AutError> {
        let build = |labels: &[String], map: &[(String, String)]| -> Result<Vec<usize>, AutError> {
            let idx = |l: &str| labels.iter().position(|x| x == l).ok_or_else(|| AutError::UnknownLabel(l.into()));
            let mut images: Vec<usize> = (0..labels.len()).collect();
            for (a, b) in map {
                images[idx(a)?] = idx(b)?;
            }
            Ok(images)
        };
        Self::new(build(vertices, sigma)?, build(edges, tau)?)
    }

    pub fn identity(n: usize, m: usize) -> Self {
        Self { sigma: (0..n).collect(), tau: (0..m).collect() }
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &j)| i == j) && self.tau.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            sigma: other.sigma.iter().map(|&i| self.sigma[i]).collect(),
            tau: other.tau.iter().map(|&i| self.tau[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self { sigma: invert(&self.sigma), tau: invert(&self.tau) }
    }

    /// `(τ, σ)`, the corresponding pair for the dual hypergraph.
    pub fn swapped(&self) -> Self {
        Self { sigma: self.tau.clone(), tau: self.sigma.clone() }
    }

    pub fn sigma_cycles(&self, labels: &[String]) -> String {
        cycles(&self.sigma, labels)
    }

    pub fn tau_cycles(&self, labels: &[String]) -> String {
        cycles(&self.tau, labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_first() {
        let a = BiPermutation::new(vec![1, 2, 0], vec![]).unwrap();
        let b = BiPermutation::new(vec![1, 0, 2], vec![]).unwrap();
        // (a ∘ b)(0) = a(b(0)) = a(1) = 2
        assert_eq!(a.compose(&b).sigma()[0], 2);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(BiPermutation::new(vec![0, 0], vec![]).is_err());
        assert!(BiPermutation::new(vec![2, 0], vec![]).is_err());
    }

    #[test]
    fn cycle_notation() {
        let labels: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let g = BiPermutation::new(vec![1, 2, 0, 3], vec![]).unwrap();
        assert_eq!(g.sigma_cycles(&labels), "(a b c)");
        assert_eq!(BiPermutation::identity(4, 0).sigma_cycles(&labels), "()");
    }
}
