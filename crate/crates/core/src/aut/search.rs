use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{is_automorphism, AutError, AutGroup, BiPermutation, Method};
use crate::hypergraph::Hypergraph;

pub const DEFAULT_BRUTE_CAP: u128 = 10_000_000;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}

/// Lexicographic successor; returns false after the last permutation.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("pivot has a larger successor");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

pub fn enumerate_aut(h: &Hypergraph, method: Method) -> Result<AutGroup, AutError> {
    match method {
        Method::Brute => brute(h, DEFAULT_BRUTE_CAP),
        Method::Backtrack => Ok(backtrack(h)),
    }
}

/// Exhaustive scan of `S_V × S_E`.
pub fn brute(h: &Hypergraph, cap: u128) -> Result<AutGroup, AutError> {
    let size = factorial(h.n_vertices()).saturating_mul(factorial(h.n_edges()));
    if size > cap {
        return Err(AutError::CapExceeded { size, cap });
    }
    let taus = all_permutations(h.n_edges());
    let found: Vec<BiPermutation> = all_permutations(h.n_vertices())
        .into_par_iter()
        .flat_map_iter(|sigma| {
            taus.iter()
                .map(move |tau| BiPermutation::new_unchecked(sigma.clone(), tau.clone()))
                .filter(|g| is_automorphism(h, g).expect("shapes match"))
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(AutGroup::from_elements(found))
}

type EdgeKey = (BTreeSet<usize>, BTreeSet<usize>);

struct Search<'a> {
    h: &'a Hypergraph,
    order: Vec<usize>,
    signature: Vec<(usize, usize)>,
    /// Edges whose vertices are all assigned once `order[k]` is assigned.
    settled_at: Vec<Vec<usize>>,
    classes: BTreeMap<EdgeKey, Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        let n = h.n_vertices();
        let signature: Vec<(usize, usize)> = (0..n).map(|v| (h.n_s(v), h.n_r(v))).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (signature.iter().filter(|&&s| s == signature[v]).count(), v));
        let mut position = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        let mut settled_at = vec![Vec::new(); n];
        let mut classes: BTreeMap<EdgeKey, Vec<usize>> = BTreeMap::new();
        for e in 0..h.n_edges() {
            if let Some(last) = h.src(e).iter().chain(h.rng(e)).map(|&v| position[v]).max() {
                settled_at[last].push(e);
            }
            classes.entry((h.src(e).clone(), h.rng(e).clone())).or_default().push(e);
        }
        Self { h, order, signature, settled_at, classes }
    }

    fn image_key(&self, sigma: &[usize], e: usize) -> EdgeKey {
        let img = |s: &BTreeSet<usize>| s.iter().map(|&v| sigma[v]).collect();
        (img(self.h.src(e)), img(self.h.rng(e)))
    }

    /// Edges settled at step `k` must map onto an edge class of equal size.
    fn consistent(&self, sigma: &[usize], k: usize) -> bool {
        self.settled_at[k].iter().all(|&e| {
            let own = &self.classes[&(self.h.src(e).clone(), self.h.rng(e).clone())];
            self.classes.get(&self.image_key(sigma, e)).is_some_and(|c| c.len() == own.len())
        })
    }

    fn extend(&self, k: usize, sigma: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<BiPermutation>) {
        if k == self.order.len() {
            self.edge_maps(sigma, out);
            return;
        }
        let v = self.order[k];
        for w in 0..self.order.len() {
            if used[w] || self.signature[w] != self.signature[v] {
                continue;
            }
            sigma[v] = w;
            if self.consistent(sigma, k) {
                used[w] = true;
                self.extend(k + 1, sigma, used, out);
                used[w] = false;
            }
        }
        sigma[v] = usize::MAX;
    }

    /// Every τ compatible with a full vertex map: bijections between each
    /// edge class and the class of its image key.
    fn edge_maps(&self, sigma: &[usize], out: &mut Vec<BiPermutation>) {
        let mut pairs: Vec<(&Vec<usize>, &Vec<usize>)> = Vec::new();
        for (key, edges) in &self.classes {
            let e = edges[0];
            debug_assert_eq!(key, &(self.h.src(e).clone(), self.h.rng(e).clone()));
            match self.classes.get(&self.image_key(sigma, e)) {
                Some(target) if target.len() == edges.len() => pairs.push((edges, target)),
                _ => return,
            }
        }
        let mut tau = vec![0; self.h.n_edges()];
        fn product(
            pairs: &[(&Vec<usize>, &Vec<usize>)],
            tau: &mut Vec<usize>,
            sigma: &[usize],
            out: &mut Vec<BiPermutation>,
        ) {
            let Some(((from, to), rest)) = pairs.split_first() else {
                out.push(BiPermutation::new_unchecked(sigma.to_vec(), tau.clone()));
                return;
            };
            for p in all_permutations(from.len()) {
                for (i, &e) in from.iter().enumerate() {
                    tau[e] = to[p[i]];
                }
                product(rest, tau, sigma, out);
            }
        }
        product(&pairs, &mut tau, sigma, out);
    }

    fn run(&self) -> Vec<BiPermutation> {
        let n = self.order.len();
        if n == 0 {
            let mut out = Vec::new();
            self.edge_maps(&[], &mut out);
            return out;
        }
        let v = self.order[0];
        (0..n)
            .into_par_iter()
            .filter(|&w| self.signature[w] == self.signature[v])
            .flat_map_iter(|w| {
                let mut sigma = vec![usize::MAX; n];
                let mut used = vec![false; n];
                let mut out = Vec::new();
                sigma[v] = w;
                if self.consistent(&sigma, 0) {
                    used[w] = true;
                    self.extend(1, &mut sigma, &mut used, &mut out);
                }
                out
            })
            .collect()
    }
}

/// Backtracking over vertex images in order of signature rarity, pruning by
/// the `(N_s, N_r)` signature and by edge-class sizes.
pub fn backtrack(h: &Hypergraph) -> AutGroup {
    AutGroup::from_elements(Search::new(h).run())
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub order: usize,
    pub opposite_equal: bool,
    pub dual_is_swap: bool,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.opposite_equal && self.dual_is_swap
    }
}

/// Compares `Aut(H)` with `Aut(Hᵒᵖ)` and with the swap image of `Aut(H*)`.
pub fn check_transform_invariance(h: &Hypergraph, method: Method) -> Result<InvarianceReport, AutError> {
    let g = enumerate_aut(h, method)?;
    let op = enumerate_aut(&h.opposite(), method)?;
    let dual = enumerate_aut(&h.dual_unchecked(), method)?;
    Ok(InvarianceReport { order: g.order(), opposite_equal: g == op, dual_is_swap: dual == g.swapped() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn permutations_count() {
        assert_eq!(all_permutations(0).len(), 1);
        assert_eq!(all_permutations(4).len(), 24);
    }

    #[test]
    fn known_orders() {
        assert_eq!(brute(&fixtures::directed_cycle3(), DEFAULT_BRUTE_CAP).unwrap().order(), 3);
        assert_eq!(backtrack(&fixtures::directed_cycle3()).order(), 3);
        assert_eq!(backtrack(&fixtures::cycle4_simple()).order(), 8);
        for (n, m) in [(2, 2), (3, 2), (2, 3)] {
            let h = Hypergraph::gamma_nm(n, m).unwrap();
            let expect = (factorial(n) * factorial(m)) as usize;
            assert_eq!(brute(&h, DEFAULT_BRUTE_CAP).unwrap().order(), expect);
            assert_eq!(backtrack(&h).order(), expect);
        }
    }

    #[test]
    fn brute_cap() {
        let h = Hypergraph::gamma_nm(6, 6).unwrap();
        assert!(matches!(brute(&h, 1000), Err(AutError::CapExceeded { .. })));
    }

    #[test]
    fn methods_agree_on_fixtures() {
        for (name, h) in fixtures::all() {
            assert_eq!(brute(&h, DEFAULT_BRUTE_CAP).unwrap(), backtrack(&h), "{name}");
        }
    }

    #[test]
    fn invariance() {
        for h in [fixtures::single_directed_edge(), fixtures::directed_cycle3(), fixtures::gamma23()] {
            let r = check_transform_invariance(&h, Method::Brute).unwrap();
            assert!(r.passed());
        }
        assert_eq!(check_transform_invariance(&fixtures::gamma23(), Method::Backtrack).unwrap().order, 12);
    }
}
