use hypersym::aut::enumerate_aut;
use hypersym::fixtures;
use hypersym::nc::{coaction_check, verify_identity, Flavor, Generator, IdentityId, NCPoly, Prover, ProverConfig};
use hypersym::witness::{check_rep, perm_rep};
use hypersym::{Hypergraph, Method, Presentation};

fn only(s: &std::collections::BTreeSet<usize>) -> u32 {
    assert_eq!(s.len(), 1, "1-uniform edge");
    *s.iter().next().unwrap() as u32
}

/// `u_{(v1,w1)(v2,w2)} ↦ u_{v1v2} u_{w1w2}`.
fn bichon_shadow(h: &Hypergraph, p: &NCPoly) -> NCPoly {
    p.substitute(&mut |l| match l.gen {
        Generator::UE(e, f) => {
            let (e, f) = (e as usize, f as usize);
            let s = NCPoly::gen(Generator::UV(only(h.src(e)), only(h.src(f))));
            let r = NCPoly::gen(Generator::UV(only(h.rng(e)), only(h.rng(f))));
            &s * &r
        }
        _ => NCPoly::letter(l),
    })
}

#[test]
fn qaut_relations_land_in_the_bichon_ideal() {
    for h in [fixtures::single_directed_edge(), fixtures::directed_path(), fixtures::directed_cycle3(), fixtures::directed_loop()] {
        assert!(h.n_vertices() <= 3);
        let qaut = Presentation::qaut(&h);
        let bichon = Presentation::new(&h, Flavor::Bichon).unwrap();
        let mut prover = Prover::with_config(&bichon, ProverConfig { max_degree: 4, ..ProverConfig::default() });
        for r in &qaut.relations {
            let image = bichon_shadow(&h, &r.poly);
            let m = prover.member(&image, 4).unwrap();
            let cert = m.certificate().unwrap_or_else(|| panic!("{}: {}", r.label, bichon.poly_label(&image)));
            assert!(cert.check(&bichon, &image));
        }
    }
}

#[test]
fn classical_points_satisfy_every_flavor() {
    for (name, h) in fixtures::all() {
        let flavors: Vec<Presentation> = Flavor::ALL
            .into_iter()
            .filter(|&f| f != Flavor::CstarEqualities)
            .filter_map(|f| Presentation::new(&h, f).ok())
            .collect();
        for g in enumerate_aut(&h, Method::Backtrack).unwrap().elements() {
            let rep = perm_rep(&h, g).unwrap();
            for p in &flavors {
                let r = check_rep(&rep, p).unwrap();
                assert_eq!(r.max_relation_residual, 0.0, "{name} under {}", p.flavor.name());
            }
        }
    }
}

#[test]
fn distinct_parallel_isometries_stay_orthogonal() {
    let h = fixtures::parallel_edges();
    let report = coaction_check(&h, 6).unwrap();
    let mixed: Vec<_> = report
        .items
        .iter()
        .filter(|i| i.section == "relation_1" && ["s*[e] s[f]", "s*[f] s[e]"].iter().any(|l| i.label.starts_with(l)))
        .collect();
    assert_eq!(mixed.len(), 2);
    assert!(mixed.iter().all(|i| i.passed()));
}

#[test]
fn degree_vanishing_on_unbalanced_pair() {
    let h = fixtures::single_directed_edge();
    let r = verify_identity(&h, IdentityId::DegreeVanishing, 3).unwrap();
    assert_eq!(r.instances.len(), 2);
    assert!(r.passed());
}
