//! Large randomized sweeps across the engines; run in release mode.

use std::sync::Arc;
use ulpa_core::analysis::{check_family, pin_down, AxiomSet};
use ulpa_core::construct::{build_eg, desingularize, EgOptions};
use ulpa_core::element::{Eq3, UElem};
use ulpa_core::hom;
use ulpa_core::oracle::{acyclic_matrix_rep, compare};
use ulpa_core::suites;
use ulpa_core::{corpus, EdgeId, Ring};

fn main() {
    let mut rng = corpus::seeded(777);

    // 1. Oracle comparison over a wide acyclic family.
    let mut total = 0usize;
    for g in corpus::all_graphs(4, 4, true) {
        for ring in [Ring::PrimeField(2), Ring::PrimeField(3), Ring::Rationals] {
            let rep = acyclic_matrix_rep(&g, &ring).unwrap();
            let report = compare(&g, &rep, &ring, 5, &mut rng).unwrap();
            assert_eq!(report.disagreements, 0, "{}", g.name);
            total += report.samples;
        }
    }
    println!("oracle compare: {total} samples, 0 disagreements");

    // 2. Associativity across engines, bigger structures.
    let mut checked = 0usize;
    for seed in 0..40 {
        let mut rng = corpus::seeded(1000 + seed);
        let g = corpus::random_graph(&mut rng, 5, 6);
        let r = Ring::IntegersMod(6);
        for _ in 0..200 {
            let a = corpus::random_gelem(&g, &r, &mut rng, 3);
            let b = corpus::random_gelem(&g, &r, &mut rng, 3);
            let c = corpus::random_gelem(&g, &r, &mut rng, 3);
            assert!(a.mul(&b).unwrap().mul(&c).unwrap()
                .equal(&a.mul(&b.mul(&c).unwrap()).unwrap()).unwrap());
            checked += 1;
        }
        let ug = corpus::random_finite_ultragraph(&mut rng, 5, 6);
        for _ in 0..200 {
            let a = corpus::random_uelem(&ug, &r, &mut rng, 2);
            let b = corpus::random_uelem(&ug, &r, &mut rng, 2);
            let c = corpus::random_uelem(&ug, &r, &mut rng, 2);
            let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
            if lhs != rhs {
                assert_eq!(lhs.equal(&rhs).unwrap(), Eq3::True);
            }
            checked += 1;
        }
        for _ in 0..200 {
            let a = corpus::random_el_elem(&ug, &r, &mut rng, 2);
            let b = corpus::random_el_elem(&ug, &r, &mut rng, 2);
            let c = corpus::random_el_elem(&ug, &r, &mut rng, 2);
            let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
            if lhs != rhs {
                assert_eq!(lhs.equal(&rhs).unwrap(), Eq3::True);
            }
            checked += 1;
        }
    }
    println!("associativity: {checked} triples");

    // 3. Pin-down on many elements and rings.
    let mut pins = 0usize;
    for seed in 0..200 {
        let mut rng = corpus::seeded(2000 + seed);
        let g = corpus::random_no_singular_ultragraph(&mut rng, 4, 2);
        for ring in [Ring::Rationals, Ring::PrimeField(5)] {
            for _ in 0..15 {
                let x = corpus::random_uelem(&g, &ring, &mut rng, 3);
                let zero = UElem::zero(g.clone(), ring.clone());
                if x.equal(&zero).unwrap() == Eq3::True {
                    continue;
                }
                let pin = pin_down(&x).unwrap_or_else(|e| panic!("seed {seed}: {e}\n x={x}"));
                let axb = pin.a.mul(&x).unwrap().mul(&pin.b).unwrap();
                let form = pin.form.to_element(&g, &ring).unwrap();
                assert_eq!(axb.equal(&form).unwrap(), Eq3::True);
                pins += 1;
            }
        }
    }
    println!("pin-down: {pins} elements re-verified");

    // 4. Families on wider corpora.
    let mut fams = 0usize;
    for seed in 0..120 {
        let mut rng = corpus::seeded(3000 + seed);
        let g = corpus::random_no_singular_ultragraph(&mut rng, 4, 2);
        let f: Vec<EdgeId> = g.edge_ids().take(3).collect();
        let fam = hom::lfg(&g, &f, &Ring::Integers).unwrap();
        let rep = check_family(&fam, AxiomSet::LP).unwrap();
        assert!(rep.passed(), "lfg seed {seed}: {:?}",
            rep.instances.iter().filter(|i| i.status != ulpa_core::analysis::InstanceStatus::Pass).collect::<Vec<_>>());
        let eg = Arc::new(build_eg(&g, &EgOptions::default()).unwrap());
        let fam = hom::lex3(&eg, &Ring::Integers);
        let rep = check_family(&fam, AxiomSet::ExL).unwrap();
        assert!(rep.passed(), "lex3 seed {seed}");
        fams += 2;
        let sg = corpus::random_singular_ultragraph(&mut rng, 4);
        let d = Arc::new(desingularize(&sg, 3).unwrap());
        let rep = check_family(&hom::desing(&d, &Ring::Integers), AxiomSet::ULP).unwrap();
        assert_eq!(rep.count(ulpa_core::analysis::InstanceStatus::Fail), 0, "desing seed {seed}");
        assert_eq!(rep.count(ulpa_core::analysis::InstanceStatus::Unknown), 0, "desing seed {seed}");
        fams += 1;
    }
    println!("families: {fams} checked");

    // 5. Transfers on a wide corpus.
    let mut rng = corpus::seeded(4000);
    let corpus_structures: Vec<_> = (0..400)
        .map(|_| corpus::random_finite_ultragraph(&mut rng, 5, 5))
        .collect();
    let l = suites::transfer_suite("transfer_L", &corpus_structures, &EgOptions::default(), 3);
    assert!(l.passed(), "{l}");
    let d = suites::transfer_suite("desing_L", &corpus_structures, &EgOptions::default(), 3);
    assert!(d.passed(), "{d}");
    let ns: Vec<_> = (0..150)
        .map(|_| corpus::random_no_singular_ultragraph(&mut rng, 4, 2))
        .collect();
    let hs = suites::transfer_suite("transfer_hs", &ns, &EgOptions::default(), 3);
    assert!(hs.passed(), "{hs}");
    println!("transfers: {} instances", 400 + 400 + 150);

    // 6. texlg + tlgis_span on randoms.
    for seed in 0..40 {
        let mut rng = corpus::seeded(5000 + seed);
        let g = corpus::random_no_singular_ultragraph(&mut rng, 3, 1);
        let rep = suites::texlg_suite(&g, &Ring::Integers, &mut rng).unwrap();
        assert!(rep.passed(), "texlg seed {seed}: {rep}");
        let eg = Arc::new(build_eg(&g, &EgOptions::default()).unwrap());
        let rep = suites::tlgis_span_suite(&eg, &Ring::Integers, 2);
        assert!(rep.passed(), "tlgis seed {seed}: {rep}");
    }
    println!("texlg/tlgis sweeps: done");

    // 7. Cross-engine multiplicativity at scale.
    let mut crossed = 0usize;
    for seed in 0..150 {
        let mut rng = corpus::seeded(6000 + seed);
        let g = corpus::random_no_singular_ultragraph(&mut rng, 4, 2);
        let r = Ring::IntegersMod(6);
        for _ in 0..20 {
            let a = corpus::random_uelem(&g, &r, &mut rng, 2);
            let b = corpus::random_uelem(&g, &r, &mut rng, 2);
            let lhs = a.mul(&b).unwrap().to_identification_graph().unwrap();
            let rhs = a.to_identification_graph().unwrap()
                .mul(&b.to_identification_graph().unwrap()).unwrap();
            assert!(lhs.equal(&rhs).unwrap(), "cross seed {seed}");
            crossed += 1;
        }
    }
    println!("cross-engine multiplicativity: {crossed} products");
    println!("soak: all clear");
}
