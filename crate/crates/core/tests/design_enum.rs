use creg_core::bits::permute_mask;
use creg_core::designs::{
    canonical_form, design_automorphisms, enumerate_designs, extend_design, fisher_check,
    is_t_design, lex_sorted, Design,
};
use creg_core::hadamard::{code_of, paley_hadamard_12};
use creg_core::symmetry::set_system_isomorphism;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn weight_supports(m: usize, k: u32) -> Vec<u32> {
    let code = code_of(&paley_hadamard_12());
    let code = if m == 11 { code.puncture(1).unwrap() } else { code };
    code.masks().iter().copied().filter(|w| w.count_ones() == k).collect()
}

#[test]
fn code_weight_classes_are_designs() {
    assert_eq!(is_t_design(12, &weight_supports(12, 6), 3).unwrap().lambda(), Some(2));
    assert_eq!(is_t_design(11, &weight_supports(11, 5), 2).unwrap().lambda(), Some(2));
    assert_eq!(is_t_design(11, &weight_supports(11, 6), 2).unwrap().lambda(), Some(3));
}

#[test]
fn unique_symmetric_design_on_11_points() {
    let reps = enumerate_designs(2, 11, 5, 2).unwrap();
    assert_eq!(reps.len(), 1);
    let d = &reps[0];
    assert_eq!(d.block_total(), 11);
    assert!(d.parameter_identities_hold());
    let fisher = fisher_check(d, "fisher").unwrap();
    assert!(fisher.passed());
    let (g, order) = design_automorphisms(d).unwrap();
    assert_eq!(order, 660);
    assert_eq!(g.closure(1_000_000).unwrap().order(), Some(660));
    let code_design = Design::new(11, weight_supports(11, 5), 2).unwrap();
    assert!(set_system_isomorphism(11, d.blocks(), code_design.blocks()).is_some());
    let complement = Design::new(11, weight_supports(11, 6), 2).unwrap();
    assert!(fisher_check(&complement, "fisher").unwrap().passed());
}

#[test]
fn unique_3_design_on_12_points_and_extension() {
    let reps = enumerate_designs(3, 12, 6, 2).unwrap();
    assert_eq!(reps.len(), 1);
    let e = &reps[0];
    assert_eq!(e.block_total(), 22);
    let (g, order) = design_automorphisms(e).unwrap();
    assert_eq!(order, 7920);
    assert!(g.coordinate_transitivity_degree() >= 3);

    let d = &enumerate_designs(2, 11, 5, 2).unwrap()[0];
    let ext = extend_design(d).unwrap();
    assert_eq!(ext.block_total(), 22);
    assert_eq!(ext.lambda(), 2);
    assert!(set_system_isomorphism(12, ext.blocks(), e.blocks()).is_some());
    assert_eq!(&ext.derived_at(11).unwrap(), d);
}

#[test]
fn relabelled_representatives_recanonicalize() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (t, m, k, lambda) in [(2, 11, 5, 2), (3, 12, 6, 2), (2, 7, 3, 1)] {
        let rep = &enumerate_designs(t, m, k, lambda).unwrap()[0];
        let canon = lex_sorted(rep.blocks());
        assert_eq!(canonical_form(m, rep.blocks()).blocks, canon);
        for _ in 0..5 {
            let mut perm: Vec<u8> = (0..m as u8).collect();
            perm.shuffle(&mut rng);
            let moved: Vec<u32> = rep.blocks().iter().map(|&b| permute_mask(b, &perm)).collect();
            assert_eq!(canonical_form(m, &moved).blocks, canon);
        }
    }
}
