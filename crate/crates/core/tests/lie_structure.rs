use std::path::PathBuf;

use fdim_core::commutator::build_commutator_data;
use fdim_core::lie::LieAlgebraZ;
use fdim_core::metabelian::metabelian_algebra;
use fdim_core::pattern::{pattern_algebra, Poset};
use fdim_core::rings::{ff_rank, FiniteField, FiniteRing};
use fdim_core::Error;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn data(path: &str) -> String {
    let full = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(path);
    std::fs::read_to_string(&full).unwrap_or_else(|e| panic!("{}: {e}", full.display()))
}

fn algebra(name: &str) -> LieAlgebraZ {
    LieAlgebraZ::from_json(&data(&format!("algebras/{name}.json"))).unwrap()
}

fn poset(name: &str) -> Poset {
    Poset::from_json(&data(&format!("posets/{name}.json"))).unwrap()
}

fn unit(r: usize, i: usize) -> Vec<BigInt> {
    (0..r).map(|k| BigInt::from((k == i) as i64)).collect()
}

#[test]
fn shipped_algebras_have_expected_ranks() {
    // (file, center rank, derived rank, class), worked out by hand from the brackets
    let expected = [
        ("heisenberg", 1, 1, 2),
        ("abelian2", 2, 0, 1),
        ("filiform4", 1, 2, 3),
        ("heisenberg5", 1, 1, 2),
    ];
    for (name, center, derived, class) in expected {
        let g = algebra(name);
        assert_eq!(g.validate().unwrap(), class, "{name}");
        let s = g.structural_data().unwrap();
        assert_eq!((s.center.rank(), s.derived.rank(), s.class), (center, derived, class), "{name}");
        assert!(s.center.is_saturated(), "{name}");
    }
    let posets = [("chain3", 1, 1, 2), ("chain4", 1, 3, 3), ("diamond", 1, 1, 2)];
    for (name, center, derived, class) in posets {
        let s = pattern_algebra(&poset(name)).structural_data().unwrap();
        assert_eq!((s.center.rank(), s.derived.rank(), s.class), (center, derived, class), "{name}");
    }
    let m23 = metabelian_algebra(2, 3).unwrap().structural_data().unwrap();
    assert_eq!((m23.center.rank(), m23.derived.rank(), m23.class), (2, 3, 3));
    // the center is spanned by the two basis vectors of length 3
    assert!(m23.center.contains(&unit(5, 3)) && m23.center.contains(&unit(5, 4)));
}

#[test]
fn broken_jacobi_names_a_triple() {
    let g = algebra("broken-jacobi");
    match g.validate() {
        // (1,2,3) satisfies Jacobi; (1,2,4) gives [e4, e3] = -e1
        Err(Error::Jacobi(a, b, c)) => assert_eq!((a, b, c), (1, 2, 4)),
        other => panic!("expected a Jacobi failure, got {other:?}"),
    }
}

#[test]
fn lower_central_series_strictly_decreases() {
    let algebras = vec![
        algebra("heisenberg"),
        algebra("filiform4"),
        algebra("heisenberg5"),
        pattern_algebra(&Poset::chain(5)),
        metabelian_algebra(2, 4).unwrap(),
        metabelian_algebra(3, 3).unwrap(),
    ];
    for g in algebras {
        let lcs = g.lower_central_series().unwrap();
        assert_eq!(lcs.len(), g.class().unwrap(), "{}", g.name());
        assert_eq!(lcs[0].rank(), g.rank());
        for w in lcs.windows(2) {
            assert!(w[0].contains_lattice(&w[1]) && w[1].rank() < w[0].rank(), "{}", g.name());
        }
    }
}

/// Longest chain `i ≺ k_1 ≺ ... ≺ j`, counted in steps.
fn longest_chain(p: &Poset) -> usize {
    let n = p.n();
    let mut best = vec![0usize; n];
    for j in 0..n {
        for i in 0..j {
            if p.less(i, j) {
                best[j] = best[j].max(best[i] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

#[test]
fn pattern_class_and_center() {
    let n_poset = Poset::from_relations(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
    let bipartite = Poset::from_relations(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
    let cases = [Poset::chain(3), Poset::chain(4), Poset::chain(5), n_poset, bipartite, poset("diamond")];
    for p in &cases {
        let g = pattern_algebra(p);
        let class = g.validate().unwrap();
        assert_eq!(class, longest_chain(p));
        // max α + 1 is the class when every interval is itself a chain; see the diamond below
        assert!(class <= p.max_alpha() + 1);
        let s = g.structural_data().unwrap();
        let pairs = p.pairs();
        let extreme = p.extreme_pairs();
        assert_eq!(s.center.rank(), extreme.len());
        for (i, j) in extreme {
            let idx = pairs.iter().position(|&x| x == (i, j)).unwrap();
            assert!(s.center.contains(&unit(g.rank(), idx)));
        }
    }
    for p in &cases[..5] {
        assert_eq!(pattern_algebra(p).validate().unwrap(), p.max_alpha() + 1);
    }
    // two incomparable elements between 1 and 4: α(1,4) = 2 but the class is 2
    let diamond = poset("diamond");
    assert_eq!(diamond.max_alpha(), 2);
    assert_eq!(pattern_algebra(&diamond).validate().unwrap(), 2);
}

#[test]
fn commutator_matrix_examples() {
    let h = algebra("heisenberg");
    let (cd, f) = build_commutator_data(&h).unwrap();
    assert_eq!((cd.l1, cd.l2, cd.m, cd.n), (1, 0, 1, 2));
    assert_eq!(f.to_string(), "[[0,T1],[-T1,0]]");
    let f5 = FiniteField::new(5, 1).unwrap();
    assert_eq!(f.evaluate(&f5, &[3]).unwrap(), vec![vec![0, 3], vec![2, 0]]);

    let m23 = metabelian_algebra(2, 3).unwrap();
    let (cd, f) = build_commutator_data(&m23).unwrap();
    assert_eq!((cd.l1, cd.l2, cd.m, cd.n), (2, 0, 3, 3));
    assert_eq!(cd.k, BigInt::from(1));
    // central variables come first: w = (v(1,1,2), v(2,1,2), v(1,2)) and v = (v1, v2, v(1,2))
    assert_eq!(cd.w, vec![unit(5, 3), unit(5, 4), unit(5, 2)]);
    assert_eq!(cd.v, vec![unit(5, 0), unit(5, 1), unit(5, 2)]);
    // v(1,2) = 1, v(1,1,2) = 0, v(2,1,2) = 2
    let m = f.evaluate(&f5, &[0, 2, 1]).unwrap();
    assert_eq!(m, vec![vec![0, 1, 0], vec![4, 0, 2], vec![0, 3, 0]]);
    assert_eq!(ff_rank(&f5, &m), 2);
    assert!(f.evaluate(&f5, &[0, 0, 0]).unwrap().iter().flatten().all(|&x| x == 0));
}

#[test]
fn commutator_matrix_rank_and_bilinearity() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let algebras = vec![
        algebra("heisenberg"),
        algebra("filiform4"),
        algebra("heisenberg5"),
        pattern_algebra(&Poset::chain(4)),
        pattern_algebra(&poset("diamond")),
        metabelian_algebra(2, 3).unwrap(),
        metabelian_algebra(3, 3).unwrap(),
    ];
    for field in [FiniteField::new(5, 1).unwrap(), FiniteField::new(7, 2).unwrap(), FiniteField::new(3, 3).unwrap()] {
        for g in &algebras {
            let (cd, f) = build_commutator_data(g).unwrap();
            for _ in 0..50 {
                let a: Vec<u32> = (0..cd.m).map(|_| rng.gen_range(0..field.q())).collect();
                let b: Vec<u32> = (0..cd.m).map(|_| rng.gen_range(0..field.q())).collect();
                let ma = f.evaluate(&field, &a).unwrap();
                let rank = ff_rank(&field, &ma);
                assert!(rank % 2 == 0 && rank <= cd.n, "{}: rank {rank}", g.name());
                let sum: Vec<u32> = a.iter().zip(&b).map(|(x, y)| field.add(*x, *y)).collect();
                let ms = f.evaluate(&field, &sum).unwrap();
                let mb = f.evaluate(&field, &b).unwrap();
                for i in 0..cd.n {
                    for j in 0..cd.n {
                        assert_eq!(ms[i][j], field.add(ma[i][j], mb[i][j]));
                    }
                }
            }
        }
    }
}

#[test]
fn shipped_examples_have_trivial_torsion() {
    for g in [algebra("heisenberg"), algebra("filiform4"), algebra("heisenberg5"), metabelian_algebra(2, 4).unwrap()] {
        assert_eq!(build_commutator_data(&g).unwrap().0.k, BigInt::from(1), "{}", g.name());
    }
}

#[test]
fn scalar_extension_reduces_coefficients() {
    let g = LieAlgebraZ::new("six", vec!["x".into(), "y".into(), "z".into()], [((0, 1), vec![(2, 6)])]).unwrap();
    let r = fdim_core::rings::ChainRing::new(5, 1, 1, 2).unwrap();
    let ext = g.scalar_extend(&r).unwrap();
    assert_eq!(ext.terms(0, 1), &[(2, r.from_int(6))]);
    assert!(algebra("heisenberg").scalar_extend(&FiniteField::new(2, 1).unwrap()).is_err());
}
