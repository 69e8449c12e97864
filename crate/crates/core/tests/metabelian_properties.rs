//! Checks the metabelian rewriting against the Magnus embedding, which sends `v_i` to
//! `a_i + e_i` in `A ⋉ M`: `A` abelian with basis `a_i`, `M` the free `Z[t_1..t_n]`-module on
//! `e_1..e_n`, and `a_i` acting on `M` as multiplication by `t_i`. The embedding is injective
//! on the free metabelian Lie ring, so equal images mean equal elements.

use std::collections::BTreeMap;

use fdim_core::commutator::build_commutator_data;
use fdim_core::exact::IntMatrix;
use fdim_core::metabelian::{hall_basis, hall_count, hall_sequences, metabelian_algebra, normal_form, rank1_witness};
use fdim_core::rings::{matrix_kernel_exponent, ChainRing, FiniteField, FiniteRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Module element: `(exponents of t, index of e) -> coefficient`.
type Image = BTreeMap<(Vec<u32>, usize), i64>;

fn add_into(out: &mut Image, key: (Vec<u32>, usize), c: i64) {
    let slot = out.entry(key.clone()).or_insert(0);
    *slot += c;
    if *slot == 0 {
        out.remove(&key);
    }
}

/// Image of the right-normed word `[v_{w1}, [..., [v_{w(K-1)}, v_{wK}]]]`, `K ≥ 2`, 1-based.
fn word_image(n: usize, w: &[usize]) -> Image {
    let k = w.len();
    let mut mono = vec![0u32; n];
    for &x in &w[..k - 2] {
        mono[x - 1] += 1;
    }
    let (x, y) = (w[k - 2] - 1, w[k - 1] - 1);
    let mut out = Image::new();
    let mut m1 = mono.clone();
    m1[x] += 1;
    add_into(&mut out, (m1, y), 1);
    let mut m2 = mono;
    m2[y] += 1;
    add_into(&mut out, (m2, x), -1);
    out
}

fn all_words(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|w: Vec<usize>| (1..=n).map(move |x| [w.clone(), vec![x]].concat())).collect();
    }
    out
}

#[test]
fn normal_form_matches_magnus_images() {
    for (n, c) in [(2, 3), (2, 4), (3, 3), (3, 4), (4, 3), (2, 5)] {
        for k in 2..=c {
            for w in all_words(n, k) {
                let mut rhs = Image::new();
                for (s, coeff) in normal_form(&w) {
                    for (key, v) in word_image(n, &s) {
                        add_into(&mut rhs, key, v * coeff);
                    }
                }
                assert_eq!(word_image(n, &w), rhs, "word {w:?}");
            }
        }
    }
}

#[test]
fn hall_images_are_independent() {
    for (n, k) in [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 3)] {
        let seqs = hall_sequences(n, k);
        let images: Vec<Image> = seqs.iter().map(|s| word_image(n, s)).collect();
        let keys: Vec<(Vec<u32>, usize)> = {
            let mut all: Vec<_> = images.iter().flat_map(|im| im.keys().cloned()).collect();
            all.sort();
            all.dedup();
            all
        };
        let rows: Vec<Vec<i64>> = images.iter().map(|im| keys.iter().map(|key| *im.get(key).unwrap_or(&0)).collect()).collect();
        let m = IntMatrix::from_i64_rows(keys.len(), &rows).unwrap();
        assert_eq!(m.rank(), hall_count(n, k), "(n, k) = ({n}, {k})");
    }
}

/// Image of a basis vector: the `A`-part (generator index, if of length 1) and the `M`-part.
fn basis_image(n: usize, s: &[usize]) -> (Option<usize>, Image) {
    if s.len() == 1 {
        let mut m = Image::new();
        m.insert((vec![0; n], s[0] - 1), 1);
        (Some(s[0] - 1), m)
    } else {
        (None, word_image(n, s))
    }
}

fn shift(m: &Image, var: usize, c: i64) -> Image {
    let mut out = Image::new();
    for ((mono, e), v) in m {
        let mut mono = mono.clone();
        mono[var] += 1;
        add_into(&mut out, (mono, *e), v * c);
    }
    out
}

#[test]
fn metabelian_brackets_match_magnus_images() {
    for (n, c) in [(2, 3), (2, 4), (3, 3)] {
        let g = metabelian_algebra(n, c).unwrap();
        assert_eq!(g.validate().unwrap(), c);
        let basis = hall_basis(n, c);
        assert_eq!(basis.len(), (1..=c).map(|k| hall_count(n, k)).sum::<usize>());
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let (ai, mi) = basis_image(n, &basis[i]);
                let (aj, mj) = basis_image(n, &basis[j]);
                // [x, y] = a(x)·m(y) - a(y)·m(x), truncated above length c
                let mut expected = Image::new();
                if let Some(a) = ai {
                    for (key, v) in shift(&mj, a, 1) {
                        add_into(&mut expected, key, v);
                    }
                }
                if let Some(a) = aj {
                    for (key, v) in shift(&mi, a, -1) {
                        add_into(&mut expected, key, v);
                    }
                }
                expected.retain(|(mono, _), _| mono.iter().sum::<u32>() < c as u32);
                let mut got = Image::new();
                for (k, &coeff) in g.bracket_basis(i, j).iter().enumerate() {
                    if coeff != 0 {
                        let (a, m) = basis_image(n, &basis[k]);
                        assert!(a.is_none(), "bracket has a generator component");
                        for (key, v) in m {
                            add_into(&mut got, key, v * coeff);
                        }
                    }
                }
                assert_eq!(got, expected, "m_{n}_{c}: [{:?}, {:?}]", basis[i], basis[j]);
            }
        }
    }
}

#[test]
fn rank_one_family_is_linearly_independent() {
    let field = FiniteField::new(101, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (n, c) in [(2, 3), (2, 4), (3, 3), (3, 4), (4, 3)] {
        let delta = hall_count(n, c);
        // a nonsingular evaluation matrix at random points proves independence; a singular
        // one can happen by chance, so allow a few attempts
        let independent = (0..5).any(|_| {
            let rows: Vec<Vec<u32>> = (0..delta)
                .map(|_| {
                    let alphas: Vec<u32> = (0..n).map(|_| rng.gen_range(0..101)).collect();
                    let lambdas: Vec<u32> = (0..n).map(|_| rng.gen_range(0..101)).collect();
                    rank1_witness(&field, n, c, &alphas, &lambdas).unwrap()
                })
                .collect();
            field.rank(&rows) == delta
        });
        assert!(independent, "(n, c) = ({n}, {c})");
    }
}

/// `#ker F(a) ≤ p^{fd(n-2) + 2f·lev}` with `lev` the least level of a top-degree coordinate.
fn check_kernel_bound<R: FiniteRing>(ring: &R, n_gen: usize, c: usize, points: impl Iterator<Item = Vec<R::Elem>>) -> usize {
    let g = metabelian_algebra(n_gen, c).unwrap();
    let (cd, f) = build_commutator_data(&g).unwrap();
    assert_eq!(cd.l1, hall_count(n_gen, c));
    let (fd, f_res) = (ring.residue_degree() as u64 * ring.length() as u64, ring.residue_degree() as u64);
    let mut checked = 0;
    for a in points {
        let lev = a[..cd.l1].iter().map(|x| ring.level(x)).min().unwrap() as u64;
        let k = matrix_kernel_exponent(ring, &f.evaluate(ring, &a).unwrap());
        let bound = fd * (cd.n as u64 - 2) + 2 * f_res * lev;
        assert!(k <= bound, "m_{n_gen}_{c}: point {a:?} has kernel exponent {k} > {bound}");
        checked += 1;
    }
    checked
}

#[test]
fn kernel_bound_at_every_point() {
    for (p, f, e, d) in [(5u64, 1u32, 1u32, 1u32), (5, 1, 1, 2), (5, 1, 2, 2), (7, 1, 1, 1), (3, 2, 1, 1)] {
        let r = ChainRing::new(p, f, e, d).unwrap();
        let s = r.size();
        // m_{2,3} has three variables, so every point is checked
        let pts = (0..s.pow(3)).map(|idx| (0..3).map(|j| r.element(idx / s.pow(j) % s)).collect());
        assert_eq!(check_kernel_bound(&r, 2, 3, pts), s.pow(3) as usize);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for (n, c) in [(3, 3), (2, 4)] {
        for (p, d) in [(5u64, 1u32), (5, 2)] {
            let r = ChainRing::new(p, 1, 1, d).unwrap();
            let g = metabelian_algebra(n, c).unwrap();
            let m = build_commutator_data(&g).unwrap().0.m;
            let pts: Vec<Vec<_>> = (0..400).map(|_| (0..m).map(|_| r.element(rng.gen_range(0..r.size()))).collect()).collect();
            check_kernel_bound(&r, n, c, pts.into_iter());
        }
    }
}
