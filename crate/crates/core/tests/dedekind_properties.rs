use fdim_core::dedekind::{factor_degrees, frobenius_sample, primes_up_to, sp_generators, MonicIntPoly};
use fdim_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Polynomials mod p, lowest coefficient first, always trimmed.
type P = Vec<u64>;

fn trim(mut a: P) -> P {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv(a: u64, p: u64) -> u64 {
    (1..p).find(|&x| a * x % p == 1).unwrap()
}

/// Quotient if `b` divides `a`.
fn divide(a: &P, b: &P, p: u64) -> Option<P> {
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return None;
    }
    let lead = inv(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * lead % p;
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p * p - c * bj % p) % p;
        }
    }
    trim(r).is_empty().then_some(q)
}

/// Monic polynomials of the given degree over F_p.
fn monic(deg: usize, p: u64) -> Vec<P> {
    (0..p.pow(deg as u32))
        .map(|mut idx| {
            let mut c: P = (0..deg)
                .map(|_| {
                    let d = idx % p;
                    idx /= p;
                    d
                })
                .collect();
            c.push(1);
            c
        })
        .collect()
}

/// Factor degrees by trial division with the irreducibles of degree ≤ 2, enough for deg ≤ 4.
fn degrees_by_trial_division(h: &[i64], p: u64) -> Vec<usize> {
    let mut a: P = trim(h.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect());
    let linear = monic(1, p);
    let quadratic: Vec<P> =
        monic(2, p).into_iter().filter(|q| linear.iter().all(|l| divide(q, l, p).is_none())).collect();
    let mut out = Vec::new();
    for f in linear.iter().chain(&quadratic) {
        while let Some(q) = divide(&a, f, p) {
            out.push(f.len() - 1);
            a = q;
        }
    }
    if a.len() > 1 {
        out.push(a.len() - 1);
    }
    out.sort_unstable();
    out
}

#[test]
fn degrees_match_trial_division() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..300 {
        let deg = rng.gen_range(1..=4usize);
        let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.gen_range(-6..=6)).collect();
        coeffs.push(1);
        let h = MonicIntPoly::new(coeffs.clone()).unwrap();
        for p in primes_up_to(13) {
            let report = factor_degrees(&h, p).unwrap();
            assert_eq!(report.degrees, degrees_by_trial_division(&coeffs, p), "{h} mod {p}");
            assert_eq!(report.degrees.iter().sum::<usize>(), h.degree());
        }
    }
}

#[test]
fn degrees_sum_to_degree() {
    let battery = ["-2,0,0,1", "1,0,1", "1,1,1,1,1", "-1,1,0,0,0,1", "3,-4,0,7,0,0,1", "0,0,1"];
    for text in battery {
        let h = MonicIntPoly::parse(text).unwrap();
        for p in primes_up_to(500) {
            let r = factor_degrees(&h, p).unwrap();
            assert_eq!(r.degrees.iter().sum::<usize>(), h.degree(), "{h} mod {p}");
            if r.ramified {
                assert!(matches!(sp_generators(&h, p), Err(Error::Ramified { .. })));
            }
        }
    }
}

#[test]
fn gaussian_integers_split_half_the_time() {
    let h = MonicIntPoly::parse("1,0,1").unwrap();
    let sample = frobenius_sample(&h, 10_000).unwrap();
    for row in &sample.rows {
        if row.p == 2 {
            assert!(row.ramified);
        } else {
            let expect = if row.p % 4 == 1 { vec![1, 1] } else { vec![2] };
            assert_eq!(row.degrees, expect, "p = {}", row.p);
        }
    }
    let split = sample.frequencies.iter().find(|(d, _, _)| *d == vec![1, 1]).unwrap().2;
    assert!((split - 0.5).abs() < 0.02, "split frequency {split}");
}

#[test]
fn sp_generators_examples() {
    let h = MonicIntPoly::parse("-2,0,0,1").unwrap();
    // mod 5, x^3 - 2 has the root 3 and an irreducible quadratic cofactor
    assert_eq!(sp_generators(&h, 5).unwrap(), vec![1]);
    // mod 7, 2 is not a cube, so x^3 - 2 is irreducible
    assert_eq!(sp_generators(&h, 7).unwrap(), vec![3]);
    let q = MonicIntPoly::parse("1,0,1").unwrap();
    assert_eq!(sp_generators(&q, 3).unwrap(), vec![2]);
    assert_eq!(sp_generators(&q, 5).unwrap(), vec![1]);
}
