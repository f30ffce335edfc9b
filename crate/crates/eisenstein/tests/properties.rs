//! Algebraic invariants checked on random inputs.

use eisenstein::arith::primes::{gcd, primes_in};
use eisenstein::arith::{roots_in_fq2, ExtLog, Field, FieldCtx, Fq2Elem, LogMap, PolyRing, Zmod};
use eisenstein::modsym::{z_profile, ManinSpace, Submodule};
use proptest::prelude::*;

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(primes_in(11, 400))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_is_graded_antisymmetric(
        n in small_prime(),
        f in prop::collection::vec(0u64..1000, 2..7),
        g in prop::collection::vec(0u64..1000, 2..7),
    ) {
        let ctx = FieldCtx::new(n).unwrap();
        let ring = PolyRing::new(ctx.fp);
        let f = ring.from_u64s(&f);
        let g = ring.from_u64s(&g);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
        let rfg = ring.resultant(&f, &g).unwrap();
        let rgf = ring.resultant(&g, &f).unwrap();
        let expected = if df * dg % 2 == 0 { rgf } else { ctx.fp.neg(rgf) };
        prop_assert_eq!(rfg, expected);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(
        n in small_prime(),
        f in prop::collection::vec(0u64..1000, 2..6),
        g in prop::collection::vec(0u64..1000, 2..6),
    ) {
        let ctx = FieldCtx::new(n).unwrap();
        let ring = PolyRing::new(ctx.fp);
        let f = ring.from_u64s(&f);
        let g = ring.from_u64s(&g);
        prop_assume!(f.degree().unwrap_or(0) > 0 && g.degree().unwrap_or(0) > 0);
        let common = ring.gcd(&f, &g).degree().unwrap() > 0;
        prop_assert_eq!(ring.resultant(&f, &g).unwrap() == 0, common);
    }

    #[test]
    fn log_is_a_homomorphism(n in small_prime(), x in 1u64..1_000_000, y in 1u64..1_000_000) {
        let ctx = FieldCtx::new(n).unwrap();
        let (x, y) = (x % n, y % n);
        prop_assume!(x != 0 && y != 0);
        for p in [5u64, 7, 11] {
            let Ok(lm) = LogMap::with_modulus(&ctx, p, 1) else { continue };
            let z = lm.ring();
            prop_assert_eq!(lm.log(x * y % n), z.add(lm.log(x), lm.log(y)));
        }
    }

    #[test]
    fn extended_log_restricts_and_multiplies(n in small_prime(), a in 0u64..1000, b in 1u64..1000, c in 1u64..1000) {
        let ctx = FieldCtx::new(n).unwrap();
        let Some(&p) = [5u64, 7, 11, 13].iter().find(|&&p| (n - 1) % p == 0) else { return Ok(()) };
        let lm = LogMap::with_modulus(&ctx, p, 1).unwrap();
        let ext = ExtLog::new(&ctx, lm.clone()).unwrap();
        let z = ext.ring();
        let u = Fq2Elem::new(a % n, b % n);
        prop_assume!(u != ctx.fq2.zero());
        let c = c % n;
        prop_assume!(c != 0);
        let w = ctx.fq2.mul(u, ctx.fq2.embed(c));
        prop_assert_eq!(ext.log(w), z.add(ext.log(u), lm.log(c)));
        prop_assert_eq!(ext.log(ctx.fq2.embed(c)), lm.log(c));
    }

    #[test]
    fn frobenius_is_an_involutive_automorphism(n in small_prime(), a in 0u64..1000, b in 0u64..1000, c in 0u64..1000, d in 0u64..1000) {
        let ctx = FieldCtx::new(n).unwrap();
        let k = &ctx.fq2;
        let x = Fq2Elem::new(a % n, b % n);
        let y = Fq2Elem::new(c % n, d % n);
        prop_assert_eq!(k.frobenius(k.frobenius(x)), x);
        prop_assert_eq!(k.frobenius(k.mul(x, y)), k.mul(k.frobenius(x), k.frobenius(y)));
        prop_assert_eq!(k.frobenius(x), k.pow(x, n as u128));
        prop_assert_eq!(k.norm(k.mul(x, y)), ctx.fp.mul(k.norm(x), k.norm(y)));
    }

    #[test]
    fn found_roots_vanish_and_split_products_are_recovered(
        n in small_prime(),
        roots in prop::collection::btree_set(0u64..400, 1..5),
        extra in prop::collection::vec(0u64..1000, 3),
    ) {
        let ctx = FieldCtx::new(n).unwrap();
        let ring = PolyRing::new(ctx.fp);
        let roots: std::collections::BTreeSet<u64> = roots.into_iter().map(|r| r % n).collect();
        let mut f = ring.one();
        for &r in &roots {
            f = ring.mul(&f, &ring.from_u64s(&[ctx.fp.neg(r), 1]));
        }
        // An extra quadratic factor whose roots, if any, lie in F_{N^2}.
        let q = ring.from_u64s(&[extra[0] % n, extra[1] % n, 1]);
        let f = ring.mul(&f, &q);
        let found = roots_in_fq2(&ctx, &f);
        let qring = PolyRing::new(ctx.fq2);
        let fq = ring.map(&f, &qring, |c| ctx.fq2.embed(c));
        for &x in &found {
            prop_assert_eq!(qring.eval(&fq, x), ctx.fq2.zero());
        }
        for &r in &roots {
            prop_assert!(found.contains(&ctx.fq2.embed(r)));
        }
        // f splits over F_{N^2}, and roots are counted with multiplicity.
        prop_assert_eq!(found.len(), roots.len() + 2);
    }

    #[test]
    fn submodule_contains_its_combinations(
        r in 1u32..4,
        gens in prop::collection::vec(prop::collection::vec(0u64..625, 6), 1..5),
        coeffs in prop::collection::vec(0u64..625, 5),
    ) {
        let z = Zmod::new(5, r);
        let gens: Vec<Vec<u64>> = gens.into_iter().map(|g| g.into_iter().map(|x| z.reduce(x)).collect()).collect();
        let sub = Submodule::span(z, 6, gens.clone());
        let mut v = vec![0u64; 6];
        for (g, &c) in gens.iter().zip(&coeffs) {
            for (vi, &gi) in v.iter_mut().zip(g) {
                *vi = z.add(*vi, z.mul(z.reduce(c), gi));
            }
        }
        prop_assert!(sub.contains(&v));
        prop_assert!(sub.length() <= 6 * r);
    }

    #[test]
    fn z_profile_recovers_n(mut n_r in prop::collection::vec(0u32..8, 1..5)) {
        n_r.sort_unstable_by(|a, b| b.cmp(a));
        let z = z_profile(&n_r);
        for (r, &n) in n_r.iter().enumerate() {
            let r = r as u32 + 1;
            prop_assert_eq!(z.iter().filter(|&&zi| zi >= r).count() as u32, n);
        }
    }
}

/// Coprime `(a, b)` with `2 <= a, b < 8`; every level used exceeds both.
fn coprime_pair() -> impl Strategy<Value = (u64, u64)> {
    let pairs: Vec<(u64, u64)> = (2..8).flat_map(|a| (2..8).map(move |b| (a, b))).filter(|&(a, b)| gcd(a, b) == 1).collect();
    prop::sample::select(pairs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn hecke_operators_are_multiplicative(n in prop::sample::select(primes_in(11, 200)), (a, b) in coprime_pair()) {
        let ms = ManinSpace::new(n, Zmod::new(1_000_003, 1), true).unwrap();
        let z = ms.ring();
        let lhs = ms.hecke(a).unwrap().mul(&z, &ms.hecke(b).unwrap());
        let rhs = ms.hecke(a * b).unwrap();
        for i in 0..ms.dim() {
            prop_assert_eq!(lhs.row(i), rhs.row(i));
        }
    }
}
