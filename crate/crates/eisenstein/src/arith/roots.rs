//! Root finding in F_{N^2} and extraction of low-degree factors.
//!
//! Distinct-degree separation uses `gcd(f, X^q - X)` and `gcd(f, X^{q^2} - X)`
//! computed by modular exponentiation in `F[X]/(f)`; the pieces are then split
//! by the Cantor–Zassenhaus equal-degree step.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, FieldCtx, Fq2Elem};
use super::poly::{Poly, PolyRing};

/// Number of deterministic splitting parameters tried before falling back to
/// seeded random ones.
const DETERMINISTIC_TRIES: u64 = 16;

/// Irreducible factors of degree at most two of a polynomial over `F`.
#[derive(Clone, Debug)]
pub struct LowDegreeFactors<E> {
    /// Distinct roots in `F`, sorted.
    pub roots: Vec<E>,
    /// Distinct monic irreducible quadratic factors over `F`.
    pub quadratics: Vec<Poly<E>>,
}

/// Finds the distinct roots of `f` in `F` and its distinct irreducible
/// quadratic factors.  `f` must be non-zero.
pub fn low_degree_factors<F: Field>(ring: &PolyRing<F>, f: &Poly<F::Elem>) -> LowDegreeFactors<F::Elem> {
    let fld = &ring.field;
    assert!(!f.is_zero(), "root finding needs a non-zero polynomial");
    let f = ring.monic(f);
    if f.degree() == Some(0) {
        return LowDegreeFactors { roots: Vec::new(), quadratics: Vec::new() };
    }
    let q = fld.order();
    let x = ring.x();
    let xq = ring.powmod(&x, q, &f);
    let lin = ring.gcd(&f, &ring.sub(&xq, &x));
    let xq2 = ring.powmod(&xq, q, &f);
    let all = ring.gcd(&f, &ring.sub(&xq2, &x));
    let quad = ring.div_exact(&all, &lin);

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut lin_factors = Vec::new();
    equal_degree_split(ring, &lin, 1, (q - 1) / 2, &mut rng, &mut lin_factors);
    let mut roots: Vec<F::Elem> = lin_factors
        .iter()
        .map(|g| fld.neg(g.coeff(0, fld.zero())))
        .collect();
    roots.sort();

    let mut quadratics = Vec::new();
    equal_degree_split(ring, &quad, 2, (q * q - 1) / 2, &mut rng, &mut quadratics);
    quadratics.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    LowDegreeFactors { roots, quadratics }
}

/// Splits a monic product of distinct irreducibles of degree `d` into its
/// factors; `exp = (q^d - 1) / 2`.
fn equal_degree_split<F: Field>(
    ring: &PolyRing<F>,
    g: &Poly<F::Elem>,
    d: usize,
    exp: u128,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Poly<F::Elem>>,
) {
    let fld = &ring.field;
    let Some(deg) = g.degree() else { return };
    if deg == 0 {
        return;
    }
    if deg == d {
        out.push(ring.monic(g));
        return;
    }
    let mut i = 0u64;
    loop {
        let a = if i < DETERMINISTIC_TRIES {
            fld.nth_element(i)
        } else {
            fld.nth_element((rng.gen::<u128>() % fld.order()) as u64)
        };
        i += 1;
        // A linear factor X + a is detected directly, which also keeps the
        // character test well defined.
        if d == 1 && fld.is_zero(ring.eval(g, fld.neg(a))) {
            let lin = ring.from_coeffs(vec![a, fld.one()]);
            out.push(lin.clone());
            equal_degree_split(ring, &ring.div_exact(g, &lin), d, exp, rng, out);
            return;
        }
        let base = ring.from_coeffs(vec![a, fld.one()]);
        let h = ring.sub(&ring.powmod(&base, exp, g), &ring.one());
        let s = ring.gcd(g, &h);
        let ds = s.degree().unwrap_or(0);
        if ds > 0 && ds < deg {
            let rest = ring.div_exact(g, &s);
            equal_degree_split(ring, &s, d, exp, rng, out);
            equal_degree_split(ring, &rest, d, exp, rng, out);
            return;
        }
    }
}

/// Roots in F_{N^2} of a monic quadratic `X^2 + bX + c` over F_N.
fn quadratic_roots(ctx: &FieldCtx, b: u64, c: u64) -> [Fq2Elem; 2] {
    let fp = &ctx.fp;
    let fq = &ctx.fq2;
    let disc = fp.sub(fp.mul(b, b), fp.mul(4, c));
    let s = fq.sqrt(fq.embed(disc)).expect("elements of F_N are squares in F_{N^2}");
    let inv2 = fq.embed(fp.inv(2).unwrap());
    let mb = fq.embed(fp.neg(b));
    [fq.mul(fq.add(mb, s), inv2), fq.mul(fq.sub(mb, s), inv2)]
}

/// All roots of `f` in F_{N^2}, repeated according to multiplicity and sorted
/// lexicographically by `(a, b)`.
pub fn roots_in_fq2(ctx: &FieldCtx, f: &Poly<u64>) -> Vec<Fq2Elem> {
    let ring = PolyRing::new(ctx.fp);
    let fq = &ctx.fq2;
    let factors = low_degree_factors(&ring, f);
    let mut distinct: Vec<Fq2Elem> = factors.roots.iter().map(|&r| fq.embed(r)).collect();
    for qd in &factors.quadratics {
        distinct.extend(quadratic_roots(ctx, qd.coeff(1, 0), qd.coeff(0, 0)));
    }
    distinct.sort();

    let squarefree = ring.gcd(f, &ring.derivative(f)).degree() == Some(0);
    if squarefree {
        return distinct;
    }
    let ring2 = PolyRing::new(ctx.fq2);
    let f2 = ring.map(f, &ring2, |c| fq.embed(c));
    let mut out = Vec::new();
    for beta in distinct {
        let lin = ring2.linear(beta);
        let mut g = f2.clone();
        loop {
            let (q, r) = ring2.divrem(&g, &lin);
            if !r.is_zero() {
                break;
            }
            out.push(beta);
            g = q;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_polynomial_of_fq2() {
        let ctx = FieldCtx::new(5).unwrap();
        let ring = PolyRing::new(ctx.fp);
        let f = ring.from_u64s(&[5 - ctx.nonresidue, 0, 1]);
        assert_eq!(roots_in_fq2(&ctx, &f), vec![Fq2Elem::new(0, 1), Fq2Elem::new(0, 4)]);
    }

    #[test]
    fn repeated_root() {
        let ctx = FieldCtx::new(7).unwrap();
        let ring = PolyRing::new(ctx.fp);
        let f = ring.from_i64s(&[1, -2, 1]);
        assert_eq!(roots_in_fq2(&ctx, &f), vec![Fq2Elem::new(1, 0); 2]);
    }

    #[test]
    fn mixed_factorisation() {
        let ctx = FieldCtx::new(13).unwrap();
        let ring = PolyRing::new(ctx.fp);
        // (X - 3)^2 (X^2 - 2)(X^2 + 1)(X^3 - 7): the cubic contributes no root
        // in F_169 unless it splits, which we verify by brute force.
        let f = [
            ring.from_i64s(&[-3, 1]),
            ring.from_i64s(&[-3, 1]),
            ring.from_i64s(&[-2, 0, 1]),
            ring.from_i64s(&[1, 0, 1]),
            ring.from_i64s(&[-7, 0, 0, 1]),
        ]
        .iter()
        .fold(ring.one(), |acc, g| ring.mul(&acc, g));
        let got = roots_in_fq2(&ctx, &f);
        let fq = ctx.fq2;
        let ring2 = PolyRing::new(fq);
        let f2 = ring.map(&f, &ring2, |c| fq.embed(c));
        let mut brute = Vec::new();
        for a in 0..13 {
            for b in 0..13 {
                let z = Fq2Elem::new(a, b);
                let mut g = f2.clone();
                while ring2.eval(&g, z) == fq.zero() {
                    brute.push(z);
                    g = ring2.div_exact(&g, &ring2.linear(z));
                }
            }
        }
        assert_eq!(got, brute);
    }

    #[test]
    fn quadratic_factors_over_fq2() {
        let ctx = FieldCtx::new(11).unwrap();
        let fq = ctx.fq2;
        let ring = PolyRing::new(fq);
        // X^2 - g with g a generator of F_121^x is irreducible over F_121.
        let irr = ring.from_coeffs(vec![fq.neg(ctx.gen_fn2), fq.zero(), fq.one()]);
        let lin = ring.linear(Fq2Elem::new(3, 4));
        let f = ring.mul(&irr, &lin);
        let fac = low_degree_factors(&ring, &f);
        assert_eq!(fac.roots, vec![Fq2Elem::new(3, 4)]);
        assert_eq!(fac.quadratics, vec![irr]);
    }
}
