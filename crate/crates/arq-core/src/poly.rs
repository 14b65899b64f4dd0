//! Dense univariate polynomials over an exact field, low degree first.
//!
//! Supports the factorization-adjacent plumbing needed by endomorphism
//! analysis: gcd, squarefree (Yun) decomposition including the inseparable
//! characteristic-p case, root extraction, and pairwise-coprime splitting.

use crate::error::Result;
use crate::field::{Field, FieldKind, Scalar};
use num::BigInt;
use num::Signed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub field: Field,
    /// Coefficients, low degree first, no trailing zeros. Empty = zero.
    pub coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().map_or(false, |c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, vec![])
    }

    pub fn one(field: &Field) -> Poly {
        let one = field.one();
        Poly::new(field, vec![one])
    }

    /// The monomial t.
    pub fn t(field: &Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    /// t - c
    pub fn linear(field: &Field, c: &Scalar) -> Poly {
        Poly::new(field, vec![field.neg(c), field.one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.field.is_one(&self.lead())
    }

    pub fn make_monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lead()).expect("nonzero lead");
        self.scale(&inv)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|x| self.field.mul(x, c)).collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
            out.push(f.add(&a, &b));
        }
        Poly::new(f, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return (Poly::zero(f), self.clone());
        }
        let mut quot = vec![f.zero(); self.degree() - dd + 1];
        let lead_inv = f.inv(&divisor.lead()).expect("nonzero lead");
        for top in (dd..rem.len()).rev() {
            let c = f.mul(&rem[top], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            quot[top - dd] = c.clone();
            for (i, dcoef) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = f.sub(&rem[idx], &f.mul(&c, dcoef));
            }
        }
        (Poly::new(f, quot), Poly::new(f, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).1
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Extended gcd: returns (g, u, v) with u*self + v*other = g (monic).
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead_inv = f.inv(&r0.lead()).unwrap();
        (
            r0.scale(&lead_inv),
            s0.scale(&lead_inv),
            t0.scale(&lead_inv),
        )
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        if self.coeffs.len() <= 1 {
            return Poly::zero(f);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(f.mul(c, &f.from_i64(i as i64)));
        }
        Poly::new(f, out)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Distinct roots of the polynomial within the field. Finite fields are
    /// searched exhaustively; over the rationals the candidates come from the
    /// rational root theorem.
    pub fn roots(&self) -> Vec<Scalar> {
        let f = &self.field;
        if self.is_zero() {
            return vec![];
        }
        let mut out = Vec::new();
        match f.kind() {
            FieldKind::Rational => {
                // Clear denominators and scan divisors of constant/lead.
                let mut lcm = BigInt::from(1);
                for c in &self.coeffs {
                    if let Scalar::Rat(r) = c {
                        lcm = num::integer::lcm(lcm.clone(), r.denom().clone());
                    }
                }
                let ints: Vec<BigInt> = self
                    .coeffs
                    .iter()
                    .map(|c| match c {
                        Scalar::Rat(r) => r.numer() * (&lcm / r.denom()),
                        _ => unreachable!(),
                    })
                    .collect();
                let lead = ints.last().unwrap().clone();
                // strip t^v factor first
                let val = ints
                    .iter()
                    .position(|c| !num::Zero::is_zero(c))
                    .unwrap_or(0);
                if val > 0 {
                    out.push(f.zero());
                }
                let low = ints[val].clone();
                for pn in divisors(&low.abs()) {
                    for pd in divisors(&lead.abs()) {
                        for sign in [1i64, -1] {
                            let cand = Scalar::Rat(num::rational::BigRational::new(
                                &pn * BigInt::from(sign),
                                pd.clone(),
                            ));
                            if f.is_zero(&self.eval(&cand)) && !out.contains(&cand) {
                                out.push(cand);
                            }
                        }
                    }
                }
            }
            _ => {
                for cand in f.enumerate().unwrap() {
                    if f.is_zero(&self.eval(&cand)) {
                        out.push(cand);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Squarefree part: the product of the distinct irreducible factors.
    /// Handles the inseparable case f = g(t^p) in characteristic p by taking
    /// p-th roots of coefficients (Frobenius is bijective on finite fields).
    pub fn squarefree_part(&self) -> Poly {
        let f = &self.field;
        if self.degree() == 0 {
            return Poly::one(f);
        }
        let d = self.derivative();
        if d.is_zero() {
            let p = f.characteristic() as usize;
            debug_assert!(p > 0, "zero derivative in characteristic 0");
            // self = g(t^p); extract g with p-th-rooted coefficients
            let q = f.order().unwrap();
            let mut g_coeffs = Vec::new();
            for (i, c) in self.coeffs.iter().enumerate() {
                if i % p == 0 {
                    // c^(q/p) is the p-th root in F_q
                    g_coeffs.push(f.pow(c, q / p as u128));
                } else {
                    debug_assert!(f.is_zero(c));
                }
            }
            return Poly::new(f, g_coeffs).squarefree_part();
        }
        let g = self.gcd(&d);
        let (sf, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        let sf = sf.make_monic();
        // In characteristic p the quotient may still repeat inseparable
        // factors; iterate until stable.
        if sf.degree() > 0 && !sf.gcd(&sf.derivative()).degree().eq(&0) {
            return sf.squarefree_part();
        }
        sf
    }

    /// Split the polynomial into >= 2 pairwise coprime nontrivial factors if
    /// possible: first by grouping distinct squarefree-part factors, falling
    /// back to peeling roots found in the field. Returns None if no coprime
    /// split is found (e.g. a power of a single irreducible).
    pub fn coprime_split(&self) -> Option<(Poly, Poly)> {
        let f = &self.field;
        let m = self.make_monic();
        if m.degree() < 2 {
            return None;
        }
        let sf = m.squarefree_part();
        // Peel a root if one exists in the field.
        for root in sf.roots() {
            let lin = Poly::linear(f, &root);
            // u = largest power of (t - root) dividing m
            let mut u = Poly::one(f);
            let mut rest = m.clone();
            while lin.divides(&rest) {
                rest = rest.divrem(&lin).0;
                u = u.mul(&lin);
            }
            if !rest.degree().eq(&0) {
                return Some((u, rest.make_monic()));
            }
        }
        // No root in field: try splitting along gcds with the squarefree part
        // of a proper divisor chain: gcd(m, sf-power decomposition).
        if sf.degree() >= 2 && sf.degree() < m.degree() {
            // m = sf-repeated: try g = gcd(m, sf') refinements via m / sf^j
            let mut rest = m.clone();
            let mut power = Poly::one(f);
            while sf.divides(&rest) {
                rest = rest.divrem(&sf).0;
                power = power.mul(&sf);
            }
            if rest.degree() > 0 && power.gcd(&rest).degree() == 0 {
                return Some((power, rest.make_monic()));
            }
        }
        None
    }

    pub fn format(&self, var: &str) -> String {
        let f = &self.field;
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.format(c);
            let part = match e {
                0 => cs,
                1 if f.is_one(c) => var.to_string(),
                1 => format!("{}*{}", cs, var),
                _ if f.is_one(c) => format!("{}^{}", var, e),
                _ => format!("{}*{}^{}", cs, var, e),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    use num::Zero;
    if n.is_zero() {
        return vec![BigInt::from(1)];
    }
    let mut out = Vec::new();
    let mut d = BigInt::from(1);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Pairwise-coprime refinement used for primary (Fitting) decompositions:
/// repeatedly applies [`Poly::coprime_split`] until no factor splits further.
pub fn coprime_factors(poly: &Poly) -> Vec<Poly> {
    let mut stack = vec![poly.make_monic()];
    let mut done = Vec::new();
    while let Some(p) = stack.pop() {
        match p.coprime_split() {
            Some((a, b)) => {
                stack.push(a);
                stack.push(b);
            }
            None => done.push(p),
        }
    }
    done.sort_by_key(|p| (p.degree(), format!("{:?}", p.coeffs)));
    done
}

/// Solve u*a + v*b = 1 for coprime a, b.
pub fn bezout_one(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    let (g, u, v) = a.xgcd(b);
    if g.degree() != 0 || g.is_zero() {
        return Err(crate::error::ArqError::InvalidInput(
            "polynomials are not coprime".into(),
        ));
    }
    Ok((u, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rational()
    }

    fn poly_i(field: &Field, cs: &[i64]) -> Poly {
        Poly::new(field, cs.iter().map(|&c| field.from_i64(c)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        let f = q();
        // (t-1)(t-2) = t^2 - 3t + 2
        let p = poly_i(&f, &[2, -3, 1]);
        let l = poly_i(&f, &[-1, 1]);
        let (quot, rem) = p.divrem(&l);
        assert!(rem.is_zero());
        assert_eq!(quot, poly_i(&f, &[-2, 1]));
        assert_eq!(p.gcd(&l), l);
    }

    #[test]
    fn roots_rational() {
        let f = q();
        // 2t^2 - t - 1 = (2t+1)(t-1)
        let p = poly_i(&f, &[-1, -1, 2]);
        let roots = p.roots();
        assert!(roots.contains(&f.parse("-1/2").unwrap()));
        assert!(roots.contains(&f.one()));
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn squarefree_char_p_inseparable() {
        let f2 = Field::prime(2).unwrap();
        // (t^2 + t)^2 = t^4 + t^2 over F2, derivative zero
        let p = poly_i(&f2, &[0, 0, 1, 0, 1]);
        let sf = p.squarefree_part();
        assert_eq!(sf, poly_i(&f2, &[0, 1, 1])); // t^2 + t = t(t+1)
    }

    #[test]
    fn coprime_split_powers() {
        let f = q();
        // t^2 (t-1)^3
        let p = poly_i(&f, &[0, 0, 1]).mul(&poly_i(&f, &[-1, 1]).mul(&poly_i(&f, &[-1, 1])).mul(&poly_i(&f, &[-1, 1])));
        let parts = coprime_factors(&p);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].degree() + parts[1].degree(), 5);
        let (u, v) = bezout_one(&parts[0], &parts[1]).unwrap();
        let one = u.mul(&parts[0]).add(&v.mul(&parts[1]));
        assert_eq!(one, Poly::one(&f));
    }

    #[test]
    fn no_split_for_irreducible_power() {
        let f5 = Field::prime(5).unwrap();
        // (t^2+2)^2, t^2+2 irreducible over F5
        let base = poly_i(&f5, &[2, 0, 1]);
        let p = base.mul(&base);
        assert!(p.coprime_split().is_none());
        assert_eq!(p.squarefree_part(), base);
    }
}
