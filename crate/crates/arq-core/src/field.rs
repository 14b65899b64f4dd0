//! Exact coefficient fields: prime fields F_p, extension fields F_{p^k}
//! given by an irreducible defining polynomial, and the rationals.
//!
//! Every scalar is stored in a canonical reduced form, so structural
//! equality coincides with field equality. All arithmetic is exact.

use crate::error::{ArqError, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

/// Maximum supported extension degree.
pub const MAX_EXTENSION_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldKind {
    /// F_p for a prime p.
    Prime { p: u64 },
    /// F_{p^k} = F_p[t]/(poly), poly monic irreducible of degree k.
    /// Coefficients are stored low degree first, length k+1, last entry 1.
    Extension { p: u64, k: usize, poly: Vec<u64> },
    /// The rational numbers.
    Rational,
}

/// A coefficient field, cheaply clonable.
#[derive(Clone)]
pub struct Field(Arc<FieldKind>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Prime { p } => write!(f, "F{}", p),
            FieldKind::Extension { p, k, .. } => write!(f, "F{}^{}", p, k),
            FieldKind::Rational => write!(f, "Q"),
        }
    }
}

/// An element of a [`Field`]. Interpretation depends on the field context;
/// values are always kept in canonical reduced form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Fp(u64),
    /// Coefficient vector of length k, low degree first, entries in [0, p).
    Ext(Vec<u64>),
    Rat(BigRational),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime und a != 0 mod p
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of non-unit");
    (((t % p as i128) + p as i128) % p as i128) as u64
}

/// Polynomial arithmetic over F_p on raw coefficient vectors (low degree
/// first). Used for extension field reduction and irreducibility checks.
mod fp_poly {
    use super::mod_inverse;

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + (x as u128 * y as u128 % p as u128) as u64) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of a modulo the monic polynomial m.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        debug_assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (i, &c) in m.iter().enumerate() {
                    let idx = i + shift;
                    let sub = (lead as u128 * c as u128 % p as u128) as u64;
                    r[idx] = (r[idx] + p - sub) % p;
                }
            }
            trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    /// Quotient and remainder for general (non-monic) divisor.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        assert!(!b.is_empty(), "division by zero polynomial");
        let db = b.len() - 1;
        let inv_lead = mod_inverse(*b.last().unwrap(), p);
        if r.len() <= db {
            return (vec![], r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db && !r.is_empty() {
            let lead = *r.last().unwrap();
            if lead == 0 {
                trim(&mut r);
                continue;
            }
            let shift = r.len() - 1 - db;
            let c = (lead as u128 * inv_lead as u128 % p as u128) as u64;
            q[shift] = c;
            for (i, &bc) in b.iter().enumerate() {
                let sub = (c as u128 * bc as u128 % p as u128) as u64;
                r[i + shift] = (r[i + shift] + p - sub) % p;
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        for &c in a.iter().rev() {
            acc = ((acc as u128 * x as u128 + c as u128) % p as u128) as u64;
        }
        acc
    }
}

impl Field {
    pub fn rational() -> Field {
        Field(Arc::new(FieldKind::Rational))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(ArqError::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldKind::Prime { p })))
    }

    /// F_{p^k} with a caller-supplied monic defining polynomial of degree k,
    /// coefficients low degree first. The polynomial is verified irreducible
    /// by exhaustive root/factor search.
    pub fn extension(p: u64, k: usize, poly: Vec<u64>) -> Result<Field> {
        if !is_prime(p) {
            return Err(ArqError::NotPrime(p));
        }
        if k < 1 || k > MAX_EXTENSION_DEGREE {
            return Err(ArqError::InvalidField(format!(
                "extension degree {} outside supported range 1..={}",
                k, MAX_EXTENSION_DEGREE
            )));
        }
        let mut poly: Vec<u64> = poly.iter().map(|c| c % p).collect();
        fp_poly::trim(&mut poly);
        if poly.len() != k + 1 {
            return Err(ArqError::InvalidField(format!(
                "defining polynomial has degree {}, expected {}",
                poly.len().saturating_sub(1),
                k
            )));
        }
        if *poly.last().unwrap() != 1 {
            return Err(ArqError::InvalidField(
                "defining polynomial must be monic".into(),
            ));
        }
        if !Self::fp_irreducible(&poly, p)? {
            return Err(ArqError::InvalidField(
                "defining polynomial is reducible".into(),
            ));
        }
        Ok(Field(Arc::new(FieldKind::Extension { p, k, poly })))
    }

    /// Irreducibility over F_p by exhaustive search: root search for degree
    /// <= 3, otherwise trial division by all monic polynomials of degree up
    /// to half the degree. Rejects inputs where the search space is too big.
    fn fp_irreducible(poly: &[u64], p: u64) -> Result<bool> {
        let deg = poly.len() - 1;
        if deg == 1 {
            return Ok(true);
        }
        for x in 0..p {
            if fp_poly::eval(poly, x, p) == 0 {
                return Ok(false);
            }
        }
        if deg <= 3 {
            return Ok(true);
        }
        let half = deg / 2;
        let space: u128 = (p as u128).pow(half as u32);
        if space > 4_000_000 {
            return Err(ArqError::InvalidField(format!(
                "irreducibility search space p^{} = {} too large",
                half, space
            )));
        }
        // monic divisors of degree 2..=half (degree-1 factors excluded above)
        for d in 2..=half {
            let count = (p as u128).pow(d as u32);
            for idx in 0..count {
                let mut cand = Vec::with_capacity(d + 1);
                let mut rest = idx;
                for _ in 0..d {
                    cand.push((rest % p as u128) as u64);
                    rest /= p as u128;
                }
                cand.push(1);
                let (_, r) = fp_poly::divrem(poly, &cand, p);
                if r.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => *p,
            FieldKind::Rational => 0,
        }
    }

    /// Number of elements for finite fields, None for the rationals.
    pub fn order(&self) -> Option<u128> {
        match &*self.0 {
            FieldKind::Prime { p } => Some(*p as u128),
            FieldKind::Extension { p, k, .. } => Some((*p as u128).pow(*k as u32)),
            FieldKind::Rational => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match &*self.0 {
            FieldKind::Prime { .. } => Scalar::Fp(0),
            FieldKind::Extension { k, .. } => Scalar::Ext(vec![0; *k]),
            FieldKind::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match &*self.0 {
            FieldKind::Prime { .. } => Scalar::Fp(1),
            FieldKind::Extension { k, .. } => {
                let mut v = vec![0; *k];
                v[0] = 1;
                Scalar::Ext(v)
            }
            FieldKind::Rational => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match &*self.0 {
            FieldKind::Prime { p } => Scalar::Fp((n.rem_euclid(*p as i64)) as u64),
            FieldKind::Extension { p, k, .. } => {
                let mut v = vec![0; *k];
                v[0] = (n.rem_euclid(*p as i64)) as u64;
                Scalar::Ext(v)
            }
            FieldKind::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 0,
            Scalar::Ext(v) => v.iter().all(|&c| c == 0),
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&*self.0, a, b) {
            (FieldKind::Prime { p }, Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            (FieldKind::Extension { p, .. }, Scalar::Ext(u), Scalar::Ext(v)) => {
                Scalar::Ext(u.iter().zip(v).map(|(x, y)| (x + y) % p).collect())
            }
            (FieldKind::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar does not belong to field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (&*self.0, a) {
            (FieldKind::Prime { p }, Scalar::Fp(x)) => Scalar::Fp((p - x % p) % p),
            (FieldKind::Extension { p, .. }, Scalar::Ext(u)) => {
                Scalar::Ext(u.iter().map(|x| (p - x % p) % p).collect())
            }
            (FieldKind::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar does not belong to field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&*self.0, a, b) {
            (FieldKind::Prime { p }, Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp((*x as u128 * *y as u128 % *p as u128) as u64)
            }
            (FieldKind::Extension { p, k, poly }, Scalar::Ext(u), Scalar::Ext(v)) => {
                let prod = fp_poly::mul(u, v, *p);
                let mut red = fp_poly::rem(&prod, poly, *p);
                red.resize(*k, 0);
                Scalar::Ext(red)
            }
            (FieldKind::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar does not belong to field"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(ArqError::InvalidInput("division by zero".into()));
        }
        Ok(match (&*self.0, a) {
            (FieldKind::Prime { p }, Scalar::Fp(x)) => Scalar::Fp(mod_inverse(*x, *p)),
            (FieldKind::Extension { .. }, _) => {
                // a^(q-2) via square and multiply
                let q = self.order().unwrap();
                self.pow(a, q - 2)
            }
            (FieldKind::Rational, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            _ => panic!("scalar does not belong to field"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u128) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn elem_order(&self, a: &Scalar) -> Result<u128> {
        let q = self
            .order()
            .ok_or_else(|| ArqError::InvalidInput("element order needs a finite field".into()))?;
        let mut x = a.clone();
        for n in 1..q {
            if self.is_one(&x) {
                return Ok(n);
            }
            x = self.mul(&x, a);
        }
        Err(ArqError::InvalidInput("zero has no multiplicative order".into()))
    }

    /// All field elements in the canonical enumeration order (finite fields only).
    pub fn enumerate(&self) -> Option<Vec<Scalar>> {
        let q = self.order()?;
        let mut out = Vec::with_capacity(q as usize);
        match &*self.0 {
            FieldKind::Prime { p } => {
                for x in 0..*p {
                    out.push(Scalar::Fp(x));
                }
            }
            FieldKind::Extension { p, k, .. } => {
                for idx in 0..q {
                    let mut v = Vec::with_capacity(*k);
                    let mut rest = idx;
                    for _ in 0..*k {
                        v.push((rest % *p as u128) as u64);
                        rest /= *p as u128;
                    }
                    out.push(Scalar::Ext(v));
                }
            }
            FieldKind::Rational => unreachable!(),
        }
        Some(out)
    }

    /// Least multiplicative generator in enumeration order.
    pub fn multiplicative_generator(&self) -> Result<Scalar> {
        let q = self
            .order()
            .ok_or_else(|| ArqError::InvalidInput("generator needs a finite field".into()))?;
        for cand in self.enumerate().unwrap() {
            if self.is_zero(&cand) {
                continue;
            }
            if self.elem_order(&cand)? == q - 1 {
                return Ok(cand);
            }
        }
        unreachable!("finite field has a generator")
    }

    /// A primitive m-th root of unity: the (q-1)/m-th power of the least
    /// generator for finite fields; +/-1 over the rationals.
    pub fn root_of_unity(&self, m: u64) -> Result<Scalar> {
        if m == 0 {
            return Err(ArqError::InvalidInput("root of unity order 0".into()));
        }
        match &*self.0 {
            FieldKind::Rational => match m {
                1 => Ok(self.one()),
                2 => Ok(self.from_i64(-1)),
                _ => Err(ArqError::InvalidAction(format!(
                    "the rationals contain no primitive {}-th root of unity",
                    m
                ))),
            },
            _ => {
                let q = self.order().unwrap();
                if (q - 1) % m as u128 != 0 {
                    return Err(ArqError::InvalidAction(format!(
                        "field of order {} has no {}-th roots of unity",
                        q, m
                    )));
                }
                let g = self.multiplicative_generator()?;
                Ok(self.pow(&g, (q - 1) / m as u128))
            }
        }
    }

    /// Parse a scalar from text. Prime fields accept integers, the rationals
    /// accept `a` and `a/b`, extension fields accept polynomials in `t` such
    /// as `t^2+2*t+1` (also `t2` style exponents are rejected).
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let s = text.trim();
        let err = |reason: &str| ArqError::ScalarParse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(err("empty"));
        }
        match &*self.0 {
            FieldKind::Prime { .. } => {
                let n: i64 = s.parse().map_err(|_| err("expected an integer"))?;
                Ok(self.from_i64(n))
            }
            FieldKind::Rational => {
                if let Some((a, b)) = s.split_once('/') {
                    let num: BigInt = a.trim().parse().map_err(|_| err("bad numerator"))?;
                    let den: BigInt = b.trim().parse().map_err(|_| err("bad denominator"))?;
                    if den.is_zero() {
                        return Err(err("zero denominator"));
                    }
                    Ok(Scalar::Rat(BigRational::new(num, den)))
                } else {
                    let n: BigInt = s.parse().map_err(|_| err("expected an integer"))?;
                    Ok(Scalar::Rat(BigRational::from_integer(n)))
                }
            }
            FieldKind::Extension { p, k, .. } => {
                // sum of terms c, t, c*t, t^e, c*t^e with signs
                let mut coeffs = vec![0i64; *k];
                let mut term = String::new();
                let mut terms: Vec<String> = Vec::new();
                for (i, ch) in s.chars().enumerate() {
                    if (ch == '+' || ch == '-') && i > 0 {
                        terms.push(term.clone());
                        term.clear();
                    }
                    term.push(ch);
                }
                terms.push(term);
                for t in &terms {
                    let t = t.trim();
                    if t.is_empty() {
                        return Err(err("empty term"));
                    }
                    let (sign, body) = match t.strip_prefix('-') {
                        Some(rest) => (-1i64, rest.trim()),
                        None => (1i64, t.strip_prefix('+').unwrap_or(t).trim()),
                    };
                    let (coef_str, var_part) = match body.find('t') {
                        Some(pos) => (&body[..pos], &body[pos..]),
                        None => (body, ""),
                    };
                    let coef_str = coef_str.trim().trim_end_matches('*').trim();
                    let coef: i64 = if coef_str.is_empty() {
                        1
                    } else {
                        coef_str.parse().map_err(|_| err("bad coefficient"))?
                    };
                    let exp: usize = if var_part.is_empty() {
                        0
                    } else if var_part == "t" {
                        1
                    } else if let Some(e) = var_part.strip_prefix("t^") {
                        e.trim().parse().map_err(|_| err("bad exponent"))?
                    } else {
                        return Err(err("bad term"));
                    };
                    if exp >= *k {
                        return Err(err(&format!("exponent {} >= degree {}", exp, k)));
                    }
                    coeffs[exp] += sign * coef;
                }
                let v: Vec<u64> = coeffs
                    .iter()
                    .map(|c| c.rem_euclid(*p as i64) as u64)
                    .collect();
                Ok(Scalar::Ext(v))
            }
        }
    }

    /// Render a scalar in the syntax accepted by [`Field::parse`].
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(x) => x.to_string(),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Ext(v) => {
                let mut parts: Vec<String> = Vec::new();
                for (e, &c) in v.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let part = match (e, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "t".to_string(),
                        (1, c) => format!("{}*t", c),
                        (e, 1) => format!("t^{}", e),
                        (e, c) => format!("{}*t^{}", c, e),
                    };
                    parts.push(part);
                }
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join("+")
                }
            }
        }
    }

    /// Signed integer preimage for prime-field scalars, used by displays that
    /// prefer -1 over p-1. Returns None for extension/rational scalars.
    pub fn as_small_int(&self, a: &Scalar) -> Option<i64> {
        match (a, &*self.0) {
            (Scalar::Fp(x), FieldKind::Prime { p }) => {
                if *x > p / 2 {
                    Some(*x as i64 - *p as i64)
                } else {
                    Some(*x as i64)
                }
            }
            (Scalar::Rat(r), _) if r.denom().is_one() && r.numer().abs() < BigInt::from(1i64 << 40) => {
                r.numer().to_string().parse().ok()
            }
            _ => None,
        }
    }
}

/// JSON-facing field description: `{"char": p}`, `{"char": p, "degree": k,
/// "poly": [c0,...,ck]}` or the string `"rational"`.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Finite {
        #[serde(rename = "char")]
        characteristic: u64,
        #[serde(skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        poly: Option<Vec<u64>>,
    },
}

impl FieldSpec {
    pub fn build(&self) -> Result<Field> {
        match self {
            FieldSpec::Named(s) if s == "rational" => Ok(Field::rational()),
            FieldSpec::Named(s) => Err(ArqError::InvalidField(format!("unknown field {:?}", s))),
            FieldSpec::Finite {
                characteristic,
                degree,
                poly,
            } => match (degree, poly) {
                (None, None) => Field::prime(*characteristic),
                (Some(k), Some(poly)) => Field::extension(*characteristic, *k, poly.clone()),
                _ => Err(ArqError::InvalidField(
                    "extension fields need both degree and poly".into(),
                )),
            },
        }
    }

    pub fn of(field: &Field) -> FieldSpec {
        match field.kind() {
            FieldKind::Prime { p } => FieldSpec::Finite {
                characteristic: *p,
                degree: None,
                poly: None,
            },
            FieldKind::Extension { p, k, poly } => FieldSpec::Finite {
                characteristic: *p,
                degree: Some(*k),
                poly: Some(poly.clone()),
            },
            FieldKind::Rational => FieldSpec::Named("rational".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f5 = Field::prime(5).unwrap();
        let a = f5.from_i64(3);
        let b = f5.from_i64(4);
        assert_eq!(f5.add(&a, &b), f5.from_i64(2));
        assert_eq!(f5.mul(&a, &b), f5.from_i64(2));
        assert_eq!(f5.inv(&a).unwrap(), f5.from_i64(2));
        assert_eq!(f5.sub(&f5.zero(), &a), f5.from_i64(2));
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(Field::prime(6).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn f4_arithmetic_and_cube_roots() {
        // F4 = F2[t]/(t^2+t+1)
        let f4 = Field::extension(2, 2, vec![1, 1, 1]).unwrap();
        let t = f4.parse("t").unwrap();
        let t1 = f4.parse("t+1").unwrap();
        assert_eq!(f4.mul(&t, &t), t1); // t^2 = t+1
        assert_eq!(f4.mul(&t, &t1), f4.one()); // t^3 = 1
        assert_eq!(f4.elem_order(&t).unwrap(), 3);
        let z = f4.root_of_unity(3).unwrap();
        assert_eq!(z, t); // least generator is t
        assert_eq!(f4.inv(&t).unwrap(), t1);
    }

    #[test]
    fn reducible_polynomial_rejected() {
        // t^2+1 = (t+1)^2 over F2
        assert!(Field::extension(2, 2, vec![1, 0, 1]).is_err());
        // t^2-2 irreducible over F5 (2 is not a QR mod 5)
        assert!(Field::extension(5, 2, vec![3, 0, 1]).is_ok());
    }

    #[test]
    fn degree_four_irreducibility_uses_factor_search() {
        // t^4+t+1 irreducible over F2; t^4+t^2+1 = (t^2+t+1)^2 has no roots
        // but factors, so the root test alone would be wrong.
        assert!(Field::extension(2, 4, vec![1, 1, 0, 0, 1]).is_ok());
        assert!(Field::extension(2, 4, vec![1, 0, 1, 0, 1]).is_err());
    }

    #[test]
    fn rational_arithmetic_exact() {
        let q = Field::rational();
        let a = q.parse("2/3").unwrap();
        let b = q.parse("-1/6").unwrap();
        assert_eq!(q.add(&a, &b), q.parse("1/2").unwrap());
        assert_eq!(q.format(&q.add(&a, &b)), "1/2");
        assert_eq!(q.inv(&a).unwrap(), q.parse("3/2").unwrap());
    }

    #[test]
    fn scalar_roundtrip_format_parse() {
        let f4 = Field::extension(2, 2, vec![1, 1, 1]).unwrap();
        for s in f4.enumerate().unwrap() {
            assert_eq!(f4.parse(&f4.format(&s)).unwrap(), s);
        }
    }
}
