//! Exact arithmetic in GF(p^l).
//!
//! Elements are handled as their integer encoding `Σ c_i·p^i`, where `c_i` are
//! the coefficients of the polynomial representative in ascending degree.
//! [`Field`] is a cheap handle (an `Arc`) carrying the modulus together with
//! exp/log tables for multiplication; [`FieldElement`] pairs a value with its
//! field for checked, self-describing arithmetic.

mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

/// Splits `q` into `(p, l)` with `q = p^l`.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2u64;
    while q % p != 0 {
        p += 1;
    }
    let (mut rest, mut l) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        l += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, l))
}

struct Inner {
    p: u32,
    l: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    sqrt: OnceLock<Vec<Option<u32>>>,
}

/// A finite field GF(p^l) with an explicit monic irreducible modulus.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[{}]", self.q(), self)
    }
}

/// `p^l:c0,c1,...,cl` with the modulus coefficients in ascending degree.
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.inner.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "{}^{}:{}", self.inner.p, self.inner.l, coeffs.join(","))
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("field spec {s:?}"));
        let (pl, modulus) = match s.split_once(':') {
            Some((pl, m)) => (pl, Some(m)),
            None => (s, None),
        };
        let (p, l) = pl.trim().split_once('^').ok_or_else(bad)?;
        let p: u32 = p.trim().parse().map_err(|_| bad())?;
        let l: u32 = l.trim().parse().map_err(|_| bad())?;
        let modulus = match modulus {
            Some(m) if !m.trim().is_empty() => Some(
                m.split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?,
            ),
            _ => None,
        };
        Field::new(p, l, modulus.as_deref())
    }
}

/// Lexicographic comparison of coefficient sequences, constant term first.
fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

fn default_modulus(p: u32, l: u32) -> Vec<u32> {
    if l == 1 {
        return vec![0, 1];
    }
    // Counting with c0 as the most significant digit walks the lexicographic order.
    let count = (p as u64).pow(l);
    for idx in 0..count {
        let mut coeffs = vec![0u32; l as usize + 1];
        let mut rest = idx;
        for i in (0..l as usize).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[l as usize] = 1;
        if poly::is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// Builds GF(p^l). Without an explicit modulus the lexicographically least
    /// monic irreducible polynomial of degree `l` is used.
    pub fn new(p: u32, l: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if l == 0 {
            return Err(Error::InvalidModulus("exponent must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(l)
            .filter(|&q| q <= 1 << 24)
            .ok_or_else(|| Error::InvalidModulus(format!("{p}^{l} is too large")))?
            as u32;
        let modulus = match modulus {
            None => default_modulus(p, l),
            Some(m) => {
                if m.len() != l as usize + 1 || m[l as usize] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients of a monic polynomial",
                        l + 1
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus("coefficient not reduced".into()));
                }
                if !poly::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                m.to_vec()
            }
        };
        let (exp, log) = build_tables(p, l, q, &modulus);
        Ok(Field {
            inner: Arc::new(Inner {
                p,
                l,
                q,
                modulus,
                exp,
                log,
                sqrt: OnceLock::new(),
            }),
        })
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// GF(q) with the default modulus.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, l) = prime_power(q)?;
        Field::new(p, l, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.l
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.inner.q
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value >= self.inner.q {
            return Err(Error::ElementOutOfRange { value, q: self.inner.q });
        }
        Ok(FieldElement { field: self.clone(), value })
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.inner.p as i64) as u32
    }

    pub fn coeffs(&self, value: u32) -> Vec<u32> {
        let p = self.inner.p;
        let mut rest = value;
        (0..self.inner.l)
            .map(|_| {
                let c = rest % p;
                rest /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() > self.inner.l as usize || coeffs.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::Parse(format!("coefficients {coeffs:?} for {self}")));
        }
        Ok(coeffs.iter().rev().fold(0, |acc, &c| acc * self.inner.p + c))
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p;
        if p == 2 {
            return a ^ b;
        }
        if self.inner.l == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b, mut place, mut out) = (a, b, 1u32, 0u32);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.inner.p;
        if p == 2 {
            return a;
        }
        if self.inner.l == 1 {
            return (p - a) % p;
        }
        let (mut a, mut place, mut out) = (a, 1u32, 0u32);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.inner.q as usize - 1;
        let s = self.inner.log[a as usize] as usize + self.inner.log[b as usize] as usize;
        self.inner.exp[s % n]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.inner.q as usize - 1;
        Ok(self.inner.exp[(n - self.inner.log[a as usize] as usize) % n])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_square(&self, a: u32) -> bool {
        if self.inner.p == 2 || a == 0 {
            return true;
        }
        self.pow(a, (self.inner.q as u64 - 1) / 2) == 1
    }

    /// The square root with the lexicographically least coefficient vector.
    pub fn sqrt(&self, a: u32) -> Result<u32> {
        self.sqrt_table()[a as usize].ok_or(Error::NotASquare(a))
    }

    fn sqrt_table(&self) -> &[Option<u32>] {
        self.inner.sqrt.get_or_init(|| {
            let mut table: Vec<Option<u32>> = vec![None; self.inner.q as usize];
            for y in self.elements() {
                let s = self.mul(y, y) as usize;
                let better = match table[s] {
                    None => true,
                    Some(cur) => lex_cmp(&self.coeffs(y), &self.coeffs(cur)) == Ordering::Less,
                };
                if better {
                    table[s] = Some(y);
                }
            }
            table
        })
    }

    /// GF(q²) as GF(p^{2l}) with its default modulus, together with the
    /// embedding of `self` into it.
    pub fn extend_quadratic(&self) -> (Field, Embedding) {
        let big = Field::new(self.inner.p, 2 * self.inner.l, None)
            .expect("degree-2l extension of a valid field");
        let embedding = Embedding::new(self, &big).expect("GF(q) embeds in GF(q^2)");
        (big, embedding)
    }

    fn eval_in(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), self.from_int(c as i64)))
    }
}

fn build_tables(p: u32, l: u32, q: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let to_poly = |v: u32| -> Vec<u32> {
        let mut rest = v;
        (0..l)
            .map(|_| {
                let c = rest % p;
                rest /= p;
                c
            })
            .collect()
    };
    let from_poly = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &x| acc * p + x) };
    let n = q as usize - 1;
    for g in 1..q {
        let gp = to_poly(g);
        let mut exp = Vec::with_capacity(n);
        let mut x = 1u32;
        let mut cycled_early = false;
        for i in 0..n {
            if i > 0 && x == 1 {
                cycled_early = true;
                break;
            }
            exp.push(x);
            x = from_poly(&poly::mul_mod(&to_poly(x), &gp, modulus, p));
        }
        if cycled_early || x != 1 {
            continue;
        }
        let mut log = vec![u32::MAX; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        return (exp, log);
    }
    unreachable!("multiplicative group of a finite field is cyclic")
}

/// Injective homomorphism GF(q) → GF(q^m), determined by the image of the
/// class of `x` (the lexicographically least root of the small modulus).
#[derive(Clone, Debug)]
pub struct Embedding {
    from: Field,
    to: Field,
    powers: Vec<u32>,
}

impl Embedding {
    pub fn new(from: &Field, to: &Field) -> Result<Embedding> {
        if from.characteristic() != to.characteristic() || to.degree() % from.degree() != 0 {
            return Err(Error::SpecMismatch);
        }
        let modulus = from.modulus();
        let mut roots: Vec<u32> = to.elements().filter(|&x| to.eval_in(modulus, x) == 0).collect();
        roots.sort_by(|&a, &b| lex_cmp(&to.coeffs(a), &to.coeffs(b)));
        let theta = *roots.first().ok_or(Error::SpecMismatch)?;
        let mut powers = Vec::with_capacity(from.degree() as usize);
        let mut acc = 1u32;
        for _ in 0..from.degree() {
            powers.push(acc);
            acc = to.mul(acc, theta);
        }
        Ok(Embedding { from: from.clone(), to: to.clone(), powers })
    }

    pub fn source(&self) -> &Field {
        &self.from
    }

    pub fn target(&self) -> &Field {
        &self.to
    }

    pub fn apply(&self, value: u32) -> u32 {
        self.from
            .coeffs(value)
            .iter()
            .zip(&self.powers)
            .fold(0, |acc, (&c, &pw)| self.to.add(acc, self.to.mul(self.to.from_int(c as i64), pw)))
    }
}

/// An element bundled with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.value, self.field.q())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp(&self.coeffs(), &other.coeffs())
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn with(&self, value: u32) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.div(self.value, other.value)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.value, e))
    }

    pub fn is_square(&self) -> bool {
        self.field.is_square(self.value)
    }

    pub fn sqrt(&self) -> Result<FieldElement> {
        Ok(self.with(self.field.sqrt(self.value)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn irreducible_quadratics_by_scan(p: u32) -> Vec<Vec<u32>> {
        // a monic quadratic is irreducible iff it has no root in GF(p)
        let mut out = Vec::new();
        for c0 in 0..p {
            for c1 in 0..p {
                let has_root = (0..p).any(|x| (x * x + c1 * x + c0) % p == 0);
                if !has_root {
                    out.push(vec![c0, c1, 1]);
                }
            }
        }
        out
    }

    #[test]
    fn gf2_is_prime_field_with_trivial_modulus() {
        let f = Field::new(2, 1, None).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn gf9_default_modulus_is_least_irreducible() {
        let f = Field::new(3, 2, None).unwrap();
        let scan = irreducible_quadratics_by_scan(3);
        let least = scan.iter().min().unwrap();
        assert_eq!(f.modulus(), least.as_slice());
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn non_prime_characteristic_is_rejected() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus { p: 2 })
        ));
    }

    #[test]
    fn inverse_in_gf7() {
        let f = Field::prime(7).unwrap();
        let brute = (1..7).find(|y| 3 * y % 7 == 1).unwrap();
        assert_eq!(brute, 5);
        assert_eq!(f.inv(3).unwrap(), 5);
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn squares_in_gf7() {
        let f = Field::prime(7).unwrap();
        let squares: Vec<u32> = (0..7).map(|x| x * x % 7).collect();
        assert!(!squares.contains(&3));
        assert!(!f.is_square(3));
        assert!(f.is_square(2));
        assert_eq!(f.sqrt(2).unwrap(), 3);
        assert_eq!(f.sqrt(3), Err(Error::NotASquare(3)));
    }

    #[test]
    fn gf3_two_is_not_a_square() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.sqrt(2), Err(Error::NotASquare(2)));
        assert_eq!(f.sqrt(1).unwrap(), 1);
    }

    #[test]
    fn gf2_every_element_square() {
        let f = Field::prime(2).unwrap();
        assert!(f.is_square(1));
        assert_eq!(f.sqrt(1).unwrap(), 1);
    }

    #[test]
    fn quadratic_extension_of_gf3() {
        let f = Field::prime(3).unwrap();
        let (big, emb) = f.extend_quadratic();
        assert_eq!(big.q(), 9);
        assert_eq!(emb.apply(0), 0);
        assert_eq!(emb.apply(1), 1);
        let two = emb.apply(2);
        assert!(big.elements().any(|y| big.mul(y, y) == two));
        assert!(big.is_square(two));
    }

    #[test]
    fn quadratic_extension_of_gf2() {
        let f = Field::prime(2).unwrap();
        let (big, emb) = f.extend_quadratic();
        assert_eq!(big.q(), 4);
        let one = emb.apply(1);
        assert_eq!(big.mul(big.sqrt(one).unwrap(), big.sqrt(one).unwrap()), one);
    }

    #[test]
    fn element_wrapper_rejects_mixed_fields() {
        let a = Field::prime(5).unwrap().element(2).unwrap();
        let b = Field::prime(7).unwrap().element(2).unwrap();
        assert_eq!(a.add(&b), Err(Error::SpecMismatch));
        assert_eq!(a.mul(&a).unwrap().value(), 4);
        assert!(Field::prime(5).unwrap().element(5).is_err());
    }

    #[test]
    fn spec_string_roundtrip() {
        let f = Field::new(3, 2, None).unwrap();
        assert_eq!(f.to_string(), "3^2:1,0,1");
        let g: Field = "3^2:1,0,1".parse().unwrap();
        assert_eq!(f, g);
        let h: Field = "7^1".parse().unwrap();
        assert_eq!(h.q(), 7);
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(49).unwrap(), (7, 2));
        assert_eq!(prime_power(16).unwrap(), (2, 4));
        assert!(prime_power(12).is_err());
    }

    #[test]
    fn degree_five_field_uses_rabin_path() {
        let f = Field::new(2, 5, None).unwrap();
        assert_eq!(f.q(), 32);
        for x in f.elements() {
            assert_eq!(f.pow(x, 32), x);
        }
    }
}
