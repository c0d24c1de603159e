//! Prime and prime-power finite fields.
//!
//! Elements are integers in `[0, q)` whose base-`p` digits, least significant
//! first, are the coefficients of a polynomial over `F_p` reduced modulo the
//! field's defining polynomial. For prime fields this is the usual residue.
//!
//! Matrix code works on raw `u32` representations through [`Field`]; the
//! checked [`FieldElement`] wrapper carries its field and refuses to mix.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Largest order for which exp/log tables are built.
const TABLE_LIMIT: u64 = 1 << 16;

/// Largest supported order; elements are stored as `u32`.
const ORDER_LIMIT: u128 = 1 << 32;

/// Built-in defining polynomials, coefficients constant term first.
///
/// | q  | modulus          |
/// |----|------------------|
/// | 4  | x^2 + x + 1      |
/// | 8  | x^3 + x + 1      |
/// | 9  | x^2 + 1          |
/// | 16 | x^4 + x + 1      |
/// | 25 | x^2 + 2          |
/// | 27 | x^3 + 2x + 1     |
/// | 32 | x^5 + x^2 + 1    |
/// | 64 | x^6 + x + 1      |
///
/// Prime fields need no modulus.
pub const DEFAULT_MODULI: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
];

/// Help text listing the built-in fields, shared with the CLI.
pub const DEFAULT_FIELDS_HELP: &str = "built-in fields: every prime order, \
GF(4)=x^2+x+1, GF(8)=x^3+x+1, GF(9)=x^2+1, GF(16)=x^4+x+1, GF(25)=x^2+2, \
GF(27)=x^3+2x+1, GF(32)=x^5+x^2+1, GF(64)=x^6+x+1";

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Field operation selector for [`Field::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Neg,
    Mul,
    Inv,
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    tables: OnceLock<Option<Tables>>,
}

/// A validated finite field `GF(p^m)`. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.q)
        } else {
            write!(f, "GF({}^{}; {:?})", self.0.p, self.0.m, self.0.modulus)
        }
    }
}

impl Field {
    /// Builds `GF(p^m)`. With `modulus` omitted, `m > 1` falls back to the
    /// built-in table.
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ModulusLength {
                expected: 2,
                got: 0,
            });
        }
        let q = (p as u128).checked_pow(m).filter(|&q| q <= ORDER_LIMIT);
        let q = match q {
            Some(q) => q as u64,
            None => return Err(Error::FieldTooLarge((p as u128).saturating_pow(m))),
        };
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            let coeffs = match modulus {
                Some(c) => c.to_vec(),
                None => DEFAULT_MODULI
                    .iter()
                    .find(|(dp, dm, _)| *dp == p && *dm == m)
                    .map(|(_, _, c)| c.to_vec())
                    .ok_or(Error::NoDefaultModulus { p, m })?,
            };
            validate_modulus(p, m, &coeffs)?;
            coeffs
        };
        Ok(Field(Arc::new(Inner {
            p,
            m,
            q,
            modulus,
            tables: OnceLock::new(),
        })))
    }

    /// Prime field `GF(p)`.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// Built-in field of order `q`.
    pub fn with_order(q: u64) -> Result<Field> {
        if is_prime(q) {
            return Field::prime(q);
        }
        for &(p, m, c) in DEFAULT_MODULI {
            if p.pow(m) == q {
                return Field::new(p, m, Some(c));
            }
        }
        match prime_power(q) {
            Some((p, m)) => Err(Error::NoDefaultModulus { p, m }),
            None => Err(Error::FamilyPrecondition(format!(
                "{q} is not a prime power"
            ))),
        }
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Defining polynomial, constant term first. `[0, 1]` for prime fields.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value >= self.0.q {
            return Err(Error::ElementOutOfRange { value, q: self.0.q });
        }
        Ok(FieldElement {
            field: self.clone(),
            repr: value as u32,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            repr: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            repr: 1,
        }
    }

    /// Checked arithmetic on representations; the `field_arith` entry point.
    pub fn apply(&self, op: FieldOp, a: u64, b: Option<u64>) -> Result<u32> {
        let a = self.element(a)?.repr;
        let b = match (op, b) {
            (FieldOp::Add | FieldOp::Mul, Some(b)) => self.element(b)?.repr,
            (FieldOp::Add | FieldOp::Mul, None) => {
                return Err(Error::Config("binary operation needs two operands".into()))
            }
            _ => 0,
        };
        match op {
            FieldOp::Add => Ok(self.add(a, b)),
            FieldOp::Neg => Ok(self.neg(a)),
            FieldOp::Mul => Ok(self.mul(a, b)),
            FieldOp::Inv => self.inv(a).ok_or(Error::ZeroInverse),
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.m == 1 {
            return ((a as u64 + b as u64) % p) as u32;
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.0.m {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.m == 1 {
            return ((p - a as u64) % p) as u32;
        }
        let mut a = a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.0.m {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = self.tables() {
            let n = self.0.q as usize - 1;
            let e = t.log[a as usize] as usize + t.log[b as usize] as usize;
            return t.exp[if e >= n { e - n } else { e }];
        }
        self.mul_slow(a, b)
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if let Some(t) = self.tables() {
            let n = self.0.q as usize - 1;
            let l = t.log[a as usize] as usize;
            return Some(t.exp[(n - l) % n]);
        }
        Some(self.pow(a, self.0.q - 2))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Schoolbook multiplication, used directly for large fields and to seed
    /// the tables.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.m == 1 {
            return ((a as u128 * b as u128) % p as u128) as u32;
        }
        let m = self.0.m as usize;
        let da = digits(a as u64, p, m);
        let db = digits(b as u64, p, m);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // Reduce using the monic modulus: x^m = -(c_0 + ... + c_{m-1} x^{m-1}).
        let modulus = &self.0.modulus;
        for d in (m..prod.len()).rev() {
            let lead = prod[d];
            if lead == 0 {
                continue;
            }
            prod[d] = 0;
            for (t, &c) in modulus[..m].iter().enumerate() {
                let idx = d - m + t;
                prod[idx] = (prod[idx] + (p - lead) * c) % p;
            }
        }
        undigits(&prod[..m], p) as u32
    }

    fn tables(&self) -> Option<&Tables> {
        self.0
            .tables
            .get_or_init(|| {
                if self.0.q > TABLE_LIMIT || self.0.q < 3 {
                    return None;
                }
                Some(self.build_tables())
            })
            .as_ref()
    }

    fn build_tables(&self) -> Tables {
        let q = self.0.q;
        let n = q - 1;
        let factors = prime_factors(n);
        let pow_slow = |a: u32, mut e: u64| {
            let (mut base, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.mul_slow(acc, base);
                }
                base = self.mul_slow(base, base);
                e >>= 1;
            }
            acc
        };
        let generator = (2..q as u32)
            .find(|&g| factors.iter().all(|&r| pow_slow(g, n / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (e, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = e as u32;
            x = self.mul_slow(x, generator);
        }
        Tables { exp, log }
    }
}

fn digits(mut v: u64, p: u64, m: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `(p, m)` with `q = p^m`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let (mut m, mut r) = (0u32, q);
    while r > 1 {
        r /= p;
        m += 1;
    }
    Some((p, m))
}

fn validate_modulus(p: u64, m: u32, coeffs: &[u64]) -> Result<()> {
    let m = m as usize;
    if coeffs.len() != m + 1 {
        return Err(Error::ModulusLength {
            expected: m + 1,
            got: coeffs.len(),
        });
    }
    if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
        return Err(Error::ModulusCoefficient(c));
    }
    if coeffs[m] != 1 {
        return Err(Error::NotMonic);
    }
    if !is_irreducible(p, coeffs) {
        return Err(Error::Reducible(p));
    }
    Ok(())
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem_is_zero(f, &g, p) {
                return false;
            }
        }
    }
    true
}

/// Whether the monic divisor `g` divides `f` over `F_p`.
fn poly_rem_is_zero(f: &[u64], g: &[u64], p: u64) -> bool {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    for d in (dg..r.len()).rev() {
        let lead = r[d] % p;
        if lead == 0 {
            continue;
        }
        for (t, &c) in g.iter().enumerate() {
            let idx = d - dg + t;
            r[idx] = (r[idx] + (p - lead) * c % p) % p;
        }
    }
    r[..dg].iter().all(|&c| c % p == 0)
}

/// An element tagged with its field. Operations between different fields fail.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    repr: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.repr, self.field)
    }
}

impl FieldElement {
    pub fn repr(&self) -> u32 {
        self.repr
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.repr == 0
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn with(&self, repr: u32) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            repr,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.repr, other.repr)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.sub(self.repr, other.repr)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.repr, other.repr)))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.repr))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        self.field
            .inv(self.repr)
            .map(|r| self.with(r))
            .ok_or(Error::ZeroInverse)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.repr, e))
    }
}
