//! Arithmetic in the tower `F_p ⊂ F_q ⊂ F_{q^m}` with `q = p^h`.
//!
//! Every element is stored as its integer encoding. An element of a field
//! of degree `d` over its coefficient field `K` is a coefficient vector
//! `(c_0, .., c_{d-1})` in the power basis of the defining polynomial, and
//! its code is `c_0 + c_1 |K| + .. + c_{d-1} |K|^{d-1}` where each `c_i` is
//! itself a code in `K`. With this nesting the constants of `F_q` keep the
//! same code inside `F_{q^m}`, so the embedding `F_q ⊂ F_{q^m}` is the
//! identity on codes.
//!
//! Multiplication goes through discrete log tables, addition through Zech
//! logarithms (plain XOR in characteristic two). All tables are built once
//! per field and the field is immutable afterwards.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order, `2^20`.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// A field element, identified by its integer encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A finite field given either as a prime field or as a simple extension
/// of a smaller field.
#[derive(Clone, Debug)]
pub struct Field {
    order: u32,
    characteristic: u32,
    sub_order: u32,
    degree: usize,
    modulus: Vec<Elem>,
    generator: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p as u64 > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { order: p as u64 });
        }
        let gen = (1..p)
            .find(|&g| is_primitive(g as u64, p as u64, |a, b| a * b % p as u64))
            .expect("a prime field has a primitive root");
        Ok(Self::from_generator(
            p,
            p,
            p,
            1,
            vec![],
            Elem(gen),
            |a, b| Elem(((a.0 as u64 * b.0 as u64) % p as u64) as u32),
            |a, b| Elem((a.0 + b.0) % p),
        ))
    }

    /// The extension `sub[x] / (modulus)`; `modulus` is monic, low degree first.
    pub fn extension(sub: &Field, modulus: &[Elem], which: &'static str) -> Result<Field> {
        let degree = modulus.len().saturating_sub(1);
        if degree == 0 || modulus[degree] != Elem::ONE {
            return Err(Error::DegreeMismatch {
                which,
                expected: degree.max(1),
                found: modulus.iter().map(|c| c.0).collect(),
            });
        }
        for &c in modulus {
            sub.check(c)?;
        }
        let order = (sub.order as u64).pow(degree as u32);
        if order > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { order });
        }
        if !is_irreducible(sub, modulus) {
            return Err(Error::Reducible { which });
        }
        let order = order as u32;
        let slow = SlowExt { sub, modulus, degree };
        let gen = (1..order)
            .find(|&g| is_primitive(g as u64, order as u64, |a, b| slow.mul(a as u32, b as u32) as u64))
            .expect("the multiplicative group of a finite field is cyclic");
        Ok(Self::from_generator(
            order,
            sub.characteristic,
            sub.order,
            degree,
            modulus.to_vec(),
            Elem(gen),
            |a, b| Elem(slow.mul(a.0, b.0)),
            |a, b| Elem(slow.add(a.0, b.0)),
        ))
    }

    #[allow(clippy::too_many_arguments)]
    fn from_generator(
        order: u32,
        characteristic: u32,
        sub_order: u32,
        degree: usize,
        modulus: Vec<Elem>,
        generator: Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
        add: impl Fn(Elem, Elem) -> Elem,
    ) -> Field {
        let n = (order - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![NO_LOG; order as usize];
        let mut cur = Elem::ONE;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = mul(cur, generator);
        }
        debug_assert_eq!(cur, Elem::ONE);
        let zech = exp
            .iter()
            .map(|&e| {
                let s = add(Elem(e), Elem::ONE);
                if s.is_zero() {
                    NO_LOG
                } else {
                    log[s.0 as usize]
                }
            })
            .collect();
        Field {
            order,
            characteristic,
            sub_order,
            degree,
            modulus,
            generator,
            exp,
            log,
            zech,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    /// Degree over the coefficient field one level down (1 for a prime field).
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Defining polynomial over the coefficient field; empty for a prime field.
    pub fn modulus(&self) -> &[Elem] {
        &self.modulus
    }

    /// The primitive element the log tables are built on.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// Checked conversion from an integer code.
    pub fn elem(&self, code: u32) -> Result<Elem> {
        self.check(Elem(code))?;
        Ok(Elem(code))
    }

    fn check(&self, a: Elem) -> Result<()> {
        if a.0 < self.order {
            Ok(())
        } else {
            Err(Error::LevelMismatch {
                code: a.0,
                order: self.order,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a.0 < self.order && b.0 < self.order);
        if self.characteristic == 2 {
            return Elem(a.0 ^ b.0);
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let n = self.order - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let diff = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[diff as usize];
        if z == NO_LOG {
            Elem::ZERO
        } else {
            Elem(self.exp[((la as u64 + z as u64) % n as u64) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.characteristic == 2 || a.is_zero() {
            return a;
        }
        let n = self.order - 1;
        let l = self.log[a.0 as usize] + n / 2;
        Elem(self.exp[(l % n) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a.0 < self.order && b.0 < self.order);
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let n = self.order - 1;
        let mut l = self.log[a.0 as usize] + self.log[b.0 as usize];
        if l >= n {
            l -= n;
        }
        Elem(self.exp[l as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.order - 1;
        let l = self.log[a.0 as usize];
        Ok(Elem(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let n = (self.order - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % n)) % n;
        Elem(self.exp[l as usize])
    }

    /// Discrete logarithm to the base [`Field::generator`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// `generator^e`.
    pub fn exp(&self, e: u64) -> Elem {
        Elem(self.exp[(e % (self.order as u64 - 1)) as usize])
    }

    /// Coefficient vector of `a` over the field one level down.
    pub fn coeffs(&self, a: Elem) -> Vec<Elem> {
        digits(a.0, self.sub_order, self.degree)
    }

    pub fn from_coeffs(&self, coeffs: &[Elem]) -> Result<Elem> {
        if coeffs.len() != self.degree {
            return Err(Error::OutOfRange(format!(
                "expected {} coefficients, got {}",
                self.degree,
                coeffs.len()
            )));
        }
        let mut code = 0u32;
        for &c in coeffs.iter().rev() {
            if c.0 >= self.sub_order {
                return Err(Error::LevelMismatch {
                    code: c.0,
                    order: self.sub_order,
                });
            }
            code = code * self.sub_order + c.0;
        }
        Ok(Elem(code))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }
}

fn digits(mut code: u32, base: u32, len: usize) -> Vec<Elem> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(Elem(code % base));
        code /= base;
    }
    out
}

/// Table-free arithmetic in an extension, used only while building its tables.
struct SlowExt<'a> {
    sub: &'a Field,
    modulus: &'a [Elem],
    degree: usize,
}

impl SlowExt<'_> {
    fn add(&self, a: u32, b: u32) -> u32 {
        let base = self.sub.order;
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.degree {
            let s = self.sub.add(Elem(a % base), Elem(b % base));
            out += s.0 * place;
            a /= base;
            b /= base;
            place = place.wrapping_mul(base);
        }
        out
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let f = self.sub;
        let d = self.degree;
        let a = digits(a, f.order, d);
        let b = digits(b, f.order, d);
        let mut prod = vec![Elem::ZERO; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        poly_rem_monic(f, &mut prod, self.modulus);
        prod.iter().take(d).rev().fold(0u32, |acc, c| acc * f.order + c.0)
    }
}

/// Reduces `a` modulo the monic `m` in place; the first `deg m` entries hold the remainder.
fn poly_rem_monic(f: &Field, a: &mut [Elem], m: &[Elem]) {
    let dm = m.len() - 1;
    for top in (dm..a.len()).rev() {
        let c = a[top];
        if c.is_zero() {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            let idx = top - dm + i;
            a[idx] = f.sub(a[idx], f.mul(c, mi));
        }
    }
}

/// Irreducibility by trial division with every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: &Field, poly: &[Elem]) -> bool {
    let d = poly.len() - 1;
    for t in 1..=d / 2 {
        let count = (f.order as u64).pow(t as u32);
        for low in 0..count {
            let mut divisor = digits(low as u32, f.order, t);
            divisor.push(Elem::ONE);
            let mut rem = poly.to_vec();
            poly_rem_monic(f, &mut rem, &divisor);
            if rem[..t].iter().all(|c| c.is_zero()) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree `d` over `f` whose little-endian integer
/// encoding `c_0 + c_1 |f| + .. + |f|^d` is least.
pub fn least_irreducible(f: &Field, d: usize) -> Result<Vec<Elem>> {
    if d == 0 {
        return Err(Error::OutOfRange("degree must be positive".into()));
    }
    let count = (f.order as u64)
        .checked_pow(d as u32)
        .filter(|&c| c <= MAX_FIELD_ORDER)
        .ok_or(Error::FieldTooLarge {
            order: (f.order as u64).saturating_pow(d as u32),
        })?;
    (0..count)
        .map(|low| {
            let mut p = digits(low as u32, f.order, d);
            p.push(Elem::ONE);
            p
        })
        .find(|p| is_irreducible(f, p))
        .ok_or(Error::Invariant("no irreducible polynomial found".into()))
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
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

fn is_primitive(g: u64, order: u64, mul: impl Fn(u64, u64) -> u64) -> bool {
    let pow = |mut e: u64| {
        let (mut acc, mut base) = (1u64, g);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let n = order - 1;
    prime_factors(n).into_iter().all(|r| pow(n / r) != 1)
}

/// Serialized form of a tower: polynomial coefficients low degree first,
/// `irr_qm` coefficients given as `F_q` codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub p: u32,
    pub h: usize,
    pub m: usize,
    pub irr_q: Vec<u32>,
    pub irr_qm: Vec<u32>,
}

/// The field tower `F_p ⊂ F_q ⊂ F_{q^m}`.
#[derive(Clone, Debug)]
pub struct Tower {
    h: usize,
    m: usize,
    fp: Field,
    fq: Field,
    fqm: Field,
    /// `q^s mod (q^m - 1)` for `s = 0..m`.
    frob_exp: Vec<u64>,
}

impl Tower {
    /// Builds the tower with the default (least) irreducible polynomials.
    pub fn new(p: u32, h: usize, m: usize) -> Result<Tower> {
        Self::with_polynomials(p, h, m, None, None)
    }

    /// The tower for `F_q ⊂ F_{q^m}` where `q` is a prime power.
    pub fn for_q(q: u32, m: usize) -> Result<Tower> {
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(Error::NotPrime(q))?;
        let mut h = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            h += 1;
        }
        if rest != 1 {
            return Err(Error::OutOfRange(format!("q = {q} is not a prime power")));
        }
        Self::new(p, h, m)
    }

    pub fn with_polynomials(
        p: u32,
        h: usize,
        m: usize,
        irr_q: Option<&[u32]>,
        irr_qm: Option<&[u32]>,
    ) -> Result<Tower> {
        if h == 0 || m == 0 {
            return Err(Error::OutOfRange("h and m must be positive".into()));
        }
        let fp = Field::prime(p)?;
        let total = (p as u64).checked_pow((h * m) as u32);
        if total.is_none_or(|t| t > MAX_FIELD_ORDER) {
            return Err(Error::FieldTooLarge {
                order: total.unwrap_or(u64::MAX),
            });
        }
        let irr_q = match irr_q {
            Some(c) => check_degree(c, h, "irr_q")?,
            None => least_irreducible(&fp, h)?,
        };
        let fq = Field::extension(&fp, &irr_q, "irr_q")?;
        let irr_qm = match irr_qm {
            Some(c) => check_degree(c, m, "irr_qm")?,
            None => least_irreducible(&fq, m)?,
        };
        let fqm = Field::extension(&fq, &irr_qm, "irr_qm")?;
        let n = fqm.order as u64 - 1;
        let frob_exp = (0..m as u32)
            .map(|s| (0..s).fold(1u64, |acc, _| acc * fq.order as u64 % n.max(1)))
            .collect();
        Ok(Tower {
            h,
            m,
            fp,
            fq,
            fqm,
            frob_exp,
        })
    }

    pub fn from_spec(spec: &TowerSpec) -> Result<Tower> {
        Self::with_polynomials(spec.p, spec.h, spec.m, Some(&spec.irr_q), Some(&spec.irr_qm))
    }

    pub fn spec(&self) -> TowerSpec {
        TowerSpec {
            p: self.p(),
            h: self.h,
            m: self.m,
            irr_q: self.fq.modulus.iter().map(|c| c.0).collect(),
            irr_qm: self.fqm.modulus.iter().map(|c| c.0).collect(),
        }
    }

    pub fn p(&self) -> u32 {
        self.fp.order
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.fq.order
    }

    /// `q^m`.
    pub fn qm(&self) -> u32 {
        self.fqm.order
    }

    pub fn fp(&self) -> &Field {
        &self.fp
    }

    pub fn fq(&self) -> &Field {
        &self.fq
    }

    pub fn fqm(&self) -> &Field {
        &self.fqm
    }

    /// `a^{q^s}`.
    #[inline]
    pub fn frobenius(&self, a: Elem, s: usize) -> Elem {
        if a.is_zero() {
            return a;
        }
        let f = &self.fqm;
        let n = f.order as u64 - 1;
        if n == 0 {
            return a;
        }
        let l = f.log[a.0 as usize] as u64 * self.frob_exp[s % self.m] % n;
        Elem(f.exp[l as usize])
    }

    /// Whether `a ∈ F_{q^m}` lies in the subfield `F_q`.
    #[inline]
    pub fn is_in_fq(&self, a: Elem) -> bool {
        a.0 < self.fq.order
    }

    /// The power basis `1, y, .., y^{m-1}` of `F_{q^m}` over `F_q`.
    pub fn fq_basis(&self) -> Vec<Elem> {
        (0..self.m as u32).map(|t| Elem(self.fq.order.pow(t))).collect()
    }

    /// Flattens `v ∈ F_{q^m}^k` to `F_q^{mk}`, entry `j` occupying `[jm, (j+1)m)`.
    pub fn to_fq_coords(&self, v: &[Elem]) -> Vec<Elem> {
        let mut out = Vec::with_capacity(v.len() * self.m);
        for &a in v {
            self.push_fq_coords(a, &mut out);
        }
        out
    }

    #[inline]
    pub(crate) fn push_fq_coords(&self, a: Elem, out: &mut Vec<Elem>) {
        let q = self.fq.order;
        let mut c = a.0;
        for _ in 0..self.m {
            out.push(Elem(c % q));
            c /= q;
        }
    }

    /// Inverse of [`Tower::to_fq_coords`].
    pub fn from_fq_coords(&self, coords: &[Elem]) -> Result<Vec<Elem>> {
        if !coords.len().is_multiple_of(self.m) {
            return Err(Error::OutOfRange(format!(
                "length {} is not a multiple of m = {}",
                coords.len(),
                self.m
            )));
        }
        coords.chunks(self.m).map(|chunk| self.fqm.from_coeffs(chunk)).collect()
    }

    #[inline]
    pub(crate) fn fill_from_fq_coords(&self, coords: &[Elem], out: &mut Vec<Elem>) {
        let q = self.fq.order;
        out.clear();
        for chunk in coords.chunks(self.m) {
            out.push(Elem(chunk.iter().rev().fold(0u32, |acc, c| acc * q + c.0)));
        }
    }
}

fn check_degree(coeffs: &[u32], d: usize, which: &'static str) -> Result<Vec<Elem>> {
    if coeffs.len() != d + 1 || coeffs[d] != 1 {
        return Err(Error::DegreeMismatch {
            which,
            expected: d,
            found: coeffs.to_vec(),
        });
    }
    Ok(coeffs.iter().map(|&c| Elem(c)).collect())
}
