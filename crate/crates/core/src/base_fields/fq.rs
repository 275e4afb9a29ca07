//! Finite fields `F_{p^k}` for small characteristic.
//!
//! Elements are stored as indices `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of their
//! coefficient vector in the basis `1, g, ..., g^{k-1}`, where `g` is a root of
//! the modulus. All arithmetic goes through precomputed tables, which is why the
//! supported sizes are capped at `q <= 343`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 343;

/// Characteristics accepted by [`FieldSpec`].
pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

/// Shared handle to a field description.
pub type Field = Arc<FieldSpec>;

/// An element of some `F_q`, meaningful only together with its [`FieldSpec`].
///
/// The derived ordering is the fixed element ordering used to pick
/// deterministic witnesses (coefficient-lexicographic, lowest degree first).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(pub(crate) u16);

impl Fq {
    pub const ZERO: Fq = Fq(0);

    pub fn index(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field `F_p[g]/(modulus)` together with its arithmetic tables.
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    neg: Vec<u16>,
    exp: Vec<u16>,
    log: Vec<u16>,
    pth_root: Vec<u16>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Two handles denote the same field.
pub fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn check_prime(p: u32) -> Result<()> {
    if SUPPORTED_PRIMES.contains(&p) {
        Ok(())
    } else {
        Err(Error::UnsupportedField(format!(
            "characteristic {p} is not one of {SUPPORTED_PRIMES:?}"
        )))
    }
}

fn field_size(p: u32, k: u32) -> Result<u32> {
    if k == 0 {
        return Err(Error::UnsupportedField("degree must be at least 1".into()));
    }
    let mut q: u64 = 1;
    for _ in 0..k {
        q *= p as u64;
        if q > MAX_FIELD_SIZE as u64 {
            return Err(Error::UnsupportedField(format!(
                "field of size {p}^{k} exceeds {MAX_FIELD_SIZE}"
            )));
        }
    }
    Ok(q as u32)
}

// Dense polynomials over F_p used only while building tables.
fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = fp_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| x * a % p == 1).expect("nonzero residue")
}

/// Whether the monic polynomial `m` (low degree first) is irreducible over
/// `F_p`, by trial division against every monic polynomial of degree `<= deg/2`.
pub(crate) fn fp_is_irreducible(m: &[u32], p: u32) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    for dd in 1..=d / 2 {
        let count = (p as u64).pow(dd as u32);
        for idx in 0..count {
            let mut cand = digits(idx, p, dd);
            cand.push(1);
            if fp_rem(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut idx: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((idx % p as u64) as u32);
        idx /= p as u64;
    }
    out
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Self::new(p, 1)
    }

    /// `F_{p^k}` built on the least monic irreducible modulus of degree `k`
    /// (coefficient-lexicographic order, constant term first).
    pub fn new(p: u32, k: u32) -> Result<Field> {
        check_prime(p)?;
        field_size(p, k)?;
        let count = (p as u64).pow(k);
        for idx in 0..count {
            let mut cand = digits(idx, p, k as usize);
            cand.push(1);
            if fp_is_irreducible(&cand, p) {
                return Self::with_modulus(p, cand);
            }
        }
        Err(Error::IrreduciblePolynomialNotFound(k))
    }

    /// `F_p[g]/(modulus)`; `modulus` lists coefficients from the constant term up
    /// and must be monic and irreducible.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        check_prime(p)?;
        let mut modulus: Vec<u32> = modulus.into_iter().map(|c| c % p).collect();
        fp_trim(&mut modulus);
        if modulus.len() < 2 {
            return Err(Error::UnsupportedField("modulus must have degree >= 1".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::UnsupportedField("modulus must be monic".into()));
        }
        let k = (modulus.len() - 1) as u32;
        let q = field_size(p, k)?;
        if !fp_is_irreducible(&modulus, p) {
            return Err(Error::NotIrreducible(format!("{modulus:?}")));
        }
        let qs = q as usize;
        let to_vec = |i: usize| digits(i as u64, p, k as usize);
        let to_idx = |v: &[u32]| -> usize {
            v.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
        };

        let mut add = vec![0u16; qs * qs];
        let mut neg = vec![0u16; qs];
        for a in 0..qs {
            let va = to_vec(a);
            neg[a] = to_idx(&va.iter().map(|&c| (p - c) % p).collect::<Vec<_>>()) as u16;
            for b in 0..qs {
                let vb = to_vec(b);
                let s: Vec<u32> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = to_idx(&s) as u16;
            }
        }

        let mul_vec = |a: &[u32], b: &[u32]| -> Vec<u32> {
            let mut prod = vec![0u32; a.len() + b.len()];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = fp_rem(&prod, &modulus, p);
            r.resize(k as usize, 0);
            r
        };

        // Find a primitive element by brute force; q - 1 <= 342.
        let mut exp = Vec::new();
        let mut log = vec![0u16; qs];
        'search: for cand in 1..qs {
            let vc = to_vec(cand);
            let mut cur = to_vec(1);
            let mut powers = Vec::with_capacity(qs - 1);
            for _ in 0..qs - 1 {
                powers.push(to_idx(&cur) as u16);
                cur = mul_vec(&cur, &vc);
                if to_idx(&cur) == 1 && powers.len() < qs - 1 {
                    continue 'search;
                }
            }
            exp = powers;
            break;
        }
        if exp.len() != qs - 1 {
            return Err(Error::UnsupportedField("no primitive element found".into()));
        }
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u16;
        }
        let order = exp.len();
        let doubled: Vec<u16> = exp.iter().chain(exp.iter()).copied().collect();

        let mut spec = FieldSpec {
            p,
            k,
            q,
            modulus,
            add,
            neg,
            exp: doubled,
            log,
            pth_root: vec![0u16; qs],
        };
        // The Frobenius permutes the field; invert it.
        for a in 0..qs {
            let fa = spec.pow(Fq(a as u16), p as u64);
            spec.pth_root[fa.0 as usize] = a as u16;
        }
        debug_assert_eq!(order, qs - 1);
        Ok(Arc::new(spec))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients over `F_p`, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Fq {
        Fq(0)
    }

    pub fn one(&self) -> Fq {
        Fq(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u16)
    }

    /// The element with index `i`, for `i < q`.
    pub fn element(&self, i: u32) -> Fq {
        assert!(i < self.q, "element index out of range");
        Fq(i as u16)
    }

    /// All elements in the fixed ordering.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(|i| Fq(i as u16))
    }

    /// The class of `g`.
    pub fn generator(&self) -> Fq {
        if self.k == 1 {
            // F_p[g]/(g + c): g = -c
            Fq(((self.p - self.modulus[0]) % self.p) as u16)
        } else {
            Fq(self.p as u16)
        }
    }

    /// Coordinates of `a` over `F_p` in the basis `1, g, ..., g^{k-1}`.
    pub fn coords(&self, a: Fq) -> Vec<u32> {
        digits(a.0 as u64, self.p, self.k as usize)
    }

    pub fn from_coords(&self, c: &[u32]) -> Result<Fq> {
        if c.len() > self.k as usize {
            return Err(Error::InvalidInput(format!(
                "coordinate vector of length {} for a degree-{} field",
                c.len(),
                self.k
            )));
        }
        let idx = c
            .iter()
            .rev()
            .fold(0u32, |acc, &x| acc * self.p + x % self.p);
        Ok(Fq(idx as u16))
    }

    pub fn is_prime_subfield(&self, a: Fq) -> bool {
        (a.0 as u32) < self.p
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq(0);
        }
        let l = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        Fq(self.exp[l])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q as usize - 1;
        let l = self.log[a.0 as usize] as usize;
        Ok(Fq(self.exp[(order - l) % order]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq(1);
        }
        if a.0 == 0 {
            return Fq(0);
        }
        let order = self.q as u64 - 1;
        let l = self.log[a.0 as usize] as u64;
        Fq(self.exp[((l * (e % order)) % order) as usize])
    }

    /// `a^n` for a signed exponent.
    pub fn pow_signed(&self, a: Fq, n: i64) -> Result<Fq> {
        if n >= 0 {
            Ok(self.pow(a, n as u64))
        } else {
            Ok(self.pow(self.inv(a)?, n.unsigned_abs()))
        }
    }

    /// Multiplication by an integer.
    pub fn scale(&self, a: Fq, n: i64) -> Fq {
        self.mul(a, self.from_int(n))
    }

    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.p as u64)
    }

    /// The unique `r` with `r^p = a`.
    pub fn pth_root(&self, a: Fq) -> Fq {
        Fq(self.pth_root[a.0 as usize])
    }

    /// The unique `r` with `r^(p^n) = a`.
    pub fn pth_root_iter(&self, a: Fq, n: u32) -> Fq {
        (0..n).fold(a, |acc, _| self.pth_root(acc))
    }

    /// The least `r` (in element order) with `r^s = a`, if any.
    pub fn sth_root(&self, a: Fq, s: u64) -> Result<Option<Fq>> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.elements().skip(1).find(|&r| self.pow(r, s) == a))
    }

    /// Absolute trace `F_q -> F_p`, returned as an integer in `0..p`.
    pub fn absolute_trace(&self, a: Fq) -> u32 {
        let mut acc = Fq(0);
        let mut cur = a;
        for _ in 0..self.k {
            acc = self.add(acc, cur);
            cur = self.frobenius(cur);
        }
        debug_assert!(self.is_prime_subfield(acc));
        acc.0 as u32
    }

    /// `F_{q^e}` with an explicit embedding of this field.
    pub fn extend_constants(self: &Arc<Self>, e: u32) -> Result<(Field, Embedding)> {
        if e == 0 {
            return Err(Error::InvalidInput("extension degree must be >= 1".into()));
        }
        if e == 1 {
            return Ok((self.clone(), Embedding::identity(self.clone())));
        }
        let target = FieldSpec::new(self.p, self.k * e)?;
        let emb = Embedding::new(self.clone(), target.clone())?;
        Ok((target, emb))
    }
}

/// A ring homomorphism `F_q -> F_{q^e}` given by the image of the generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    table: Vec<Fq>,
}

impl Embedding {
    pub fn identity(field: Field) -> Self {
        let table = field.elements().collect();
        Embedding {
            source: field.clone(),
            target: field,
            table,
        }
    }

    /// Sends `g` to the least root of the source modulus in the target.
    pub fn new(source: Field, target: Field) -> Result<Self> {
        if source.p() != target.p() || !target.k().is_multiple_of(source.k()) {
            return Err(Error::FieldMismatch);
        }
        let eval = |x: Fq| {
            source
                .modulus()
                .iter()
                .rev()
                .fold(Fq(0), |acc, &c| target.add(target.mul(acc, x), target.from_int(c as i64)))
        };
        let root = target
            .elements()
            .find(|&x| eval(x).is_zero())
            .ok_or(Error::IrreduciblePolynomialNotFound(source.k()))?;
        let table = source
            .elements()
            .map(|a| {
                source
                    .coords(a)
                    .iter()
                    .rev()
                    .fold(Fq(0), |acc, &c| target.add(target.mul(acc, root), target.from_int(c as i64)))
            })
            .collect();
        Ok(Embedding {
            source,
            target,
            table,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn map(&self, a: Fq) -> Fq {
        self.table[a.0 as usize]
    }
}
