//! Exact arithmetic in finite fields `F_{p^d}`.
//!
//! Each field is pinned to a canonical presentation: the modulus is the
//! lexicographically least monic irreducible of degree `d` over `F_p`,
//! comparing coefficient tuples `(c_0, c_1, ..., c_{d-1})` with `c_0` first.
//! A given `(p, d)` therefore always yields the identical field, so golden
//! outputs are reproducible across machines.
//!
//! Elements are stored packed: `Fq(v)` encodes the coefficient vector
//! `(c_0, ..., c_{d-1})` of the power basis as `v = sum c_i * p^i`. The
//! packed value doubles as the element's position in the canonical
//! enumeration of the field.
//!
//! Fields with `p^d <= 2^22` carry log/antilog tables (O(1) multiplication);
//! larger fields fall back to dense polynomial arithmetic with precomputed
//! Frobenius images of the power basis.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Hard ceiling on field size; larger fields are out of scope.
pub const MAX_FIELD_BITS: u32 = 40;
/// Fields up to this size get log/antilog tables.
pub const TABLE_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldError {
    NonPrime(u64),
    ZeroDegree,
    SizeBound { p: u64, d: u32 },
    DegreeNotDivisible { sub: u32, deg: u32 },
    NotInSubfield,
    NotPowerOfCharacteristic(u64),
    IncompatibleDegrees { src: u32, dst: u32 },
    SubfieldTooLarge { p: u64, d: u32 },
    ZeroInversion,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NonPrime(p) => write!(f, "{p} is not prime"),
            FieldError::ZeroDegree => write!(f, "extension degree must be positive"),
            FieldError::SizeBound { p, d } => {
                write!(
                    f,
                    "field F_{{{p}^{d}}} exceeds the 2^{MAX_FIELD_BITS} size bound"
                )
            }
            FieldError::DegreeNotDivisible { sub, deg } => {
                write!(f, "subfield degree {sub} does not divide {deg}")
            }
            FieldError::NotInSubfield => {
                write!(f, "element does not lie in the requested subfield")
            }
            FieldError::NotPowerOfCharacteristic(q) => {
                write!(f, "{q} is not a power of the field characteristic")
            }
            FieldError::IncompatibleDegrees { src, dst } => {
                write!(f, "no embedding: degree {src} does not divide {dst}")
            }
            FieldError::SubfieldTooLarge { p, d } => {
                write!(f, "subfield F_{{{p}^{d}}} too large to materialize")
            }
            FieldError::ZeroInversion => write!(f, "inversion of zero"),
        }
    }
}

/// A field element, packed as `sum c_i * p^i` over the power basis.
///
/// Plain value; all arithmetic goes through the owning [`FieldCtx`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(pub u64);

struct Tables {
    /// log[v] = discrete log of v to the chosen primitive base; MAX for v = 0.
    log: Vec<u32>,
    /// antilog[i] = base^i for 0 <= i < size-1.
    antilog: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldCtx(F_{{{}^{}}}, modulus {:?})",
            self.p, self.d, self.modulus
        )
    }
}

/// A concrete finite field `F_{p^d}` with its canonical modulus.
pub struct FieldCtx {
    p: u64,
    d: u32,
    size: u64,
    /// Monic modulus, little-endian, length d+1.
    modulus: Vec<u64>,
    tables: Option<Tables>,
    /// For table-less fields: frob_cols[e-1][j] = (t^j)^(p^e), e = 1..d-1.
    frob_cols: Vec<Vec<Fq>>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut k = 3u64;
    while k.checked_mul(k).map_or(false, |kk| kk <= n) {
        if n % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

/// Canonical field for `(p, d)`: repeated calls construct structurally
/// identical contexts.
pub fn make_field(p: u64, d: u32) -> Result<FieldCtx, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrime(p));
    }
    if d == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let mut size: u64 = 1;
    for _ in 0..d {
        size = size
            .checked_mul(p)
            .filter(|s| *s <= 1u64 << MAX_FIELD_BITS)
            .ok_or(FieldError::SizeBound { p, d })?;
    }
    let modulus = least_irreducible(p, d);
    let mut ctx = FieldCtx {
        p,
        d,
        size,
        modulus,
        tables: None,
        frob_cols: Vec::new(),
    };
    if size <= TABLE_LIMIT {
        ctx.build_tables();
    } else {
        ctx.build_frob_cols();
    }
    Ok(ctx)
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.d
    }
    pub fn size(&self) -> u64 {
        self.size
    }
    /// Monic modulus, little-endian coefficients, length d+1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Fq {
        Fq(0)
    }
    pub fn one(&self) -> Fq {
        Fq(1)
    }
    /// The constant `c mod p`.
    pub fn scalar(&self, c: u64) -> Fq {
        Fq(c % self.p)
    }
    /// Class of `t`, the canonical generator of the presentation.
    pub fn gen(&self) -> Fq {
        if self.d == 1 {
            // F_p = F_p[t]/(t): the generator class is 0.
            Fq(0)
        } else {
            Fq(self.p)
        }
    }

    /// Element at position `i` of the canonical enumeration (identity on the
    /// packed representation).
    pub fn element(&self, i: u64) -> Fq {
        debug_assert!(i < self.size);
        Fq(i)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.size).map(Fq)
    }

    /// Coefficient vector `(c_0, ..., c_{d-1})` of `x`.
    pub fn coeffs(&self, x: Fq) -> Vec<u64> {
        let mut v = x.0;
        let mut out = Vec::with_capacity(self.d as usize);
        for _ in 0..self.d {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// Packs a little-endian coefficient vector; entries are reduced mod p.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Fq {
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            v = v * self.p + (c % self.p);
        }
        Fq(v)
    }

    /// Integer lift of a prime-field element; `None` if `x` is not constant.
    pub fn lift(&self, x: Fq) -> Option<u64> {
        if x.0 < self.p {
            Some(x.0)
        } else {
            None
        }
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        let (mut va, mut vb) = (a.0, b.0);
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.d {
            let s = (va % self.p + vb % self.p) % self.p;
            out += s * mult;
            mult = mult.wrapping_mul(self.p);
            va /= self.p;
            vb /= self.p;
        }
        Fq(out)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        if self.p == 2 {
            return a;
        }
        let mut va = a.0;
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.d {
            let c = va % self.p;
            if c != 0 {
                out += (self.p - c) * mult;
            }
            mult = mult.wrapping_mul(self.p);
            va /= self.p;
        }
        Fq(out)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        match &self.tables {
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    return Fq(0);
                }
                let m = self.size - 1;
                let l = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % m;
                Fq(t.antilog[l as usize] as u64)
            }
            None => self.mul_dense(a, b),
        }
    }

    /// Dense polynomial multiplication; reference route kept callable next to
    /// the table route.
    pub fn mul_dense(&self, a: Fq, b: Fq) -> Fq {
        let d = self.d as usize;
        let mut da = [0u64; 64];
        let mut db = [0u64; 64];
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        let mut acc = [0u128; 128];
        for i in 0..d {
            if da[i] == 0 {
                continue;
            }
            for j in 0..d {
                acc[i + j] += (da[i] as u128) * (db[j] as u128);
            }
        }
        self.reduce(&mut acc, 2 * d - 1)
    }

    fn unpack(&self, x: Fq, out: &mut [u64; 64]) {
        let mut v = x.0;
        for slot in out.iter_mut().take(self.d as usize) {
            *slot = v % self.p;
            v /= self.p;
        }
    }

    /// Reduces `acc[0..len]` modulo the modulus and packs the result.
    fn reduce(&self, acc: &mut [u128; 128], len: usize) -> Fq {
        let d = self.d as usize;
        let p = self.p as u128;
        for i in (d..len).rev() {
            let c = acc[i] % p;
            if c != 0 {
                for j in 0..d {
                    let m = self.modulus[j] as u128;
                    if m != 0 {
                        acc[i - d + j] += c * (p - m);
                    }
                }
            }
            acc[i] = 0;
        }
        let mut v = 0u64;
        for i in (0..d).rev() {
            v = v * self.p + (acc[i] % p) as u64;
        }
        Fq(v)
    }

    pub fn inv(&self, a: Fq) -> Result<Fq, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroInversion);
        }
        match &self.tables {
            Some(t) => {
                let m = self.size - 1;
                let l = (m - t.log[a.0 as usize] as u64) % m;
                Ok(Fq(t.antilog[l as usize] as u64))
            }
            None => Ok(self.pow(a, (self.size - 2) as u128)),
        }
    }

    pub fn pow(&self, a: Fq, e: u128) -> Fq {
        if e == 0 {
            return Fq(1);
        }
        if a.0 == 0 {
            return Fq(0);
        }
        match &self.tables {
            Some(t) => {
                let m = (self.size - 1) as u128;
                let l = (t.log[a.0 as usize] as u128 * (e % m)) % m;
                Fq(t.antilog[l as usize] as u64)
            }
            None => {
                let mut base = a;
                let mut exp = e;
                let mut out = Fq(1);
                while exp > 0 {
                    if exp & 1 == 1 {
                        out = self.mul_dense(out, base);
                    }
                    base = self.mul_dense(base, base);
                    exp >>= 1;
                }
                out
            }
        }
    }

    /// `x^(p^e)`. Negative `e` wraps by the Frobenius order `d`.
    pub fn frob(&self, x: Fq, e: i64) -> Fq {
        let e = e.rem_euclid(self.d as i64) as u32;
        if e == 0 || x.0 <= 1 {
            return x;
        }
        match &self.tables {
            Some(t) => {
                let m = self.size - 1;
                let pe = pow_u64(self.p, e);
                let l = ((t.log[x.0 as usize] as u128 * pe as u128) % m as u128) as u64;
                Fq(t.antilog[l as usize] as u64)
            }
            None => {
                let cols = &self.frob_cols[(e - 1) as usize];
                let mut dx = [0u64; 64];
                self.unpack(x, &mut dx);
                let mut out = Fq(0);
                for (j, &c) in dx.iter().enumerate().take(self.d as usize) {
                    if c != 0 {
                        out = self.add(out, self.mul_small(cols[j], c));
                    }
                }
                out
            }
        }
    }

    /// Scalar multiple by a prime-field constant.
    fn mul_small(&self, x: Fq, c: u64) -> Fq {
        self.mul(x, self.scalar(c))
    }

    /// Trace from the full field down to the degree-`a` subfield:
    /// `sum_{i<d/a} x^(p^(a*i))`.
    pub fn trace_to(&self, x: Fq, a: u32) -> Result<Fq, FieldError> {
        if a == 0 || self.d % a != 0 {
            return Err(FieldError::DegreeNotDivisible {
                sub: a,
                deg: self.d,
            });
        }
        let mut acc = Fq(0);
        for i in 0..(self.d / a) {
            acc = self.add(acc, self.frob(x, (a * i) as i64));
        }
        Ok(acc)
    }

    /// Norm from the full field down to the degree-`a` subfield.
    pub fn norm_to(&self, x: Fq, a: u32) -> Result<Fq, FieldError> {
        if a == 0 || self.d % a != 0 {
            return Err(FieldError::DegreeNotDivisible {
                sub: a,
                deg: self.d,
            });
        }
        let mut acc = Fq(1);
        for i in 0..(self.d / a) {
            acc = self.mul(acc, self.frob(x, (a * i) as i64));
        }
        Ok(acc)
    }

    /// Relative trace `Tr_{F_{p^upper}/F_{p^lower}}` of an element already
    /// lying in the degree-`upper` subfield.
    pub fn trace_in(&self, x: Fq, upper: u32, lower: u32) -> Result<Fq, FieldError> {
        if upper == 0 || self.d % upper != 0 {
            return Err(FieldError::DegreeNotDivisible {
                sub: upper,
                deg: self.d,
            });
        }
        if lower == 0 || upper % lower != 0 {
            return Err(FieldError::DegreeNotDivisible {
                sub: lower,
                deg: upper,
            });
        }
        if self.frob(x, upper as i64) != x {
            return Err(FieldError::NotInSubfield);
        }
        let mut acc = Fq(0);
        for i in 0..(upper / lower) {
            acc = self.add(acc, self.frob(x, (lower * i) as i64));
        }
        Ok(acc)
    }

    /// Whether `x` lies in the degree-`a` subfield.
    pub fn in_subfield(&self, x: Fq, a: u32) -> bool {
        self.d % a == 0 && self.frob(x, a as i64) == x
    }

    /// Number of solutions `y` in this field of `y^Q - y = c`, where `Q` is a
    /// power of `p` with `F_Q` a subfield: `Q` if the relative trace of `c`
    /// to `F_Q` vanishes, else `0`.
    pub fn artin_schreier_count(&self, c: Fq, q_pow: u64) -> Result<u64, FieldError> {
        let m = power_of(self.p, q_pow).ok_or(FieldError::NotPowerOfCharacteristic(q_pow))?;
        if m == 0 || self.d % m != 0 {
            return Err(FieldError::DegreeNotDivisible {
                sub: m,
                deg: self.d,
            });
        }
        let tr = self.trace_to(c, m)?;
        Ok(if tr.0 == 0 { q_pow } else { 0 })
    }

    fn build_tables(&mut self) {
        let size = self.size as usize;
        let base = self.least_primitive();
        let mut log = vec![u32::MAX; size];
        let mut antilog = vec![0u32; size - 1];
        let mut acc = Fq(1);
        for i in 0..(size - 1) {
            antilog[i] = acc.0 as u32;
            debug_assert_eq!(log[acc.0 as usize], u32::MAX, "generator order too small");
            log[acc.0 as usize] = i as u32;
            acc = self.mul_dense(acc, base);
        }
        debug_assert_eq!(acc, Fq(1));
        self.tables = Some(Tables { log, antilog });
    }

    fn build_frob_cols(&mut self) {
        let d = self.d as usize;
        let mut cols = Vec::with_capacity(d.saturating_sub(1));
        for e in 1..self.d {
            let w = self.pow(Fq(self.p), pow_u64(self.p, e) as u128);
            let mut col = Vec::with_capacity(d);
            let mut acc = Fq(1);
            for _ in 0..d {
                col.push(acc);
                acc = self.mul_dense(acc, w);
            }
            cols.push(col);
        }
        self.frob_cols = cols;
    }

    /// Lexicographically least primitive element (deterministic).
    fn least_primitive(&self) -> Fq {
        let order = self.size - 1;
        let primes = prime_factors(order);
        'outer: for v in 1..self.size {
            let x = Fq(v);
            for &ell in &primes {
                if self.pow_dense_u64(x, order / ell) == Fq(1) {
                    continue 'outer;
                }
            }
            return x;
        }
        unreachable!("no primitive element found");
    }

    fn pow_dense_u64(&self, a: Fq, e: u64) -> Fq {
        let mut base = a;
        let mut exp = e;
        let mut out = Fq(1);
        while exp > 0 {
            if exp & 1 == 1 {
                out = self.mul_dense(out, base);
            }
            base = self.mul_dense(base, base);
            exp >>= 1;
        }
        out
    }
}

fn pow_u64(p: u64, e: u32) -> u64 {
    let mut out = 1u64;
    for _ in 0..e {
        out *= p;
    }
    out
}

/// If `q = p^m` for some `m >= 0`, returns `m`.
fn power_of(p: u64, q: u64) -> Option<u32> {
    let mut v = q;
    let mut m = 0u32;
    while v > 1 {
        if v % p != 0 {
            return None;
        }
        v /= p;
        m += 1;
    }
    if q >= 1 {
        Some(m)
    } else {
        None
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2u64;
    while k.checked_mul(k).map_or(false, |kk| kk <= n) {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1 + (k & 1);
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// Canonical modulus scan
// ---------------------------------------------------------------------------

/// Lexicographically least monic irreducible of degree `d` over `F_p`,
/// comparing `(c_0, c_1, ..., c_{d-1})` with `c_0` most significant.
fn least_irreducible(p: u64, d: u32) -> Vec<u64> {
    let d = d as usize;
    let total = {
        let mut t = 1u64;
        for _ in 0..d {
            t = t.saturating_mul(p);
        }
        t
    };
    for u in 0..total {
        // c_0 is the most significant digit of u, so ascending u is ascending
        // lex on (c_0, c_1, ...).
        let mut coeffs = vec![0u64; d + 1];
        coeffs[d] = 1;
        let mut v = u;
        for j in 0..d {
            coeffs[d - 1 - j] = v % p;
            v /= p;
        }
        if poly_is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomial of degree {d} exists over F_{p}");
}

/// Deterministic irreducibility test: `t^(p^d) == t (mod f)` and
/// `gcd(t^(p^(d/l)) - t, f) = 1` for every prime `l | d`.
fn poly_is_irreducible(p: u64, f: &[u64]) -> bool {
    let d = (f.len() - 1) as u32;
    if d == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = [0, 1];
    let xpd = poly_pow_p_iterated(p, &x, d, f);
    if !poly_mod_cmp(&xpd, &x) {
        return false;
    }
    for ell in prime_factors(d as u64) {
        let e = d / ell as u32;
        let xpe = poly_pow_p_iterated(p, &x, e, f);
        let diff = poly_sub(p, &xpe, &x);
        let g = poly_gcd(p, &diff, f);
        if poly_deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

fn poly_mod_cmp(a: &[u64], b: &[u64]) -> bool {
    let da = poly_deg(a);
    let db = poly_deg(b);
    if da != db {
        return false;
    }
    match da {
        None => true,
        Some(d) => a[..=d] == b[..=d],
    }
}

fn poly_deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn poly_sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    out
}

fn poly_mulmod(p: u64, a: &[u64], b: &[u64], f: &[u64]) -> Vec<u64> {
    let d = f.len() - 1;
    let mut acc = vec![0u128; 2 * d];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += (x as u128) * (y as u128);
        }
    }
    let pp = p as u128;
    for i in (d..2 * d).rev() {
        let c = acc[i] % pp;
        if c != 0 {
            for j in 0..d {
                acc[i - d + j] += c * (pp - f[j] as u128 % pp);
            }
        }
        acc[i] = 0;
    }
    (0..d).map(|i| (acc[i] % pp) as u64).collect()
}

/// `a^(p^e) mod f` by iterated p-th powers.
fn poly_pow_p_iterated(p: u64, a: &[u64], e: u32, f: &[u64]) -> Vec<u64> {
    let mut cur: Vec<u64> = a.to_vec();
    for _ in 0..e {
        cur = poly_powmod(p, &cur, p, f);
    }
    cur
}

fn poly_powmod(p: u64, a: &[u64], mut e: u64, f: &[u64]) -> Vec<u64> {
    let d = f.len() - 1;
    let mut out = vec![0u64; d];
    out[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            out = poly_mulmod(p, &out, &base, f);
        }
        base = poly_mulmod(p, &base, &base, f);
        e >>= 1;
    }
    out
}

fn poly_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    loop {
        match poly_deg(&y) {
            None => return x,
            Some(dy) => {
                // x mod y
                let lead_inv = mod_inv(y[dy], p);
                while let Some(dx) = poly_deg(&x) {
                    if dx < dy {
                        break;
                    }
                    let c = (x[dx] * lead_inv) % p;
                    for j in 0..=dy {
                        x[dx - dy + j] = (x[dx - dy + j] + p - (c * y[j]) % p) % p;
                    }
                }
                core::mem::swap(&mut x, &mut y);
            }
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p prime and small.
    let mut out = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            out = out * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Embeddings and subfield views
// ---------------------------------------------------------------------------

/// A ring embedding `F_{p^a} -> F_{p^(ab)}` sending the canonical generator
/// of the source to the lexicographically least root of the source modulus in
/// the target (comparing coefficient tuples `(c_0, ...)` as above).
pub struct Embedding {
    src_d: u32,
    dst_d: u32,
    /// powers[j] = image of t^j, j < src_d.
    powers: Vec<Fq>,
}

impl Embedding {
    pub fn new(src: &FieldCtx, dst: &FieldCtx) -> Result<Embedding, FieldError> {
        if src.p != dst.p {
            return Err(FieldError::IncompatibleDegrees {
                src: src.d,
                dst: dst.d,
            });
        }
        if dst.d % src.d != 0 {
            return Err(FieldError::IncompatibleDegrees {
                src: src.d,
                dst: dst.d,
            });
        }
        if src.size > TABLE_LIMIT {
            return Err(FieldError::SubfieldTooLarge { p: src.p, d: src.d });
        }
        if src.d == 1 {
            return Ok(Embedding {
                src_d: 1,
                dst_d: dst.d,
                powers: vec![Fq(1)],
            });
        }
        let root = least_root(src, dst)?;
        let mut powers = Vec::with_capacity(src.d as usize);
        let mut acc = Fq(1);
        for _ in 0..src.d {
            powers.push(acc);
            acc = dst.mul(acc, root);
        }
        Ok(Embedding {
            src_d: src.d,
            dst_d: dst.d,
            powers,
        })
    }

    pub fn src_degree(&self) -> u32 {
        self.src_d
    }
    pub fn dst_degree(&self) -> u32 {
        self.dst_d
    }

    pub fn apply(&self, src: &FieldCtx, dst: &FieldCtx, x: Fq) -> Fq {
        debug_assert_eq!(src.d, self.src_d);
        debug_assert_eq!(dst.d, self.dst_d);
        let mut v = x.0;
        let mut out = Fq(0);
        for j in 0..self.src_d as usize {
            let c = v % src.p;
            v /= src.p;
            if c != 0 {
                out = dst.add(out, dst.mul_small(self.powers[j], c));
            }
        }
        out
    }
}

/// Lexicographic key: packs `(c_0, ..., c_{d-1})` with `c_0` most significant,
/// so numeric order on keys equals lex order on coefficient tuples.
fn lex_key(ctx: &FieldCtx, x: Fq) -> u64 {
    let mut v = x.0;
    let mut key = 0u64;
    for _ in 0..ctx.d {
        key = key * ctx.p + (v % ctx.p);
        v /= ctx.p;
    }
    key
}

/// Lexicographically least root of `src.modulus` inside `dst`, found by
/// scanning the degree-`src.d` subfield (kernel of `Frob^a - id`).
fn least_root(src: &FieldCtx, dst: &FieldCtx) -> Result<Fq, FieldError> {
    let a = src.d;
    let basis = subfield_basis(dst, a);
    debug_assert_eq!(basis.len(), a as usize);
    let mut best: Option<(u64, Fq)> = None;
    let count = src.size;
    for mut sel in 0..count {
        let mut cand = Fq(0);
        for b in &basis {
            let c = sel % src.p;
            sel /= src.p;
            if c != 0 {
                cand = dst.add(cand, dst.mul_small(*b, c));
            }
        }
        // Horner evaluation of the source modulus at cand.
        let mut val = Fq(1);
        for i in (0..src.d as usize).rev() {
            val = dst.mul(val, cand);
            val = dst.add(val, dst.scalar(src.modulus[i]));
        }
        if val.0 == 0 {
            let key = lex_key(dst, cand);
            if best.map_or(true, |(bk, _)| key < bk) {
                best = Some((key, cand));
            }
        }
    }
    best.map(|(_, r)| r).ok_or(FieldError::NotInSubfield)
}

/// F_p-basis of the degree-`a` subfield of `ctx` (kernel of `x -> x^(p^a) - x`).
fn subfield_basis(ctx: &FieldCtx, a: u32) -> Vec<Fq> {
    let d = ctx.d as usize;
    let p = ctx.p;
    // rows[i][j]: coefficient i of (frob(t^j, a) - t^j).
    let mut mat = vec![vec![0u64; d]; d];
    for j in 0..d {
        let tj = ctx.pow(Fq(ctx.p), j as u128);
        let img = ctx.sub(ctx.frob(tj, a as i64), tj);
        let coeffs = ctx.coeffs(img);
        for i in 0..d {
            mat[i][j] = coeffs[i];
        }
    }
    // Gaussian elimination over F_p; track pivot columns.
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0usize;
    for col in 0..d {
        let Some(r) = (row..d).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(row, r);
        let inv = mod_inv(mat[row][col], p);
        for j in 0..d {
            mat[row][j] = mat[row][j] * inv % p;
        }
        for r2 in 0..d {
            if r2 != row && mat[r2][col] != 0 {
                let c = mat[r2][col];
                for j in 0..d {
                    mat[r2][j] = (mat[r2][j] + p - c * mat[row][j] % p) % p;
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == d {
            break;
        }
    }
    let pivots: alloc::collections::BTreeSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..d).filter(|c| !pivots.contains(c)) {
        let mut vecf = vec![0u64; d];
        vecf[free] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            let c = mat[r][free];
            if c != 0 {
                vecf[pc] = (p - c) % p;
            }
        }
        basis.push(ctx.from_coeffs(&vecf));
    }
    debug_assert_eq!(basis.len(), a as usize);
    basis
}

/// The degree-`a` subfield of an ambient field, materialized: element `i` of
/// the canonical `F_{p^a}` enumeration mapped into the ambient, plus the
/// reverse index.
pub struct SubfieldView {
    pub deg: u32,
    small: FieldCtx,
    elems: Vec<Fq>,
    index: BTreeMap<u64, u32>,
}

impl SubfieldView {
    pub fn new(ambient: &FieldCtx, deg: u32) -> Result<SubfieldView, FieldError> {
        if deg == 0 || ambient.d % deg != 0 {
            return Err(FieldError::DegreeNotDivisible {
                sub: deg,
                deg: ambient.d,
            });
        }
        let small = make_field(ambient.p, deg)?;
        if small.size > TABLE_LIMIT {
            return Err(FieldError::SubfieldTooLarge {
                p: ambient.p,
                d: deg,
            });
        }
        let emb = Embedding::new(&small, ambient)?;
        let mut elems = Vec::with_capacity(small.size as usize);
        let mut index = BTreeMap::new();
        for i in 0..small.size {
            let img = emb.apply(&small, ambient, Fq(i));
            index.insert(img.0, i as u32);
            elems.push(img);
        }
        Ok(SubfieldView {
            deg,
            small,
            elems,
            index,
        })
    }

    /// Identity view when the ambient field itself is the subfield: element
    /// `i` maps to itself, matching the plain field enumeration.
    pub fn identity(ambient: &FieldCtx) -> Result<SubfieldView, FieldError> {
        if ambient.size > TABLE_LIMIT {
            return Err(FieldError::SubfieldTooLarge {
                p: ambient.p,
                d: ambient.d,
            });
        }
        let small = make_field(ambient.p, ambient.d)?;
        let mut index = BTreeMap::new();
        let elems: Vec<Fq> = (0..ambient.size).map(Fq).collect();
        for (i, e) in elems.iter().enumerate() {
            index.insert(e.0, i as u32);
        }
        Ok(SubfieldView {
            deg: ambient.d,
            small,
            elems,
            index,
        })
    }

    pub fn small_ctx(&self) -> &FieldCtx {
        &self.small
    }
    pub fn len(&self) -> u64 {
        self.small.size()
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    /// Ambient image of canonical element `i`.
    pub fn elem(&self, i: u64) -> Fq {
        self.elems[i as usize]
    }
    pub fn elems(&self) -> &[Fq] {
        &self.elems
    }
    /// Canonical index of an ambient element, if it lies in the subfield.
    pub fn index_of(&self, x: Fq) -> Option<u32> {
        self.index.get(&x.0).copied()
    }
    pub fn contains(&self, x: Fq) -> bool {
        self.index.contains_key(&x.0)
    }
}

/// One-off embedding between canonical fields. For a compatible system over
/// several subfields, use [`Tower`]: per-pair least-root maps do not compose
/// transitively in general.
pub fn embed(src: &FieldCtx, dst: &FieldCtx, x: Fq) -> Result<Fq, FieldError> {
    Embedding::new(src, dst).map(|e| e.apply(src, dst, x))
}

/// A coherent family of embeddings between the canonical fields
/// `F_{p^a}` for divisors `a` of a fixed top degree.
///
/// Every map is the composite `down_b . up_a` of the canonical least-root
/// embeddings into the top field, so squares commute: within one tower,
/// `embed(embed(x, a->b), b->c) = embed(x, a->c)` holds for all chains.
pub struct Tower {
    top: FieldCtx,
    views: BTreeMap<u32, SubfieldView>,
}

impl Tower {
    pub fn new(p: u64, top_degree: u32) -> Result<Tower, FieldError> {
        let top = make_field(p, top_degree)?;
        let mut views = BTreeMap::new();
        for a in 1..=top_degree {
            if top_degree % a != 0 {
                continue;
            }
            let mut sz = 1u64;
            let mut fits = true;
            for _ in 0..a {
                sz = sz.saturating_mul(p);
                if sz > TABLE_LIMIT {
                    fits = false;
                    break;
                }
            }
            if !fits {
                continue;
            }
            let view = if a == top_degree {
                SubfieldView::identity(&top)?
            } else {
                SubfieldView::new(&top, a)?
            };
            views.insert(a, view);
        }
        Ok(Tower { top, views })
    }

    pub fn top(&self) -> &FieldCtx {
        &self.top
    }

    pub fn view(&self, deg: u32) -> Result<&SubfieldView, FieldError> {
        self.views.get(&deg).ok_or(FieldError::SubfieldTooLarge {
            p: self.top.p,
            d: deg,
        })
    }

    /// Image in the top field of canonical `F_{p^deg}` element `x`.
    pub fn up(&self, x: Fq, deg: u32) -> Result<Fq, FieldError> {
        if deg == self.top.d {
            return Ok(x);
        }
        Ok(self.view(deg)?.elem(x.0))
    }

    /// Coherent embedding between canonical subfield presentations.
    pub fn embed_between(&self, x: Fq, from_deg: u32, to_deg: u32) -> Result<Fq, FieldError> {
        if to_deg % from_deg != 0 {
            return Err(FieldError::IncompatibleDegrees {
                src: from_deg,
                dst: to_deg,
            });
        }
        if from_deg == to_deg {
            return Ok(x);
        }
        let lifted = self.up(x, from_deg)?;
        if to_deg == self.top.d {
            return Ok(lifted);
        }
        self.view(to_deg)?
            .index_of(lifted)
            .map(|i| Fq(i as u64))
            .ok_or(FieldError::NotInSubfield)
    }
}
