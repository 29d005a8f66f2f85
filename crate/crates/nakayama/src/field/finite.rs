use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};
use rand::Rng;

use super::{Field, FieldError, FieldSpec};

const MAX_DEG: usize = 4;

/// Shared arithmetic data for one finite field, interned for the life of
/// the process so elements can hold a `&'static` pointer to it.
#[derive(Debug, PartialEq, Eq)]
pub struct GfContext {
    p: u64,
    k: usize,
    /// Monic modulus, lowest degree first, length `k + 1`.
    modulus: Vec<u64>,
    spec: FieldSpec,
}

impl GfContext {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Interned context for a validated finite-field spec.
    pub fn get(spec: &FieldSpec) -> Result<&'static GfContext, FieldError> {
        let (p, modulus) = match spec {
            FieldSpec::Rationals => return Err(FieldError::Unsupported(spec.clone())),
            FieldSpec::Prime { p } => (*p, vec![0, 1]),
            FieldSpec::Extension { p, min_poly } => (*p, min_poly.clone()),
        };
        static REGISTRY: OnceLock<Mutex<Vec<&'static GfContext>>> = OnceLock::new();
        let registry = REGISTRY.get_or_init(|| Mutex::new(Vec::new()));
        let mut guard = registry.lock().expect("field registry poisoned");
        if let Some(ctx) = guard.iter().find(|c| &c.spec == spec) {
            return Ok(ctx);
        }
        spec.validate()?;
        let ctx: &'static GfContext = Box::leak(Box::new(GfContext {
            p,
            k: modulus.len() - 1,
            modulus,
            spec: spec.clone(),
        }));
        guard.push(ctx);
        Ok(ctx)
    }

    fn reduce_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn element(&'static self, coeffs: [u64; MAX_DEG]) -> Gf {
        Gf::El(self, coeffs)
    }

    fn mul(&self, a: &[u64; MAX_DEG], b: &[u64; MAX_DEG]) -> [u64; MAX_DEG] {
        let p = self.p;
        let k = self.k;
        if k == 1 {
            return [a[0] * b[0] % p, 0, 0, 0];
        }
        let mut prod = [0u64; 2 * MAX_DEG - 1];
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let sub = c * self.modulus[i] % p;
                prod[d - k + i] = (prod[d - k + i] + p - sub) % p;
            }
        }
        let mut out = [0u64; MAX_DEG];
        out[..k].copy_from_slice(&prod[..k]);
        out
    }
}

/// Element of a prime field or of a simple extension `F_p[a]/(m(a))`.
///
/// `Int` holds an integer constant not yet attached to a field (what
/// `zero()` and `one()` produce); it is reduced as soon as it meets a
/// tagged value.
#[derive(Clone, Copy)]
pub enum Gf {
    Int(i64),
    El(&'static GfContext, [u64; MAX_DEG]),
}

impl Gf {
    /// `sum coeffs[i] * a^i` in the field described by `spec`.
    pub fn new(spec: &FieldSpec, coeffs: &[i64]) -> Result<Self, FieldError> {
        let ctx = GfContext::get(spec)?;
        let gen = Gf::generator_of(ctx);
        let mut acc = ctx.element([0; MAX_DEG]);
        let mut power = ctx.element([1, 0, 0, 0]);
        for &x in coeffs {
            acc = acc + power * ctx.element([ctx.reduce_int(x), 0, 0, 0]);
            power = power * gen;
        }
        Ok(acc)
    }

    fn generator_of(ctx: &'static GfContext) -> Gf {
        if ctx.k == 1 {
            return ctx.element([0, 0, 0, 0]);
        }
        ctx.element([0, 1, 0, 0])
    }

    /// The class of `a` in `F_p[a]/(m)` (zero for prime fields, which have
    /// no adjoined generator).
    pub fn generator(spec: &FieldSpec) -> Result<Self, FieldError> {
        Ok(Gf::generator_of(GfContext::get(spec)?))
    }

    pub fn context(&self) -> Option<&'static GfContext> {
        match self {
            Gf::Int(_) => None,
            Gf::El(ctx, _) => Some(ctx),
        }
    }

    /// Coefficients over `F_p` in the power basis, length = extension degree.
    pub fn coeffs_in(&self, spec: &FieldSpec) -> Result<Vec<u64>, FieldError> {
        let ctx = GfContext::get(spec)?;
        match self.attach(ctx) {
            Gf::El(_, c) => Ok(c[..ctx.k].to_vec()),
            Gf::Int(_) => unreachable!(),
        }
    }

    /// Re-tag a value into `spec`; prime-field values embed into
    /// extensions of the same characteristic.
    pub fn embed(&self, spec: &FieldSpec) -> Result<Self, FieldError> {
        let ctx = GfContext::get(spec)?;
        match self {
            Gf::Int(n) => Ok(ctx.element([ctx.reduce_int(*n), 0, 0, 0])),
            Gf::El(src, c) => {
                if src.p != ctx.p {
                    return Err(FieldError::Mismatch(src.spec.clone(), spec.clone()));
                }
                if std::ptr::eq(*src, ctx) {
                    return Ok(*self);
                }
                if src.k == 1 {
                    return Ok(ctx.element([c[0], 0, 0, 0]));
                }
                if c[1..].iter().all(|&x| x == 0) && ctx.k == 1 {
                    return Ok(ctx.element([c[0], 0, 0, 0]));
                }
                Err(FieldError::Mismatch(src.spec.clone(), spec.clone()))
            }
        }
    }

    fn attach(&self, ctx: &'static GfContext) -> Gf {
        match self {
            Gf::Int(n) => ctx.element([ctx.reduce_int(*n), 0, 0, 0]),
            el => *el,
        }
    }

    /// Frobenius endomorphism `x -> x^p`.
    pub fn frobenius(&self) -> Self {
        match self {
            Gf::Int(_) => *self,
            Gf::El(ctx, _) => self.pow(ctx.p),
        }
    }

    fn binary(self, rhs: Gf, int_op: fn(i64, i64) -> Option<i64>, el_op: fn(&'static GfContext, &[u64; MAX_DEG], &[u64; MAX_DEG]) -> [u64; MAX_DEG]) -> Gf {
        match (self, rhs) {
            (Gf::Int(a), Gf::Int(b)) => Gf::Int(int_op(a, b).expect("untagged finite-field constant overflowed")),
            (Gf::El(ctx, a), other) | (other, Gf::El(ctx, a)) if matches!(other, Gf::Int(_)) => {
                let Gf::El(_, b) = other.attach(ctx) else { unreachable!() };
                // Keep operand order for non-commutative-looking callers (sub).
                if matches!(self, Gf::El(..)) {
                    Gf::El(ctx, el_op(ctx, &a, &b))
                } else {
                    Gf::El(ctx, el_op(ctx, &b, &a))
                }
            }
            (Gf::El(c1, a), Gf::El(c2, b)) => {
                assert!(std::ptr::eq(c1, c2), "mixed finite fields: {} and {}", c1.spec, c2.spec);
                Gf::El(c1, el_op(c1, &a, &b))
            }
            _ => unreachable!(),
        }
    }
}

fn el_add(ctx: &'static GfContext, a: &[u64; MAX_DEG], b: &[u64; MAX_DEG]) -> [u64; MAX_DEG] {
    let mut out = [0u64; MAX_DEG];
    for i in 0..ctx.k {
        out[i] = (a[i] + b[i]) % ctx.p;
    }
    out
}

fn el_sub(ctx: &'static GfContext, a: &[u64; MAX_DEG], b: &[u64; MAX_DEG]) -> [u64; MAX_DEG] {
    let mut out = [0u64; MAX_DEG];
    for i in 0..ctx.k {
        out[i] = (a[i] + ctx.p - b[i]) % ctx.p;
    }
    out
}

fn el_mul(ctx: &'static GfContext, a: &[u64; MAX_DEG], b: &[u64; MAX_DEG]) -> [u64; MAX_DEG] {
    ctx.mul(a, b)
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Gf::Int(a), Gf::Int(b)) => a == b,
            (Gf::El(c1, a), Gf::El(c2, b)) => std::ptr::eq(*c1, *c2) && a == b,
            (Gf::El(ctx, a), int @ Gf::Int(_)) | (int @ Gf::Int(_), Gf::El(ctx, a)) => {
                matches!(int.attach(ctx), Gf::El(_, b) if &b == a)
            }
        }
    }
}

impl Eq for Gf {}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gf::Int(n) => write!(f, "{n}"),
            Gf::El(ctx, c) => {
                if ctx.k == 1 {
                    return write!(f, "{}", c[0]);
                }
                let mut terms = Vec::new();
                for d in (0..ctx.k).rev() {
                    let coef = c[d];
                    if coef == 0 {
                        continue;
                    }
                    let mono = match d {
                        0 => String::new(),
                        1 => "a".to_string(),
                        _ => format!("a^{d}"),
                    };
                    terms.push(match (coef, d) {
                        (_, 0) => coef.to_string(),
                        (1, _) => mono,
                        _ => format!("{coef}{mono}"),
                    });
                }
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", terms.join("+"))
                }
            }
        }
    }
}

impl Zero for Gf {
    fn zero() -> Self {
        Gf::Int(0)
    }

    fn is_zero(&self) -> bool {
        match self {
            Gf::Int(n) => *n == 0,
            Gf::El(_, c) => c.iter().all(|&x| x == 0),
        }
    }
}

impl One for Gf {
    fn one() -> Self {
        Gf::Int(1)
    }
}

impl Add for Gf {
    type Output = Gf;
    fn add(self, rhs: Gf) -> Gf {
        self.binary(rhs, i64::checked_add, el_add)
    }
}

impl Sub for Gf {
    type Output = Gf;
    fn sub(self, rhs: Gf) -> Gf {
        self.binary(rhs, i64::checked_sub, el_sub)
    }
}

impl Mul for Gf {
    type Output = Gf;
    fn mul(self, rhs: Gf) -> Gf {
        self.binary(rhs, i64::checked_mul, el_mul)
    }
}

impl Neg for Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        match self {
            Gf::Int(n) => Gf::Int(-n),
            Gf::El(ctx, c) => Gf::El(ctx, el_sub(ctx, &[0; MAX_DEG], &c)),
        }
    }
}

impl Div for Gf {
    type Output = Gf;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Gf) -> Gf {
        self * rhs.inverse().expect("division by zero in finite field")
    }
}

impl Field for Gf {
    fn supports(spec: &FieldSpec) -> bool {
        !matches!(spec, FieldSpec::Rationals)
    }

    fn from_int(spec: &FieldSpec, n: i64) -> Self {
        let ctx = GfContext::get(spec).expect("invalid finite field spec");
        ctx.element([ctx.reduce_int(n), 0, 0, 0])
    }

    fn parse(spec: &FieldSpec, text: &str) -> Result<Self, FieldError> {
        let ctx = GfContext::get(spec)?;
        parse_residue(ctx, text)
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match self {
            Gf::Int(1) => Some(Gf::Int(1)),
            Gf::Int(-1) => Some(Gf::Int(-1)),
            Gf::Int(n) => panic!("inverse of untagged constant {n} needs a field context"),
            Gf::El(ctx, _) => {
                let order = (ctx.p as u128).pow(ctx.k as u32);
                Some(pow_u128(*self, order - 2))
            }
        }
    }

    fn field_of(&self) -> Option<FieldSpec> {
        self.context().map(|c| c.spec.clone())
    }

    fn sample<R: Rng + ?Sized>(spec: &FieldSpec, rng: &mut R) -> Self {
        let ctx = GfContext::get(spec).expect("invalid finite field spec");
        let mut c = [0u64; MAX_DEG];
        for x in c.iter_mut().take(ctx.k) {
            *x = rng.gen_range(0..ctx.p);
        }
        ctx.element(c)
    }

    fn enumerate(spec: &FieldSpec, limit: u128) -> Option<Vec<Self>> {
        let ctx = GfContext::get(spec).ok()?;
        let order = (ctx.p as u128).checked_pow(ctx.k as u32)?;
        if order > limit {
            return None;
        }
        let mut out = Vec::with_capacity(order as usize);
        for mut idx in 0..order {
            let mut c = [0u64; MAX_DEG];
            for x in c.iter_mut().take(ctx.k) {
                *x = (idx % ctx.p as u128) as u64;
                idx /= ctx.p as u128;
            }
            out.push(ctx.element(c));
        }
        Some(out)
    }
}

fn pow_u128(base: Gf, mut e: u128) -> Gf {
    let mut acc = Gf::one();
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b;
        }
        b = b * b;
        e >>= 1;
    }
    acc
}

/// Parses an integer, a fraction `n/m`, or a polynomial in `a` such as
/// `2a^2+a+1`.
fn parse_residue(ctx: &'static GfContext, text: &str) -> Result<Gf, FieldError> {
    let err = |reason: &str| FieldError::Parse { text: text.to_string(), reason: reason.to_string() };
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty"));
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('/') {
            terms.push(std::mem::take(&mut current));
        }
        current.push(ch);
    }
    terms.push(current);
    let gen = Gf::generator_of(ctx);
    let mut acc = ctx.element([0; MAX_DEG]);
    for term in terms {
        let (negative, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term.strip_prefix('+').unwrap_or(&term)),
        };
        let (coef_text, exponent) = match body.split_once('a') {
            None => (body, 0u64),
            Some((c, rest)) => {
                if ctx.k == 1 {
                    return Err(err("prime field has no generator 'a'"));
                }
                let e = match rest {
                    "" => 1,
                    r => r
                        .strip_prefix('^')
                        .and_then(|x| x.parse::<u64>().ok())
                        .ok_or_else(|| err("bad exponent"))?,
                };
                (c.trim_end_matches('*'), e)
            }
        };
        let coef = if coef_text.is_empty() {
            if exponent == 0 {
                return Err(err("empty term"));
            }
            ctx.element([1, 0, 0, 0])
        } else {
            parse_fraction(ctx, coef_text).ok_or_else(|| err("bad coefficient"))??
        };
        let value = coef * gen_pow(ctx, gen, exponent);
        acc = if negative { acc - value } else { acc + value };
    }
    Ok(acc)
}

fn gen_pow(ctx: &'static GfContext, gen: Gf, e: u64) -> Gf {
    if e == 0 {
        return ctx.element([1, 0, 0, 0]);
    }
    gen.pow(e)
}

fn parse_fraction(ctx: &'static GfContext, text: &str) -> Option<Result<Gf, FieldError>> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.parse::<i64>().ok()?, d.parse::<i64>().ok()?),
        None => (text.parse::<i64>().ok()?, 1),
    };
    let n = ctx.element([ctx.reduce_int(num), 0, 0, 0]);
    let d = ctx.element([ctx.reduce_int(den), 0, 0, 0]);
    Some(match d.inverse() {
        Some(inv) => Ok(n * inv),
        None => Err(FieldError::DivisionByZero),
    })
}

/// Deterministic trial division, adequate below 2^31.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Rabin's irreducibility test for a monic polynomial over `F_p`
/// (coefficients lowest degree first).
pub fn is_irreducible(p: u64, poly: &[u64]) -> bool {
    let k = poly.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    // x^(p^j) mod poly for j = 1..=k
    let mut powers = Vec::with_capacity(k);
    let mut h = x.clone();
    for _ in 0..k {
        h = poly_powmod(&h, p, poly, p);
        powers.push(h.clone());
    }
    if trim(poly_sub(&powers[k - 1], &x, p)) != Vec::<u64>::new() {
        return false;
    }
    for r in prime_divisors(k as u64) {
        let j = k / r as usize;
        let diff = trim(poly_sub(&powers[j - 1], &x, p));
        let g = poly_gcd(diff, trim(poly.to_vec()), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect()
}

fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_pow(m[dm], p - 2, p);
    a = trim(a);
    while a.len() > dm {
        let da = a.len() - 1;
        let c = a[da] * lead_inv % p;
        for i in 0..=dm {
            let sub = c * m[i] % p;
            a[da - dm + i] = (a[da - dm + i] + p - sub) % p;
        }
        a = trim(a);
    }
    a
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(prod, m, p)
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base.to_vec(), m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldSpec {
        FieldSpec::extension(2, vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
    }

    #[test]
    fn irreducibility_matches_exhaustive_search() {
        for p in [2u64, 3, 5] {
            for k in 2..=4usize {
                let total = p.pow(k as u32);
                for idx in 0..total {
                    let mut poly: Vec<u64> = (0..k).map(|i| (idx / p.pow(i as u32)) % p).collect();
                    poly.push(1);
                    assert_eq!(
                        is_irreducible(p, &poly),
                        brute_irreducible(p, &poly),
                        "p={p} poly={poly:?}"
                    );
                }
            }
        }
    }

    fn brute_irreducible(p: u64, poly: &[u64]) -> bool {
        let k = poly.len() - 1;
        for d in 1..=k / 2 {
            for idx in 0..p.pow(d as u32) {
                let mut f: Vec<u64> = (0..d).map(|i| (idx / p.pow(i as u32)) % p).collect();
                f.push(1);
                if poly_rem(poly.to_vec(), &f, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(FieldSpec::prime(4), Err(FieldError::NotPrime(4)));
        assert!(matches!(FieldSpec::extension(2, vec![1, 0, 1]), Err(FieldError::Reducible(..))));
        assert!(matches!(FieldSpec::extension(2, vec![1, 1]), Err(FieldError::BadMinPoly(..))));
        assert!(FieldSpec::prime(1 << 31).is_err());
    }

    #[test]
    fn f4_arithmetic() {
        let spec = f4();
        let a = Gf::generator(&spec).unwrap();
        let one = Gf::from_int(&spec, 1);
        // a^2 = a + 1
        assert_eq!(a * a, a + one);
        assert_eq!(a.pow(3), one);
        assert_eq!(a.inverse().unwrap(), a + one);
        assert_eq!(format!("{}", a * a), "a+1");
        assert_eq!(Gf::parse(&spec, "a^2").unwrap(), a + one);
        assert_eq!(Gf::parse(&spec, "3").unwrap(), one);
    }

    #[test]
    fn residues_reduce() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(Gf::parse(&f3, "4").unwrap(), Gf::from_int(&f3, 1));
        assert_eq!(Gf::parse(&f3, "-1").unwrap(), Gf::from_int(&f3, 2));
        assert_eq!(Gf::parse(&f3, "1/2").unwrap(), Gf::from_int(&f3, 2));
        assert!(Gf::parse(&f3, "1/3").is_err());
        assert_eq!(format!("{}", Gf::parse(&f3, "4").unwrap()), "1");
    }

    #[test]
    fn untagged_constants_mix_with_tagged() {
        let f5 = FieldSpec::prime(5).unwrap();
        let three = Gf::from_int(&f5, 3);
        assert_eq!(Gf::one() + three, Gf::from_int(&f5, 4));
        assert_eq!(Gf::zero() - three, Gf::from_int(&f5, 2));
        assert_eq!(Gf::Int(6), Gf::from_int(&f5, 1));
        assert!((three * three.inverse().unwrap() - Gf::one()).is_zero());
    }

    #[test]
    fn frobenius_is_additive() {
        let spec = FieldSpec::extension(3, vec![1, 0, 1]).unwrap();
        let all = Gf::enumerate(&spec, 100).unwrap();
        assert_eq!(all.len(), 9);
        for &x in &all {
            for &y in &all {
                assert_eq!((x + y).frobenius(), x.frobenius() + y.frobenius());
            }
        }
    }

    #[test]
    fn embedding_prime_into_extension() {
        let f2 = FieldSpec::prime(2).unwrap();
        let one = Gf::from_int(&f2, 1);
        let e = one.embed(&f4()).unwrap();
        assert_eq!(e, Gf::from_int(&f4(), 1));
        assert_eq!(Gf::generator(&f4()).unwrap().coeffs_in(&f4()).unwrap(), vec![0, 1]);
    }
}
