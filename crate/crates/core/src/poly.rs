//! Sparse exact polynomials over `F_p`, and factored witnesses in the ring
//! `F_p[x_1..x_d, y_1..y_d]`.
//!
//! In the binomial edge ring, variable index `i - 1` is `x_i` and `d + i - 1`
//! is `y_i`. Coefficients are reduced mod `p` on every operation; exponents
//! are never reduced.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest `d * (p - 1)` accepted by [`witness_power_outside_frobenius`].
pub const FROBENIUS_GUARD: u64 = 64;

/// The field `Z / pZ` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, value: i64) -> u32 {
        value.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p as u64 - 2)
    }

    /// Representative in `(-p/2, p/2]`, for display.
    pub fn signed(&self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// Exponent vector. The derived ordering is lexicographic on exponents and
/// only used for storage; term orders live in [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn max_exponent(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Monomial in `nvars + shift` variables with `shift` leading zero exponents.
    pub fn shifted(&self, shift: usize) -> Monomial {
        let mut e = vec![0; shift];
        e.extend_from_slice(&self.0);
        Monomial(e)
    }

    fn fmt_with(&self, name: &dyn Fn(usize) -> String) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    name(i)
                } else {
                    format!("{}^{}", name(i), e)
                }
            })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable is larger
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Term orders. `Elimination { block }` compares the first `block` variables
/// by degrevlex and breaks ties by degrevlex on the rest, so it eliminates
/// the first block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    Elimination {
        block: usize,
    },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => degrevlex(&a.0, &b.0),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Elimination { block } => degrevlex(&a.0[..block], &b.0[..block])
                .then_with(|| degrevlex(&a.0[block..], &b.0[block..])),
        }
    }

    /// Whether the order refines total degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }
}

/// Sparse polynomial over `F_p`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl Poly {
    pub fn zero(field: PrimeField, nvars: usize) -> Poly {
        Poly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: i64) -> Poly {
        Poly::monomial(field, Monomial::one(nvars), c)
    }

    pub fn one(field: PrimeField, nvars: usize) -> Poly {
        Poly::constant(field, nvars, 1)
    }

    pub fn var(field: PrimeField, nvars: usize, index: usize) -> Poly {
        Poly::monomial(field, Monomial::var(nvars, index), 1)
    }

    pub fn monomial(field: PrimeField, m: Monomial, c: i64) -> Poly {
        let nvars = m.nvars();
        let mut p = Poly::zero(field, nvars);
        p.add_term(m, field.reduce(c));
        p
    }

    pub fn from_terms<I>(field: PrimeField, nvars: usize, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let mut p = Poly::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, field.reduce(c));
        }
        p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(Monomial, u32)> {
        let mut t: Vec<(Monomial, u32)> =
            self.terms.iter().map(|(m, &c)| (m.clone(), c)).collect();
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        t
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, u32)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(m, &c)| (m, c))
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let field = self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, &a) in &self.terms {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u32) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (t, &a) in &self.terms {
            out.add_term(t.mul(m), self.field.mul(a, c));
        }
        out
    }

    /// Product with every monomial having an exponent above `cap` dropped.
    pub fn mul_capped(&self, other: &Poly, cap: Option<u32>) -> Poly {
        assert_eq!(self.nvars, other.nvars, "ring mismatch");
        let mut out = Poly::zero(self.field, self.nvars);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let m = a.mul(b);
                if cap.is_some_and(|c| m.max_exponent() > c) {
                    continue;
                }
                out.add_term(m, self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.field, self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let order = MonomialOrder::DegRevLex;
        let (lm, lc) = divisor.leading_term(order)?;
        let (lm, lc_inv) = (lm.clone(), self.field.inv(lc));
        let mut rest = self.clone();
        let mut quotient = Poly::zero(self.field, self.nvars);
        while let Some((m, c)) = rest.leading_term(order) {
            let q = lm.quotient_of(m)?;
            let qc = self.field.mul(c, lc_inv);
            rest = &rest - &divisor.mul_monomial(&q, qc);
            quotient.add_term(q, qc);
        }
        Some(quotient)
    }

    /// Same polynomial with every monomial rewritten by `f` into a ring with `nvars` variables.
    pub fn map_monomials(&self, nvars: usize, f: impl Fn(&Monomial) -> Monomial) -> Poly {
        let mut out = Poly::zero(self.field, nvars);
        for (m, &c) in &self.terms {
            let image = f(m);
            assert_eq!(image.nvars(), nvars, "monomial arity mismatch");
            out.add_term(image, c);
        }
        out
    }

    /// Scaled so the leading coefficient under `order` is 1.
    pub fn monic(&self, order: MonomialOrder) -> Poly {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(self.field.inv(c)),
            None => self.clone(),
        }
    }

    /// Lines `coeff * monomial`, degrevlex-descending, naming variable `i` by `name(i)`.
    pub fn lines_with(&self, name: &dyn Fn(usize) -> String) -> Vec<String> {
        self.sorted_terms(MonomialOrder::DegRevLex)
            .into_iter()
            .map(|(m, c)| {
                let c = self.field.signed(c);
                if m.is_one() {
                    format!("{c}")
                } else {
                    format!("{c} * {}", m.fmt_with(name))
                }
            })
            .collect()
    }

    /// Lines using `x1..xd, y1..yd` names; the ring must have `2d` variables.
    pub fn binomial_lines(&self) -> Vec<String> {
        let d = self.nvars / 2;
        self.lines_with(&|i| {
            if i < d {
                format!("x{}", i + 1)
            } else {
                format!("y{}", i - d + 1)
            }
        })
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines = self.lines_with(&|i| format!("v{}", i + 1));
        if lines.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", lines.join(" + "))
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(self.field.p - 1)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_capped(rhs, None)
    }
}

/// Atomic factor of a witness: a variable or a 2×2 minor `f_{i,j} = x_i y_j - x_j y_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    X(usize),
    Y(usize),
    /// Minor with `i < j`.
    Minor(usize, usize),
}

impl Atom {
    pub fn minor(i: usize, j: usize) -> Atom {
        Atom::Minor(i.min(j), i.max(j))
    }

    fn max_index(&self) -> usize {
        match *self {
            Atom::X(i) | Atom::Y(i) => i,
            Atom::Minor(_, j) => j,
        }
    }

    fn is_valid(&self, d: usize) -> bool {
        match *self {
            Atom::X(i) | Atom::Y(i) => i >= 1 && i <= d,
            Atom::Minor(i, j) => i >= 1 && i < j && j <= d,
        }
    }

    pub fn to_poly(&self, field: PrimeField, d: usize) -> Poly {
        let n = 2 * d;
        let x = |i: usize| i - 1;
        let y = |i: usize| d + i - 1;
        match *self {
            Atom::X(i) => Poly::var(field, n, x(i)),
            Atom::Y(i) => Poly::var(field, n, y(i)),
            Atom::Minor(i, j) => {
                let mut a = Monomial::one(n).0;
                a[x(i)] = 1;
                a[y(j)] = 1;
                let mut b = Monomial::one(n).0;
                b[x(j)] = 1;
                b[y(i)] = 1;
                Poly::from_terms(field, n, [(Monomial(a), 1), (Monomial(b), -1)])
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::X(i) => write!(f, "x{i}"),
            Atom::Y(i) => write!(f, "y{i}"),
            Atom::Minor(i, j) => write!(f, "m({i},{j})"),
        }
    }
}

impl FromStr for Atom {
    type Err = Error;

    /// `x3`, `y1`, `m(1,2)`.
    fn from_str(s: &str) -> Result<Atom> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad atom {s:?}"));
        let index = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        if let Some(inner) = s.strip_prefix("m(").and_then(|t| t.strip_suffix(')')) {
            let (i, j) = inner.split_once(',').ok_or_else(bad)?;
            let (i, j) = (index(i)?, index(j)?);
            if i == j || i == 0 || j == 0 {
                return Err(bad());
            }
            Ok(Atom::minor(i, j))
        } else if let Some(i) = s.strip_prefix('x') {
            index(i).map(Atom::X)
        } else if let Some(i) = s.strip_prefix('y') {
            index(i).map(Atom::Y)
        } else {
            Err(bad())
        }
    }
}

/// A product of atoms kept unexpanded, in a ring with `2d` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredWitness {
    d: usize,
    factors: Vec<Atom>,
}

impl FactoredWitness {
    pub fn new(d: usize, factors: Vec<Atom>) -> Result<FactoredWitness> {
        if let Some(bad) = factors.iter().find(|a| !a.is_valid(d)) {
            return Err(Error::VertexOutOfRange(bad.max_index(), d));
        }
        Ok(FactoredWitness { d, factors })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn factors(&self) -> &[Atom] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `self` with the factor at `index` removed.
    pub fn without(&self, index: usize) -> Option<FactoredWitness> {
        (index < self.factors.len()).then(|| {
            let mut factors = self.factors.clone();
            factors.remove(index);
            FactoredWitness { d: self.d, factors }
        })
    }

    pub fn concat(&self, other: &FactoredWitness) -> FactoredWitness {
        assert_eq!(self.d, other.d, "ring mismatch");
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        FactoredWitness { d: self.d, factors }
    }

    /// The factor sequence repeated `k` times (the witness raised to `k`).
    pub fn repeat(&self, k: usize) -> FactoredWitness {
        FactoredWitness {
            d: self.d,
            factors: self.factors.repeat(k),
        }
    }

    /// Whether this witness's atom multiset is contained in `other`'s.
    pub fn divides(&self, other: &FactoredWitness) -> bool {
        let mut pool = other.factors.clone();
        self.factors.iter().all(|a| match pool.iter().position(|b| b == a) {
            Some(i) => {
                pool.swap_remove(i);
                true
            }
            None => false,
        })
    }

    pub fn labels(&self) -> Vec<String> {
        self.factors.iter().map(ToString::to_string).collect()
    }
}

/// Expands the product over `F_p`. With a cap, monomials having an exponent
/// above it are discarded after every multiplication.
pub fn expand(witness: &FactoredWitness, p: u64, cap: Option<u32>) -> Result<Poly> {
    let field = PrimeField::new(p)?;
    Ok(expand_in(witness, field, cap))
}

pub fn expand_in(witness: &FactoredWitness, field: PrimeField, cap: Option<u32>) -> Poly {
    let d = witness.d();
    witness
        .factors()
        .iter()
        .fold(Poly::one(field, 2 * d), |acc, atom| {
            acc.mul_capped(&atom.to_poly(field, d), cap)
        })
}

/// Whether `f^(p-1)` lies outside the Frobenius bracket `(x_i^p, y_i^p)`,
/// i.e. has a monomial with every exponent `<= p - 1` and nonzero coefficient.
///
/// Refuses inputs with `d * (p - 1) > 64`; see [`witness_power_outside_frobenius_unguarded`].
pub fn witness_power_outside_frobenius(witness: &FactoredWitness, p: u64) -> Result<bool> {
    let size = witness.d() as u64 * p.saturating_sub(1);
    if size > FROBENIUS_GUARD {
        return Err(Error::BoundExceeded {
            what: "frobenius check d*(p-1)",
            size,
            bound: FROBENIUS_GUARD,
        });
    }
    witness_power_outside_frobenius_unguarded(witness, p)
}

pub fn witness_power_outside_frobenius_unguarded(
    witness: &FactoredWitness,
    p: u64,
) -> Result<bool> {
    let field = PrimeField::new(p)?;
    let cap = field.p() - 1;
    let power = witness.repeat(cap as usize);
    Ok(!expand_in(&power, field, Some(cap)).is_zero())
}
