//! Buchberger's algorithm over `F_p` and the ideal operations built on it:
//! membership, ordinary-power membership order, intersection, colon and
//! Frobenius brackets.
//!
//! Everything here is exact and meant for small instances. Budgets are hard
//! limits: exceeding one is an error, never a truncated answer.

use std::cell::OnceCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Poly, PrimeField};
use crate::primes::MinimalPrime;

pub const DEFAULT_PAIR_BUDGET: u64 = 200_000;
pub const DEFAULT_MAX_VARS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub order: MonomialOrder,
    /// Maximum number of S-pairs reduced in one basis computation.
    pub pair_budget: u64,
    /// Maximum number of ring variables (an elimination step may add one).
    pub max_vars: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            order: MonomialOrder::DegRevLex,
            pair_budget: DEFAULT_PAIR_BUDGET,
            max_vars: DEFAULT_MAX_VARS,
        }
    }
}

/// Monomial wrapper ordered by a term order, for use as a map key.
#[derive(Clone, PartialEq, Eq)]
struct Key {
    order: MonomialOrder,
    m: Monomial,
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&self.m, &other.m)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Terms in descending order; basis elements are kept monic.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Sorted(Vec<(Monomial, u32)>);

impl Sorted {
    fn lm(&self) -> &Monomial {
        &self.0[0].0
    }

    fn monic(mut self, field: PrimeField) -> Sorted {
        let inv = field.inv(self.0[0].1);
        for t in &mut self.0 {
            t.1 = field.mul(t.1, inv);
        }
        self
    }

    fn to_poly(&self, field: PrimeField, nvars: usize) -> Poly {
        Poly::from_terms(field, nvars, self.0.iter().map(|(m, c)| (m.clone(), *c as i64)))
    }
}

fn add_into(map: &mut BTreeMap<Key, u32>, field: PrimeField, key: Key, c: u32) {
    if c == 0 {
        return;
    }
    match map.entry(key) {
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

/// Full remainder of `terms` on division by the monic `divisors`.
fn reduce<I>(
    terms: I,
    divisors: &[&Sorted],
    field: PrimeField,
    order: MonomialOrder,
) -> Vec<(Monomial, u32)>
where
    I: IntoIterator<Item = (Monomial, u32)>,
{
    let mut rest: BTreeMap<Key, u32> = BTreeMap::new();
    for (m, c) in terms {
        add_into(&mut rest, field, Key { order, m }, c);
    }
    let mut remainder = Vec::new();
    while let Some((key, c)) = rest.pop_last() {
        match divisors.iter().find(|g| g.lm().divides(&key.m)) {
            Some(g) => {
                let q = g.lm().quotient_of(&key.m).expect("divides");
                let factor = field.neg(c);
                for (m, gc) in &g.0[1..] {
                    add_into(&mut rest, field, Key { order, m: q.mul(m) }, field.mul(factor, *gc));
                }
            }
            None => remainder.push((key.m, c)),
        }
    }
    remainder
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Buchberger {
    field: PrimeField,
    order: MonomialOrder,
    degree_bound: Option<u32>,
    polys: Vec<Sorted>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Buchberger {
    fn active_basis(&self) -> Vec<&Sorted> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }

    fn reduce_and_insert(&mut self, terms: Vec<(Monomial, u32)>) {
        let basis = self.active_basis();
        let rem = reduce(terms, &basis, self.field, self.order);
        if !rem.is_empty() {
            self.update(Sorted(rem).monic(self.field));
        }
    }

    /// Gebauer–Möller pair update for a new basis element `h`.
    fn update(&mut self, h: Sorted) {
        let hi = self.polys.len();
        let lm_h = h.lm().clone();
        self.polys.push(h);
        self.active.push(false);

        let mut candidates: Vec<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, self.polys[g].lm().lcm(&lm_h)))
            .collect();
        candidates.reverse();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g, l)) = candidates.pop() {
            let coprime = self.polys[g].lm().is_coprime(&lm_h);
            let dominated = candidates.iter().chain(&kept).any(|(_, l2)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l));
            }
        }
        let fresh: Vec<(usize, Monomial)> = kept
            .into_iter()
            .filter(|(g, _)| !self.polys[*g].lm().is_coprime(&lm_h))
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && polys[p.i].lm().lcm(&lm_h) != p.lcm
                && polys[p.j].lm().lcm(&lm_h) != p.lcm)
        });
        for (g, l) in fresh {
            if self.degree_bound.is_none_or(|b| l.degree() <= b) {
                self.pairs.push(Pair { i: g, j: hi, lcm: l });
            }
        }
        for g in 0..hi {
            if self.active[g] && lm_h.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                order
                    .cmp(&a.lcm, &b.lcm)
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, pair: &Pair) -> Vec<(Monomial, u32)> {
        let (f, g) = (&self.polys[pair.i], &self.polys[pair.j]);
        let qf = f.lm().quotient_of(&pair.lcm).expect("lcm");
        let qg = g.lm().quotient_of(&pair.lcm).expect("lcm");
        let mut out: Vec<(Monomial, u32)> = f.0[1..].iter().map(|(m, c)| (qf.mul(m), *c)).collect();
        out.extend(g.0[1..].iter().map(|(m, c)| (qg.mul(m), self.field.neg(*c))));
        out
    }

    /// Interreduces the active elements into the reduced basis, sorted by
    /// ascending leading monomial.
    fn finish(self) -> Vec<Sorted> {
        let mut basis: Vec<Sorted> = self.active_basis().into_iter().cloned().collect();
        basis.sort_by(|a, b| self.order.cmp(a.lm(), b.lm()));
        for k in 0..basis.len() {
            let others: Vec<&Sorted> = basis
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, g)| g)
                .collect();
            let tail = reduce(basis[k].0[1..].to_vec(), &others, self.field, self.order);
            let mut terms = vec![basis[k].0[0].clone()];
            terms.extend(tail);
            basis[k] = Sorted(terms);
        }
        basis
    }
}

/// A Gröbner basis, reduced and sorted by ascending leading monomial.
///
/// A basis computed with a degree bound is only complete up to that degree
/// and only answers membership for polynomials of degree at most the bound.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    field: PrimeField,
    nvars: usize,
    order: MonomialOrder,
    degree_bound: Option<u32>,
    elements: Vec<Sorted>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn degree_bound(&self) -> Option<u32> {
        self.degree_bound
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.elements
            .iter()
            .map(|s| s.to_poly(self.field, self.nvars))
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.iter().any(|g| g.lm().is_one())
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        assert_eq!(f.nvars(), self.nvars, "ring mismatch");
        let divisors: Vec<&Sorted> = self.elements.iter().collect();
        let terms = f.terms().map(|(m, c)| (m.clone(), c));
        let rem = reduce(terms, &divisors, self.field, self.order);
        Poly::from_terms(self.field, self.nvars, rem.into_iter().map(|(m, c)| (m, c as i64)))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        if let (Some(bound), Some(deg)) = (self.degree_bound, f.total_degree()) {
            if deg > bound {
                return Err(Error::Unsupported(format!(
                    "membership of a degree {deg} polynomial in a basis truncated at degree {bound}"
                )));
            }
        }
        Ok(self.normal_form(f).is_zero())
    }
}

fn ring_of(gens: &[Poly]) -> Result<Option<(PrimeField, usize)>> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    if gens
        .iter()
        .any(|g| g.nvars() != first.nvars() || g.field() != first.field())
    {
        return Err(Error::RingMismatch);
    }
    Ok(Some((first.field(), first.nvars())))
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// With `degree_bound`, generators and S-pairs above that degree are skipped.
/// This is only allowed for homogeneous generators under degrevlex, where the
/// result is exact for membership of polynomials up to the bound.
pub fn groebner_basis_in(
    field: PrimeField,
    nvars: usize,
    gens: &[Poly],
    options: &OracleOptions,
    degree_bound: Option<u32>,
) -> Result<GroebnerBasis> {
    if let Some((f, n)) = ring_of(gens)? {
        if f != field || n != nvars {
            return Err(Error::RingMismatch);
        }
    }
    if nvars > options.max_vars {
        return Err(Error::BoundExceeded {
            what: "groebner ring variables",
            size: nvars as u64,
            bound: options.max_vars as u64,
        });
    }
    let order = options.order;
    if degree_bound.is_some() && !(order.is_graded() && gens.iter().all(Poly::is_homogeneous)) {
        return Err(Error::Unsupported(
            "degree truncation needs homogeneous generators and a graded order".into(),
        ));
    }
    let mut state = Buchberger {
        field,
        order,
        degree_bound,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens {
        if g.is_zero() || degree_bound.is_some_and(|b| g.total_degree().unwrap_or(0) > b) {
            continue;
        }
        state.reduce_and_insert(g.sorted_terms(order));
    }
    let mut processed = 0u64;
    while let Some(pair) = state.next_pair() {
        processed += 1;
        if processed > options.pair_budget {
            return Err(Error::Budget(format!(
                "more than {} S-pairs",
                options.pair_budget
            )));
        }
        let s = state.s_polynomial(&pair);
        state.reduce_and_insert(s);
    }
    let elements = state.finish();
    Ok(GroebnerBasis {
        field,
        nvars,
        order,
        degree_bound,
        elements,
    })
}

/// An ideal given by generators, with a lazily computed full Gröbner basis.
#[derive(Clone, Debug)]
pub struct OracleIdeal {
    field: PrimeField,
    nvars: usize,
    generators: Vec<Poly>,
    options: OracleOptions,
    basis: OnceCell<GroebnerBasis>,
}

impl OracleIdeal {
    pub fn new(field: PrimeField, nvars: usize, generators: Vec<Poly>) -> Result<OracleIdeal> {
        OracleIdeal::with_options(field, nvars, generators, OracleOptions::default())
    }

    pub fn with_options(
        field: PrimeField,
        nvars: usize,
        generators: Vec<Poly>,
        options: OracleOptions,
    ) -> Result<OracleIdeal> {
        if generators
            .iter()
            .any(|g| g.nvars() != nvars || g.field() != field)
        {
            return Err(Error::RingMismatch);
        }
        Ok(OracleIdeal {
            field,
            nvars,
            generators,
            options,
            basis: OnceCell::new(),
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn options(&self) -> &OracleOptions {
        &self.options
    }

    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = groebner_basis_in(self.field, self.nvars, &self.generators, &self.options, None)?;
        Ok(self.basis.get_or_init(|| b))
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        Ok(self.groebner()?.normal_form(f))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        self.groebner()?.contains(f)
    }

    /// Whether both ideals are equal, by reducing each one's generators
    /// modulo the other's basis.
    pub fn equals(&self, other: &OracleIdeal) -> Result<bool> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::RingMismatch);
        }
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn sibling(&self, generators: Vec<Poly>) -> OracleIdeal {
        OracleIdeal {
            field: self.field,
            nvars: self.nvars,
            generators,
            options: self.options,
            basis: OnceCell::new(),
        }
    }

    /// Generators `g^p` for each generator `g`.
    pub fn frobenius_bracket(&self, p: u32) -> OracleIdeal {
        self.sibling(self.generators.iter().map(|g| g.pow(p)).collect())
    }

    /// Ordinary power, generated by all `n`-fold products of generators.
    pub fn power(&self, n: u32) -> OracleIdeal {
        self.sibling(power_generators(&self.generators, self.field, self.nvars, n, None))
    }

    pub fn sum(&self, other: &OracleIdeal) -> Result<OracleIdeal> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(self.sibling(gens))
    }

    /// `I ∩ J` by eliminating `t` from `t I + (1 - t) J`.
    pub fn intersect(&self, other: &OracleIdeal) -> Result<OracleIdeal> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::RingMismatch);
        }
        let n = self.nvars;
        let lift = |g: &Poly| g.map_monomials(n + 1, |m| m.shifted(1));
        let t = Poly::var(self.field, n + 1, 0);
        let one_minus_t = &Poly::one(self.field, n + 1) - &t;
        let mut gens: Vec<Poly> = self.generators.iter().map(|g| &t * &lift(g)).collect();
        gens.extend(other.generators.iter().map(|g| &one_minus_t * &lift(g)));
        let options = OracleOptions {
            order: MonomialOrder::Elimination { block: 1 },
            max_vars: self.options.max_vars + 1,
            ..self.options
        };
        let basis = groebner_basis_in(self.field, n + 1, &gens, &options, None)?;
        let kept = basis
            .polys()
            .into_iter()
            .filter(|g| g.terms().all(|(m, _)| m.exponents()[0] == 0))
            .map(|g| {
                g.map_monomials(n, |m| Monomial::from_exponents(m.exponents()[1..].to_vec()))
            })
            .collect();
        Ok(self.sibling(kept))
    }

    /// `I : J`, as the intersection over generators `g` of `J` of `(I ∩ (g)) / g`.
    pub fn colon(&self, other: &OracleIdeal) -> Result<OracleIdeal> {
        let mut acc: Option<OracleIdeal> = None;
        for g in other.generators.iter().filter(|g| !g.is_zero()) {
            let principal = self.sibling(vec![g.clone()]);
            let meet = self.intersect(&principal)?;
            let quotient = meet
                .generators
                .iter()
                .map(|h| h.exact_div(g).ok_or(Error::RingMismatch))
                .collect::<Result<Vec<Poly>>>()?;
            let part = self.sibling(quotient);
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.intersect(&part)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.sibling(vec![Poly::one(self.field, self.nvars)])))
    }
}

/// All `n`-fold products of `gens`, deduplicated, skipping any of degree
/// above `degree_bound` (safe when generators are homogeneous).
pub fn power_generators(
    gens: &[Poly],
    field: PrimeField,
    nvars: usize,
    n: u32,
    degree_bound: Option<u32>,
) -> Vec<Poly> {
    let within = |p: &Poly| degree_bound.is_none_or(|b| p.total_degree().unwrap_or(0) <= b);
    // multisets as nondecreasing index sequences, built one factor at a time
    let mut layer: Vec<(usize, Poly)> = vec![(0, Poly::one(field, nvars))];
    for _ in 0..n {
        let mut next = Vec::new();
        for (start, prod) in &layer {
            for (k, g) in gens.iter().enumerate().skip(*start) {
                let p = prod * g;
                if within(&p) && !p.is_zero() {
                    next.push((k, p));
                }
            }
        }
        layer = next;
    }
    let mut seen = HashSet::new();
    layer
        .into_iter()
        .map(|(_, p)| p)
        .filter(|p| seen.insert(p.clone()))
        .collect()
}

/// Generators of `p_S` in the ring with `2d` variables: `x_s, y_s` for
/// `s ∈ S` and every minor with both indices in one block.
pub fn prime_generators(field: PrimeField, d: usize, prime: &MinimalPrime) -> Vec<Poly> {
    let n = 2 * d;
    let mut gens = Vec::new();
    for &s in &prime.cut_set {
        gens.push(Poly::var(field, n, s - 1));
        gens.push(Poly::var(field, n, d + s - 1));
    }
    for block in &prime.components {
        for (a, &i) in block.iter().enumerate() {
            for &j in &block[a + 1..] {
                gens.push(minor(field, d, i, j));
            }
        }
    }
    gens
}

/// `f_{i,j} = x_i y_j - x_j y_i`.
pub fn minor(field: PrimeField, d: usize, i: usize, j: usize) -> Poly {
    crate::poly::Atom::minor(i, j).to_poly(field, d)
}

/// Ideal of all 2×2 minors of the generic `2 × d` matrix.
pub fn minors_ideal(field: PrimeField, d: usize) -> Vec<Poly> {
    let mut gens = Vec::new();
    for i in 1..=d {
        for j in i + 1..=d {
            gens.push(minor(field, d, i, j));
        }
    }
    gens
}

type CacheKey = (Option<u32>, Vec<Vec<(Monomial, u32)>>);

/// Memoizes Gröbner bases by generator set, for repeated power-membership queries.
#[derive(Default)]
pub struct Oracle {
    options: OracleOptions,
    cache: HashMap<CacheKey, Rc<GroebnerBasis>>,
}

impl Oracle {
    pub fn new(options: OracleOptions) -> Oracle {
        Oracle {
            options,
            cache: HashMap::new(),
        }
    }

    pub fn cached(&self) -> usize {
        self.cache.len()
    }

    pub fn basis(&mut self, gens: &[Poly], degree_bound: Option<u32>) -> Result<Rc<GroebnerBasis>> {
        let Some((field, nvars)) = ring_of(gens)? else {
            return Err(Error::Unsupported("basis of an ideal without a ring".into()));
        };
        let mut key_gens: Vec<Vec<(Monomial, u32)>> = gens
            .iter()
            .map(|g| g.terms().map(|(m, c)| (m.clone(), c)).collect())
            .collect();
        key_gens.sort();
        let key = (degree_bound, key_gens);
        if let Some(b) = self.cache.get(&key) {
            return Ok(Rc::clone(b));
        }
        let b = Rc::new(groebner_basis_in(field, nvars, gens, &self.options, degree_bound)?);
        self.cache.insert(key, Rc::clone(&b));
        Ok(b)
    }

    /// Largest `n <= max_n` with `f ∈ P^n` for `P = (gens)`; `0` if `f ∉ P`.
    pub fn power_membership_order(&mut self, f: &Poly, gens: &[Poly], max_n: u32) -> Result<u32> {
        if f.is_zero() {
            return Ok(max_n);
        }
        let (field, nvars) = (f.field(), f.nvars());
        if ring_of(gens)?.is_some_and(|r| r != (field, nvars)) {
            return Err(Error::RingMismatch);
        }
        let graded = self.options.order.is_graded()
            && f.is_homogeneous()
            && gens.iter().all(Poly::is_homogeneous);
        let bound = if graded { f.total_degree() } else { None };
        for n in 1..=max_n {
            let power = power_generators(gens, field, nvars, n, bound);
            if power.is_empty() {
                return Ok(n - 1);
            }
            if !self.basis(&power, bound)?.contains(f)? {
                return Ok(n - 1);
            }
        }
        Ok(max_n)
    }
}

pub fn groebner_basis(gens: &[Poly], options: &OracleOptions) -> Result<GroebnerBasis> {
    match ring_of(gens)? {
        Some((field, nvars)) => groebner_basis_in(field, nvars, gens, options, None),
        None => Err(Error::Unsupported("basis of an ideal without a ring".into())),
    }
}

pub fn normal_form(f: &Poly, basis: &GroebnerBasis) -> Poly {
    basis.normal_form(f)
}

pub fn power_membership_order(f: &Poly, gens: &[Poly], max_n: u32) -> Result<u32> {
    Oracle::default().power_membership_order(f, gens, max_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::poly::{expand, Atom, FactoredWitness};
    use crate::primes::enumerate_minimal_primes;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn mono(field: PrimeField, e: &[u32]) -> Poly {
        Poly::monomial(field, Monomial::from_exponents(e.to_vec()), 1)
    }

    #[test]
    fn basis_examples() {
        let f = f2();
        let x2 = mono(f, &[2, 0]);
        let xy = mono(f, &[1, 1]);
        let b = groebner_basis(&[x2.clone(), xy.clone()], &OracleOptions::default()).unwrap();
        assert_eq!(b.polys(), vec![xy.clone(), x2.clone()]);
        assert!(b.normal_form(&mono(f, &[2, 1])).is_zero());
        let x = mono(f, &[1, 0]);
        let bx = groebner_basis(std::slice::from_ref(&x), &OracleOptions::default()).unwrap();
        assert_eq!(bx.polys(), vec![x]);
        assert_eq!(bx.normal_form(&mono(f, &[0, 1])), mono(f, &[0, 1]));
    }

    #[test]
    fn minors_are_a_basis() {
        for p in [2, 3] {
            let field = PrimeField::new(p).unwrap();
            let gens = minors_ideal(field, 3);
            let b = groebner_basis(&gens, &OracleOptions::default()).unwrap();
            assert_eq!(b.len(), 3);
            let monic: HashSet<Poly> = gens
                .iter()
                .map(|g| g.monic(MonomialOrder::DegRevLex))
                .collect();
            assert_eq!(b.polys().into_iter().collect::<HashSet<_>>(), monic);
            let d2 = minors_ideal(field, 2);
            let b2 = groebner_basis(&d2, &OracleOptions::default()).unwrap();
            assert!(b2.normal_form(&d2[0]).is_zero());
        }
    }

    #[test]
    fn nontrivial_basis_is_reduced_and_deterministic() {
        let field = PrimeField::new(3).unwrap();
        // x^2 - y, x y - 1 under degrevlex and lex
        let x2my = Poly::from_terms(field, 2, [(Monomial::from_exponents(vec![2, 0]), 1), (Monomial::from_exponents(vec![0, 1]), -1)]);
        let xym1 = Poly::from_terms(field, 2, [(Monomial::from_exponents(vec![1, 1]), 1), (Monomial::from_exponents(vec![0, 0]), -1)]);
        for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
            let opts = OracleOptions { order, ..Default::default() };
            let a = groebner_basis(&[x2my.clone(), xym1.clone()], &opts).unwrap();
            let b = groebner_basis(&[x2my.clone(), xym1.clone()], &opts).unwrap();
            assert_eq!(a.polys(), b.polys());
            assert!(a.normal_form(&x2my).is_zero() && a.normal_form(&xym1).is_zero());
            // y^3 - 1 lies in the ideal
            let y3 = Poly::from_terms(field, 2, [(Monomial::from_exponents(vec![0, 3]), 1), (Monomial::from_exponents(vec![0, 0]), -1)]);
            assert!(a.contains(&y3).unwrap());
        }
        let lex = groebner_basis(&[x2my, xym1], &OracleOptions { order: MonomialOrder::Lex, ..Default::default() }).unwrap();
        assert_eq!(lex.len(), 2);
    }

    #[test]
    fn pair_budget_is_an_error() {
        let field = PrimeField::new(2).unwrap();
        let gens = minors_ideal(field, 4);
        let tight = OracleOptions { pair_budget: 0, ..Default::default() };
        assert!(matches!(groebner_basis(&gens, &tight), Err(Error::Budget(_))));
        let wide = OracleOptions { max_vars: 4, ..Default::default() };
        assert!(matches!(groebner_basis(&gens, &wide), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn ideal_operations() {
        let f = f2();
        let x = mono(f, &[1, 0]);
        let y = mono(f, &[0, 1]);
        let ix = OracleIdeal::new(f, 2, vec![x.clone()]).unwrap();
        let iy = OracleIdeal::new(f, 2, vec![y.clone()]).unwrap();
        let meet = ix.intersect(&iy).unwrap();
        assert!(meet.equals(&OracleIdeal::new(f, 2, vec![mono(f, &[1, 1])]).unwrap()).unwrap());

        let big = OracleIdeal::new(f, 2, vec![mono(f, &[2, 2])]).unwrap();
        let by = OracleIdeal::new(f, 2, vec![mono(f, &[1, 1])]).unwrap();
        let colon = big.colon(&by).unwrap();
        assert!(colon.equals(&by).unwrap());

        let m = OracleIdeal::new(f, 2, vec![x, y]).unwrap();
        let bracket = m.frobenius_bracket(2);
        assert_eq!(bracket.generators(), &[mono(f, &[2, 0]), mono(f, &[0, 2])]);
        assert!(!bracket.equals(&m).unwrap());
        assert!(m.power(2).contains(&mono(f, &[1, 1])).unwrap());
    }

    #[test]
    fn colon_with_non_monomial_ideals() {
        let field = PrimeField::new(3).unwrap();
        let gens = minors_ideal(field, 2);
        let i = OracleIdeal::new(field, 4, gens.clone()).unwrap();
        let sq = i.power(2);
        // (f^2) : (f) = (f)
        assert!(sq.colon(&i).unwrap().equals(&i).unwrap());
        let unit = OracleIdeal::new(field, 4, vec![Poly::one(field, 4)]).unwrap();
        assert!(i.colon(&i).unwrap().equals(&unit).unwrap());
    }

    #[test]
    fn membership_orders() {
        let f = f2();
        let w = FactoredWitness::new(2, vec![Atom::Y(1), Atom::Minor(1, 2), Atom::X(2)]).unwrap();
        let e = expand(&w, 2, None).unwrap();
        assert_eq!(power_membership_order(&e, &minors_ideal(f, 2), 2).unwrap(), 1);

        let p3 = Graph::path(3).unwrap();
        let primes = enumerate_minimal_primes(&p3).unwrap();
        let w3 = FactoredWitness::new(
            3,
            vec![Atom::Y(1), Atom::Minor(1, 2), Atom::Minor(2, 3), Atom::X(3)],
        )
        .unwrap();
        let e3 = expand(&w3, 2, None).unwrap();
        let gens = prime_generators(f, 3, &primes[1]);
        assert_eq!(primes[1].cut_set, vec![2]);
        assert_eq!(power_membership_order(&e3, &gens, 3).unwrap(), 2);

        // x (y + 1) in (x): order 1
        let xg = Poly::from_terms(f, 2, [(Monomial::from_exponents(vec![1, 1]), 1), (Monomial::from_exponents(vec![1, 0]), 1)]);
        assert_eq!(power_membership_order(&xg, &[mono(f, &[1, 0])], 3).unwrap(), 1);
    }

    #[test]
    fn truncation_rules() {
        let field = f2();
        let gens = minors_ideal(field, 3);
        let b = groebner_basis_in(field, 6, &gens, &OracleOptions::default(), Some(2)).unwrap();
        assert_eq!(b.len(), 3);
        let high = mono(field, &[3, 0, 0, 0, 0, 0]);
        assert!(matches!(b.contains(&high), Err(Error::Unsupported(_))));
        let inhom = Poly::from_terms(field, 6, [(Monomial::one(6), 1), (Monomial::var(6, 0), 1)]);
        assert!(matches!(
            groebner_basis_in(field, 6, &[inhom], &OracleOptions::default(), Some(2)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn prime_generator_shapes() {
        let field = f2();
        let g = crate::families::complete_multipartite(&[3, 2, 1]).unwrap();
        let primes = enumerate_minimal_primes(&g).unwrap();
        // S = {1,2,3,6}: 8 variables, blocks {4},{5} give no minors
        assert_eq!(prime_generators(field, 6, &primes[2]).len(), 8);
        // S = ∅: the 15 minors of the generic matrix
        assert_eq!(prime_generators(field, 6, &primes[0]).len(), 15);
    }
}
