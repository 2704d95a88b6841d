//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept in a canonical form: strictly descending degrevlex, no
//! zero coefficients, at most one term per monomial. Every operation
//! preserves that invariant, so equality is plain structural equality.

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::ring::PolyRing;
use std::collections::HashMap;

/// A polynomial over the field `F` in some [`PolyRing`].
///
/// The type itself does not carry the ring; callers pass the field (or the
/// ring) to operations that need arithmetic. The exponent-vector length
/// pins the ring's variable count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<F: Field> {
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending degrevlex order.
    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Builds from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms(field: &F, terms: Vec<(Monomial, F::Elem)>) -> Self {
        let mut terms = terms;
        terms.sort_unstable_by(|a, b| MonomialOrder::DegRevLex.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((pm, pc)) if *pm == m => *pc = field.add(pc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Polynomial { terms: out }
    }

    /// Builds from terms already canonical (sorted, merged, nonzero).
    pub(crate) fn from_terms_unchecked(terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| MonomialOrder::DegRevLex.cmp(&w[0].0, &w[1].0).is_gt()));
        Polynomial { terms }
    }

    /// Leading term under `order` (a scan; the canonical layout is only
    /// sorted for degrevlex).
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &F::Elem)> {
        match order {
            MonomialOrder::DegRevLex => self.terms.first().map(|(m, c)| (m, c)),
            _ => self
                .terms
                .iter()
                .max_by(|a, b| order.cmp(&a.0, &b.0))
                .map(|(m, c)| (m, c)),
        }
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match MonomialOrder::DegRevLex.cmp(ma, mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = field.add(ca, cb);
                    if !field.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Polynomial { terms: out }
    }

    pub fn neg(&self, field: &F) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    /// Multiplies by the single term `coeff * mono`.
    pub fn mul_term(&self, field: &F, mono: &Monomial, coeff: &F::Elem) -> Self {
        if field.is_zero(coeff) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), field.mul(c, coeff)))
                .collect(),
        }
    }

    pub fn scale(&self, field: &F, coeff: &F::Elem) -> Self {
        if field.is_zero(coeff) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.mul(c, coeff)))
                .collect(),
        }
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        // accumulate into a map; products of sparse inputs collide often
        let mut acc: HashMap<Monomial, F::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(prev) => *prev = field.add(prev, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        Self::from_terms(field, terms)
    }

    pub fn pow(&self, field: &F, e: u32) -> Self {
        let mut acc: Option<Self> = None;
        for _ in 0..e {
            acc = Some(match acc {
                None => self.clone(),
                Some(a) => a.mul(field, self),
            });
        }
        acc.unwrap_or_else(|| {
            // x^0 = 1 needs a variable count; reuse this polynomial's layout
            let n = self.terms.first().map(|(m, _)| m.0.len()).unwrap_or(0);
            Polynomial::from_terms_unchecked(vec![(Monomial::one(n), field.one())])
        })
    }

    /// Divides by the leading coefficient (degrevlex); zero stays zero.
    pub fn monic(&self, field: &F) -> Self {
        match self.terms.first() {
            None => Polynomial::zero(),
            Some((_, lc)) => self.scale(field, &field.inv(lc)),
        }
    }

    /// Exact quotient `self / g`; panics when the division is not exact.
    pub fn div_exact(&self, field: &F, g: &Self) -> Self {
        self.try_div_exact(field, g)
            .expect("inexact polynomial division")
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide.
    /// (When `self = q * g`, single-divisor reduction never gets stuck.)
    pub fn try_div_exact(&self, field: &F, g: &Self) -> Option<Self> {
        assert!(!g.is_zero(), "division by zero polynomial");
        let (gm, gc) = (&g.terms[0].0, &g.terms[0].1);
        let gc_inv = field.inv(gc);
        let mut rem = self.clone();
        let mut quo: Vec<(Monomial, F::Elem)> = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            if !gm.divides(m) {
                return None;
            }
            let qm = gm.div_into(m);
            let qc = field.mul(c, &gc_inv);
            rem = rem.sub(field, &g.mul_term(field, &qm, &qc));
            quo.push((qm, qc));
        }
        Some(Self::from_terms(field, quo))
    }

    /// The gcd of all monomials (exponentwise min); the unit monomial for
    /// the zero polynomial.
    pub fn monomial_content(&self, nvars: usize) -> Monomial {
        self.terms
            .iter()
            .fold(None::<Monomial>, |acc, (m, _)| match acc {
                None => Some(m.clone()),
                Some(g) => Some(g.gcd(m)),
            })
            .unwrap_or_else(|| Monomial::one(nvars))
    }

    /// Divides out a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (m.div_into(t), c.clone()))
                .collect(),
        }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, field: &F, i: usize) -> Self {
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let e = m.0[i];
                let mut em = m.clone();
                em.0[i] = e - 1;
                (em, field.mul(c, &field.from_i64(e as i64)))
            })
            .collect();
        Self::from_terms(field, terms)
    }

    /// Substitutes `images[i]` (polynomials in `target`) for variable `i`.
    pub fn substitute(
        &self,
        src: &PolyRing<F>,
        target: &PolyRing<F>,
        images: &[Polynomial<F>],
    ) -> Polynomial<F> {
        assert_eq!(images.len(), src.nvars());
        let field = src.field();
        // memoize powers of each image
        let mut powers: Vec<Vec<Polynomial<F>>> =
            images.iter().map(|g| vec![target.one(), g.clone()]).collect();
        let mut power = |i: usize, e: u16, field: &F| -> Polynomial<F> {
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap().mul(field, &powers[i][1]);
                powers[i].push(next);
            }
            powers[i][e as usize].clone()
        };
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(field, &power(i, e, field));
                }
            }
            acc = acc.add(field, &t);
        }
        acc
    }

    /// Canonical text form: descending degrevlex, explicit `*` and `^`.
    pub fn display(&self, ring: &PolyRing<F>) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let field = ring.field();
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = field.format(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_text(ring, m);
            match (&*mag, &*mono) {
                ("1", "") => out.push('1'),
                ("1", _) => out.push_str(&mono),
                (_, "") => out.push_str(&mag),
                _ => {
                    out.push_str(&mag);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

/// Random polynomial for seeded property tests: up to `max_terms` terms,
/// each of total degree at most `max_degree`.
pub fn random_poly<F: Field>(
    ring: &PolyRing<F>,
    rng: &mut rand_chacha::ChaCha8Rng,
    max_terms: usize,
    max_degree: u16,
) -> Polynomial<F> {
    use rand::Rng;
    let field = ring.field();
    let nterms = rng.gen_range(0..=max_terms);
    let mut terms = Vec::with_capacity(nterms);
    for _ in 0..nterms {
        let mut m = Monomial::one(ring.nvars());
        let d = rng.gen_range(0..=max_degree);
        for _ in 0..d {
            let i = rng.gen_range(0..ring.nvars());
            m.0[i] += 1;
        }
        terms.push((m, field.random(rng)));
    }
    Polynomial::from_terms(field, terms)
}

fn monomial_text<F: Field>(ring: &PolyRing<F>, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.var_name(i).to_string()),
            _ => parts.push(format!("{}^{}", ring.var_name(i), e)),
        }
    }
    parts.join("*")
}
