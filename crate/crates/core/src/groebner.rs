//! Buchberger's algorithm with the sugar selection strategy, the product
//! criterion at pair creation, and the chain criterion at pair selection.
//! Output bases are reduced (monic, interreduced, sorted), hence unique
//! per ideal and order; runs are deterministic.
//!
//! Resource limits are explicit [`Budgets`]; exceeding one is a reported
//! [`GbError::Budget`], never a silent truncation.

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::time::{Duration, Instant};
use thiserror::Error;

/// Resource limits for Gröbner runs. `Default` is unlimited.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budgets {
    /// Cap on the total degree of any basis element produced.
    pub max_degree: Option<u32>,
    /// Cap on the number of basis elements during the run.
    pub max_basis: Option<usize>,
    /// Wall-clock cutoff shared by everything derived from this value.
    pub deadline: Option<Instant>,
}

impl Budgets {
    pub fn unlimited() -> Self {
        Budgets::default()
    }

    pub fn with_max_degree(mut self, d: u32) -> Self {
        self.max_degree = Some(d);
        self
    }

    pub fn with_max_basis(mut self, n: usize) -> Self {
        self.max_basis = Some(n);
        self
    }

    /// Starts the wall clock now; nested calls inherit the same deadline.
    pub fn with_timeout(mut self, d: Duration) -> Self {
        self.deadline = Some(Instant::now() + d);
        self
    }

    fn check_clock(&self) -> Result<(), GbError> {
        if let Some(deadline) = self.deadline {
            if Instant::now() > deadline {
                return Err(GbError::Budget("wall clock exceeded".to_string()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    /// A budget was exhausted; the payload names which one.
    #[error("budget exceeded: {0}")]
    Budget(String),
}

/// A reduced Gröbner basis: monic, interreduced, sorted by leading
/// monomial ascending under `order`. Unique for (ideal, order).
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    pub order: MonomialOrder,
    pub elements: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    /// True when the basis is `{1}`, i.e. the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].degree() == Some(0)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_term(self.order).expect("nonzero").0.clone())
            .collect()
    }
}

/// Terms sorted strictly descending under the engine's active order.
type Terms<F> = Vec<(Monomial, <F as Field>::Elem)>;

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Polynomial<F>],
    order: MonomialOrder,
    budgets: &Budgets,
) -> Result<GroebnerBasis<F>, GbError> {
    let engine = Engine {
        field: ring.field().clone(),
        order,
        budgets,
    };
    let input: Vec<Terms<F>> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| engine.sorted(p))
        .collect();
    let basis = engine.buchberger(input)?;
    let mut elements: Vec<Polynomial<F>> = basis
        .into_iter()
        .map(|t| Polynomial::from_terms(&engine.field, t))
        .collect();
    elements.sort_by(|a, b| {
        let la = a.leading_term(order).expect("nonzero").0;
        let lb = b.leading_term(order).expect("nonzero").0;
        order.cmp(la, lb)
    });
    Ok(GroebnerBasis { order, elements })
}

/// The unique remainder of `p` modulo the reduced basis.
pub fn normal_form<F: Field>(
    ring: &PolyRing<F>,
    p: &Polynomial<F>,
    gb: &GroebnerBasis<F>,
    budgets: &Budgets,
) -> Result<Polynomial<F>, GbError> {
    let engine = Engine {
        field: ring.field().clone(),
        order: gb.order,
        budgets,
    };
    let basis: Vec<Terms<F>> = gb.elements.iter().map(|g| engine.sorted(g)).collect();
    let reduced = engine.reduce_full(engine.sorted(p), &basis)?;
    Ok(Polynomial::from_terms(&engine.field, reduced))
}

/// A critical pair, ordered for a min-heap by (sugar, lcm degree, lcm,
/// indices) — the sugar strategy with a deterministic tie-break.
struct Pair {
    sugar: u32,
    lcm_deg: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

impl PartialEq for Pair {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_key(other) == Ordering::Equal
    }
}
impl Eq for Pair {}
impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Pair {
    // reversed so BinaryHeap pops the smallest pair first
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_key(other).reverse()
    }
}

impl Pair {
    fn cmp_key(&self, other: &Self) -> Ordering {
        (self.sugar, self.lcm_deg, &self.lcm.0, self.i, self.j).cmp(&(
            other.sugar,
            other.lcm_deg,
            &other.lcm.0,
            other.i,
            other.j,
        ))
    }
}

struct Engine<'a, F: Field> {
    field: F,
    order: MonomialOrder,
    budgets: &'a Budgets,
}

impl<'a, F: Field> Engine<'a, F> {
    fn sorted(&self, p: &Polynomial<F>) -> Terms<F> {
        let mut t: Terms<F> = p.terms().to_vec();
        if self.order != MonomialOrder::DegRevLex {
            t.sort_unstable_by(|a, b| self.order.cmp(&b.0, &a.0));
        }
        t
    }

    /// `a - coeff * mono * b`, both inputs sorted; `b` is monic.
    fn sub_mul(
        &self,
        a: &Terms<F>,
        skip_lead: usize,
        b: &Terms<F>,
        mono: &Monomial,
        coeff: &F::Elem,
    ) -> Terms<F> {
        let field = &self.field;
        let mut out: Terms<F> = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (skip_lead, 1); // leads cancel by construction
        while i < a.len() && j < b.len() {
            let bm = b[j].0.mul(mono);
            match self.order.cmp(&a[i].0, &bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, field.neg(&field.mul(&b[j].1, coeff))));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.sub(&a[i].1, &field.mul(&b[j].1, coeff));
                    if !field.is_zero(&c) {
                        out.push((bm, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (m, c) in &b[j..] {
            out.push((m.mul(mono), field.neg(&field.mul(c, coeff))));
        }
        out
    }

    /// Full normal form of `p` against `basis` (all monic, sorted).
    fn reduce_full(&self, p: Terms<F>, basis: &[Terms<F>]) -> Result<Terms<F>, GbError> {
        let mut out: Terms<F> = Vec::new();
        let mut work = p;
        'outer: while !work.is_empty() {
            self.budgets.check_clock()?;
            let (m, c) = work[0].clone();
            for g in basis {
                if g[0].0.divides(&m) {
                    let q = g[0].0.div_into(&m);
                    work = self.sub_mul(&work, 1, g, &q, &c);
                    continue 'outer;
                }
            }
            out.push((m, c));
            work.remove(0);
        }
        Ok(out)
    }

    fn make_monic(&self, mut p: Terms<F>) -> Terms<F> {
        if let Some((_, lc)) = p.first() {
            if !self.field.is_one(lc) {
                let inv = self.field.inv(lc);
                for (_, c) in p.iter_mut() {
                    *c = self.field.mul(c, &inv);
                }
            }
        }
        p
    }

    fn total_degree(p: &Terms<F>) -> u32 {
        p.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn buchberger(&self, input: Vec<Terms<F>>) -> Result<Vec<Terms<F>>, GbError> {
        let mut basis: Vec<Terms<F>> = Vec::new();
        let mut sugar: Vec<u32> = Vec::new();
        let mut queue: BinaryHeap<Pair> = BinaryHeap::new();
        let mut pending: HashSet<(usize, usize)> = HashSet::new();

        let push_element = |g: Terms<F>,
                                s: u32,
                                basis: &mut Vec<Terms<F>>,
                                sugar: &mut Vec<u32>,
                                queue: &mut BinaryHeap<Pair>,
                                pending: &mut HashSet<(usize, usize)>|
         -> Result<(), GbError> {
            if let Some(cap) = self.budgets.max_degree {
                let d = Self::total_degree(&g);
                if d > cap {
                    return Err(GbError::Budget(format!(
                        "basis element of degree {d} exceeds max_degree {cap}"
                    )));
                }
            }
            if let Some(cap) = self.budgets.max_basis {
                if basis.len() + 1 > cap {
                    return Err(GbError::Budget(format!(
                        "basis size exceeds max_basis {cap}"
                    )));
                }
            }
            let t = basis.len();
            for i in 0..t {
                let lma = &basis[i][0].0;
                let lmb = &g[0].0;
                // product criterion: coprime leads always reduce to zero
                if lma.coprime(lmb) {
                    continue;
                }
                let lcm = lma.lcm(lmb);
                let s_pair = (sugar[i] + lcm.degree() - lma.degree())
                    .max(s + lcm.degree() - lmb.degree());
                queue.push(Pair {
                    sugar: s_pair,
                    lcm_deg: lcm.degree(),
                    lcm,
                    i,
                    j: t,
                });
                pending.insert((i, t));
            }
            basis.push(g);
            sugar.push(s);
            Ok(())
        };

        // deterministic start: sort inputs by leading monomial, then terms
        let mut input: Vec<Terms<F>> = input.into_iter().filter(|p| !p.is_empty()).collect();
        input.sort_by(|a, b| {
            self.order
                .cmp(&a[0].0, &b[0].0)
                .then_with(|| a.len().cmp(&b.len()))
                .then_with(|| {
                    for ((ma, _), (mb, _)) in a.iter().zip(b.iter()) {
                        let c = self.order.cmp(ma, mb);
                        if c != Ordering::Equal {
                            return c;
                        }
                    }
                    Ordering::Equal
                })
        });
        for g in input {
            let s = Self::total_degree(&g);
            let g = self.make_monic(g);
            push_element(g, s, &mut basis, &mut sugar, &mut queue, &mut pending)?;
        }

        while let Some(pair) = queue.pop() {
            self.budgets.check_clock()?;
            pending.remove(&(pair.i, pair.j));
            // chain criterion: some g_k divides the lcm and both side
            // pairs are already treated
            let chain = (0..basis.len()).any(|k| {
                k != pair.i
                    && k != pair.j
                    && basis[k][0].0.divides(&pair.lcm)
                    && !pending.contains(&key(pair.i, k))
                    && !pending.contains(&key(pair.j, k))
            });
            if chain {
                continue;
            }
            let f = &basis[pair.i];
            let g = &basis[pair.j];
            let mf = f[0].0.div_into(&pair.lcm);
            let mg = g[0].0.div_into(&pair.lcm);
            // S-polynomial of two monic elements
            let shifted: Terms<F> = f.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
            let spoly = self.sub_mul(&shifted, 1, g, &mg, &self.field.one());
            let reduced = self.reduce_full(spoly, &basis)?;
            if !reduced.is_empty() {
                let reduced = self.make_monic(reduced);
                push_element(
                    reduced,
                    pair.sugar,
                    &mut basis,
                    &mut sugar,
                    &mut queue,
                    &mut pending,
                )?;
            }
        }

        self.interreduce(basis)
    }

    /// Minimal leading monomials, then tail reduction: the reduced basis.
    fn interreduce(&self, basis: Vec<Terms<F>>) -> Result<Vec<Terms<F>>, GbError> {
        let mut keep: Vec<Terms<F>> = Vec::new();
        'next: for (i, g) in basis.iter().enumerate() {
            for (j, h) in basis.iter().enumerate() {
                if i == j {
                    continue;
                }
                // drop g when another lead divides it (ties keep the first)
                if h[0].0.divides(&g[0].0) && (h[0].0 != g[0].0 || j < i) {
                    continue 'next;
                }
            }
            keep.push(g.clone());
        }
        let mut out: Vec<Terms<F>> = Vec::with_capacity(keep.len());
        for i in 0..keep.len() {
            let others: Vec<Terms<F>> = keep
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, h)| h.clone())
                .collect();
            let r = self.reduce_full(keep[i].clone(), &others)?;
            if !r.is_empty() {
                out.push(self.make_monic(r));
            }
        }
        Ok(out)
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GfP;
    use crate::parse::parse_poly;

    fn gb_strings(ring: &PolyRing<GfP>, gens: &[&str], order: MonomialOrder) -> Vec<String> {
        let gens: Vec<_> = gens.iter().map(|s| parse_poly(ring, s).unwrap()).collect();
        let gb = groebner_basis(ring, &gens, order, &Budgets::unlimited()).unwrap();
        gb.elements.iter().map(|g| g.display(ring)).collect()
    }

    #[test]
    fn basics_reduce_to_variables() {
        let r = PolyRing::with_x_vars(GfP::default(), 2);
        let gb = gb_strings(&r, &["X1 - X2", "X2"], MonomialOrder::DegRevLex);
        assert_eq!(gb, vec!["X2", "X1"]);
        let one = gb_strings(&r, &["X1", "X1 + 1"], MonomialOrder::DegRevLex);
        assert_eq!(one, vec!["1"]);
        let single = gb_strings(&r, &["X1"], MonomialOrder::Lex);
        assert_eq!(single, vec!["X1"]);
        // zero ideal
        let empty = groebner_basis::<GfP>(&r, &[], MonomialOrder::DegRevLex, &Budgets::unlimited())
            .unwrap();
        assert!(empty.elements.is_empty());
        assert!(!empty.is_unit());
    }

    #[test]
    fn twisted_cubic_minors_are_already_a_basis() {
        let r = PolyRing::with_x_vars(GfP::default(), 4);
        let gb = gb_strings(
            &r,
            &["X2*X4 - X3^2", "X2*X3 - X1*X4", "X1*X3 - X2^2"],
            MonomialOrder::DegRevLex,
        );
        assert_eq!(
            gb,
            vec!["X3^2 - X2*X4", "X2*X3 - X1*X4", "X2^2 - X1*X3"]
        );
    }

    #[test]
    fn reduced_basis_is_permutation_invariant() {
        let r = PolyRing::with_x_vars(GfP::default(), 3);
        let gens = ["X1^2 - X2", "X1*X2 - X3", "X2^2 - X1*X3"];
        let a = gb_strings(&r, &gens, MonomialOrder::DegRevLex);
        let b = gb_strings(
            &r,
            &["X2^2 - X1*X3", "X1^2 - X2", "X1*X2 - X3"],
            MonomialOrder::DegRevLex,
        );
        assert_eq!(a, b);
    }

    #[test]
    fn block_order_respects_the_elimination_block() {
        let r = PolyRing::with_x_vars(GfP::default(), 2);
        // under the block order X1 dominates, so X1 - X2^2 stays monic in X1
        // (display is always canonical degrevlex, whatever the basis order)
        let gb = gb_strings(&r, &["X1 - X2^2"], MonomialOrder::Block { first_block: 1 });
        assert_eq!(gb, vec!["-X2^2 + X1"]);
        // degrevlex instead leads with the degree-2 term
        let gb2 = gb_strings(&r, &["X1 - X2^2"], MonomialOrder::DegRevLex);
        assert_eq!(gb2, vec!["X2^2 - X1"]);
    }

    #[test]
    fn normal_forms_are_canonical() {
        let r = PolyRing::with_x_vars(GfP::default(), 4);
        let gens: Vec<_> = ["X2*X4 - X3^2", "X2*X3 - X1*X4", "X1*X3 - X2^2"]
            .iter()
            .map(|s| parse_poly(&r, s).unwrap())
            .collect();
        let gb = groebner_basis(&r, &gens, MonomialOrder::DegRevLex, &Budgets::unlimited())
            .unwrap();
        // generators reduce to zero
        for g in &gens {
            let nf = normal_form(&r, g, &gb, &Budgets::unlimited()).unwrap();
            assert!(nf.is_zero());
        }
        // a non-member has a nonzero normal form
        let p = parse_poly(&r, "X1").unwrap();
        let nf = normal_form(&r, &p, &gb, &Budgets::unlimited()).unwrap();
        assert_eq!(nf.display(&r), "X1");
        // normal_form(p + q*g) = normal_form(p)
        let q = parse_poly(&r, "X3^2 + X1").unwrap();
        let shifted = p.add(r.field(), &q.mul(r.field(), &gens[1]));
        let nf2 = normal_form(&r, &shifted, &gb, &Budgets::unlimited()).unwrap();
        assert_eq!(nf2, nf);
    }

    #[test]
    fn budget_degree_cap_reports_not_truncates() {
        let r = PolyRing::with_x_vars(GfP::default(), 3);
        let gens: Vec<_> = ["X1^5 - X2", "X2^5 - X3"]
            .iter()
            .map(|s| parse_poly(&r, s).unwrap())
            .collect();
        let b = Budgets::unlimited().with_max_degree(3);
        let err = groebner_basis(&r, &gens, MonomialOrder::DegRevLex, &b).unwrap_err();
        assert!(matches!(err, GbError::Budget(_)));
        let b2 = Budgets::unlimited().with_max_basis(1);
        let err2 = groebner_basis(&r, &gens, MonomialOrder::DegRevLex, &b2).unwrap_err();
        assert!(matches!(err2, GbError::Budget(_)));
    }

    #[test]
    fn s_pairs_of_output_all_reduce_to_zero() {
        let r = PolyRing::with_x_vars(GfP::default(), 3);
        let gens: Vec<_> = ["X1^2*X2 - X3^2", "X1*X3 - X2^2", "X2*X3 - X1"]
            .iter()
            .map(|s| parse_poly(&r, s).unwrap())
            .collect();
        let gb = groebner_basis(&r, &gens, MonomialOrder::DegRevLex, &Budgets::unlimited())
            .unwrap();
        let field = r.field();
        for i in 0..gb.elements.len() {
            for j in i + 1..gb.elements.len() {
                let f = &gb.elements[i];
                let g = &gb.elements[j];
                let (lf, _) = f.leading_term(gb.order).unwrap();
                let (lg, _) = g.leading_term(gb.order).unwrap();
                let lcm = lf.lcm(lg);
                let sf = f.mul_term(field, &lf.div_into(&lcm), &field.one());
                let sg = g.mul_term(field, &lg.div_into(&lcm), &field.one());
                let spoly = sf.sub(field, &sg);
                let nf = normal_form(&r, &spoly, &gb, &Budgets::unlimited()).unwrap();
                assert!(nf.is_zero(), "S-pair ({i},{j}) does not reduce to zero");
            }
        }
    }
}
