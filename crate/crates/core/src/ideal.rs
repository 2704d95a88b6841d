//! Ideals with cached reduced Gröbner bases, and the ideal calculus the
//! theorem checks run on: membership, sums/products/powers, intersection,
//! quotient, saturation, elimination, and combinatorial dimension/height.

use crate::field::Field;
use crate::groebner::{groebner_basis, normal_form, Budgets, GbError, GroebnerBasis};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Fixed seed for the saturation fast path, so runs stay reproducible.
const SATURATION_SEED: u64 = 0x5eed_5a7;

/// An ideal of a polynomial ring, carrying its generators and a lazily
/// filled cache of reduced Gröbner bases (one per order). Clones share
/// the cache.
#[derive(Debug, Clone)]
pub struct Ideal<F: Field> {
    ring: PolyRing<F>,
    gens: Arc<Vec<Polynomial<F>>>,
    cache: Arc<Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis<F>>>>>,
}

impl<F: Field> Ideal<F> {
    /// Builds an ideal from generators; zero generators are dropped and
    /// exact duplicates removed (neither changes the ideal).
    pub fn new(ring: PolyRing<F>, gens: Vec<Polynomial<F>>) -> Self {
        let mut kept: Vec<Polynomial<F>> = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ideal {
            ring,
            gens: Arc::new(kept),
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    /// The zero ideal.
    pub fn zero(ring: PolyRing<F>) -> Self {
        Ideal::new(ring, Vec::new())
    }

    /// The irrelevant maximal ideal `(X_1, ..., X_n)`.
    pub fn irrelevant(ring: &PolyRing<F>) -> Self {
        let gens = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        Ideal::new(ring.clone(), gens)
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// The reduced Gröbner basis under `order`, cached per order.
    pub fn gb(
        &self,
        order: MonomialOrder,
        budgets: &Budgets,
    ) -> Result<Arc<GroebnerBasis<F>>, GbError> {
        if let Some(hit) = self.cache.lock().unwrap().get(&order) {
            return Ok(hit.clone());
        }
        let basis = Arc::new(groebner_basis(&self.ring, &self.gens, order, budgets)?);
        self.cache
            .lock()
            .unwrap()
            .entry(order)
            .or_insert_with(|| basis.clone());
        Ok(basis)
    }

    /// Normal form of `p` modulo the degrevlex reduced basis.
    pub fn normal_form(
        &self,
        p: &Polynomial<F>,
        budgets: &Budgets,
    ) -> Result<Polynomial<F>, GbError> {
        let gb = self.gb(MonomialOrder::DegRevLex, budgets)?;
        normal_form(&self.ring, p, &gb, budgets)
    }

    pub fn contains(&self, p: &Polynomial<F>, budgets: &Budgets) -> Result<bool, GbError> {
        Ok(self.normal_form(p, budgets)?.is_zero())
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal<F>, budgets: &Budgets) -> Result<bool, GbError> {
        for g in other.gens.iter() {
            if !self.contains(g, budgets)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal equality via the canonical reduced degrevlex bases.
    pub fn equals(&self, other: &Ideal<F>, budgets: &Budgets) -> Result<bool, GbError> {
        let a = self.gb(MonomialOrder::DegRevLex, budgets)?;
        let b = other.gb(MonomialOrder::DegRevLex, budgets)?;
        Ok(a.elements == b.elements)
    }

    pub fn is_unit(&self, budgets: &Budgets) -> Result<bool, GbError> {
        Ok(self.gb(MonomialOrder::DegRevLex, budgets)?.is_unit())
    }

    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut gens = self.gens.as_ref().clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(self.ring.clone(), gens)
    }

    pub fn product(&self, other: &Ideal<F>) -> Ideal<F> {
        let field = self.ring.field();
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in self.gens.iter() {
            for g in other.gens.iter() {
                gens.push(f.mul(field, g));
            }
        }
        Ideal::new(self.ring.clone(), gens)
    }

    /// The ordinary power `I^r`: all `r`-fold products of generators.
    pub fn power(&self, r: u32) -> Ideal<F> {
        assert!(r >= 1, "power needs r >= 1");
        let field = self.ring.field();
        let mut gens: Vec<Polynomial<F>> = Vec::new();
        let k = self.gens.len();
        if k == 0 {
            return Ideal::zero(self.ring.clone());
        }
        // multisets of size r over k generators
        let mut pick = vec![0usize; r as usize];
        loop {
            let mut prod = self.gens[pick[0]].clone();
            for &i in &pick[1..] {
                prod = prod.mul(field, &self.gens[i]);
            }
            gens.push(prod);
            // next non-decreasing index vector
            let mut pos = pick.len();
            while pos > 0 && pick[pos - 1] == k - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            let v = pick[pos - 1] + 1;
            for slot in pick.iter_mut().skip(pos - 1) {
                *slot = v;
            }
        }
        Ideal::new(self.ring.clone(), gens)
    }

    /// Intersection `self ∩ other` by the auxiliary-variable trick:
    /// eliminate `w` from `w*I + (1-w)*J`.
    pub fn intersect(&self, other: &Ideal<F>, budgets: &Budgets) -> Result<Ideal<F>, GbError> {
        let field = self.ring.field();
        let big = self.ring.extended_front(&["w#"]);
        let w = big.var(0);
        let one_minus_w = big.one().sub(field, &w);
        let mut gens: Vec<Polynomial<F>> = Vec::new();
        for f in self.gens.iter() {
            gens.push(self.ring.map_into(&big, f).mul(field, &w));
        }
        for g in other.gens.iter() {
            gens.push(self.ring.map_into(&big, g).mul(field, &one_minus_w));
        }
        let lifted = Ideal::new(big, gens);
        lifted.eliminate(1, budgets)
    }

    /// The colon ideal `self : f` for a single nonzero `f`, via
    /// `(self ∩ (f)) / f`.
    pub fn quotient_by_poly(
        &self,
        f: &Polynomial<F>,
        budgets: &Budgets,
    ) -> Result<Ideal<F>, GbError> {
        assert!(!f.is_zero(), "quotient by the zero polynomial");
        let field = self.ring.field();
        let principal = Ideal::new(self.ring.clone(), vec![f.clone()]);
        let meet = self.intersect(&principal, budgets)?;
        let gens = meet
            .gens
            .iter()
            .map(|h| h.div_exact(field, f))
            .collect();
        Ok(Ideal::new(self.ring.clone(), gens))
    }

    /// The colon ideal `self : other`, intersected over the generators.
    pub fn quotient(&self, other: &Ideal<F>, budgets: &Budgets) -> Result<Ideal<F>, GbError> {
        let mut acc: Option<Ideal<F>> = None;
        for f in other.gens.iter() {
            let q = self.quotient_by_poly(f, budgets)?;
            acc = Some(match acc {
                None => q,
                Some(cur) => cur.intersect(&q, budgets)?,
            });
        }
        // I : (0) is the whole ring
        Ok(acc.unwrap_or_else(|| Ideal::new(self.ring.clone(), vec![self.ring.one()])))
    }

    /// Saturation `self : f^∞` for one polynomial, by eliminating `w`
    /// from `(self, 1 - w*f)` — exact, no iteration needed.
    pub fn saturate_poly(
        &self,
        f: &Polynomial<F>,
        budgets: &Budgets,
    ) -> Result<Ideal<F>, GbError> {
        assert!(!f.is_zero(), "saturation by the zero polynomial");
        let field = self.ring.field();
        let big = self.ring.extended_front(&["w#"]);
        let w = big.var(0);
        let mut gens: Vec<Polynomial<F>> = self
            .gens
            .iter()
            .map(|g| self.ring.map_into(&big, g))
            .collect();
        gens.push(big.one().sub(field, &w.mul(field, &self.ring.map_into(&big, f))));
        let lifted = Ideal::new(big, gens);
        lifted.eliminate(1, budgets)
    }

    /// Saturation `self : other^∞`.
    ///
    /// Strategy: (0) if one quotient step returns `self`, the ideal is
    /// already saturated — certified and cheap, the common case in the
    /// stability checks; (1) otherwise saturate by two independent random
    /// combinations of the generators and accept agreement; (2) on
    /// disagreement fall back to iterated quotients by the full ideal,
    /// which is the correctness contract.
    pub fn saturation(&self, other: &Ideal<F>, budgets: &Budgets) -> Result<Ideal<F>, GbError> {
        assert!(!other.is_zero_ideal(), "saturation by the zero ideal");
        if other.gens.len() == 1 {
            return self.saturate_poly(&other.gens[0], budgets);
        }
        let first = self.quotient(other, budgets)?;
        if first.equals(self, budgets)? {
            return Ok(self.clone());
        }
        // probabilistic fast path: two random combinations must agree
        let field = self.ring.field();
        let mut rng = ChaCha8Rng::seed_from_u64(SATURATION_SEED);
        let mut combo = || -> Polynomial<F> {
            loop {
                let mut f = self.ring.zero();
                for g in other.gens.iter() {
                    f = f.add(field, &g.scale(field, &field.random(&mut rng)));
                }
                if !f.is_zero() {
                    return f;
                }
            }
        };
        let f1 = combo();
        let mut f2 = combo();
        while f2 == f1 {
            f2 = combo();
        }
        let s1 = self.saturate_poly(&f1, budgets)?;
        let s2 = self.saturate_poly(&f2, budgets)?;
        if s1.equals(&s2, budgets)? {
            return Ok(s1);
        }
        self.saturation_exact_from(first, other, budgets)
    }

    /// Saturation by iterated quotients only — slower, fully certified.
    pub fn saturation_exact(
        &self,
        other: &Ideal<F>,
        budgets: &Budgets,
    ) -> Result<Ideal<F>, GbError> {
        assert!(!other.is_zero_ideal(), "saturation by the zero ideal");
        let first = self.quotient(other, budgets)?;
        if first.equals(self, budgets)? {
            return Ok(self.clone());
        }
        self.saturation_exact_from(first, other, budgets)
    }

    fn saturation_exact_from(
        &self,
        mut cur: Ideal<F>,
        other: &Ideal<F>,
        budgets: &Budgets,
    ) -> Result<Ideal<F>, GbError> {
        loop {
            let next = cur.quotient(other, budgets)?;
            if next.equals(&cur, budgets)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Elimination of the first `block` variables: generators of
    /// `self ∩ k[x_{block}, ..]`, returned in the smaller ring.
    pub fn eliminate(&self, block: usize, budgets: &Budgets) -> Result<Ideal<F>, GbError> {
        self.eliminate_with(block, MonomialOrder::Block { first_block: block }, budgets)
    }

    /// Elimination under an explicit elimination order for the block
    /// (`Block { first_block: block }` or `Lex` both qualify).
    pub fn eliminate_with(
        &self,
        block: usize,
        order: MonomialOrder,
        budgets: &Budgets,
    ) -> Result<Ideal<F>, GbError> {
        assert!(block < self.ring.nvars());
        match order {
            MonomialOrder::Lex => {}
            MonomialOrder::Block { first_block } => {
                assert_eq!(first_block, block, "block order must match the block")
            }
            MonomialOrder::DegRevLex => panic!("degrevlex does not eliminate"),
        }
        let gb = self.gb(order, budgets)?;
        let names: Vec<&str> = self.ring.var_names()[block..]
            .iter()
            .map(|s| s.as_str())
            .collect();
        let small = PolyRing::new(self.ring.field().clone(), &names);
        let mut gens = Vec::new();
        for g in &gb.elements {
            let free = g
                .terms()
                .iter()
                .all(|(m, _)| m.support().all(|v| v >= block));
            if free {
                gens.push(self.ring.map_into(&small, g));
            }
        }
        Ok(Ideal::new(small, gens))
    }

    /// Krull dimension of `R/I` from the leading-term ideal: the size of a
    /// maximum independent variable set. Unit ideal reports -1, the zero
    /// ideal reports n.
    pub fn dimension(&self, budgets: &Budgets) -> Result<i64, GbError> {
        let gb = self.gb(MonomialOrder::DegRevLex, budgets)?;
        if gb.is_unit() {
            return Ok(-1);
        }
        let supports: Vec<Vec<usize>> = gb
            .leading_monomials()
            .iter()
            .map(|m| m.support().collect())
            .collect();
        Ok(max_independent_set(self.ring.nvars(), &supports) as i64)
    }

    /// Height (codimension) in the polynomial ring: `n - dim`.
    pub fn height(&self, budgets: &Budgets) -> Result<i64, GbError> {
        Ok(self.ring.nvars() as i64 - self.dimension(budgets)?)
    }

    /// Radical membership: `f ∈ √I` iff `1 ∈ (I, 1 - w·f)`.
    pub fn radical_membership(
        &self,
        f: &Polynomial<F>,
        budgets: &Budgets,
    ) -> Result<bool, GbError> {
        if f.is_zero() {
            return Ok(true);
        }
        let field = self.ring.field();
        let big = self.ring.extended_front(&["w#"]);
        let w = big.var(0);
        let mut gens: Vec<Polynomial<F>> = self
            .gens
            .iter()
            .map(|g| self.ring.map_into(&big, g))
            .collect();
        gens.push(big.one().sub(field, &w.mul(field, &self.ring.map_into(&big, f))));
        Ideal::new(big, gens).is_unit(budgets)
    }
}

/// Maximum size of a variable set containing no leading-term support,
/// computed as `n` minus a minimum hitting set (branch and bound).
fn max_independent_set(n: usize, supports: &[Vec<usize>]) -> usize {
    // keep only inclusion-minimal supports: hitting one hits its supersets
    let mut sets: Vec<Vec<usize>> = supports.to_vec();
    sets.sort();
    sets.dedup();
    let minimal: Vec<&Vec<usize>> = sets
        .iter()
        .filter(|s| {
            !sets
                .iter()
                .any(|t| t != *s && t.iter().all(|v| s.contains(v)))
        })
        .collect();
    let mut best = n; // hitting everything with all variables always works
    let mut chosen = vec![false; n];
    fn rec(
        minimal: &[&Vec<usize>],
        chosen: &mut Vec<bool>,
        size: usize,
        best: &mut usize,
    ) {
        if size >= *best {
            return;
        }
        let unhit = minimal
            .iter()
            .find(|s| !s.iter().any(|&v| chosen[v]));
        match unhit {
            None => *best = size,
            Some(s) => {
                for &v in s.iter() {
                    chosen[v] = true;
                    rec(minimal, chosen, size + 1, best);
                    chosen[v] = false;
                }
            }
        }
    }
    rec(&minimal, &mut chosen, 0, &mut best);
    n - best
}

/// Brute-force oracle for [`max_independent_set`] (exponential; tests).
pub fn max_independent_set_oracle(n: usize, supports: &[Vec<usize>]) -> usize {
    assert!(n <= 20, "oracle capped at 20 variables");
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let independent = supports
            .iter()
            .all(|s| !s.iter().all(|&v| mask & (1 << v) != 0));
        if independent {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}
