//! Polynomial rings: a coefficient field plus an ordered list of named
//! variables. Rings are cheap to clone (shared internals) and polynomials
//! always belong to exactly one ring.

use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Debug)]
struct Inner<F: Field> {
    field: F,
    vars: Vec<String>,
    index: HashMap<String, usize>,
}

/// A multivariate polynomial ring `k[x_0, ..., x_{n-1}]`.
///
/// Variable position matters: it fixes exponent-vector layout and the
/// meaning of every term order. Moving polynomials between rings goes
/// through [`PolyRing::map_into`], which matches variables by name.
#[derive(Debug, Clone)]
pub struct PolyRing<F: Field> {
    inner: Arc<Inner<F>>,
}

impl<F: Field> PartialEq for PolyRing<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.field == other.inner.field && self.inner.vars == other.inner.vars)
    }
}

impl<F: Field> PolyRing<F> {
    /// Builds a ring over `field` with the given variable names, in order.
    /// Panics on duplicate names.
    pub fn new(field: F, vars: &[&str]) -> Self {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut index = HashMap::with_capacity(vars.len());
        for (i, v) in vars.iter().enumerate() {
            let prev = index.insert(v.clone(), i);
            assert!(prev.is_none(), "duplicate variable name {v}");
        }
        PolyRing {
            inner: Arc::new(Inner { field, vars, index }),
        }
    }

    /// Convenience: the ring `k[X1..Xn]`.
    pub fn with_x_vars(field: F, n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        PolyRing::new(field, &refs)
    }

    pub fn field(&self) -> &F {
        &self.inner.field
    }

    pub fn nvars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.inner.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.index.get(name).copied()
    }

    /// A new ring with `new_vars` prepended (they become the elimination
    /// block when paired with `MonomialOrder::Block`).
    pub fn extended_front(&self, new_vars: &[&str]) -> Self {
        let mut names: Vec<&str> = new_vars.to_vec();
        let own: Vec<&str> = self.inner.vars.iter().map(|s| s.as_str()).collect();
        names.extend(own);
        PolyRing::new(self.inner.field.clone(), &names)
    }

    /// A new ring with `Y1..Ym` appended after the existing variables
    /// (the Rees, graph, and symmetric-algebra constructions live here).
    pub fn with_y_block(&self, m: usize) -> Self {
        let names: Vec<String> = self
            .inner
            .vars
            .iter()
            .cloned()
            .chain((1..=m).map(|i| format!("Y{i}")))
            .collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        PolyRing::new(self.inner.field.clone(), &refs)
    }

    pub fn zero(&self) -> Polynomial<F> {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial<F> {
        self.constant(self.inner.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F> {
        if self.inner.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial::from_terms_unchecked(vec![(Monomial::one(self.nvars()), c)])
        }
    }

    /// The variable `x_i` as a polynomial.
    pub fn var(&self, i: usize) -> Polynomial<F> {
        assert!(i < self.nvars());
        Polynomial::from_terms_unchecked(vec![(
            Monomial::var(self.nvars(), i),
            self.inner.field.one(),
        )])
    }

    /// The variable with the given name; panics when absent.
    pub fn var_by_name(&self, name: &str) -> Polynomial<F> {
        let i = self
            .var_index(name)
            .unwrap_or_else(|| panic!("no variable named {name}"));
        self.var(i)
    }

    /// Transplants `f` into `target`, matching variables by name.
    /// Panics when a variable in `f`'s support has no counterpart.
    pub fn map_into(&self, target: &PolyRing<F>, f: &Polynomial<F>) -> Polynomial<F> {
        let mut slot = vec![usize::MAX; self.nvars()];
        for (i, name) in self.inner.vars.iter().enumerate() {
            if let Some(j) = target.var_index(name) {
                slot[i] = j;
            }
        }
        let terms: Vec<(Monomial, F::Elem)> = f
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; target.nvars()];
                for (i, &exp) in m.0.iter().enumerate() {
                    if exp > 0 {
                        assert!(
                            slot[i] != usize::MAX,
                            "variable {} missing from target ring",
                            self.inner.vars[i]
                        );
                        e[slot[i]] = exp;
                    }
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Polynomial::from_terms(self.field(), terms)
    }
}
