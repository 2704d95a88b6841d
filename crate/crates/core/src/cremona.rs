//! Birationality analysis for maps defined by tuples of forms: graph
//! ideal, inverse extraction from the X-degree-1 slice, inversion factors
//! D and E, the Jacobian-determinant identity, and symbolic-power
//! generation checks for the n = m semi-Hankel minors.

use crate::field::{Field, FieldSpec};
use crate::groebner::{Budgets, GbError};
use crate::ideal::Ideal;
use crate::matrix::{combinations, jacobian, PolyMatrix};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::report::{run_check, CheckOutcome, CheckResult};
use crate::ring::PolyRing;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CremonaError {
    #[error("not birational by this criterion: {0}")]
    NotBirational(String),
    #[error("substituted inverse form {index} is not divisible by its coordinate variable")]
    NotDivisible { index: usize },
    #[error("inversion-factor quotients disagree between coordinates")]
    QuotientsDisagree,
    #[error(transparent)]
    Budget(#[from] GbError),
}

/// The target ring k[Y1..Yn] for inverse forms.
pub fn y_ring<F: Field>(ring_x: &PolyRing<F>, n: usize) -> PolyRing<F> {
    let names: Vec<String> = (1..=n).map(|i| format!("Y{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    PolyRing::new(ring_x.field().clone(), &refs)
}

/// Graph ideal of the map X ↦ (g_1 : ... : g_k): eliminate t from
/// (Y_i − t·g_i) ⊂ k[t, X, Y]; the result lives in k[X, Y1..Yk] and is
/// bihomogeneous. For the minor ideal of a family matrix this is its
/// Rees ideal.
pub fn graph_ideal<F: Field>(
    ring_x: &PolyRing<F>,
    forms: &[Polynomial<F>],
    budgets: &Budgets,
) -> Result<Ideal<F>, GbError> {
    graph_ideal_with(
        ring_x,
        forms,
        MonomialOrder::Block { first_block: 1 },
        budgets,
    )
}

/// Graph ideal under an explicit elimination order for t.
pub fn graph_ideal_with<F: Field>(
    ring_x: &PolyRing<F>,
    forms: &[Polynomial<F>],
    order: MonomialOrder,
    budgets: &Budgets,
) -> Result<Ideal<F>, GbError> {
    let field = ring_x.field();
    let xy = ring_x.with_y_block(forms.len());
    let txy = xy.extended_front(&["t#"]);
    let t = txy.var(0);
    let gens: Vec<Polynomial<F>> = forms
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let y = txy.var_by_name(&format!("Y{}", i + 1));
            y.sub(field, &t.mul(field, &ring_x.map_into(&txy, g)))
        })
        .collect();
    Ideal::new(txy, gens).eliminate_with(1, order, budgets)
}

/// A successfully extracted inverse map.
#[derive(Debug, Clone)]
pub struct InverseMap<F: Field> {
    pub ring_y: PolyRing<F>,
    pub forms: Vec<Polynomial<F>>,
    /// rank of the X-degree-1 slice matrix ρ (always n−1 on success)
    pub slice_rank: usize,
}

/// Outcome of the inverse-map criterion.
#[derive(Debug, Clone)]
pub enum Birationality<F: Field> {
    Inverse(InverseMap<F>),
    NotBirational(String),
}

/// Extracts the inverse of the map defined by `forms` from the X-degree-1
/// slice of its graph ideal: writing the slice as ρ(Y)·X = 0, a rank of
/// n−1 yields the inverse as the signed (n−1)-minors of ρ with common
/// factors removed; any other rank reports "not birational by this
/// criterion" (the slice depends on the graph ideal being complete).
pub fn inverse_map<F: Field>(
    ring_x: &PolyRing<F>,
    forms: &[Polynomial<F>],
    budgets: &Budgets,
) -> Result<Birationality<F>, GbError> {
    let n = ring_x.nvars();
    assert_eq!(forms.len(), n, "a self-map needs n forms in n variables");
    let field = ring_x.field();
    let graph = graph_ideal(ring_x, forms, budgets)?;
    let ring_y = y_ring(ring_x, n);

    // collect elements of X-degree exactly 1 and split them as rows of ρ
    let mut rho_rows: Vec<Vec<Polynomial<F>>> = Vec::new();
    for g in graph.gens() {
        let xdeg = |m: &Monomial| -> u32 { m.0[..n].iter().map(|&e| e as u32).sum() };
        if g.is_zero() || g.terms().iter().any(|(m, _)| xdeg(m) != 1) {
            continue;
        }
        let mut row: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); n];
        for (m, c) in g.terms() {
            let j = (0..n).find(|&j| m.0[j] == 1).expect("X-degree 1 term");
            let y_part = Monomial(m.0[n..].to_vec());
            row[j].push((y_part, c.clone()));
        }
        rho_rows.push(
            row.into_iter()
                .map(|terms| Polynomial::from_terms(field, terms))
                .collect(),
        );
    }
    if rho_rows.is_empty() {
        return Ok(Birationality::NotBirational(
            "graph ideal has no X-degree-1 part".to_string(),
        ));
    }
    let rho = PolyMatrix::new(ring_y.clone(), rho_rows.len(), n, {
        let mut entries = Vec::new();
        for row in &rho_rows {
            entries.extend(row.iter().cloned());
        }
        entries
    });
    let rank = rho.rank();
    if rank != n - 1 {
        return Ok(Birationality::NotBirational(format!(
            "X-degree-1 slice has rank {rank}, expected n-1 = {}",
            n - 1
        )));
    }

    // a full-rank (n−1)-row submatrix carries the one-dimensional kernel
    let sub = combinations(rho.nrows(), n - 1)
        .into_iter()
        .map(|rows| rho.submatrix(&rows, &(0..n).collect::<Vec<_>>()))
        .find(|s| s.rank() == n - 1)
        .expect("some n-1 rows realize the rank");
    let cols: Vec<usize> = (0..n).collect();
    let mut inv: Vec<Polynomial<F>> = (0..n)
        .map(|j| {
            let keep: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
            let minor = sub.submatrix(&(0..n - 1).collect::<Vec<_>>(), &keep).det();
            if j % 2 == 0 {
                minor
            } else {
                minor.neg(field)
            }
        })
        .collect();
    if inv.iter().any(|h| h.is_zero()) {
        // a dominant self-map's inverse has no identically-zero coordinate
        return Ok(Birationality::NotBirational(
            "kernel vector has a zero coordinate; the map is not dominant".to_string(),
        ));
    }

    // remove the common monomial content ...
    let content = inv
        .iter()
        .filter(|h| !h.is_zero())
        .fold(None::<Monomial>, |acc, h| {
            let c = h.monomial_content(n);
            Some(match acc {
                None => c,
                Some(g) => g.gcd(&c),
            })
        })
        .unwrap_or_else(|| Monomial::one(n));
    if !content.is_one() {
        inv = inv.iter().map(|h| h.div_monomial(&content)).collect();
    }
    // ... and any common polynomial factor one component detects exactly
    'probe: loop {
        for a in 0..n {
            let cand = inv[a].clone();
            if cand.degree() == Some(0) {
                continue;
            }
            let quotients: Option<Vec<Polynomial<F>>> = inv
                .iter()
                .map(|h| h.try_div_exact(field, &cand))
                .collect();
            if let Some(q) = quotients {
                inv = q;
                continue 'probe;
            }
        }
        break;
    }

    if inv.iter().any(|h| h.degree() != inv[0].degree()) {
        return Ok(Birationality::NotBirational(
            "inverse components have unequal degrees; common-factor reduction incomplete"
                .to_string(),
        ));
    }
    // leading-coefficient normalization of the first component
    let lead = inv[0]
        .leading_term(MonomialOrder::DegRevLex)
        .map(|(_, c)| c.clone())
        .expect("nonzero component");
    let scale = field.inv(&lead);
    let forms_y: Vec<Polynomial<F>> = inv.iter().map(|h| h.scale(field, &scale)).collect();
    Ok(Birationality::Inverse(InverseMap {
        ring_y,
        forms: forms_y,
        slice_rank: rank,
    }))
}

/// The source inversion factor: the common D with 𝔡_i(g) = X_i·D.
/// Returns the monic D together with the scalar that was divided out.
pub fn source_inversion_factor<F: Field>(
    ring_x: &PolyRing<F>,
    forms: &[Polynomial<F>],
    inverse: &InverseMap<F>,
) -> Result<(Polynomial<F>, F::Elem), CremonaError> {
    let field = ring_x.field();
    let mut common: Option<Polynomial<F>> = None;
    for (i, dinv) in inverse.forms.iter().enumerate() {
        let composed = dinv.substitute(&inverse.ring_y, ring_x, forms);
        let q = composed
            .try_div_exact(field, &ring_x.var(i))
            .ok_or(CremonaError::NotDivisible { index: i })?;
        match &common {
            None => common = Some(q),
            Some(d) if *d == q => {}
            Some(_) => return Err(CremonaError::QuotientsDisagree),
        }
    }
    let raw = common.expect("n >= 1 coordinates");
    if raw.is_zero() {
        return Err(CremonaError::QuotientsDisagree);
    }
    let d = forms[0].degree().unwrap_or(0);
    let d_prime = inverse.forms[0].degree().unwrap_or(0);
    assert_eq!(
        raw.degree(),
        Some(d * d_prime - 1),
        "inversion-factor degree must be d*d' - 1"
    );
    let lead = raw
        .leading_term(MonomialOrder::DegRevLex)
        .map(|(_, c)| c.clone())
        .expect("nonzero D");
    Ok((raw.monic(field), lead))
}

/// The target inversion factor: the common E with g_i(𝔡) = Y_i·E.
pub fn target_inversion_factor<F: Field>(
    ring_x: &PolyRing<F>,
    forms: &[Polynomial<F>],
    inverse: &InverseMap<F>,
) -> Result<(Polynomial<F>, F::Elem), CremonaError> {
    let field = ring_x.field();
    let ring_y = &inverse.ring_y;
    let mut common: Option<Polynomial<F>> = None;
    for (i, g) in forms.iter().enumerate() {
        let composed = g.substitute(ring_x, ring_y, &inverse.forms);
        let q = composed
            .try_div_exact(field, &ring_y.var(i))
            .ok_or(CremonaError::NotDivisible { index: i })?;
        match &common {
            None => common = Some(q),
            Some(e) if *e == q => {}
            Some(_) => return Err(CremonaError::QuotientsDisagree),
        }
    }
    let raw = common.expect("n >= 1 coordinates");
    if raw.is_zero() {
        return Err(CremonaError::QuotientsDisagree);
    }
    let lead = raw
        .leading_term(MonomialOrder::DegRevLex)
        .map(|(_, c)| c.clone())
        .expect("nonzero E");
    Ok((raw.monic(field), lead))
}

/// Everything the Cremona pipeline establishes about one map, ready for
/// serialization into reports.
#[derive(Debug, Clone)]
pub struct CremonaData<F: Field> {
    pub ring_x: PolyRing<F>,
    pub ring_y: PolyRing<F>,
    pub forms: Vec<Polynomial<F>>,
    pub inverse: Vec<Polynomial<F>>,
    pub source_factor: Polynomial<F>,
    pub target_factor: Polynomial<F>,
    pub jacobian_det: Polynomial<F>,
    pub d: u32,
    pub d_prime: u32,
    /// leading coefficient divided out of D (its stored normalization)
    pub source_scalar: String,
    pub target_scalar: String,
    /// whether det Θ equals (n−1)·D up to a nonzero scalar
    pub jacobian_matches: bool,
}

impl<F: Field> CremonaData<F> {
    pub fn to_json(&self) -> serde_json::Value {
        let px = |f: &Polynomial<F>| f.display(&self.ring_x);
        let py = |f: &Polynomial<F>| f.display(&self.ring_y);
        let n = self.ring_x.nvars() as i64;
        json!({
            "forms": self.forms.iter().map(px).collect::<Vec<_>>(),
            "inverse": self.inverse.iter().map(py).collect::<Vec<_>>(),
            "source_factor": px(&self.source_factor),
            "target_factor": py(&self.target_factor),
            "jacobian_det": px(&self.jacobian_det),
            "degree": self.d,
            "inverse_degree": self.d_prime,
            "source_factor_degree": self.source_factor.degree(),
            "source_scalar": self.source_scalar,
            "target_scalar": self.target_scalar,
            "jacobian_matches_n_minus_1_times_D": self.jacobian_matches,
            "n_minus_1": n - 1,
        })
    }
}

/// Runs the full pipeline: inverse, both inversion factors, Jacobian
/// determinant, and the identity det Θ = (n−1)·D up to scalar.
pub fn cremona_data<F: Field>(
    ring_x: &PolyRing<F>,
    forms: &[Polynomial<F>],
    budgets: &Budgets,
) -> Result<CremonaData<F>, CremonaError> {
    let field = ring_x.field();
    let inverse = match inverse_map(ring_x, forms, budgets)? {
        Birationality::Inverse(inv) => inv,
        Birationality::NotBirational(reason) => {
            return Err(CremonaError::NotBirational(reason))
        }
    };
    let (source_factor, source_lead) = source_inversion_factor(ring_x, forms, &inverse)?;
    let (target_factor, target_lead) = target_inversion_factor(ring_x, forms, &inverse)?;
    let theta = jacobian(ring_x, forms);
    let jac_det = theta.det();
    // "up to a nonzero scalar" by leading-coefficient normalization
    let jacobian_matches = !jac_det.is_zero() && jac_det.monic(field) == source_factor;
    Ok(CremonaData {
        ring_x: ring_x.clone(),
        ring_y: inverse.ring_y.clone(),
        forms: forms.to_vec(),
        inverse: inverse.forms.clone(),
        d: forms[0].degree().unwrap_or(0),
        d_prime: inverse.forms[0].degree().unwrap_or(0),
        source_factor,
        target_factor,
        jacobian_det: jac_det,
        source_scalar: field.format(&source_lead),
        target_scalar: field.format(&target_lead),
        jacobian_matches,
    })
}

/// Check wrapper: the inversion-factor/Jacobian identity
/// det Θ = (n−1)·D up to a nonzero scalar. Over GF(p) the
/// characteristic-zero statement is tested under the proxy condition
/// p > n(d−1)d′, recorded in the data.
pub fn check_inversion_factor_jacobian<F: Field>(
    ring_x: &PolyRing<F>,
    forms: &[Polynomial<F>],
    budgets: &Budgets,
) -> CheckResult {
    run_check("cremona", || {
        match cremona_data(ring_x, forms, budgets) {
            Ok(data) => {
                let mut value = data.to_json();
                let n = ring_x.nvars() as u64;
                let bound = n * (data.d.max(1) as u64 - 1) * data.d_prime as u64;
                value["char_proxy"] = match ring_x.field().spec() {
                    FieldSpec::PrimeField { p } => json!({
                        "requirement": format!("p > n(d-1)d' = {bound}"),
                        "p": p,
                        "satisfied": p > bound,
                    }),
                    FieldSpec::Rationals => json!({ "requirement": "char 0", "satisfied": true }),
                };
                Ok(if data.jacobian_matches {
                    CheckOutcome::passing(value)
                } else {
                    CheckOutcome::failing(value, vec![])
                })
            }
            Err(CremonaError::Budget(e)) => Err(e),
            Err(other) => Ok(CheckOutcome::failing(
                json!({ "pipeline_error": other.to_string() }),
                vec![],
            )),
        }
    })
}

/// Symbolic-power generation facts for a Cremona-type minor map:
/// (1) I^ℓ is (X)-saturation-stable for ℓ = 1..n−2, (2) D lies in the
/// (X)-saturation of I^{n−1} (certified via X_i·D ∈ I^{n−1} when that
/// holds, else by computing the saturation), (3) D ∉ I^{n−1}.
pub fn check_symbolic_generation<F: Field>(
    ring_x: &PolyRing<F>,
    forms: &[Polynomial<F>],
    budgets: &Budgets,
) -> CheckResult {
    run_check("symbolic", || {
        let field = ring_x.field();
        let n = ring_x.nvars();
        assert_eq!(forms.len(), n, "needs a self-map: n forms in n variables");
        let data = match cremona_data(ring_x, forms, budgets) {
            Ok(d) => d,
            Err(CremonaError::Budget(e)) => return Err(e),
            Err(other) => {
                return Ok(CheckOutcome::failing(
                    json!({ "pipeline_error": other.to_string() }),
                    vec![],
                ))
            }
        };
        let ideal = Ideal::new(ring_x.clone(), forms.to_vec());
        let irrelevant = Ideal::irrelevant(ring_x);
        let mut rows = Vec::new();
        let mut stable_all = true;
        for l in 1..=(n - 2) as u32 {
            let power = ideal.power(l);
            let sat = power.saturation(&irrelevant, budgets)?;
            let stable = sat.equals(&power, budgets)?;
            stable_all &= stable;
            rows.push(json!({ "l": l, "saturation_stable": stable }));
        }
        let top = ideal.power((n - 1) as u32);
        let d_poly = &data.source_factor;
        // X_i·D ∈ I^{n-1} for all i certifies D ∈ I^{n-1} : (X) ⊆ sat
        let mut in_sat = true;
        for i in 0..n {
            let xi_d = ring_x.var(i).mul(field, d_poly);
            if !top.contains(&xi_d, budgets)? {
                in_sat = false;
                break;
            }
        }
        let sat_path = if in_sat {
            "X_i*D in I^(n-1) for all i"
        } else {
            in_sat = top
                .saturation(&irrelevant, budgets)?
                .contains(d_poly, budgets)?;
            "full saturation membership"
        };
        let not_in_power = !top.contains(d_poly, budgets)?;
        let pass = stable_all && in_sat && not_in_power;
        let value = json!({
            "stability": rows,
            "D": d_poly.display(ring_x),
            "D_degree": d_poly.degree(),
            "D_in_saturation_of_top_power": in_sat,
            "saturation_membership_path": sat_path,
            "D_outside_top_power": not_in_power,
            "top_power": n - 1,
        });
        Ok(if pass {
            CheckOutcome::passing(value)
        } else {
            CheckOutcome::failing(value, vec![])
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GfP;
    use crate::parse::parse_poly;
    use crate::report::Verdict;

    fn quadratic_control() -> (PolyRing<GfP>, Vec<Polynomial<GfP>>) {
        let ring = PolyRing::with_x_vars(GfP::default(), 3);
        let forms = ["X2*X3", "X1*X3", "X1*X2"]
            .iter()
            .map(|s| parse_poly(&ring, s).unwrap())
            .collect();
        (ring, forms)
    }

    #[test]
    fn identity_map_inverts_trivially() {
        let ring = PolyRing::with_x_vars(GfP::default(), 2);
        let forms = vec![ring.var(0), ring.var(1)];
        let b = Budgets::unlimited();
        let data = cremona_data(&ring, &forms, &b).unwrap();
        assert_eq!(data.inverse[0].display(&data.ring_y), "Y1");
        assert_eq!(data.inverse[1].display(&data.ring_y), "Y2");
        assert_eq!(data.source_factor.display(&data.ring_x), "1");
        assert!(data.jacobian_matches);
    }

    #[test]
    fn quadratic_control_full_pipeline() {
        let (ring, forms) = quadratic_control();
        let b = Budgets::unlimited();
        let graph = graph_ideal(&ring, &forms, &b).unwrap();
        let gx = graph.ring().clone();
        for probe in ["X1*Y1 - X2*Y2", "X2*Y2 - X3*Y3"] {
            let p = parse_poly(&gx, probe).unwrap();
            assert!(graph.contains(&p, &b).unwrap(), "missing {probe}");
        }
        let data = cremona_data(&ring, &forms, &b).unwrap();
        let inv: Vec<String> = data.inverse.iter().map(|f| f.display(&data.ring_y)).collect();
        assert_eq!(inv, vec!["Y2*Y3", "Y1*Y3", "Y1*Y2"]);
        assert_eq!(data.source_factor.display(&ring), "X1*X2*X3");
        assert_eq!(data.target_factor.display(&data.ring_y), "Y1*Y2*Y3");
        // det Θ = 2·X1X2X3 = (n−1)·D exactly
        assert_eq!(data.jacobian_det.display(&ring), "2*X1*X2*X3");
        assert!(data.jacobian_matches);
        assert_eq!(data.d, 2);
        assert_eq!(data.d_prime, 2);
    }

    #[test]
    fn quadratic_control_is_self_inverse() {
        let (ring, forms) = quadratic_control();
        let b = Budgets::unlimited();
        let data = cremona_data(&ring, &forms, &b).unwrap();
        // transplant the inverse to the source ring and invert again
        let xs: Vec<Polynomial<GfP>> = (0..3).map(|i| ring.var(i)).collect();
        let again: Vec<Polynomial<GfP>> = data
            .inverse
            .iter()
            .map(|f| f.substitute(&data.ring_y, &ring, &xs))
            .collect();
        let data2 = cremona_data(&ring, &again, &b).unwrap();
        let back: Vec<Polynomial<GfP>> = data2
            .inverse
            .iter()
            .map(|f| f.substitute(&data2.ring_y, &ring, &xs))
            .collect();
        for (orig, rec) in forms.iter().zip(&back) {
            let field = ring.field();
            assert_eq!(orig.monic(field), rec.monic(field));
        }
    }

    #[test]
    fn jacobian_check_passes_on_control() {
        let (ring, forms) = quadratic_control();
        let res = check_inversion_factor_jacobian(&ring, &forms, &Budgets::unlimited());
        assert_eq!(res.verdict, Verdict::Pass, "data: {}", res.data);
        assert_eq!(res.data["char_proxy"]["satisfied"], true);
    }

    #[test]
    fn graph_of_twisted_cubic_minors_is_its_rees_ideal() {
        use crate::checks::symmetric_ideal;
        use crate::families::build_catalecticant;
        let mat = build_catalecticant(GfP::default(), 3, 1).unwrap();
        let b = Budgets::unlimited();
        let graph = graph_ideal(mat.ring(), &mat.signed_maximal_minors(), &b).unwrap();
        let sym = symmetric_ideal(&mat);
        assert!(graph.equals(&sym, &b).unwrap());
    }

    #[test]
    fn non_birational_map_is_reported() {
        // (X1², X1X2, X2²) on ℙ² is 2:1 onto a conic, not birational
        let ring = PolyRing::with_x_vars(GfP::default(), 3);
        let forms: Vec<Polynomial<GfP>> = ["X1^2", "X1*X2", "X2^2"]
            .iter()
            .map(|s| parse_poly(&ring, s).unwrap())
            .collect();
        let b = Budgets::unlimited();
        match inverse_map(&ring, &forms, &b).unwrap() {
            Birationality::NotBirational(reason) => {
                assert!(reason.contains("zero coordinate"), "reason: {reason}")
            }
            Birationality::Inverse(_) => panic!("degenerate map must not invert"),
        }
    }
}
